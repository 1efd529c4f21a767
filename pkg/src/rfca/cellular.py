"""Cellular automata over a finite monoid (full graphs) and over Z (local rules).

An equivariant self-map τ of A^M is pinned down by the symbol it writes at
the identity: ``τ(x)(m') = τ(m' x)(1_M)``.  Conversely every function
``μ: A^M -> A`` gives the cellular automaton ``x -> (m' -> μ(m' x))``.
:func:`enumerate_ca` walks all such μ instead of all self-maps.

Local rules read the window ``x(k-r) .. x(k+r)`` as a base-|A| number with
the leftmost cell most significant, so Wolfram numbering is the table read
as bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .monoid_core import FiniteMonoid, MonoidError
from .shift_space import (
    DEFAULT_CAP,
    CapExceeded,
    Configuration,
    PeriodicWord,
    _alphabet_size,
    config_from_index,
    config_index,
    shift_table,
)


class NotClosed(MonoidError):
    def __init__(self, x, image):
        self.witness = x
        self.image = image
        super().__init__(f"image {image} of {x} leaves the set")


@dataclass(frozen=True)
class EquivariantMap:
    """A cellular automaton over a finite monoid, stored as its full graph on A^M."""

    monoid: FiniteMonoid
    alphabet: int
    graph: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _alphabet_size(self.alphabet))
        object.__setattr__(self, "graph", tuple(int(v) for v in self.graph))
        n = self.alphabet ** self.monoid.size
        if len(self.graph) != n:
            raise MonoidError(f"graph must list {n} images, got {len(self.graph)}")
        if any(not 0 <= v < n for v in self.graph):
            raise MonoidError("graph entry outside configuration range")

    def __call__(self, x: Configuration) -> Configuration:
        return config_from_index(self.monoid, self.alphabet,
                                 self.graph[config_index(x.values, self.alphabet)])


@dataclass(frozen=True)
class LocalRule:
    """A cellular automaton on A^Z given by a radius-r local rule."""

    radius: int
    alphabet: int
    table: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _alphabet_size(self.alphabet))
        object.__setattr__(self, "table", tuple(int(v) for v in self.table))
        if self.radius < 0:
            raise ValueError("radius must be nonnegative")
        want = self.alphabet ** (2 * self.radius + 1)
        if len(self.table) != want:
            raise ValueError(f"table must have {want} entries, got {len(self.table)}")
        if any(not 0 <= v < self.alphabet for v in self.table):
            raise ValueError("table entry outside alphabet")

    def __call__(self, y: PeriodicWord) -> PeriodicWord:
        return apply_rule(self, y)

    @property
    def wolfram(self) -> int | None:
        if self.radius != 1 or self.alphabet != 2:
            return None
        return sum(v << k for k, v in enumerate(self.table))


@dataclass(frozen=True)
class Transformation:
    """A self-map of ``0..domain_size-1``; an element of the full transformation monoid."""

    domain_size: int
    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(int(v) for v in self.mapping))
        if len(self.mapping) != self.domain_size or any(
                not 0 <= v < self.domain_size for v in self.mapping):
            raise ValueError("mapping must send 0..n-1 into itself")

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def after(self, other: "Transformation") -> "Transformation":
        """``self ∘ other``."""
        if other.domain_size != self.domain_size:
            raise ValueError("domain sizes differ")
        return Transformation(self.domain_size, tuple(self.mapping[v] for v in other.mapping))


TransformationMonoidElement = Transformation


# --------------------------------------------------------------------------
# finite backend


def identity_ca(M: FiniteMonoid, alphabet) -> EquivariantMap:
    a = _alphabet_size(alphabet)
    return EquivariantMap(M, a, tuple(range(a ** M.size)))


def is_equivariant(M: FiniteMonoid, alphabet, graph: Sequence[int]) -> bool:
    """Whether ``graph`` commutes with every shift of A^M."""
    S = shift_table(M, alphabet)
    g = np.asarray(graph, dtype=np.int64)
    if g.shape != (S.shape[1],):
        raise MonoidError(f"graph must have {S.shape[1]} entries, got {len(graph)}")
    return bool(np.all(g[S] == S[:, g]))


def ca_from_local_map(M: FiniteMonoid, alphabet, mu: Sequence[int], S: np.ndarray | None = None) -> EquivariantMap:
    """The cellular automaton writing ``mu[m' x]`` at cell m'."""
    a = _alphabet_size(alphabet)
    if S is None:
        S = shift_table(M, a)
    weights = a ** np.arange(M.size - 1, -1, -1, dtype=np.int64)
    graph = weights @ np.asarray(mu, dtype=np.int64)[S]
    return EquivariantMap(M, a, tuple(graph.tolist()))


def enumerate_ca(M: FiniteMonoid, alphabet, cap: int = DEFAULT_CAP) -> list[EquivariantMap]:
    """All of CA(M, A), ordered lexicographically by graph.

    Both |A^M| and the number of automata |A|^|A^M| must stay within ``cap``.
    """
    a = _alphabet_size(alphabet)
    n_conf = a ** M.size
    if n_conf > cap:
        raise CapExceeded(f"|A^M| = {n_conf} exceeds cap {cap}")
    if a ** n_conf > cap:
        raise CapExceeded(f"|CA(M,A)| = {a}^{n_conf} exceeds cap {cap}")
    S = shift_table(M, a)
    mus = np.indices((a,) * n_conf).reshape(n_conf, -1).T
    weights = a ** np.arange(M.size - 1, -1, -1, dtype=np.int64)
    # graphs[k, i] = sum_m' mu_k[S[m', i]] * a^(n-1-m')
    graphs = np.einsum("kmi,m->ki", mus[:, S], weights)
    order = np.lexsort(graphs.T[::-1])
    return [EquivariantMap(M, a, tuple(row)) for row in graphs[order].tolist()]


def random_ca(M: FiniteMonoid, alphabet, rng: np.random.Generator) -> EquivariantMap:
    a = _alphabet_size(alphabet)
    return ca_from_local_map(M, a, rng.integers(0, a, size=a ** M.size))


def tau_m(M: FiniteMonoid, alphabet, m: int) -> EquivariantMap:
    """``x -> x ∘ L_m``, i.e. ``τ_m(x)(m') = x(m m')``."""
    a = _alphabet_size(alphabet)
    if not 0 <= m < M.size:
        raise MonoidError(f"element {m} is not in the monoid")
    row = M.table[m]
    graph = [config_index([x.values[row[mp]] for mp in range(M.size)], a)
             for x in (config_from_index(M, a, i) for i in range(a ** M.size))]
    return EquivariantMap(M, a, graph)


# --------------------------------------------------------------------------
# integer backend


def from_wolfram(number: int) -> LocalRule:
    if not 0 <= number < 256:
        raise ValueError("Wolfram numbers run from 0 to 255")
    return LocalRule(1, 2, tuple((number >> k) & 1 for k in range(8)))


def rule_from_function(radius: int, alphabet, f: Callable[[tuple[int, ...]], int]) -> LocalRule:
    a = _alphabet_size(alphabet)
    return LocalRule(radius, a, tuple(f(w) for w in product(range(a), repeat=2 * radius + 1)))


def identity_rule(alphabet, radius: int = 0) -> LocalRule:
    return rule_from_function(radius, alphabet, lambda w: w[radius])


def pad_rule(rule: LocalRule, radius: int) -> LocalRule:
    """The same global map presented with a larger radius."""
    if radius < rule.radius:
        raise ValueError("cannot shrink a rule's radius")
    d = radius - rule.radius
    r = rule.radius
    return rule_from_function(radius, rule.alphabet,
                              lambda w: rule.table[config_index(w[d:d + 2 * r + 1], rule.alphabet)])


def apply_rule(rule: LocalRule, y: PeriodicWord) -> PeriodicWord:
    n, r, a = y.period, rule.radius, rule.alphabet
    w = y.word
    out = []
    for k in range(n):
        idx = 0
        for j in range(k - r, k + r + 1):
            idx = idx * a + w[j % n]
        out.append(rule.table[idx])
    return PeriodicWord(out)


def rules_equal(r1: LocalRule, r2: LocalRule) -> bool:
    """Whether two local rules induce the same map on A^Z."""
    if r1.alphabet != r2.alphabet:
        raise MonoidError("rules use different alphabets")
    R = max(r1.radius, r2.radius)
    return pad_rule(r1, R).table == pad_rule(r2, R).table


def compose(t1, t2):
    """``t1 ∘ t2`` (apply t2 first) for two equivariant maps or two local rules."""
    if isinstance(t1, EquivariantMap) and isinstance(t2, EquivariantMap):
        if t1.monoid != t2.monoid or t1.alphabet != t2.alphabet:
            raise MonoidError("automata live on different shift spaces")
        return EquivariantMap(t1.monoid, t1.alphabet, tuple(t1.graph[v] for v in t2.graph))
    if isinstance(t1, LocalRule) and isinstance(t2, LocalRule):
        if t1.alphabet != t2.alphabet:
            raise MonoidError("rules use different alphabets")
        a, r1, r2 = t1.alphabet, t1.radius, t2.radius
        span2 = 2 * r2 + 1

        def f(w):
            inner = [t2.table[config_index(w[i:i + span2], a)] for i in range(2 * r1 + 1)]
            return t1.table[config_index(inner, a)]

        return rule_from_function(r1 + r2, a, f)
    raise TypeError("compose needs two EquivariantMaps or two LocalRules")


def apply(tau, x):
    if isinstance(tau, LocalRule):
        return apply_rule(tau, x)
    return tau(x)


def transformation_monoid(X: Sequence, tau) -> Transformation:
    """Restrict tau to the ordered finite set X, as a self-map of its indices."""
    position = {x: i for i, x in enumerate(X)}
    mapping = []
    for x in X:
        y = apply(tau, x)
        if y not in position:
            raise NotClosed(x, y)
        mapping.append(position[y])
    return Transformation(len(X), tuple(mapping))


# --------------------------------------------------------------------------
# JSON


def rule_to_json(rule: LocalRule) -> dict:
    return {"radius": rule.radius, "alphabet": rule.alphabet, "table": list(rule.table)}


def rule_from_json(data) -> LocalRule:
    if isinstance(data, int):
        return from_wolfram(data)
    if "wolfram" in data:
        return from_wolfram(int(data["wolfram"]))
    return LocalRule(data["radius"], data["alphabet"], data["table"])


def map_to_json(tau: EquivariantMap) -> dict:
    from .monoid_core import monoid_to_json
    return {"monoid": tau.monoid.name or monoid_to_json(tau.monoid),
            "alphabet": tau.alphabet, "graph": list(tau.graph)}


def map_from_json(data, monoid: FiniteMonoid | None = None) -> EquivariantMap:
    from .monoid_core import monoid_from_json
    M = monoid if monoid is not None else monoid_from_json(data["monoid"])
    tau = EquivariantMap(M, data["alphabet"], data["graph"])
    if not is_equivariant(M, tau.alphabet, tau.graph):
        raise MonoidError("map does not commute with the shift")
    return tau


__all__ = [
    "CapExceeded", "EquivariantMap", "LocalRule", "NotClosed", "Transformation",
    "TransformationMonoidElement", "apply", "apply_rule", "ca_from_local_map", "compose",
    "enumerate_ca", "from_wolfram", "identity_ca", "identity_rule", "is_equivariant",
    "map_from_json", "map_to_json", "pad_rule", "random_ca", "rule_from_function",
    "rule_from_json", "rule_to_json", "rules_equal", "tau_m", "transformation_monoid",
]
