"""Configurations, the shift action and the invariant sets Inv(γ).

Two backends share one vocabulary:

* finite M: a :class:`Configuration` stores one symbol per monoid element;
* M = Z: a :class:`PeriodicWord` of period n stands for ``x(k) = word[k mod n]``.

The shift is ``shift(m, x)(m') = x(m' m)``.  Since
``shift(m1, shift(m2, x))(m') = x(m' m1 m2)``, composing shifts multiplies in
the order they are written: ``shift(m1, shift(m2, x)) == shift(m1 * m2, x)``.

Configurations of a finite monoid are indexed lexicographically with
element 0 the most significant digit; certificates rely on this.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .monoid_core import Congruence, FiniteMonoid, MonoidError, canonical_labels

DEFAULT_CAP = 2 ** 20


class CapExceeded(MonoidError):
    pass


class NotInvariant(MonoidError):
    def __init__(self, m, y):
        self.witness = (m, y)
        super().__init__(f"set is not shift-invariant: shift by {m} sends {y} outside it")


class ContradictoryConstraints(MonoidError):
    pass


@dataclass(frozen=True)
class Alphabet:
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("alphabet needs at least one symbol")

    def __iter__(self):
        return iter(range(self.size))


def _alphabet_size(A) -> int:
    return A.size if isinstance(A, Alphabet) else int(A)


@dataclass(frozen=True)
class Configuration:
    monoid: FiniteMonoid
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.monoid.size:
            raise MonoidError(f"configuration needs {self.monoid.size} values, got {len(self.values)}")

    def __call__(self, m: int) -> int:
        return self.values[m]

    def __lt__(self, other):
        return self.values < other.values


class PeriodicWord:
    """The configuration of A^Z that repeats ``word`` with period ``len(word)``.

    Equality is equality of the configurations, so ``(0, 1)`` and
    ``(0, 1, 0, 1)`` compare equal; hashing uses the primitive root.
    """

    __slots__ = ("word", "_root")

    def __init__(self, word: Iterable[int]):
        word = tuple(int(v) for v in word)
        if not word:
            raise ValueError("period must be at least 1")
        self.word = word
        self._root = word[:minimal_period(word)]

    @property
    def period(self) -> int:
        return len(self.word)

    def __call__(self, k: int) -> int:
        return self.word[k % len(self.word)]

    def __eq__(self, other):
        if not isinstance(other, PeriodicWord):
            return NotImplemented
        return self._root == other._root

    def __hash__(self):
        return hash(self._root)

    def __lt__(self, other):
        return (self.period, self.word) < (other.period, other.word)

    def __repr__(self):
        return f"PeriodicWord({''.join(map(str, self.word)) if max(self.word) < 10 else self.word})"


def minimal_period(word: Sequence[int]) -> int:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and all(word[i] == word[i % d] for i in range(n)):
            return d
    return n


# --------------------------------------------------------------------------
# indexing of A^M


def config_index(values: Sequence[int], alphabet) -> int:
    a = _alphabet_size(alphabet)
    idx = 0
    for v in values:
        idx = idx * a + v
    return idx


def config_from_index(M: FiniteMonoid, alphabet, idx: int) -> Configuration:
    a = _alphabet_size(alphabet)
    vals = [0] * M.size
    for i in range(M.size - 1, -1, -1):
        idx, vals[i] = divmod(idx, a)
    return Configuration(M, vals)


def all_configurations_array(n: int, alphabet) -> np.ndarray:
    """Every point of A^n as rows, in index order."""
    a = _alphabet_size(alphabet)
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((a,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def shift_table(M: FiniteMonoid, alphabet, cap: int = DEFAULT_CAP) -> np.ndarray:
    """``S[m, i]`` = index of shift(m, x_i) over all of A^M."""
    a = _alphabet_size(alphabet)
    if a ** M.size > cap:
        raise CapExceeded(f"|A^M| = {a}^{M.size} exceeds cap {cap}")
    configs = all_configurations_array(M.size, a)
    weights = a ** np.arange(M.size - 1, -1, -1, dtype=np.int64)
    t = M.array
    # shifted[m, i, m'] = x_i(m' m)
    shifted = configs[:, t.T]
    return np.einsum("imk,k->mi", shifted, weights)


# --------------------------------------------------------------------------
# operations


def shift(m: int, x):
    """Shift a configuration by ``m`` (a monoid element, or an integer for PeriodicWord)."""
    if isinstance(x, PeriodicWord):
        n = x.period
        return PeriodicWord(x.word[(i + m) % n] for i in range(n))
    M = x.monoid
    if not 0 <= m < M.size:
        raise MonoidError(f"element {m} is not in the monoid")
    return Configuration(M, tuple(x.values[M.table[mp][m]] for mp in range(M.size)))


def orbit(x) -> list:
    """The orbit of x, deduplicated and sorted."""
    if isinstance(x, PeriodicWord):
        return sorted({shift(k, x) for k in range(x.period)}, key=lambda w: w.word)
    return sorted({shift(m, x) for m in range(x.monoid.size)})


def is_periodic(x) -> bool:
    """Always true: finite monoids have finite orbits and PeriodicWord is periodic by construction.

    Aperiodic points of A^Z have no representation here.
    """
    return isinstance(x, (Configuration, PeriodicWord))


def orbit_congruence(M: FiniteMonoid, Y: Iterable[Configuration]) -> Congruence:
    """Identify m1, m2 when they shift every y in Y to the same configuration."""
    Y = list(Y)
    if not Y:
        raise MonoidError("orbit congruence needs a nonempty set")
    members = set(Y)
    rows = []
    for m in range(M.size):
        row = []
        for y in Y:
            z = shift(m, y)
            if z not in members:
                raise NotInvariant(m, y)
            row.append(z.values)
        rows.append(tuple(row))
    class_of = canonical_labels(rows)
    return Congruence(M, class_of, max(class_of) + 1)


def integer_orbit_congruence(y: PeriodicWord) -> int:
    """Modulus p such that k1 ≡ k2 (mod p) is the orbit congruence of y."""
    return minimal_period(y.word)


def inv(M: FiniteMonoid, gamma: Congruence, alphabet, cap: int = DEFAULT_CAP) -> list[Configuration]:
    """Configurations constant on every class of gamma, in index order."""
    if gamma.monoid != M:
        raise MonoidError("congruence belongs to another monoid")
    a = _alphabet_size(alphabet)
    if a ** gamma.index > cap:
        raise CapExceeded(f"|Inv| = {a}^{gamma.index} exceeds cap {cap}")
    out = [Configuration(M, tuple(col[c] for c in gamma.class_of))
           for col in product(range(a), repeat=gamma.index)]
    return sorted(out)


def inv_integer(p: int, alphabet, cap: int = DEFAULT_CAP) -> list[PeriodicWord]:
    """All words of period p, lexicographic."""
    a = _alphabet_size(alphabet)
    if p < 1:
        raise ValueError("period must be positive")
    if a ** p > cap:
        raise CapExceeded(f"{a}^{p} periodic words exceed cap {cap}")
    return [PeriodicWord(w) for w in product(range(a), repeat=p)]


def in_cylinder(x: PeriodicWord, constraints: Iterable[tuple[int, int]]) -> bool:
    return all(x(pos) == sym for pos, sym in constraints)


def periodic_cylinder_witness(constraints: Iterable[tuple[int, int]], alphabet) -> PeriodicWord:
    """A periodic configuration meeting every (position, symbol) constraint.

    The period is the width of the constrained window; positions outside
    the constraints get symbol 0.
    """
    a = _alphabet_size(alphabet)
    wanted: dict[int, int] = {}
    for pos, sym in constraints:
        if not 0 <= sym < a:
            raise MonoidError(f"symbol {sym} not in alphabet of size {a}")
        if wanted.setdefault(pos, sym) != sym:
            raise ContradictoryConstraints(f"position {pos} constrained to {wanted[pos]} and {sym}")
    if not wanted:
        raise ContradictoryConstraints("no constraints given")
    lo, hi = min(wanted), max(wanted)
    n = hi - lo + 1
    word = [0] * n
    for pos, sym in wanted.items():
        word[pos % n] = sym
    return PeriodicWord(word)


# --------------------------------------------------------------------------
# JSON


def configuration_to_json(x) -> dict:
    if isinstance(x, PeriodicWord):
        return {"period": x.period, "word": list(x.word)}
    return {"monoid": x.monoid.name or _inline(x.monoid), "values": list(x.values)}


def configuration_from_json(data, monoid: FiniteMonoid | None = None):
    from .monoid_core import monoid_from_json
    if "word" in data:
        if "period" in data and data["period"] != len(data["word"]):
            raise MonoidError("period does not match word length")
        return PeriodicWord(data["word"])
    M = monoid if monoid is not None else monoid_from_json(data["monoid"])
    return Configuration(M, data["values"])


def _inline(M: FiniteMonoid) -> dict:
    from .monoid_core import monoid_to_json
    return monoid_to_json(M)
