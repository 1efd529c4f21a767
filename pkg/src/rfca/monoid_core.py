"""Finite monoids given by multiplication tables.

Elements are the integers ``0..size-1``; ``table[i][j]`` is the index of the
product ``i*j``.  Congruences are stored as class-label arrays numbered by
first occurrence, so two congruences on the same monoid are equal exactly
when their label arrays are equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

import numpy as np


class MonoidError(ValueError):
    """Base class for invalid algebraic input."""


class IndexOutOfRange(MonoidError):
    pass


class NotAssociative(MonoidError):
    def __init__(self, triple):
        self.witness = triple
        i, j, k = triple
        super().__init__(f"table is not associative at ({i}, {j}, {k})")


class BadIdentity(MonoidError):
    def __init__(self, element):
        self.witness = element
        super().__init__(f"identity law fails at element {element}")


class NotAMorphism(MonoidError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotACongruence(MonoidError):
    pass


class MonoidMismatch(MonoidError):
    pass


@dataclass(frozen=True, eq=True)
class FiniteMonoid:
    """A finite monoid on ``0..size-1``.  Build with :func:`make_monoid`."""

    size: int
    table: tuple[tuple[int, ...], ...]
    identity: int
    name: str | None = field(default=None, compare=False)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, elements: Iterable[int]) -> int:
        result = self.identity
        for e in elements:
            result = self.table[result][e]
        return result

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.int64).reshape(self.size, self.size)

    def elements(self) -> range:
        return range(self.size)

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.size) for j in range(i))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteMonoid{label} size={self.size} identity={self.identity}>"


def make_monoid(table: Sequence[Sequence[int]], identity: int, name: str | None = None) -> FiniteMonoid:
    """Validate a multiplication table and return the monoid it defines.

    Raises IndexOutOfRange for a non-square table or stray entries,
    BadIdentity and NotAssociative with the offending element / triple.
    """
    rows = [list(map(int, row)) for row in table]
    n = len(rows)
    if n == 0:
        raise IndexOutOfRange("a monoid has at least one element")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise IndexOutOfRange(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise IndexOutOfRange(f"entry ({i}, {j}) = {v} outside 0..{n - 1}")
    if not 0 <= identity < n:
        raise IndexOutOfRange(f"identity {identity} outside 0..{n - 1}")
    for i in range(n):
        if rows[identity][i] != i or rows[i][identity] != i:
            raise BadIdentity(i)

    t = np.asarray(rows, dtype=np.int64)
    # (ij)k and i(jk) for all triples at once
    left = t[t[:, :, None], np.arange(n)[None, None, :]]
    right = t[np.arange(n)[:, None, None], t[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        raise NotAssociative(tuple(int(v) for v in bad[0]))

    return FiniteMonoid(n, tuple(tuple(r) for r in rows), int(identity), name)


def opposite(M: FiniteMonoid) -> FiniteMonoid:
    """Same elements, reversed product."""
    n = M.size
    table = tuple(tuple(M.table[j][i] for j in range(n)) for i in range(n))
    name = None if M.name is None else (M.name[:-3] if M.name.endswith("^op") else M.name + "^op")
    return FiniteMonoid(n, table, M.identity, name)


def submonoid_closure(M: FiniteMonoid, generators: Iterable[int]) -> set[int]:
    """Elements reachable from the identity by right multiplication by generators."""
    gens = list(dict.fromkeys(generators))
    seen = {M.identity}
    frontier = [M.identity]
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = M.table[s][g]
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def generating_set(M: FiniteMonoid) -> list[int]:
    """A monoid generating set from which no element can be dropped.

    Elements are taken greedily in index order, then redundant ones are
    pruned.  The identity is never listed since it is always present.
    """
    gens: list[int] = []
    reached = {M.identity}
    for e in range(M.size):
        if e not in reached:
            gens.append(e)
            reached = submonoid_closure(M, gens)
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if len(submonoid_closure(M, rest)) == M.size:
            gens = rest
    return gens


# --------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class SemigroupMorphism:
    source: FiniteMonoid
    target: FiniteMonoid
    images: tuple[int, ...]
    monoidal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        check_morphism(self.source, self.target, self.images, self.monoidal)

    def __call__(self, s: int) -> int:
        return self.images[s]

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.size

    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.size

    def then(self, other: "SemigroupMorphism") -> "SemigroupMorphism":
        """``other ∘ self``."""
        if other.source != self.target:
            raise MonoidMismatch("cannot compose: target and source differ")
        return SemigroupMorphism(self.source, other.target,
                                 tuple(other.images[v] for v in self.images),
                                 self.monoidal and other.monoidal)


def check_morphism(S: FiniteMonoid, T: FiniteMonoid, images: Sequence[int], monoidal: bool = False) -> None:
    if len(images) != S.size:
        raise NotAMorphism(f"expected {S.size} images, got {len(images)}")
    for s, v in enumerate(images):
        if not 0 <= v < T.size:
            raise NotAMorphism(f"image of {s} is {v}, outside the target", witness=(s,))
    if monoidal and images[S.identity] != T.identity:
        raise NotAMorphism("identity is not sent to the identity", witness=(S.identity,))
    for a in range(S.size):
        row = S.table[a]
        ia = images[a]
        trow = T.table[ia]
        for b in range(S.size):
            if images[row[b]] != trow[images[b]]:
                raise NotAMorphism(f"morphism equation fails at pair ({a}, {b})", witness=(a, b))


def identity_morphism(M: FiniteMonoid) -> SemigroupMorphism:
    return SemigroupMorphism(M, M, tuple(range(M.size)), True)


def constant_morphism(S: FiniteMonoid, T: FiniteMonoid) -> SemigroupMorphism:
    """The morphism sending everything to the identity of T."""
    return SemigroupMorphism(S, T, (T.identity,) * S.size, True)


def _is_morphism(S, T, images, monoidal) -> bool:
    try:
        check_morphism(S, T, images, monoidal)
    except NotAMorphism:
        return False
    return True


def enumerate_morphisms(S: FiniteMonoid, T: FiniteMonoid, monoidal: bool = False) -> list[SemigroupMorphism]:
    """All morphisms S -> T, sorted lexicographically by image array.

    Small sources (at most 4 elements) are scanned exhaustively; otherwise
    images are chosen for the identity and a generating set and propagated
    along products, and each surviving candidate is checked on the full table.
    """
    if S.size <= 4:
        found = [imgs for imgs in product(range(T.size), repeat=S.size)
                 if _is_morphism(S, T, imgs, monoidal)]
    else:
        found = sorted(_backtrack_morphisms(S, T, monoidal))
    return [SemigroupMorphism(S, T, imgs, monoidal) for imgs in found]


def _backtrack_morphisms(S: FiniteMonoid, T: FiniteMonoid, monoidal: bool):
    gens = generating_set(S)
    if monoidal:
        unit_choices = [T.identity]
    else:
        unit_choices = [e for e in range(T.size) if T.table[e][e] == e]

    def extend(assigned):
        images = [None] * S.size
        images[S.identity] = assigned[0]
        for g, v in zip(gens, assigned[1:]):
            if images[g] is not None and images[g] != v:
                return None
            images[g] = v
        visited = {S.identity}
        queue = [S.identity]
        while queue:
            s = queue.pop()
            for g in gens:
                t = S.table[s][g]
                v = T.table[images[s]][images[g]]
                if images[t] is None:
                    images[t] = v
                elif images[t] != v:
                    return None
                if t not in visited:
                    visited.add(t)
                    queue.append(t)
        return tuple(images)

    for unit in unit_choices:
        for choice in product(range(T.size), repeat=len(gens)):
            imgs = extend((unit, *choice))
            if imgs is not None and _is_morphism(S, T, imgs, monoidal):
                yield imgs


# --------------------------------------------------------------------------
# congruences


def canonical_labels(labels: Sequence) -> tuple[int, ...]:
    """Renumber arbitrary hashable labels by first occurrence."""
    seen: dict = {}
    return tuple(seen.setdefault(v, len(seen)) for v in labels)


@dataclass(frozen=True)
class Congruence:
    monoid: FiniteMonoid
    class_of: tuple[int, ...]
    index: int

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.index)]
        for s, c in enumerate(self.class_of):
            out[c].append(s)
        return out

    def related(self, a: int, b: int) -> bool:
        return self.class_of[a] == self.class_of[b]

    def refines(self, other: "Congruence") -> bool:
        """True when every class of self lies inside a class of other."""
        mapping: dict[int, int] = {}
        for a, b in zip(self.class_of, other.class_of):
            if mapping.setdefault(a, b) != b:
                return False
        return True


def is_congruence(M: FiniteMonoid, class_of: Sequence[int]) -> bool:
    """Whether the partition given by ``class_of`` is stable under both translations."""
    if len(class_of) != M.size:
        raise MonoidMismatch(f"expected {M.size} labels, got {len(class_of)}")
    n = M.size
    for s in range(n):
        left: dict = {}
        right: dict = {}
        for a in range(n):
            c = class_of[a]
            if left.setdefault(c, class_of[M.table[s][a]]) != class_of[M.table[s][a]]:
                return False
            if right.setdefault(c, class_of[M.table[a][s]]) != class_of[M.table[a][s]]:
                return False
    return True


def make_congruence(M: FiniteMonoid, labels: Sequence) -> Congruence:
    """Congruence from any labelling of elements; raises NotACongruence if unstable."""
    class_of = canonical_labels(labels)
    if not is_congruence(M, class_of):
        raise NotACongruence("partition is not compatible with multiplication")
    return Congruence(M, class_of, max(class_of) + 1)


def identity_congruence(M: FiniteMonoid) -> Congruence:
    return Congruence(M, tuple(range(M.size)), M.size)


def full_congruence(M: FiniteMonoid) -> Congruence:
    return Congruence(M, (0,) * M.size, 1)


def kernel_relation(phi: SemigroupMorphism) -> Congruence:
    class_of = canonical_labels(phi.images)
    return Congruence(phi.source, class_of, max(class_of) + 1)


def intersect_congruences(g1: Congruence, g2: Congruence) -> Congruence:
    if g1.monoid != g2.monoid:
        raise MonoidMismatch("congruences live on different monoids")
    class_of = canonical_labels(zip(g1.class_of, g2.class_of))
    return Congruence(g1.monoid, class_of, max(class_of) + 1)


@dataclass(frozen=True)
class QuotientResult:
    quotient: FiniteMonoid
    projection: SemigroupMorphism


def quotient(M: FiniteMonoid, gamma: Congruence) -> QuotientResult:
    """The quotient monoid, its classes numbered as in ``gamma``."""
    if gamma.monoid != M:
        raise MonoidMismatch("congruence belongs to another monoid")
    if not is_congruence(M, gamma.class_of):
        raise NotACongruence("partition is not compatible with multiplication")
    reps = [cls[0] for cls in gamma.classes()]
    c = gamma.class_of
    table = [[c[M.table[a][b]] for b in reps] for a in reps]
    Q = make_monoid(table, c[M.identity])
    return QuotientResult(Q, SemigroupMorphism(M, Q, c, True))


def set_partitions(n: int):
    """Restricted growth strings of length n: every partition of 0..n-1 once."""
    if n == 0:
        yield ()
        return

    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for v in range(top + 2):
            prefix.append(v)
            yield from rec(prefix, max(top, v))
            prefix.pop()

    yield from rec([0], 0)


def all_congruences(M: FiniteMonoid) -> list[Congruence]:
    """Every congruence of M by filtering all set partitions (small M only)."""
    return [Congruence(M, p, max(p) + 1) for p in set_partitions(M.size) if is_congruence(M, p)]


# --------------------------------------------------------------------------
# catalog and JSON


def cyclic_group(n: int) -> FiniteMonoid:
    return make_monoid([[(i + j) % n for j in range(n)] for i in range(n)], 0, f"z{n}")


def _catalog() -> dict[str, FiniteMonoid]:
    return {
        "trivial": make_monoid([[0]], 0, "trivial"),
        "z2": cyclic_group(2),
        "z3": cyclic_group(3),
        "z6": cyclic_group(6),
        # {1, a} with a*a = a
        "semilattice2": make_monoid([[0, 1], [1, 1]], 0, "semilattice2"),
        # {1, a, b} with xy = x for x, y in {a, b}
        "leftzero3": make_monoid([[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0, "leftzero3"),
    }


CATALOG = _catalog()


def catalog_monoid(name: str) -> FiniteMonoid:
    try:
        return CATALOG[name]
    except KeyError:
        raise MonoidError(f"unknown catalog monoid {name!r}; known: {', '.join(CATALOG)}") from None


def monoid_to_json(M: FiniteMonoid) -> dict:
    return {"size": M.size, "identity": M.identity, "table": [list(r) for r in M.table]}


def monoid_from_json(data) -> FiniteMonoid:
    """Accept a catalog name or a ``{"size", "identity", "table"}`` object."""
    if isinstance(data, str):
        return catalog_monoid(data)
    try:
        table = data["table"]
        identity = data["identity"]
    except (KeyError, TypeError):
        raise MonoidError("monoid JSON needs 'table' and 'identity'") from None
    if "size" in data and data["size"] != len(table):
        raise IndexOutOfRange(f"size {data['size']} does not match table with {len(table)} rows")
    return make_monoid(table, identity)


def load_monoid(path: str) -> FiniteMonoid:
    with open(path) as fh:
        return monoid_from_json(json.load(fh))
