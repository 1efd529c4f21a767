"""Finite-quotient witnesses for cellular automata and endomorphisms.

* :func:`separate_ca_finite` / :func:`separate_ca_integer` map two distinct
  cellular automata to distinct self-maps of a finite invariant set
  ``X = Inv(γ)``, where γ is the orbit congruence of a configuration on
  which they disagree.
* :func:`malcev_hopf_check` runs ``Φ(u) = u ∘ ψ`` on ``Mor(S, T)``.
* :func:`separate_endomorphisms` passes to the quotient by the intersection
  of all kernels of morphisms ``S -> T`` and exhibits the induced maps.

Certificates hold raw data only.  :func:`verify_certificate` recomputes every
claim from that data and returns a falsy :class:`Verdict` naming the first
failed check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np

from .cellular import (
    EquivariantMap,
    LocalRule,
    NotClosed,
    Transformation,
    apply_rule,
    compose,
    is_equivariant,
    random_ca,
    rule_from_json,
    rule_to_json,
    rules_equal,
    tau_m,
    transformation_monoid,
)
from .monoid_core import (
    Congruence,
    FiniteMonoid,
    MonoidError,
    NotAMorphism,
    QuotientResult,
    SemigroupMorphism,
    canonical_labels,
    check_morphism,
    enumerate_morphisms,
    identity_morphism,
    intersect_congruences,
    is_congruence,
    kernel_relation,
    monoid_from_json,
    monoid_to_json,
    quotient,
)
from .shift_space import (
    Configuration,
    PeriodicWord,
    config_from_index,
    integer_orbit_congruence,
    inv,
    inv_integer,
    orbit,
    orbit_congruence,
)

SCHEMA = "rfca-certificate/1"


class NotDistinct(MonoidError):
    pass


class NoSeparatingMorphism(MonoidError):
    pass


@dataclass(frozen=True)
class SeparationCertificate:
    """Two automata, a witness where they differ, and their restrictions to X.

    ``congruence`` is a :class:`Congruence` on the finite backend and the
    modulus p on the integer backend.
    """

    tau1: EquivariantMap | LocalRule
    tau2: EquivariantMap | LocalRule
    witness: Configuration | PeriodicWord
    congruence: Congruence | int
    invariant_set: tuple
    image1: Transformation
    image2: Transformation

    @property
    def backend(self) -> str:
        return "integer" if isinstance(self.tau1, LocalRule) else "finite"


@dataclass(frozen=True)
class EndSeparationCertificate:
    source: FiniteMonoid
    alpha1: SemigroupMorphism
    alpha2: SemigroupMorphism
    test_target: FiniteMonoid
    gamma: Congruence
    quotient: QuotientResult
    induced1: SemigroupMorphism
    induced2: SemigroupMorphism
    s0: int


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = "ok"
    witness: object = None

    def __bool__(self):
        return self.ok


@dataclass
class MalcevReport:
    source: FiniteMonoid
    psi: SemigroupMorphism
    pair: tuple[int, int]
    target: FiniteMonoid
    rho: SemigroupMorphism
    morphisms: list[SemigroupMorphism]
    phi: list[int]
    surjective: bool
    phi_injective: bool
    u0: SemigroupMorphism | None = None
    conclusion: bool | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def hypothesis_holds(self) -> bool:
        return self.surjective

    def summary(self) -> str:
        s1, s2 = self.pair
        lines = [
            f"monoid of size {self.source.size}, psi = {list(self.psi.images)}",
            f"separating morphism rho into target of size {self.target.size}: {list(self.rho.images)}"
            f" (rho({s1}) = {self.rho(s1)}, rho({s2}) = {self.rho(s2)})",
            f"|Mor(S,T)| = {len(self.morphisms)}; Phi(u) = u o psi as index map: {self.phi}",
            f"psi surjective: {self.surjective}; Phi injective: {self.phi_injective}",
        ]
        if self.u0 is not None:
            lines.append(f"u0 = {list(self.u0.images)} satisfies u0 o psi = rho")
        if self.conclusion is not None:
            lines.append(f"conclusion: psi({s1}) = {self.psi(s1)} != {self.psi(s2)} = psi({s2})"
                         if self.conclusion else "conclusion FAILED")
        lines.extend(self.notes)
        return "\n".join(lines)


# --------------------------------------------------------------------------
# cellular automata


def _restrict(X, tau1, tau2):
    return transformation_monoid(X, tau1), transformation_monoid(X, tau2)


def separate_ca_finite(M: FiniteMonoid, alphabet, tau1: EquivariantMap, tau2: EquivariantMap,
                       samples: int = 16, seed: int = 0) -> SeparationCertificate:
    """Certificate that tau1 and tau2 have distinct images in Map(Inv(γ)).

    Also checks, on ``samples`` random pairs of automata plus the inputs and
    the τ_m, that restriction to X respects composition.
    """
    a = tau1.alphabet
    if tau1.monoid != M or tau2.monoid != M or tau2.alphabet != a or (
            alphabet is not None and int(getattr(alphabet, "size", alphabet)) != a):
        raise MonoidError("automata do not match the given monoid and alphabet")
    diff = next((i for i, (u, v) in enumerate(zip(tau1.graph, tau2.graph)) if u != v), None)
    if diff is None:
        raise NotDistinct("automata define the same map")
    x0 = config_from_index(M, a, diff)
    Y = orbit(x0)
    gamma = orbit_congruence(M, Y)
    X = tuple(inv(M, gamma, a))
    img1, img2 = _restrict(X, tau1, tau2)
    assert img1 != img2

    rng = np.random.default_rng(seed)
    pool = [tau1, tau2] + [tau_m(M, a, m) for m in range(M.size)]
    pool += [random_ca(M, a, rng) for _ in range(samples)]
    for _ in range(samples):
        s, t = (pool[i] for i in rng.integers(0, len(pool), size=2))
        rs, rt = _restrict(X, s, t)
        if transformation_monoid(X, compose(s, t)) != rs.after(rt):
            raise AssertionError("restriction to X failed to respect composition")
    return SeparationCertificate(tau1, tau2, x0, gamma, X, img1, img2)


def separate_ca_integer(r1: LocalRule, r2: LocalRule) -> SeparationCertificate:
    """Certificate built from the first periodic word (by period, then lexicographic) where the rules differ.

    A window where the padded tables differ, repeated with period 2R+1,
    is such a word, so the search stops by that period.
    """
    if rules_equal(r1, r2):
        raise NotDistinct("rules define the same map")
    a = r1.alphabet
    bound = 2 * max(r1.radius, r2.radius) + 1
    witness = None
    for p in range(1, bound + 1):
        for w in product(range(a), repeat=p):
            y = PeriodicWord(w)
            if apply_rule(r1, y) != apply_rule(r2, y):
                witness = y
                break
        if witness is not None:
            break
    if witness is None:
        raise AssertionError(f"no separating word of period <= {bound}")
    p = integer_orbit_congruence(witness)
    witness = PeriodicWord(witness.word[:p])
    X = tuple(inv_integer(p, a))
    img1, img2 = _restrict(X, r1, r2)
    return SeparationCertificate(r1, r2, witness, p, X, img1, img2)


def separate_ca(tau1, tau2, **kw) -> SeparationCertificate:
    """Dispatch on backend; keyword options only apply to the finite one."""
    if isinstance(tau1, LocalRule):
        return separate_ca_integer(tau1, tau2)
    return separate_ca_finite(tau1.monoid, tau1.alphabet, tau1, tau2, **kw)


def restriction_morphism(X: Sequence, taus: Sequence) -> list[Transformation]:
    """``ρ`` applied to each automaton: its restriction to X."""
    return [transformation_monoid(X, t) for t in taus]


# --------------------------------------------------------------------------
# Mal'cev


def _find_separating(S: FiniteMonoid, T: FiniteMonoid, a: int, b: int) -> SemigroupMorphism:
    for rho in enumerate_morphisms(S, T):
        if rho(a) != rho(b):
            return rho
    raise NoSeparatingMorphism(f"no morphism into the target separates {a} and {b}")


def malcev_hopf_check(S: FiniteMonoid, psi: SemigroupMorphism, s1: int, s2: int,
                      T: FiniteMonoid | None = None, rho: SemigroupMorphism | None = None) -> MalcevReport:
    """Run the Hopficity argument for psi on the pair (s1, s2).

    With no target given, T = S and rho is the identity.  When psi is not
    surjective the report says so and draws no conclusion.
    """
    if psi.source != S or psi.target != S:
        raise MonoidError("psi must be an endomorphism of S")
    if not (0 <= s1 < S.size and 0 <= s2 < S.size) or s1 == s2:
        raise MonoidError("need two distinct elements of S")
    if T is None:
        T = S
    if rho is None:
        rho = identity_morphism(S) if T == S else _find_separating(S, T, s1, s2)
    if rho.source != S or rho.target != T or rho(s1) == rho(s2):
        raise MonoidError("rho must be a morphism S -> T separating s1 and s2")

    mor = enumerate_morphisms(S, T)
    position = {u.images: i for i, u in enumerate(mor)}
    phi = [position[tuple(u.images[v] for v in psi.images)] for u in mor]
    report = MalcevReport(S, psi, (s1, s2), T, rho, mor, phi,
                          surjective=psi.is_surjective(),
                          phi_injective=len(set(phi)) == len(phi))
    if not report.surjective:
        report.notes.append("psi is not surjective: the argument does not apply")
        return report
    if not report.phi_injective:
        raise AssertionError("Phi failed to be injective for a surjective psi")
    target = position[tuple(rho.images)]
    u0 = mor[phi.index(target)]
    report.u0 = u0
    report.conclusion = psi(s1) != psi(s2)
    return report


# --------------------------------------------------------------------------
# endomorphisms


def common_kernel(S: FiniteMonoid, T: FiniteMonoid) -> Congruence:
    """The intersection of the kernels of all morphisms S -> T."""
    gamma = None
    for psi in enumerate_morphisms(S, T):
        k = kernel_relation(psi)
        gamma = k if gamma is None else intersect_congruences(gamma, k)
    return gamma


def preserves(alpha: SemigroupMorphism, gamma: Congruence) -> bool:
    c = gamma.class_of
    return all(c[alpha(a)] == c[alpha(b)]
               for a in range(len(c)) for b in range(a) if c[a] == c[b])


def induced_endomorphism(alpha: SemigroupMorphism, q: QuotientResult) -> SemigroupMorphism:
    """``[s] -> [alpha(s)]`` on the quotient."""
    c = q.projection.images
    reps: dict[int, int] = {}
    for s, k in enumerate(c):
        reps.setdefault(k, s)
    images = tuple(c[alpha(reps[k])] for k in range(q.quotient.size))
    return SemigroupMorphism(q.quotient, q.quotient, images, alpha.monoidal)


def separate_endomorphisms(S: FiniteMonoid, alpha1: SemigroupMorphism, alpha2: SemigroupMorphism,
                           T: FiniteMonoid | None = None, samples: int = 32) -> EndSeparationCertificate:
    """Finite quotient of S on which alpha1 and alpha2 still act differently."""
    for alpha in (alpha1, alpha2):
        if alpha.source != S or alpha.target != S:
            raise MonoidError("expected endomorphisms of S")
    if alpha1.images == alpha2.images:
        raise NotDistinct("endomorphisms are equal")
    if T is None:
        T = S
    s0 = next(s for s in range(S.size) if alpha1(s) != alpha2(s))
    _find_separating(S, T, alpha1(s0), alpha2(s0))

    gamma = common_kernel(S, T)
    for alpha in [alpha1, alpha2] + enumerate_morphisms(S, S)[:samples]:
        if not preserves(alpha, gamma):
            raise AssertionError("an endomorphism fails to preserve the common kernel")
    q = quotient(S, gamma)
    i1, i2 = induced_endomorphism(alpha1, q), induced_endomorphism(alpha2, q)
    k = gamma.class_of[s0]
    assert i1(k) != i2(k)
    return EndSeparationCertificate(S, alpha1, alpha2, T, gamma, q, i1, i2, s0)


# --------------------------------------------------------------------------
# verification


def verify_certificate(cert) -> Verdict:
    """Re-derive every claim in ``cert`` from its raw data."""
    try:
        if isinstance(cert, SeparationCertificate):
            if cert.backend == "integer":
                return _verify_integer(cert)
            return _verify_finite(cert)
        if isinstance(cert, EndSeparationCertificate):
            return _verify_end(cert)
    except (MonoidError, ValueError, IndexError, KeyError, TypeError) as exc:
        return Verdict(False, f"malformed certificate: {exc}")
    return Verdict(False, f"not a certificate: {type(cert).__name__}")


def _check_images(X, cert) -> Verdict:
    for name, tau, stored in (("image1", cert.tau1, cert.image1), ("image2", cert.tau2, cert.image2)):
        if stored.domain_size != len(X):
            return Verdict(False, f"{name} has the wrong domain size")
    if cert.image1 == cert.image2:
        return Verdict(False, "images coincide")
    for name, tau, stored in (("image1", cert.tau1, cert.image1), ("image2", cert.tau2, cert.image2)):
        fresh = transformation_monoid(X, tau)
        if fresh != stored:
            i = next(i for i, (u, v) in enumerate(zip(fresh.mapping, stored.mapping)) if u != v)
            return Verdict(False, f"{name} does not match the restriction", X[i])
    return Verdict(True)


def _check_closed(X, taus) -> Verdict:
    for tau in taus:
        try:
            transformation_monoid(X, tau)
        except NotClosed as exc:
            return Verdict(False, "X not closed", exc.witness)
    return Verdict(True)


def _verify_finite(cert: SeparationCertificate) -> Verdict:
    t1, t2 = cert.tau1, cert.tau2
    M, a = t1.monoid, t1.alphabet
    if t2.monoid != M or t2.alphabet != a:
        return Verdict(False, "automata live on different shift spaces")
    for t in (t1, t2):
        if not is_equivariant(M, a, t.graph):
            return Verdict(False, "map is not equivariant")
    x0 = cert.witness
    if t1(x0) == t2(x0):
        return Verdict(False, "witness does not separate", x0)
    gamma = cert.congruence
    if gamma.monoid != M or not is_congruence(M, gamma.class_of):
        return Verdict(False, "congruence is invalid")
    X = list(cert.invariant_set)
    if len(set(X)) != len(X):
        return Verdict(False, "X has repeated elements")
    v = _check_closed(X, (t1, t2))
    if not v:
        return v
    if x0 not in set(X):
        return Verdict(False, "witness not in X", x0)
    c = gamma.class_of
    for x in X:
        for m1 in range(M.size):
            for m2 in range(m1):
                if c[m1] == c[m2] and x.values[m1] != x.values[m2]:
                    return Verdict(False, "X element not constant on a class", x)
    if len(X) != a ** gamma.index:
        return Verdict(False, "X is not all of Inv(γ)")
    return _check_images(X, cert)


def _verify_integer(cert: SeparationCertificate) -> Verdict:
    r1, r2 = cert.tau1, cert.tau2
    if not isinstance(r2, LocalRule) or r1.alphabet != r2.alphabet:
        return Verdict(False, "rules are incompatible")
    a = r1.alphabet
    p = cert.congruence
    y = cert.witness
    if apply_rule(r1, y) == apply_rule(r2, y):
        return Verdict(False, "witness does not separate", y)
    if integer_orbit_congruence(y) != p or y.period != p:
        return Verdict(False, "modulus is not the minimal period of the witness", y)
    X = list(cert.invariant_set)
    if any(w.period != p for w in X):
        return Verdict(False, "X contains a word of the wrong period")
    if len({w.word for w in X}) != len(X):
        return Verdict(False, "X has repeated elements")
    v = _check_closed(X, (r1, r2))
    if not v:
        return v
    if y not in set(X):
        return Verdict(False, "witness not in X", y)
    if len(X) != a ** p:
        return Verdict(False, "X is not all of Inv(γ)")
    return _check_images(X, cert)


def _verify_end(cert: EndSeparationCertificate) -> Verdict:
    S, T = cert.source, cert.test_target
    for name, alpha in (("alpha1", cert.alpha1), ("alpha2", cert.alpha2)):
        try:
            check_morphism(S, S, alpha.images)
        except NotAMorphism as exc:
            return Verdict(False, f"{name} is not an endomorphism", exc.witness)
    if cert.alpha1.images == cert.alpha2.images:
        return Verdict(False, "endomorphisms coincide")
    gamma = common_kernel(S, T)
    if gamma.class_of != canonical_labels(cert.gamma.class_of):
        return Verdict(False, "gamma is not the common kernel")
    for name, alpha in (("alpha1", cert.alpha1), ("alpha2", cert.alpha2)):
        if not preserves(alpha, gamma):
            return Verdict(False, f"{name} does not preserve gamma")
    q = quotient(S, gamma)
    if q.quotient.table != cert.quotient.quotient.table or \
            q.projection.images != cert.quotient.projection.images:
        return Verdict(False, "quotient does not match")
    if cert.induced1.images == cert.induced2.images:
        return Verdict(False, "induced maps coincide")
    for name, alpha, stored in (("induced1", cert.alpha1, cert.induced1),
                                ("induced2", cert.alpha2, cert.induced2)):
        if induced_endomorphism(alpha, q).images != stored.images:
            return Verdict(False, f"{name} does not match the quotient action")
    k = gamma.class_of[cert.s0]
    if cert.induced1(k) == cert.induced2(k):
        return Verdict(False, "induced maps agree at [s0]", cert.s0)
    return Verdict(True)


# --------------------------------------------------------------------------
# JSON


def _monoid_json(M: FiniteMonoid):
    return monoid_to_json(M)


def certificate_to_json(cert, meta: dict | None = None) -> dict:
    if isinstance(cert, SeparationCertificate):
        if cert.backend == "integer":
            body = {
                "kind": "ca-integer",
                "tau1": rule_to_json(cert.tau1),
                "tau2": rule_to_json(cert.tau2),
                "witness": list(cert.witness.word),
                "modulus": cert.congruence,
                "invariant_set": [list(w.word) for w in cert.invariant_set],
            }
        else:
            M = cert.tau1.monoid
            body = {
                "kind": "ca-finite",
                "monoid": _monoid_json(M),
                "alphabet": cert.tau1.alphabet,
                "tau1": list(cert.tau1.graph),
                "tau2": list(cert.tau2.graph),
                "witness": list(cert.witness.values),
                "congruence": list(cert.congruence.class_of),
                "invariant_set": [list(x.values) for x in cert.invariant_set],
            }
        body["image1"] = list(cert.image1.mapping)
        body["image2"] = list(cert.image2.mapping)
    elif isinstance(cert, EndSeparationCertificate):
        body = {
            "kind": "end",
            "monoid": _monoid_json(cert.source),
            "test_target": _monoid_json(cert.test_target),
            "alpha1": list(cert.alpha1.images),
            "alpha2": list(cert.alpha2.images),
            "gamma": list(cert.gamma.class_of),
            "quotient": _monoid_json(cert.quotient.quotient),
            "induced1": list(cert.induced1.images),
            "induced2": list(cert.induced2.images),
            "s0": cert.s0,
        }
    else:
        raise TypeError(f"not a certificate: {type(cert).__name__}")
    out = {"schema": SCHEMA, **body}
    if meta:
        out["meta"] = meta
    return out


def dumps_certificate(cert, meta: dict | None = None) -> str:
    return json.dumps(certificate_to_json(cert, meta), sort_keys=True, separators=(",", ":")) + "\n"


def certificate_from_json(data: dict):
    """Rebuild a certificate; the ``meta`` key is ignored.

    Structural problems raise MonoidError/ValueError/KeyError; semantic
    problems are left for :func:`verify_certificate`.
    """
    if data.get("schema") != SCHEMA:
        raise ValueError(f"unsupported schema {data.get('schema')!r}")
    kind = data["kind"]
    if kind == "ca-integer":
        r1, r2 = rule_from_json(data["tau1"]), rule_from_json(data["tau2"])
        X = tuple(PeriodicWord(w) for w in data["invariant_set"])
        return SeparationCertificate(
            r1, r2, PeriodicWord(data["witness"]), int(data["modulus"]), X,
            Transformation(len(data["image1"]), data["image1"]),
            Transformation(len(data["image2"]), data["image2"]))
    if kind == "ca-finite":
        M = monoid_from_json(data["monoid"])
        a = int(data["alphabet"])
        t1 = EquivariantMap(M, a, data["tau1"])
        t2 = EquivariantMap(M, a, data["tau2"])
        labels = canonical_labels(data["congruence"])
        gamma = Congruence(M, labels, max(labels) + 1)
        X = tuple(Configuration(M, v) for v in data["invariant_set"])
        return SeparationCertificate(
            t1, t2, Configuration(M, data["witness"]), gamma, X,
            Transformation(len(data["image1"]), data["image1"]),
            Transformation(len(data["image2"]), data["image2"]))
    if kind == "end":
        S = monoid_from_json(data["monoid"])
        T = monoid_from_json(data["test_target"])
        Q = monoid_from_json(data["quotient"])
        labels = canonical_labels(data["gamma"])
        gamma = Congruence(S, labels, max(labels) + 1)
        proj = _unchecked_morphism(S, Q, labels)
        return EndSeparationCertificate(
            S,
            _unchecked_morphism(S, S, data["alpha1"]),
            _unchecked_morphism(S, S, data["alpha2"]),
            T, gamma, QuotientResult(Q, proj),
            _unchecked_morphism(Q, Q, data["induced1"]),
            _unchecked_morphism(Q, Q, data["induced2"]),
            int(data["s0"]))
    raise ValueError(f"unknown certificate kind {kind!r}")


def _unchecked_morphism(S, T, images) -> SemigroupMorphism:
    # verification re-checks the morphism equation itself
    m = object.__new__(SemigroupMorphism)
    object.__setattr__(m, "source", S)
    object.__setattr__(m, "target", T)
    object.__setattr__(m, "images", tuple(int(v) for v in images))
    object.__setattr__(m, "monoidal", False)
    if len(m.images) != S.size:
        raise ValueError("image array has the wrong length")
    return m


def loads_certificate(text: str):
    return certificate_from_json(json.loads(text))
