"""Command line: ``rfca <subcommand>``.

Exit codes: 0 success, 1 bad input, 2 inputs not distinct, 3 invalid certificate.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .cellular import compose, enumerate_ca, from_wolfram, identity_ca, map_from_json, rule_from_json
from .monoid_core import (
    CATALOG,
    MonoidError,
    NotAssociative,
    SemigroupMorphism,
    all_congruences,
    generating_set,
    load_monoid,
)
from .shift_space import CapExceeded, DEFAULT_CAP
from .witness_engine import (
    NotDistinct,
    NoSeparatingMorphism,
    certificate_from_json,
    dumps_certificate,
    malcev_hopf_check,
    separate_ca,
    separate_endomorphisms,
    verify_certificate,
)

EXIT_OK, EXIT_INPUT, EXIT_SAME, EXIT_INVALID = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_INPUT)


def _resolve_monoid(name_or_path):
    if name_or_path in CATALOG:
        return CATALOG[name_or_path]
    if os.path.exists(name_or_path):
        return load_monoid(name_or_path)
    raise InputError(f"{name_or_path!r} is neither a catalog monoid nor a file")


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _monoid_arg(args):
    src = getattr(args, "catalog", None) or getattr(args, "monoid", None) or getattr(args, "input", None)
    if src is None:
        raise InputError("give a monoid with --catalog or a JSON path")
    return _resolve_monoid(src)


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------


def cmd_monoid_check(args):
    try:
        M = _monoid_arg(args)
    except NotAssociative as exc:
        i, j, k = exc.witness
        print(f"invalid: not associative, witness triple ({i}, {j}, {k})")
        return EXIT_INPUT
    gens = generating_set(M)
    word = "generator" if len(gens) == 1 else "generators"
    print(f"valid, size {M.size}, {len(gens)} {word}")
    print(f"identity: {M.identity}")
    print("associative: yes")
    print(f"generating set: {gens}")
    if M.size <= 4:
        print(f"congruences: {len(all_congruences(M))}")
    return EXIT_OK


def cmd_ca_enumerate(args):
    M = _monoid_arg(args)
    try:
        cas = enumerate_ca(M, args.alphabet, cap=args.cap)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    graphs = {c.graph for c in cas}
    closed = all(compose(s, t).graph in graphs for s in cas for t in cas) if len(cas) <= 256 else None
    has_id = identity_ca(M, args.alphabet).graph in graphs
    lines = [f"{len(cas)} cellular automata", f"identity present: {'yes' if has_id else 'no'}"]
    lines.append("closed under composition: " + {True: "yes", False: "no", None: "not checked"}[closed])
    if args.graphs:
        lines += [" ".join(map(str, c.graph)) for c in cas]
    print("\n".join(lines))
    return EXIT_OK


def _load_ca(spec, monoid):
    data = _read_json(spec)
    if monoid is not None:
        return map_from_json(data, monoid)
    return rule_from_json(data)


def cmd_separate(args):
    if args.wolfram:
        t1, t2 = (from_wolfram(n) for n in args.wolfram)
    elif args.rule:
        t1, t2 = (rule_from_json(_read_json(p)) for p in args.rule)
    elif args.map:
        M = _monoid_arg(args)
        t1, t2 = (_load_ca(p, M) for p in args.map)
        if t1.alphabet != args.alphabet or t2.alphabet != args.alphabet:
            raise InputError("map alphabet does not match --alphabet")
    else:
        raise InputError("give --wolfram, --rule or --map")
    try:
        cert = separate_ca(t1, t2, seed=args.seed)
    except NotDistinct:
        print("rules define the same map", file=sys.stderr)
        return EXIT_SAME
    if args.verify:
        verdict = verify_certificate(cert)
        if not verdict:
            print(f"internal error: produced certificate fails: {verdict.reason}", file=sys.stderr)
            return EXIT_INVALID
    _emit(dumps_certificate(cert, meta={"tool": "rfca", "version": __version__}), args.output)
    return EXIT_OK


def cmd_verify(args):
    data = _read_json(args.certificate)
    try:
        cert = certificate_from_json(data)
    except (KeyError, ValueError, TypeError, MonoidError) as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    verdict = verify_certificate(cert)
    if verdict:
        print("certificate valid")
        return EXIT_OK
    extra = f" (witness: {verdict.witness})" if verdict.witness is not None else ""
    print(f"certificate invalid: {verdict.reason}{extra}")
    return EXIT_INVALID


def _endo(spec, M):
    if spec == "identity":
        images = list(range(M.size))
    elif spec == "constant":
        images = [M.identity] * M.size
    else:
        try:
            images = [int(v) for v in spec.split(",")]
        except ValueError:
            raise InputError(f"cannot parse endomorphism {spec!r}") from None
    return SemigroupMorphism(M, M, images)


def cmd_malcev(args):
    M = _monoid_arg(args)
    psi = _endo(args.endo, M)
    T = _resolve_monoid(args.target) if args.target else None
    s1, s2 = args.pair
    if s1 == s2:
        print("need two distinct elements", file=sys.stderr)
        return EXIT_SAME
    report = malcev_hopf_check(M, psi, s1, s2, T=T)
    print(report.summary())
    if args.json:
        payload = {
            "psi": list(psi.images), "pair": [s1, s2], "rho": list(report.rho.images),
            "morphisms": [list(u.images) for u in report.morphisms], "phi": report.phi,
            "surjective": report.surjective, "phi_injective": report.phi_injective,
            "u0": list(report.u0.images) if report.u0 else None, "conclusion": report.conclusion,
        }
        _emit(json.dumps(payload, sort_keys=True) + "\n", args.json)
    return EXIT_OK


def cmd_end_separate(args):
    M = _monoid_arg(args)
    a1, a2 = _endo(args.endo1, M), _endo(args.endo2, M)
    T = _resolve_monoid(args.target) if args.target else None
    try:
        cert = separate_endomorphisms(M, a1, a2, T=T)
    except NotDistinct:
        print("endomorphisms are equal", file=sys.stderr)
        return EXIT_SAME
    k = cert.gamma.class_of[cert.s0]
    print(f"quotient of size {cert.quotient.quotient.size}; induced maps differ at [{cert.s0}]: "
          f"{cert.induced1(k)} != {cert.induced2(k)}", file=sys.stderr)
    _emit(dumps_certificate(cert, meta={"tool": "rfca", "version": __version__}), args.output)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="rfca", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    mon = sub.add_parser("monoid").add_subparsers(dest="action", required=True, parser_class=_Parser)
    chk = mon.add_parser("check", help="validate a monoid table")
    chk.add_argument("input", nargs="?")
    chk.add_argument("--catalog", choices=sorted(CATALOG))
    chk.set_defaults(func=cmd_monoid_check)

    ca = sub.add_parser("ca").add_subparsers(dest="action", required=True, parser_class=_Parser)
    en = ca.add_parser("enumerate", help="list CA(M, A)")
    en.add_argument("input", nargs="?")
    en.add_argument("--catalog", choices=sorted(CATALOG))
    en.add_argument("--alphabet", type=int, default=2)
    en.add_argument("--cap", type=int, default=DEFAULT_CAP)
    en.add_argument("--graphs", action="store_true", help="print every graph")
    en.set_defaults(func=cmd_ca_enumerate)

    sep = sub.add_parser("separate", help="certificate separating two cellular automata")
    sep.add_argument("--wolfram", type=int, nargs=2, metavar="N")
    sep.add_argument("--rule", nargs=2, metavar="JSON")
    sep.add_argument("--map", nargs=2, metavar="JSON")
    sep.add_argument("--monoid")
    sep.add_argument("--catalog", choices=sorted(CATALOG))
    sep.add_argument("--alphabet", type=int, default=2)
    sep.add_argument("--seed", type=int, default=0)
    sep.add_argument("--verify", action="store_true")
    sep.add_argument("-o", "--output")
    sep.set_defaults(func=cmd_separate)

    ver = sub.add_parser("verify", help="check a certificate")
    ver.add_argument("certificate", help="path, or - for stdin")
    ver.set_defaults(func=cmd_verify)

    mal = sub.add_parser("malcev", help="Hopficity argument for one endomorphism")
    mal.add_argument("input", nargs="?")
    mal.add_argument("--catalog", choices=sorted(CATALOG))
    mal.add_argument("--endo", required=True, help="comma-separated images, 'identity' or 'constant'")
    mal.add_argument("--pair", type=int, nargs=2, required=True)
    mal.add_argument("--target")
    mal.add_argument("--json")
    mal.set_defaults(func=cmd_malcev)

    es = sub.add_parser("end-separate", help="finite quotient separating two endomorphisms")
    es.add_argument("input", nargs="?")
    es.add_argument("--catalog", choices=sorted(CATALOG))
    es.add_argument("--endo1", required=True)
    es.add_argument("--endo2", required=True)
    es.add_argument("--target")
    es.add_argument("-o", "--output")
    es.set_defaults(func=cmd_end_separate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, MonoidError, ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, NoSeparatingMorphism):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_SAME
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
