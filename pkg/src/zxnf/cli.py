"""Command-line front end: ``zxnf <command> ...``.

Exit codes: 0 success / equal, 1 not equal (or a failed check),
2 usage or parse error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cache
from .diagram import Diagram, ParseError, parse

EXIT_OK, EXIT_DIFFERENT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _diagram(arg: str) -> Diagram:
    text = arg
    if arg.startswith("@"):
        try:
            text = Path(arg[1:]).read_text().strip()
        except OSError as e:
            raise UsageError(f"cannot read {arg[1:]}: {e.strerror}") from None
    return parse(text)


def cmd_normalize(args) -> int:
    from .manf import normalize, render

    nf, cert = normalize(_diagram(args.input), certificate=args.certificate is not None)
    print(render(nf))
    if cert is not None:
        cert.save(args.certificate)
    return EXIT_OK


def cmd_eq(args) -> int:
    from .manf import check_equal

    equal, cert = check_equal(_diagram(args.d1), _diagram(args.d2), certificate=args.certificate is not None)
    print("equal" if equal else "not-equal")
    if equal and cert is not None:
        cert.save(args.certificate)
    return EXIT_OK if equal else EXIT_DIFFERENT


def cmd_matrix(args) -> int:
    from ._backend import diagram_matrix

    print(diagram_matrix(_diagram(args.input)))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .manf import enumerate_nf

    if args.tcount < 0:
        raise UsageError("--tcount must be non-negative")
    try:
        counts = enumerate_nf(args.tcount)
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(" ".join(f"{k}:{v}" for k, v in counts.items()))
    return EXIT_OK


def cmd_verify(args) -> int:
    from .rules import Certificate, verify_certificate

    try:
        cert = Certificate.load(args.cert)
    except OSError as e:
        raise UsageError(f"cannot read {args.cert}: {e.strerror}") from None
    except (ValueError, KeyError) as e:
        print(f"invalid certificate: {e}")
        return EXIT_DIFFERENT
    verdict = verify_certificate(cert)
    if verdict:
        print(f"ok ({len(cert)} steps)")
        return EXIT_OK
    print(f"failed at step {verdict.failed_step}: {verdict.reason}")
    return EXIT_DIFFERENT


def cmd_why_not_identity(args) -> int:
    from .clifford import clifford_group
    from .manf import MA, normalize, render
    from .stabparity import assert_not_identity

    nf, _ = normalize(_diagram(args.input), certificate=False)
    print(render(nf))
    if not isinstance(nf, MA):
        if nf.c == clifford_group().identity:
            print("the operator is the identity")
            return EXIT_DIFFERENT
        print("Clifford operator outside the identity class")
        return EXIT_OK
    for line in assert_not_identity(nf).lines():
        print(line)
    return EXIT_OK


def cmd_selftest(args) -> int:
    import itertools
    import random

    from ._backend import BACKEND, diagram_matrix
    from .clifford import clifford_group, clifford_normalize
    from .diagram import H, X, Z
    from .manf import MA, all_normal_forms, check_equal, derive_tables, enumerate_nf
    from .rules import rule_soundness_selftest, verify_certificate
    from .stabparity import assert_not_identity

    failed = False

    def report(name: str, ok: bool, detail: str = "") -> None:
        nonlocal failed
        failed |= not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}")

    print(f"backend: {BACKEND}")
    rules = rule_soundness_selftest()
    report("rule soundness", rules.ok, ", ".join(rules.summary()))
    t = derive_tables()
    report("table derivation", True, ", ".join(f"{k}={v}" for k, v in sorted(t.candidates.items())))
    g = clifford_group()
    words = [w for n in range(5) for w in itertools.product((Z(2), X(2), H), repeat=n)]
    ok = all(clifford_normalize(w).clifford.index == g.index_of(diagram_matrix(w)) for w in words)
    report("clifford normalization", ok, f"{len(words)} words")
    counts = enumerate_nf(5)
    expect = {0: 24, **{k: 72 * 2 ** (k - 1) for k in range(1, 6)}}
    report("normal form count law", counts == expect, " ".join(f"{k}:{v}" for k, v in counts.items()))
    n = sum(1 for nf in all_normal_forms(5) if isinstance(nf, MA) and assert_not_identity(nf))
    report("no normal form is the identity", True, f"{n} forms")
    rng = random.Random(0)
    nodes = [Z(k) for k in range(8)] + [X(k) for k in range(8)] + [H]
    certs = 0
    for _ in range(20):
        d = tuple(rng.choice(nodes) for _ in range(rng.randrange(12)))
        equal, cert = check_equal(d, (H, H) + d)
        certs += equal and bool(verify_certificate(cert))
    report("equality certificates", certs == 20, f"{certs}/20 verified")
    return EXIT_DIFFERENT if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zxnf", description="Normal forms for single-qubit Clifford+T ZX diagrams.")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the table cache")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", help="print the normal form of a diagram")
    s.add_argument("input", help="diagram text or @file")
    s.add_argument("--certificate", metavar="PATH", help="write a JSONL rewrite certificate")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("eq", help="decide equality up to a global scalar")
    s.add_argument("d1")
    s.add_argument("d2")
    s.add_argument("--certificate", metavar="PATH", help="write a JSONL certificate d1 -> d2")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("matrix", help="print the exact matrix")
    s.add_argument("input")
    s.set_defaults(func=cmd_matrix)

    s = sub.add_parser("enumerate", help="count normal forms per T-count")
    s.add_argument("--tcount", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("verify", help="replay a certificate")
    s.add_argument("cert", metavar="PATH")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("why-not-identity", help="stabilizer evidence that the operator is not a scalar")
    s.add_argument("input")
    s.set_defaults(func=cmd_why_not_identity)

    s = sub.add_parser("selftest", help="run the built-in consistency checks")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if args.no_cache:
        cache.disable()
    try:
        return args.func(args)
    except ParseError as e:
        print(f"zxnf: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"zxnf: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (AssertionError, RuntimeError) as e:
        print(f"zxnf: internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
