"""Command-line front end: ``teichgap <command> ...`` (also ``python -m teichgap``)."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import constructions as C
from . import group_words as G
from . import origami as O
from . import spectral as SP
from . import verify as V


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="teichgap", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an origami and write it in text format")
    b.add_argument("which", choices=["e2", "x", "y", "z"])
    b.add_argument("--k", type=_positive, default=3)
    b.add_argument("-o", "--output", type=Path)
    b.add_argument("--labels", type=Path, help="also write the square/vertex label sidecar")

    i = sub.add_parser("inspect", help="print invariants of an origami file")
    i.add_argument("file", type=Path)

    s = sub.add_parser("iso", help="test two origami files for isomorphism")
    s.add_argument("file1", type=Path)
    s.add_argument("file2", type=Path)

    m = sub.add_parser("member", help="membership of a matrix in Gamma_2, PGamma_6, +-Gamma_6(2k)")
    m.add_argument("--matrix", required=True, help='four integers "a b c d", row-major')
    m.add_argument("--k", type=_positive, default=3)

    v = sub.add_parser("veech", help="Veech group orbit of an origami file")
    v.add_argument("file", type=Path)
    v.add_argument("--max-orbit", type=_positive, default=10_000)
    v.add_argument("--budget", type=_positive_float, default=V.DEFAULT_BUDGET)

    sp = sub.add_parser("spectral", help="spectral-gap bounds")
    sp.add_argument("--k", type=_positive, nargs="+", default=[3])

    sub.add_parser("appendix-min-n", help="least N forcing complementary series for Gamma_2(N)")

    ve = sub.add_parser("verify", help="run a verification suite")
    ve.add_argument("suite", choices=list(V.SUITES) + ["all", "theorem-a"])
    ve.add_argument("--k", type=_positive, nargs="+", default=[3])
    ve.add_argument("--budget", type=_positive_float, default=V.DEFAULT_BUDGET)
    ve.add_argument("--json", action="store_true")
    return p


def _load(path: Path) -> O.Origami:
    return O.loads(path.read_text())


def _cmd_build(args) -> int:
    builders = {"e2": lambda: C.build_E2(), "x": C.build_X,
                "y": lambda: C.build_Y(args.k), "z": lambda: C.build_Z(args.k)}
    lo = builders[args.which]()
    name = {"e2": "E[2]", "x": "X", "y": f"Y({args.k})", "z": f"Z_{args.k}"}[args.which]
    text = O.dumps(lo.origami, [f"{name}, square labels ({','.join(lo.fields)})"])
    if args.output:
        args.output.write_text(text)
    else:
        sys.stdout.write(text)
    if args.labels:
        args.labels.write_text(C.dumps_labels(lo))
    return 0


def _cmd_inspect(args) -> int:
    o = _load(args.file)
    print(f"squares: {o.n}")
    print(f"connected: {o.is_connected()}")
    print(f"genus: {O.genus(o)}")
    print(f"stratum: {C.format_multiset(O.stratum(o)) if O.stratum(o) else '{}'}")
    for d in ("horizontal", "vertical"):
        cyl = O.cylinders(o, d)
        print(f"{d} cylinders: {sum(c for _, c in cyl)} "
              f"({', '.join(f'{c} of circumference {w}' for w, c in cyl)})")
    print(f"translations: {len(O.translations(o))}")
    return 0


def _cmd_iso(args) -> int:
    iso = O.is_isomorphic(_load(args.file1), _load(args.file2))
    print("isomorphic" if iso is not None else "not isomorphic")
    return 0 if iso is not None else 1


def _cmd_member(args) -> int:
    m = G.Mat2.parse(args.matrix)
    k = args.k
    in_g2 = G.membership(m, "PGamma_2")
    print(f"matrix: {m}")
    print(f"in +-Gamma_2: {'yes' if in_g2 else 'no'}")
    print(f"in PGamma_6: {'yes' if G.membership(m, 'PGamma_6') else 'no'}")
    print(f"in +-Gamma_6({2 * k}): {'yes' if G.membership(m, 'PGamma_6(2k)', k=k) else 'no'}")
    if in_g2:
        sign, word = G.decompose_gamma2(m)
        print(f"word: {'-' if sign < 0 else ''}{G.format_word(word) or '1'}")
    return 0


def _cmd_veech(args) -> int:
    res = O.veech_orbit(_load(args.file), max_orbit=args.max_orbit, budget=args.budget)
    print(f"orbit size: {res.size}{'' if res.complete else ' (incomplete: ' + res.reason + ')'}")
    print(f"stabilizer generators: {len(res.stabilizer)}")
    for m in res.stabilizer[:20]:
        print(f"  {m}")
    return 0 if res.complete else 1


def _cmd_spectral(args) -> int:
    print(f"{'k':>4} {'h bound':>10} {'lambda bound':>13} {'gap bound':>10} {'sqrt3/k':>9} "
          f"{'compl.series':>12} {'noncongr.':>9}")
    for k in args.k:
        b = SP.bounds_for_k(k)
        gap = f"{b.gap_bound:.6f}" if b.gap_bound is not None else "n/a"
        print(f"{k:>4} {b.h_bound:>10.6f} {b.lambda_bound:>13.6f} {gap:>10} {b.gap_coarse:>9.6f} "
              f"{'yes' if b.complementary_series_certified else 'no':>12} "
              f"{'yes' if b.noncongruence_certified else 'no':>9}")
    return 0


def _cmd_appendix(args) -> int:
    print(SP.appendix_min_N())
    return 0


def _cmd_verify(args) -> int:
    if args.suite == "theorem-a":
        rep = V.VerificationReport("theorem-a")
        for k in args.k:
            sub = V.certificate_theorem_A(k, budget=min(args.budget, 20.0))
            for c in sub.claims:
                c.id = f"k{k}.{c.id}"
            rep.extend(sub)
    else:
        rep = V.run_suite(args.suite, args.k, args.budget)
    print(rep.to_json() if args.json else rep.to_text())
    return 0 if rep.overall else 1


_COMMANDS = {
    "build": _cmd_build, "inspect": _cmd_inspect, "iso": _cmd_iso, "member": _cmd_member,
    "veech": _cmd_veech, "spectral": _cmd_spectral, "appendix-min-n": _cmd_appendix,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        parser.print_usage(sys.stderr)
        print(f"teichgap: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
