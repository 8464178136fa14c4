"""Command-line interface.

Exit codes: 0 when the command succeeds and the conclusion is CERTIFIED (or a
data command succeeds); 1 when it succeeds with REJECTED or INCONCLUSIVE (for
`tame`: a FAIL verdict); 2 on usage or internal errors.  The environment
variable WZ_CACHE_DIR overrides the cache location.
"""

import argparse
import sys

from . import certify as certify_mod
from . import hecke, qseries, tame


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="wzcert",
        description="Exact mod-p certification of level-one eigenform "
                    "hypotheses for weight-zero symmetric-power lifts.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", help="certify one prime in one regime")
    c.add_argument("--p", type=int, required=True, help="prime to certify (> 5)")
    c.add_argument("--mode", choices=["ordinary", "nonordinary"], required=True)
    c.add_argument("--out", help="write the certificate JSON to this path")
    c.add_argument("--bimg", type=int, default=None,
                   help="witness-search bound for image checks")
    c.add_argument("--strict", action="store_true",
                   help="raise the congruence bound to the Sturm-scale value")

    s = sub.add_parser("scan", help="certify all primes up to a bound")
    s.add_argument("--pmax", type=int, required=True)
    s.add_argument("--mode", choices=["ordinary", "nonordinary", "both"],
                   required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--out", help="write the scan report JSON to this path")

    e = sub.add_parser("eigenform", help="print q-expansion coefficients")
    e.add_argument("--weight", type=int, required=True)
    e.add_argument("--prec", type=int, required=True)
    e.add_argument("--modp", type=int, default=None,
                   help="print mod-p eigen system expansions")
    e.add_argument("--exact", action="store_true",
                   help="exact integers (requires a one-dimensional space)")

    t = sub.add_parser("tame", help="print inertial multisets and lift verdict")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--k", type=int, required=True)
    t.add_argument("--n", type=int, default=None)
    t.add_argument("--case", choices=["ordinary", "nonordinary"], required=True)
    return parser


def _cmd_certify(args):
    cert = certify_mod.certify(args.p, args.mode, B_img=args.bimg,
                               strict=args.strict)
    text = certify_mod.emit_certificate(cert, args.out)
    if args.out:
        print(f"{args.mode} certificate for p={args.p}: {cert.conclusion} "
              f"-> {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0 if cert.conclusion == certify_mod.CERTIFIED else 1


def _cmd_scan(args):
    modes = ["ordinary", "nonordinary"] if args.mode == "both" else [args.mode]
    code = 0
    for i, mode in enumerate(modes):
        report = certify_mod.scan_report(args.pmax, mode, jobs=args.jobs)
        out = args.out
        if out and len(modes) > 1:
            out = f"{out}.{mode}.json" if not out.endswith(".json") \
                else out[:-5] + f".{mode}.json"
        text = certify_mod.emit_report(report, out)
        if out:
            print(f"{mode} scan to {args.pmax}: certified {report.certified} "
                  f"-> {out}", file=sys.stderr)
        else:
            sys.stdout.write(text)
    return code


def _cmd_eigenform(args):
    k, prec, p = args.weight, args.prec, args.modp
    if p is None:
        d = qseries.dim_cusp(k)
        if d != 1:
            raise SystemExit2(
                f"dim S_{k} = {d}; exact expansions need a one-dimensional "
                "space (use --modp for eigen system expansions)")
        form = qseries.miller_basis(k, prec).forms[0]
        for n, c in enumerate(form.coeffs):
            print(f"{n} {c}")
        return 0
    if args.exact:
        raise SystemExit2("--exact and --modp are mutually exclusive")
    blocks = hecke.expansions(p, k, prec)
    if not blocks:
        print(f"# no cusp forms in weight {k}")
        return 0
    for i, block in enumerate(blocks):
        print(f"# system {i}: degree {block['d']}, multiplicity {block['mult']}")
        if block["coeffs"] is None:
            print("# (degenerate class: no normalized expansion)")
            continue
        for n, coords in enumerate(block["coeffs"]):
            print(f"{n} {','.join(str(c) for c in coords)}")
    return 0


def _cmd_tame(args):
    p, k = args.p, args.k

    def show(result):
        print(f"computed: {_fmt_type(result.got)}")
        print(f"expected: {_fmt_type(result.expected)}")
        print(f"verdict: {'PASS' if result.passed else 'FAIL'}")
        return result.passed

    ok = True
    if args.case == "ordinary":
        ns = [args.n] if args.n is not None else [p - 2, p - 1]
        for n in ns:
            print(f"n = {n}:")
            ok = show(tame.lift_check_ordinary(p, k, n)) and ok
    else:
        if args.n is not None and args.n != p:
            raise SystemExit2("the non-ordinary case always has n = p")
        print(f"n = {p}:")
        ok = show(tame.lift_check_nonordinary(p, k)) and ok
    return 0 if ok else 1


def _fmt_type(T):
    parts = [f"eps^{e}" for e in sorted(T.level1_exponents())]
    parts += [f"omega2^({e},{pe})" for e, pe in sorted(T.level2_pairs())]
    return " + ".join(parts) if parts else "(empty)"


class SystemExit2(Exception):
    """Usage error carrying a message; mapped to exit code 2."""


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "certify": _cmd_certify,
        "scan": _cmd_scan,
        "eigenform": _cmd_eigenform,
        "tame": _cmd_tame,
    }
    try:
        return handlers[args.command](args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
