"""Command-line front end: ``orthonorm <subcommand> ...``.

Exit status is 0 on success, 1 on invalid input and 2 when a numerical
procedure fails to converge.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .errors import ConvergenceError, DomainError

log = logging.getLogger("orthonorm")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _real_or_inf(text: str) -> float:
    if text.strip().lower() == "inf":
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number or 'inf', got {text!r}") from None


def _g(v: float) -> str:
    return f"{v:.17g}"


@dataclass
class RunManifest:
    command: str
    params: dict
    outputs: list[str] = field(default_factory=list)
    timestamp: str = ""

    def write(self, path) -> None:
        self.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        missing = [p for p in self.outputs if not Path(p).exists()]
        if missing:
            raise RuntimeError(f"manifest lists missing outputs: {missing}")
        Path(path).write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n")


def _params(args) -> dict:
    return {k: (str(v) if isinstance(v, float) and math.isinf(v) else v) for k, v in sorted(vars(args).items())
            if k not in ("func",) and v is not None}


def _finish(args, outputs: list[str]) -> None:
    target = args.manifest
    if target is None and outputs:
        target = outputs[0] + ".manifest.json"
    if target is not None:
        RunManifest(args.command, _params(args), outputs).write(target)


def _family_poly(args, n: int):
    if args.family == "jacobi":
        from .jacobi import JacobiParams, JacobiPolynomial

        return JacobiPolynomial(JacobiParams(args.alpha, args.beta), n)
    if args.family == "gegenbauer":
        from .gegenbauer import GegenbauerParams, GegenbauerPolynomial

        if args.lam is None or args.mu is None:
            raise DomainError("gegenbauer family requires --lambda and --mu")
        return GegenbauerPolynomial(GegenbauerParams(args.lam, args.mu), n)
    from .ortho_general import OrthonormalPolynomial, WeightParams, cached_recurrence

    return OrthonormalPolynomial(cached_recurrence(WeightParams(args.alpha, args.beta, args.gamma), n + 1), n)


def _check_n(n: int) -> int:
    if n < 0:
        raise DomainError("requires n >= 0")
    return n


def cmd_eval(args) -> int:
    f = _family_poly(args, _check_n(args.n))
    print(repr(float(f(args.x))))
    _finish(args, [])
    return 0


def cmd_recurrence(args) -> int:
    from .ortho_general import WeightParams, build_recurrence, write_recurrence_csv

    table = build_recurrence(WeightParams(args.alpha, args.beta, args.gamma), args.count)
    write_recurrence_csv(table, args.out)
    print(f"wrote {len(table)} coefficients to {args.out}")
    _finish(args, [str(args.out)])
    return 0


def cmd_norm(args) -> int:
    from .experiments import norm_of
    from .weights import WeightParams

    f = _family_poly(args, _check_n(args.n))
    w = WeightParams(args.walpha, args.wbeta, args.wgamma)
    print(repr(norm_of(f, args.p, w, args.n)))
    _finish(args, [])
    return 0


def _dyadic(nmin: int, nmax: int) -> list[int]:
    if nmin < 1 or nmax < nmin:
        raise DomainError("requires 1 <= nmin <= nmax")
    out = []
    n = nmin
    while n <= nmax:
        out.append(n)
        n *= 2
    return out


def cmd_lemma(args) -> int:
    from .quad_norms import LemmaQuery, lemma_integral, lemma_regime
    from .weights import WeightParams

    q = LemmaQuery(args.part, args.tilde, args.p, WeightParams(args.alpha, args.beta, args.gamma), args.y1, args.y2)
    regime, s = lemma_regime(q)
    grid = _dyadic(args.nmin, args.nmax)
    vals = [lemma_integral(q, n) for n in grid]
    rows = [["n", "integral", "ratio_to_previous"]]
    prev = None
    for n, v in zip(grid, vals):
        rows.append([n, _g(v), _g(v / prev) if prev else ""])
        prev = v
    print(f"regime {regime}" + (f", exponent {s:g}" if regime == "power" else ""))
    wr = csv.writer(sys.stdout, lineterminator="\n")
    wr.writerows(rows)
    outputs = []
    if args.out:
        with open(args.out, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)
        outputs.append(str(args.out))
    _finish(args, outputs)
    return 0


def _gnuplot(csv_path: str, report) -> str:
    f = report.fitted
    nrows = len(report.rows)
    return "\n".join(
        [
            "set datafile separator ','",
            "set logscale xy",
            "set xlabel 'n'",
            "set ylabel '||P_n||_q / ||P_n||_p'",
            "set key left top",
            f"fit_line(x) = exp({_g(f.intercept)}) * x**({_g(f.slope)})",
            f"plot '{csv_path}' every ::1::{nrows} using 1:4 with linespoints title 'ratio', \\",
            f"     fit_line(x) title sprintf('slope %.3f', {_g(f.slope)})",
            "",
        ]
    )


def cmd_sharpness(args) -> int:
    from .experiments import ExperimentConfig, run_sharpness, write_report_csv

    cfg = ExperimentConfig(args.alpha, args.beta, args.mu, args.p, args.q, args.nu, tuple(_dyadic(args.nmin, args.nmax)))
    if len(cfg.n_grid) < 3:
        raise DomainError("sharpness needs at least 3 degrees between nmin and nmax")
    report = run_sharpness(cfg, workers=args.workers)
    write_report_csv(report, args.out)
    outputs = [str(args.out)]
    if args.plot:
        Path(args.plot).write_text(_gnuplot(str(args.out), report))
        outputs.append(str(args.plot))
    f = report.fitted
    print(
        f"slope {f.slope:.6f} (stderr {f.stderr:.2e}); theory_upper {report.theory_upper!r}, "
        f"theory_lower {report.theory_lower!r}"
    )
    _finish(args, outputs)
    return 0


def cmd_verify(args) -> int:
    from .acceptance import run_suite

    results = run_suite(args.suite, echo=print)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    _finish(args, [])
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orthonorm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--manifest", help="write a JSON run manifest here")

    def family(p):
        p.add_argument("--family", choices=["jacobi", "gegenbauer", "general"], required=True)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--alpha", type=float, default=0.0)
        p.add_argument("--beta", type=float, default=0.0)
        p.add_argument("--gamma", type=float, default=0.0)
        p.add_argument("--lambda", dest="lam", type=float)
        p.add_argument("--mu", type=float)

    p = sub.add_parser("eval", help="evaluate a polynomial at one point")
    family(p)
    p.add_argument("--x", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("recurrence", help="build and save recurrence coefficients")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--out", required=True)
    common(p)
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("norm", help="weighted L_p or uniform norm of a polynomial")
    family(p)
    p.add_argument("--p", type=_real_or_inf, required=True)
    p.add_argument("--walpha", type=float, default=0.0)
    p.add_argument("--wbeta", type=float, default=0.0)
    p.add_argument("--wgamma", type=float, default=0.0)
    common(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("lemma", help="piecewise integrals of |p_n|^p over dyadic n")
    p.add_argument("--part", choices=["right", "middle", "left"], required=True)
    p.add_argument("--tilde", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--y1", type=float, default=-0.5)
    p.add_argument("--y2", type=float, default=0.5)
    p.add_argument("--nmin", type=int, default=64)
    p.add_argument("--nmax", type=int, default=1024)
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("sharpness", help="fit the growth of ||P_n||_q / ||P_n||_p")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=_real_or_inf, required=True)
    p.add_argument("--nu", type=float)
    p.add_argument("--nmin", type=int, default=64)
    p.add_argument("--nmax", type=int, default=4096)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--plot")
    common(p)
    p.set_defaults(func=cmd_sharpness)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--suite", choices=["all", "quick"], default="quick")
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"orthonorm: error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (DomainError, IndexError) as exc:
        print(f"orthonorm: error: {exc}", file=sys.stderr)
        return 1
    except ConvergenceError as exc:
        print(f"orthonorm: numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
