"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 config error, 3 I/O error.
"""

import argparse
import json
import logging
import os
import re
import sys

import numpy as np

from .. import bounds
from ..exceptions import ConfigError, DomainError
from ..linalg import SeededRng
from ..oracles import (ScalarChannel, ScalarQuantizer, TinySystem, flip_probability_numeric,
                       flip_probability_search, projection_equivalence_check,
                       scalar_conditional_mi_numeric, spread_bound_numeric, tiny_system_mi_exact,
                       tiny_system_mi_mc)
from .config import default_spec, parse_config
from .experiments import (cdf_samples, cdf_terms_table, run_asymptotics, run_cdf_experiment,
                          run_iota_sweep, run_unquantized_cdf)
from .render import Axes, cdf_points, render_csv, render_svg
from .verify import run_verify

log = logging.getLogger("quantjam")

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

SUBCOMMAND_KIND = {
    "sweep-iota": "iota_sweep",
    "cdf": "cdf",
    "unquantized-cdf": "unquantized_cdf",
    "asymptotics": "asymptotics",
}
ORACLES = ("flip", "search", "spread", "scalar-mi", "tiny", "projection")


def _slug(text):
    return re.sub(r"[^A-Za-z0-9]+", "_", text).strip("_")


def _global_options(parser, suppress):
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--config", metavar="PATH", default=default, help="JSON experiment config")
    parser.add_argument("--seed", type=int, default=default, help="override the config seed")
    parser.add_argument("--out", metavar="DIR", default=default, help="output directory (default .)")
    parser.add_argument("--workers", type=int, default=default, help="worker threads (default 1)")
    parser.add_argument("--trials", type=int, default=default, help="override the trial count")
    parser.add_argument("--svg", action="store_true", default=default, help="also write SVG figures")
    parser.add_argument("--verbose", action="store_true", default=default, help="log progress and bound terms")
    parser.add_argument("--quick", action="store_true", default=default, help="reduced trial counts")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quantjam",
        description="Mutual-information limits for jammed MIMO receivers with finite-resolution ADCs.")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("sweep-iota", "per-ADC bound against 1/SINR"),
                            ("cdf", "CDF of the system bound over channel draws"),
                            ("unquantized-cdf", "infinite-resolution baselines"),
                            ("asymptotics", "bound against jammer power and resolution policy"),
                            ("verify", "run the acceptance checks")):
        _global_options(sub.add_parser(name, help=help_text), suppress=True)
    oracle = sub.add_parser("oracle", help="run one numerical oracle")
    _global_options(oracle, suppress=True)
    oracle.add_argument("name", choices=ORACLES)
    oracle.add_argument("--levels", type=int, default=2, help="quantization levels M")
    oracle.add_argument("--sinr", type=float, default=1.0, help="R / sigma_d^2")
    oracle.add_argument("--boundaries", type=str, default=None,
                        help="comma-separated boundaries (default: symmetric uniform)")
    return parser


def _load_spec(args, kind):
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                text = fh.read()
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc.strerror}") from exc
        spec = parse_config(text)
        if spec.kind != kind:
            raise ConfigError(f"config is for {spec.kind!r}, subcommand expects {kind!r}", "kind")
    else:
        spec = default_spec(kind)
    trials = args.trials
    if args.quick and trials is None and kind in ("cdf", "unquantized_cdf"):
        trials = 1_000
    if trials is not None and trials < 1:
        raise ConfigError("must be positive", "trials")
    return spec.with_overrides(seed=args.seed, trials=trials)


def _write_csv(obj, out_dir, name):
    path = os.path.join(out_dir, name)
    render_csv(obj, path)
    print(path)
    return path


def _write_svg(curves, out_dir, name, axes):
    path = os.path.join(out_dir, name)
    render_svg(curves, path, axes)
    print(path)


def _cmd_sweep(args, out_dir):
    spec = _load_spec(args, "iota_sweep")
    table = run_iota_sweep(spec)
    _write_csv(table, out_dir, "iota_sweep.csv")
    if args.svg:
        curves = []
        for col, tag in (("iota_exact", ""), ("iota_simplified", " (simplified)")):
            for m in spec.bits_list:
                pts = [(r[0], r[table.columns.index(col)]) for r in table.rows if r[1] == m]
                curves.append((f"{m} bit{tag}", pts))
        _write_svg(curves, out_dir, "iota_sweep.svg",
                   Axes(xlabel="1/SINR [dB]", ylabel="bound [bits]", title="per-ADC bound"))


def _cmd_cdf(args, out_dir):
    spec = _load_spec(args, "cdf")
    samples = cdf_samples(spec, workers=args.workers)
    results = run_cdf_experiment(spec, samples=samples)
    for res in results:
        _write_csv(res, out_dir, f"cdf_{_slug(res.label)}.csv")
    if args.verbose:
        _write_csv(cdf_terms_table(spec, samples), out_dir, f"cdf_{spec.model.tag}_terms.csv")
    if args.svg:
        _write_svg([(r.label, cdf_points(r)) for r in results], out_dir, f"cdf_{spec.model.tag}.svg",
                   Axes(xlabel="bound [bits]", ylabel="CDF", step=True))


def _cmd_unquantized(args, out_dir):
    spec = _load_spec(args, "unquantized_cdf")
    results = run_unquantized_cdf(spec, workers=args.workers)
    for res in results:
        _write_csv(res, out_dir, f"unquantized_{_slug(res.label)}.csv")
    if args.svg:
        _write_svg([(r.label, cdf_points(r)) for r in results], out_dir,
                   f"unquantized_{spec.model.tag}.svg",
                   Axes(xlabel="mutual information [bits]", ylabel="CDF", step=True))


def _cmd_asymptotics(args, out_dir):
    spec = _load_spec(args, "asymptotics")
    table = run_asymptotics(spec)
    _write_csv(table, out_dir, "asymptotics.csv")
    if args.svg:
        curves = []
        for name in dict.fromkeys(table.column("policy")):
            curves.append((name, [(r[0], r[3]) for r in table.rows if r[1] == name]))
        _write_svg(curves, out_dir, "asymptotics.svg",
                   Axes(xlabel="jammer power [dB]", ylabel="bound [bits]"))


def _oracle_quantizer(args, sinr):
    if args.boundaries:
        return ScalarQuantizer(tuple(float(b) for b in args.boundaries.split(",")))
    return ScalarQuantizer.uniform(args.levels, 2.0 * np.sqrt(sinr) if sinr > 0 else 1.0)


def _cmd_oracle(args):
    name, sinr = args.name, args.sinr
    ch = ScalarChannel(sinr, 1.0)
    seed = 1 if args.seed is None else args.seed
    report = {"oracle": name}
    if name in ("flip", "scalar-mi"):
        q = _oracle_quantizer(args, sinr)
        M = q.levels
        report.update(levels=M, sinr=sinr, boundaries=list(q.boundaries))
        if name == "flip":
            report.update(flip_probability=flip_probability_numeric(q, ch), f_bar=bounds.f_bar(M, sinr))
        else:
            report.update(conditional_mi=scalar_conditional_mi_numeric(q, ch),
                          iota_bar=bounds.iota_bar(M, sinr))
    elif name == "search":
        starts, iters = (4, 30) if args.quick else (32, 200)
        best, q = flip_probability_search(args.levels, ch, starts=starts, iterations=iters, seed=seed)
        report.update(levels=args.levels, sinr=sinr, best_flip_probability=best,
                      boundaries=list(q.boundaries), f_bar=bounds.f_bar(args.levels, sinr))
    elif name == "spread":
        report.update(levels=args.levels, sinr=sinr,
                      spread_integral=spread_bound_numeric(args.levels, ch),
                      f_bar=bounds.f_bar(args.levels, sinr))
    elif name == "tiny":
        rng = SeededRng(seed)
        cp_h = rng.substream(0).generator().standard_normal((1, 1, 2)) @ np.array([1.0, 1j])
        ts = TinySystem(cp_h, np.array([[1.0]]), 1.0, 0.1)
        trials = 20_000 if args.quick else 100_000
        est = tiny_system_mi_mc(ts, 2, trials, rng.substream(1))
        bound = bounds.mutual_info_upper_bound(bounds.SystemConfig(1, 1, 1, 1.0, 0.1, 2), ts.channels)
        report.update(exact=tiny_system_mi_exact(ts), monte_carlo=est.value, stderr=est.stderr,
                      upper_bound=bound.value)
    else:
        samples = 1_000 if args.quick else 10_000
        rep = projection_equivalence_check(SeededRng(seed), 16, 2, 1, samples)
        report.update(max_abs_mean=rep.max_abs_mean, max_var_deviation=rep.max_var_deviation,
                      ks_distance=rep.ks_distance, samples=rep.samples)
    print(json.dumps(report, indent=2))


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.workers = args.workers or 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out_dir = args.out or "."
    try:
        if args.command == "verify":
            return run_verify(quick=bool(args.quick), workers=args.workers)
        if args.command == "oracle":
            _cmd_oracle(args)
            return EXIT_OK
        os.makedirs(out_dir, exist_ok=True)
        {"sweep-iota": _cmd_sweep, "cdf": _cmd_cdf, "unquantized-cdf": _cmd_unquantized,
         "asymptotics": _cmd_asymptotics}[args.command](args, out_dir)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
