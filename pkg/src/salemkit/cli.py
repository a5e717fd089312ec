"""Command-line front door.

Every subcommand is a pure function of its input files and flags: no
clocks, no locale, no environment.  Stochastic experiment commands refuse
to run without an explicit --seed.  Exit codes: 0 success, 1 domain
failure (for example a hypothesis check failed under --strict), 2 usage
error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import statistics
import sys
from fractions import Fraction

from . import aps, cantor, core_sets, equidist, formats, measures, randfrac
from .formats import FormatError


class UsageError(Exception):
    """Flag combination that argparse alone cannot reject."""


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise FormatError(f"bad integer list {text!r}") from exc


def _rational_list(text: str) -> list[Fraction]:
    return [formats.parse_rational(part) for part in text.split(",") if part.strip() != ""]


def _emit(args, payload, *, csv_text: str | None = None) -> None:
    """Write to --output when given, else print to stdout."""
    fmt = getattr(args, "format", "json")
    if fmt == "csv" and csv_text is not None:
        if args.output:
            formats.write_report(csv_text, args.output, "csv")
        else:
            sys.stdout.write(csv_text)
        return
    data = payload.as_dict() if hasattr(payload, "as_dict") else payload
    if args.output:
        formats.write_report(data, args.output, "json")
    else:
        sys.stdout.write(formats.canonical_json(data) + "\n")


def _load_points(args) -> list[Fraction]:
    if getattr(args, "points", None):
        return _rational_list(args.points)
    if getattr(args, "points_file", None):
        return formats.load_points(args.points_file)
    raise UsageError("need --points or --points-file")


# Subcommand handlers.  Each returns the process exit code.


def cmd_density(args) -> int:
    A = formats.load_integer_set(args.input)
    grid = _int_list(args.grid) if args.grid else [2**j for j in range(2, A.horizon.bit_length())] + [A.horizon]
    est = core_sets.fractional_density(A, sorted(set(grid)))
    _emit(args, {
        "exponent": est.exponent,
        "residual": est.residual,
        "samples": [[n, c] for n, c in est.sample_points],
        "empty": est.empty,
    })
    return 0


def cmd_dft(args) -> int:
    A = formats.load_integer_set(args.input)
    if args.freqs:
        freqs = _int_list(args.freqs)
    elif args.all_freqs:
        freqs = list(range(A.horizon))
    else:
        freqs = core_sets.geometric_grid(1, A.horizon - 1, args.per_octave, integers=True)
    samples = core_sets.dft_char(A, freqs)
    csv_text = formats.spectrum_csv(samples, freq_label="m")
    _emit(args, {"spectrum": [{"m": s.frequency, "re": s.value.real, "im": s.value.imag, "abs": abs(s.value)} for s in samples]}, csv_text=csv_text)
    return 0


def cmd_weyl(args) -> int:
    points = _load_points(args)
    value = core_sets.weyl_sum(points, args.m)
    _emit(args, {"m": args.m, "re": value.real, "im": value.imag, "abs": abs(value)})
    return 0


def cmd_plan(args) -> int:
    A = formats.load_integer_set(args.input)
    etas = [Fraction(1)] * len(_int_list(args.horizons)) if args.unit_eta else None
    plan = cantor.make_plan(A, _int_list(args.horizons), args.beta, etas=etas)
    formats.save_plan(plan, args.output)
    return 0


def cmd_construct(args) -> int:
    plan = formats.load_plan(args.plan)
    stage = cantor.build_stage(plan, args.depth)
    csv_text = formats.stage_csv(stage)
    if args.output:
        formats.write_report(csv_text, args.output, "csv")
    else:
        sys.stdout.write(csv_text)
    return 0


def cmd_measure_decay(args) -> int:
    plan = formats.load_plan(args.plan)
    depth = args.truncation_depth if args.truncation_depth else plan.depth
    measure = measures.StagewiseMeasure(plan, depth, theta=args.theta)
    grid = core_sets.geometric_grid(args.u_min, args.u_max, args.per_octave, integers=args.integer_grid)
    beta = args.beta if args.beta is not None else plan.beta
    report = measures.decay_check(measure, grid, beta, args.tolerance)
    if args.spectrum:
        samples = [core_sets.SpectrumSample(float(u), measures.mu_hat(measure, u)) for u in grid]
        formats.write_report(formats.spectrum_csv(samples, freq_label="u"), args.spectrum, "csv")
    _emit(args, report)
    return 0 if report.passed or not args.strict else 1


def cmd_approximate(args) -> int:
    if args.plan:
        plan = formats.load_plan(args.plan)
        target = cantor.build_stage(plan, args.depth)
    else:
        target = _load_points(args)
    approx = equidist.n_approximation(target, args.N)
    formats.save_approximation(approx, args.output)
    return 0


def cmd_characterize(args) -> int:
    approximations = [formats.load_approximation(p) for p in args.inputs]
    report = equidist.characterize_salem(approximations, args.beta, args.tolerance)
    _emit(args, report)
    return 0 if report.verdict == "salem" or not args.strict else 1


def cmd_extract_integers(args) -> int:
    approximations = [formats.load_approximation(p) for p in args.inputs]
    B = equidist.integers_from_approximations(approximations)
    formats.save_integer_set(B, args.output)
    return 0


def cmd_ap_find(args) -> int:
    A = formats.load_integer_set(args.input)
    witnesses = aps.find_ap_integers(A, args.n, first_only=args.first_only)
    csv_text = formats.witnesses_csv(witnesses)
    _emit(args, {"witnesses": [{"start": w.start, "difference": w.difference, "length": w.length} for w in witnesses]}, csv_text=csv_text)
    return 0


def cmd_ap_embed(args) -> int:
    A = formats.load_integer_set(args.input)
    exponents = _int_list(args.exponents)
    depth = args.depth if args.depth else len(exponents)
    points = aps.dyadic_embed(A, exponents, depth)
    formats.save_points(points, args.output)
    return 0


def cmd_ap_descent(args) -> int:
    points = _load_points(args)
    hit = aps.grid_ap_descent(points, args.n, args.k_max)
    if hit is None:
        _emit(args, {"found": False, "stage": None, "indices": []})
    else:
        _emit(args, {"found": True, "stage": hit.stage, "indices": list(hit.indices)})
    return 0


def cmd_thm32_check(args) -> int:
    A = formats.load_integer_set(args.input)
    report = aps.check_thm32_hypotheses(A, args.beta, args.C)
    _emit(args, report)
    return 0 if not (args.strict and report.failed) else 1


def cmd_random_salem(args) -> int:
    config = randfrac.RandomFractalConfig(args.beta, tuple(_int_list(args.levels)), args.depth, args.trials, args.seed)
    if args.dump_trial is not None:
        trial = randfrac.generate_trial(config, args.dump_trial)
        formats.write_report({
            "trial_index": trial.trial_index,
            "master_seed": trial.master_seed,
            "beta": trial.beta,
            "level_sizes": list(trial.level_sizes),
            "stages": [list(s) for s in trial.stages],
            "white_counts": list(trial.white_counts),
            "extinct": trial.extinct,
        }, args.trial_output)
    stats = randfrac.dimension_experiment(config)
    _emit(args, stats)
    return 0


def cmd_lemma63(args) -> int:
    config = randfrac.RandomFractalConfig(args.beta, (args.n1,), 1, args.trials, args.seed)
    report = randfrac.lemma63_experiment(config, args.epsilon, args.u_max)
    if args.spectrum:
        trial = randfrac.generate_trial(config, 0)
        samples = [
            core_sets.SpectrumSample(float(u), randfrac.mu1_hat(trial, u))
            for u in range(1, args.u_max + 1)
        ]
        formats.write_report(formats.spectrum_csv(samples, freq_label="u"), args.spectrum, "csv")
    _emit(args, report)
    return 0


def cmd_corollary64(args) -> int:
    config = randfrac.RandomFractalConfig(args.beta, tuple(_int_list(args.levels)), args.depth, args.trials, args.seed)
    alphas = []
    extinct = 0
    for t in range(config.trials):
        trial = randfrac.generate_trial(config, t)
        if trial.extinct:
            extinct += 1
            continue
        alphas.append(randfrac.corollary64_check(trial).alpha)
    payload = {
        "target_order": 1.0 - config.beta,
        "median_alpha": statistics.median(alphas) if alphas else None,
        "alphas": alphas,
        "extinct": extinct,
        "trials": config.trials,
    }
    _emit(args, payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="salemkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("density", cmd_density, "fit the growth exponent of |A ∩ [0,N)| over a checkpoint grid")
    p.add_argument("--input", required=True)
    p.add_argument("--grid", help="comma list of checkpoints N (default: powers of 2 up to the horizon)")
    p.add_argument("--output")

    p = add("dft", cmd_dft, "normalized sparse spectrum of an integer set's indicator")
    p.add_argument("--input", required=True)
    p.add_argument("--freqs", help="comma list of frequencies")
    p.add_argument("--all-freqs", action="store_true", help="every frequency in [0, N)")
    p.add_argument("--per-octave", type=int, default=8)
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--output")

    p = add("weyl", cmd_weyl, "normalized exponential sum of rational points at one frequency")
    p.add_argument("--points", help="comma list of rationals in [0,1)")
    p.add_argument("--points-file")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--output")

    p = add("plan", cmd_plan, "build a nested-interval plan from an integer set's prefixes")
    p.add_argument("--input", required=True)
    p.add_argument("--horizons", required=True, help="comma list of per-level sizes N_k")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--unit-eta", action="store_true", help="use eta = 1 (no padding) at every level")
    p.add_argument("--output", required=True)

    p = add("construct", cmd_construct, "exact stage endpoints of a plan at a given depth")
    p.add_argument("--plan", "--config", dest="plan", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--output")

    p = add("measure-decay", cmd_measure_decay, "fit the spectral decay exponent of the stagewise measure")
    p.add_argument("--plan", "--config", dest="plan", required=True)
    p.add_argument("--truncation-depth", type=int)
    p.add_argument("--beta", type=float, help="target exponent (default: the plan's beta)")
    p.add_argument("--u-min", type=float, default=2.0)
    p.add_argument("--u-max", type=float, default=4096.0)
    p.add_argument("--per-octave", type=int, default=16)
    p.add_argument("--integer-grid", action="store_true")
    p.add_argument("--theta", type=float, default=1e-3)
    p.add_argument("--tolerance", type=float, default=0.1)
    p.add_argument("--spectrum", help="also write the sampled spectrum as CSV")
    p.add_argument("--strict", action="store_true")
    p.add_argument("--output")

    p = add("approximate", cmd_approximate, "grid cells meeting a plan stage or a rational point list")
    p.add_argument("--plan", "--config", dest="plan")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--points")
    p.add_argument("--points-file")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--output", required=True)

    p = add("characterize", cmd_characterize, "density/equidistribution verdict for a stage sequence")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--tolerance", type=float, default=0.1)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--output")

    p = add("extract-integers", cmd_extract_integers, "integer set encoding the new cells of each stage")
    p.add_argument("--inputs", nargs="+", required=True)
    p.add_argument("--output", required=True)

    p = add("ap-find", cmd_ap_find, "arithmetic progressions of a given length in an integer set")
    p.add_argument("--input", required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--first-only", action="store_true")
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--output")

    p = add("ap-embed", cmd_ap_embed, "map an integer set into [0,1) by the progression-preserving dyadic sum")
    p.add_argument("--input", required=True)
    p.add_argument("--exponents", required=True, help="comma list of increasing dyadic exponents")
    p.add_argument("--depth", type=int)
    p.add_argument("--output", required=True)

    p = add("ap-descent", cmd_ap_descent, "finest dyadic stage whose floor indices carry an integer progression")
    p.add_argument("--points")
    p.add_argument("--points-file")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--output")

    p = add("thm32-check", cmd_thm32_check, "density/decay hypotheses sufficient for a 3-term progression")
    p.add_argument("--input", required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--output")

    p = add("random-salem", cmd_random_salem, "dimension statistics of Bernoulli refinement trials")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--levels", required=True, help="comma list of per-level sizes N_i")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dump-trial", type=int, help="also dump this trial's stage cells as JSON")
    p.add_argument("--trial-output", default="trial.json")
    p.add_argument("--output")

    p = add("lemma63", cmd_lemma63, "single-stage closeness of the reweighted measure to Lebesgue")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--u-max", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--spectrum", help="write trial 0's reweighted-measure spectrum as CSV")
    p.add_argument("--output")

    p = add("corollary64", cmd_corollary64, "equidistribution order of surviving final-stage cells across trials")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--levels", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output")

    return parser


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"salemkit: {exc}", file=sys.stderr)
        return 2
    except FormatError as exc:
        print(f"salemkit: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"salemkit: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"salemkit: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
