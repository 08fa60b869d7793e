"""Command-line front end.

Every subcommand accepts ``--config FILE`` (``compare`` also accepts the
alias ``--scenario``): a flat ``key = value`` file with ``#`` comments whose
keys are the long flag names (dashes or underscores). Flags given on the
command line win over the file.

Exit codes: 0 success, 1 configuration or usage error, 2 invariant violation.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from regevcost.errors import ConfigurationError, InvariantViolation, NonInvertibleError
from regevcost.lattice import PRESETS, ReductionModel, parse_reduction
from regevcost.numtheory import ElementStyle, gen_fib, k_max
from regevcost.regev import DEFAULT_R_CANDIDATES
from regevcost.report import (
    RegevConfig,
    ShorConfig,
    build_comparison,
    crossover_search,
    fixed_point,
    format_advantage,
    reproduce_tables,
)
from regevcost.schedules import (
    binary_schedule_calls,
    ehs_schedule_calls,
    emulate_binary_schedule,
    emulate_ehs_schedule,
    verify_fib_product_identity,
)
from regevcost.shor import (
    Algorithm,
    Mode,
    ProblemInstance,
    ProblemKind,
    TradeoffTable,
    builtin_table,
    overall_ops,
    per_run_ops,
    shor_params,
)

DEFAULT_MODULUS = 4294967291  # largest prime below 2^32


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- value parsers ----------------------------------------------------------


def _reduction(text: str) -> ReductionModel:
    try:
        return parse_reduction(text)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _style(text: str) -> ElementStyle:
    try:
        return ElementStyle(text.strip().lower())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown style {text!r} (expected egr or regev)") from None


def _r_choice(text: str) -> int | None:
    token = text.strip().lower()
    if token == "auto":
        return None
    try:
        value = int(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--r expects 'auto' or a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"--r must be positive, got {value}")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _problem(text: str) -> ProblemKind:
    try:
        return ProblemKind.parse(text)
    except ConfigurationError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _mode(text: str) -> Mode:
    try:
        return Mode(text.strip().lower())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown mode {text!r} (expected single or tradeoff)") from None


def _algorithm(text: str) -> Algorithm:
    try:
        return Algorithm(text.strip().lower())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown algorithm {text!r} (expected ehs or es)") from None


def _sizes(text: str) -> list[int]:
    return [_positive(part) for part in text.replace(",", " ").split()]


def _which(text: str) -> list[str]:
    return [part for part in text.replace(",", " ").split() if part]


# -- config files -----------------------------------------------------------


def read_config(path: str) -> dict[str, str]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(parser: argparse.ArgumentParser, path: str) -> None:
    actions = {a.dest: a for a in parser._actions if a.option_strings and a.dest != "help"}
    defaults = {}
    for key, text in read_config(path).items():
        action = actions.get(key)
        if action is None or key in ("config",):
            raise ConfigurationError(f"{path}: unknown key {key!r}")
        if action.nargs == 0:
            defaults[key] = text.lower() in ("1", "true", "yes", "on")
            continue
        convert = action.type or str
        try:
            value = convert(text)
        except argparse.ArgumentTypeError as exc:
            raise ConfigurationError(f"{path}: {key}: {exc}") from None
        if action.choices is not None and value not in action.choices:
            raise ConfigurationError(f"{path}: {key}: invalid choice {text!r}")
        defaults[key] = value
    parser.set_defaults(**defaults)


# -- subcommands ------------------------------------------------------------


def _regev_config(args: argparse.Namespace) -> RegevConfig:
    return RegevConfig(
        reduction=args.reduction,
        style=args.style,
        r=args.r,
        r_candidates=tuple(DEFAULT_R_CANDIDATES),
        k=args.k,
        w=args.w,
        dm_rule=args.dm_rule,
    )


def _tradeoff(path: str | None):
    if path is None:
        return builtin_table()
    return builtin_table().merged(TradeoffTable.from_file(path))


def cmd_estimate_regev(args: argparse.Namespace) -> list[str]:
    p = _regev_config(args).parameterize(args.n)
    cost = p.cost
    return [
        f"n: {p.n}",
        f"reduction: {args.reduction}",
        f"style: {p.style.value}",
        f"d: {p.d}",
        f"m: {'unbounded' if p.m is None else p.m}",
        f"C: {p.C:.{3 if p.m is None else 2}f}",
        f"log_d: {p.log_d}",
        f"r: {p.r}",
        f"s: {p.s}",
        f"K: {p.K}",
        f"k: {p.k}",
        f"w: {p.w}",
        f"ops_fib: {cost.fib_part}",
        f"ops_k: {cost.k_part}",
        f"ops_per_run: {cost.per_run_ops}",
        f"ops_overall: {'unbounded' if cost.overall_ops is None else cost.overall_ops}",
    ]


def cmd_estimate_shor(args: argparse.Namespace) -> list[str]:
    instance = ProblemInstance(args.problem, args.n, args.z)
    if args.algorithm is not None and args.algorithm is not args.problem.algorithm:
        raise ConfigurationError(
            f"problem {args.problem.value} is solved with {args.problem.algorithm.value}, not {args.algorithm.value}"
        )
    p = shor_params(instance, args.mode, args.w, _tradeoff(args.tradeoff_file))
    lines = [
        f"n: {args.n}",
        f"problem: {args.problem.value}",
        f"algorithm: {p.algorithm.value}",
        f"mode: {p.mode.value}",
        f"m: {p.m}",
        f"s: {'--' if p.s is None else p.s}",
        f"ell: {p.ell}",
    ]
    if p.algorithm is Algorithm.ES:
        lines.append(f"varsigma: {p.varsigma}")
    lines += [
        f"runs: {p.runs}",
        f"w: {p.w}",
        f"ops_per_run: {per_run_ops(p)}",
        f"ops_overall: {overall_ops(p)}",
    ]
    return lines


def cmd_compare(args: argparse.Namespace) -> list[str]:
    regev = _regev_config(args)
    shor = ShorConfig(args.mode, args.shor_w, _tradeoff(args.tradeoff_file))
    header = "n,problem,d,m,C,log_d,K,r,regev_run,regev_all,shor_run,shor_all,adv_run,adv_all,adv_run_exact,adv_all_exact"
    lines = [header]
    for n in args.n:
        row = build_comparison(ProblemInstance(args.problem, n, args.z), regev, shor)
        p = row.regev
        overall = row.regev_cost.overall_ops
        lines.append(
            ",".join(
                str(x)
                for x in (
                    n, args.problem.value, p.d, "unbounded" if p.m is None else p.m,
                    f"{p.C:.{3 if p.m is None else 2}f}", p.log_d, p.K, p.r,
                    row.regev_cost.per_run_ops, "unbounded" if overall is None else overall,
                    row.shor_per_run, row.shor_overall,
                    format_advantage(row.adv_per_run), format_advantage(row.adv_overall),
                    fixed_point(row.adv_per_run), fixed_point(row.adv_overall),
                )
            )
        )
    return lines


def cmd_tables(args: argparse.Namespace) -> list[str]:
    text = reproduce_tables(args.which, args.format, args.bkz)
    return text.splitlines()


def cmd_crossover(args: argparse.Namespace) -> list[str]:
    provider = _tradeoff(args.tradeoff_file)
    result = crossover_search(
        _regev_config(args),
        ShorConfig(Mode.TRADEOFF, args.shor_w),
        provider,
        args.start,
        args.step,
        args.limit,
        args.problem,
        args.sizes,
    )
    lines = ["n,regev_run,shor_run,adv_run"]
    for pt in result.trajectory:
        lines.append(f"{pt.n},{pt.regev_per_run},{pt.shor_per_run},{fixed_point(pt.adv_per_run)}")
    found = "none" if result.crossover_n is None else str(result.crossover_n)
    lines.append(f"crossover: {found}")
    return lines


def _random_units(rng: random.Random, count: int, modulus: int) -> list[int]:
    # Toy moduli are prime or near-prime; resample the rare non-units.
    out = []
    while len(out) < count:
        x = rng.randrange(1, modulus)
        try:
            pow(x, -1, modulus)
        except ValueError:
            continue
        out.append(x)
    return out


def cmd_emulate(args: argparse.Namespace) -> list[str]:
    rng = random.Random(args.seed)
    N = args.modulus
    lines = [f"schedule: {args.schedule}", f"seed: {args.seed}", f"modulus: {N}"]
    if args.schedule == "binary":
        l = args.bits
        cs = _random_units(rng, l, N)
        res = emulate_binary_schedule(cs, N)
        direct = 1
        for j, c in enumerate(cs):
            direct = direct * pow(c, 1 << j, N) % N
        lines += [
            f"l: {l}",
            f"result: {res.result}",
            f"direct: {direct}",
            f"match: {res.result == direct}",
            f"calls: {res.calls}",
            f"predicted_calls: {binary_schedule_calls(l)}",
            f"peak_registers: {res.peak_registers}",
        ]
    elif args.schedule == "ehs":
        n_e = args.bits
        vs = _random_units(rng, n_e, N)
        bits = [rng.randrange(2) for _ in range(n_e)]
        res = emulate_ehs_schedule(vs, bits, N, args.w)
        direct = 1
        for v, b in zip(vs, bits):
            if b:
                direct = direct * v % N
        lines += [
            f"n_e: {n_e}",
            f"w: {args.w}",
            f"result: {res.result}",
            f"direct: {direct}",
            f"match: {res.result == direct}",
            f"calls: {res.calls}",
            f"predicted_calls: {ehs_schedule_calls(n_e, args.w)}",
            f"peak_registers: {res.peak_registers}",
        ]
    else:
        D = 1 << args.bits
        a = _random_units(rng, args.d, N)
        z = [rng.randrange(-D // 2, D // 2) for _ in range(args.d)]
        ok = verify_fib_product_identity(a, z, args.fib_r, D, N)
        K = k_max(args.fib_r, args.bits)
        lines += [
            f"d: {args.d}",
            f"r: {args.fib_r}",
            f"log_d: {args.bits}",
            f"K: {K}",
            f"G_K: {gen_fib(args.fib_r, K + 1)[K]}",
            f"identity_holds: {ok}",
        ]
    return lines


# -- parser -----------------------------------------------------------------


def _add_regev_flags(p: argparse.ArgumentParser, with_n: bool = True) -> None:
    if with_n:
        p.add_argument("--n", type=_positive, required=False, help="modulus bit length")
    p.add_argument("--reduction", type=_reduction, default=PRESETS["bkz200-calibrated"],
                   help="lll, bkz:<beta>, perfect, delta:<value> or a preset (default bkz200-calibrated)")
    p.add_argument("--style", type=_style, default=ElementStyle.EGR_PRIMES, help="egr (primes) or regev (squared primes)")
    p.add_argument("--r", type=_r_choice, default=None, help="'auto' (search 1..16) or a fixed r")
    p.add_argument("--k", type=_non_negative, default=0, help="number of arbitrary elements")
    p.add_argument("--w", type=_positive, default=10, help="window size for the k part")
    p.add_argument("--dm-rule", choices=("optimal", "regev"), default="optimal",
                   help="optimal d, m or Regev's d = ceil(sqrt n), m = d + 4")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = _Parser(prog="regevcost", description="Multiplication-count cost estimates for Regev/EGR and Shor variants.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subs: dict[str, argparse.ArgumentParser] = {}

    p = sub.add_parser("estimate-regev", help="parameterize and cost Regev/EGR for one n")
    p.add_argument("--config", help="key = value config file")
    _add_regev_flags(p)
    p.set_defaults(func=cmd_estimate_regev, required_keys=("n",))
    subs["estimate-regev"] = p

    p = sub.add_parser("estimate-shor", help="parameterize and cost EHS or ES for one instance")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--algorithm", type=_algorithm, default=None, help="ehs or es (checked against --problem)")
    p.add_argument("--problem", type=_problem, default=ProblemKind.RSA_IFP, help="rsa, dlp-general, dlp-short, schnorr")
    p.add_argument("--n", type=_positive, help="modulus bit length")
    p.add_argument("--z", type=_positive, default=None, help="strength level for short DLP and Schnorr")
    p.add_argument("--mode", type=_mode, default=Mode.TRADEOFF, help="single or tradeoff")
    p.add_argument("--w", type=_positive, default=10, help="window size")
    p.add_argument("--tradeoff-file", default=None, help="extra tradeoff records (kind, n, s, l, runs[, varsigma])")
    p.set_defaults(func=cmd_estimate_shor, required_keys=("n",))
    subs["estimate-shor"] = p

    p = sub.add_parser("compare", help="compare Regev/EGR against EHS/ES for one or more n")
    p.add_argument("--config", "--scenario", dest="config", help="scenario file (key = value)")
    p.add_argument("--problem", type=_problem, default=ProblemKind.RSA_IFP)
    p.add_argument("--n", type=_sizes, help="bit lengths, comma separated")
    p.add_argument("--z", type=_positive, default=None)
    _add_regev_flags(p, with_n=False)
    p.add_argument("--mode", type=_mode, default=Mode.TRADEOFF, help="Shor-side mode")
    p.add_argument("--shor-w", type=_positive, default=10, help="Shor-side window size")
    p.add_argument("--tradeoff-file", default=None)
    p.set_defaults(func=cmd_compare, required_keys=("n",))
    subs["compare"] = p

    p = sub.add_parser("tables", help="regenerate the comparison tables")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--which", type=_which, default=["1", "2", "3", "4", "5", "6", "7", "8"],
                   help="tables to emit: 1-8, 5a, 5b (5 means both parts)")
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--bkz", type=_reduction, default=None, help="replace the BKZ-200 model (e.g. bkz:200 for pure Chen)")
    p.add_argument("--out", default=None, help="write to this path instead of standard output")
    p.set_defaults(func=cmd_tables, required_keys=())
    subs["tables"] = p

    p = sub.add_parser("crossover", help="scan n for the first per-run advantage below 1")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--problem", type=_problem, default=ProblemKind.RSA_IFP)
    _add_regev_flags(p, with_n=False)
    p.add_argument("--shor-w", type=_positive, default=10)
    p.add_argument("--tradeoff-file", default=None)
    p.add_argument("--start", type=_positive, default=2048)
    p.add_argument("--step", type=_positive, default=1024)
    p.add_argument("--limit", type=_positive, default=8192)
    p.add_argument("--sizes", type=_sizes, default=None,
                   help="explicit bit lengths to scan instead of start/step/limit")
    p.set_defaults(func=cmd_crossover, required_keys=())
    subs["crossover"] = p

    p = sub.add_parser("emulate", help="run a schedule against the counting oracle")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--schedule", choices=("binary", "ehs", "fib-identity"), default="binary")
    p.add_argument("--bits", type=_positive, default=16,
                   help="l for binary, n_e for ehs, log2 D for fib-identity")
    p.add_argument("--seed", type=_non_negative, default=0)
    p.add_argument("--w", type=_positive, default=1, help="window size (ehs)")
    p.add_argument("--d", type=_positive, default=3, help="number of elements (fib-identity)")
    p.add_argument("--fib-r", type=_positive, default=1, help="Fibonacci parameter r (fib-identity)")
    p.add_argument("--modulus", type=_positive, default=DEFAULT_MODULUS)
    p.set_defaults(func=cmd_emulate, required_keys=())
    subs["emulate"] = p

    return parser, subs


def main(argv: Sequence[str] | None = None) -> int:
    parser, subs = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        if args.config:
            _apply_config(subs[args.command], args.config)
            args = parser.parse_args(argv)
        missing = [k for k in args.required_keys if getattr(args, k) is None]
        if missing:
            subs[args.command].error("missing required option(s): " + ", ".join("--" + m for m in missing))
        lines = args.func(args)
    except ConfigurationError as exc:
        print(f"regevcost: error: {exc}", file=sys.stderr)
        return 1
    except (InvariantViolation, NonInvertibleError) as exc:
        print(f"regevcost: internal invariant violated: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"regevcost: error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
