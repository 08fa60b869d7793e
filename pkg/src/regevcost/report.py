"""Comparison rows, table regeneration and crossover search."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from regevcost.errors import ConfigurationError
from regevcost.lattice import PRESETS, ReductionModel
from regevcost.numtheory import ElementStyle
from regevcost.regev import (
    DEFAULT_R_CANDIDATES,
    CostBreakdown,
    RegevParameterization,
    baseline_params,
    optimize,
    perfect_params,
)
from regevcost.shor import (
    Mode,
    ProblemInstance,
    ProblemKind,
    ShorParameterization,
    TradeoffProvider,
    overall_ops,
    per_run_ops,
    shor_params,
)

TABULATED_SIZES = (2048, 3072, 4096, 6144, 8192)


class _Unbounded:
    _instance: _Unbounded | None = None

    def __new__(cls) -> _Unbounded:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNBOUNDED"

    def __str__(self) -> str:
        return "unbounded"


UNBOUNDED = _Unbounded()


@dataclass(frozen=True)
class RegevConfig:
    """How to parameterize the Regev/EGR side.

    ``dm_rule`` is ``"optimal"`` (d, m from the reduction quality) or
    ``"regev"`` (d = ceil(sqrt n), m = d + 4). ``r=None`` searches
    ``r_candidates``.
    """

    reduction: ReductionModel
    style: ElementStyle = ElementStyle.EGR_PRIMES
    r: int | None = None
    r_candidates: tuple[int, ...] = tuple(DEFAULT_R_CANDIDATES)
    k: int = 0
    w: int = 10
    dm_rule: str = "optimal"

    def parameterize(self, n: int) -> RegevParameterization:
        if self.reduction.is_perfect:
            return perfect_params(n, self.style, k=self.k, w=self.w)
        if self.dm_rule == "regev":
            return baseline_params(
                n, self.reduction, r=self.r or 1, k=self.k, w=self.w, style=self.style
            )
        if self.dm_rule != "optimal":
            raise ConfigurationError(f"unknown d/m rule {self.dm_rule!r}")
        candidates = (self.r,) if self.r is not None else self.r_candidates
        return optimize(n, self.reduction, self.style, self.k, self.w, candidates)


@dataclass(frozen=True)
class ShorConfig:
    mode: Mode = Mode.TRADEOFF
    w: int = 10
    table: TradeoffProvider | None = None

    def parameterize(self, instance: ProblemInstance) -> ShorParameterization:
        return shor_params(instance, self.mode, self.w, self.table)


@dataclass(frozen=True)
class ComparisonRow:
    instance: ProblemInstance
    regev: RegevParameterization
    regev_cost: CostBreakdown
    shor: ShorParameterization
    shor_per_run: int
    shor_overall: int
    adv_per_run: Fraction
    adv_overall: Fraction | _Unbounded


def build_comparison(
    instance: ProblemInstance, regev_config: RegevConfig, shor_config: ShorConfig
) -> ComparisonRow:
    regev = regev_config.parameterize(instance.n)
    cost = regev.cost
    shor = shor_config.parameterize(instance)
    shor_run, shor_all = per_run_ops(shor), overall_ops(shor)
    adv_all = UNBOUNDED if cost.overall_ops is None else Fraction(cost.overall_ops, shor_all)
    return ComparisonRow(
        instance, regev, cost, shor, shor_run, shor_all, Fraction(cost.per_run_ops, shor_run), adv_all
    )


def format_advantage(x: Fraction | _Unbounded) -> str:
    """Display rule: below 1 rounded to two decimals, otherwise
    truncated to three significant figures (so 444.98 shows as 444)."""
    if isinstance(x, _Unbounded):
        return "inf"
    if x < 1:
        hundredths = (x * 100 + Fraction(1, 2)).__floor__()
        return f"{hundredths // 100}.{hundredths % 100:02d}"
    digits = len(str(x.numerator // x.denominator))
    decimals = 3 - digits
    if decimals >= 0:
        units = (x * 10**decimals).__floor__()
        if decimals == 0:
            return str(units)
        return f"{units // 10**decimals}.{units % 10**decimals:0{decimals}d}"
    step = 10 ** (-decimals)
    return str((x / step).__floor__() * step)


def fixed_point(x: Fraction | _Unbounded, decimals: int = 4) -> str:
    if isinstance(x, _Unbounded):
        return "inf"
    scaled = (x * 10**decimals + Fraction(1, 2)).__floor__()
    return f"{scaled // 10**decimals}.{scaled % 10**decimals:0{decimals}d}"


# ---------------------------------------------------------------------------
# Table definitions


@dataclass(frozen=True)
class TableSpec:
    key: str
    title: str
    kind: ProblemKind
    regev: RegevConfig
    shor_w: int = 10
    perfect: bool = False


def table_specs(bkz: ReductionModel | None = None) -> dict[str, TableSpec]:
    """The nine comparison tables; ``bkz`` replaces the BKZ-200 model."""
    lll = PRESETS["lll"]
    bkz = bkz or PRESETS["bkz200-calibrated"]
    best = RegevConfig(bkz)
    dlp = RegevConfig(bkz, k=1)
    return {
        "1": TableSpec(
            "1",
            "RSA IFP: Regev (LLL, r = 1, d = ceil(sqrt n), m = d + 4) vs EHS (w = 1)",
            ProblemKind.RSA_IFP,
            RegevConfig(lll, r=1, dm_rule="regev"),
            shor_w=1,
        ),
        "2": TableSpec("2", "RSA IFP: EGR (LLL, r = 1, optimal d, m) vs EHS (w = 10)",
                       ProblemKind.RSA_IFP, RegevConfig(lll, r=1)),
        "3": TableSpec("3", f"RSA IFP: EGR ({bkz}, r = 1, optimal d, m) vs EHS (w = 10)",
                       ProblemKind.RSA_IFP, RegevConfig(bkz, r=1)),
        "4": TableSpec("4", "RSA IFP: EGR (LLL, optimal r, d, m) vs EHS (w = 10)",
                       ProblemKind.RSA_IFP, RegevConfig(lll)),
        "5a": TableSpec("5a", f"RSA IFP: EGR ({bkz}, optimal r, d, m) vs EHS (w = 10)",
                        ProblemKind.RSA_IFP, best),
        "5b": TableSpec(
            "5b",
            "RSA IFP: Regev and EGR (perfect reduction, r = 1, m unbounded) vs EHS with tradeoffs (w = 10)",
            ProblemKind.RSA_IFP,
            RegevConfig(PRESETS["perfect"], r=1),
            perfect=True,
        ),
        "6": TableSpec("6", f"General DLP, safe-prime groups: EGR ({bkz}, optimal r, k = 1) vs ES (w = 10)",
                       ProblemKind.DLP_SAFE_PRIME_GENERAL, dlp),
        "7": TableSpec("7", f"Short DLP, safe-prime groups: EGR ({bkz}, optimal r, k = 1) vs EHS (w = 10)",
                       ProblemKind.DLP_SAFE_PRIME_SHORT, dlp),
        "8": TableSpec("8", f"DLP, Schnorr groups: EGR ({bkz}, optimal r, k = 1) vs ES (w = 10)",
                       ProblemKind.DLP_SCHNORR, dlp),
    }


TABLE_KEYS = ("1", "2", "3", "4", "5a", "5b", "6", "7", "8")


def expand_which(which: Iterable[str | int]) -> list[str]:
    """Normalize table selectors; ``5`` selects both 5a and 5b."""
    keys: list[str] = []
    for item in which:
        token = str(item).strip().lower()
        chosen = ["5a", "5b"] if token == "5" else [token]
        for key in chosen:
            if key not in TABLE_KEYS:
                raise ConfigurationError(f"unknown table {item!r} (expected 1-8, 5a or 5b)")
            if key not in keys:
                keys.append(key)
    return sorted(keys, key=TABLE_KEYS.index)


@dataclass
class RenderedTable:
    key: str
    title: str
    columns: list[str]
    rows: list[dict[str, object]] = field(default_factory=list)


_STANDARD_COLUMNS = [
    "n", "z", "d", "m", "C", "log_d", "K", "r", "ops_run", "ops_all",
    "shor_m", "s", "varsigma", "ell", "runs", "shor_ops_run", "adv_run", "shor_ops_all", "adv_all",
]
_PERFECT_COLUMNS = [
    "n", "variant", "d", "C", "log_d", "K", "ops_run",
    "shor_m", "s", "ell", "runs", "shor_ops_run", "adv_run",
]


def _standard_rows(spec: TableSpec, n: int) -> list[dict[str, object]]:
    instance = ProblemInstance(spec.kind, n)
    rows = []
    modes = (Mode.SINGLE, Mode.TRADEOFF)
    for mode in modes:
        row = build_comparison(instance, spec.regev, ShorConfig(mode, spec.shor_w))
        p, sh = row.regev, row.shor
        rows.append(
            {
                "n": n,
                "z": instance.strength if spec.kind is not ProblemKind.RSA_IFP else None,
                "d": p.d, "m": p.m, "C": p.C, "log_d": p.log_d, "K": p.K, "r": p.r,
                "ops_run": row.regev_cost.per_run_ops, "ops_all": row.regev_cost.overall_ops,
                "shor_m": sh.m, "s": sh.s, "varsigma": sh.varsigma, "ell": sh.ell, "runs": sh.runs,
                "shor_ops_run": row.shor_per_run, "adv_run": row.adv_per_run,
                "shor_ops_all": row.shor_overall, "adv_all": row.adv_overall,
            }
        )
    return rows


def _perfect_rows(spec: TableSpec, n: int) -> list[dict[str, object]]:
    instance = ProblemInstance(spec.kind, n)
    rows = []
    for style in (ElementStyle.REGEV_SQUARED_PRIMES, ElementStyle.EGR_PRIMES):
        config = RegevConfig(spec.regev.reduction, style=style, r=1)
        row = build_comparison(instance, config, ShorConfig(Mode.TRADEOFF, spec.shor_w))
        p, sh = row.regev, row.shor
        rows.append(
            {
                "n": n, "variant": "regev" if style is ElementStyle.REGEV_SQUARED_PRIMES else "egr",
                "d": p.d, "C": p.C, "log_d": p.log_d, "K": p.K, "ops_run": row.regev_cost.per_run_ops,
                "shor_m": sh.m, "s": sh.s, "ell": sh.ell, "runs": sh.runs,
                "shor_ops_run": row.shor_per_run, "adv_run": row.adv_per_run,
            }
        )
    return rows


def build_table(
    key: str, bkz: ReductionModel | None = None, sizes: Sequence[int] = TABULATED_SIZES
) -> RenderedTable:
    spec = table_specs(bkz)[key]
    if spec.perfect:
        columns = list(_PERFECT_COLUMNS)
        rows = [row for n in sizes for row in _perfect_rows(spec, n)]
    else:
        columns = list(_STANDARD_COLUMNS)
        if spec.kind is ProblemKind.RSA_IFP:
            columns.remove("z")
        if spec.kind.algorithm.value == "ehs":
            columns.remove("varsigma")
        rows = [row for n in sizes for row in _standard_rows(spec, n)]
    return RenderedTable(key, spec.title, columns, rows)


_HEADERS = {
    "n": "ceil(log N)", "z": "z", "d": "d", "m": "m", "C": "C", "log_d": "log D", "K": "K^(r)",
    "r": "r", "ops_run": "#ops/run", "ops_all": "#ops overall", "shor_m": "m", "s": "s",
    "varsigma": "ς", "ell": "ℓ", "runs": "n", "shor_ops_run": "#ops/run", "adv_run": "adv/run",
    "shor_ops_all": "#ops overall", "adv_all": "adv overall", "variant": "variant",
}


def _display(column: str, value: object, c_decimals: int) -> str:
    if value is None:
        return "--"
    if column.startswith("adv"):
        return format_advantage(value)  # type: ignore[arg-type]
    if column == "C":
        return f"{value:.{c_decimals}f}"
    return str(value)


def render_markdown(table: RenderedTable) -> str:
    c_decimals = 3 if table.key == "5b" else 2
    regev_cols = {"n", "z", "d", "m", "C", "log_d", "K", "r", "ops_run", "ops_all", "shor_m"}
    if table.key == "5b":
        regev_cols = {"n", "shor_m", "s", "ell", "runs", "shor_ops_run"}
    out = [f"### Table {table.key}: {table.title}", ""]
    out.append("| " + " | ".join(_HEADERS[c] for c in table.columns) + " |")
    out.append("|" + "|".join("---:" for _ in table.columns) + "|")
    for i, row in enumerate(table.rows):
        repeat = i % 2 == 1
        cells = [
            "" if repeat and c in regev_cols else _display(c, row[c], c_decimals)
            for c in table.columns
        ]
        out.append("| " + " | ".join(cells) + " |")
    out.append("")
    return "\n".join(out)


def render_csv(table: RenderedTable) -> str:
    c_decimals = 3 if table.key == "5b" else 2
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["table", *table.columns])
    for row in table.rows:
        cells: list[str] = [table.key]
        for c in table.columns:
            value = row[c]
            if value is None:
                cells.append("")
            elif c.startswith("adv"):
                cells.append(fixed_point(value))  # type: ignore[arg-type]
            elif c == "C":
                cells.append(f"{value:.{c_decimals}f}")
            else:
                cells.append(str(value))
        writer.writerow(cells)
    return buf.getvalue()


def reproduce_tables(
    which: Iterable[str | int], fmt: str = "md", bkz: ReductionModel | None = None
) -> str:
    """Regenerate the selected comparison tables as markdown or CSV text."""
    if fmt not in ("md", "csv"):
        raise ConfigurationError(f"unknown format {fmt!r} (expected md or csv)")
    render = render_markdown if fmt == "md" else render_csv
    return "\n".join(render(build_table(key, bkz)) for key in expand_which(which))


# ---------------------------------------------------------------------------
# Crossover search


@dataclass(frozen=True)
class CrossoverPoint:
    n: int
    regev_per_run: int
    shor_per_run: int
    adv_per_run: Fraction


@dataclass(frozen=True)
class CrossoverResult:
    crossover_n: int | None
    trajectory: tuple[CrossoverPoint, ...]


def crossover_search(
    regev_config: RegevConfig,
    shor_config: ShorConfig,
    tradeoff_provider: TradeoffProvider,
    n_start: int,
    n_step: int = 1024,
    n_limit: int = 32768,
    kind: ProblemKind = ProblemKind.RSA_IFP,
    sizes: Sequence[int] | None = None,
) -> CrossoverResult:
    """Scan n = n_start, n_start + n_step, ... <= n_limit for the first n at
    which the EGR per-run count drops below the Shor-side per-run count.

    ``sizes`` replaces the arithmetic grid with an explicit increasing list.
    The whole range is scanned so the trajectory is complete.
    """
    if sizes is None:
        if n_step < 1 or n_start > n_limit:
            raise ConfigurationError(f"empty scan range {n_start}..{n_limit} step {n_step}")
        grid: Sequence[int] = range(n_start, n_limit + 1, n_step)
    else:
        grid = sorted(sizes)
        if not grid:
            raise ConfigurationError("empty list of sizes")
    config = ShorConfig(shor_config.mode, shor_config.w, tradeoff_provider)
    points = []
    found = None
    for n in grid:
        try:
            row = build_comparison(ProblemInstance(kind, n), regev_config, config)
        except ConfigurationError as exc:
            raise ConfigurationError(f"crossover scan stopped at n={n}: {exc}") from None
        points.append(CrossoverPoint(n, row.regev_cost.per_run_ops, row.shor_per_run, row.adv_per_run))
        if found is None and row.adv_per_run < 1:
            found = n
    return CrossoverResult(found, tuple(points))
