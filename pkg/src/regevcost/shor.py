"""Multiplication counts for the EHS (short discrete logarithm, also used for
RSA) and ES (general discrete logarithm) variations of Shor's algorithm, with
windowed exponentiation."""

from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from regevcost.errors import ConfigurationError, InvariantViolation

# Difference between m and l when EHS solves in a single run.
SINGLE_RUN_DELTA = 30
DEFAULT_WINDOW = 10

# NIST-model classical strength level (bits) per modulus length.
STRENGTH_LEVELS: dict[int, int] = {2048: 112, 3072: 128, 4096: 152, 6144: 176, 8192: 200}


class Algorithm(Enum):
    EHS = "ehs"
    ES = "es"


class ProblemKind(Enum):
    RSA_IFP = "rsa"
    DLP_SAFE_PRIME_GENERAL = "dlp-general"
    DLP_SAFE_PRIME_SHORT = "dlp-short"
    DLP_SCHNORR = "schnorr"

    @property
    def algorithm(self) -> Algorithm:
        if self in (ProblemKind.RSA_IFP, ProblemKind.DLP_SAFE_PRIME_SHORT):
            return Algorithm.EHS
        return Algorithm.ES

    @property
    def needs_strength(self) -> bool:
        return self in (ProblemKind.DLP_SAFE_PRIME_SHORT, ProblemKind.DLP_SCHNORR)

    @classmethod
    def parse(cls, text: str) -> ProblemKind:
        token = text.strip().lower()
        aliases = {
            "rsa": cls.RSA_IFP,
            "rsa-ifp": cls.RSA_IFP,
            "dlp-general": cls.DLP_SAFE_PRIME_GENERAL,
            "general": cls.DLP_SAFE_PRIME_GENERAL,
            "dlp-short": cls.DLP_SAFE_PRIME_SHORT,
            "short": cls.DLP_SAFE_PRIME_SHORT,
            "schnorr": cls.DLP_SCHNORR,
            "dlp-schnorr": cls.DLP_SCHNORR,
        }
        try:
            return aliases[token]
        except KeyError:
            raise ConfigurationError(
                f"unknown problem kind {text!r} (expected rsa, dlp-general, dlp-short, schnorr)"
            ) from None


class Mode(Enum):
    SINGLE = "single"
    TRADEOFF = "tradeoff"


@dataclass(frozen=True)
class ProblemInstance:
    kind: ProblemKind
    n: int
    z: int | None = None

    @property
    def strength(self) -> int:
        if self.z is not None:
            return self.z
        try:
            return STRENGTH_LEVELS[self.n]
        except KeyError:
            raise ConfigurationError(
                f"no built-in strength level for n={self.n}; supply z explicitly"
            ) from None


@dataclass(frozen=True)
class ShorParameterization:
    algorithm: Algorithm
    m: int
    mode: Mode
    s: int | None
    ell: int
    varsigma: int = 0
    runs: int = 1
    w: int = DEFAULT_WINDOW

    @property
    def exponent_length(self) -> int:
        if self.algorithm is Algorithm.EHS:
            return self.m + 2 * self.ell
        return self.m + self.varsigma + self.ell


@dataclass(frozen=True)
class TradeoffEntry:
    s: int
    ell: int
    runs: int
    varsigma: int = 0


def exponent_bound(p: ProblemInstance) -> int:
    """Bit-length bound m on the logarithm (or the RSA short logarithm)."""
    if p.kind is ProblemKind.RSA_IFP:
        return p.n // 2 - 1
    if p.kind is ProblemKind.DLP_SAFE_PRIME_GENERAL:
        return p.n - 1
    return 2 * p.strength


_BUILTIN_ROWS: dict[ProblemKind, dict[int, tuple[int, int, int, int]]] = {
    ProblemKind.RSA_IFP: {
        2048: (17, 61, 20, 0),
        3072: (21, 74, 24, 0),
        4096: (24, 86, 27, 0),
        6144: (31, 100, 34, 0),
        8192: (34, 121, 37, 0),
    },
    ProblemKind.DLP_SAFE_PRIME_GENERAL: {
        2048: (24, 86, 27, 11),
        3072: (31, 100, 34, 12),
        4096: (34, 121, 37, 12),
        6144: (37, 167, 40, 12),
        8192: (40, 205, 43, 12),
    },
    ProblemKind.DLP_SAFE_PRIME_SHORT: {
        2048: (7, 32, 10, 0),
        3072: (8, 32, 11, 0),
        4096: (9, 34, 12, 0),
        6144: (10, 36, 13, 0),
        8192: (11, 37, 14, 0),
    },
    ProblemKind.DLP_SCHNORR: {
        2048: (7, 32, 10, 9),
        3072: (8, 32, 11, 9),
        4096: (9, 34, 12, 10),
        6144: (10, 36, 13, 10),
        8192: (11, 37, 14, 10),
    },
}


class TradeoffTable:
    """Immutable (kind, n) -> (s, l, runs, varsigma) lookup.

    Entries are data taken from external analyses, not derived. Each entry is
    audited for l == ceil(m / s) whenever m can be derived for that n.
    """

    def __init__(self, entries: Mapping[tuple[ProblemKind, int], TradeoffEntry]):
        self._entries = dict(entries)
        self.audit()

    @classmethod
    def builtin(cls) -> TradeoffTable:
        return cls(
            {
                (kind, n): TradeoffEntry(*row)
                for kind, rows in _BUILTIN_ROWS.items()
                for n, row in rows.items()
            }
        )

    @classmethod
    def from_lines(cls, lines: Iterable[str], source: str = "<lines>") -> TradeoffTable:
        """Parse records ``kind, n, s, l, runs, varsigma`` (commas or spaces, # comments)."""
        entries: dict[tuple[ProblemKind, int], TradeoffEntry] = {}
        for lineno, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.replace(",", " ").split()
            if len(fields) not in (5, 6):
                raise ConfigurationError(
                    f"{source}:{lineno}: expected 'kind, n, s, l, runs[, varsigma]', got {raw.strip()!r}"
                )
            kind = ProblemKind.parse(fields[0])
            try:
                n, s, ell, runs, *rest = (int(f) for f in fields[1:])
            except ValueError:
                raise ConfigurationError(f"{source}:{lineno}: non-integer field in {raw.strip()!r}") from None
            entries[(kind, n)] = TradeoffEntry(s, ell, runs, rest[0] if rest else 0)
        try:
            return cls(entries)
        except InvariantViolation as exc:
            raise ConfigurationError(f"{source}: {exc}") from None

    @classmethod
    def from_file(cls, path: str | os.PathLike[str]) -> TradeoffTable:
        try:
            with open(path, encoding="utf-8") as fh:
                return cls.from_lines(fh, source=str(path))
        except OSError as exc:
            raise ConfigurationError(f"cannot read tradeoff file {path}: {exc}") from None

    def merged(self, override: TradeoffTable) -> TradeoffTable:
        return TradeoffTable({**self._entries, **override._entries})

    def audit(self) -> None:
        for (kind, n), e in self._entries.items():
            if e.s < 1 or e.runs < e.s:
                raise InvariantViolation(f"tradeoff entry {kind.value} n={n}: need runs >= s >= 1")
            if kind.needs_strength and n not in STRENGTH_LEVELS:
                continue
            m = exponent_bound(ProblemInstance(kind, n))
            if e.ell != -(-m // e.s):
                raise InvariantViolation(
                    f"tradeoff entry {kind.value} n={n}: l={e.ell} != ceil({m}/{e.s})"
                )

    def get(self, kind: ProblemKind, n: int) -> TradeoffEntry | None:
        return self._entries.get((kind, n))

    def lookup(self, kind: ProblemKind, n: int) -> TradeoffEntry:
        entry = self.get(kind, n)
        if entry is None:
            raise ConfigurationError(f"no tradeoff parameters for ({kind.value}, n={n})")
        return entry

    def __call__(self, kind: ProblemKind, n: int) -> TradeoffEntry:
        return self.lookup(kind, n)

    def __contains__(self, key: tuple[ProblemKind, int]) -> bool:
        return key in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def keys(self) -> list[tuple[ProblemKind, int]]:
        return sorted(self._entries, key=lambda kn: (kn[0].value, kn[1]))


TradeoffProvider = Callable[[ProblemKind, int], TradeoffEntry]


@lru_cache(maxsize=1)
def builtin_table() -> TradeoffTable:
    return TradeoffTable.builtin()


def shor_params(
    instance: ProblemInstance,
    mode: Mode = Mode.TRADEOFF,
    w: int = DEFAULT_WINDOW,
    table: TradeoffProvider | None = None,
) -> ShorParameterization:
    """Parameterize EHS or ES (chosen by problem kind) for one instance.

    ``table`` is any callable (kind, n) -> TradeoffEntry; the built-in table
    is used when omitted. It is consulted only in tradeoff mode.
    """
    algorithm = instance.kind.algorithm
    m = exponent_bound(instance)
    if mode is Mode.SINGLE:
        if algorithm is Algorithm.EHS:
            return ShorParameterization(algorithm, m, mode, None, m - SINGLE_RUN_DELTA, 0, 1, w)
        return ShorParameterization(algorithm, m, mode, 1, m, 0, 1, w)
    entry = (table or builtin_table())(instance.kind, instance.n)
    if entry.ell != -(-m // entry.s):
        raise ConfigurationError(
            f"tradeoff entry for ({instance.kind.value}, n={instance.n}) has l={entry.ell}, "
            f"expected ceil({m}/{entry.s})"
        )
    varsigma = entry.varsigma if algorithm is Algorithm.ES else 0
    return ShorParameterization(algorithm, m, mode, entry.s, entry.ell, varsigma, entry.runs, w)


def per_run_ops_ehs(p: ShorParameterization) -> int:
    return 2 * -(-(p.m + 2 * p.ell) // p.w)


def per_run_ops_es(p: ShorParameterization) -> int:
    return 2 * -(-(p.m + p.varsigma + p.ell) // p.w)


def per_run_ops(p: ShorParameterization) -> int:
    if p.algorithm is Algorithm.EHS:
        return per_run_ops_ehs(p)
    return per_run_ops_es(p)


def overall_ops(p: ShorParameterization) -> int:
    return per_run_ops(p) * p.runs
