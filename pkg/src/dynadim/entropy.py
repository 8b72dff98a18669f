"""Bowen-ball entropy scans, metric entropy, and generating-set counts.

A Brin-Katok scan records -log mass(B(x, n, eps)) against n; its slope
in n estimates the metric entropy, and the double limit (n then eps)
collapses to the finest-radius rate with the across-radius spread kept
as a diagnostic.  Generating-set counts R(n, eps) grow like exp(n h)
and their log-slope estimates the topological entropy.

Empirical (cloud) scans censor entries whose ball count is zero; a fit
is rejected when more than 20% of entries are censored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from . import _neighbors
from .dimension import ComputationError, ExactMode
from .geometry import (
    GeometryError,
    Point,
    SymbolicPoint,
    SystemSpec,
    dn_dist,
    dyadic_depth,
)
from .measures import (
    BallQuery,
    MeasureError,
    MeasureModel,
    ball_mass,
    coords_array,
    empirical_ball_mass,
)

_SCAN_KINDS = ("brin_katok_at_point", "generating_count")


@dataclass(frozen=True)
class CloudMode:
    """Estimate Bowen-ball masses as fractions of a fixed point cloud."""

    points: tuple

    def __post_init__(self):
        if len(self.points) < 2:
            raise ComputationError("cloud mode needs at least 2 points")


@dataclass(frozen=True)
class ExactShiftMode:
    """Closed-form minimal generating-set counts on a full shift."""


@dataclass(frozen=True)
class GreedyMode:
    """Greedy cover of a point cloud under the d_n metric (upper bound)."""

    points: tuple

    def __post_init__(self):
        if len(self.points) < 1:
            raise ComputationError("greedy mode needs a nonempty cloud")


@dataclass(frozen=True)
class EntropyScan:
    """(n, value) entries at a fixed radius; censored n values listed apart."""

    eps: float
    kind: str
    entries: tuple[tuple[int, float], ...]
    censored_ns: tuple[int, ...] = ()
    bilateral: bool = False

    def __post_init__(self):
        if self.kind not in _SCAN_KINDS:
            raise ComputationError(f"unknown entropy scan kind {self.kind!r}")
        ns = [n for n, _ in self.entries]
        if any(b <= a for a, b in zip(ns, ns[1:])):
            raise ComputationError("n must be strictly increasing")
        if any(not math.isfinite(v) for _, v in self.entries):
            raise ComputationError("scan values must be finite")

    def censored_fraction(self) -> float:
        total = len(self.entries) + len(self.censored_ns)
        return len(self.censored_ns) / total if total else 0.0

    def csv_rows(self) -> list[list]:
        rows = [[self.eps, n, v, self.kind, 0] for n, v in self.entries]
        rows += [[self.eps, n, math.nan, self.kind, 1] for n in self.censored_ns]
        rows.sort(key=lambda r: r[1])
        return rows


@dataclass(frozen=True)
class EntropyReport:
    h_lower: float
    h_upper: float
    h_ls: float
    center_spread: Optional[float] = None
    eps_spread: Optional[float] = None

    def as_dict(self) -> dict:
        d = {"h_lower": self.h_lower, "h_upper": self.h_upper, "h_ls": self.h_ls}
        diag = {}
        if self.center_spread is not None:
            diag["center_spread"] = self.center_spread
        if self.eps_spread is not None:
            diag["eps_spread"] = self.eps_spread
        if diag:
            d["diagnostics"] = diag
        return d


# ---------------------------------------------------------------------------
# Bowen-ball mass sequences


def _bowen_log_masses(
    mu: MeasureModel, x: Point, eps: float, n_max: int
) -> np.ndarray:
    """log mass(B(x, n, eps)) for n = 1..n_max, vectorized where possible."""
    sys = mu.system
    if mu.kind in ("bernoulli", "markov"):
        j = dyadic_depth(eps)
        left = 0 if sys.metric_variant == "onesided" else -j
        syms = [x.symbol(i) for i in range(left, n_max + j + 1)]
        syms = np.asarray(syms, dtype=np.int64)
        if mu.kind == "bernoulli":
            steps = np.log(mu.p[syms])
            prefix = np.cumsum(steps)
            # window left..n+j has (n + j - left + 1) symbols
            idx = np.arange(1, n_max + 1) + j - left
            return prefix[idx]
        logpi = np.log(mu.stationary[syms[0]])
        steps = np.log(mu.transition[syms[:-1], syms[1:]])
        prefix = np.concatenate([[0.0], np.cumsum(steps)])
        idx = np.arange(1, n_max + 1) + j - left
        return logpi + prefix[idx]
    if mu.kind == "lebesgue" and sys.name == "doubling_map":
        if eps > 0.25:
            raise MeasureError("doubling-map Bowen oracle needs eps <= 1/4")
        n = np.arange(1, n_max + 1, dtype=np.float64)
        return np.log(2.0 * eps) - n * math.log(2.0)
    # generic (periodic measures, isometries): one oracle query per n
    out = np.empty(n_max, dtype=np.float64)
    for n in range(1, n_max + 1):
        out[n - 1] = math.log(ball_mass(mu, BallQuery(x, eps, bowen_n=n)))
    return out


def brin_katok_scan(
    mu: MeasureModel,
    sys: SystemSpec,
    x: Point,
    eps: float,
    n_max: int,
    mode: Union[ExactMode, CloudMode],
) -> EntropyScan:
    """Entries (n, -log mass(B(x, n, eps))) for n = 1..n_max.

    Cloud mode counts cloud points inside each Bowen ball; zero counts
    become censored entries.
    """
    if n_max < 2:
        raise ComputationError("need n_max >= 2")
    if isinstance(mode, ExactMode):
        logm = _bowen_log_masses(mu, x, eps, n_max)
        entries = tuple((n, float(-logm[n - 1])) for n in range(1, n_max + 1))
        return EntropyScan(eps=eps, kind="brin_katok_at_point", entries=entries)
    entries = []
    censored = []
    for n in range(1, n_max + 1):
        m = empirical_ball_mass(mode.points, BallQuery(x, eps, bowen_n=n), sys)
        if m <= 0.0:
            censored.append(n)
        else:
            entries.append((n, -math.log(m)))
    return EntropyScan(
        eps=eps,
        kind="brin_katok_at_point",
        entries=tuple(entries),
        censored_ns=tuple(censored),
    )


def bilateral_bk_scan(
    mu: MeasureModel,
    sys: SystemSpec,
    x: Point,
    eps: float,
    n_max: int,
    mode: Union[ExactMode, CloudMode],
) -> EntropyScan:
    """Diagonal bilateral scan: entries (2n, -log mass(B(x, n, n, eps)))."""
    if not sys.invertible:
        raise GeometryError(f"{sys.name} is not invertible")
    if n_max < 2:
        raise ComputationError("need n_max >= 2")
    entries = []
    censored = []
    for n in range(1, n_max + 1):
        q = BallQuery(x, eps, bilateral=(n, n))
        if isinstance(mode, ExactMode):
            m = ball_mass(mu, q)
        else:
            m = empirical_ball_mass(mode.points, q, sys)
        if m <= 0.0:
            censored.append(2 * n)
        else:
            entries.append((2 * n, -math.log(m)))
    return EntropyScan(
        eps=eps,
        kind="brin_katok_at_point",
        entries=tuple(entries),
        censored_ns=tuple(censored),
        bilateral=True,
    )


# ---------------------------------------------------------------------------
# rate extraction


def _check_censoring(scan: EntropyScan) -> None:
    frac = scan.censored_fraction()
    if frac > 0.20:
        raise ComputationError(
            f"fit rejected: {frac:.0%} of entries censored (empty empirical balls)"
        )
    if len(scan.entries) < 2:
        raise ComputationError("fewer than 2 usable entries for a rate fit")


def _ols_rate(scan: EntropyScan) -> float:
    _check_censoring(scan)
    n = np.array([e[0] for e in scan.entries], dtype=np.float64)
    v = np.array([e[1] for e in scan.entries], dtype=np.float64)
    nm = n - n.mean()
    return float((nm * (v - v.mean())).sum() / (nm * nm).sum())


def _slope_proxies(scan: EntropyScan) -> tuple[float, float]:
    """Min/max consecutive slope over the finer-n (tail) half, clamped at 0."""
    _check_censoring(scan)
    n = np.array([e[0] for e in scan.entries], dtype=np.float64)
    v = np.array([e[1] for e in scan.entries], dtype=np.float64)
    k0 = len(n) // 2 if len(n) >= 4 else 0
    slopes = np.diff(v[k0:]) / np.diff(n[k0:])
    return max(0.0, float(slopes.min())), max(0.0, float(slopes.max()))


def rate_report(scan: EntropyScan) -> EntropyReport:
    """Least-squares rate and tail-slope proxies of a single scan."""
    lo, hi = _slope_proxies(scan)
    return EntropyReport(h_lower=lo, h_upper=hi, h_ls=_ols_rate(scan))


def metric_entropy_estimate(
    mu: MeasureModel,
    sys: SystemSpec,
    eps_values: Sequence[float],
    n_max: int,
    centers: Sequence[Point],
    mode: Union[ExactMode, CloudMode] = ExactMode(),
) -> EntropyReport:
    """Brin-Katok metric entropy from per-center rates.

    Rates are fitted per (center, eps); the report carries the
    mean-over-centers rate at the finest radius, the range of the
    per-center rates there (exactly zero for measures with center-free
    Bowen masses), and the spread of the mean rate across radii.
    """
    if not centers:
        raise ComputationError("need at least one center")
    eps_sorted = sorted(set(float(e) for e in eps_values), reverse=True)
    if not eps_sorted:
        raise ComputationError("need at least one radius")
    mean_by_eps = []
    finest_rates = None
    finest_proxies = None
    for eps in eps_sorted:
        scans = [brin_katok_scan(mu, sys, c, eps, n_max, mode) for c in centers]
        rates = [_ols_rate(s) for s in scans]
        mean_by_eps.append(sum(rates) / len(rates))
        finest_rates = rates
        finest_proxies = [_slope_proxies(s) for s in scans]
    h_ls = mean_by_eps[-1]
    # range, not deviation from the mean: identical per-center rates must
    # give exactly 0.0, and a mean round-trip can cost an ulp
    center_spread = max(finest_rates) - min(finest_rates)
    eps_spread = max(abs(m - h_ls) for m in mean_by_eps)
    h_lower = sum(p[0] for p in finest_proxies) / len(finest_proxies)
    h_upper = sum(p[1] for p in finest_proxies) / len(finest_proxies)
    return EntropyReport(
        h_lower=h_lower,
        h_upper=h_upper,
        h_ls=h_ls,
        center_spread=center_spread,
        eps_spread=eps_spread,
    )


# ---------------------------------------------------------------------------
# generating sets


def _require_dyadic(eps: float) -> int:
    mant, _ = math.frexp(eps)
    if mant != 0.5 or not (0.0 < eps <= 1.0):
        raise ComputationError(
            f"exact generating counts need eps = 2^-j on the dyadic grid, got {eps!r}"
        )
    return dyadic_depth(eps)


def generating_count(
    sys: SystemSpec,
    n: int,
    eps: float,
    mode: Union[ExactShiftMode, GreedyMode],
) -> int:
    """Cardinality of an (n, eps)-generating set.

    exact_shift returns the minimal count for a full shift (a d_n-ball
    of radius 2^-j pins the symbols -j..(n-1)+j, so m^(n+2j) balls are
    both necessary and sufficient).  Greedy mode covers a point cloud in
    input order and is an upper bound for the cloud's minimal cover.
    """
    if n < 1:
        raise ComputationError("need n >= 1")
    if isinstance(mode, ExactShiftMode):
        if sys.space != "shift":
            raise ComputationError("exact generating counts exist for full shifts only")
        j = _require_dyadic(eps)
        width = n + j if sys.metric_variant == "onesided" else n + 2 * j
        return sys.alphabet**width
    return _greedy_cover_count(sys, mode.points, n, eps)


def _greedy_cover_count(sys: SystemSpec, points, n: int, eps: float) -> int:
    pts = list(points)
    if sys.space == "shift":
        # snapped radius: the d_n-ball is a cylinder, so cover size equals
        # the number of distinct occupied symbol windows
        j = dyadic_depth(eps)
        left = 0 if sys.metric_variant == "onesided" else -j
        right = (n - 1) + j
        mat = _neighbors.symbols_matrix(pts)
        w = (mat.shape[1] - 1) // 2
        if left < -w or right > w:
            raise GeometryError(
                f"cloud windows too narrow for d_{n} balls at this radius"
            )
        block = mat[:, left + w : right + w + 1]
        return int(np.unique(block, axis=0).shape[0])
    covered = [False] * len(pts)
    count = 0
    for i, p in enumerate(pts):
        if covered[i]:
            continue
        count += 1
        for k in range(i, len(pts)):
            if not covered[k] and dn_dist(sys, p, pts[k], n) <= eps:
                covered[k] = True
    return count


def topological_entropy_estimate(
    sys: SystemSpec,
    eps_values: Sequence[float],
    n_max: int,
    mode: Union[ExactShiftMode, GreedyMode],
) -> EntropyReport:
    """Growth rate of generating-set counts: OLS slope of log R(n, eps) in n.

    The finest-radius slope is reported; for exact shift counts it is
    log m at every radius.
    """
    if n_max < 2:
        raise ComputationError("need n_max >= 2")
    if isinstance(mode, ExactShiftMode) and sys.space != "shift":
        raise ComputationError("exact generating counts exist for full shifts only")
    eps_sorted = sorted(set(float(e) for e in eps_values), reverse=True)
    rates = []
    finest_scan = None
    for eps in eps_sorted:
        entries = []
        for n in range(1, n_max + 1):
            if isinstance(mode, ExactShiftMode):
                j = _require_dyadic(eps)
                width = n + j if sys.metric_variant == "onesided" else n + 2 * j
                logr = width * math.log(sys.alphabet)
            else:
                logr = math.log(generating_count(sys, n, eps, mode))
            entries.append((n, logr))
        scan = EntropyScan(eps=eps, kind="generating_count", entries=tuple(entries))
        rates.append(_ols_rate(scan))
        finest_scan = scan
    lo, hi = _slope_proxies(finest_scan)
    return EntropyReport(
        h_lower=lo,
        h_upper=hi,
        h_ls=rates[-1],
        eps_spread=max(abs(r - rates[-1]) for r in rates),
    )


def generating_scan(
    sys: SystemSpec,
    eps: float,
    n_max: int,
    mode: Union[ExactShiftMode, GreedyMode],
) -> EntropyScan:
    """Raw (n, log R(n, eps)) entries for n = 1..n_max."""
    if isinstance(mode, ExactShiftMode) and sys.space != "shift":
        raise ComputationError("exact generating counts exist for full shifts only")
    entries = []
    for n in range(1, n_max + 1):
        if isinstance(mode, ExactShiftMode):
            j = _require_dyadic(eps)
            width = n + j if sys.metric_variant == "onesided" else n + 2 * j
            logr = width * math.log(sys.alphabet)
        else:
            logr = math.log(generating_count(sys, n, eps, mode))
        entries.append((n, logr))
    return EntropyScan(eps=eps, kind="generating_count", entries=tuple(entries))
