"""Inequality and identity checks tying the dimension and entropy estimators together.

Each verify_* op evaluates both sides of one chain, bound, or identity on
a concrete (system, measure) pair and returns a VerdictReport.  Chains are
reported through their worst link so the lhs <= rhs + tol reading of the
verdict stays meaningful; the full chain travels in the details.

default_suite() assembles a deterministic set of jobs over the model zoo.
One job is a deliberate counterexample to a bound that reads plausibly but
is false as stated; it is marked expected="fail" and a suite run counts it
as a failure only if it unexpectedly passes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .dimension import (
    ComputationError,
    EpsGrid,
    ExactMode,
    MonteCarloMode,
    dimension_estimate,
    local_dimension,
    pesin_convergence_test,
    scan,
)
from .geometry import (
    GeometryError,
    Point,
    SystemSpec,
    TorusPoint,
    check_hyperbolic_metric,
    zoo_system,
)
from .measures import (
    BallQuery,
    MeasureError,
    MeasureModel,
    ball_mass,
    bernoulli_measure,
    lebesgue_measure,
    markov_measure,
    periodic_measure,
    sample,
)
from .reports import VerdictReport

Mode = Union[ExactMode, MonteCarloMode]

EXACT_TOLERANCE = 1e-9

_DEFAULT_GRID = EpsGrid(0.5, 0.5, 10)


def default_tolerance(mode: Mode) -> float:
    """1e-9 for closed forms, a sampling-error allowance for Monte-Carlo."""
    if isinstance(mode, MonteCarloMode):
        return max(0.05, 4.0 / math.sqrt(mode.n_samples))
    return EXACT_TOLERANCE


def _grid_dict(grid: EpsGrid) -> dict:
    return {"eps0": grid.eps0, "factor": grid.factor, "count": grid.count}


def _mode_dict(mode: Mode) -> dict:
    if isinstance(mode, MonteCarloMode):
        return {
            "mode": "mc",
            "n_samples": mode.n_samples,
            "seed": mode.seed,
            "mass": mode.mass,
        }
    return {"mode": "exact"}


def _chain_verdict(
    theorem: str,
    labels: Sequence[str],
    values: Sequence[float],
    tolerance: float,
    inputs: dict,
    details: Optional[dict] = None,
    expected: str = "pass",
) -> VerdictReport:
    """Report a chain v0 <= v1 <= ... <= vk through its worst link."""
    if len(labels) != len(values) or len(values) < 2:
        raise ComputationError("chain needs matching labels and at least two values")
    for v in values:
        if not math.isfinite(v):
            raise ComputationError(f"non-finite chain value in {theorem}")
    gaps = [values[i] - values[i + 1] for i in range(len(values) - 1)]
    worst = max(range(len(gaps)), key=lambda i: gaps[i])
    det = dict(details or {})
    det["chain"] = [[lab, val] for lab, val in zip(labels, values)]
    det["worst_link"] = [labels[worst], labels[worst + 1]]
    return VerdictReport(
        theorem=theorem,
        lhs=values[worst],
        rhs=values[worst + 1],
        lhs_formula=labels[worst],
        rhs_formula=labels[worst + 1],
        tolerance=tolerance,
        passed=all(g <= tolerance for g in gaps),
        inputs=inputs,
        details=det,
        expected=expected,
    )


def _estimates(mu: MeasureModel, q: float, grid: EpsGrid, mode: Mode):
    return dimension_estimate(scan(mu, q, grid, mode))


def verify_dimension_monotonicity(
    mu: MeasureModel,
    q: float = 2.0,
    s: float = 0.5,
    grid: EpsGrid = _DEFAULT_GRID,
    mode: Mode = ExactMode(),
    tolerance: Optional[float] = None,
) -> VerdictReport:
    """D(q) <= D(1) <= D(s) for q >= 1 >= s, on the least-squares proxies."""
    if not (q >= 1.0 >= s >= 0.0):
        raise ComputationError("monotonicity chain needs q >= 1 and 0 <= s <= 1")
    tol = default_tolerance(mode) if tolerance is None else tolerance
    values = [_estimates(mu, t, grid, mode).d_ls for t in (q, 1.0, s)]
    labels = [f"d_ls(q={q:g})", "d_ls(q=1)", f"d_ls(q={s:g})"]
    return _chain_verdict(
        "dimension_monotonicity",
        labels,
        values,
        tol,
        inputs={
            "measure": mu.describe(),
            "q": q,
            "s": s,
            "grid": _grid_dict(grid),
            **_mode_dict(mode),
        },
    )


def verify_local_dimension_bounds(
    mu: MeasureModel,
    q: float = 2.0,
    s: float = 0.5,
    grid: EpsGrid = _DEFAULT_GRID,
    mode: Mode = ExactMode(),
    centers: int = 16,
    seed: int = 1,
    tolerance: Optional[float] = None,
) -> VerdictReport:
    """Pointwise scaling certificates bracket the global spectrum.

    alpha <= D_lower(q) <= D_lower(1) <= D_upper(1) <= D_upper(s) <= beta,
    where alpha/beta are the extreme local slope certificates over centers
    sampled from the measure (q >= 1 >= s).
    """
    if not (q >= 1.0 >= s >= 0.0):
        raise ComputationError("local-dimension chain needs q >= 1 and 0 <= s <= 1")
    tol = default_tolerance(mode) if tolerance is None else tolerance
    finest = grid.values()[-1]
    w = None
    if mu.system.space == "shift":
        from .geometry import dyadic_depth

        w = dyadic_depth(finest)
    xs = sample(mu, centers, seed, window_radius=w)
    local = [local_dimension(mu, x, grid, ExactMode()) for x in xs]
    alpha = min(r.d_lower for r in local)
    beta = max(r.d_upper for r in local)
    rep_q = _estimates(mu, q, grid, mode)
    rep_1 = _estimates(mu, 1.0, grid, mode)
    rep_s = _estimates(mu, s, grid, mode)
    values = [alpha, rep_q.d_lower, rep_1.d_lower, rep_1.d_upper, rep_s.d_upper, beta]
    labels = [
        "min local d_lower",
        f"d_lower(q={q:g})",
        "d_lower(q=1)",
        "d_upper(q=1)",
        f"d_upper(q={s:g})",
        "max local d_upper",
    ]
    return _chain_verdict(
        "local_dimension_sandwich",
        labels,
        values,
        tol,
        inputs={
            "measure": mu.describe(),
            "q": q,
            "s": s,
            "centers": centers,
            "seed": seed,
            "grid": _grid_dict(grid),
            **_mode_dict(mode),
        },
    )


def verify_entropy_dimension_sandwich(
    mu: MeasureModel,
    q: float = 2.0,
    s: float = 0.5,
    grid: EpsGrid = _DEFAULT_GRID,
    mode: Mode = ExactMode(),
    tolerance: Optional[float] = None,
) -> VerdictReport:
    """h/log(Lambda) <= D(q) <= D(1) <= D(s) <= h/log(lambda).

    Valid for measures whose Bowen-ball decay rate is the same at every
    point (homogeneous measures), under a locally bi-Lipschitz expanding
    map with lambda, Lambda > 1.  Non-homogeneous measures are rejected:
    the pointwise entropy hypothesis fails for them and the chain is
    simply false (a biased coin already breaks the left end).
    """
    if not (q >= 1.0 >= s >= 0.0):
        raise ComputationError("entropy sandwich needs q >= 1 and 0 <= s <= 1")
    sys = mu.system
    if sys.lip_lower is None or sys.lip_upper is None:
        raise ComputationError(f"{sys.name} has no two-sided Lipschitz expansion bounds")
    if min(sys.lip_lower, sys.lip_upper) <= 1.0:
        raise ComputationError("entropy sandwich needs expansion bounds above 1")
    if mu.known_metric_entropy is None:
        raise MeasureError("measure has no known metric entropy")
    if not mu.homogeneous:
        raise MeasureError(
            "entropy sandwich needs a homogeneous measure (uniform Bowen-ball decay)"
        )
    tol = default_tolerance(mode) if tolerance is None else tolerance
    h = mu.known_metric_entropy
    rep_q = _estimates(mu, q, grid, mode)
    rep_1 = _estimates(mu, 1.0, grid, mode)
    rep_s = _estimates(mu, s, grid, mode)
    values = [
        h / math.log(sys.lip_upper),
        rep_q.d_lower,
        rep_1.d_lower,
        rep_1.d_upper,
        rep_s.d_upper,
        h / math.log(sys.lip_lower),
    ]
    labels = [
        "h_mu/log(Lambda)",
        f"d_lower(q={q:g})",
        "d_lower(q=1)",
        "d_upper(q=1)",
        f"d_upper(q={s:g})",
        "h_mu/log(lambda)",
    ]
    return _chain_verdict(
        "entropy_dimension_sandwich",
        labels,
        values,
        tol,
        inputs={
            "measure": mu.describe(),
            "system": sys.describe(),
            "q": q,
            "s": s,
            "h_mu": h,
            "grid": _grid_dict(grid),
            **_mode_dict(mode),
        },
    )


def verify_anosov_dimension_formula(
    mu: MeasureModel,
    q_values: Sequence[float] = (0.0, 2.0),
    grid: EpsGrid = _DEFAULT_GRID,
    mode: Mode = ExactMode(),
    tolerance: Optional[float] = None,
) -> VerdictReport:
    """D(q) = h_mu * (1/chi1 - 1/chi2) for every q, chi1 > 0 > chi2.

    Young's exact-dimension identity for smooth hyperbolic surface maps;
    for an area-preserving toral automorphism both sides equal 2.  The
    verdict reports the q whose estimate lands farthest from the target.
    """
    sys = mu.system
    if sys.lyapunov is None or not (sys.lyapunov[0] > 0.0 > sys.lyapunov[1]):
        raise ComputationError(f"{sys.name} has no hyperbolic exponent pair")
    if mu.known_metric_entropy is None:
        raise MeasureError("measure has no known metric entropy")
    tol = default_tolerance(mode) if tolerance is None else tolerance
    chi1, chi2 = sys.lyapunov
    rhs = mu.known_metric_entropy * (1.0 / chi1 - 1.0 / chi2)
    per_q = {}
    worst_q, worst_val, worst_err = None, None, -1.0
    for q in q_values:
        est = _estimates(mu, q, grid, mode).d_ls
        per_q[f"{q:g}"] = est
        err = abs(est - rhs)
        if err > worst_err:
            worst_q, worst_val, worst_err = q, est, err
    return VerdictReport(
        theorem="anosov_dimension_formula",
        lhs=worst_val,
        rhs=rhs,
        lhs_formula=f"d_ls(q={worst_q:g})",
        rhs_formula="h_mu*(1/chi1 - 1/chi2)",
        tolerance=tol,
        passed=worst_err <= tol,
        inputs={
            "measure": mu.describe(),
            "system": sys.describe(),
            "q_values": [float(q) for q in q_values],
            "grid": _grid_dict(grid),
            **_mode_dict(mode),
        },
        details={"estimates": per_q, "chi1": chi1, "chi2": chi2},
        kind="identity",
    )


def verify_expansive_dimension_bound(
    mu: MeasureModel,
    q: float = 0.0,
    grid: EpsGrid = _DEFAULT_GRID,
    mode: Mode = ExactMode(),
    tolerance: Optional[float] = None,
) -> VerdictReport:
    """D_upper(q) <= 2*h_top/log(k) for 0 <= q < 1 under an expansive metric.

    k is the system's metric expansivity constant and h_top its
    topological entropy; any invariant measure qualifies.
    """
    if not (0.0 <= q < 1.0):
        raise ComputationError("expansive dimension bound needs 0 <= q < 1")
    sys = mu.system
    if sys.hyperbolic_k is None or sys.hyperbolic_k <= 1.0:
        raise ComputationError(f"{sys.name} has no expansivity constant above 1")
    if sys.known_top_entropy is None:
        raise ComputationError(f"{sys.name} has no known topological entropy")
    tol = default_tolerance(mode) if tolerance is None else tolerance
    lhs = _estimates(mu, q, grid, mode).d_upper
    rhs = 2.0 * sys.known_top_entropy / math.log(sys.hyperbolic_k)
    return VerdictReport(
        theorem="expansive_dimension_bound",
        lhs=lhs,
        rhs=rhs,
        lhs_formula=f"d_upper(q={q:g})",
        rhs_formula="2*h_top/log(k)",
        tolerance=tol,
        passed=lhs <= rhs + tol,
        inputs={
            "measure": mu.describe(),
            "system": sys.describe(),
            "q": q,
            "h_top": sys.known_top_entropy,
            "k": sys.hyperbolic_k,
            "grid": _grid_dict(grid),
            **_mode_dict(mode),
        },
    )


def verify_expansive_entropy_bound(
    mu: MeasureModel,
    q: float = 2.0,
    grid: EpsGrid = _DEFAULT_GRID,
    mode: Mode = ExactMode(),
    tolerance: Optional[float] = None,
    expected: str = "pass",
) -> VerdictReport:
    """D_upper(q) <= h_mu * log(k) for q >= 1, as stated.

    The verdict judges the bound exactly as written.  The product form has
    mismatched units (a dimension against nats squared), and the dual
    reading h_mu / log(k) is reported alongside in the details without
    being judged; the uniform coin flip makes the written form fail while
    also exceeding the dual reading, so neither repairs the bound.
    """
    if q < 1.0:
        raise ComputationError("expansive entropy bound needs q >= 1")
    sys = mu.system
    if sys.hyperbolic_k is None or sys.hyperbolic_k <= 1.0:
        raise ComputationError(f"{sys.name} has no expansivity constant above 1")
    if mu.known_metric_entropy is None:
        raise MeasureError("measure has no known metric entropy")
    tol = default_tolerance(mode) if tolerance is None else tolerance
    lhs = _estimates(mu, q, grid, mode).d_upper
    h = mu.known_metric_entropy
    logk = math.log(sys.hyperbolic_k)
    rhs = h * logk
    alt = h / logk
    return VerdictReport(
        theorem="expansive_entropy_bound",
        lhs=lhs,
        rhs=rhs,
        lhs_formula=f"d_upper(q={q:g})",
        rhs_formula="h_mu*log(k)",
        tolerance=tol,
        passed=lhs <= rhs + tol,
        inputs={
            "measure": mu.describe(),
            "system": sys.describe(),
            "q": q,
            "h_mu": h,
            "k": sys.hyperbolic_k,
            "grid": _grid_dict(grid),
            **_mode_dict(mode),
        },
        details={
            "alternative_rhs": alt,
            "alternative_rhs_formula": "h_mu/log(k)",
            "alternative_passed": lhs <= alt + tol,
        },
        expected=expected,
    )


def verify_max_entropy_lower_bound(
    mu: MeasureModel,
    q: float = 2.0,
    grid: EpsGrid = _DEFAULT_GRID,
    mode: Mode = ExactMode(),
    tolerance: Optional[float] = None,
) -> VerdictReport:
    """h_top/log(Lambda) <= D_lower(q) for q > 1 and a max-entropy measure."""
    if q <= 1.0:
        raise ComputationError("max-entropy lower bound needs q > 1")
    sys = mu.system
    if sys.known_top_entropy is None:
        raise ComputationError(f"{sys.name} has no known topological entropy")
    if sys.lip_upper is None or sys.lip_upper <= 1.0:
        raise ComputationError(f"{sys.name} has no Lipschitz constant above 1")
    if (
        mu.known_metric_entropy is None
        or abs(mu.known_metric_entropy - sys.known_top_entropy) > 1e-9
    ):
        raise MeasureError("measure is not a measure of maximal entropy for its system")
    tol = default_tolerance(mode) if tolerance is None else tolerance
    lhs = sys.known_top_entropy / math.log(sys.lip_upper)
    rhs = _estimates(mu, q, grid, mode).d_lower
    return VerdictReport(
        theorem="max_entropy_lower_bound",
        lhs=lhs,
        rhs=rhs,
        lhs_formula="h_top/log(Lambda)",
        rhs_formula=f"d_lower(q={q:g})",
        tolerance=tol,
        passed=lhs <= rhs + tol,
        inputs={
            "measure": mu.describe(),
            "system": sys.describe(),
            "q": q,
            "h_top": sys.known_top_entropy,
            "Lambda": sys.lip_upper,
            "grid": _grid_dict(grid),
            **_mode_dict(mode),
        },
    )


def verify_homogeneity(
    mu: MeasureModel,
    eps: float = 0.25,
    n_values: Sequence[int] = (0, 1, 2, 4, 8),
    centers: int = 8,
    seed: int = 7,
    c: Optional[float] = None,
    tolerance: float = EXACT_TOLERANCE,
) -> VerdictReport:
    """max over pairs and n of mass(B(y,n,eps/2)) / mass(B(x,n,eps)) <= c.

    The Bowen-ball comparability certificate behind the punctual entropy
    limits.  The default constant is alphabet^2 on shift spaces and 2 on
    the circle and torus; the observed worst ratio travels in the details
    so an overly generous c is visible.
    """
    sys = mu.system
    if c is None:
        c = float(sys.alphabet**2) if sys.space == "shift" else 2.0
    w = None
    if sys.space == "shift":
        from .geometry import dyadic_depth

        # Bowen windows reach n + depth(eps/2) symbols forward.
        w = dyadic_depth(eps / 2.0) + max(n_values)
    xs = sample(mu, centers, seed, window_radius=w)
    ys = sample(mu, centers, seed + 1, window_radius=w)
    worst = 0.0
    worst_at = None
    for n in n_values:
        for x, y in zip(xs, ys):
            denom = ball_mass(mu, BallQuery(x, eps, bowen_n=n))
            numer = ball_mass(mu, BallQuery(y, eps / 2.0, bowen_n=n))
            if denom <= 0.0:
                raise ComputationError("zero Bowen-ball mass at a sampled center")
            ratio = numer / denom
            if ratio > worst:
                worst = ratio
                worst_at = n
    return VerdictReport(
        theorem="bowen_homogeneity",
        lhs=worst,
        rhs=c,
        lhs_formula="max ratio mass(B(y,n,eps/2))/mass(B(x,n,eps))",
        rhs_formula="c",
        tolerance=tolerance,
        passed=worst <= c + tolerance,
        inputs={
            "measure": mu.describe(),
            "eps": eps,
            "n_values": [int(n) for n in n_values],
            "centers": centers,
            "seed": seed,
        },
        details={"worst_n": worst_at},
    )


@dataclass(frozen=True)
class VerifyJob:
    """A named, deterministic check: build() returns one VerdictReport."""

    name: str
    build: Callable[[], VerdictReport]
    expected: str = "pass"

    def run(self) -> VerdictReport:
        report = self.build()
        if report.expected != self.expected:
            # Jobs own the expectation; ops default to expected="pass".
            from dataclasses import replace

            report = replace(report, expected=self.expected)
        return report


@dataclass(frozen=True)
class SuiteResult:
    entries: tuple  # ordered (job_name, VerdictReport) pairs

    @property
    def failures(self) -> int:
        """Surprises only: unexpected fails plus unexpected passes."""
        return sum(1 for _, r in self.entries if r.surprising)

    def json_lines(self) -> list[str]:
        lines = []
        for name, r in self.entries:
            d = r.as_dict()
            d["job"] = name
            import json

            lines.append(json.dumps(d, sort_keys=True))
        return lines

    def summary_lines(self) -> list[str]:
        out = []
        for name, r in self.entries:
            status = "PASS" if r.passed else "FAIL"
            mark = "" if not r.surprising else " (UNEXPECTED)"
            if r.expected == "fail" and not r.passed:
                mark = " (expected failure)"
            out.append(f"[{status}]{mark} {name}: lhs={r.lhs!r} rhs={r.rhs!r} tol={r.tolerance!r}")
        return out


def _shift_pairs(m: int, count: int, seed: int) -> list[tuple[Point, Point]]:
    sys = zoo_system("full_shift_2sided", m=m)
    mu = bernoulli_measure(sys, [1.0 / m] * m)
    xs = sample(mu, count, seed, window_radius=8)
    ys = sample(mu, count, seed + 1, window_radius=8)
    return list(zip(xs, ys))


def _torus_pairs(count: int, seed: int) -> list[tuple[Point, Point]]:
    sys = zoo_system("toral_automorphism")
    mu = lebesgue_measure(sys)
    xs = sample(mu, count, seed)
    pairs = []
    # Perturbation pairs stay inside the local-expansivity radius where
    # the max-norm constant k is actually valid.
    offsets = (1e-3, 3e-3, 1e-2, 3e-2)
    for i, x in enumerate(xs):
        d = offsets[i % len(offsets)]
        u, v = x.as_floats()
        y = TorusPoint(((u + d) % 1.0, (v - 0.618 * d) % 1.0))
        pairs.append((x, y))
    return pairs


def default_suite(tolerance: Optional[float] = None) -> list[VerifyJob]:
    """Deterministic exact-mode checks across the model zoo.

    tolerance, when given, replaces each op's default comparison slack
    (the metric-inequality checks keep 0 and the orbit-convergence check
    keeps its gap budget unless overridden).
    """
    tol = tolerance
    shift2 = zoo_system("full_shift_2sided", m=2)
    shift3_one = zoo_system("full_shift_2sided", m=3, metric="onesided")
    shift4 = zoo_system("full_shift_2sided", m=4)
    doubling = zoo_system("doubling_map")
    cat = zoo_system("toral_automorphism")
    rot4 = zoo_system("periodic_orbit", p=4)

    uniform2 = bernoulli_measure(shift2, [0.5, 0.5])
    biased = bernoulli_measure(shift2, [0.7, 0.3])
    chain = markov_measure(shift2, [[0.9, 0.1], [0.2, 0.8]])
    uniform3_one = bernoulli_measure(shift3_one, [1 / 3] * 3)
    uniform4 = bernoulli_measure(shift4, [0.25] * 4)
    leb_doubling = lebesgue_measure(doubling)
    leb_cat = lebesgue_measure(cat)
    orbit4 = periodic_measure(rot4, TorusPoint((Fraction(0),)), 4)

    deep = EpsGrid(0.5, 0.5, 14)

    jobs = [
        VerifyJob(
            "dimension_monotonicity/bernoulli-uniform",
            lambda: verify_dimension_monotonicity(uniform2, tolerance=tol),
        ),
        VerifyJob(
            "dimension_monotonicity/bernoulli-biased",
            lambda: verify_dimension_monotonicity(biased, tolerance=tol),
        ),
        VerifyJob(
            "dimension_monotonicity/markov-two-state",
            lambda: verify_dimension_monotonicity(chain, grid=deep, tolerance=tol),
        ),
        VerifyJob(
            "local_dimension_sandwich/bernoulli-biased",
            lambda: verify_local_dimension_bounds(biased, tolerance=tol),
        ),
        VerifyJob(
            "local_dimension_sandwich/lebesgue-doubling",
            lambda: verify_local_dimension_bounds(leb_doubling, centers=8, tolerance=tol),
        ),
        VerifyJob(
            "entropy_dimension_sandwich/uniform-onesided-shift",
            lambda: verify_entropy_dimension_sandwich(uniform3_one, tolerance=tol),
        ),
        VerifyJob(
            "entropy_dimension_sandwich/lebesgue-doubling",
            lambda: verify_entropy_dimension_sandwich(leb_doubling, tolerance=tol),
        ),
        VerifyJob(
            "anosov_dimension_formula/cat-map-lebesgue",
            lambda: verify_anosov_dimension_formula(leb_cat, q_values=(0.0, 2.0), tolerance=tol),
        ),
        VerifyJob(
            "expansive_dimension_bound/bernoulli-uniform-q0",
            lambda: verify_expansive_dimension_bound(uniform2, q=0.0, tolerance=tol),
        ),
        VerifyJob(
            "expansive_dimension_bound/bernoulli-biased-q05",
            lambda: verify_expansive_dimension_bound(biased, q=0.5, tolerance=tol),
        ),
        VerifyJob(
            "expansive_entropy_bound/bernoulli-uniform",
            lambda: verify_expansive_entropy_bound(uniform2, q=2.0, tolerance=tol, expected="fail"),
            expected="fail",
        ),
        VerifyJob(
            "max_entropy_lower_bound/full-shift-2",
            lambda: verify_max_entropy_lower_bound(uniform2, q=2.0, tolerance=tol),
        ),
        VerifyJob(
            "max_entropy_lower_bound/full-shift-4",
            lambda: verify_max_entropy_lower_bound(uniform4, q=2.0, tolerance=tol),
        ),
        VerifyJob(
            "bowen_homogeneity/bernoulli-uniform",
            lambda: verify_homogeneity(uniform2, **({} if tol is None else {'tolerance': tol})),
        ),
        VerifyJob(
            "bowen_homogeneity/lebesgue-doubling",
            lambda: verify_homogeneity(leb_doubling, **({} if tol is None else {'tolerance': tol})),
        ),
        VerifyJob(
            "bowen_homogeneity/periodic-orbit",
            lambda: verify_homogeneity(orbit4, eps=0.2, n_values=(0, 1, 2, 4), **({} if tol is None else {'tolerance': tol})),
        ),
        VerifyJob(
            "hyperbolic_metric_inequality/full-shift",
            lambda: check_hyperbolic_metric(shift2, _shift_pairs(2, 16, 11)),
        ),
        VerifyJob(
            "hyperbolic_metric_inequality/cat-map",
            lambda: check_hyperbolic_metric(cat, _torus_pairs(16, 13)),
        ),
        VerifyJob(
            "correlation_energy_convergence/doubling-orbit",
            lambda: pesin_convergence_test(
                doubling,
                leb_doubling,
                TorusPoint((Fraction(271828183, 10**9 + 7),)),
                eps_values=(0.125, 0.0625, 0.03125),
                n_values=(200, 1000),
            ),
        ),
    ]
    return jobs


def run_suite(
    jobs: Optional[Sequence[VerifyJob]] = None,
    names: Optional[Sequence[str]] = None,
    threads: int = 1,
) -> SuiteResult:
    """Run jobs in order; results are ordered and seed-deterministic.

    names filters by substring against job names.  threads > 1 evaluates
    jobs concurrently; the result order and content do not depend on it.
    """
    if jobs is None:
        jobs = default_suite()
    if names:
        jobs = [j for j in jobs if any(pat in j.name for pat in names)]
    if not jobs:
        raise ComputationError("no verification jobs selected")
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(lambda j: j.run(), jobs))
    else:
        reports = [j.run() for j in jobs]
    return SuiteResult(entries=tuple((j.name, r) for j, r in zip(jobs, reports)))
