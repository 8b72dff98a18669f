"""Invariant measures with exact ball-mass oracles and samplers.

Supported measure kinds: bernoulli and markov on full shifts, lebesgue on
torus systems, uniform measures on periodic orbits, and empirical point
clouds.  Exact oracles return closed-form masses of metric balls, Bowen
balls B(x,n,eps) (iterates 0..n) and bilateral Bowen balls (iterates
-n2..n1); the empirical estimator counts cloud points inside the same
sets, so the two routes are directly comparable.

Symbolic radii snap down to the dyadic grid: the ball of radius eps is
the cylinder fixing coordinates -j..j with j = dyadic_depth(eps), and the
empirical counter tests membership in exactly that cylinder.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .geometry import (
    GeometryError,
    InsufficientWindowError,
    Point,
    SymbolicPoint,
    SystemSpec,
    TorusPoint,
    bilateral_dist,
    bowen_dist,
    dist,
    dyadic_depth,
)
from . import _neighbors


class MeasureError(ValueError):
    """Invalid measure construction or unsupported query."""


@dataclass(frozen=True)
class BallQuery:
    """A ball specification: metric ball, Bowen ball, or bilateral Bowen ball.

    bowen_n = n means iterates 0..n (n+1 of them).  bilateral = (n1, n2)
    means iterates -n2..n1 and needs an invertible system.  At most one of
    bowen_n/bilateral may be set.
    """

    center: Point
    eps: float
    bowen_n: Optional[int] = None
    bilateral: Optional[tuple[int, int]] = None

    def __post_init__(self):
        if self.eps <= 0:
            raise MeasureError("ball radius must be positive")
        if self.bowen_n is not None and self.bilateral is not None:
            raise MeasureError("a query is either Bowen or bilateral, not both")
        if self.bowen_n is not None and self.bowen_n < 0:
            raise MeasureError("bowen_n must be >= 0")
        if self.bilateral is not None:
            n1, n2 = self.bilateral
            if n1 < 0 or n2 < 0:
                raise MeasureError("bilateral window sizes must be >= 0")


@dataclass(eq=False)
class MeasureModel:
    """An invariant measure of a model system.

    known_metric_entropy is filled at construction when a closed form
    exists; homogeneous marks measures whose Bowen-ball masses admit
    center-independent two-sided bounds.
    """

    kind: str
    system: SystemSpec
    p: Optional[np.ndarray] = None
    transition: Optional[np.ndarray] = None
    stationary: Optional[np.ndarray] = None
    atoms: Optional[tuple[Point, ...]] = None
    points: Optional[tuple[Point, ...]] = None
    known_metric_entropy: Optional[float] = None
    homogeneous: bool = False
    params: dict = field(default_factory=dict)

    def describe(self) -> dict:
        d = {"kind": self.kind, "system": self.system.name}
        d.update(self.params)
        return d


def bernoulli_measure(sys: SystemSpec, p: Sequence[float]) -> MeasureModel:
    """Product measure on a full shift with one-step distribution p."""
    if sys.space != "shift":
        raise MeasureError("bernoulli measures live on shift systems")
    p = np.asarray(p, dtype=np.float64)
    if p.ndim != 1 or len(p) != sys.alphabet:
        raise MeasureError(f"need {sys.alphabet} probabilities")
    if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
        raise MeasureError("probabilities must be nonnegative and sum to 1")
    pos = p[p > 0]
    entropy = float(-(pos * np.log(pos)).sum())
    return MeasureModel(
        kind="bernoulli",
        system=sys,
        p=p,
        known_metric_entropy=entropy,
        homogeneous=bool(np.allclose(p, 1.0 / len(p), atol=1e-15)),
        params={"p": [float(v) for v in p]},
    )


def _stationary_of(transition: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eig(transition.T)
    i = int(np.argmin(np.abs(vals - 1.0)))
    v = np.real(vecs[:, i])
    v = np.abs(v)
    return v / v.sum()


def markov_measure(
    sys: SystemSpec, transition, stationary=None
) -> MeasureModel:
    """Stationary Markov measure on a full shift."""
    if sys.space != "shift":
        raise MeasureError("markov measures live on shift systems")
    P = np.asarray(transition, dtype=np.float64)
    m = sys.alphabet
    if P.shape != (m, m):
        raise MeasureError(f"transition matrix must be {m}x{m}")
    if np.any(P < 0) or np.any(np.abs(P.sum(axis=1) - 1.0) > 1e-12):
        raise MeasureError("rows of the transition matrix must sum to 1")
    pi = _stationary_of(P) if stationary is None else np.asarray(stationary, dtype=np.float64)
    if np.max(np.abs(pi @ P - pi)) > 1e-10:
        raise MeasureError("stationary vector does not satisfy pi P = pi")
    with np.errstate(divide="ignore"):
        logP = np.where(P > 0, np.log(np.where(P > 0, P, 1.0)), 0.0)
    entropy = float(-(pi[:, None] * P * logP).sum())
    uniform = np.allclose(P, 1.0 / m, atol=1e-15) and np.allclose(pi, 1.0 / m, atol=1e-15)
    return MeasureModel(
        kind="markov",
        system=sys,
        transition=P,
        stationary=pi,
        known_metric_entropy=entropy,
        homogeneous=bool(uniform),
        params={"transition": P.tolist(), "stationary": pi.tolist()},
    )


def lebesgue_measure(sys: SystemSpec) -> MeasureModel:
    """Normalized Lebesgue measure on the torus phase space."""
    if sys.space != "torus":
        raise MeasureError("lebesgue measures live on torus systems")
    if sys.name == "doubling_map":
        h = math.log(2.0)
    elif sys.name == "toral_automorphism":
        h = sys.lyapunov[0]  # log of the expanding eigenvalue
    else:
        h = 0.0  # isometries
    return MeasureModel(
        kind="lebesgue",
        system=sys,
        known_metric_entropy=h,
        homogeneous=True,
        params={"dim": sys.dim},
    )


def periodic_measure(
    sys: SystemSpec, x0: Point, period: Optional[int] = None, max_period: int = 100000
) -> MeasureModel:
    """Uniform measure on the (finite) orbit of x0; entropy 0."""
    if sys.space != "torus":
        raise MeasureError("periodic measures are supported on torus systems")
    atoms = [x0]
    x = sys.apply(x0)
    while _point_close(x, x0) is False:
        atoms.append(x)
        x = sys.apply(x)
        if len(atoms) > (period or max_period):
            raise MeasureError("orbit did not close within the allowed period")
    if period is not None and len(atoms) != period:
        raise MeasureError(f"orbit closed at period {len(atoms)}, expected {period}")
    return MeasureModel(
        kind="periodic",
        system=sys,
        atoms=tuple(atoms),
        known_metric_entropy=0.0,
        homogeneous=True,
        params={"atoms": [[float(c) for c in a.coords] for a in atoms]},
    )


def dirac_measure(sys: SystemSpec, x: Point) -> MeasureModel:
    """Point mass at a fixed point of the system."""
    return periodic_measure(sys, x, period=1)


def empirical_measure(sys: SystemSpec, points: Sequence[Point]) -> MeasureModel:
    """Uniform measure on a finite point cloud (no exact oracle)."""
    if not points:
        raise MeasureError("empirical measure needs at least one point")
    for pt in points:
        sys.validate_point(pt)
    return MeasureModel(
        kind="empirical",
        system=sys,
        points=tuple(points),
        known_metric_entropy=None,
        homogeneous=False,
        params={"n_points": len(points)},
    )


def _point_close(a: Point, b: Point, tol: float = 1e-12) -> bool:
    if isinstance(a, TorusPoint) and isinstance(b, TorusPoint):
        if all(isinstance(c, Fraction) for c in a.coords + b.coords):
            return a.coords == b.coords
        return max(abs(x - y) for x, y in zip(a.as_floats(), b.as_floats())) <= tol
    return a == b


# ---------------------------------------------------------------------------
# exact ball masses


def _window_bounds(sys: SystemSpec, query: BallQuery) -> tuple[int, int]:
    """Symbol window a..b (inclusive) fixed by the queried ball."""
    j = dyadic_depth(query.eps)
    onesided = sys.metric_variant == "onesided"
    if query.bowen_n is not None:
        n = query.bowen_n
        return (0, n + j) if onesided else (-j, n + j)
    if query.bilateral is not None:
        n1, n2 = query.bilateral
        return (-n2, n1 + j) if onesided else (-(n2 + j), n1 + j)
    return (0, j) if onesided else (-j, j)


def _center_symbols(x: SymbolicPoint, a: int, b: int) -> list[int]:
    return [x.symbol(i) for i in range(a, b + 1)]


def ball_mass(mu: MeasureModel, query: BallQuery) -> float:
    """Exact measure of the queried ball; errors on unsupported pairs."""
    sys = mu.system
    sys.validate_point(query.center)
    if mu.kind == "empirical":
        raise MeasureError("empirical measures have no exact oracle; use empirical_ball_mass")

    if mu.kind == "bernoulli":
        a, b = _window_bounds(sys, query)
        syms = _center_symbols(query.center, a, b)
        return float(np.prod(mu.p[syms]))

    if mu.kind == "markov":
        a, b = _window_bounds(sys, query)
        syms = _center_symbols(query.center, a, b)
        mass = float(mu.stationary[syms[0]])
        for s, t in zip(syms[:-1], syms[1:]):
            mass *= float(mu.transition[s, t])
        return mass

    if mu.kind == "lebesgue":
        eps = float(query.eps)
        if query.bilateral is not None:
            raise MeasureError(f"no exact bilateral oracle for lebesgue on {sys.name}")
        if query.bowen_n is not None:
            n = query.bowen_n
            if sys.name == "doubling_map":
                if eps > 0.25:
                    raise MeasureError("doubling-map Bowen oracle needs eps <= 1/4")
                return min(2.0 * eps * 2.0 ** (-n), 1.0)
            if sys.name == "periodic_orbit":
                return min(2.0 * eps, 1.0) ** sys.dim  # isometry: Bowen = metric ball
            raise MeasureError(f"no exact Bowen oracle for lebesgue on {sys.name}")
        return min(2.0 * eps, 1.0) ** sys.dim

    if mu.kind == "periodic":
        inside = 0
        for atom in mu.atoms:
            if _query_dist(sys, query, atom) <= query.eps:
                inside += 1
        return inside / len(mu.atoms)

    raise MeasureError(f"unknown measure kind {mu.kind!r}")


def _query_dist(sys: SystemSpec, query: BallQuery, y: Point) -> float:
    x = query.center
    if query.bowen_n is not None:
        return bowen_dist(sys, x, y, query.bowen_n)
    if query.bilateral is not None:
        n1, n2 = query.bilateral
        return bilateral_dist(sys, x, y, n1, n2)
    return dist(sys, x, y)


# ---------------------------------------------------------------------------
# sampling and orbits


def sample(
    mu: MeasureModel, n: int, seed: int, window_radius: Optional[int] = None
) -> list[Point]:
    """Draw n independent points from mu with a seeded portable generator.

    Symbolic measures need window_radius: sampled points store symbols
    -W..W, which bounds the depth of later exact queries at those points.
    """
    if n < 1:
        raise MeasureError("sample size must be >= 1")
    rng = np.random.default_rng(np.random.PCG64(seed))
    sys = mu.system

    if mu.kind in ("bernoulli", "markov"):
        if window_radius is None:
            raise MeasureError("symbolic sampling needs window_radius")
        w = int(window_radius)
        width = 2 * w + 1
        m = sys.alphabet
        if mu.kind == "bernoulli":
            rows = rng.choice(m, size=(n, width), p=mu.p)
        else:
            rows = np.empty((n, width), dtype=np.int64)
            cum_pi = np.cumsum(mu.stationary)
            rows[:, 0] = np.searchsorted(cum_pi, rng.random(n), side="right")
            cum_P = np.cumsum(mu.transition, axis=1)
            for k in range(1, width):
                u = rng.random(n)
                rows[:, k] = (u[:, None] >= cum_P[rows[:, k - 1]]).sum(axis=1)
        rows = np.minimum(rows, m - 1)
        return [SymbolicPoint(tuple(int(s) for s in row), m) for row in rows]

    if mu.kind == "lebesgue":
        pts = rng.random((n, sys.dim))
        return [TorusPoint(tuple(float(c) for c in row)) for row in pts]

    if mu.kind == "periodic":
        idx = rng.integers(0, len(mu.atoms), size=n)
        return [mu.atoms[int(i)] for i in idx]

    if mu.kind == "empirical":
        idx = rng.integers(0, len(mu.points), size=n)
        return [mu.points[int(i)] for i in idx]

    raise MeasureError(f"unknown measure kind {mu.kind!r}")


def orbit(sys: SystemSpec, x0: Point, n: int) -> list[Point]:
    """The first n points x0, f(x0), ..., f^(n-1)(x0).

    Symbolic orbits consume the stored window one symbol per step and
    raise InsufficientWindowError when it is exhausted.
    """
    if n < 1:
        raise MeasureError("orbit length must be >= 1")
    pts = [x0]
    x = x0
    for _ in range(n - 1):
        x = sys.apply(x)
        pts.append(x)
    return pts


def coords_array(points: Sequence[TorusPoint]) -> np.ndarray:
    """Float coordinate matrix (n, d) of a torus point cloud."""
    return np.array([p.as_floats() for p in points], dtype=np.float64)


def _vec_apply(sys: SystemSpec, arr: np.ndarray, inverse: bool = False) -> np.ndarray:
    if sys.name == "doubling_map":
        if inverse:
            raise GeometryError("doubling map is not invertible")
        return (arr * 2.0) % 1.0
    if sys.name == "toral_automorphism":
        rows = sys.params["matrix"]
        M = np.array(rows, dtype=np.float64)
        if inverse:
            a, b = rows[0]
            c, d = rows[1]
            det = a * d - b * c
            M = np.array([[d * det, -b * det], [-c * det, a * det]], dtype=np.float64)
        return (arr @ M.T) % 1.0
    if sys.name == "periodic_orbit":
        p = sys.params["p"]
        if p == 1:
            return arr
        step = -1.0 / p if inverse else 1.0 / p
        return (arr + step) % 1.0
    raise GeometryError(f"no vectorized iteration for {sys.name}")


def empirical_ball_mass(points: Sequence[Point], query: BallQuery, sys: SystemSpec) -> float:
    """Fraction of cloud points inside the queried ball (closed condition).

    Torus Bowen/bilateral queries iterate the cloud in float arithmetic;
    symbolic queries test membership in the same snapped cylinder the
    exact oracle uses.
    """
    if not points:
        raise MeasureError("empty point cloud")
    n_pts = len(points)
    sys.validate_point(query.center)

    if sys.space == "shift":
        a, b = _window_bounds(sys, query)
        target = np.array(_center_symbols(query.center, a, b), dtype=np.int64)
        mat = _neighbors.symbols_matrix(points)
        w = (mat.shape[1] - 1) // 2
        if a < -w or b > w:
            raise InsufficientWindowError(f"cloud windows too narrow for {a}..{b}")
        block = mat[:, a + w : b + w + 1]
        return float((block == target).all(axis=1).sum()) / n_pts

    arr = coords_array(points)
    center = np.array(query.center.as_floats(), dtype=np.float64)
    if query.bowen_n is None and query.bilateral is None:
        d = _wrap_max_dist(arr, center)
        return float((d <= query.eps).sum()) / n_pts

    steps_fwd = query.bowen_n if query.bowen_n is not None else query.bilateral[0]
    steps_back = 0 if query.bowen_n is not None else query.bilateral[1]
    dmax = _wrap_max_dist(arr, center)
    cur, ccur = arr, center
    for _ in range(steps_fwd):
        cur = _vec_apply(sys, cur)
        ccur = _vec_apply(sys, ccur[None, :])[0]
        dmax = np.maximum(dmax, _wrap_max_dist(cur, ccur))
    cur, ccur = arr, center
    for _ in range(steps_back):
        cur = _vec_apply(sys, cur, inverse=True)
        ccur = _vec_apply(sys, ccur[None, :], inverse=True)[0]
        dmax = np.maximum(dmax, _wrap_max_dist(cur, ccur))
    return float((dmax <= query.eps).sum()) / n_pts


def _wrap_max_dist(arr: np.ndarray, center: np.ndarray) -> np.ndarray:
    d = np.abs(arr - center[None, :])
    d = np.minimum(d, 1.0 - d)
    return d.max(axis=1)
