"""Phase spaces, metrics and the model-system zoo.

Points live either on the torus T^d (d = 1 or 2, coordinates in [0,1)) or
in a two-sided full shift over a finite alphabet.  A symbolic point stores
a finite symbol window centered at coordinate 0; the window extends
periodically, and any operation that would need symbols beyond the stored
window fails loudly instead of fabricating data.

A SystemSpec bundles a map, its inverse when one exists, the metric, and
the analytically known constants of the system (Lipschitz bounds,
expansivity constant, topological entropy, Lyapunov exponents).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

Scalar = Union[float, Fraction]


class GeometryError(ValueError):
    """Base class for phase-space errors."""


class InsufficientWindowError(GeometryError):
    """A symbolic operation needs coordinates beyond the stored window."""


class IncompatiblePointsError(GeometryError):
    """Points from different phase spaces were mixed in one operation."""


def _mod1(x: Scalar) -> Scalar:
    if isinstance(x, Fraction):
        return x % 1
    return float(x) % 1.0


@dataclass(frozen=True)
class TorusPoint:
    """A point on T^d with coordinates in [0,1), d = 1 or 2.

    Coordinates may be floats or Fractions; rational coordinates are kept
    exact so that orbits of maps with integer linear lifts can be iterated
    without rounding.
    """

    coords: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.coords) not in (1, 2):
            raise GeometryError("torus points have 1 or 2 coordinates")
        object.__setattr__(self, "coords", tuple(_mod1(c) for c in self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(c) for c in self.coords)


@dataclass(frozen=True)
class SymbolicPoint:
    """A two-sided symbol sequence stored as the window -W..W.

    ``window[i + W]`` is the symbol at coordinate i.  The extension
    convention is periodic: the point denotes the bi-infinite sequence of
    period 2W+1 obtained by repeating the window.  Measure queries never
    use the extension; they raise InsufficientWindowError instead.
    """

    window: tuple[int, ...]
    alphabet: int

    def __post_init__(self):
        if self.alphabet < 2:
            raise GeometryError("alphabet needs at least two symbols")
        if len(self.window) % 2 != 1:
            raise GeometryError("symbol window must have odd length (indices -W..W)")
        if any(not (0 <= s < self.alphabet) for s in self.window):
            raise GeometryError("symbol outside alphabet")
        object.__setattr__(self, "window", tuple(int(s) for s in self.window))

    @property
    def radius(self) -> int:
        return (len(self.window) - 1) // 2

    def symbol(self, i: int) -> int:
        """Symbol at coordinate i; only stored coordinates are readable."""
        if abs(i) > self.radius:
            raise InsufficientWindowError(
                f"coordinate {i} outside stored window (radius {self.radius})"
            )
        return self.window[i + self.radius]

    def extended_symbol(self, i: int) -> int:
        # Periodic extension; used only for point identity, never for measure data.
        return self.window[(i + self.radius) % len(self.window)]


Point = Union[TorusPoint, SymbolicPoint]


def dyadic_depth(eps: float) -> int:
    """Cylinder depth j for a radius eps in (0,1].

    Radii snap down the dyadic grid: the ball of radius eps equals the
    ball of radius 2^(-j) with j = ceil(-log2 eps); that ball fixes the
    symbol window -j..j.
    """
    eps = float(eps)
    if not (0.0 < eps <= 1.0):
        raise GeometryError(f"symbolic radius must lie in (0,1], got {eps}")
    mantissa, exponent = math.frexp(eps)  # eps = mantissa * 2**exponent
    return 1 - exponent


def circle_dist(a: float, b: float) -> float:
    d = abs(a - b)
    return min(d, 1.0 - d)


def _torus_dist(x: TorusPoint, y: TorusPoint) -> float:
    if x.dim != y.dim:
        raise IncompatiblePointsError("torus points of different dimension")
    xf, yf = x.as_floats(), y.as_floats()
    return max(circle_dist(a, b) for a, b in zip(xf, yf))


def _shift_dist(x: SymbolicPoint, y: SymbolicPoint, onesided: bool) -> float:
    if x.alphabet != y.alphabet:
        raise IncompatiblePointsError("symbolic points over different alphabets")
    w = min(x.radius, y.radius)
    if onesided:
        indices: Iterable[int] = range(0, w + 1)
    else:
        indices = (k for j in range(w + 1) for k in ((j,) if j == 0 else (-j, j)))
    for i in indices:
        if x.symbol(i) != y.symbol(i):
            return 2.0 ** (-abs(i))
    # No disagreement inside the common window: the points are equal iff
    # their periodic extensions coincide.  Two periodic sequences agreeing
    # on a full lcm(period) stretch on each side are identical.
    span = math.lcm(len(x.window), len(y.window))
    lo = 0 if onesided else -span
    if all(x.extended_symbol(i) == y.extended_symbol(i) for i in range(lo, span + 1)):
        return 0.0
    raise InsufficientWindowError(
        "windows agree but extensions differ; first disagreement not resolvable"
    )


@dataclass(eq=False)
class SystemSpec:
    """A model dynamical system with its analytically known constants.

    Constants are None when the system does not provide them:
    lip_upper/lip_lower are the local bi-Lipschitz bounds valid for
    distances below bilip_radius; hyperbolic_k/hyperbolic_eps are the
    constants of the expansivity inequality
    max(d(fx,fy), d(f^-1 x, f^-1 y)) >= min(k d(x,y), eps).
    """

    name: str
    space: str  # "torus" | "shift"
    dim: int = 0
    alphabet: int = 0
    metric_variant: str = "twosided"  # shift only
    params: dict = field(default_factory=dict)
    lip_upper: Optional[float] = None
    lip_lower: Optional[float] = None
    bilip_radius: Optional[float] = None
    hyperbolic_k: Optional[float] = None
    hyperbolic_eps: Optional[float] = None
    known_top_entropy: Optional[float] = None
    lyapunov: Optional[tuple[float, float]] = None
    _apply: Callable[[Point], Point] = None
    _invert: Optional[Callable[[Point], Point]] = None

    @property
    def invertible(self) -> bool:
        return self._invert is not None

    def validate_point(self, x: Point) -> None:
        if self.space == "torus":
            if not isinstance(x, TorusPoint) or x.dim != self.dim:
                raise IncompatiblePointsError(f"{self.name} expects T^{self.dim} points")
        else:
            if not isinstance(x, SymbolicPoint) or x.alphabet != self.alphabet:
                raise IncompatiblePointsError(
                    f"{self.name} expects symbols over alphabet {self.alphabet}"
                )

    def apply(self, x: Point) -> Point:
        self.validate_point(x)
        return self._apply(x)

    def invert(self, x: Point) -> Point:
        if self._invert is None:
            raise GeometryError(f"{self.name} is not invertible")
        self.validate_point(x)
        return self._invert(x)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "space": self.space,
            "dim": self.dim,
            "alphabet": self.alphabet,
            "metric_variant": self.metric_variant,
            "params": dict(self.params),
            "lip_upper": self.lip_upper,
            "lip_lower": self.lip_lower,
            "bilip_radius": self.bilip_radius,
            "hyperbolic_k": self.hyperbolic_k,
            "hyperbolic_eps": self.hyperbolic_eps,
            "known_top_entropy": self.known_top_entropy,
            "lyapunov": list(self.lyapunov) if self.lyapunov else None,
        }


def dist(sys: SystemSpec, x: Point, y: Point) -> float:
    """Metric of the system's phase space."""
    sys.validate_point(x)
    sys.validate_point(y)
    if sys.space == "torus":
        return _torus_dist(x, y)
    return _shift_dist(x, y, onesided=sys.metric_variant == "onesided")


def dn_dist(sys: SystemSpec, x: Point, y: Point, n: int) -> float:
    """Dynamical metric d_n(x,y) = max of d(f^k x, f^k y) over k = 0..n-1."""
    if n < 1:
        raise GeometryError("dn_dist needs n >= 1")
    best = dist(sys, x, y)
    for _ in range(n - 1):
        x, y = sys.apply(x), sys.apply(y)
        best = max(best, dist(sys, x, y))
    return best


def bowen_dist(sys: SystemSpec, x: Point, y: Point, n: int) -> float:
    """Bowen-ball distance max of d(f^k x, f^k y) over k = 0..n (n+1 iterates)."""
    if n < 0:
        raise GeometryError("bowen_dist needs n >= 0")
    return dn_dist(sys, x, y, n + 1)


def bilateral_dist(sys: SystemSpec, x: Point, y: Point, n1: int, n2: int) -> float:
    """max of d(f^k x, f^k y) over k = -n2..n1; needs an invertible system."""
    if n1 < 0 or n2 < 0:
        raise GeometryError("bilateral window sizes must be >= 0")
    best = dn_dist(sys, x, y, n1 + 1)
    bx, by = x, y
    for _ in range(n2):
        bx, by = sys.invert(bx), sys.invert(by)
        best = max(best, dist(sys, bx, by))
    return best


# ---------------------------------------------------------------------------
# zoo


def _shift_apply(step: int):
    def go(x: SymbolicPoint) -> SymbolicPoint:
        # One shift consumes one symbol on each side of the window; the
        # result is exact for the underlying sequence, never extended.
        if x.radius < 1:
            raise InsufficientWindowError("window exhausted by shift")
        w = x.window[1 + step : len(x.window) - 1 + step]
        return SymbolicPoint(w, x.alphabet)

    return go


def _doubling_apply(x: TorusPoint) -> TorusPoint:
    (c,) = x.coords
    return TorusPoint((_mod1(c + c),))


def _matrix_apply(rows: tuple[tuple[int, int], tuple[int, int]]):
    (a, b), (c, d) = rows

    def go(x: TorusPoint) -> TorusPoint:
        u, v = x.coords
        if isinstance(u, Fraction) or isinstance(v, Fraction):
            u, v = Fraction(u), Fraction(v)
            den = math.lcm(u.denominator, v.denominator)
            p, q = u.numerator * (den // u.denominator), v.numerator * (den // v.denominator)
            return TorusPoint(
                (Fraction((a * p + b * q) % den, den), Fraction((c * p + d * q) % den, den))
            )
        return TorusPoint(((a * u + b * v) % 1.0, (c * u + d * v) % 1.0))

    return go


def _rotation_apply(p: int, direction: int):
    step = Fraction(direction, p)

    def go(x: TorusPoint) -> TorusPoint:
        if p == 1:
            return x
        (c,) = x.coords
        if isinstance(c, Fraction):
            return TorusPoint((_mod1(c + step),))
        return TorusPoint((_mod1(c + direction / p),))

    return go


def _toral_constants(rows) -> tuple[float, float]:
    (a, b), (c, d) = rows
    det = a * d - b * c
    if abs(det) != 1:
        raise GeometryError("toral automorphism needs an integer matrix with |det| = 1")
    tr = a + d
    disc = tr * tr - 4 * det
    if disc <= 0:
        raise GeometryError("matrix is not hyperbolic (complex or repeated eigenvalues)")
    lam1 = (abs(tr) + math.sqrt(disc)) / 2.0
    if abs(lam1) <= 1.0 + 1e-12:
        raise GeometryError("matrix is not hyperbolic (eigenvalue modulus 1)")
    return lam1, det


def zoo_system(name: str, **params) -> SystemSpec:
    """Build one of the model systems by name.

    full_shift_2sided(m=2, metric="twosided"|"onesided"), toral_automorphism
    (matrix=((2,1),(1,1))), doubling_map(), periodic_orbit(p=1).
    """
    if name == "full_shift_2sided":
        m = int(params.get("m", 2))
        variant = params.get("metric", "twosided")
        if m < 2:
            raise GeometryError("full shift needs m >= 2 symbols")
        if variant not in ("twosided", "onesided"):
            raise GeometryError(f"unknown shift metric variant {variant!r}")
        onesided = variant == "onesided"
        return SystemSpec(
            name=name,
            space="shift",
            alphabet=m,
            metric_variant=variant,
            params={"m": m, "metric": variant},
            lip_upper=2.0,
            lip_lower=2.0 if onesided else None,
            bilip_radius=1.0 if onesided else None,
            # Two-sided base-2 metric satisfies the expansivity inequality
            # with k = 2 for pairs closer than 1/2; one-sided drops it.
            hyperbolic_k=None if onesided else 2.0,
            hyperbolic_eps=None if onesided else 0.5,
            known_top_entropy=math.log(m),
            _apply=_shift_apply(+1),
            _invert=_shift_apply(-1),
        )

    if name == "toral_automorphism":
        rows = params.get("matrix", ((2, 1), (1, 1)))
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        lam1, det = _toral_constants(rows)
        (a, b), (c, d) = rows
        inv = ((d * det, -b * det), (-c * det, a * det))  # M^-1, integer for |det|=1
        norm_inf = max(abs(a) + abs(b), abs(c) + abs(d))
        # Valid expansivity constant under the max-norm metric: the adapted
        # (eigenbasis) constant lam1 degrades by the norm-equivalence factor.
        k = math.sqrt((lam1**2 + lam1**-2) / 4.0)
        return SystemSpec(
            name=name,
            space="torus",
            dim=2,
            params={"matrix": [list(r) for r in rows]},
            lip_upper=float(norm_inf),
            bilip_radius=1.0 / (4.0 * norm_inf),
            hyperbolic_k=k,
            hyperbolic_eps=0.1,
            known_top_entropy=math.log(lam1),
            lyapunov=(math.log(lam1), -math.log(lam1)),
            _apply=_matrix_apply(rows),
            _invert=_matrix_apply(inv),
        )

    if name == "doubling_map":
        return SystemSpec(
            name=name,
            space="torus",
            dim=1,
            params={},
            lip_upper=2.0,
            lip_lower=2.0,
            bilip_radius=0.25,
            known_top_entropy=math.log(2.0),
            lyapunov=(math.log(2.0), math.log(2.0)),
            _apply=_doubling_apply,
            _invert=None,
        )

    if name == "periodic_orbit":
        p = int(params.get("p", 1))
        if p < 1:
            raise GeometryError("periodic orbit needs period >= 1")
        return SystemSpec(
            name=name,
            space="torus",
            dim=1,
            params={"p": p},
            known_top_entropy=0.0,
            _apply=_rotation_apply(p, +1),
            _invert=_rotation_apply(p, -1),
        )

    raise GeometryError(f"unknown system {name!r}")


ZOO_NAMES = ("full_shift_2sided", "toral_automorphism", "doubling_map", "periodic_orbit")


def check_hyperbolic_metric(sys: SystemSpec, pairs: Sequence[tuple[Point, Point]], tolerance: float = 0.0):
    """Check max(d(fx,fy), d(f^-1x,f^-1y)) >= min(k d(x,y), eps) on sample pairs.

    Returns a VerdictReport whose lhs is the worst violation amount
    (positive = violated); pass means no pair violates beyond tolerance.
    """
    from .reports import VerdictReport

    if sys.hyperbolic_k is None or sys.hyperbolic_eps is None:
        raise GeometryError(f"{sys.name} has no expansivity constants")
    if not sys.invertible:
        raise GeometryError(f"{sys.name} is not invertible")
    k, eps = sys.hyperbolic_k, sys.hyperbolic_eps
    worst = -math.inf
    worst_pair = None
    for x, y in pairs:
        d0 = dist(sys, x, y)
        lhs = max(dist(sys, sys.apply(x), sys.apply(y)), dist(sys, sys.invert(x), sys.invert(y)))
        rhs = min(k * d0, eps)
        if rhs - lhs > worst:
            worst = rhs - lhs
            worst_pair = (x, y, d0, lhs, rhs)
    if worst_pair is None:
        worst = -math.inf  # vacuous truth on an empty sample
    return VerdictReport(
        theorem="hyperbolic_metric_inequality",
        lhs=worst,
        rhs=0.0,
        lhs_formula="max over pairs of min(k*d(x,y), eps) - max(d(fx,fy), d(f^-1x,f^-1y))",
        rhs_formula="0",
        tolerance=tolerance,
        passed=worst <= tolerance,
        inputs={
            "system": sys.describe(),
            "pairs": len(pairs),
            "k": k,
            "eps": eps,
        },
        details={"worst_margin": -worst if math.isfinite(worst) else None},
    )
