"""End-to-end computations: recurrence coefficients, weighted Cauchy transforms,
Toda-lattice evolution, and series approximation of 1/x on disconnected domains.

One Riemann-Hilbert solve per index n, reused between consecutive coefficient
pairs; the Green's function, moment system, and contours are built once per
weight geometry and shared across n (and across Toda times, whose exponential
factor changes only the jump data).
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .auxiliary import AuxData, HSystem, build_hsystem, eval_h, solve_aux
from .cauchy import Side
from .chebyshev import Interval
from .errors import ConvergenceError, DomainError, PrecisionWarning, SolverError, ImagPartWarning
from .green import GreenData, build_green, eval_g
from .oracle import adaptive_gauss_mass
from .rhp import ContourSet, JumpAssembly, RHSolution, build_contours, first_order, solve_matrix_rhp
from .weights import WeightSpec

IMAG_DROP = 1e-9
IMAG_ERROR = 1e-6

# Largest |F - I| on circles before double precision degrades visibly.
JUMP_MAGNITUDE_HORIZON = 1e7


@dataclass(frozen=True)
class Resolution:
    """Collocation resolution: points per interval and the circle multiplier."""

    ppi: int = 16
    circle_ratio: int = 10
    margin: float = 0.0


@dataclass
class JacobiSegment:
    """Computed (a_n, b_n) for n in [n0, n1], with run metadata."""

    n0: int
    n1: int
    a: np.ndarray
    b: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=float)
        self.b = np.asarray(self.b, dtype=float)

    @property
    def ns(self) -> np.ndarray:
        return np.arange(self.n0, self.n1 + 1)


@dataclass
class TodaTrajectory:
    times: np.ndarray
    segments: list
    warnings_: list = field(default_factory=list)


class SolveContext:
    """Shared per-geometry state with caching of per-n auxiliary data and solves.

    jump_spec lets the jump data carry a different (e.g. exponentially scaled)
    weight than the geometry spec; the Green's function and moment system
    depend only on the bands, so they are reused.
    """

    def __init__(self, spec: WeightSpec, resolution: Resolution = Resolution(),
                 green: GreenData | None = None, hsys: HSystem | None = None,
                 contours: ContourSet | None = None, jump_spec: WeightSpec | None = None):
        self.spec = spec
        self.resolution = resolution
        self.green = green if green is not None else build_green(spec)
        self.hsys = hsys if hsys is not None else build_hsystem(spec, self.green)
        self.contours = contours if contours is not None else build_contours(
            spec, resolution.ppi, resolution.circle_ratio, margin=resolution.margin)
        self.jump_spec = jump_spec if jump_spec is not None else spec
        self._aux: dict = {}
        self._solutions: dict = {}

    def aux(self, n: int) -> AuxData:
        if n not in self._aux:
            self._aux[n] = solve_aux(self.hsys, self.green, n)
        return self._aux[n]

    def solution(self, n: int) -> RHSolution:
        if n not in self._solutions:
            jumps = JumpAssembly(self.jump_spec, self.green, self.hsys, self.aux(n))
            self._solutions[n] = solve_matrix_rhp(self.jump_spec, self.contours, jumps)
        return self._solutions[n]

    def with_jump_spec(self, jump_spec: WeightSpec) -> "SolveContext":
        return SolveContext(self.spec, self.resolution, green=self.green,
                            hsys=self.hsys, contours=self.contours, jump_spec=jump_spec)

    def max_circle_deviation(self, n: int) -> float:
        jumps = JumpAssembly(self.jump_spec, self.green, self.hsys, self.aux(n))
        return jumps.max_circle_deviation(self.contours)


def _realify(value: complex, what: str, n: int) -> float:
    im, re = abs(value.imag), value.real
    if im >= IMAG_ERROR:
        raise SolverError(f"{what} at n={n} has imaginary part {im:.2e}; solve is under-resolved")
    if im >= IMAG_DROP:
        warnings.warn(f"{what} at n={n} carries imaginary part {im:.2e}",
                      ImagPartWarning, stacklevel=3)
    return float(re)


def _pair_from_orders(ctx: SolveContext, n: int, S1_n: np.ndarray, S1_n1: np.ndarray):
    h1_n = ctx.aux(n).h1
    h1_n1 = ctx.aux(n + 1).h1
    a_c = S1_n[0, 0] - S1_n1[0, 0] - h1_n + h1_n1 - ctx.green.g1
    prod = S1_n1[0, 1] * S1_n1[1, 0]
    if prod.real <= 0.0:
        raise SolverError(
            f"b_{n} radicand {prod:.3e} is not positive; increase the resolution")
    b_c = np.sqrt(prod)
    return _realify(a_c, "a", n), _realify(b_c, "b", n)


def recurrence_pair(spec: WeightSpec, green: GreenData, hsys: HSystem, n: int,
                    resolution: Resolution = Resolution(), *,
                    context: SolveContext | None = None):
    """The pair (a_n, b_n): two adjacent solves and first-order extraction."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    ctx = context if context is not None else SolveContext(
        spec, resolution, green=green, hsys=hsys)
    S1_n = first_order(ctx.solution(n))
    S1_n1 = first_order(ctx.solution(n + 1))
    return _pair_from_orders(ctx, n, S1_n, S1_n1)


def recurrence_range(spec: WeightSpec, n0: int, n1: int,
                     resolution: Resolution = Resolution(), *,
                     context: SolveContext | None = None) -> JacobiSegment:
    """Pairs (a_n, b_n) for n0 <= n <= n1; one solve per index, shared between
    neighbors.  Per-index failures are recorded and the computation continues."""
    if not (0 <= n0 <= n1):
        raise DomainError(f"need 0 <= n0 <= n1, got ({n0}, {n1})")
    ctx = context if context is not None else SolveContext(spec, resolution)
    t_start = time.perf_counter()
    count = n1 - n0 + 1
    a = np.full(count, np.nan)
    b = np.full(count, np.nan)
    residuals = np.full(count, np.nan)
    failures = []
    orders: dict = {}

    def order_of(n):
        if n not in orders:
            orders[n] = first_order(ctx.solution(n))
        return orders[n]

    for i, n in enumerate(range(n0, n1 + 1)):
        try:
            a[i], b[i] = _pair_from_orders(ctx, n, order_of(n), order_of(n + 1))
            residuals[i] = max(ctx.solution(n).residual.off_collocation,
                               ctx.solution(n + 1).residual.off_collocation)
        except Exception as exc:  # noqa: BLE001 - per-n fault isolation
            failures.append((n, str(exc)))
    meta = {
        "method": "rh",
        "ppi": ctx.resolution.ppi,
        "circle_ratio": ctx.resolution.circle_ratio,
        "wall_time": time.perf_counter() - t_start,
        "residuals": residuals,
        "max_residual": float(np.nanmax(residuals)) if np.any(np.isfinite(residuals)) else np.nan,
        "failures": failures,
    }
    return JacobiSegment(n0=n0, n1=n1, a=a, b=b, meta=meta)


def cauchy_pn(spec: WeightSpec, green: GreenData, hsys: HSystem, n: int, z,
              resolution: Resolution = Resolution(), *,
              context: SolveContext | None = None,
              jacobi: JacobiSegment | None = None) -> complex:
    """Cauchy transform at z of (nth orthonormal polynomial) x (weight).

    The polynomials are orthonormal for the unit-mass normalization of the
    weight with p_0 = 1; the transform integrates against the raw weight.  The
    n-fold product of 1/(b_j c) is accumulated in log space.
    """
    ctx = context if context is not None else SolveContext(
        spec, resolution, green=green, hsys=hsys)
    zc = complex(z)
    for band in spec.bands:
        if abs(zc.imag) < 1e-8 and band.a - 1e-8 <= zc.real <= band.b + 1e-8:
            warnings.warn(f"evaluation point {zc} is within 1e-8 of the support",
                          PrecisionWarning, stacklevel=2)
    if jacobi is not None and n > 0:
        if jacobi.n0 > 0 or jacobi.n1 < n - 1:
            raise DomainError("provided Jacobi segment does not cover 0..n-1")
        bs = jacobi.b[: n]
    elif n > 0:
        seg = recurrence_range(spec, 0, n - 1, resolution, context=ctx)
        if seg.meta["failures"]:
            raise SolverError(f"coefficient computation failed: {seg.meta['failures']}")
        bs = seg.b
    else:
        bs = np.empty(0)
    side = Side.PLUS if abs(zc.imag) == 0.0 else Side.OFF
    zeval = zc.real if side is Side.PLUS else zc
    expo = (eval_h(spec, hsys, ctx.aux(n), zeval, side)
            - n * eval_g(green, zeval, side)
            - np.sum(np.log(bs.astype(complex) * green.cap_const)))
    s12 = ctx.solution(n).eval(zc)[0, 1]
    return complex(s12 * np.exp(expo))


def toda_evolve(spec0: WeightSpec, k: int, times,
                resolution: Resolution = Resolution(), *,
                horizon: float = JUMP_MAGNITUDE_HORIZON) -> TodaTrajectory:
    """First k coefficient pairs of the weight scaled by exp(t x), per time.

    The Green's function, moment system, and contours depend only on the bands
    and are computed once; only the jump data and solves are per-time.
    """
    if k < 1:
        raise DomainError("need at least one coefficient pair")
    times = np.asarray(times, dtype=float)
    if not np.all(np.isfinite(times)):
        raise DomainError("times must be finite")
    base = SolveContext(spec0, resolution)
    segments = []
    warns = []
    for t in times:
        ctx = base.with_jump_spec(spec0.with_exp_factor(float(t)))
        dev = ctx.max_circle_deviation(0)
        if dev > horizon:
            warns.append((float(t), dev))
            warnings.warn(
                f"circle jump magnitude {dev:.2e} at t={t:g} exceeds {horizon:.1e}; "
                f"results beyond this horizon lose precision", PrecisionWarning, stacklevel=2)
        segments.append(recurrence_range(spec0, 0, k - 1, resolution, context=ctx))
    return TodaTrajectory(times=times, segments=segments, warnings_=warns)


@dataclass
class RecipApproximation:
    """Expansion data for approximating 1/x on the weight's support."""

    coeffs: np.ndarray          # series coefficients against p_0, p_1, ...
    max_errors: np.ndarray      # max-grid error of the N-term partial sum, N = 1..len
    rate: float                 # reference per-term decay exp(-Re g(0))
    grid: np.ndarray
    eta: float                  # total mass of the raw weight
    g0: complex                 # Green's function at 0


def orthonormal_eval(segment: JacobiSegment, count: int, x) -> np.ndarray:
    """Values of p_0..p_{count-1} at x via the forward three-term recurrence."""
    if segment.n0 != 0 or count - 2 > segment.n1:
        raise DomainError("segment must cover indices 0..count-2")
    x = np.asarray(x, dtype=float)
    out = np.empty((count, ) + x.shape)
    out[0] = 1.0
    if count > 1:
        out[1] = (x - segment.a[0]) / segment.b[0]
    for k in range(1, count - 1):
        out[k + 1] = ((x - segment.a[k]) * out[k] - segment.b[k - 1] * out[k - 1]) / segment.b[k]
    return out


def recip_approx(spec: WeightSpec, n_terms: int, grid=None,
                 resolution: Resolution = Resolution(), *,
                 context: SolveContext | None = None) -> RecipApproximation:
    """Coefficients and partial-sum errors of the expansion of 1/x on the support."""
    if n_terms < 1:
        raise DomainError("need at least one term")
    for band in spec.bands:
        if band.a <= 0.0 <= band.b:
            raise DomainError("0 lies inside the support; the expansion is undefined")
    ctx = context if context is not None else SolveContext(spec, resolution)
    for circ in ctx.contours.circles:
        if abs(circ.center) <= circ.radius:
            raise DomainError("0 lies inside a deformation disk; enlarge clearances")

    if grid is None:
        grid = np.concatenate([np.arange(b.a, b.b + 1e-12, 0.01) for b in spec.bands])
    grid = np.asarray(grid, dtype=float)

    segment = recurrence_range(spec, 0, max(n_terms - 1, 0), resolution, context=ctx)
    if segment.meta["failures"]:
        raise SolverError(f"coefficient computation failed: {segment.meta['failures']}")
    eta = sum(adaptive_gauss_mass(spec, j) for j in range(len(spec.bands)))
    g0 = eval_g(ctx.green, 0.0, Side.PLUS)

    coeffs = np.empty(n_terms)
    log_prefactor = 0.0 + 0.0j
    for j in range(n_terms):
        if j > 0:
            log_prefactor = log_prefactor - np.log(segment.b[j - 1] * ctx.green.cap_const)
        h_j = eval_h(spec, ctx.hsys, ctx.aux(j), 0.0, Side.PLUS)
        s12 = ctx.solution(j).eval(0.0 + 0.0j)[0, 1]
        cj = s12 * np.exp(log_prefactor + h_j - j * g0)
        kappa = 2j * np.pi * cj / eta
        coeffs[j] = _realify(complex(kappa), "recip coefficient", j)

    pvals = orthonormal_eval(segment, n_terms, grid)
    target = 1.0 / grid
    partial = np.zeros_like(grid)
    max_errors = np.empty(n_terms)
    for j in range(n_terms):
        partial = partial + coeffs[j] * pvals[j]
        max_errors[j] = np.max(np.abs(partial - target))
    return RecipApproximation(coeffs=coeffs, max_errors=max_errors,
                              rate=float(np.exp(-g0.real)), grid=grid,
                              eta=float(eta), g0=complex(g0))
