"""Collocation solver for scalar and 2x2 Riemann-Hilbert problems on unions of
circles and intervals.

Unknowns are Laurent coefficients on circles and Chebyshev-kernel coefficients
on bands; jump conditions are enforced at equispaced circle points and mapped
first-kind roots.  The full matrix problem decouples row-wise, so one LU
factorization serves both rows.  Every solve reports an off-collocation
residual and a condition estimate; basis-mismatch failures are visible there.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lapack as _lapack
from scipy.linalg import lu_factor, lu_solve

from .auxiliary import AuxData, HSystem, eval_h
from .cauchy import Side, cauchy_cheb_table
from .chebyshev import ChebKind, Interval, cheb_t_nodes
from .errors import GeometryError, ResidualWarning, SolverError, WeightError
from .green import GreenData, eval_g
from .weights import WeightSpec

_I2PI = 1j / (2.0 * np.pi)


@dataclass(frozen=True)
class Circle:
    """A deformation circle with its collocation resolution.

    pos_modes caps the nonnegative Laurent exponents.  The solved density's
    positive modes decay at the rate set by the exterior clearance while its
    negative modes decay at the (slower) rate set by the enclosed band, so a
    lopsided consecutive range spends the unknowns where the density lives.
    """

    center: float
    radius: float
    n_points: int
    pos_modes: int | None = None

    @property
    def exponents(self) -> np.ndarray:
        c = self.n_points
        if self.pos_modes is None:
            return np.arange(-(c // 2), c - c // 2)
        p = min(self.pos_modes, c // 2)
        return np.arange(-(c - 1 - p), p + 1)

    def nodes(self) -> np.ndarray:
        k = np.arange(self.n_points)
        return self.center + self.radius * np.exp(2j * np.pi * k / self.n_points)

    def test_nodes(self) -> np.ndarray:
        k = np.arange(self.n_points) + 0.5
        return self.center + self.radius * np.exp(2j * np.pi * k / self.n_points)


@dataclass(frozen=True)
class BandPiece:
    """A band with its collocation resolution."""

    interval: Interval
    n_points: int

    def nodes(self) -> np.ndarray:
        return np.asarray(cheb_t_nodes(self.n_points, self.interval))

    def test_nodes(self) -> np.ndarray:
        i = np.arange(self.n_points) + 1.0
        t = np.cos(i * np.pi / (self.n_points + 1.0))
        return np.asarray(self.interval.from_unit(t))


@dataclass(frozen=True)
class ContourSet:
    circles: tuple
    bands: tuple

    @property
    def pieces(self) -> tuple:
        return self.circles + self.bands


def build_contours(spec: WeightSpec, ppi: int, circle_ratio: int = 10, *,
                   margin: float = 0.0, radii=None) -> ContourSet:
    """Per-band circles plus the bands themselves as collocation pieces.

    Circle j is centered at the band midpoint with radius at least 5/8 of the
    band length (below that the deformed jumps misbehave), capped by half the
    distance to neighboring centers and by the clearance to other bands.
    """
    if ppi < 2:
        raise GeometryError("need at least 2 collocation points per interval")
    bands = spec.bands
    centers = np.array([b.mid for b in bands])
    base = np.array([0.625 * b.length for b in bands])

    radii_out = np.empty(len(bands))
    for j, band in enumerate(bands):
        cand = radii[j] if radii is not None else base[j] * (1.0 + margin)
        cap = np.inf
        for k, other in enumerate(bands):
            if k == j:
                continue
            # Share the center distance in proportion to the two circles'
            # minimum radii so unequal bands are not penalized equally.
            d = abs(centers[k] - centers[j])
            cap = min(cap, d * base[j] / (base[j] + base[k]))
            cap = min(cap, min(abs(centers[j] - other.a), abs(centers[j] - other.b)))
        r = min(cand, cap)
        if r < base[j]:
            raise GeometryError(
                f"cannot fit a radius >= {base[j]:g} circle around band {j} "
                f"[{band.a:g}, {band.b:g}]; clearance allows only {cap:g}")
        radii_out[j] = r

    # Strict pairwise disjointness and band clearance.
    for j in range(len(bands)):
        for k in range(j + 1, len(bands)):
            gap = abs(centers[k] - centers[j]) - radii_out[j] - radii_out[k]
            if gap <= 0.0:
                raise GeometryError(f"circles around bands {j} and {k} are not disjoint")
        for k, other in enumerate(bands):
            if k != j and radii_out[j] >= min(abs(centers[j] - other.a), abs(centers[j] - other.b)):
                raise GeometryError(f"circle around band {j} touches band {k}")

    for j, band in enumerate(bands):
        _validate_h_on_disk(spec, j, centers[j], radii_out[j])

    circles = []
    for j in range(len(bands)):
        # Positive-mode budget from the nearest singularity of the continued
        # jump data outside the circle (other bands and zeros of h, where 1/w
        # blows up): coefficients decay like (r/dist)^k, so ~37/log(dist/r)
        # modes reach double precision.
        dist = np.inf
        for k, other in enumerate(bands):
            if k != j:
                dist = min(dist, max(other.a - centers[j], centers[j] - other.b))
        for zero in np.atleast_1d(spec.h[j].zero_locations()):
            dist = min(dist, abs(zero - centers[j]))
        npts = int(circle_ratio * ppi)
        if np.isfinite(dist) and dist > radii_out[j]:
            pos = int(np.ceil(37.0 / np.log(dist / radii_out[j])))
            pos = max(12, min(pos, npts // 2))
        else:
            pos = 12 if np.isinf(dist) else npts // 2
        circles.append(Circle(float(centers[j]), float(radii_out[j]), npts, pos))
    band_pieces = tuple(BandPiece(band, int(ppi)) for band in bands)
    return ContourSet(circles=tuple(circles), bands=band_pieces)


def _validate_h_on_disk(spec: WeightSpec, j: int, center: float, radius: float) -> None:
    angles = np.exp(2j * np.pi * np.arange(64) / 64)
    pts = [np.array([center + 0j])]
    for frac in (0.35, 0.7, 0.9, 1.0):
        pts.append(center + frac * radius * angles)
    zs = np.concatenate(pts)
    vals = np.asarray(spec.h[j](zs), dtype=complex)
    if np.any(~np.isfinite(vals)):
        raise WeightError(f"h on band {j} is not finite on its deformation disk")
    scale = np.max(np.abs(vals))
    if scale == 0.0 or np.min(np.abs(vals)) < 1e-13 * scale:
        raise WeightError(f"h on band {j} vanishes inside its deformation disk")


class JumpAssembly:
    """Jump matrices of the deformed problem, closed over (spec, green, aux, n).

    On the circles only the (2,1) entry differs from the identity: minus (upper
    half) or plus (lower half) of exp(2 h_n - 2n g)/w_j.  The two real-axis
    crossing points take the upper limit; the glued function is continuous
    there because the wrapped gap phases agree with n times the gap jumps
    modulo 2 pi i.  On the bands the jump is the constant-twisted off-diagonal
    involution.
    """

    def __init__(self, spec: WeightSpec, green: GreenData, hsys: HSystem, aux: AuxData):
        self.spec = spec
        self.green = green
        self.hsys = hsys
        self.aux = aux
        self.n = aux.n

    def circle_jump(self, j: int, z) -> np.ndarray:
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        v = np.empty(z.shape, dtype=complex)
        upper = z.imag > 0.0
        lower = z.imag < 0.0
        axis = ~(upper | lower)
        for mask, side, sgn in ((upper, Side.OFF, -1.0), (lower, Side.OFF, 1.0),
                                (axis, Side.PLUS, -1.0)):
            if not np.any(mask):
                continue
            zs = z[mask] if side is Side.OFF else z[mask].real
            expo = 2.0 * eval_h(self.spec, self.hsys, self.aux, zs, side) \
                - 2.0 * self.n * eval_g(self.green, zs, side)
            wv = self.spec.weight_value(j, zs, side)
            v[mask] = sgn * np.exp(expo) / wv
        out = np.zeros(z.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = 1.0
        out[..., 1, 1] = 1.0
        out[..., 1, 0] = v
        return out

    def band_jump(self, j: int, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        w = self.spec.weight_value(j, x, Side.PLUS)
        a_j = self.aux.A[j]
        out = np.zeros(x.shape + (2, 2), dtype=complex)
        out[..., 0, 1] = w * np.exp(-a_j)
        out[..., 1, 0] = -np.exp(a_j) / w
        return out

    def max_circle_deviation(self, contours: ContourSet) -> float:
        """Largest |F - I| entry over all circle nodes; a precision proxy."""
        dev = 0.0
        for j, circ in enumerate(contours.circles):
            F = self.circle_jump(j, circ.nodes())
            dev = max(dev, float(np.max(np.abs(F[..., 1, 0]))))
        return dev


@dataclass
class ResidualReport:
    """Off-collocation jump defect and an LU-based condition estimate."""

    off_collocation: float
    rcond: float


@dataclass
class RHSolution:
    """Solved coefficients of the 2x2 unknown, piece by piece."""

    contours: ContourSet
    bases: tuple                  # per band: (column-1 kind, column-2 kind)
    circle_coeffs: list           # per circle: array (2, 2, n_points), [row, col, k]
    band_coeffs: list             # per band: array (2, 2, n_points)
    residual: ResidualReport

    def eval(self, z) -> np.ndarray:
        """I + the Cauchy transform of the solved densities, off all contours."""
        scalar = np.ndim(z) == 0
        zz = np.atleast_1d(np.asarray(z, dtype=complex))
        out = np.zeros(zz.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = 1.0
        out[..., 1, 1] = 1.0
        for circ, coeff in zip(self.contours.circles, self.circle_coeffs):
            K = _circle_table(circ, zz, None)
            for r in range(2):
                for m in range(2):
                    out[..., r, m] += K @ coeff[r, m]
        for bp, kinds, coeff in zip(self.contours.bands, self.bases, self.band_coeffs):
            for m, kind in enumerate(kinds):
                K = cauchy_cheb_table(kind, bp.n_points, bp.interval, zz, Side.OFF)
                for r in range(2):
                    out[..., r, m] += K @ coeff[r, m]
        return out[0] if scalar else out


def _circle_table(circ: Circle, z, side: Side | None) -> np.ndarray:
    """Laurent basis table at points z.

    side None: interior rows carry the nonnegative powers, exterior rows the
    negated negative powers.  side PLUS/MINUS: the one-sided boundary limits on
    the circle itself.
    """
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    w = (z - circ.center) / circ.radius
    exps = circ.exponents
    neg = exps < 0
    # Negative powers via 1/w so the unused overflowing half underflows to zero
    # instead of tripping complex inf/inf division.
    W = np.empty((len(w), len(exps)), dtype=complex)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        W[:, ~neg] = w[:, None] ** exps[None, ~neg]
        W[:, neg] = (1.0 / w)[:, None] ** (-exps[None, neg])
    if side is Side.PLUS:
        W[:, neg] = 0.0
        return W
    if side is Side.MINUS:
        W[:, ~neg] = 0.0
        return -W
    inside = np.abs(w) < 1.0
    W[np.ix_(inside, neg)] = 0.0
    W[np.ix_(~inside, ~neg)] = 0.0
    W[np.ix_(~inside, neg)] *= -1.0
    return W


def _band_tables(bp: BandPiece, kinds, z, side: Side | None):
    """Kernel tables for each requested kind at z (side None means off-contour)."""
    out = {}
    for kind in set(kinds):
        if side is None:
            out[kind] = cauchy_cheb_table(kind, bp.n_points, bp.interval, z, Side.OFF)
        else:
            out[kind] = cauchy_cheb_table(kind, bp.n_points, bp.interval, z, side)
    return out


def default_bases(spec: WeightSpec) -> tuple:
    """Column bases matching the endpoint conditions: the first column takes the
    kind with negated exponents, the second the band's own kind."""
    return tuple((kind.flipped, kind) for kind in spec.kinds)


def solve_matrix_rhp(spec: WeightSpec, contours: ContourSet, jumps: JumpAssembly,
                     bases=None, *, warn_tol: float = 1e-6) -> RHSolution:
    """Assemble and solve the block collocation system for both rows at once."""
    if bases is None:
        bases = default_bases(spec)
    circles, bands = contours.circles, contours.bands
    pieces = list(circles) + list(bands)
    ncirc = len(circles)
    counts = [p.n_points for p in pieces]
    offsets = np.concatenate([[0], np.cumsum(counts)])
    T = int(offsets[-1])

    nodes = [p.nodes() for p in pieces]
    F = [jumps.circle_jump(j, nodes[j]) for j in range(ncirc)]
    F += [jumps.band_jump(j, nodes[ncirc + j]) for j in range(len(bands))]

    A = np.zeros((2 * T, 2 * T), dtype=complex)
    rhs = np.zeros((2 * T, 2), dtype=complex)
    eye = np.eye(2)

    for p in range(len(pieces)):
        zp = nodes[p]
        for q in range(len(pieces)):
            own = p == q
            if q < ncirc:
                Kp = _circle_table(circles[q], zp, Side.PLUS if own else None)
                Km = _circle_table(circles[q], zp, Side.MINUS if own else None)
                tabs_p = {None: Kp}
                tabs_m = {None: Km}
                kinds_q = (None, None)
            else:
                bq = bands[q - ncirc]
                kinds_q = bases[q - ncirc]
                if own:
                    tabs_p = _band_tables(bq, kinds_q, zp, Side.PLUS)
                    tabs_m = _band_tables(bq, kinds_q, zp, Side.MINUS)
                else:
                    tabs = _band_tables(bq, kinds_q, zp, None)
                    tabs_p = tabs_m = tabs
            for m in range(2):
                row = slice(m * T + offsets[p], m * T + offsets[p] + counts[p])
                for m2 in range(2):
                    col = slice(m2 * T + offsets[q], m2 * T + offsets[q] + counts[q])
                    block = -F[p][:, m2, m][:, None] * tabs_m[kinds_q[m2]]
                    if m2 == m:
                        block = block + tabs_p[kinds_q[m2]]
                    A[row, col] = block
        for m in range(2):
            row = slice(m * T + offsets[p], m * T + offsets[p] + counts[p])
            for r in range(2):
                rhs[row, r] = F[p][:, r, m] - eye[r, m]

    try:
        lu, piv = lu_factor(A, check_finite=False)
    except Exception as exc:
        raise SolverError(f"collocation system factorization failed: {exc}") from exc
    if np.any(np.abs(np.diagonal(lu)) == 0.0):
        raise SolverError("collocation system is numerically singular")
    X = lu_solve((lu, piv), rhs, check_finite=False)

    anorm = np.linalg.norm(A, 1)
    rcond, _ = _lapack.zgecon(lu, anorm)

    circle_coeffs = []
    for q in range(ncirc):
        cc = np.empty((2, 2, counts[q]), dtype=complex)
        for r in range(2):
            for m in range(2):
                cc[r, m] = X[m * T + offsets[q]: m * T + offsets[q] + counts[q], r]
        circle_coeffs.append(cc)
    band_coeffs = []
    for qb in range(len(bands)):
        q = ncirc + qb
        dd = np.empty((2, 2, counts[q]), dtype=complex)
        for r in range(2):
            for m in range(2):
                dd[r, m] = X[m * T + offsets[q]: m * T + offsets[q] + counts[q], r]
        band_coeffs.append(dd)

    sol = RHSolution(contours=contours, bases=tuple(bases), circle_coeffs=circle_coeffs,
                     band_coeffs=band_coeffs, residual=ResidualReport(np.nan, float(rcond)))
    sol.residual.off_collocation = _off_collocation_residual(sol, jumps)
    if sol.residual.off_collocation > warn_tol:
        warnings.warn(
            f"off-collocation jump residual {sol.residual.off_collocation:.2e} exceeds "
            f"{warn_tol:.1e} (n={jumps.n}); increase resolution or check the basis",
            ResidualWarning, stacklevel=2)
    return sol


def _off_collocation_residual(sol: RHSolution, jumps: JumpAssembly) -> float:
    """Max jump defect at points interleaved with the collocation nodes."""
    contours = sol.contours
    circles, bands = contours.circles, contours.bands
    ncirc = len(circles)
    pieces = list(circles) + list(bands)
    worst = 0.0
    for p, piece in enumerate(pieces):
        zt = piece.test_nodes()
        npts = len(zt)
        if p < ncirc:
            Ft = jumps.circle_jump(p, zt)
        else:
            Ft = jumps.band_jump(p - ncirc, zt)
        phi_p = np.zeros((npts, 2, 2), dtype=complex)
        phi_m = np.zeros((npts, 2, 2), dtype=complex)
        phi_p[:, 0, 0] = phi_p[:, 1, 1] = 1.0
        phi_m[:, 0, 0] = phi_m[:, 1, 1] = 1.0
        for q in range(len(pieces)):
            own = p == q
            if q < ncirc:
                Kp = _circle_table(circles[q], zt, Side.PLUS if own else None)
                Km = _circle_table(circles[q], zt, Side.MINUS if own else None)
                coeff = sol.circle_coeffs[q]
                for r in range(2):
                    for m in range(2):
                        phi_p[:, r, m] += Kp @ coeff[r, m]
                        phi_m[:, r, m] += Km @ coeff[r, m]
            else:
                bq = bands[q - ncirc]
                kinds_q = sol.bases[q - ncirc]
                coeff = sol.band_coeffs[q - ncirc]
                if own:
                    tp = _band_tables(bq, kinds_q, zt, Side.PLUS)
                    tm = _band_tables(bq, kinds_q, zt, Side.MINUS)
                else:
                    tp = tm = _band_tables(bq, kinds_q, zt, None)
                for r in range(2):
                    for m in range(2):
                        phi_p[:, r, m] += tp[kinds_q[m]] @ coeff[r, m]
                        phi_m[:, r, m] += tm[kinds_q[m]] @ coeff[r, m]
        defect = phi_p - np.einsum("pij,pjk->pik", phi_m, Ft)
        worst = max(worst, float(np.max(np.abs(defect))))
    return worst


def first_order(sol: RHSolution) -> np.ndarray:
    """The 1/z coefficient of the solved unknown at infinity.

    Exterior Laurent expansions contribute minus radius times the coefficient
    of the -1 power; band expansions contribute i/(2 pi) times the degree-0
    coefficient (only the degree-0 kernel carries a 1/z term).
    """
    out = np.zeros((2, 2), dtype=complex)
    for circ, coeff in zip(sol.contours.circles, sol.circle_coeffs):
        idx = int(np.nonzero(circ.exponents == -1)[0][0])
        out -= circ.radius * coeff[:, :, idx]
    for coeff in sol.band_coeffs:
        out += _I2PI * coeff[:, :, 0]
    return out


# ---------------------------------------------------------------------------
# Scalar model problems (unit circle / unit interval)


@dataclass
class ScalarCircleSolution:
    coeffs: np.ndarray
    exponents: np.ndarray
    residual: float

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        scalar = z.ndim == 0
        zz = np.atleast_1d(z)
        neg = self.exponents < 0
        W = np.empty((len(zz), len(self.exponents)), dtype=complex)
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            W[:, ~neg] = zz[:, None] ** self.exponents[None, ~neg]
            W[:, neg] = (1.0 / zz)[:, None] ** (-self.exponents[None, neg])
        inside = np.abs(zz) < 1.0
        W[np.ix_(inside, neg)] = 0.0
        W[np.ix_(~inside, ~neg)] = 0.0
        W[np.ix_(~inside, neg)] *= -1.0
        out = 1.0 + W @ self.coeffs
        return complex(out[0]) if scalar else out


def solve_scalar_circle(f, N: int) -> ScalarCircleSolution:
    """Solve Phi+ = Phi- f on the unit circle with Phi(inf) = 1."""
    npts = 2 * N + 1
    z = np.exp(2j * np.pi * np.arange(npts) / npts)
    fv = np.asarray(f(z), dtype=complex)
    exps = np.arange(-N, N + 1)
    W = z[:, None] ** exps[None, :]
    A = W.copy()
    A[:, exps < 0] *= fv[:, None]
    try:
        c = np.linalg.solve(A, fv - 1.0)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"scalar circle system is singular: {exc}") from exc
    zt = np.exp(2j * np.pi * (np.arange(4 * npts) + 0.5) / (4 * npts))
    ft = np.asarray(f(zt), dtype=complex)
    Wt = zt[:, None] ** exps[None, :]
    plus = 1.0 + Wt[:, exps >= 0] @ c[exps >= 0]
    minus = 1.0 - Wt[:, exps < 0] @ c[exps < 0]
    res = float(np.max(np.abs(plus - ft * minus)))
    return ScalarCircleSolution(coeffs=c, exponents=exps, residual=res)


@dataclass
class ScalarIntervalSolution:
    kind: ChebKind
    coeffs: np.ndarray
    residual: float

    def __call__(self, z, side: Side = Side.OFF):
        z = np.asarray(z, dtype=complex if side is Side.OFF else float)
        scalar = z.ndim == 0
        zz = np.atleast_1d(z)
        K = cauchy_cheb_table(self.kind, len(self.coeffs), Interval(-1.0, 1.0), zz, side)
        out = 1.0 + K @ self.coeffs
        return complex(out[0]) if scalar else out


def solve_scalar_interval(f, basis: ChebKind, N: int, *,
                          warn_tol: float = 1e-8) -> ScalarIntervalSolution:
    """Solve Phi+ = Phi- f on [-1, 1] with Phi(inf) = 1 in the given kernel basis.

    A basis whose endpoint behavior mismatches the jump will not converge; the
    off-collocation residual exposes this and triggers a warning.
    """
    npts = 2 * N + 1
    x = np.asarray(cheb_t_nodes(npts))
    fv = np.asarray(f(x), dtype=complex)
    unit = Interval(-1.0, 1.0)
    Kp = cauchy_cheb_table(basis, npts, unit, x, Side.PLUS)
    Km = cauchy_cheb_table(basis, npts, unit, x, Side.MINUS)
    A = Kp - fv[:, None] * Km
    try:
        d = np.linalg.solve(A, fv - 1.0)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"scalar interval system is singular: {exc}") from exc
    i = np.arange(npts) + 1.0
    xt = np.cos(i * np.pi / (npts + 1.0))
    ft = np.asarray(f(xt), dtype=complex)
    Ktp = cauchy_cheb_table(basis, npts, unit, xt, Side.PLUS)
    Ktm = cauchy_cheb_table(basis, npts, unit, xt, Side.MINUS)
    res = float(np.max(np.abs((1.0 + Ktp @ d) - ft * (1.0 + Ktm @ d))))
    if res > warn_tol:
        warnings.warn(
            f"scalar interval solve residual {res:.2e} exceeds {warn_tol:.1e}; "
            f"the {basis.value}-kind basis may mismatch the jump's endpoint behavior",
            ResidualWarning, stacklevel=2)
    return ScalarIntervalSolution(kind=basis, coeffs=d, residual=res)
