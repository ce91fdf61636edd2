"""Closed-form Cauchy transforms of the four Chebyshev families.

Branch policy: every multivalued expression is assembled from principal-branch
square roots of *linear* factors, never the square root of a product, so the
cut sits exactly on the interval.  Boundary values on the cut are explicit
one-sided formulas, never eps-offsets.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .chebyshev import ChebKind, Interval, UNIT
from .errors import DomainError, EndpointError

_I2PI = 1j / (2.0 * np.pi)
SQRT2 = math.sqrt(2.0)


class Side(enum.Enum):
    """Boundary-value selector: limits from above/below the cut, or off it."""

    PLUS = "+"
    MINUS = "-"
    OFF = "off"


def sqrt_cut(z, interval: Interval = UNIT, side: Side = Side.OFF):
    """sqrt(z - a) * sqrt(z - b) with its cut exactly on [a, b] and ~ z at infinity.

    On the cut, the PLUS (upper) limit is +i sqrt(x-a) sqrt(b-x).  For real x
    outside [a, b] the function is continuous: positive right of b, negative
    left of a.  Exactly zero at the endpoints.
    """
    a, b = interval.a, interval.b
    if side is Side.OFF:
        zc = np.asarray(z, dtype=complex)
        out = np.sqrt(zc - a) * np.sqrt(zc - b)
        return out if out.shape else complex(out)
    x = np.asarray(z, dtype=float)
    inner = np.sqrt(np.maximum(x - a, 0.0)) * np.sqrt(np.maximum(b - x, 0.0))
    outer_right = np.sqrt(np.maximum(x - a, 0.0)) * np.sqrt(np.maximum(x - b, 0.0))
    outer_left = -np.sqrt(np.maximum(a - x, 0.0)) * np.sqrt(np.maximum(b - x, 0.0))
    sgn = 1.0 if side is Side.PLUS else -1.0
    out = np.where(x >= b, outer_right + 0j,
                   np.where(x <= a, outer_left + 0j, sgn * 1j * inner))
    return out if out.shape else complex(out)


def joukowsky_inv(z, side: Side = Side.OFF):
    """Right inverse of the Joukowsky map (w + 1/w)/2 into the unit disk.

    Computed as 1/(z + sqrt(z-1) sqrt(z+1)), which is exactly z - sqrt(z-1)sqrt(z+1)
    but free of cancellation for large |z| (the denominator has modulus > 1
    everywhere), and which hits the exact limit -1 at z = -1.
    """
    s = sqrt_cut(z, UNIT, side)
    zc = np.asarray(z, dtype=complex) if side is Side.OFF else np.asarray(z, dtype=float)
    out = 1.0 / (zc + s)
    return out if np.ndim(out) else complex(out)


def log_joukowsky_inv(z, side: Side = Side.OFF):
    """Branch-managed log of joukowsky_inv.

    Off the real axis the principal log applies (the image avoids the negative
    reals there).  For real z < -1 the image is negative real; the limit from
    above the axis approaches it from below, so the PLUS branch carries -i pi.
    On (-1, 1) the boundary values are pure phases -/+ i arccos(z).
    """
    if side is Side.OFF:
        out = np.log(joukowsky_inv(z, side))
        return out if np.ndim(out) else complex(out)
    x = np.asarray(z, dtype=float)
    sgn = 1.0 if side is Side.PLUS else -1.0
    theta = np.arccos(np.clip(x, -1.0, 1.0))
    inner = -sgn * 1j * theta
    with np.errstate(invalid="ignore", divide="ignore"):
        right = np.log(np.abs(joukowsky_inv(np.maximum(x, 1.0), Side.PLUS))) + 0j
        left = np.log(np.abs(joukowsky_inv(np.minimum(x, -1.0), Side.PLUS))) - sgn * 1j * np.pi
    out = np.where(x >= 1.0, right, np.where(x <= -1.0, left, inner))
    return out if out.shape else complex(out)


def _check_endpoints(kind: ChebKind, interval: Interval, z) -> None:
    zc = np.asarray(z, dtype=complex)
    if kind.alpha < 0 and np.any(zc == interval.a):
        raise EndpointError(f"{kind.value}-kind Cauchy transform is unbounded at {interval.a}")
    if kind.beta < 0 and np.any(zc == interval.b):
        raise EndpointError(f"{kind.value}-kind Cauchy transform is unbounded at {interval.b}")


def cauchy_cheb(kind: ChebKind, k: int, interval: Interval, z, side: Side = Side.OFF):
    """Cauchy transform of (degree-k polynomial) x (normalized weight) of the kind.

    The transform is (2 pi i)^{-1} integral of p_k(s) w(s) / (s - z) ds over the
    interval; closed forms in terms of the inverse Joukowsky map.
    """
    if k < 0:
        raise DomainError("degree must be nonnegative")
    table = cauchy_cheb_table(kind, k + 1, interval, z, side)
    out = table[..., k]
    return out if out.shape else complex(out)


def cauchy_cheb_table(kind: ChebKind, n: int, interval: Interval, z, side: Side = Side.OFF) -> np.ndarray:
    """Stacked transforms for degrees 0..n-1: shape z.shape + (n,).

    Shares the J-power recursion across degrees; used heavily by the collocation
    assembly.
    """
    if n < 1:
        raise DomainError("need at least one degree")
    _check_endpoints(kind, interval, z)
    scalar = np.ndim(z) == 0
    zz = np.atleast_1d(z)
    if side is Side.OFF:
        t = interval.to_unit(zz)
    else:
        # Snap exact endpoint hits to exactly +-1: the affine map's rounding is
        # amplified to sqrt(eps) by the non-Lipschitz inverse Joukowsky map.
        x = zz.real
        t = np.asarray(interval.to_unit(x))
        t = np.where(x == interval.a, -1.0, np.where(x == interval.b, 1.0, t))
    J = np.atleast_1d(joukowsky_inv(t, side))
    L = interval.length

    # powers[..., k] = J^k
    powers = np.empty(J.shape + (n,), dtype=complex)
    powers[..., 0] = 1.0
    for k in range(1, n):
        powers[..., k] = powers[..., k - 1] * J

    if kind is ChebKind.T:
        S = np.atleast_1d(sqrt_cut(zz, interval, side))
        base = _I2PI / S
        table = powers * (SQRT2 * base)[..., None]
        table[..., 0] = base
    elif kind is ChebKind.U:
        table = powers * (J * (2.0 * _I2PI) * (2.0 / L))[..., None]
    elif kind is ChebKind.V:
        S = np.atleast_1d(sqrt_cut(zz, interval, side))
        num = np.atleast_1d(zz) - interval.a
        with np.errstate(invalid="ignore"):
            ratio = num / S  # sqrt(z-a)/sqrt(z-b), side-aware
        ratio = np.where(num == 0.0, 0.0, ratio)  # bounded endpoint: exact limit
        table = powers * ((ratio - 1.0) * _I2PI * (2.0 / L))[..., None]
    else:
        S = np.atleast_1d(sqrt_cut(zz, interval, side))
        num = np.atleast_1d(zz) - interval.b
        with np.errstate(invalid="ignore"):
            ratio = num / S  # sqrt(z-b)/sqrt(z-a), side-aware
        ratio = np.where(num == 0.0, 0.0, ratio)
        table = powers * ((1.0 - ratio) * _I2PI * (2.0 / L))[..., None]
    return table[0] if scalar else table


def cauchy_first_order(kind: ChebKind, k: int, interval: Interval) -> complex:
    """Coefficient of 1/z in the large-z expansion of cauchy_cheb.

    Every kind and every interval: i/(2 pi) for degree 0, zero for higher degrees.
    """
    if k < 0:
        raise DomainError("degree must be nonnegative")
    return complex(_I2PI) if k == 0 else 0.0 + 0.0j
