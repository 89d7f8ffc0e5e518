"""Concrete representations of the skew polynomial algebra.

Two families live here:

* truncated shift representations on C^N, used for operator norm and
  spectral radius estimates;
* 2x2 upper-triangular (nest) representations in their three flavours:
  off a fixed point, pencils over a pre-periodic point, and the
  derivative representation at an interior fixed point of a disk map.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .charspace import Character
from .dynsys import FiniteDynSys
from .skewpoly import SkewPoly, SystemMismatchError, skew_mul

DEFAULT_TRUNC = 64


class NestRepError(ValueError):
    code = "NestRep"


class NotOffFixedError(NestRepError):
    code = "NotOffFixed"


class NotPreperiodicError(NestRepError):
    code = "NotPreperiodic"


class OnBoundaryError(NestRepError):
    code = "OnBoundary"


@dataclass(frozen=True)
class TruncatedRep:
    """N x N compression of the shift representation based at one point."""

    system: FiniteDynSys
    base_point: int
    trunc: int = DEFAULT_TRUNC
    convention: str = "backward"

    def __post_init__(self):
        if self.trunc < 1:
            raise ValueError("truncation size must be at least 1")
        if not 0 <= self.base_point < self.system.n:
            raise ValueError("base point out of range")
        if self.convention not in ("backward", "forward"):
            raise ValueError("convention must be 'backward' or 'forward'")

    def orbit(self) -> list:
        out = [self.base_point]
        for _ in range(self.trunc - 1):
            out.append(self.system.map[out[-1]])
        return out


def rep_matrix(rep: TruncatedRep, p: SkewPoly) -> np.ndarray:
    """Image of p under the truncated shift representation.

    Backward convention sends sum f_k U^k to sum pi(f_k) V^k with V the
    truncated backward shift; forward sends it to sum U^k pi(f_k).  Warns
    when the degree reaches the truncation size, where coefficients are
    lost entirely.
    """
    if p.system != rep.system:
        raise SystemMismatchError("polynomial lives over a different system")
    N = rep.trunc
    if p.degree >= N:
        warnings.warn(
            "polynomial degree %d >= truncation %d; edge effects dominate"
            % (p.degree, N),
            stacklevel=2,
        )
    orbit = rep.orbit()
    M = np.zeros((N, N), dtype=complex)
    for k, f in enumerate(p.coeffs):
        if k >= N:
            break
        for i in range(N - k):
            if rep.convention == "backward":
                M[i, i + k] = f[orbit[i]]
            else:
                M[i + k, i] = f[orbit[i]]
    return M


def operator_norm(M: np.ndarray) -> float:
    return float(np.linalg.norm(M, 2))


def norm_estimate(p: SkewPoly, N: int = DEFAULT_TRUNC, points=None,
                  convention: str = "backward") -> float:
    """Lower bound for the algebra norm: max over base points of ||pi(p)||."""
    if points is None:
        points = range(p.system.n)
    best = 0.0
    for x in points:
        rep = TruncatedRep(p.system, x, N, convention)
        best = max(best, operator_norm(rep_matrix(rep, p)))
    return best


def spectral_radius_estimate(u: SkewPoly, N: int = DEFAULT_TRUNC, points=None,
                             convention: str = "backward") -> float:
    """max_{n <= N} ||pi(u^n)||^{1/n}, computed at truncation N + 1."""
    if points is None:
        points = range(u.system.n)
    reps = [TruncatedRep(u.system, x, N + 1, convention) for x in points]
    best = 0.0
    power = SkewPoly.one(u.system)
    for n in range(1, N + 1):
        power = skew_mul(power, u)
        nrm = max(operator_norm(rep_matrix(r, power)) for r in reps)
        best = max(best, nrm ** (1.0 / n))
    return best


@dataclass(frozen=True)
class OffFixedRep:
    """Example over a non-fixed point: kills every degree >= 2 term."""

    system: FiniteDynSys
    x: int

    kind = "off_fixed"

    def apply(self, p: SkewPoly) -> np.ndarray:
        y = self.system.map[self.x]
        e0 = p.coeffs[0] if len(p.coeffs) > 0 else np.zeros(self.system.n)
        e1 = p.coeffs[1] if len(p.coeffs) > 1 else np.zeros(self.system.n)
        return np.array([[e0[self.x], e1[self.x]], [0.0, e0[y]]], dtype=complex)


@dataclass(frozen=True)
class PencilRep:
    """pi_z over a point x with eta(x) != x = eta(eta(x)) pre-periodic.

    Values come from the closed-form series: the (1,1) entry is E_0 at x,
    the (1,2) entry sums E_n at x weighted by z^n for n >= 1, and the
    (2,2) entry is the full series at the fixed point eta(x).
    """

    system: FiniteDynSys
    x: int
    z: complex
    radius: float = 1.0

    kind = "pencil"

    def apply(self, p: SkewPoly) -> np.ndarray:
        x = self.x
        y = self.system.map[x]
        z = complex(self.z)
        top = 0.0 + 0.0j
        bottom = 0.0 + 0.0j
        zn = 1.0 + 0.0j
        for n, c in enumerate(p.coeffs):
            if n >= 1:
                top += c[x] * zn
            bottom += c[y] * zn
            zn *= z
        e0 = p.coeffs[0][x] if p.coeffs else 0.0
        return np.array([[e0, top], [0.0, bottom]], dtype=complex)


@dataclass(frozen=True)
class FixedDerivativeRep:
    """Derivative representation at an interior fixed point of a disk map.

    Functions act as f -> [[f(x), a f'(x)], [0, f(x)]] and the shift as
    [[c z, 0], [0, z]] where c is the multiplier of the map at x.  The
    free (1,2) entry of the shift image is pinned to 0.
    """

    fixed_point: complex
    multiplier: complex
    z: complex
    a: complex

    kind = "fixed_derivative"

    def apply_function(self, f, fprime=None) -> np.ndarray:
        x = complex(self.fixed_point)
        if fprime is None:
            h = 1e-6
            d = (f(x + h) - f(x - h)) / (2 * h)
        else:
            d = fprime(x)
        return np.array([[f(x), self.a * d], [0.0, f(x)]], dtype=complex)

    def shift_matrix(self) -> np.ndarray:
        return np.array(
            [[self.multiplier * self.z, 0.0], [0.0, self.z]], dtype=complex
        )

    @property
    def theta1_shift(self) -> complex:
        return self.multiplier * self.z

    @property
    def theta2_shift(self) -> complex:
        return complex(self.z)


def build_offfixed(sys: FiniteDynSys, x: int) -> OffFixedRep:
    if sys.map[x] == x:
        raise NotOffFixedError("base point must not be fixed")
    return OffFixedRep(sys, x)


def build_pencil(sys: FiniteDynSys, x: int, z, radius: float = 1.0) -> PencilRep:
    y = sys.map[x]
    if y == x or sys.map[y] != y:
        raise NotPreperiodicError(
            "pencil base point needs eta(x) != x and eta(eta(x)) = eta(x)"
        )
    if abs(complex(z)) >= radius:
        raise OnBoundaryError("pencil parameter must lie strictly inside the disc")
    return PencilRep(sys, x, complex(z), radius)


def build_fixed_derivative(fixed_point, multiplier, z, a,
                           radius: float = 1.0) -> FixedDerivativeRep:
    if a == 0:
        raise NestRepError("off-diagonal scale a must be nonzero")
    if abs(complex(z)) >= radius:
        raise OnBoundaryError("parameter must lie strictly inside the disc")
    return FixedDerivativeRep(complex(fixed_point), complex(multiplier),
                              complex(z), complex(a))


def extract_characters(nr):
    """Diagonal compressions of a nest representation, as characters."""
    if nr.kind == "off_fixed":
        y = nr.system.map[nr.x]
        return (Character(nr.system, nr.x, 0.0), Character(nr.system, y, 0.0))
    if nr.kind == "pencil":
        y = nr.system.map[nr.x]
        return (
            Character(nr.system, nr.x, 0.0, nr.radius),
            Character(nr.system, y, nr.z, nr.radius),
        )
    raise NestRepError("no finite-system characters for kind %r" % (nr.kind,))
