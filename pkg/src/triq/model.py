"""Unit convention and coefficient bookkeeping for the triangular profiles.

Internal units are eV for energy, nm for length, and the free electron mass
m0 for mass, so the mass gradient M1 carries m0/nm.  The single physical
constant everything hangs on is hbar^2/(2 m0) expressed in eV nm^2; its
reciprocal is the curvature factor multiplying m(x)(E - V(x)) in the wave
equation

    phi'' + H m(x) (E - V(x)) phi = 0,      H = 2 m0 / hbar^2 (per m0)

with m(x) = M0 - M1 x linear in position.  Inside the profile region the
bracket is an exact quadratic and the equation is kept in the form

    phi'' - (a1 x^2 + a2 x + a3) phi = 0

whose coefficients, completed-square shift and matching arguments live in
RegionCoefficients.  Outside, V = 0 and the same equation reduces to Airy's
after the affine change of variable provided by airy_argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

# CODATA-free on purpose: rounded constants pin the numeric convention.
_HBAR_JS = 1.05e-34
_M0_KG = 9.1e-31
_EV_J = 1.602e-19


@dataclass(frozen=True)
class UnitSystem:
    hbar2_over_2m0: float  # eV nm^2

    @property
    def H_per_m0(self) -> float:
        # exact reciprocal by construction; callers multiply by masses in m0
        return 1.0 / self.hbar2_over_2m0


def make_units() -> UnitSystem:
    value = _HBAR_JS * _HBAR_JS / (2.0 * _M0_KG * _EV_J) * 1.0e18
    return UnitSystem(hbar2_over_2m0=value)


@dataclass(frozen=True)
class MassParams:
    """Linear mass profile m(x) = M0 - M1*x, M0 in m0, M1 in m0/nm."""

    M0: float = 0.067
    M1: float = 0.067

    def __post_init__(self):
        if not (self.M0 > 0.0 and math.isfinite(self.M0)):
            raise DomainError(f"M0 must be positive, got {self.M0!r}")
        if not (self.M1 >= 0.0 and math.isfinite(self.M1)):
            raise DomainError(f"M1 must be non-negative, got {self.M1!r}")

    @property
    def mass_zero_nm(self) -> float:
        """Position where m(x) crosses zero; +inf for constant mass."""
        if self.M1 == 0.0:
            return math.inf
        return self.M0 / self.M1

    def mass_at(self, x: float) -> float:
        return self.M0 - self.M1 * x


@dataclass(frozen=True)
class PotentialProfile:
    """Triangular profile on (0, a): V0 - alpha*x (barrier) or -V0 - alpha*x
    (well), zero outside.  V0 in eV, alpha in eV/nm, a in nm."""

    V0: float = 0.45
    alpha: float = 0.45 / 7.0
    a: float = 7.0
    kind: str = "barrier"

    def __post_init__(self):
        if self.kind not in ("barrier", "well"):
            raise DomainError(f"kind must be 'barrier' or 'well', got {self.kind!r}")
        for name in ("V0", "alpha", "a"):
            v = getattr(self, name)
            if not (v > 0.0 and math.isfinite(v)):
                raise DomainError(f"{name} must be positive, got {v!r}")

    @property
    def edge_eV(self) -> float:
        """Signed potential value at x = 0+."""
        return self.V0 if self.kind == "barrier" else -self.V0

    def value_at(self, x: float) -> float:
        if x <= 0.0 or x >= self.a:
            return 0.0
        return self.edge_eV - self.alpha * x


@dataclass(frozen=True)
class RegionCoefficients:
    """Quadratic coefficients of the interior equation plus the matching
    arguments at the two interfaces.

    lam is the completed-square constant: with y = x + a2/(2 a1) the interior
    equation reads phi'' - (a1 y^2 + lam) phi = 0.  y2/y4 are the shifted
    interface positions (nm); y1/y3 are the exterior Airy arguments
    (dimensionless, NaN when E <= 0 and no propagating exterior exists).
    """

    a1: float
    a2: float
    a3: float
    lam: float
    y1: float
    y2: float
    y3: float
    y4: float

    @property
    def b_param(self) -> float:
        """First Kummer parameter of the interior basis."""
        return 0.25 * (1.0 + self.lam / math.sqrt(self.a1))


def airy_scale(E, mp: MassParams, u: UnitSystem) -> float:
    """Chain-rule factor (H E M1)^(1/3) linking x to the exterior variable."""
    if not E > 0.0:
        raise DomainError(f"exterior Airy form needs E > 0, got {E!r}")
    if mp.M1 == 0.0:
        raise DomainError("M1 = 0 has no Airy exterior; use the oracle path")
    return (u.H_per_m0 * E * mp.M1) ** (1.0 / 3.0)


def airy_argument(x, E, mp: MassParams, u: UnitSystem) -> float:
    """Exterior variable y(x); y = 0 exactly at the mass zero x* = M0/M1."""
    k = airy_scale(E, mp, u)
    return k * x - u.H_per_m0 * E * mp.M0 / (k * k)


def _coefficients(E, mp, pp, u, edge, printed_signs):
    if mp.M1 == 0.0:
        raise DomainError("interior quadratic degenerates at M1 = 0")
    H = u.H_per_m0
    gap = edge - E  # potential edge minus energy, sign folded into edge
    a1 = H * mp.M1 * pp.alpha
    a2 = -H * (mp.M0 * pp.alpha + mp.M1 * gap)
    a3 = H * mp.M0 * gap
    if printed_signs:
        a3 = -a3
    lam = (4.0 * a1 * a3 - a2 * a2) / (4.0 * a1)
    y2 = a2 / (2.0 * a1)
    if E > 0.0:
        y1 = airy_argument(0.0, E, mp, u)
        y3 = airy_argument(pp.a, E, mp, u)
    else:
        y1 = math.nan
        y3 = math.nan
    return RegionCoefficients(a1=a1, a2=a2, a3=a3, lam=lam,
                              y1=y1, y2=y2, y3=y3, y4=pp.a + y2)


def barrier_coefficients(E, mp: MassParams, pp: PotentialProfile,
                         u: UnitSystem, printed_signs: bool = False) -> RegionCoefficients:
    """Interior coefficients for the barrier profile.

    printed_signs flips a3 to the sign convention of the reference closed
    form; the default sign is the one fixed by expanding H m(x)(E - V(x))
    directly, and is what every canonical computation uses.
    """
    if pp.kind != "barrier":
        raise DomainError(f"barrier_coefficients needs kind='barrier', got {pp.kind!r}")
    if not E > 0.0:
        raise DomainError(f"scattering energy must be positive, got {E!r}")
    return _coefficients(E, mp, pp, u, pp.V0, printed_signs)


def well_coefficients(E, mp: MassParams, pp: PotentialProfile,
                      u: UnitSystem, printed_signs: bool = False) -> RegionCoefficients:
    """Interior coefficients for the well profile; E may be negative."""
    if pp.kind != "well":
        raise DomainError(f"well_coefficients needs kind='well', got {pp.kind!r}")
    if not math.isfinite(E):
        raise DomainError(f"energy must be finite, got {E!r}")
    return _coefficients(E, mp, pp, u, -pp.V0, printed_signs)
