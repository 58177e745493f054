"""Invariant suites behind the validate subcommand.

Each suite recomputes an identity through a route independent of the code
that produced it (closed form against marcher, derivative against central
difference, identity against direct expansion) and reports its worst
deviation against a fixed budget.  The INFO lines document measured gaps
between the canonical path and the published closed forms; they are
informational by design: the gaps are genuine properties of the printed
formulas, kept reproducible behind the fidelity modes, not defects to
patch silently.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .bound import energy_level
from .model import (MassParams, PotentialProfile, UnitSystem, airy_argument,
                    airy_scale, barrier_coefficients, make_units)
from .oracle import IntegrationSpec, integrate, matched_transmission, ode_residual
from .scatter import (abbreviations_at, basis_for, rescale_diagnostic,
                      transmission)
from .special import (airy_ai, airy_bi, gamma, kummer_m, recip_gamma,
                      tricomi_u_large_z)

__all__ = ["SuiteResult", "run_suites", "info_lines"]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    worst: float
    budget: float

    @property
    def passed(self) -> bool:
        return self.worst <= self.budget


def _default_setup():
    u = make_units()
    mp = MassParams()
    pp = PotentialProfile()
    return u, mp, pp


def suite_airy_wronskian(airy_offset: float = 0.0) -> SuiteResult:
    # pi (Ai Bi' - Ai' Bi) = 1 on both sides of the turning point.
    # airy_offset is a test-only hook that shifts the Ai values so the
    # negative-control path through the runner stays exercised.
    worst = 0.0
    for i in range(2001):
        y = -12.0 + 18.0 * i / 2000.0
        ai = airy_ai(y)
        bi = airy_bi(y)
        w = math.pi * ((ai.value + airy_offset) * bi.derivative
                       - ai.derivative * bi.value)
        worst = max(worst, abs(w - 1.0))
    return SuiteResult(name="airy-wronskian", worst=worst, budget=1e-12)


def suite_airy_equation() -> SuiteResult:
    xs = [-5.0 + i * 1e-3 for i in range(7001)]
    vals = [airy_ai(x).value for x in xs]
    report = ode_residual(xs, vals, lambda x: -x)
    worst = report.residual if report.conclusive else math.inf
    return SuiteResult(name="airy-equation", worst=worst, budget=1e-6)


def suite_gamma_recurrence() -> SuiteResult:
    rng = random.Random(7)
    worst = 0.0
    for _ in range(200):
        x = rng.uniform(0.05, 12.0)
        worst = max(worst, abs(gamma(x + 1.0) / (x * gamma(x)) - 1.0))
        worst = max(worst, abs(gamma(x) * recip_gamma(x) - 1.0))
    return SuiteResult(name="gamma-recurrence", worst=worst, budget=1e-12)


def suite_kummer_derivative() -> SuiteResult:
    # d/dz M(b; c; z) = (b/c) M(b+1; c+1; z) against a central difference
    rng = random.Random(11)
    h = 1e-6
    worst = 0.0
    for _ in range(60):
        b = rng.uniform(-8.0, 2.0)
        c = rng.choice([0.5, 1.5])
        z = rng.uniform(0.1, 12.0)
        fd = (kummer_m(b, c, z + h) - kummer_m(b, c, z - h)) / (2.0 * h)
        exact = b / c * kummer_m(b + 1.0, c + 1.0, z)
        worst = max(worst, abs(fd - exact) / max(1.0, abs(exact)))
    return SuiteResult(name="kummer-derivative", worst=worst, budget=1e-6)


def suite_tricomi_shift() -> SuiteResult:
    # U(b; 1/2; z) = sqrt(z) U(b + 1/2; 3/2; z), two independent recurrence
    # chains of the large-z route
    worst = 0.0
    for b, z in ((-6.2, 70.0), (-17.49, 141.83), (-0.9, 45.0), (0.4, 60.0)):
        lhs, _ = tricomi_u_large_z(b, 0.5, z)
        rhs, _ = tricomi_u_large_z(b + 0.5, 1.5, z)
        worst = max(worst, abs(lhs - math.sqrt(z) * rhs) / abs(lhs))
    return SuiteResult(name="tricomi-shift", worst=worst, budget=1e-9)


def suite_interior_coefficients() -> SuiteResult:
    # -(a1 x^2 + a2 x + a3) must reproduce H m(x)(E - V(x)) identically
    u, mp, pp = _default_setup()
    rng = random.Random(42)
    worst = 0.0
    for _ in range(100):
        E = rng.uniform(0.01, 2.0)
        x = rng.uniform(0.0, pp.a)
        rc = barrier_coefficients(E, mp, pp, u)
        lhs = -(rc.a1 * x * x + rc.a2 * x + rc.a3)
        rhs = u.H_per_m0 * mp.mass_at(x) * (E - (pp.V0 - pp.alpha * x))
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return SuiteResult(name="interior-coefficients", worst=worst, budget=1e-11)


def suite_interior_equation() -> SuiteResult:
    u, mp, pp = _default_setup()
    E = 0.1
    basis = basis_for(barrier_coefficients(E, mp, pp, u))
    weight = lambda x: u.H_per_m0 * mp.mass_at(x) * (E - pp.V0 + pp.alpha * x)
    xs = [i * 1e-3 for i in range(7001)]
    worst = 0.0
    for fn in (basis.first, basis.second):
        vals = [fn(x)[0] for x in xs]
        report = ode_residual(xs, vals, weight)
        worst = max(worst, report.residual if report.conclusive else math.inf)
    return SuiteResult(name="interior-equation", worst=worst, budget=1e-6)


def suite_interior_wronskian() -> SuiteResult:
    # P Q' - P' Q = -2 sqrt(pi) a1^(1/4) / Gamma(b), constant in x.  The
    # budget is set by the companion solution's route-crossover band
    # (E near 0.8 here), where delivered accuracy is ~1e-10, not 1e-14.
    u, mp, pp = _default_setup()
    worst = 0.0
    for E in (0.1, 0.8, 2.25):
        basis = basis_for(barrier_coefficients(E, mp, pp, u))
        exact = (-2.0 * math.sqrt(math.pi) * math.sqrt(basis.sqrt_a1)
                 * recip_gamma(basis.b_param))
        for x in (0.0, 1.75, -basis.y_offset, 5.25, pp.a):
            fv, fd = basis.first(x)
            sv, sd = basis.second(x)
            worst = max(worst, abs((fv * sd - fd * sv) / exact - 1.0))
    return SuiteResult(name="interior-wronskian", worst=worst, budget=1e-8)


def suite_march_agreement() -> SuiteResult:
    # closed-form interior trajectory against the marcher, seeded at x = 0
    u, mp, pp = _default_setup()
    E = 0.1
    basis = basis_for(barrier_coefficients(E, mp, pp, u))
    v0, d0 = basis.first(0.0)
    spec = IntegrationSpec(x_start=0.0, x_end=pp.a, step=1e-3,
                           value=v0, derivative=d0)
    got = integrate(spec, E, mp, pp, u, interior=True)
    va, da = basis.first(pp.a)
    scale = max(abs(va), abs(da))
    worst = max(abs(got.value - va), abs(got.derivative - da)) / scale
    return SuiteResult(name="march-agreement", worst=worst, budget=1e-7)


def suite_transmission_agreement() -> SuiteResult:
    u, mp, pp = _default_setup()
    worst = 0.0
    for E in (0.1, 0.45, 1.0, 1.7, 2.25):
        solved = transmission(E, mp, pp, u).T_solve
        marched = matched_transmission(E, mp, pp, u)
        worst = max(worst, abs(solved / marched - 1.0))
    return SuiteResult(name="transmission-agreement", worst=worst, budget=1e-6)


def suite_bound_residuals() -> SuiteResult:
    u = make_units()
    mp = MassParams()
    well = PotentialProfile(V0=0.45, alpha=0.0045, a=7.0, kind="well")
    worst = max(energy_level(n, mp, well, u).residual for n in range(6))
    return SuiteResult(name="bound-residuals", worst=worst, budget=1e-10)


def run_suites(airy_offset: float = 0.0) -> list[SuiteResult]:
    return [
        suite_airy_wronskian(airy_offset),
        suite_airy_equation(),
        suite_gamma_recurrence(),
        suite_kummer_derivative(),
        suite_tricomi_shift(),
        suite_interior_coefficients(),
        suite_interior_equation(),
        suite_interior_wronskian(),
        suite_march_agreement(),
        suite_transmission_agreement(),
        suite_bound_residuals(),
    ]


def info_lines() -> list[str]:
    """Measured gaps against the published closed forms, recomputed live."""
    u, mp, pp = _default_setup()
    E = 0.1
    res = transmission(E, mp, pp, u)
    rs = rescale_diagnostic(E, mp, pp, u)
    rc = barrier_coefficients(E, mp, pp, u)
    flipped = barrier_coefficients(E, mp, pp, u, printed_signs=True)
    basis = basis_for(rc)
    fset = abbreviations_at(basis, 0.0)
    dpdx0 = basis.first(0.0)[1]
    b_alt = 0.25 * (1.0 + rc.lam / (4.0 * rc.a1))
    lines = [
        f"printed closed form at E = {E:g} eV: T_paper/T_solve = "
        f"{res.T_paper / res.T_solve:.6g} (bracket degrees mismatch, "
        f"see the rescale line)",
        f"transmitted-amplitude rescale s = 2: T_solve ratio {rs[0]:.6g} "
        f"(scale-free), T_paper ratio {rs[1]:.6g} (printed form goes as "
        f"s^-4 = {2.0 ** -4})",
        f"printed constant-term sign: a3 = {rc.a3:.6g} canonical vs "
        f"{flipped.a3:.6g} printed at E = {E:g} eV; fidelity 'signs' keeps "
        f"the printed sign",
        f"published first-parameter denominator reads 4 a1 where the "
        f"reduction gives sqrt(a1): b = {rc.b_param:.6g} vs {b_alt:.6g} at "
        f"E = {E:g} eV; only the sqrt(a1) form passes the interior-equation "
        f"suite",
        f"printed f8 shorthand omits the chain-rule 4b factor: f8 = "
        f"{fset.f8:.6g} vs dP/dx(0) = {dpdx0:.6g}",
        f"printed f6 reciprocal-gamma argument is 4b - 3/4 where the "
        f"derivative chain uses b: 1/Gamma = "
        f"{recip_gamma(4.0 * basis.b_param - 0.75):.6g} vs "
        f"{recip_gamma(basis.b_param):.6g}",
        f"printed f5' divides by a1^(1/4) y where the value column divides "
        f"by sqrt(a1) y, leaving a stray a1^(1/4) = "
        f"{math.sqrt(basis.sqrt_a1):.6g}",
    ]
    for mode in ("signs", "t2", "all"):
        alt = transmission(E, mp, pp, u, fidelity=mode)
        shift = alt.T_solve / res.T_solve - 1.0
        lines.append(f"fidelity '{mode}': T_solve shifts by {shift:+.3e} "
                     f"relative at E = {E:g} eV")
    well = PotentialProfile(V0=0.45, alpha=0.0045, a=7.0, kind="well")
    e0 = energy_level(0, mp, well, u).E_n
    e1 = energy_level(1, mp, well, u).E_n
    lines.append(
        f"lowest well levels: computed {e0:.5f}, {e1:.5f} eV; published "
        f"-0.29407, -0.00871 eV; earlier reference -0.20986, -0.00630 eV; "
        f"the unit reading behind the published column is unresolved, so "
        f"the gap is reported rather than rescaled away")
    shallow = PotentialProfile(V0=0.005, alpha=0.005 / 7.0, a=7.0)
    t_shallow = transmission(E, mp, shallow, u).T_solve
    thin = PotentialProfile(V0=0.45, alpha=0.45 / 1e-4, a=1e-4)
    t_thin = transmission(E, mp, thin, u).T_solve
    lines.append(
        f"published starting value T = 1 for small barriers: computed "
        f"T = {t_shallow:.6g} at V0 = 0.005 eV (slope V0/a) and "
        f"T = {t_thin:.6g} at a = 1e-4 nm")
    return lines
