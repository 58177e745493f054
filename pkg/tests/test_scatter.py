"""Matching-solver tests: closed-form basis against the integration oracle.

The interior basis functions are verified as ODE solutions in their own
right (residual + Wronskian + trajectory agreement), then the assembled
4x4 solve is checked against the independently marched transmission.
"""

import math

import numpy as np
import pytest

from triq.errors import AccuracyError, ConditioningError, DomainError
from triq.model import MassParams, PotentialProfile, barrier_coefficients, make_units
from triq.oracle import IntegrationSpec, integrate, matched_transmission, ode_residual
from triq.scatter import (
    FIDELITY_MODES,
    RESONANCE_RTOL,
    MatchingSystem,
    RegionIIBasis,
    abbreviations_at,
    assemble_matching,
    basis_for,
    region_I_wave,
    region_II_wave,
    rescale_diagnostic,
    solve_matching,
    sweep,
    transmission,
)
from triq.special import recip_gamma

U = make_units()
MASS = MassParams()
BARRIER = PotentialProfile()

# Transmission at the published operating point, frozen from this solver
# after it agreed with the marching oracle to 3.9e-14.
T_DEFAULT = 132.54430898227582


def interior_weight(E, pp):
    return lambda x: U.H_per_m0 * MASS.mass_at(x) * (E - pp.edge_eV + pp.alpha * x)


def wronskian_exact(basis: RegionIIBasis) -> float:
    # P(0.25-quirk-free) at the vertex is (1, 0), so W = Q'(vertex); in
    # closed form that is -2 sqrt(pi) a1^(1/4) / Gamma(b), constant in x.
    return (-2.0 * math.sqrt(math.pi) * math.sqrt(basis.sqrt_a1)
            * recip_gamma(basis.b_param))


class TestRegionIIBasis:
    @pytest.mark.parametrize("which", ["first", "second"])
    def test_is_ode_solution(self, which):
        basis = basis_for(barrier_coefficients(0.1, MASS, BARRIER, U))
        fn = getattr(basis, which)
        n = 7000
        xs = [BARRIER.a * i / n for i in range(n + 1)]
        values = [fn(x)[0] for x in xs]
        report = ode_residual(xs, values, interior_weight(0.1, BARRIER))
        assert report.conclusive
        assert report.residual <= 1e-6

    @pytest.mark.parametrize("E", [0.1, 2.25])
    def test_wronskian_constant_and_closed(self, E):
        basis = basis_for(barrier_coefficients(E, MASS, BARRIER, U))
        expect = wronskian_exact(basis)
        for x in (0.0, 1.75, -basis.y_offset, 5.25, BARRIER.a):
            ker = basis.kernels(x)
            p, pd = basis.first(x, ker)
            q, qd = basis.second(x, ker)
            assert p * qd - q * pd == pytest.approx(expect, rel=1e-12)

    @pytest.mark.parametrize("which", ["first", "second"])
    def test_trajectory_matches_marcher(self, which):
        basis = basis_for(barrier_coefficients(0.1, MASS, BARRIER, U))
        fn = getattr(basis, which)
        v0, d0 = fn(0.0)
        spec = IntegrationSpec(x_start=0.0, x_end=BARRIER.a, step=1e-3,
                               value=v0, derivative=d0)
        got = integrate(spec, 0.1, MASS, BARRIER, U, interior=True)
        va, da = fn(BARRIER.a)
        scale = max(abs(va), abs(da))
        assert abs(got.value - va) <= 1e-8 * scale
        assert abs(got.derivative - da) <= 1e-8 * scale

    def test_second_smooth_across_vertex(self):
        # the unsigned sqrt(z) branch would kink where y = 0; the signed
        # branch must show only O(h) derivative variation there
        basis = basis_for(barrier_coefficients(0.1, MASS, BARRIER, U))
        x0 = -basis.y_offset
        h = 1e-5
        _, d_minus = basis.second(x0 - h)
        q0, d0 = basis.second(x0)
        _, d_plus = basis.second(x0 + h)
        assert abs(d_plus - d_minus) <= 5.0 * h * max(1.0, abs(q0))
        # at the vertex the first solution is exactly (1, 0), so the
        # Wronskian collapses onto Q' alone
        assert d0 == pytest.approx(wronskian_exact(basis), rel=1e-13)

    def test_second_refuses_hopeless_point(self):
        # deep parameter with moderate z: the Kummer core itself taps out,
        # and the failure must surface as an error, not a wrong number
        basis = RegionIIBasis(b_param=-24.833, sqrt_a1=1.0, y_offset=0.0)
        with pytest.raises(AccuracyError):
            basis.second(math.sqrt(33.574))

    def test_large_z_route_engaged(self):
        # at the far interface of the high-energy corner the subtraction
        # form has no digits left; the value must still match the exact
        # Wronskian partner relation
        basis = basis_for(barrier_coefficients(2.25, MASS, BARRIER, U))
        ker = basis.kernels(BARRIER.a)
        assert ker.z > 100.0
        p, pd = basis.first(BARRIER.a, ker)
        q, qd = basis.second(BARRIER.a, ker)
        assert p * qd - q * pd == pytest.approx(wronskian_exact(basis), rel=1e-12)


class TestAbbreviations:
    def test_value_columns_consistent(self):
        # f1' and f3'-f5' reduce back to the basis values at the interface
        basis = basis_for(barrier_coefficients(0.1, MASS, BARRIER, U))
        fset = abbreviations_at(basis, 0.0)
        p0, _ = basis.first(0.0)
        assert fset.f1p == pytest.approx(p0, rel=1e-13)

    def test_printed_f8_gap(self):
        # printed f8 = f2 - f1 misses the 4b factor; the chain rule gives
        # P'(0) = f8 + (4b - 1) f2 exactly
        basis = basis_for(barrier_coefficients(0.1, MASS, BARRIER, U))
        fset = abbreviations_at(basis, 0.0)
        _, pd0 = basis.first(0.0)
        recovered = fset.f8 + (4.0 * basis.b_param - 1.0) * fset.f2
        assert recovered == pytest.approx(pd0, rel=1e-12)
        assert abs(fset.f8 - pd0) > 1e-3 * abs(pd0)


class TestMatching:
    def test_solution_satisfies_continuity(self):
        E = 0.1
        system = assemble_matching(E, MASS, BARRIER, U)
        sol = solve_matching(system, E=E)
        left = region_I_wave(0.0, E, MASS, U, (sol.b1, sol.b2))
        mid0 = region_II_wave(0.0, E, MASS, BARRIER, U, (sol.b3, sol.b4))
        mida = region_II_wave(BARRIER.a, E, MASS, BARRIER, U, (sol.b3, sol.b4))
        assert left[0] == pytest.approx(mid0[0], rel=1e-10)
        assert left[1] == pytest.approx(mid0[1], rel=1e-10)
        assert mida[0] == pytest.approx(system.rhs[2], rel=1e-10)
        assert mida[1] == pytest.approx(system.rhs[3], rel=1e-10)

    def test_residual_within_contract(self):
        for E in (0.1, 0.8, 2.25):
            sol = solve_matching(assemble_matching(E, MASS, BARRIER, U), E=E)
            assert sol.residual <= 1e-9
            assert sol.condition_estimate >= 1.0

    def test_frozen_amplitudes(self):
        sol = solve_matching(assemble_matching(0.1, MASS, BARRIER, U), E=0.1)
        assert sol.b1 == pytest.approx(-0.086859926464917109, rel=1e-9)
        assert sol.b2 == pytest.approx(0.039951925436630502, rel=1e-9)
        assert sol.b3 == pytest.approx(-0.00015787698796240637, rel=1e-9)
        assert sol.b4 == pytest.approx(0.026516081490021756, rel=1e-9)

    def test_nonfinite_system_rejected(self):
        system = assemble_matching(0.1, MASS, BARRIER, U)
        bad = MatchingSystem(matrix=system.matrix * math.nan, rhs=system.rhs,
                             coefficients=system.coefficients,
                             basis=system.basis, airy_scale=system.airy_scale)
        with pytest.raises(ConditioningError):
            solve_matching(bad, E=0.1)

    def test_singular_system_rejected(self):
        system = assemble_matching(0.1, MASS, BARRIER, U)
        bad = MatchingSystem(matrix=np.zeros((4, 4)), rhs=system.rhs,
                             coefficients=system.coefficients,
                             basis=system.basis, airy_scale=system.airy_scale)
        with pytest.raises(ConditioningError):
            solve_matching(bad, E=0.1)

    def test_well_profile_rejected(self):
        well = PotentialProfile(V0=0.45, alpha=0.0045, a=7.0, kind="well")
        with pytest.raises(DomainError):
            transmission(0.1, MASS, well, U)


class TestTransmission:
    def test_matches_oracle_at_default(self):
        res = transmission(0.1, MASS, BARRIER, U)
        oracle = matched_transmission(0.1, MASS, BARRIER, U)
        assert res.T_solve == pytest.approx(oracle, rel=1e-6)
        assert res.T_solve == pytest.approx(T_DEFAULT, rel=1e-10)

    @pytest.mark.parametrize("E", [0.45, 1.0, 1.7, 2.25])
    def test_matches_oracle_past_crossover(self, E):
        # the regression that motivated the large-z route: these energies
        # used to come back with no correct digits
        res = transmission(E, MASS, BARRIER, U)
        oracle = matched_transmission(E, MASS, BARRIER, U)
        assert res.T_solve == pytest.approx(oracle, rel=1e-6)

    def test_rescale_invariance(self):
        solve_ratio, paper_ratio = rescale_diagnostic(0.1, MASS, BARRIER, U)
        assert solve_ratio == pytest.approx(1.0, abs=1e-12)
        assert paper_ratio == pytest.approx(2.0 ** -4, rel=1e-9)

    def test_resonance_sentinel(self):
        # b1 changes sign once in this bracket; pin it down and the solver
        # must report the pole as +inf rather than a huge finite number
        lo, hi = 0.15, 0.19
        b1_at = lambda E: solve_matching(
            assemble_matching(E, MASS, BARRIER, U), E=E).b1
        flo = b1_at(lo)
        assert flo * b1_at(hi) < 0.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            fmid = b1_at(mid)
            if fmid == 0.0 or abs(fmid) < 1e-300:
                lo = hi = mid
                break
            if (fmid < 0.0) == (flo < 0.0):
                lo, flo = mid, fmid
            else:
                hi = mid
        res = transmission(0.5 * (lo + hi), MASS, BARRIER, U)
        assert res.resonant
        assert math.isinf(res.T_solve)

    def test_fidelity_modes_run_and_diverge(self):
        results = {mode: transmission(0.1, MASS, BARRIER, U, fidelity=mode)
                   for mode in FIDELITY_MODES}
        base = results["none"]
        assert base.T_solve == pytest.approx(T_DEFAULT, rel=1e-10)
        for mode in ("signs", "t2", "all"):
            assert results[mode].T_solve != pytest.approx(base.T_solve, rel=1e-6)

    def test_unknown_fidelity_rejected(self):
        with pytest.raises(DomainError):
            transmission(0.1, MASS, BARRIER, U, fidelity="verbatim")

    def test_paper_column_always_reported(self):
        res = transmission(0.1, MASS, BARRIER, U)
        assert math.isfinite(res.T_paper)
        assert res.T_paper == pytest.approx((res.t1 / res.t2) ** 2, rel=1e-12)


class TestSweep:
    def test_error_rows_flagged_not_raised(self):
        rows = sweep("E", [-0.5, 0.1], MASS, BARRIER, U)
        assert rows[0].result is None
        assert rows[0].flags == ("DomainError",)
        assert rows[1].flags == ()
        assert rows[1].result.T_solve == pytest.approx(T_DEFAULT, rel=1e-10)

    def test_auto_alpha_resolves_per_point(self):
        rows = sweep("V0", [0.005], MASS, BARRIER, U, E=0.1, auto_alpha=True)
        fixed = sweep("V0", [0.005], MASS, BARRIER, U, E=0.1, auto_alpha=False)
        assert rows[0].result.T_solve == pytest.approx(1.0616171726721406, rel=1e-8)
        # at the base alpha the low barrier is a deep sloped well instead
        assert fixed[0].result.T_solve < 0.01

    def test_width_axis(self):
        rows = sweep("a", [1e-4, 7.0], MASS, BARRIER, U, E=0.1, auto_alpha=True)
        assert abs(rows[0].result.T_solve - 1.0) < 1e-3
        assert rows[1].result.T_solve == pytest.approx(T_DEFAULT, rel=1e-10)

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            sweep("k", [0.1], MASS, BARRIER, U)
        with pytest.raises(DomainError):
            sweep("E", [], MASS, BARRIER, U)
        with pytest.raises(DomainError):
            sweep("E", [0.2, 0.1], MASS, BARRIER, U)
