"""Screw arrangement: tilt threshold, fingertip deflection, verdict logic."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from griphand import (
    ARRANGE_PHASES,
    DEFAULT_GRIP_FORCE,
    M3X8,
    M6X12,
    PHASE_DROPPED_SLIDING,
    VERDICT_LOST,
    VERDICT_PINCHED,
    VERDICT_STUCK,
    VERDICT_SUCCESS,
    FingerGeometry,
    MaterialSpec,
    ScrewSpec,
    TiltPlan,
    fingertip_deflection,
    min_tilt_angle,
    simulate_arrange,
    valid_opening_range,
)
from griphand.errors import DomainError, NoValidOpeningError, ValidationError

GEOM = FingerGeometry(
    l1=30.0, l2=10.0, l3=20.0, l4=15.0, beam_D=6.0, theta_f=math.radians(20.0)
)
MAT = MaterialSpec(mu_fingers=0.3, E=2200.0, G=800.0)


def scan_min_tilt(theta_f: float, mu0: float) -> float:
    """Oracle: finest grid angle where gravity along the flank beats friction.

    Walks tilt in 1e-4 degree steps and returns the first angle at which
    m*g*sin(x - theta_f/2) > mu0 * m*g*cos(x - theta_f/2); mass and g cancel.
    """
    step = math.radians(1e-4)
    x = 0.0
    while x < math.pi / 2:
        slope = x - theta_f / 2.0
        if math.sin(slope) > mu0 * math.cos(slope):
            return x
        x += step
    raise AssertionError("scan found no sliding angle")


def deflection_oracle(geom, mat, force):
    """Oracle: same beam model assembled from section constants.

    Uses I = pi*D^4/64 and J = pi*D^4/32 explicitly instead of the
    collapsed coefficients in the library.
    """
    inertia = math.pi * geom.beam_D**4 / 64.0
    torsion = math.pi * geom.beam_D**4 / 32.0
    reach = geom.l3 + geom.l4
    twist = force * reach * geom.l2 / (mat.G * torsion)
    d_top = twist * reach
    phi_c = force * geom.l2**2 / (2.0 * mat.E * inertia)
    phi_d = force * geom.l4**2 / (2.0 * mat.E * inertia)
    d_bend = (
        force * reach**3 / (3.0 * mat.E * inertia)
        + force * geom.l4**3 / (3.0 * mat.E * inertia)
        + phi_c * geom.l2
        + phi_d * geom.l4
    )
    return d_top + d_bend


def verdict_oracle(screw, plan, d_E, tilt_threshold):
    """Oracle: arrange verdict from the three guards, pinch checked first."""
    if plan.opening_d <= d_E:
        return VERDICT_PINCHED
    if plan.opening_d >= screw.head_D:
        return VERDICT_LOST
    if plan.theta_gri <= tilt_threshold:
        return VERDICT_STUCK
    return VERDICT_SUCCESS


# --------------------------------------------------------------- tilt angle

def test_min_tilt_reference_value():
    tilt = min_tilt_angle(math.radians(20.0), 0.3)
    assert math.degrees(tilt) == pytest.approx(26.6992442, abs=1e-6)


def test_min_tilt_matches_grid_scan():
    for theta_f_deg, mu0 in ((20.0, 0.3), (20.0, 0.1), (40.0, 0.3), (10.0, 0.5)):
        closed = min_tilt_angle(math.radians(theta_f_deg), mu0)
        scanned = scan_min_tilt(math.radians(theta_f_deg), mu0)
        assert math.degrees(closed) == pytest.approx(
            math.degrees(scanned), abs=2e-4
        )


def test_min_tilt_frictionless_is_half_flank_angle():
    assert min_tilt_angle(math.radians(20.0), 0.0) == math.radians(20.0) / 2.0


def test_min_tilt_independent_of_mass():
    # Nothing mass-shaped in the signature; the threshold is pure geometry.
    assert min_tilt_angle(math.radians(20.0), 0.3) == min_tilt_angle(
        math.radians(20.0), 0.3
    )


@given(theta_f=st.floats(0.01, 1.0), mu0=st.floats(0.0, 0.8))
def test_min_tilt_monotone_in_friction_and_flank(theta_f, mu0):
    base = min_tilt_angle(theta_f, mu0)
    assert min_tilt_angle(theta_f, mu0 + 0.05) > base
    assert min_tilt_angle(theta_f + 0.05, mu0) > base


def test_min_tilt_unreachable_raises():
    with pytest.raises(DomainError):
        min_tilt_angle(math.radians(170.0), 0.3)


# ------------------------------------------------------------- deflection

def test_deflection_reference_sample():
    defl = fingertip_deflection(GEOM, MAT, force_F=3.0)
    assert defl.d_E == pytest.approx(0.7383914, abs=1e-6)
    assert defl.d_Et == pytest.approx(0.3610459, abs=1e-6)
    assert defl.d_Eb == pytest.approx(0.3773455, abs=1e-6)
    assert defl.d_E == defl.d_Et + defl.d_Eb


def test_deflection_matches_section_constant_oracle():
    rng = random.Random(99)
    for _ in range(200):
        geom = FingerGeometry(
            l1=rng.uniform(5.0, 50.0),
            l2=rng.uniform(2.0, 30.0),
            l3=rng.uniform(2.0, 40.0),
            l4=rng.uniform(2.0, 40.0),
            beam_D=rng.uniform(2.0, 12.0),
            theta_f=math.radians(20.0),
        )
        mat = MaterialSpec(
            mu_fingers=0.3, E=rng.uniform(500.0, 5000.0), G=rng.uniform(200.0, 2000.0)
        )
        force = rng.uniform(0.1, 20.0)
        got = fingertip_deflection(geom, mat, force).d_E
        want = deflection_oracle(geom, mat, force)
        assert abs(got - want) / want < 1e-10


def test_deflection_linear_in_force():
    one = fingertip_deflection(GEOM, MAT, force_F=3.0)
    two = fingertip_deflection(GEOM, MAT, force_F=6.0)
    assert two.d_E == 2.0 * one.d_E
    assert two.d_Et == 2.0 * one.d_Et
    assert two.d_Eb == 2.0 * one.d_Eb


def test_deflection_torsion_scales_with_fourth_power_of_diameter():
    thin = fingertip_deflection(GEOM, MAT, force_F=3.0)
    thick_geom = FingerGeometry(
        l1=GEOM.l1, l2=GEOM.l2, l3=GEOM.l3, l4=GEOM.l4,
        beam_D=2.0 * GEOM.beam_D, theta_f=GEOM.theta_f,
    )
    thick = fingertip_deflection(thick_geom, MAT, force_F=3.0)
    assert thick.d_Et == thin.d_Et / 16.0


def test_deflection_zero_force():
    defl = fingertip_deflection(GEOM, MAT, force_F=0.0)
    assert defl.d_E == 0.0


def test_deflection_corrected_moment_arm_is_larger():
    # l3 + l4 = 35 exceeds the printed carry arm l2 = 10.
    printed = fingertip_deflection(GEOM, MAT, force_F=3.0)
    corrected = fingertip_deflection(GEOM, MAT, force_F=3.0,
                                     corrected_moment_arm=True)
    assert corrected.d_Eb > printed.d_Eb
    assert corrected.d_Et == printed.d_Et


@settings(deadline=None)
@given(
    l3=st.floats(2.0, 40.0),
    l4=st.floats(2.0, 40.0),
    force=st.floats(0.1, 10.0),
)
def test_deflection_monotone_in_reach_and_force(l3, l4, force):
    geom = FingerGeometry(l1=30.0, l2=10.0, l3=l3, l4=l4, beam_D=6.0,
                          theta_f=math.radians(20.0))
    base = fingertip_deflection(geom, MAT, force).d_E
    longer = FingerGeometry(l1=30.0, l2=10.0, l3=l3 + 1.0, l4=l4, beam_D=6.0,
                            theta_f=math.radians(20.0))
    assert fingertip_deflection(longer, MAT, force).d_E > base
    assert fingertip_deflection(geom, MAT, force + 0.5).d_E > base


def test_finger_geometry_invariants():
    with pytest.raises(ValidationError):
        FingerGeometry(l1=30.0, l2=0.0, l3=20.0, l4=15.0, beam_D=6.0,
                       theta_f=math.radians(20.0))
    with pytest.raises(ValidationError):
        FingerGeometry(l1=30.0, l2=10.0, l3=20.0, l4=15.0, beam_D=-1.0,
                       theta_f=math.radians(20.0))
    with pytest.raises(ValidationError):
        FingerGeometry(l1=30.0, l2=10.0, l3=20.0, l4=15.0, beam_D=6.0,
                       theta_f=math.pi)


# ---------------------------------------------------------- opening window

def test_valid_opening_range_for_m3():
    defl = fingertip_deflection(GEOM, MAT, force_F=3.0)
    lo, hi = valid_opening_range(defl, M3X8)
    assert lo == defl.d_E
    assert hi == M3X8.head_D == 5.5


def test_valid_opening_range_collapses_under_heavy_load():
    defl = fingertip_deflection(GEOM, MAT, force_F=40.0)
    assert defl.d_E > M3X8.head_D
    with pytest.raises(NoValidOpeningError):
        valid_opening_range(defl, M3X8)


def test_screw_spec_invariants():
    with pytest.raises(ValidationError):
        ScrewSpec(nominal="bad", mass=0.001, head_D=3.0, shank_d=3.0, length=8.0)
    with pytest.raises(ValidationError):
        ScrewSpec(nominal="bad", mass=0.001, head_D=5.5, shank_d=0.0, length=8.0)
    assert M6X12.head_D == 10.0 and M6X12.shank_d == 6.0


# ------------------------------------------------------------ arrange runs

def test_arrange_success_trace():
    plan = TiltPlan(theta_gri=math.radians(40.0), opening_d=3.0)
    trace = simulate_arrange(M3X8, plan, GEOM, MAT)
    assert trace.verdict == VERDICT_SUCCESS
    assert tuple(p.phase for p in trace.phases) == ARRANGE_PHASES
    assert trace.phases[1].tilt == pytest.approx(plan.theta_gri)


def test_arrange_stuck_below_tilt_threshold():
    plan = TiltPlan(theta_gri=math.radians(20.0), opening_d=3.0)
    trace = simulate_arrange(M3X8, plan, GEOM, MAT)
    assert trace.verdict == VERDICT_STUCK
    assert trace.failed_phase == PHASE_DROPPED_SLIDING


def test_arrange_stuck_exactly_at_threshold():
    threshold = min_tilt_angle(GEOM.theta_f, MAT.mu_fingers)
    trace = simulate_arrange(M3X8, TiltPlan(theta_gri=threshold, opening_d=3.0),
                             GEOM, MAT)
    assert trace.verdict == VERDICT_STUCK


def test_arrange_lost_when_opening_passes_the_head():
    plan = TiltPlan(theta_gri=math.radians(40.0), opening_d=5.5)
    trace = simulate_arrange(M3X8, plan, GEOM, MAT)
    assert trace.verdict == VERDICT_LOST


def test_arrange_pinched_when_deflection_closes_the_gap():
    defl = fingertip_deflection(GEOM, MAT, force_F=DEFAULT_GRIP_FORCE)
    plan = TiltPlan(theta_gri=math.radians(40.0), opening_d=defl.d_E)
    trace = simulate_arrange(M3X8, plan, GEOM, MAT)
    assert trace.verdict == VERDICT_PINCHED


def test_arrange_pinch_takes_priority_over_loss():
    # Force high enough that d_E exceeds the head: opening 6 mm fails both
    # guards at once and must be reported as pinched.
    defl = fingertip_deflection(GEOM, MAT, force_F=40.0)
    assert defl.d_E > M3X8.head_D
    plan = TiltPlan(theta_gri=math.radians(40.0), opening_d=6.0)
    trace = simulate_arrange(M3X8, plan, GEOM, MAT, force_F=40.0)
    assert trace.verdict == VERDICT_PINCHED


def test_arrange_matches_guard_oracle_on_small_grid():
    defl = fingertip_deflection(GEOM, MAT, force_F=DEFAULT_GRIP_FORCE)
    threshold = min_tilt_angle(GEOM.theta_f, MAT.mu_fingers)
    tilts = [math.radians(t) for t in (5.0, 20.0, 26.0, 27.0, 45.0, 80.0)]
    openings = (0.2, 0.7383, 0.74, 3.0, 5.4999, 5.5, 6.0)
    for tilt in tilts:
        for opening in openings:
            plan = TiltPlan(theta_gri=tilt, opening_d=opening)
            trace = simulate_arrange(M3X8, plan, GEOM, MAT)
            assert trace.verdict == verdict_oracle(M3X8, plan, defl.d_E, threshold), (
                tilt, opening
            )


def test_arrange_m6_succeeds_at_wider_opening():
    plan = TiltPlan(theta_gri=math.radians(40.0), opening_d=7.0)
    assert simulate_arrange(M6X12, plan, GEOM, MAT).verdict == VERDICT_SUCCESS


def test_tilt_plan_invariants():
    with pytest.raises(ValidationError):
        TiltPlan(theta_gri=0.0, opening_d=3.0)
    with pytest.raises(ValidationError):
        TiltPlan(theta_gri=math.pi / 2, opening_d=3.0)
    with pytest.raises(ValidationError):
        TiltPlan(theta_gri=math.radians(40.0), opening_d=0.0)
