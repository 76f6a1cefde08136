import numpy as np
import pytest

from ssnelab.core import PreconditionError
from ssnelab.hilbert import (identity, make_averaged, monotone_scaled_identity, negation, project_ball, project_halfspace,
                             reflected_resolvent, resolvent, scaled_identity)
from ssnelab.lab import (SamplingBox, SamplingPlan, falsify_afp, falsify_averaged, falsify_certificates, falsify_cld,
                         falsify_displacement_gap, falsify_firm_nonexpansiveness,
                         falsify_inverse_supercoercivity, falsify_inverse_uniform_monotonicity, falsify_lipschitz,
                         falsify_quadratic_growth, falsify_rectangularity, falsify_sne, falsify_ssne,
                         falsify_supercoercivity, falsify_uniform_continuity, falsify_uniform_monotonicity, log_grid,
                         replay)
from ssnelab.moduli import (CldGauge, Modulus, SneModulus, displacement_gap_bound, resolvent_quadratic_growth,
                            resolvent_uniform_monotonicity, ssne_of_averaged, uniform_continuity_modulus)

TRIALS = 2000
MUTANT_TRIALS = 10_000


def test_sweep_grid() -> None:
    grid = log_grid()
    assert grid[0] == pytest.approx(1e-3)
    assert grid[-1] == pytest.approx(1e2)
    assert len(grid) == 101
    with pytest.raises(PreconditionError):
        log_grid(1.0, 0.5)


def test_sampling_plan_chunks() -> None:
    chunks = SamplingPlan(trials=25, chunk_size=10).chunks()
    assert [size for _, size in chunks] == [10, 10, 5]
    with pytest.raises(PreconditionError):
        SamplingPlan(trials=0)
    with pytest.raises(PreconditionError):
        SamplingBox(1.0, -1.0)


@pytest.mark.parametrize('op', [
    project_ball([0, 0], 1),
    project_ball([4, 0], 1),
    project_halfspace([1, 1], 2),
    scaled_identity(2, 0.5),
])
def test_certified_operators_survive_their_sweeps(op) -> None:
    reports = falsify_certificates(op, trials=TRIALS)
    assert reports
    for r in reports:
        assert not r.falsified, r.claim


def test_certificate_claim_names() -> None:
    reports = falsify_certificates(project_ball([0, 0], 1).renamed('P1'), trials=10)
    assert [r.claim for r in reports] == ['P1:averaged_alpha', 'P1:ssne', 'P1:sne', 'P1:supercoercivity',
                                          'P1:afp_bound', 'P1:lipschitz']


def test_projection_is_firmly_nonexpansive() -> None:
    assert not falsify_firm_nonexpansiveness(project_ball([0, 0], 1), trials=TRIALS).falsified
    assert falsify_firm_nonexpansiveness(negation(2), trials=TRIALS).falsified


def test_negation_is_not_strongly_nonexpansive() -> None:
    report = falsify_ssne(negation(2), Modulus.power(2), trials=TRIALS)
    assert report.falsified

    cx = report.counterexample
    x, y = np.array(cx.x), np.array(cx.y)
    # the gap vanishes while the defect is 2‖x − y‖
    assert cx.gap == pytest.approx(0.0, abs=1e-9)
    assert cx.defect == pytest.approx(2 * np.linalg.norm(x - y))
    assert cx.defect >= cx.epsilon
    assert replay(report, negation(2), Modulus.power(2))


@pytest.mark.parametrize('falsify, op, modulus', [
    (falsify_sne, negation(2), SneModulus.linear(0.5)),
    (falsify_supercoercivity, negation(2), Modulus.linear(1.0)),
    (falsify_cld, identity(2), CldGauge.constant(0.5)),
    (falsify_ssne, project_ball([0, 0], 1), Modulus.power(2, coef=2)),
    (falsify_cld, project_ball([0, 0], 1), CldGauge.constant(0.9)),
    (falsify_uniform_continuity, monotone_scaled_identity(2, 1e6), Modulus.constant(1.0)),
])
def test_wrong_moduli_are_falsified(falsify, op, modulus) -> None:
    report = falsify(op, modulus, trials=MUTANT_TRIALS)
    assert report.falsified
    assert replay(report, op, modulus)


def test_doubled_inverse_uniform_monotonicity_is_falsified(unit_map) -> None:
    assert not falsify_inverse_uniform_monotonicity(unit_map, unit_map.psi(), trials=TRIALS).falsified
    assert falsify_inverse_uniform_monotonicity(unit_map, Modulus.power(2, coef=2), trials=TRIALS).falsified


def test_averaged_and_lipschitz_claims() -> None:
    p = project_ball([0, 0], 1)
    assert not falsify_averaged(p, 0.5, trials=TRIALS).falsified
    assert falsify_averaged(negation(2), 0.5, trials=TRIALS).falsified

    half = scaled_identity(2, 0.5)
    assert not falsify_lipschitz(half, 0.5, trials=TRIALS).falsified
    assert falsify_lipschitz(half, 0.4, trials=TRIALS).falsified
    assert not falsify_lipschitz(scaled_identity(2, 0.0), 0.0, trials=TRIALS).falsified


def test_afp_claim_is_a_single_evaluation() -> None:
    p = project_ball([3, 4], 1)
    good = falsify_afp(p, Modulus.constant(5.0), [3, 4], trials=TRIALS)
    assert not good.falsified
    assert good.trials == 1

    bad = falsify_afp(p, Modulus.constant(1.0), [3, 4])
    assert bad.falsified
    assert bad.counterexample.gap == pytest.approx(5.0)


def test_resolvent_moduli_of_a_cocoercive_map(unit_map) -> None:
    psi, j = unit_map.psi(), resolvent(unit_map)
    assert not falsify_uniform_monotonicity(j, resolvent_uniform_monotonicity(psi), trials=TRIALS).falsified
    assert not falsify_quadratic_growth(j, resolvent_quadratic_growth(psi), trials=TRIALS).falsified
    assert not falsify_displacement_gap(unit_map, displacement_gap_bound(psi), trials=TRIALS).falsified
    assert not falsify_uniform_continuity(unit_map, uniform_continuity_modulus(psi), trials=TRIALS).falsified
    assert not falsify_inverse_supercoercivity(unit_map, unit_map.eta(), trials=TRIALS).falsified


def test_inverse_supercoercivity_mutant(unit_map) -> None:
    # η(N) = N/2 would allow ⟨x−y, Ax−Ay⟩ < N‖Ax−Ay‖
    assert falsify_inverse_supercoercivity(unit_map, Modulus.linear(0.5), trials=TRIALS).falsified


def test_rectangularity(unit_map, halfspaces) -> None:
    assert not falsify_rectangularity(unit_map, unit_map.eta(), 1, 1, 1, trials=TRIALS).falsified
    a = halfspaces[0]
    assert not falsify_rectangularity(a, a.eta(), 2, 2, 1, trials=TRIALS).falsified


def test_reflected_resolvent_certificates(halfspaces) -> None:
    r = reflected_resolvent(halfspaces[0])
    for report in falsify_certificates(r, trials=200):
        assert not report.falsified, report.claim


def test_same_seed_same_report() -> None:
    op, chi = negation(2), Modulus.power(2)
    first = falsify_ssne(op, chi, trials=TRIALS, seed=7)
    assert first == falsify_ssne(op, chi, trials=TRIALS, seed=7)
    assert first.seed == 7


def test_report_is_independent_of_workers() -> None:
    op, chi = project_ball([0, 0], 1), Modulus.power(2, coef=2)
    serial = falsify_ssne(op, chi, trials=TRIALS, seed=3, chunk_size=500, workers=1)
    parallel = falsify_ssne(op, chi, trials=TRIALS, seed=3, chunk_size=500, workers=4)
    assert serial == parallel


def test_heavy_tail_only_changes_the_far_pairs() -> None:
    rng_a, rng_b = np.random.default_rng(1), np.random.default_rng(1)
    xa, ya = SamplingBox(heavy_tail=True).pairs(rng_a, 100, 2)
    xb, yb = SamplingBox(heavy_tail=False).pairs(rng_b, 100, 2)
    np.testing.assert_array_equal(xa, xb)
    assert (ya != yb).any()
    assert (np.all(ya == yb, axis=1)).any()


def test_report_to_dict() -> None:
    report = falsify_ssne(negation(2), Modulus.power(2), claim='N.ssne', trials=100)
    d = report.to_dict()
    assert d['claim'] == 'N.ssne'
    assert d['falsified'] is True
    assert set(d['counterexample']) >= {'x', 'y', 'epsilon', 'gap', 'defect'}

    clean = falsify_ssne(project_ball([0, 0], 1), ssne_of_averaged(0.5), trials=100).to_dict()
    assert clean['counterexample'] is None
    assert clean['note'] == "absence of a counterexample is not a proof"


@pytest.mark.slow
@pytest.mark.parametrize('op', [
    project_ball([0, 0], 1),
    project_halfspace([1, 1], 2),
    scaled_identity(2, 0.5),
    make_averaged(0.75, negation(2)),
])
def test_certified_operators_survive_a_long_sweep(op) -> None:
    for report in falsify_certificates(op, trials=100_000, workers=4):
        assert not report.falsified, report.claim


@pytest.mark.slow
def test_cocoercive_map_survives_a_long_sweep() -> None:
    a = monotone_scaled_identity(2, 4.0)
    assert a.psi()(2.0) == pytest.approx(1.0)
    assert not falsify_inverse_uniform_monotonicity(a, a.psi(), trials=100_000, workers=4).falsified
