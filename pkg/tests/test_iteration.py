import numpy as np
import pytest

from ssnelab.core import PreconditionError
from ssnelab.core.Report import DisplacementCurve, RateStatus
from ssnelab.hilbert import compose, norm, reflected_resolvent, rotation, scaled_identity, zero_map
from ssnelab.lab import (asymptotic_regularity_check, check_rates, iterate_displacement, locate_afp_point,
                         rate_vs_reality, sigma_report)
from ssnelab.moduli import joint_afp_bound
from ssnelab.rates import INF, SigmaInputs, is_overflow

X0 = [0.0, 5.0]


def sigma_inputs(balls, b=5.0, d=6.0):
    c = [p.certificates for p in balls]
    return SigmaInputs(m=2, chis=(c[0].ssne, c[1].ssne), nus=(c[1].supercoercivity,),
                       k=joint_afp_bound([c[0].afp_bound, c[1].afp_bound]), b=b, d=d)


def test_disjoint_balls_are_asymptotically_regular(balls) -> None:
    reached, curve = asymptotic_regularity_check(list(balls), X0, n_max=200)
    assert reached
    assert curve.is_monotone()
    assert curve.n_max == 200
    assert curve.x0 == (0.0, 5.0)
    assert curve.first_index(1e-8) < 50


def test_displacement_curve_starts_at_the_first_step(balls) -> None:
    t = compose(list(balls))
    curve = iterate_displacement(t, X0, n_max=3)
    assert len(curve.values) == 4
    assert curve.values[0] == pytest.approx(norm(np.array(X0) - t(np.array(X0))))
    with pytest.raises(PreconditionError):
        iterate_displacement(t, X0, n_max=0)


def test_zero_map_gives_a_flat_curve() -> None:
    r = reflected_resolvent(zero_map(2))
    curve = iterate_displacement(r, [3.0, -1.0], n_max=20)
    assert max(curve.values) <= 1e-9
    assert curve.first_index(1e-8) == 0


def test_rotation_is_not_asymptotically_regular() -> None:
    reached, curve = asymptotic_regularity_check([rotation(np.pi / 2)], [1.0, 0.0], n_max=100)
    assert not reached
    assert curve.first_index(1e-8) is None
    assert curve.values[-1] == pytest.approx(np.sqrt(2))


def test_check_rates_statuses() -> None:
    curve = DisplacementCurve(x0=(0.0,), values=(1.0, 0.5, 0.25, 0.1, 0.0))
    report = check_rates(curve, [0.3, 0.3, 0.3, 0.3], [3, 1, 10, INF])
    assert report.status == [RateStatus.OK, RateStatus.FAILURE, RateStatus.CERTIFIED_ONLY, RateStatus.OVERFLOW]
    assert report.empirical == [2, 2, 2, 2]
    assert report.failed
    assert report.n_max == 4

    with pytest.raises(PreconditionError):
        check_rates(curve, [0.3], [1, 2])


def test_rate_report_rows() -> None:
    curve = DisplacementCurve(x0=(0.0,), values=(1.0, 0.5, 0.25))
    rows = check_rates(curve, [0.5, 0.01], [1, INF]).to_dict()['rows']
    assert rows[0] == {'epsilon': 0.5, 'certified_rate': 1, 'empirical_index': 1, 'overflow_flag': False, 'status': 'ok'}
    assert rows[1]['certified_rate'] == 'inf'
    assert rows[1]['empirical_index'] is None
    assert rows[1]['status'] == 'exceeds double range'


def test_sigma_for_disjoint_balls_is_certified_only(balls) -> None:
    report = rate_vs_reality(compose(list(balls)), X0, sigma_inputs(balls), [0.5, 0.1], n_max=2000)
    assert not report.failed
    assert all(s in (RateStatus.CERTIFIED_ONLY, RateStatus.OVERFLOW) for s in report.status)
    assert all(i is not None for i in report.empirical)
    assert all(is_overflow(v) or v > 2000 for v in report.certified)


def test_sigma_report_without_iteration(balls) -> None:
    report = sigma_report(sigma_inputs(balls), [1.0])
    assert report.status is None
    assert report.empirical is None
    assert report.inputs['m'] == 2


def test_rate_vs_reality_checks_its_inputs(balls) -> None:
    t = compose(list(balls))
    with pytest.raises(PreconditionError):
        rate_vs_reality(t, X0, sigma_inputs(balls, b=4.0), [0.5])
    with pytest.raises(PreconditionError):
        rate_vs_reality(t, X0, sigma_inputs(balls, d=1.0), [0.5])


def test_locate_afp_point(balls) -> None:
    t = compose(list(balls))
    p = locate_afp_point(t, 1e-6, x0=X0)
    assert norm(p - t(p)) <= 1e-6
    np.testing.assert_allclose(p, [3.0, 0.0], atol=1e-3)

    with pytest.raises(PreconditionError):
        locate_afp_point(t, 0.0)


def test_known_rates_bound_a_contraction() -> None:
    t = scaled_identity(2, 0.5)
    curve = iterate_displacement(t, [1.0, 0.0], n_max=60)
    # displacement is 2^-(n+1)
    report = check_rates(curve, [0.1, 1e-3], [3, 9])
    assert report.status == [RateStatus.OK, RateStatus.OK]
