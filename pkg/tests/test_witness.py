import numpy as np
import pytest

from ssnelab.core import PreconditionError
from ssnelab.hilbert import norm, reflected_resolvent, zero_map
from ssnelab.lab import construct_afp_witness, solve_regularized_inclusion
from ssnelab.moduli import (Modulus, joint_afp_bound, ssne_from_inverse_uniform_monotonicity,
                            supercoercivity_of_reflected_resolvent)
from ssnelab.rates import phi_bound


@pytest.mark.parametrize('delta', [1.0, 0.1])
def test_identical_maps_give_the_origin(unit_map, delta) -> None:
    k = Modulus.constant(0.0, nonnegative=True)
    w = construct_afp_witness(unit_map, unit_map, k, delta)
    assert w.norm == 0.0
    assert w.residual == 0.0
    np.testing.assert_array_equal(w.u, [0.0, 0.0])

    phi = phi_bound(ssne_from_inverse_uniform_monotonicity(unit_map.psi()),
                    supercoercivity_of_reflected_resolvent(unit_map.eta()), k, delta).phi
    assert w.holds(phi)
    assert w.residual <= delta


@pytest.mark.parametrize('delta', [1.0, 0.1])
def test_two_halfspaces(halfspaces, delta) -> None:
    a, b = halfspaces
    bounds = [reflected_resolvent(m).certificates.afp_bound for m in (a, b)]
    k = joint_afp_bound(bounds)
    assert k(delta / 4) == pytest.approx(1.0)

    w = construct_afp_witness(a, b, k, delta)
    phi = phi_bound(ssne_from_inverse_uniform_monotonicity(a.psi()),
                    supercoercivity_of_reflected_resolvent(b.eta()), k, delta).phi

    assert w.residual <= delta
    assert w.norm <= phi
    assert w.holds(phi, slack=4e-10)
    assert 0 < w.regularization <= 0.5

    # both penalties vanish near (1, 1)
    np.testing.assert_allclose(w.p, [1.0, 1.0], atol=0.05)

    row = w.to_dict()
    assert row['delta'] == delta
    assert row['norm'] == pytest.approx(norm(w.p))


def test_regularized_inclusion(halfspaces) -> None:
    a, b = halfspaces
    u = solve_regularized_inclusion(a, b, [0.0, 0.0], 0.25)
    residual = 0.25 * u + a(u) + b(u)
    assert norm(residual) <= 1e-10
    np.testing.assert_allclose(u, [0.8, 0.8], atol=1e-9)

    with pytest.raises(PreconditionError):
        solve_regularized_inclusion(a, b, [0.0, 0.0], 0.0)


def test_given_fixed_points_are_checked(halfspaces) -> None:
    a, b = halfspaces
    k = Modulus.constant(1.0)
    with pytest.raises(PreconditionError):
        construct_afp_witness(a, b, k, 1.0, p1=[10.0, 0.0])
    with pytest.raises(PreconditionError):
        construct_afp_witness(a, b, k, 1.0, p1=[0.0, 0.0])
    with pytest.raises(PreconditionError):
        construct_afp_witness(a, b, k, 0.0)


def test_witness_needs_a_supercoercivity_modulus(halfspaces) -> None:
    with pytest.raises(PreconditionError):
        construct_afp_witness(halfspaces[0], zero_map(2), Modulus.constant(1.0), 1.0)
