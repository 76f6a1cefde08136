import math

import pytest

from ssnelab.core import PreconditionError, Provenance
from ssnelab.moduli import (Modulus, SneModulus, EmpiricalStepModulus, sne_from_ssne, ssne_of_averaged, ssne_of_composition,
                            supercoercivity_of_averaged)
from ssnelab.rates import (INF, SigmaInputs, ext_ceil, ext_mul, finite_or_inf, format_ext, gamma_rate, is_overflow,
                           phi_bound, psi_bound, psi_modulus, rate_grid, sigma_rate, theta_bound)


def test_extended_arithmetic() -> None:
    assert ext_ceil(2.1) == 3
    assert isinstance(ext_ceil(2.1), int)
    assert ext_ceil(math.inf) == INF
    assert ext_ceil(math.nan) == INF
    assert finite_or_inf(math.nan) == INF
    assert ext_mul(0, INF) == 0
    assert ext_mul(3, INF) == INF
    assert ext_mul(10**20, 10**20) == 10**40
    assert format_ext(INF) == "inf"
    assert format_ext(12) == "12"
    assert is_overflow(INF)
    assert not is_overflow(10**400)


def test_theta_bound() -> None:
    rho, theta = theta_bound(Modulus.linear(1.0), 1, 1, 1)
    assert rho == 9
    assert theta == 20

    with pytest.raises(PreconditionError):
        theta_bound(Modulus.linear(1.0), 0, 1, 1)


def test_phi_bound() -> None:
    bound = phi_bound(Modulus.power(2), Modulus.linear(1.0), Modulus.constant(4.0), 1.0)
    assert bound.b == pytest.approx(math.sqrt(336.9609375))
    assert bound.g == pytest.approx(1347.84375)
    assert bound.phi == pytest.approx(47164.22, rel=1e-5)
    assert not bound.overflow
    b, g, h, phi = bound
    assert (b, phi) == (bound.b, bound.phi)
    assert h == bound.h

    with pytest.raises(PreconditionError):
        phi_bound(Modulus.power(2), Modulus.linear(1.0), Modulus.constant(4.0), 0.0)


def test_phi_bound_grows_as_delta_shrinks() -> None:
    chi, nu, k = Modulus.power(2), Modulus.linear(1.0), Modulus.constant(4.0)
    values = [phi_bound(chi, nu, k, d).phi for d in (1.0, 0.5, 0.1)]
    assert values == sorted(values)


def test_phi_bound_overflow_is_reported() -> None:
    bound = phi_bound(Modulus.power(2), Modulus.power(40), Modulus.constant(1e10), 1e-3)
    assert bound.overflow
    assert is_overflow(bound.phi)


def test_psi_of_two_maps_is_phi() -> None:
    chi, nu, k = Modulus.power(2), Modulus.linear(1.0), Modulus.constant(4.0)
    for delta in (1.0, 0.5):
        assert psi_bound(2, [chi], [nu], k, delta) == phi_bound(chi, nu, k, delta).phi
    assert psi_modulus(2, [chi], [nu], k)(1.0) == pytest.approx(phi_bound(chi, nu, k, 1.0).phi)


def test_psi_of_three_maps_dominates_two() -> None:
    chi, nu, k = ssne_of_averaged(0.5), supercoercivity_of_averaged(0.5), Modulus.constant(1.0)
    assert psi_bound(3, [chi, chi], [nu, nu], k, 1.0) >= psi_bound(2, [chi], [nu], k, 1.0)


@pytest.mark.parametrize('m, chis, nus', [
    (1, 1, 0),
    (2, 2, 1),
    (3, 2, 1),
])
def test_psi_checks_list_lengths(m, chis, nus) -> None:
    with pytest.raises(PreconditionError):
        psi_bound(m, [Modulus.power(2)] * chis, [Modulus.linear(1.0)] * nus, Modulus.constant(1.0), 1.0)


def test_gamma_rate_hand_checked_values() -> None:
    alpha, omega = Modulus.constant(1.0), SneModulus.linear(0.5)
    assert gamma_rate(1.0, 1, 1, alpha, omega) == 2610
    assert gamma_rate(0.5, 1, 1, alpha, omega) == 21240
    assert rate_grid(lambda e: gamma_rate(e, 1, 1, alpha, omega), [1.0, 0.5]) == [2610, 21240]


def test_gamma_rate_is_nonincreasing_in_epsilon() -> None:
    alpha, omega = Modulus.constant(1.0), SneModulus.linear(0.5)
    values = [gamma_rate(e, 1, 1, alpha, omega) for e in (1.0, 0.5, 0.1, 0.01)]
    assert values == sorted(values)
    assert all(isinstance(v, int) for v in values)


def test_gamma_rate_overflow() -> None:
    omega = SneModulus.linear(0.5)
    assert gamma_rate(1.0, 1, 1, Modulus.constant(1e308), omega) == INF
    # a step modulus is infinite beyond its largest sample
    assert gamma_rate(1.0, 1, 1, EmpiricalStepModulus([(0.01, 1.0)]), omega) == INF


def test_gamma_rate_rejects_nonpositive_inputs() -> None:
    with pytest.raises(PreconditionError):
        gamma_rate(0.0, 1, 1, Modulus.constant(1.0), SneModulus.linear(0.5))
    with pytest.raises(PreconditionError):
        gamma_rate(1.0, 0, 1, Modulus.constant(1.0), SneModulus.linear(0.5))


def test_sigma_rate() -> None:
    chi, nu, k = ssne_of_averaged(0.5), supercoercivity_of_averaged(0.5), Modulus.constant(4.0, nonnegative=True)
    inputs = SigmaInputs(m=2, chis=(chi, chi), nus=(nu,), k=k, b=5, d=6)
    rate = inputs.rate(0.5)
    assert rate == sigma_rate(2, [chi, chi], [nu], k, 5, 6, 0.5)
    assert is_overflow(rate) or rate > 10_000
    assert inputs.to_dict()['m'] == 2

    with pytest.raises(PreconditionError):
        SigmaInputs(m=2, chis=(chi,), nus=(nu,), k=k, b=5, d=6)
    with pytest.raises(PreconditionError):
        SigmaInputs(m=2, chis=(chi, chi), nus=(nu,), k=k, b=0, d=6)



def test_psi_of_three_maps_nests_phi() -> None:
    chi1, chi2 = ssne_of_averaged(0.5), ssne_of_averaged(0.25)
    nu2, nu3 = supercoercivity_of_averaged(0.5), supercoercivity_of_averaged(0.25)
    k = Modulus.constant(1.0)

    # Ψ₃ = Φ(χ₁₂, ν₃, max(Φ(χ₁, ν₂, K, ·), K), δ)
    k_next = Modulus(lambda r: max(phi_bound(chi1, nu2, k, float(r)).phi, float(k(r))), Provenance('nested'))
    expected = phi_bound(ssne_of_composition([chi1, chi2]), nu3, k_next, 1.0).phi

    assert math.isfinite(expected)
    assert psi_bound(3, [chi1, chi2], [nu2, nu3], k, 1.0) == expected
    assert psi_bound(3, [chi1, chi2], [nu3, nu2], k, 1.0) != expected


def test_sigma_is_gamma_of_psi() -> None:
    chi1, chi2 = ssne_of_averaged(0.5), ssne_of_averaged(0.25)
    nu2, k = supercoercivity_of_averaged(0.5), Modulus.constant(1.0)
    alpha = Modulus(lambda r: phi_bound(chi1, nu2, k, float(r)).phi, Provenance('phi'))
    omega = sne_from_ssne(ssne_of_composition([chi1, chi2]))

    for eps in (1.0, 0.5, 0.1):
        assert sigma_rate(2, [chi1, chi2], [nu2], k, 2, 3, eps) == gamma_rate(eps, 2, 3, alpha, omega)


def test_sigma_is_nonincreasing_in_epsilon() -> None:
    chi, nu, k = ssne_of_averaged(0.5), supercoercivity_of_averaged(0.5), Modulus.constant(1.0)
    inputs = SigmaInputs(m=2, chis=(chi, chi), nus=(nu,), k=k, b=1, d=2)
    values = rate_grid(inputs.rate, [1.0, 0.5, 0.1, 0.01])
    assert values == sorted(values)
