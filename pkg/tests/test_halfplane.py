import math

import pytest

from prodkern.errors import DomainError, RankDeficiencyError
from prodkern.halfplane import (
    HerglotzModel,
    apply_C_star_on_kernel,
    hardy_basis,
    hardy_decompose,
    hardy_kernel_exact,
    hardy_kernel_partial,
    hardy_ratio,
    lphi_kernel,
    lphi_kernel_quotient,
    verify_paris,
    verify_phi2,
    verify_phi_identity,
)
from prodkern.rng import Lcg

INVERSE = HerglotzModel(masses=(1.0,), poles=(0.0,))  # phi(z) = 1/z


def random_model(rng: Lcg) -> HerglotzModel:
    count = 1 + int(rng.uniform() * 5.0)
    poles = []
    while len(poles) < count:
        t = rng.uniform_in(-3.0, 3.0)
        if all(abs(t - o) >= 0.5 for o in poles):
            poles.append(t)
    masses = [rng.uniform_in(0.2, 2.0) for _ in range(count)]
    return HerglotzModel(masses=tuple(masses), poles=tuple(poles))


def off_axis_pair(rng: Lcg):
    def point():
        re = rng.uniform_in(0.2, 1.5)
        if rng.uniform() < 0.5:
            re = -re
        return complex(re, rng.uniform_in(-2.0, 2.0))

    while True:
        z, w = point(), point()
        if abs(z + w.conjugate()) >= 0.25:
            return z, w


def test_hardy_basis_values():
    assert hardy_basis(0, 1.0) == pytest.approx(1.0 / (2.0 * math.sqrt(math.pi)))
    assert hardy_basis(1, 2.0) == pytest.approx(1.0 / (9.0 * math.sqrt(math.pi)))
    for n in (1, 2, 7):
        assert hardy_basis(n, 1.0) == 0j


def test_hardy_basis_domain():
    with pytest.raises(DomainError):
        hardy_basis(0, -1.0)
    with pytest.raises(DomainError):
        hardy_basis(0, 0.5j)
    with pytest.raises(ValueError):
        hardy_basis(-1, 1.0)


def test_hardy_partial_single_term_cases():
    # at z = w = 1 every higher term vanishes
    assert hardy_kernel_partial(1.0, 1.0, 0) == pytest.approx(1.0 / (4.0 * math.pi))
    assert hardy_kernel_partial(1.0, 3.0, 0) == pytest.approx(hardy_kernel_exact(1.0, 3.0))


def test_hardy_partial_converges_geometrically():
    z = w = 2.0
    exact = hardy_kernel_exact(z, w)
    assert abs(hardy_kernel_partial(z, w, 40) - exact) <= 1e-12 * abs(exact)
    err_short = abs(hardy_kernel_partial(z, w, 3) - exact)
    err_long = abs(hardy_kernel_partial(z, w, 9) - exact)
    rate = hardy_ratio(z) * hardy_ratio(w)
    assert err_long <= err_short * rate**5 * 1.01


def test_herglotz_validation():
    with pytest.raises(ValueError):
        HerglotzModel(masses=(1.0, -1.0), poles=(0.0, 1.0))
    with pytest.raises(ValueError):
        HerglotzModel(masses=(1.0, 1.0), poles=(0.0, 0.0))
    with pytest.raises(ValueError):
        HerglotzModel(masses=(1.0,), poles=(0.0,), a=1.0)
    with pytest.raises(ValueError):
        HerglotzModel(masses=(1.0,), poles=(0.0,), b=-2.0)


def test_phi_has_nonnegative_real_part_on_right_half_plane():
    rng = Lcg(41)
    for _ in range(20):
        model = random_model(rng)
        for _p in range(10):
            z = complex(rng.uniform_in(0.05, 3.0), rng.uniform_in(-3.0, 3.0))
            assert model.phi(z).real >= -1e-12


def test_inverse_model_phi():
    assert INVERSE.phi(2.0) == pytest.approx(0.5)
    assert INVERSE.phi(1.0 + 1.0j) == pytest.approx(1.0 / (1.0 + 1.0j))


def test_lphi_kernel_values():
    assert lphi_kernel(INVERSE, 1.0, 1.0) == pytest.approx(1.0)
    assert lphi_kernel(INVERSE, 2.0, 1.0) == pytest.approx(0.5)
    assert lphi_kernel_quotient(INVERSE, 2.0, 1.0) == pytest.approx(0.5)


def test_lphi_quotient_rejects_antidiagonal_pair():
    z = 1.0 + 1.0j
    w = -z.conjugate()
    with pytest.raises(DomainError):
        lphi_kernel_quotient(INVERSE, z, w)
    # the sum form stays finite at the same pair
    assert abs(lphi_kernel(INVERSE, z, w)) < math.inf


def test_phi_identity_random_models():
    rng = Lcg(42)
    for _ in range(20):
        model = random_model(rng)
        for _p in range(25):
            z, w = off_axis_pair(rng)
            assert verify_phi_identity(model, z, w) <= 1e-12


def test_phi2_one_dimensional():
    assert verify_phi2(INVERSE, (1.3 + 0.2j,)) <= 1e-12


def test_phi2_three_dimensional():
    model = HerglotzModel(masses=(1.0, 2.0, 0.5), poles=(-1.0, 0.0, 2.0))
    probes = [complex(0.3, -t) for t in model.poles]
    assert verify_phi2(model, probes) <= 1e-10


def test_phi2_duplicate_probes_rank_error():
    model = HerglotzModel(masses=(1.0, 2.0), poles=(0.0, 1.0))
    with pytest.raises(RankDeficiencyError):
        verify_phi2(model, (1.0 + 0.5j, 1.0 + 0.5j))


def test_phi2_wrong_probe_count():
    with pytest.raises(ValueError):
        verify_phi2(INVERSE, (1.0, 2.0))


def test_paris_single_hardy_term_cases():
    # phi(1) = 1 makes every Hardy term beyond the first vanish
    assert verify_paris(INVERSE, 1.0, 1.0, 0) <= 1e-15
    assert verify_paris(INVERSE, 2.0, 1.0, 0) <= 1e-15


def test_paris_truncation_converges():
    assert verify_paris(INVERSE, 2.0, 3.0, 200) <= 1e-12
    # visible geometric decay at a pair with slower rate
    res_short = verify_paris(INVERSE, 5.0, 5.0, 5)
    res_long = verify_paris(INVERSE, 5.0, 5.0, 25)
    assert res_long < res_short * 1e-3


def test_paris_domain_checks():
    with pytest.raises(DomainError):
        verify_paris(INVERSE, -1.0, 1.0, 10)


def test_hardy_decompose_single_kernel():
    _, residual = hardy_decompose(((1.0, 1.0),), INVERSE)
    assert residual <= 1e-12


def test_hardy_decompose_zero_section():
    _, residual = hardy_decompose(((0j, 1.0),), INVERSE)
    assert residual == 0.0


def test_hardy_decompose_empty_raises():
    with pytest.raises(ValueError):
        hardy_decompose((), INVERSE)


def test_hardy_decompose_two_terms_two_slots():
    model = HerglotzModel(masses=(1.0, 1.0), poles=(-1.0, 1.0))
    components, residual = hardy_decompose(((2.0, 1.0), (-1.0, 2.0)), model)
    assert len(components) == 2
    assert residual <= 1e-10


def test_hardy_decompose_random_sections():
    rng = Lcg(43)
    for _ in range(50):
        model = random_model(rng)
        terms = tuple(
            (
                rng.complex_in_rect(-1, 1, -1, 1),
                complex(rng.uniform_in(0.3, 2.3), rng.uniform_in(-1.5, 1.5)),
            )
            for _ in range(1 + int(rng.uniform() * 4))
        )
        _, residual = hardy_decompose(terms, model)
        assert residual <= 1e-10


def test_c_star_section_rule():
    coeff, center = apply_C_star_on_kernel(INVERSE, 1, 1.0)
    assert coeff == pytest.approx(-1j)
    assert center == pytest.approx(1.0)
    coeff, center = apply_C_star_on_kernel(INVERSE, 1, 2.0)
    assert center == pytest.approx(0.5)
    assert abs(coeff) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        apply_C_star_on_kernel(INVERSE, 1, -1.0)


def test_c_family_resolves_identity_on_kernels():
    # sum_j (C_j C_j* k_w)(z) rebuilt through the truncated Hardy sum
    model = HerglotzModel(masses=(1.0, 1.0), poles=(-1.0, 1.0))
    rng = Lcg(44)
    for _ in range(20):
        z = complex(rng.uniform_in(0.4, 2.5), rng.uniform_in(-1.5, 1.5))
        w = complex(rng.uniform_in(0.4, 2.5), rng.uniform_in(-1.5, 1.5))
        if hardy_ratio(model.phi(z)) * hardy_ratio(model.phi(w)) > 0.9:
            continue
        lhs = 1.0 / (z + w.conjugate())
        total = 0j
        for j in range(1, model.count + 1):
            coeff, center = apply_C_star_on_kernel(model, j, w)
            total += (
                coeff
                * model.basis_value(j, z)
                * 2.0
                * math.pi
                * hardy_kernel_partial(model.phi(z), center, 300)
            )
        assert abs(total - lhs) <= 1e-10 * max(1.0, abs(lhs))
