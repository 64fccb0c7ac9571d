import pytest

from prodkern.errors import DomainError
from prodkern.julia import julia_polynomial
from prodkern.kernels import eval_kernel
from prodkern.models import (
    bergman_rep,
    julia_rep,
    sample_in_domain,
    standard_cuntz_grid,
    szego_rep,
)
from prodkern.operators import (
    VARIANT_SESQUILINEAR,
    CuntzRepresentation,
    KernelSection,
    PointFunction,
    SymbolFamily,
    apply_S,
    apply_S_star_preimage,
    apply_S_star_section,
    symbol_sum,
    verify_orthogonality,
    verify_sum_identity,
    verify_symbol_sums,
)
from prodkern.rng import Lcg


def test_apply_S_constant_symbol_fixes_one():
    rep = julia_rep()
    out = apply_S(rep, 0, PointFunction.one())
    for z in (0.2, -0.4 + 0.1j, 1.5):
        assert out(z) == pytest.approx(1.0)


def test_apply_S_coordinate_symbol_on_one():
    rep = julia_rep()
    out = apply_S(rep, 1, PointFunction.one())
    for z in (0.2, -0.4 + 0.1j):
        assert out(z) == pytest.approx(z)


def test_apply_S_coordinate_twice_gives_quintic():
    rep = julia_rep()
    out = apply_S(rep, 1, PointFunction.coordinate())
    for z in (0.3, 0.1 - 0.2j, -0.5):
        z = complex(z)
        assert out(z) == pytest.approx(z**5 - 2.0 * z**3, rel=1e-13)


def test_apply_S_index_out_of_range():
    with pytest.raises(IndexError):
        apply_S(julia_rep(), 2, PointFunction.one())


def test_adjoint_preimage_constant_symbol_averages_to_one():
    rep = julia_rep()
    out = apply_S_star_preimage(rep, 0, PointFunction.one())
    for z in (0.2, 1.0 + 1.0j):
        assert out(z) == pytest.approx(1.0, abs=1e-12)


def test_adjoint_preimage_kills_odd_symbol():
    # the root sum of the quartic vanishes
    rep = julia_rep()
    out = apply_S_star_preimage(rep, 1, PointFunction.one())
    rng = Lcg(3)
    for _ in range(25):
        assert abs(out(rng.complex_in_disk(2.0))) <= 1e-12


def test_adjoint_preimage_coordinate_recovers_one():
    # the squared root sum equals the preimage count
    rep = julia_rep()
    out = apply_S_star_preimage(rep, 1, PointFunction.coordinate())
    rng = Lcg(4)
    for _ in range(25):
        assert out(rng.complex_in_disk(2.0)) == pytest.approx(1.0, abs=1e-12)


def test_section_rule_moves_centers_and_weights():
    rep = julia_rep()
    section = KernelSection(rep.model, ((1.0, 0.5),))
    image = apply_S_star_section(rep, 1, section)
    (coeff, center), = image.terms
    assert coeff == pytest.approx(0.5)
    assert center == pytest.approx(-0.4375)


def test_section_rule_constant_symbol_keeps_coefficient():
    rep = julia_rep()
    section = KernelSection(rep.model, ((2.0 + 1.0j, 0.3),))
    image = apply_S_star_section(rep, 0, section)
    (coeff, center), = image.terms
    assert coeff == pytest.approx(2.0 + 1.0j)
    assert center == pytest.approx(julia_polynomial(0.3))


def test_section_rule_zero_symbol_value_zeroes_coefficient():
    rep = julia_rep()
    section = KernelSection(rep.model, ((3.0, 0j),))
    image = apply_S_star_section(rep, 1, section)
    (coeff, _), = image.terms
    assert coeff == 0j


def test_section_rejects_out_of_domain_center():
    with pytest.raises(DomainError):
        KernelSection(julia_rep().model, ((1.0, 2.0),))


@pytest.mark.parametrize("factory", [julia_rep, szego_rep, bergman_rep])
def test_symbols_reproduce_factor_kernel(factory):
    rep = factory()
    rng = Lcg(7)
    for _ in range(100):
        z = rng.complex_in_disk(0.9)
        w = rng.complex_in_disk(0.9)
        assert abs(symbol_sum(rep, z, w) - rep.model.factor.evaluate(z, w)) <= 1e-12


def test_sum_identity_trivial_at_origin():
    assert verify_sum_identity(julia_rep(), [0j]) == 0.0


def test_sum_identity_julia():
    points = sample_in_domain(julia_rep().model, Lcg(8), 20, 0.4)
    assert verify_sum_identity(julia_rep(), points) <= 1e-8


def test_sum_identity_szego():
    rng = Lcg(9)
    points = [rng.complex_in_disk(0.8) for _ in range(20)]
    assert verify_sum_identity(szego_rep(), points) <= 1e-10


def _julia_probes(rep):
    return [
        PointFunction.one(),
        PointFunction.coordinate(),
        KernelSection(rep.model, ((1.0, 0.2),)).as_point_function(),
    ]


def test_orthogonality_julia():
    rep = julia_rep()
    grid = standard_cuntz_grid("julia", Lcg(10), 50)
    residuals = verify_orthogonality(rep, grid, _julia_probes(rep))
    assert residuals.shape == (2, 2)
    assert residuals.max() <= 1e-9


def test_orthogonality_szego_on_circle():
    rep = szego_rep()
    grid = standard_cuntz_grid("szego", Lcg(11), 50)
    probes = [PointFunction.one(), PointFunction.coordinate(), PointFunction(lambda z: z * z)]
    assert verify_orthogonality(rep, grid, probes).max() <= 1e-12


def test_orthogonality_bergman_negative_witness():
    rep = bergman_rep()
    grid = standard_cuntz_grid("bergman", Lcg(12), 50)
    probes = [PointFunction.one(), PointFunction.coordinate()]
    assert verify_orthogonality(rep, grid, probes).max() >= 0.01


def test_symbol_sums_julia_bilinear():
    rng = Lcg(13)
    points = [rng.complex_in_disk(2.0) for _ in range(1000)]
    assert verify_symbol_sums(julia_rep(), points).max() <= 1e-9


def test_symbol_sums_julia_sesquilinear_variant_fails_off_axis():
    base = julia_rep()
    forced = CuntzRepresentation(
        symbols=SymbolFamily(functions=base.symbols.functions, variant=VARIANT_SESQUILINEAR),
        model=base.model,
    )
    residuals = verify_symbol_sums(forced, [1.0 + 1.0j])
    assert residuals[1, 1] >= 0.1


def test_symbol_sums_constant_symbol_always_exact():
    for rep in (julia_rep(), szego_rep()):
        residuals = verify_symbol_sums(rep, [0.3 + 0.4j, -0.2, 1.1j])
        assert residuals[0, 0] <= 1e-14


def test_adjoint_section_rule_agrees_with_preimage_average():
    rep = julia_rep()
    rng = Lcg(14)
    for _ in range(100):
        terms = tuple(
            (rng.complex_in_rect(-1, 1, -1, 1), rng.complex_in_disk(0.4))
            for _ in range(1 + int(rng.uniform() * 3))
        )
        section = KernelSection(rep.model, terms)
        j = int(rng.uniform() * 2)
        by_rule = apply_S_star_section(rep, j, section)
        by_average = apply_S_star_preimage(rep, j, section.as_point_function())
        z = rng.complex_in_disk(0.4)
        left = by_rule.evaluate(z)
        right = by_average(z)
        assert abs(left - right) <= 1e-8 * max(1.0, abs(left))


def test_adjoint_duality_pairing():
    # <S_j* K_w, K_v> computed through the section rule matches
    # conj((S_j K_v)(w)) computed through the operator itself
    rep = julia_rep()
    rng = Lcg(15)
    for _ in range(40):
        w = rng.complex_in_disk(0.4)
        v = rng.complex_in_disk(0.4)
        j = int(rng.uniform() * 2)
        section = apply_S_star_section(rep, j, KernelSection(rep.model, ((1.0, w),)))
        (coeff, center), = section.terms
        left = coeff * eval_kernel(rep.model, v, center).value
        s_kv = apply_S(rep, j, KernelSection(rep.model, ((1.0, v),)).as_point_function())
        right = s_kv(w).conjugate()
        assert abs(left - right) <= 1e-10 * max(1.0, abs(left))


def test_point_function_algebra():
    f = PointFunction.coordinate()
    g = PointFunction.constant(2.0)
    h = (f + g) * f - 3.0
    z = 0.7 - 0.2j
    assert h(z) == pytest.approx((z + 2.0) * z - 3.0)
    composed = f.compose(lambda u: u * u)
    assert composed(z) == pytest.approx(z * z)
