import math

import numpy as np
import pytest

from prodkern.errors import DomainError
from prodkern.iteration import CONVERGED, classify_orbit
from prodkern.julia import (
    BasinImage,
    basin_to_pgm,
    basin_to_ppm,
    fatou_classify,
    julia_kernel,
    julia_map,
    julia_polynomial,
    quadratic_step,
    quartic_preimages,
    render_basin,
    verify_juliarel,
)
from prodkern.rng import Lcg

SQRT2 = math.sqrt(2.0)


def test_preimages_of_zero():
    roots = quartic_preimages(0j)
    assert roots == pytest.approx([-SQRT2, 0.0, 0.0, SQRT2])


def test_preimages_at_branch_point():
    assert quartic_preimages(-1.0) == pytest.approx([-1.0, -1.0, 1.0, 1.0])


def test_preimages_of_eight():
    roots = quartic_preimages(8.0)
    assert any(abs(r - 2.0) <= 1e-12 for r in roots)
    assert any(abs(r + 2.0) <= 1e-12 for r in roots)
    assert any(abs(r - 1j * SQRT2) <= 1e-12 for r in roots)


def test_quartic_is_second_iterate_of_quadratic():
    rng = Lcg(51)
    for _ in range(200):
        z = rng.complex_in_disk(2.0)
        direct = julia_polynomial(z)
        composed = quadratic_step(quadratic_step(z))
        assert abs(direct - composed) <= 1e-12 * max(1.0, abs(direct))


def test_contraction_certificate_inside_threshold():
    # |R(z)| <= (19/27) |z| on |z| < 1/3: the factor the classifier certifies
    rng = Lcg(58)
    for _ in range(500):
        z = rng.complex_in_disk(1.0 / 3.0)
        assert abs(julia_polynomial(z)) <= (19.0 / 27.0) * abs(z) + 1e-18


def test_escape_certificate_outside_threshold():
    # |z| >= 2 implies |R(z)| >= 4 |z|: moduli grow monotonically
    rng = Lcg(59)
    for _ in range(200):
        z = rng.unit_circle_point() * rng.uniform_in(2.0, 3.0)
        assert abs(julia_polynomial(z)) >= 4.0 * abs(z) - 1e-9


def test_root_sums_at_examples():
    # roots of x^4 - 2 x^2 = 0: sum 0, squares sum to 4
    s1, s2, mixed = verify_juliarel(0j)
    assert s1 <= 1e-15 and s2 <= 1e-15 and mixed <= 1e-15
    s1, s2, _ = verify_juliarel(-1.0)
    assert s1 <= 1e-15 and s2 <= 1e-15


def test_root_sums_random_property():
    # the coefficient of x^3 vanishes (sum of roots 0) and the x^2
    # coefficient is -2 (squares sum to 0 - 2*(-2) = 4): checked numerically
    rng = Lcg(52)
    for _ in range(1000):
        z = rng.complex_in_disk(2.0)
        s1, s2, mixed = verify_juliarel(z)
        assert s1 <= 1e-9
        assert s2 <= 1e-9
        assert mixed <= 1e-9


def test_kernel_trivial_center():
    assert julia_kernel(0j, 0.3).value == pytest.approx(1.0)


def test_kernel_against_orbit_product():
    value = julia_kernel(0.3, 0.3)
    direct = 1.0
    z = 0.3
    for _ in range(200):
        direct *= 1.0 + abs(z) ** 2
        z = julia_polynomial(z)
    assert value.value.real == pytest.approx(direct, rel=1e-12)
    assert value.tail_bound <= 1e-12


def test_kernel_hermitian():
    rng = Lcg(53)
    for _ in range(50):
        z = rng.complex_in_disk(0.4)
        w = rng.complex_in_disk(0.4)
        assert julia_kernel(z, w).value == pytest.approx(
            julia_kernel(w, z).value.conjugate(), rel=1e-13, abs=1e-13
        )


def test_kernel_domain_error():
    with pytest.raises(DomainError):
        julia_kernel(2.0, 0.1)


def test_fatou_classify_examples():
    assert fatou_classify(0.5) == "converged"
    assert fatou_classify(1.5) == "converged"
    assert fatou_classify(2.0 + 0j) == "escaped"
    assert fatou_classify(-1.0) == "unresolved"


def test_basin_preimage_invariance():
    # preimages of converged points are converged
    mapping = julia_map()
    rng = Lcg(54)
    checked = 0
    while checked < 500:
        z = rng.complex_in_disk(1.5)
        if classify_orbit(mapping, z, 300).status != CONVERGED:
            continue
        for root in quartic_preimages(z):
            assert classify_orbit(mapping, root, 400).status == CONVERGED
        checked += 4


def test_render_single_pixel_at_origin():
    image = render_basin((-0.01, 0.01, -0.01, 0.01), 1, 1, color_mode="kernel")
    assert image.status[0, 0] == 1
    assert image.kernel_diag[0, 0] == pytest.approx(1.0, abs=1e-8)


def test_render_corner_pixel_escapes():
    image = render_basin((-2, 2, -2, 2), 100, 100, max_steps=200)
    # pixel nearest (2, 2): top row, last column
    assert image.status[0, 99] == 2


def test_render_matches_scalar_classification():
    image = render_basin((-2, 2, -2, 2), 25, 25, max_steps=150)
    mapping = julia_map()
    names = {0: "unresolved", 1: "converged", 2: "escaped"}
    for r in range(25):
        for c in range(25):
            re = -2.0 + (c + 0.5) * (4.0 / 25)
            im = 2.0 - (r + 0.5) * (4.0 / 25)
            report = classify_orbit(mapping, complex(re, im), 150)
            assert report.status == names[image.status[r, c]]
            assert report.steps_used == image.steps[r, c]


def test_render_deterministic_across_threads():
    kw = dict(rect=(-2, 2, -2, 2), width=64, height=48, max_steps=120)
    one = render_basin(threads=1, **kw)
    four = render_basin(threads=4, **kw)
    assert np.array_equal(one.status, four.status)
    assert np.array_equal(one.steps, four.steps)
    assert basin_to_pgm(one) == basin_to_pgm(four)


def test_pgm_layout():
    image = render_basin((-2, 2, -2, 2), 10, 7, max_steps=60)
    payload = basin_to_pgm(image)
    assert payload.startswith(b"P5\n10 7\n255\n")
    assert len(payload) == len(b"P5\n10 7\n255\n") + 70
    depth = basin_to_pgm(image, color_mode="depth")
    assert depth.startswith(b"P5\n10 7\n255\n")


def test_ppm_layout():
    image = render_basin((-1, 1, -1, 1), 8, 8, max_steps=60, color_mode="kernel")
    payload = basin_to_ppm(image)
    assert payload.startswith(b"P6\n8 8\n255\n")
    assert len(payload) == len(b"P6\n8 8\n255\n") + 3 * 64


def test_ppm_requires_kernel_mode():
    image = render_basin((-1, 1, -1, 1), 4, 4, max_steps=30)
    with pytest.raises(ValueError):
        basin_to_ppm(image)


def test_render_validates_parameters():
    with pytest.raises(ValueError):
        render_basin((-1, 1, -1, 1), 0, 4)
    with pytest.raises(ValueError):
        render_basin((1, -1, -1, 1), 4, 4)
    with pytest.raises(ValueError):
        render_basin((-1, 1, -1, 1), 4, 4, color_mode="rainbow")


def test_basin_image_is_plain_data():
    image = render_basin((-1, 1, -1, 1), 4, 4, max_steps=30)
    assert isinstance(image, BasinImage)
    assert image.rect == (-1.0, 1.0, -1.0, 1.0)
    assert image.kernel_diag is None
