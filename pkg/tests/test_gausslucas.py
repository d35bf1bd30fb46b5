"""Complex root finding, hull geometry, and the contraction ratio checks."""

import math

import numpy as np
import pytest

from subforge.errors import (
    BoundViolation,
    CRangeError,
    DegenerateHull,
    DegreeTooSmall,
    InputError,
    SpectrumOutOfRange,
)
from subforge.gausslucas import (
    ComplexPoly,
    HullReport,
    RootSet,
    check_chain,
    check_pereira,
    complex_roots,
    derivative,
    directional_spread,
    disc_containment,
    gl_area_ratio,
    hull,
    hull_contains,
    majorizes,
    real_part_poly,
    rr_spread_ratio,
    sharpness_experiment,
)
from subforge.realroot import RealRootedPoly

pc = np.polynomial.polynomial


def cube_roots_poly(m: int = 1) -> ComplexPoly:
    # (z^3 - 1)^m by binomial expansion, exact integer coefficients
    coeffs = [0j] * (3 * m + 1)
    for j in range(m + 1):
        coeffs[3 * j] = complex(math.comb(m, j) * (-1) ** (m - j))
    return ComplexPoly(tuple(coeffs))


def test_complex_poly_normalization():
    p = ComplexPoly((1.0, 2.0, 0.0, 0.0))
    assert p.degree == 1
    assert p.coeffs == (1 + 0j, 2 + 0j)
    assert p(3.0) == 7 + 0j
    with pytest.raises(InputError):
        ComplexPoly(())
    with pytest.raises(InputError):
        ComplexPoly((0.0, 0.0))


def test_derivative_exact():
    p = ComplexPoly((-1.0, 0.0, 0.0, 1.0))  # z^3 - 1
    assert derivative(p).coeffs == (0j, 0j, 3 + 0j)
    assert derivative(p, 3).coeffs == (6 + 0j,)
    with pytest.raises(DegreeTooSmall):
        derivative(p, 4)
    with pytest.raises(InputError):
        derivative(p, -1)


def test_complex_roots_quadratic():
    rs = complex_roots(ComplexPoly((1.0, 0.0, 1.0)))  # z^2 + 1
    assert rs.points == pytest.approx((-1j, 1j), abs=1e-12)
    assert rs.residual <= 1e-12


def test_complex_roots_cube():
    rs = complex_roots(cube_roots_poly())
    expect = sorted((np.exp(2j * np.pi * j / 3) for j in range(3)),
                    key=lambda z: (z.real, z.imag))
    assert np.max(np.abs(np.asarray(rs.points) - np.asarray(expect))) <= 1e-10


def test_complex_roots_multiple_root():
    # (z-2)^4: individual roots smear like residual^(1/4), while the
    # symmetric cluster keeps its mean and product orders tighter
    coeffs = tuple(pc.polyfromroots([2.0] * 4))
    rs = complex_roots(ComplexPoly(coeffs))
    assert abs(np.mean(rs.points) - 2.0) <= 1e-6
    assert abs(np.prod(rs.points) - 16.0) <= 1e-5
    assert np.max(np.abs(np.asarray(rs.points) - 2.0)) <= 1e-2


def test_complex_roots_deterministic():
    coeffs = tuple(pc.polyfromroots([0.3 + 0.1j, -0.5, 0.9j, -0.2 - 0.7j]))
    a = complex_roots(ComplexPoly(coeffs))
    b = complex_roots(ComplexPoly(coeffs))
    assert a.points == b.points
    assert a.residual == b.residual


def test_complex_roots_random_reconstruction():
    rng = np.random.default_rng(41)
    for _ in range(10):
        n = int(rng.integers(2, 12))
        zs = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        rs = complex_roots(ComplexPoly(tuple(pc.polyfromroots(zs))))
        got = sorted(rs.points, key=lambda z: (z.real, z.imag))
        want = sorted(zs, key=lambda z: (z.real, z.imag))
        assert np.max(np.abs(np.asarray(got) - np.asarray(want))) <= 1e-6


def test_real_part_poly():
    p = ComplexPoly(tuple(pc.polyfromroots([1 + 2j, 1 - 2j, 3.0])))
    r = real_part_poly(p)
    assert r.roots == pytest.approx((1.0, 1.0, 3.0), abs=1e-8)


def test_majorizes_basic():
    assert majorizes([1.0, 1.0], [2.0, 0.0])
    assert not majorizes([2.0, 0.0], [1.0, 1.0])
    assert majorizes([0.5, 0.5], [0.5, 0.5])
    assert not majorizes([1.0, 0.0], [0.5, 0.5])  # prefix 1.0 > 0.5
    with pytest.raises(InputError):
        majorizes([1.0], [0.5, 0.5])


def test_check_pereira_cube():
    # roots of D(z^3-1) are {0,0}; derivative of Re-roots poly gives {-1/2, 1/2}
    assert check_pereira(cube_roots_poly())
    with pytest.raises(DegreeTooSmall):
        check_pereira(ComplexPoly((1.0, 1.0)))


def test_check_chain_random():
    rng = np.random.default_rng(47)
    for _ in range(10):
        n = int(rng.integers(4, 10))
        zs = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
        p = ComplexPoly(tuple(pc.polyfromroots(zs)))
        k = int(rng.integers(1, n - 1))
        assert check_chain(p, k)
    with pytest.raises(InputError):
        check_chain(p, 0)
    with pytest.raises(InputError):
        check_chain(p, p.degree)


def test_check_chain_k1_matches_pereira():
    zs = [0.4 + 0.3j, -0.6, 0.1 - 0.8j, 0.7j]
    p = ComplexPoly(tuple(pc.polyfromroots(zs)))
    assert check_chain(p, 1) == check_pereira(p)


def test_hull_triangle():
    # cube roots of unity: equilateral triangle of area 3 sqrt(3) / 4
    pts = [np.exp(2j * np.pi * j / 3) for j in range(3)]
    h = hull(pts)
    assert not h.degenerate
    assert len(h.hull_vertices) == 3
    assert h.area == pytest.approx(3 * math.sqrt(3) / 4, abs=1e-12)
    assert abs(h.centroid) <= 1e-12


def test_hull_square_with_interior_point():
    pts = [0, 2, 2j, 2 + 2j, 1 + 1j]
    h = hull(pts)
    assert len(h.hull_vertices) == 4
    assert h.area == pytest.approx(4.0, abs=1e-12)
    # centroid is the mean of all inputs, interior point included
    assert h.centroid == pytest.approx((5 + 5j) / 5, abs=1e-12)
    assert h.width(0.0) == pytest.approx(2.0, abs=1e-12)
    assert h.span == pytest.approx(2 * math.sqrt(2), abs=1e-12)


def test_hull_counterclockwise_and_strict():
    rng = np.random.default_rng(53)
    pts = rng.uniform(-1, 1, 40) + 1j * rng.uniform(-1, 1, 40)
    h = hull(pts)
    verts = h.hull_vertices
    m = len(verts)
    for i in range(m):
        a, b, c = verts[i], verts[(i + 1) % m], verts[(i + 2) % m]
        turn = (b.real - a.real) * (c.imag - a.imag) - (b.imag - a.imag) * (c.real - a.real)
        assert turn > 0.0  # strictly convex, counterclockwise


def test_hull_degenerate_cases():
    h1 = hull([1 + 1j, 1 + 1j])
    assert h1.degenerate and h1.area == 0.0 and h1.hull_vertices == (1 + 1j,)
    h2 = hull([0.0, 1.0, 2.0, 3.0])
    assert h2.degenerate and h2.area == 0.0
    assert h2.hull_vertices == (0 + 0j, 3 + 0j)
    with pytest.raises(InputError):
        hull([])


def test_hull_contains():
    h = hull([0, 2, 2j, 2 + 2j])
    assert hull_contains(h, 1 + 1j)
    assert hull_contains(h, 0.0)  # vertex counts as inside
    assert not hull_contains(h, 3 + 1j)
    seg = hull([0.0, 1.0])
    assert hull_contains(seg, 0.5)
    assert not hull_contains(seg, 0.5 + 0.1j)


def test_directional_spread():
    rs = RootSet((-1 + 0j, 1 + 0j), 0.0)
    assert directional_spread(rs, 0.0) == pytest.approx(2.0, abs=1e-12)
    assert directional_spread(rs, math.pi / 2) == pytest.approx(0.0, abs=1e-12)
    pts = [np.exp(2j * np.pi * j / 3) for j in range(3)]
    assert directional_spread(pts, 0.0) == pytest.approx(1.5, abs=1e-12)


def test_gl_area_ratio_fourth_roots():
    p = ComplexPoly(tuple(pc.polyfromroots([1, -1, 1j, -1j])))
    ratio, bound = gl_area_ratio(p, 0.5)
    assert bound == pytest.approx(1.0, abs=1e-12)
    assert 0.0 <= ratio <= 1.0 + 1e-9
    with pytest.raises(CRangeError):
        gl_area_ratio(p, 0.4)
    with pytest.raises(DegreeTooSmall):
        gl_area_ratio(ComplexPoly(tuple(pc.polyfromroots([1, -1, 1j]))), 0.5)


def test_gl_area_ratio_cube_family():
    # (z^3-1)^10 at c = 2/3 sits near the sharpness value (1/3)^(4/3)
    ratio, bound = gl_area_ratio(cube_roots_poly(10), 2.0 / 3.0)
    assert bound == pytest.approx(8.0 / 9.0, abs=1e-12)
    assert (1.0 / 3.0) ** (4.0 / 3.0) - 0.05 <= ratio <= bound + 1e-9


def test_gl_area_ratio_random_disc():
    rng = np.random.default_rng(59)
    zs = np.sqrt(rng.uniform(0, 1, 24)) * np.exp(2j * np.pi * rng.uniform(0, 1, 24))
    p = ComplexPoly(tuple(pc.polyfromroots(zs)))
    ratio, bound = gl_area_ratio(p, 0.75)
    assert bound == pytest.approx(0.75, abs=1e-12)
    assert ratio <= bound + 1e-6


def test_gl_area_ratio_derivative_exhausts_degree():
    # c = 0.9 with degree 8 rounds up to k = 8: empty root set, zero area
    rng = np.random.default_rng(61)
    zs = 0.5 * (rng.uniform(-1, 1, 8) + 1j * rng.uniform(-1, 1, 8))
    ratio, bound = gl_area_ratio(ComplexPoly(tuple(pc.polyfromroots(zs))), 0.9)
    assert ratio == 0.0
    assert bound == pytest.approx(4 * (0.9 - 0.81), abs=1e-12)


def test_gl_area_degenerate_input():
    p = ComplexPoly(tuple(pc.polyfromroots([0.0, 0.1, 0.2, 0.3, 0.4])))
    with pytest.raises(DegenerateHull):
        gl_area_ratio(p, 0.5)


def test_directional_width_never_beats_spread_bound():
    # hull widths of the contracted root set obey the spread bound per direction
    rng = np.random.default_rng(67)
    zs = np.sqrt(rng.uniform(0, 1, 16)) * np.exp(2j * np.pi * rng.uniform(0, 1, 16))
    p = ComplexPoly(tuple(pc.polyfromroots(zs)))
    c = 0.75
    k = math.floor(c * 16)
    h0 = hull(complex_roots(p))
    hk = hull(complex_roots(derivative(p, k)))
    bound = 2.0 * math.sqrt(c - c * c)
    for theta in np.linspace(0.0, math.pi, 180):
        w0 = h0.width(theta)
        assert hk.width(theta) <= bound * w0 + 1e-6 * max(1.0, w0)


def test_rr_spread_ratio_two_point():
    p = RealRootedPoly((-1.0,) * 10 + (1.0,) * 10)
    ratio, bound = rr_spread_ratio(p, 0.75)
    assert bound == pytest.approx(math.sqrt(3) / 2, abs=1e-12)
    assert 0.48 <= ratio <= bound + 1e-9


def test_rr_spread_ratio_windows():
    # the two-point family stays inside [sqrt(1-c) - 0.05, 2 sqrt(c - c^2)]
    for m in (5, 8, 12, 20):
        p = RealRootedPoly((-1.0,) * m + (1.0,) * m)
        ratio, bound = rr_spread_ratio(p, 0.75)
        assert 0.45 <= ratio <= bound + 1e-9


def test_rr_spread_degenerate():
    with pytest.raises(DegenerateHull):
        rr_spread_ratio(RealRootedPoly((0.0,) * 6), 0.75)
    with pytest.raises(CRangeError):
        rr_spread_ratio(RealRootedPoly((-1.0, 1.0, 2.0)), 0.3)


def test_disc_containment_pure_power():
    # z^n has all derivative roots at the origin
    p = ComplexPoly((0.0,) * 8 + (1.0,))
    maxmod, bound = disc_containment(p, 0.5)
    assert maxmod <= 1e-12
    assert bound == pytest.approx(1.0, abs=1e-12)


def test_disc_containment_symmetric():
    # simple roots in +-z pairs: exactly zero mean, all inside the disc
    zs = [0.8, 0.5j, 0.3 + 0.2j, 0.1 - 0.6j, 0.55 + 0.4j]
    p = ComplexPoly(tuple(pc.polyfromroots(zs + [-z for z in zs])))
    maxmod, bound = disc_containment(p, 0.7)
    assert maxmod <= bound + 1e-6
    assert bound == pytest.approx(2 * math.sqrt(0.7 - 0.49), abs=1e-12)


def test_disc_containment_rejects_clustered_mean_drift():
    # a multiplicity-5 cluster recovers its mean only to ~1e-7, which the
    # zero-mean precondition (1e-8 on recovered roots) deliberately rejects
    p = ComplexPoly(tuple(pc.polyfromroots([0.8, -0.8] * 5)))
    with pytest.raises(SpectrumOutOfRange):
        disc_containment(p, 0.7)


def test_disc_containment_random_centered():
    # degree 10 so floor(0.7 n) / n is exactly the requested fraction
    rng = np.random.default_rng(71)
    zs = np.sqrt(rng.uniform(0, 1, 9)) * np.exp(2j * np.pi * rng.uniform(0, 1, 9))
    zs = np.concatenate([zs, [-np.sum(zs)]])  # zero mean by construction
    zs /= max(1.0, np.max(np.abs(zs)))
    p = ComplexPoly(tuple(pc.polyfromroots(zs)))
    maxmod, bound = disc_containment(p, 0.7)
    assert maxmod <= bound + 1e-6


def test_disc_containment_validation():
    p = ComplexPoly(tuple(pc.polyfromroots([2.0, -2.0])))
    with pytest.raises(SpectrumOutOfRange):
        disc_containment(p, 0.5)  # roots outside the unit disc
    q = ComplexPoly(tuple(pc.polyfromroots([0.5, 0.5])))
    with pytest.raises(SpectrumOutOfRange):
        disc_containment(q, 0.5)  # mean off zero


def test_sharpness_experiment_values():
    r = sharpness_experiment(10, 0.5)
    assert 0.347 <= r <= 1.0
    r2 = sharpness_experiment(12, 2.0 / 3.0)
    assert (1.0 / 3.0) ** (4.0 / 3.0) - 0.05 <= r2 <= 8.0 / 9.0


def test_sharpness_experiment_guards():
    # floor(c*m) = 0 in both cases: no derivative would be taken
    with pytest.raises(DegenerateHull):
        sharpness_experiment(1, 0.5)
    with pytest.raises(DegenerateHull):
        sharpness_experiment(4, 0.05)
    with pytest.raises(InputError):
        sharpness_experiment(0, 0.5)
    with pytest.raises(CRangeError):
        sharpness_experiment(8, 1.0)
