import math

import numpy as np
import pytest

from tripowmin.closed_form import (
    critical_point_sequence,
    derived_constants,
    limit_point,
    minimize_closed_form,
    minimize_n1,
    vertex_values,
)
from tripowmin.errors import InvalidExponent
from tripowmin.geometry import (
    CanonicalTriangle,
    GeneralTriangle,
    canonicalize,
    contains,
    incenter,
    side_distances,
)
from tripowmin.kkt import evaluate_F
from tripowmin.sampling import random_canonical_triangle

WORKED = CanonicalTriangle(3.0, 1.0, 2.0)

# reference values computed independently at 40 digits: for each n the
# gradient system was solved by a root finder started away from the
# closed-form answer, and both agreed to all printed digits
WORKED_REFERENCE = {
    1.5: (0.15520541675611187, 0.76780931442096915, 2.6287418720347425),
    2.0: (7.0 / 32.0, 27.0 / 32.0, 81.0 / 32.0),
    3.0: (0.24909592911953662, 0.88240426243793735, 2.3359118471059207),
    3.5: (0.25503851923228845, 0.89017809623148698, 2.2429186091882717),
    5.0: (0.26386990534396315, 0.90186224458661802, 1.9846415482106088),
    10.0: (0.27195705657999725, 0.91270401176408267, 1.3185326544409701),
}


@pytest.mark.parametrize("n", sorted(WORKED_REFERENCE))
def test_minimizer_matches_reference_values(n):
    x, y, value = WORKED_REFERENCE[n]
    res = minimize_closed_form(WORKED, n)
    assert res.point_canonical[0] == pytest.approx(x, rel=1e-14, abs=1e-15)
    assert res.point_canonical[1] == pytest.approx(y, rel=1e-14)
    assert res.value == pytest.approx(value, rel=1e-14)


def test_isosceles_n2_exact_fractions():
    res = minimize_closed_form(CanonicalTriangle(2.0, 1.0, 1.0), 2.0)
    assert res.point_canonical[0] == 0.0
    assert res.point_canonical[1] == pytest.approx(4.0 / 7.0, rel=1e-15)
    assert res.value == pytest.approx(8.0 / 7.0, rel=1e-15)


def test_derived_constants_structure_at_half_power():
    # at n = 1.5 the 1/(n-1) power is a plain square
    k = derived_constants(WORKED, 1.5)
    assert k.t == pytest.approx(10.0 / 13.0, rel=1e-15)
    assert k.r == pytest.approx(9.0 / 13.0, rel=1e-15)
    assert k.p == pytest.approx(math.sqrt(10.0), rel=1e-15)
    assert k.q == pytest.approx(math.sqrt(13.0), rel=1e-15)


def test_constants_satisfy_power_sum_identity():
    # t^n + r^n + 1 = lambda / q, for any triangle and exponent
    rng = np.random.default_rng(2)
    ns = [1.01, 1.5, 2.0, 3.0, 4.5, 8.0, 16.0, 50.0]
    for _ in range(30):
        tri = random_canonical_triangle(rng)
        for n in ns:
            k = derived_constants(tri, n)
            assert k.t**n + k.r**n + 1.0 == pytest.approx(k.lam / k.q, rel=1e-13)


def test_value_groupings_agree():
    # two algebraic forms of the minimum and a direct evaluation
    rng = np.random.default_rng(4)
    for _ in range(30):
        tri = random_canonical_triangle(rng)
        for n in (1.2, 2.0, 3.0, 7.0, 20.0):
            res = minimize_closed_form(tri, n)
            k = res.constants
            s = tri.a * (tri.b + tri.c)
            alt = s**n / (k.lam ** (n - 1.0) * k.q)
            assert res.value == pytest.approx(alt, rel=1e-12)
            direct = evaluate_F(tri, n, res.point_canonical)
            assert res.value == pytest.approx(direct, rel=1e-12)


def test_minimizer_side_distances_have_ratio_structure():
    # d1 = t * d2, d3 = r * d2, d2 = a(b+c)/lambda
    rng = np.random.default_rng(6)
    for _ in range(30):
        tri = random_canonical_triangle(rng)
        for n in (1.5, 2.0, 5.0, 12.0):
            res = minimize_closed_form(tri, n)
            k = res.constants
            d = side_distances(tri, res.point_canonical)
            base = tri.a * (tri.b + tri.c) / k.lam
            assert d.d2 == pytest.approx(base, rel=1e-11)
            assert d.d1 == pytest.approx(k.t * base, rel=1e-11)
            assert d.d3 == pytest.approx(k.r * base, rel=1e-11)


def test_minimizer_is_strictly_interior():
    rng = np.random.default_rng(8)
    for _ in range(40):
        tri = random_canonical_triangle(rng)
        for n in (1.1, 2.0, 10.0, 100.0):
            res = minimize_closed_form(tri, n)
            assert contains(tri, res.point_canonical)
            d = side_distances(tri, res.point_canonical)
            assert min(d.d1, d.d2, d.d3) > 0.0


def test_minimum_dominates_other_points():
    rng = np.random.default_rng(10)
    for _ in range(15):
        tri = random_canonical_triangle(rng)
        verts = tri.vertices()
        for n in (1.5, 2.0, 4.0):
            res = minimize_closed_form(tri, n)
            vv = vertex_values(tri, n)
            assert res.value <= min(vv) + 1e-12 * abs(min(vv))
            assert res.value <= evaluate_F(tri, n, incenter(tri)) * (1 + 1e-12)
            for _ in range(25):
                w = rng.dirichlet([1.0, 1.0, 1.0])
                pt = w @ verts
                assert res.value <= evaluate_F(tri, n, pt) * (1 + 1e-12)


def test_reflection_equivariance():
    rng = np.random.default_rng(12)
    for _ in range(20):
        tri = random_canonical_triangle(rng)
        mirror = CanonicalTriangle(tri.a, tri.c, tri.b)
        for n in (1.5, 2.0, 6.0):
            res = minimize_closed_form(tri, n)
            ref = minimize_closed_form(mirror, n)
            assert ref.point_canonical[0] == pytest.approx(
                -res.point_canonical[0], abs=1e-12 * tri.diameter()
            )
            assert ref.point_canonical[1] == pytest.approx(
                res.point_canonical[1], rel=1e-12
            )
            assert ref.value == pytest.approx(res.value, rel=1e-12)


def test_scale_equivariance():
    rng = np.random.default_rng(14)
    for _ in range(20):
        tri = random_canonical_triangle(rng)
        s = float(10.0 ** rng.uniform(-2.0, 2.0))
        scaled = CanonicalTriangle(s * tri.a, s * tri.b, s * tri.c)
        for n in (1.5, 2.0, 6.0):
            res = minimize_closed_form(tri, n)
            big = minimize_closed_form(scaled, n)
            assert np.allclose(
                big.point_canonical, s * res.point_canonical,
                rtol=1e-11, atol=1e-11 * s * tri.diameter(),
            )
            assert big.value == pytest.approx(s**n * res.value, rel=1e-11)


def test_point_original_uses_the_supplied_isometry():
    g = GeneralTriangle(
        np.array([0.0, 3.0]), np.array([-1.0, 0.0]), np.array([2.0, 0.0])
    )
    tri, iso = canonicalize(g)
    res = minimize_closed_form(tri, 2.0, isometry=iso)
    back = iso.to_canonical(res.point_original)
    assert np.allclose(back, res.point_canonical, atol=1e-13)
    # same triangle already in frame position: original equals canonical
    plain = minimize_closed_form(WORKED, 2.0)
    assert np.array_equal(plain.point_original, plain.point_canonical)


def test_vertex_values_worked():
    vv = vertex_values(WORKED, 2.0)
    assert vv.f_a == pytest.approx(9.0, rel=1e-15)
    assert vv.f_b == pytest.approx(81.0 / 13.0, rel=1e-14)
    assert vv.f_c == pytest.approx(81.0 / 10.0, rel=1e-14)
    # n = 1 allowed here: plain altitude lengths
    vv1 = vertex_values(WORKED, 1.0)
    assert vv1.f_b == pytest.approx(9.0 / math.sqrt(13.0), rel=1e-14)


def test_minimize_n1_picks_smallest_altitude_vertex():
    vm = minimize_n1(WORKED)
    assert vm.label == "B"
    assert np.allclose(vm.point, [-1.0, 0.0])
    assert vm.value == pytest.approx(9.0 / math.sqrt(13.0), rel=1e-14)


def test_minimize_n1_tie_prefers_apex():
    # equilateral: every altitude equal, tie broken in A, B, C order
    vm = minimize_n1(CanonicalTriangle(math.sqrt(3.0), 1.0, 1.0))
    assert vm.label == "A"
    assert vm.value == pytest.approx(math.sqrt(3.0), rel=1e-14)


def test_minimize_n1_agrees_with_dense_evaluation():
    rng = np.random.default_rng(16)
    for _ in range(10):
        tri = random_canonical_triangle(rng)
        vm = minimize_n1(tri)
        verts = tri.vertices()
        for _ in range(200):
            w = rng.dirichlet([1.0, 1.0, 1.0])
            pt = w @ verts
            assert vm.value <= evaluate_F(tri, 1.0, pt) + 1e-12


@pytest.mark.parametrize("bad", [1.0, 0.5, 0.0, -3.0, float("inf"), float("nan")])
def test_invalid_exponents_raise(bad):
    with pytest.raises(InvalidExponent):
        minimize_closed_form(WORKED, bad)
    with pytest.raises(InvalidExponent):
        derived_constants(WORKED, bad)


def test_vertex_values_rejects_subunit_exponent():
    with pytest.raises(InvalidExponent):
        vertex_values(WORKED, 0.9)


def test_sequence_matches_individual_solves_and_validates_upfront():
    ns = [2.0, 3.0, 5.5, 10.0]
    seq = critical_point_sequence(WORKED, ns)
    assert [r.exponent for r in seq] == ns
    for r, n in zip(seq, ns):
        single = minimize_closed_form(WORKED, n)
        assert np.array_equal(r.point_canonical, single.point_canonical)
        assert r.value == single.value
    with pytest.raises(InvalidExponent):
        critical_point_sequence(WORKED, [2.0, 1.0, 3.0])


def test_limit_point_is_incenter():
    rng = np.random.default_rng(18)
    for _ in range(10):
        tri = random_canonical_triangle(rng)
        assert np.array_equal(limit_point(tri), incenter(tri))


def test_minimizers_approach_incenter_as_n_grows():
    rng = np.random.default_rng(20)
    for _ in range(10):
        tri = random_canonical_triangle(rng)
        inc = incenter(tri)
        dists = []
        for k in range(6, 15):
            pt = minimize_closed_form(tri, float(2**k)).point_canonical
            dists.append(float(np.hypot(*(pt - inc))))
        for prev, nxt in zip(dists, dists[1:]):
            assert nxt <= 0.7 * prev or prev == 0.0
        assert dists[-1] <= 1e-3 * tri.diameter()


def test_value_overflow_reports_infinity_with_finite_point():
    big = CanonicalTriangle(300.0, 100.0, 100.0)
    res = minimize_closed_form(big, float(2**14))
    assert math.isinf(res.value)
    assert np.all(np.isfinite(res.point_canonical))
    assert contains(big, res.point_canonical)
