import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from helpers import int_matrix, random_unimodular, small_fracs, sp
from nilpattern.exactnum import (
    SymScalar, dist_to_int, fraction_str, full_space, height, hnf, integer_kernel, kernel_subspace,
    map_complexity, parse_assignment, parse_monomial, rref, solve, span_subspace, subspace_complexity,
    subspace_contains, subspace_equal, subspace_intersect, subspace_sum, sym, to_fraction, zero_space,
)
from nilpattern.exactnum.intmat import det, matmul


# scalars

def test_fraction_text_round_trip():
    for q in (F(0), F(-7, 3), F(5), F(1, 9900)):
        assert to_fraction(fraction_str(q)) == q
    assert height(F(-7, 3)) == 7
    assert dist_to_int(F(7, 3)) == F(1, 3)
    assert dist_to_int(F(-1, 4)) == F(1, 4)


def test_symscalar_arithmetic():
    a, b = SymScalar.symbol("a"), SymScalar.symbol("b")
    e = (a + 1) * (a - 1)
    assert e == a * a - 1
    assert (a * b - b * a).is_rational() and (a * b - b * a) == 0
    assert (a / 2 + a / 2) == a
    assert sym(F(3, 4)).is_rational() and sym(F(3, 4)).constant() == F(3, 4)
    assert not a.is_rational()
    assert (a * b + 2).substitute("a", sym(3)) == 3 * b + 2


def test_symscalar_json_and_registry():
    a, b = SymScalar.symbol("a"), SymScalar.symbol("b")
    x = F(1, 3) + a * b - F(1, 2) * a * a
    again = SymScalar.from_json(x.to_json(), ["a", "b"])
    assert again == x
    with pytest.raises(ValueError):
        SymScalar.from_json(x.to_json(), ["a"])
    with pytest.raises(ValueError):
        parse_monomial("a*c", ["a", "b"])


def test_assignment_parsing():
    asg = parse_assignment("a=sqrt2, b=sqrt(3), c=1/7, d=0.25")
    assert asg["a"] == pytest.approx(math.sqrt(2))
    assert asg["b"] == pytest.approx(math.sqrt(3))
    assert asg["c"] == pytest.approx(1 / 7)
    assert asg["d"] == 0.25


@given(st.lists(small_fracs, min_size=3, max_size=3))
def test_symscalar_evaluate_is_ring_hom(cs):
    a, b = SymScalar.symbol("a"), SymScalar.symbol("b")
    x = cs[0] * a + cs[1] * b + cs[2]
    y = a * b - cs[0]
    asg = {"a": math.sqrt(2), "b": math.sqrt(3)}
    assert (x * y).evaluate(asg) == pytest.approx(x.evaluate(asg) * y.evaluate(asg), abs=1e-9)


# Hermite normal form

def _hnf_oracle_2x2(m):
    """Lower-triangular column HNF of a nonsingular 2x2 integer matrix by the gcd route."""
    (p, q), (r, s) = m
    g = math.gcd(p, q)
    # x*p + y*q = g
    x, y = _egcd(p, q)
    h22 = abs(p * s - q * r) // g
    h21 = (x * r + y * s) % h22
    return [[g, 0], [h21, h22]]


def _egcd(a, b):
    if b == 0:
        return (1 if a >= 0 else -1), 0
    x, y = _egcd(b, a % b)
    return y, x - (a // b) * y


def test_hnf_small_known():
    H, U = hnf([[2, 4], [6, 3]])
    assert H == [[2, 0], [6, 9]]
    assert matmul([[2, 4], [6, 3]], U) == [[2, 0], [6, 9]]


@given(int_matrix(2, 2))
def test_hnf_matches_gcd_oracle(m):
    assume(m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0)
    assume(m[0][0] or m[0][1])
    H, _ = hnf(m)
    assert H == _hnf_oracle_2x2(m)


@given(int_matrix(3, 4), st.integers(0, 10 ** 6))
def test_hnf_is_invariant_under_unimodular_change(m, seed):
    import random
    U = random_unimodular(random.Random(seed), 4)
    assert abs(det([[F(x) for x in r] for r in U])) == 1
    H1, U1 = hnf(m)
    H2, _ = hnf(matmul(m, U))
    assert H1 == H2
    assert abs(det([[F(x) for x in r] for r in U1])) == 1


def test_integer_kernel_is_lattice_basis():
    rows = [[3, 0, -1, 1], [2, -1, 0, 2]]
    ker = integer_kernel(rows, 4)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    # every small integer kernel vector is an integer combination of the basis
    for v in itertools.product(range(-3, 4), repeat=4):
        if all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows):
            c = solve([list(col) for col in zip(*ker)], list(v))
            assert c is not None and all(x.denominator == 1 for x in c)


def test_rref_and_solve():
    m = [[1, 2, 3], [2, 4, 7]]
    r, piv = rref(m)
    assert piv == [0, 2]
    x = solve(m, [1, 3])
    assert [sum(F(a) * b for a, b in zip(row, x)) for row in m] == [1, 3]
    assert solve([[1, 1], [1, 1]], [0, 1]) is None


# subspaces

V_MAPS = [(3, 0, -1, 1), (2, -1, 0, 2)]


def test_kernel_equals_span():
    V = kernel_subspace(V_MAPS, 4)
    assert subspace_equal(V, sp(4, (0, 2, 1, 1), (1, 2, 3, 0)))
    V2 = kernel_subspace([(24, 3, -4, -8)], 4)
    assert V2.dim == 3
    for v in [(0, 4, 1, 1), (1, 4, 9, 0), (0, 4, 3, 0)]:
        assert subspace_contains(V2, v)
    assert not subspace_contains(V2, V)
    assert subspace_sum(V, V2).dim == 4


def test_hermite_basis_is_canonical():
    a = sp(4, (0, 2, 1, 1), (1, 2, 3, 0))
    b = sp(4, (1, 4, 4, 1), (F(1, 2), 1, F(3, 2), 0))
    assert a == b and a.basis == b.basis


def test_complexity_examples():
    assert subspace_complexity(full_space(3)) == 1
    assert subspace_complexity(kernel_subspace(V_MAPS, 4)) >= 1
    assert map_complexity((100, -99), sp(2, (1, 0), (0, 1))) == 100


def test_coordinates_round_trip():
    V = kernel_subspace(V_MAPS, 4)
    a = SymScalar.symbol("a")
    x = tuple(a * u + 3 * w for u, w in zip(V.basis[0], V.basis[1]))
    assert V.contains(x)
    assert tuple(V.from_coordinates(V.coordinates_sym(x))) == x


vec4 = st.lists(st.integers(-3, 3), min_size=4, max_size=4)


@given(st.lists(vec4, max_size=3), st.lists(vec4, max_size=3))
def test_grassmann_identity(xs, ys):
    S, T = span_subspace(xs, 4), span_subspace(ys, 4)
    assert subspace_sum(S, T).dim + subspace_intersect(S, T).dim == S.dim + T.dim


@given(st.lists(vec4, max_size=4))
def test_annihilator_duality(xs):
    S = span_subspace(xs, 4)
    assert len(S.annihilator) == 4 - S.dim
    assert kernel_subspace(S.annihilator, 4) == S
    assert subspace_intersect(S, zero_space(4)).dim == 0
