import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from helpers import A_, B_, G_, heis_filtration, random_step2, sp
from nilpattern.errors import PreconditionError
from nilpattern.exactnum import SymScalar, full_space, subspace_equal, zero_space
from nilpattern.irrfact import (
    apply_map, check_linear_irrational, check_quant_filtration_irrational, check_quant_linear_irrational,
    enumerate_integer_maps, irrational_support, irrationality_crossing, is_filtration_irrational,
    is_linearly_irrational, is_linearly_irrational_mod, is_linearly_irrational_seq, is_strongly_irrational,
    qual_additive_decompose, qual_factorise, quant_additive_decompose, quant_factorise,
    unique_subspace_threshold,
)
from nilpattern.nilalg import (
    PolySeq, heisenberg, is_adapted, poly_star, poly_star_many,
)

CENTER = sp(3, (0, 0, 1))
HORIZ = sp(3, (1, 0, 0), (0, 1, 0))
P2 = PolySeq.make(3, {1: (A_, B_, 2 * A_ + B_ + F(1, 3)), 2: (0, 0, G_)})


# qualitative

def test_irrational_support():
    assert subspace_equal(irrational_support((A_, B_, 0)), HORIZ)
    assert subspace_equal(irrational_support((A_, A_, 0)), sp(3, (1, 1, 0)))
    assert subspace_equal(irrational_support((A_, B_, 2 * A_ + B_ + F(1, 3))), sp(3, (1, 0, 2), (0, 1, 1)))
    assert irrational_support((F(1, 2), 0, 3)).dim == 0


def test_rational_shift_is_not_linearly_irrational():
    v = is_linearly_irrational(P2.coefficient(1), full_space(3))
    assert not v
    assert v.witness == (2, 1, -1) and v.value == F(-1, 3)
    assert apply_map(v.witness, P2.coefficient(1)) == F(-1, 3)


def test_linear_irrationality_examples():
    assert is_linearly_irrational((A_, B_, 0), HORIZ)
    assert is_linearly_irrational((A_, A_, 0), sp(3, (1, 1, 0)))
    assert is_linearly_irrational_seq(PolySeq.make(3, {1: (A_, B_, 0)}), [HORIZ, zero_space(3)])
    full = PolySeq.make(3, {1: (A_, B_, G_ - A_ * B_ / 2)})
    assert is_linearly_irrational_seq(full, [full_space(3), CENTER])
    with pytest.raises(PreconditionError):
        is_linearly_irrational((A_, B_, G_), HORIZ)


def test_filtration_and_strong_irrationality():
    H, f = heisenberg(), heis_filtration()
    assert is_filtration_irrational(H, P2, f)
    assert not is_filtration_irrational(H, PolySeq.make(3, {1: (A_, 0, 0)}), f)
    assert is_filtration_irrational(H, PolySeq.make(3, {1: (A_, B_, 0)}), f)
    assert not is_strongly_irrational(H, P2, f, [full_space(3), CENTER])


def test_irrationality_modulo():
    a = P2.coefficient(1)
    assert is_linearly_irrational_mod(a, full_space(3), CENTER)
    assert not is_linearly_irrational_mod((A_, F(1, 2), 0), full_space(3), CENTER)


def test_additive_split_of_rational_shift():
    split = qual_additive_decompose(P2.coefficient(1), full_space(3), full_space(3))
    assert tuple(split.a_r) == (0, 0, F(1, 3))
    assert tuple(x + y for x, y in zip(split.a_p, split.a_r)) == tuple(P2.coefficient(1))
    assert is_linearly_irrational(split.a_p, split.U_prime)


def test_factorise_rational_shift():
    H, f = heisenberg(), heis_filtration()
    fac = qual_factorise(H, P2, f)
    assert subspace_equal(fac.S_prime[0], sp(3, (1, 0, 2), (0, 1, 1)))
    assert subspace_equal(fac.S_prime[1], CENTER)
    assert fac.p_prime == PolySeq.make(3, {1: (A_, B_, 2 * A_ + B_), 2: (0, 0, G_)})
    assert fac.r == PolySeq.make(3, {1: (0, 0, F(1, 3))})
    assert poly_star(H, fac.p_prime, fac.r) == P2
    assert is_linearly_irrational_seq(fac.p_prime, fac.S_prime)


def test_random_step2_certificates():
    rng = random.Random(2024)
    for _ in range(10):
        alg, f, p = random_step2(rng)
        fac = qual_factorise(alg, p, f)
        assert poly_star(alg, fac.p_prime, fac.r) == p
        assert fac.r.is_rational()
        assert is_adapted(fac.p_prime.coeffs, f)[0]
        assert is_linearly_irrational_seq(fac.p_prime, fac.S_prime)


# quantitative

def test_integer_map_enumeration_counts():
    assert sorted(m.dual for m in enumerate_integer_maps(sp(1, (1,)), 3)) == [(1,), (2,), (3,)]
    maps = enumerate_integer_maps(full_space(2), 1)
    assert len(maps) == 4
    # complexity is the sup norm of the dual coordinates
    assert all(m.complexity <= 1 for m in maps)


def _brute_maps(d, A):
    seen = set()
    import itertools
    for c in itertools.product(range(-A, A + 1), repeat=d):
        if any(c):
            neg = tuple(-x for x in c)
            if neg not in seen:
                seen.add(c)
    return seen


@given(st.integers(1, 3), st.integers(1, 3))
def test_enumeration_matches_brute_force_on_full_space(d, A):
    got = {m.dual for m in enumerate_integer_maps(full_space(d), A)}
    brute = _brute_maps(d, A)
    assert len(got) == len(brute)
    assert all(c in brute or tuple(-x for x in c) in brute for c in got)


def test_two_dimensional_rational_example():
    A, N = 10, 10 ** 5
    a = (F(1, 10 * A), F(1, 10 * A - 1))
    S1 = sp(2, (10 * A - 1, 10 * A))
    p = PolySeq.make(2, {1: a})
    assert check_quant_linear_irrational(p, [full_space(2)], A, N)
    assert check_quant_linear_irrational(p, [S1], A, N)
    cross_s1 = irrationality_crossing(a, S1)
    assert cross_s1 == 9900
    assert 9900 / 2 <= cross_s1 <= 9900 * 2
    assert irrationality_crossing(a, full_space(2)) == 99
    rep = unique_subspace_threshold(a, S1, full_space(2), A)
    assert rep.holds and not rep.T_le_S


def test_quant_linear_irrational_failure_witness():
    a = (F(1, 3), F(1, 5))
    v = check_linear_irrational(a, full_space(2), 3, F(1, 100))
    assert not v and v.witness.complexity <= 3
    assert v.distance == 0


def test_quant_filtration_irrational_heisenberg():
    H, f = heisenberg(), heis_filtration()
    p = PolySeq.make(3, {1: (A_, B_, 0)})
    asg = {"a": math.sqrt(2), "b": math.sqrt(3)}
    # ||sqrt2 - 2 sqrt3|| = 0.0499 < 5/100, so N = 100 is too coarse; N = 10^4 passes
    assert not check_quant_filtration_irrational(H, p, f, 5, 100, assignment=asg)
    assert check_quant_filtration_irrational(H, p, f, 5, 10 ** 4, assignment=asg)
    q = PolySeq.make(3, {1: (F(1, 2), A_, 0)})
    v = check_quant_filtration_irrational(H, q, f, 5, 100, assignment={"a": math.sqrt(2)})
    assert not v and v.degree == 1


def test_quant_additive_decompose_examples():
    eps = F(10, 10 ** 5)
    q = quant_additive_decompose((F(1, 3) + F(1, 10 ** 9), math.sqrt(2)), full_space(2), full_space(2), 10, eps)
    assert tuple(q.a_r) == (F(1, 3), 0)
    assert tuple(q.a_s) == (F(1, 10 ** 9), 0)
    assert q.denominator == 3
    q = quant_additive_decompose((F(1, 3), F(1, 7)), full_space(2), full_space(2), 10, eps)
    assert tuple(q.a_r) == (F(1, 3), F(1, 7))
    a = (F(1, 100), F(1, 99))
    q = quant_additive_decompose(a, full_space(2), full_space(2), 10, eps)
    assert tuple(q.a_p) == a and q.iterations == 0


def test_quant_factorise_numeric_rational_shift():
    H, f = heisenberg(), heis_filtration()
    asg = {"a": math.sqrt(2), "b": math.sqrt(3), "g": math.sqrt(5)}
    fac = quant_factorise(H, P2, f, [full_space(3), CENTER], 10, 10 ** 6, asg)
    again = poly_star_many(H, fac.e, fac.p_prime, fac.r)
    for n in range(1, 6):
        want = [x.evaluate(asg) for x in map(SymScalar.lift, P2.evaluate(n))]
        got = [float(x.constant()) for x in map(SymScalar.lift, again.evaluate(n))]
        assert got == pytest.approx(want, rel=1e-12, abs=1e-12)
    assert fac.r.is_rational()
    assert tuple(fac.r.coefficient(1)) == (0, 0, F(1, 3))
    assert check_quant_linear_irrational(fac.p_prime, fac.S_prime, 10, 10 ** 6)
    assert max(abs(float(x.constant())) for x in fac.e.coefficient(1)) < 1e-12
