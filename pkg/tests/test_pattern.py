import random

import pytest

from helpers import AP3, AP4, PSI, heis_filtration, random_algebra, sp
from nilpattern.errors import PreconditionError
from nilpattern.exactnum import (
    full_space, span_subspace, subspace_contains, subspace_equal, subspace_sum, zero_space,
)
from nilpattern.forms import LinearFormSystem, v_spaces
from nilpattern.nilalg import Filtration, abelian, heisenberg, smallest_subalgebra
from nilpattern.pattern import (
    check_si_hi, compare_leibman, g_psi, gw_containment, leibman_algebra, minimal_filtration, padded,
    tensor_algebra, tensor_space, w_sequence,
)

V1, V2, V3 = v_spaces(PSI, 3)
X_AXIS, Y_AXIS = sp(2, (1, 0)), sp(2, (0, 1))
CENTER = sp(3, (0, 0, 1))
HORIZ = sp(3, (1, 0, 0), (0, 1, 0))


def T(s, v):
    return tensor_space(s, v)


def test_tensor_bracket_rule():
    # [a (x) v, b (x) w] = [a, b] (x) vw
    talg = tensor_algebra(heisenberg(), 2)
    x = (1, 2, 0, 0, 0, 0)      # e1 (x) (1, 2)
    y = (0, 0, 3, 5, 0, 0)      # e2 (x) (3, 5)
    assert tuple(talg.bracket(x, y)) == (0, 0, 0, 0, 3, 10)


def test_pattern_algebra_abelian_split():
    got = g_psi(abelian(2), PSI, [X_AXIS, Y_AXIS])
    assert subspace_equal(got, subspace_sum(T(X_AXIS, V1), T(Y_AXIS, V2)))


def test_pattern_algebra_abelian_full():
    got = g_psi(abelian(2), PSI, [full_space(2), Y_AXIS])
    assert subspace_equal(got, subspace_sum(T(full_space(2), V1), T(Y_AXIS, V2)))


def test_pattern_algebra_heisenberg_full():
    got = g_psi(heisenberg(), PSI, [full_space(3), CENTER])
    assert subspace_equal(got, subspace_sum(T(full_space(3), V1), T(CENTER, V2)))
    assert got.dim == 8


def test_pattern_algebra_heisenberg_horizontal():
    got = g_psi(heisenberg(), PSI, [HORIZ, zero_space(3)])
    assert subspace_equal(got, subspace_sum(T(HORIZ, V1), T(CENTER, V2)))
    # and it is the closure of (R, R, 0) (x) V alone
    talg = tensor_algebra(heisenberg(), 4)
    assert subspace_equal(got, smallest_subalgebra(talg, T(HORIZ, V1).vectors()))


def test_w_sequence_examples():
    H = heisenberg()
    W = w_sequence(H, [sp(3, (1, 1, 0)), zero_space(3)])
    assert subspace_equal(W[0], sp(3, (1, 1, 0))) and W[1].dim == 0
    W = w_sequence(H, [full_space(3), zero_space(3)])
    assert subspace_equal(W[1], CENTER)


def test_minimal_filtration_diagonal():
    f = minimal_filtration(heisenberg(), [sp(3, (1, 1, 0)), zero_space(3)])
    assert subspace_equal(f[1], sp(3, (1, 1, 0))) and f[2].dim == 0


def test_minimal_filtration_satisfies_w_relation():
    H = heisenberg()
    S = [HORIZ, zero_space(3)]
    f = minimal_filtration(H, S)
    W = w_sequence(H, S)
    for i in range(1, f.degree + 1):
        assert subspace_equal(subspace_sum(W[i - 1], f[i + 1]), f[i])


def test_leibman_comparison_abelian_is_strict():
    rep = compare_leibman(abelian(2), PSI, [X_AXIS, Y_AXIS], Filtration((full_space(2), Y_AXIS)))
    assert rep.strict
    assert rep.dims == {"leibman": 6, "g_psi": 5, "defect": 2}
    assert subspace_equal(rep.defect, T(Y_AXIS, V1))


def test_leibman_equality_for_flags():
    for psi in (AP3, AP4):
        H = heisenberg()
        f = heis_filtration()
        assert subspace_equal(g_psi(H, psi, [full_space(3), CENTER]), leibman_algebra(H, psi, f))


def test_gw_containment():
    H = heisenberg()
    assert gw_containment(H, PSI, [full_space(3), CENTER], heis_filtration(), 3)
    assert gw_containment(H, PSI, [HORIZ, zero_space(3)], heis_filtration(), 3)
    with pytest.raises(PreconditionError):
        gw_containment(H, PSI, [sp(3, (1, 0, 0)), zero_space(3)], heis_filtration(), 3)
    with pytest.raises(PreconditionError):
        gw_containment(H, AP3, [full_space(3), CENTER], heis_filtration(), 1)


def test_w_sequence_runs_past_noncentral_last_space():
    # S_2 = e_1 is not central: W_3 = [S_1, S_2] = center
    H = heisenberg()
    W = w_sequence(H, [sp(3, (1, 0, 0)), sp(3, (0, 1, 0))])
    assert len(W) == 3 and subspace_equal(W[2], CENTER)
    got = g_psi(H, PSI, [sp(3, (1, 0, 0)), sp(3, (0, 1, 0))])
    assert subspace_contains(got, T(CENTER, V3))


def test_si_hi_predicate():
    H = heisenberg()
    assert check_si_hi(H, [full_space(3), CENTER], heis_filtration())[0]
    ok, per = check_si_hi(H, [sp(3, (1, 0, 0)), zero_space(3)], heis_filtration())
    assert not ok and per[0] is False


def _random_system(rng, t, D=2):
    while True:
        rows = [[rng.randint(-2, 2) for _ in range(D)] for _ in range(t)]
        if all(any(r) for r in rows):
            return LinearFormSystem.of(rows)


def _random_sequence(rng, alg, s):
    out = []
    for _ in range(s):
        k = rng.randint(0, alg.dim)
        vecs = [[rng.randint(-2, 2) for _ in range(alg.dim)] for _ in range(k)]
        out.append(span_subspace(vecs, alg.dim))
    return out


def test_formula_agrees_with_closure_on_random_instances():
    rng = random.Random(99)
    for _ in range(50):
        alg = random_algebra(rng, max_step=3, max_dim=4)
        t = rng.randint(2, 4)
        psi = _random_system(rng, t)
        S = _random_sequence(rng, alg, max(alg.step, 2))
        talg = tensor_algebra(alg, t)
        gens = [b for i, s in enumerate(S, 1) for b in T(s, v_spaces(psi, i)[-1]).vectors()]
        assert len(w_sequence(alg, S)) <= alg.step * len(S)
        closure = smallest_subalgebra(talg, gens) if gens else zero_space(talg.dim)
        assert subspace_equal(g_psi(alg, psi, S, check=False), closure)


def test_padded():
    p = padded([full_space(2)], 3, 2)
    assert len(p) == 3 and p[2].dim == 0
