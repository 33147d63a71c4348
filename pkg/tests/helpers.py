"""Shared builders and strategies for the test suite."""
from fractions import Fraction as F

from hypothesis import strategies as st

from nilpattern.exactnum import SymScalar, span_subspace
from nilpattern.forms import LinearFormSystem
from nilpattern.nilalg import (
    PolySeq, abelian, direct_sum, filiform, free_step3_rank2, heisenberg,
    lower_central_filtration,
)


A_, B_, G_ = (SymScalar.symbol(x) for x in "abg")

# PASS/FAIL lines from the acceptance suite, replayed in the terminal summary
ACCEPTANCE_LINES = []

PSI = LinearFormSystem.of([[0, 1], [2, 2], [1, 3], [1, 0]])
AP3 = LinearFormSystem.of([[1, 0], [1, 1], [1, 2]])
AP4 = LinearFormSystem.of([[1, 0], [1, 1], [1, 2], [1, 3]])


def sp(d, *vecs):
    return span_subspace(vecs, d)


def heis_filtration():
    return lower_central_filtration(heisenberg())


def tensor_vec(parts, t):
    """Element of g (x) R^t from {k: vector in R^t} (index k*t + l)."""
    d = 1 + max(parts)
    out = [F(0)] * (d * t)
    for k, v in parts.items():
        for l, x in enumerate(v):
            out[k * t + l] = F(x)
    return out


def random_rational(rng, h=6):
    return F(rng.randint(-h, h), rng.randint(1, h))


def random_unimodular(rng, d, steps=None):
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps or 3 * d):
        i, j = rng.sample(range(d), 2)
        c = rng.randint(-2, 2)
        for r in range(d):
            m[r][i] += c * m[r][j]
        if rng.random() < 0.3:
            for r in range(d):
                m[r][i], m[r][j] = m[r][j], m[r][i]
    return m


def random_invertible(rng, d):
    while True:
        m = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]
        from nilpattern.exactnum.intmat import det
        if det([[F(x) for x in r] for r in m]) != 0:
            return m


PRESETS = [heisenberg, lambda: filiform(4), lambda: filiform(5), free_step3_rank2, lambda: abelian(3)]


def random_algebra(rng, max_step=4, max_dim=6):
    pool = [f() for f in PRESETS]
    pool = [a for a in pool if a.step <= max_step and a.dim <= max_dim]
    alg = rng.choice(pool)
    return alg.change_basis(random_invertible(rng, alg.dim))


def random_adapted(rng, alg, filt, deg=None, h=5):
    deg = deg or filt.degree
    coeffs = {}
    for i in range(1, deg + 1):
        space = filt[i]
        if space.dim == 0:
            continue
        c = [random_rational(rng, h) for _ in range(space.dim)]
        coeffs[i] = space.from_coordinates(c)
    return PolySeq.make(alg.dim, coeffs)


def random_step2(rng):
    """Adapted step-2 sequence on a basis-changed Heisenberg (or Heisenberg + R)
    with random rational shifts."""
    base = heisenberg() if rng.random() < 0.6 else direct_sum(heisenberg(), abelian(1))
    alg = base.change_basis(random_invertible(rng, base.dim))
    f = lower_central_filtration(alg)
    d = alg.dim
    syms = [SymScalar.symbol(c) for c in "abc"[: rng.randint(1, 3)]]
    deg1 = [sum((s * rng.randint(-2, 2) for s in syms), SymScalar()) + random_rational(rng, 4)
            for _ in range(d)]
    g2 = f[2].basis[0]
    q = random_rational(rng, 4)
    deg2 = [(G_ + q) * x for x in g2]
    return alg, f, PolySeq.make(d, {1: deg1, 2: deg2})


# matrix oracle for the Heisenberg group: (a, b, c) <-> [[0, a, c], [0, 0, b], [0, 0, 0]]

def _mat(x):
    a, b, c = x
    return [[F(0), F(a), F(c)], [F(0), F(0), F(b)], [F(0)] * 3]


def _mm(p, q):
    return [[sum(p[i][k] * q[k][j] for k in range(3)) for j in range(3)] for i in range(3)]


def _add(p, q, s=1):
    return [[p[i][j] + s * q[i][j] for j in range(3)] for i in range(3)]


def _exp(x):
    X = _mat(x)
    I = [[F(int(i == j)) for j in range(3)] for i in range(3)]
    return _add(_add(I, X), _mm(X, X), F(1, 2))


def _log(M):
    I = [[F(int(i == j)) for j in range(3)] for i in range(3)]
    Nm = _add(M, I, -1)
    L = _add(Nm, _mm(Nm, Nm), F(-1, 2))
    return (L[0][1], L[1][2], L[0][2])


def heis_oracle(x, y):
    return _log(_mm(_exp(x), _exp(y)))


small_fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
int_entries = st.integers(min_value=-6, max_value=6)


def int_matrix(rows, cols):
    return st.lists(st.lists(int_entries, min_size=cols, max_size=cols), min_size=rows, max_size=rows)
