"""Quantitative irrationality over bounded-complexity integer maps, and the
quantitative splits a = a_p + a_r + a_s and p = e * p' * r."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..errors import CrossCheckError, GuardExceeded, PreconditionError
from ..exactnum import (
    RationalSubspace, SymScalar, kernel_subspace, subspace_contains, subspace_intersect,
    subspace_sum, sym, zero_space,
)
from ..exactnum.intmat import columns, hnf, rref, solve
from ..nilalg import Filtration, NilLieAlgebra, h_spaces, is_adapted, poly_star_many
from ..nilalg.norms import seq_denominator, smallness_constant
from ..nilalg.polyseq import PolySeq
from .qualitative import (
    Factorisation, apply_map, is_linearly_irrational, qual_additive_decompose,
)

ENUM_GUARD = 10 ** 8


@dataclass(frozen=True)
class IntegerLinearMap:
    """Integer map on the ambient space (`coeffs`) together with its values
    on the Hermite basis of the subspace it was drawn from (`dual`)."""

    coeffs: tuple
    dual: tuple

    @property
    def complexity(self) -> int:
        return max((abs(x) for x in self.dual), default=0)

    def __call__(self, vec):
        return apply_map(self.coeffs, vec)


def lift_dual(S: RationalSubspace, dual: Sequence[int]) -> tuple[int, ...]:
    """An integer map on Z^d taking the given values on the Hermite basis of S."""
    if not S.dim:
        return tuple(0 for _ in range(S.ambient))
    bt = [list(b) for b in S.basis]
    h, u = hnf(bt)
    # S n Z^d is saturated: B^T U = [I | 0]
    if any(h[i][j] != int(i == j) for i in range(S.dim) for j in range(S.dim)):
        raise CrossCheckError("Hermite basis is not primitive")
    ucols = columns(u)
    return tuple(sum(int(dual[j]) * ucols[j][r] for j in range(S.dim)) for r in range(S.ambient))


def _dual_constraints(S: RationalSubspace, vanish_on: RationalSubspace | None) -> list[list[Fraction]]:
    if vanish_on is None or not vanish_on.dim:
        return []
    return [S.coordinates(b) for b in vanish_on.basis]


def dual_box(k: int, A: int, constraints: Sequence[Sequence[Fraction]] = (),
             guard: int = ENUM_GUARD) -> np.ndarray:
    """All nonzero c in [-A, A]^k with c.w = 0 for each constraint w, one per
    sign class, ordered by (sup norm, lexicographic)."""
    cons = [list(w) for w in constraints if any(w)]
    red, piv = rref(cons) if cons else ([], [])
    free = [c for c in range(k) if c not in piv]
    size = (2 * A + 1) ** len(free)
    if size > guard:
        raise GuardExceeded(f"enumeration of {size} maps exceeds the guard {guard}")
    if not free:
        return np.zeros((0, k), dtype=np.int64)
    rng = np.arange(-A, A + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([rng] * len(free)), indexing="ij"), axis=-1).reshape(-1, len(free))
    full = np.zeros((grid.shape[0], k), dtype=np.int64)
    full[:, free] = grid
    keep = np.ones(grid.shape[0], dtype=bool)
    for row, p in zip(red, piv):
        den = math.lcm(*[row[f].denominator for f in free]) if free else 1
        nums = np.array([int(-row[f] * den) for f in free], dtype=np.int64)
        val = grid @ nums
        ok = val % den == 0
        dep = np.where(ok, val // den, 0)
        keep &= ok & (np.abs(dep) <= A)
        full[:, p] = dep
    full = full[keep]
    nz = np.any(full != 0, axis=1)
    full = full[nz]
    first = np.argmax(full != 0, axis=1)
    lead = full[np.arange(full.shape[0]), first]
    full = full[lead > 0]
    norm = np.max(np.abs(full), axis=1) if full.size else np.zeros(0, dtype=np.int64)
    order = np.lexsort(tuple(full[:, c] for c in range(k - 1, -1, -1)) + (norm,))
    return full[order]


def enumerate_integer_maps(S: RationalSubspace, A: int, vanish_on: RationalSubspace | None = None,
                           guard: int = ENUM_GUARD) -> list[IntegerLinearMap]:
    """Integer maps of complexity <= A on S, nonzero on S, up to sign."""
    duals = dual_box(S.dim, A, _dual_constraints(S, vanish_on), guard)
    return [IntegerLinearMap(lift_dual(S, c), tuple(int(x) for x in c)) for c in duals]


def _coords(a, S: RationalSubspace, assignment=None) -> tuple[list, bool]:
    """Coordinates of a in the Hermite basis of S: exact Fractions when a is
    rational, floats under the assignment otherwise."""
    if not S.contains(a):
        raise PreconditionError("element is not in the subspace")
    cs = S.coordinates_sym(a) if S.dim else ()
    if all(sym(x).is_rational() for x in cs):
        return [sym(x).constant() for x in cs], True
    if assignment is None:
        raise PreconditionError("symbolic element needs a numeric assignment")
    return [sym(x).evaluate(assignment) for x in cs], False


def _distances(duals: np.ndarray, coords: list, exact: bool) -> np.ndarray:
    if exact:
        fr = [Fraction(x) - math.floor(x) for x in coords]
        vals = np.array([float(x) for x in fr])
    else:
        vals = np.array([x - math.floor(x) for x in coords], dtype=float)
    if duals.size == 0:
        return np.zeros(0)
    v = duals @ vals if vals.size else np.zeros(duals.shape[0])
    v = v - np.floor(v)
    return np.minimum(v, 1.0 - v)


def _exact_dist(dual, coords) -> Fraction:
    v = sum((int(c) * Fraction(x) for c, x in zip(dual, coords)), Fraction(0))
    r = v - math.floor(v)
    return min(r, 1 - r)


@dataclass
class QuantVerdict:
    verdict: bool
    witness: IntegerLinearMap | None = None
    distance: float | Fraction | None = None
    degree: int | None = None
    min_distance: float | None = None

    def __bool__(self):
        return self.verdict


def check_linear_irrational(a, S: RationalSubspace, A: int, eps, assignment=None,
                            vanish_on: RationalSubspace | None = None,
                            guard: int = ENUM_GUARD) -> QuantVerdict:
    """(A, eps)-linear irrationality of a in S (modulo `vanish_on` if given):
    every integer map of complexity <= A nontrivial on S has ||l(a)|| >= eps.
    The witness is the least violating map by (complexity, lexicographic)."""
    coords, exact = _coords(a, S, assignment)
    duals = dual_box(S.dim, A, _dual_constraints(S, vanish_on), guard)
    dist = _distances(duals, coords, exact)
    epsf = float(eps)
    cand = np.nonzero(dist < epsf * (1 + 1e-9) + 1e-15)[0]
    for idx in cand:
        c = duals[idx]
        dv = _exact_dist(c, coords) if exact else float(dist[idx])
        if dv < Fraction(eps) if exact else dv < epsf:
            l = IntegerLinearMap(lift_dual(S, c), tuple(int(x) for x in c))
            return QuantVerdict(False, l, dv, min_distance=float(dist.min()))
    return QuantVerdict(True, min_distance=float(dist.min()) if dist.size else None)


def _least(xs):
    xs = [x for x in xs if x is not None]
    return min(xs) if xs else None


def check_quant_linear_irrational(p: PolySeq, S: Sequence[RationalSubspace], A: int, N,
                                  assignment=None) -> QuantVerdict:
    """(A, N)-linear irrationality: degree i is (A, A/N^i)-linearly irrational in S_i."""
    seen = []
    for i in range(1, p.degree + 1):
        s_i = S[i - 1] if i <= len(S) else zero_space(p.dim)
        v = check_linear_irrational(p.coefficient(i), s_i, A, Fraction(A) / Fraction(N) ** i, assignment)
        if not v:
            v.degree = i
            return v
        seen.append(v.min_distance)
    return QuantVerdict(True, min_distance=_least(seen))


def check_quant_filtration_irrational(alg: NilLieAlgebra, p: PolySeq, filt: Filtration, A: int, N,
                                      assignment=None) -> QuantVerdict:
    """Degree i is (A, A/N^i)-linearly irrational in g_i modulo h_i."""
    hs = h_spaces(alg, filt)
    seen = []
    for i in range(1, filt.degree + 1):
        h_i = subspace_intersect(hs[i - 1], filt[i])
        v = check_linear_irrational(p.coefficient(i), filt[i], A, Fraction(A) / Fraction(N) ** i,
                                    assignment, vanish_on=h_i)
        if not v:
            v.degree = i
            return v
        seen.append(v.min_distance)
    return QuantVerdict(True, min_distance=_least(seen))


def irrationality_crossing(a, S: RationalSubspace, eps=None, C_max: int = 10 ** 6, assignment=None,
                           guard: int = ENUM_GUARD) -> int | None:
    """Least complexity C for which a fails (C, eps)-linear irrationality in S.

    eps=None asks for an exact failure (some l with l(a) in Z)."""
    C = 1
    while True:
        Ccap = min(C, C_max)
        e = eps if eps is not None else 0
        coords, exact = _coords(a, S, assignment)
        duals = dual_box(S.dim, Ccap, (), guard)
        if eps is None:
            if not exact:
                raise PreconditionError("exact crossing needs rational coordinates")
            bad = [c for c in duals if _exact_dist(c, coords) == 0]
        else:
            dist = _distances(duals, coords, exact)
            bad = [duals[i] for i in np.nonzero(dist < float(e))[0]
                   if (not exact) or _exact_dist(duals[i], coords) < Fraction(e)]
        if bad:
            return int(min(np.max(np.abs(c)) for c in bad))
        if Ccap == C_max:
            return None
        C *= 2


@dataclass
class ThresholdReport:
    holds: bool
    T_le_S: bool
    crossing_complexity: int | None
    crossing_k: float | None
    detail: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def unique_subspace_threshold(a, S: RationalSubspace, T: RationalSubspace, A: int, eps=None,
                              max_k: int = 6, assignment=None) -> ThresholdReport:
    """Sweep complexities A^k upward: either T <= S, or a stops being
    (A^k, eps)-linearly irrational in T at some finite k."""
    if not (S.contains(a) and T.contains(a)):
        raise PreconditionError("element must lie in both subspaces")
    if subspace_contains(S, T):
        return ThresholdReport(True, True, None, None)
    cross = irrationality_crossing(a, T, eps, C_max=A ** max_k, assignment=assignment)
    k = math.log(cross) / math.log(A) if cross else None
    return ThresholdReport(cross is not None, False, cross, k)


@dataclass
class QuantSplit:
    a_p: tuple
    a_r: tuple
    a_s: tuple
    U_prime: RationalSubspace
    maps: list
    denominator: int
    smallness: float
    iterations: int


def _as_rational_vec(a, assignment=None) -> tuple:
    out = []
    for x in a:
        x = sym(x) if not isinstance(x, float) else x
        if isinstance(x, float):
            out.append(Fraction(x))
        elif x.is_rational():
            out.append(x.constant())
        elif assignment is not None:
            out.append(Fraction(x.evaluate(assignment)))
        else:
            raise PreconditionError("symbolic entries need an assignment")
    return tuple(out)


def quant_additive_decompose(a, U: RationalSubspace, T: RationalSubspace, A: int, eps,
                             assignment=None) -> QuantSplit:
    """a = a_p + a_r + a_s: a_r rational and a_s small, both in U n T, and
    a_p (A, eps)-linearly irrational in U' = ker L n U."""
    a = _as_rational_vec(a, assignment)
    d = U.ambient
    alpha = U.coordinates(a)
    UT = subspace_intersect(U, T)
    m_cols = [U.coordinates(b) for b in UT.basis]          # U n T inside U
    L: list[list[int]] = []
    a_r_c = [Fraction(0)] * U.dim
    a_s_c = [Fraction(0)] * U.dim
    K = U
    for it in range(UT.dim + 1):
        a_p = tuple(x - y - z for x, y, z in zip(a, U.from_coordinates(a_r_c), U.from_coordinates(a_s_c)))
        v = check_linear_irrational(a_p, K, A, eps)
        if v:
            a_r = U.from_coordinates(a_r_c)
            a_s = U.from_coordinates(a_s_c)
            den = math.lcm(1, *[Fraction(x).denominator for x in a_r])
            small = max((abs(float(x)) for x in a_s), default=0.0)
            return QuantSplit(a_p, a_r, a_s, K, L, den, small, it)
        lt = [sum(c * bj for c, bj in zip(v.witness.coeffs, b)) for b in U.basis]
        on_ut = [[sum(r[q] * col[q] for q in range(U.dim)) for col in m_cols] for r in L + [lt]]
        if len(rref(on_ut)[1]) < len(L) + 1:
            raise PreconditionError("new witness is dependent on U n T: the element is not "
                                    "quantitatively irrational in U modulo T at these constants",
                                    witness=v.witness)
        val = sum((Fraction(c) * x for c, x in zip(lt, a_r_c)), Fraction(0))
        C = val.denominator
        L.append([C * x for x in lt])
        vals = [sum((Fraction(c) * x for c, x in zip(row, alpha)), Fraction(0)) for row in L]
        n = [Fraction(round(x)) for x in vals]
        e = [x - y for x, y in zip(vals, n)]
        lm = [[sum(Fraction(r[q]) * col[q] for q in range(U.dim)) for col in m_cols] for r in L]
        # deepest basis vectors of U n T first, as in the qualitative split
        _, piv = rref(lm, pivot_order=range(UT.dim - 1, -1, -1))
        sq = [[row[c] for c in piv] for row in lm]
        xr, xs = solve(sq, n), solve(sq, e)
        yr = [Fraction(0)] * UT.dim
        ys = [Fraction(0)] * UT.dim
        for c, vr, vs in zip(piv, xr, xs):
            yr[c], ys[c] = vr, vs
        a_r_c = [sum((col[q] * y for col, y in zip(m_cols, yr)), Fraction(0)) for q in range(U.dim)]
        a_s_c = [sum((col[q] * y for col, y in zip(m_cols, ys)), Fraction(0)) for q in range(U.dim)]
        lifts = [lift_dual(U, row) for row in L]
        K = kernel_subspace(list(U.annihilator) + [list(x) for x in lifts], d)
    raise CrossCheckError("decomposition did not terminate within dim(U n T) steps")


def _zero(d):
    return tuple(SymScalar() for _ in range(d))


def quant_factorise(alg: NilLieAlgebra, p: PolySeq, filt: Filtration, S: Sequence[RationalSubspace],
                    A: int, N, assignment=None) -> Factorisation:
    """p = e * p' * r with e small, r rational and p' (A, N)-linearly
    irrational in a sequence S' agreeing with S below the first failing degree.

    With symbolic coefficients and no assignment the splits are exact and e = 0.
    """
    d, s = alg.dim, filt.degree
    ok, deg = is_adapted(p.coeffs, filt)
    if not ok:
        raise PreconditionError(f"sequence is not adapted at degree {deg}", witness=deg)
    if any(p.coefficient(0)):
        raise PreconditionError("sequence must vanish at 0")
    symbolic = bool(p.symbols()) and assignment is None
    if not symbolic:
        p = PolySeq.make(d, {i: _as_rational_vec(a, assignment) for i, a in enumerate(p.coeffs)})
    S = list(S) + [zero_space(d)] * (s - len(S))
    for i in range(1, p.degree + 1):
        if not S[i - 1].contains(p.coefficient(i)):
            raise PreconditionError(f"degree-{i} coefficient is not in S_{i}", witness=i)

    def eps(i):
        return Fraction(A) / Fraction(N) ** i

    def irr(i, a, sp):
        if symbolic:
            return bool(is_linearly_irrational(a, sp))
        return bool(check_linear_irrational(a, sp, A, eps(i)))

    def split(i, b, U, T):
        if symbolic:
            q = qual_additive_decompose(b, U, T)
            return q.a_p, q.a_r, _zero(d), q.U_prime
        q = quant_additive_decompose(b, U, T, A, eps(i))
        return q.a_p, q.a_r, q.a_s, q.U_prime

    j = next((i for i in range(1, p.degree + 1) if not irr(i, p.coefficient(i), S[i - 1])), None)
    zero = PolySeq.zero(d)
    if j is None:
        return Factorisation(p, zero, S, e=zero, rounds=[])
    S_cur = list(S)
    cur = p
    e_list, r_list, rounds = [], [], []
    p_k = p
    for k in range(1, s + 1):
        lo = j if k == 1 else j + 1
        pp, rr, ee = dict(enumerate(cur.coeffs)), {}, {}
        for i in range(lo, cur.degree + 1):
            b = cur.coefficient(i)
            if k == 1:
                U, T = S[i - 1], filt[1]
            else:
                T = filt[max(i, k)]
                U = subspace_sum(S_cur[i - 1], T)
            a_p, a_r, a_s, U_prime = split(i, b, U, T)
            pp[i], rr[i], ee[i] = a_p, a_r, a_s
            S_cur[i - 1] = U_prime
        p_k = PolySeq.make(d, pp)
        r_k, e_k = PolySeq.make(d, rr), PolySeq.make(d, ee)
        e_list.append(e_k)
        r_list.append(r_k)
        rounds.append({"round": k, "e_k": e_k, "r_k": r_k})
        cur = poly_star_many(alg, -e_k, cur, -r_k)
    # cur is now e_s^{-1} p~_s r_s^{-1}; with e_s, r_s central this is p_s
    if cur != p_k:
        raise CrossCheckError("quantitative factorisation does not close after the last round")
    e = poly_star_many(alg, *e_list) if e_list else zero
    r = poly_star_many(alg, *reversed(r_list)) if r_list else zero
    if poly_star_many(alg, e, p_k, r) != p:
        raise CrossCheckError("e * p' * r does not reproduce p")
    out = Factorisation(p_k, r, S_cur, e=e, rounds=rounds)
    return out


def factorisation_report(f: Factorisation, N) -> dict:
    """Measured constants of a quantitative factorisation."""
    rep = {"first_degree": None}
    if f.r.coeffs and f.r.is_rational():
        rep["rational_denominator"] = seq_denominator(f.r)
    if f.e is not None and f.e.coeffs:
        rep["smallness_constant"] = smallness_constant(f.e, float(N))
    return rep
