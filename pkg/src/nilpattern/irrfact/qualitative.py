"""Qualitative irrationality, the additive split a = a_p + a_r, and the
factorisation p = p' * r with r rational."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..errors import CrossCheckError, PreconditionError
from ..exactnum import (
    ONE, RationalSubspace, SymScalar, components, span_subspace, subspace_contains,
    subspace_intersect, subspace_sum, sym, zero_space,
)
from ..exactnum.intmat import solve
from ..nilalg import Filtration, NilLieAlgebra, h_spaces, is_adapted, poly_star
from ..nilalg.polyseq import PolySeq


@dataclass
class Verdict:
    verdict: bool
    witness: tuple | None = None      # integer map on the ambient space
    value: Fraction | None = None     # l(a), rational when a witness exists
    degree: int | None = None

    def __bool__(self):
        return self.verdict


def _normalise(map_: Sequence[int]) -> tuple[int, ...]:
    lead = next((x for x in map_ if x), 0)
    return tuple(-x for x in map_) if lead < 0 else tuple(map_)


def apply_map(l: Sequence, vec: Sequence):
    out = SymScalar()
    for c, x in zip(l, vec):
        if c and x:
            out = out + sym(x) * c
    return out


def irrational_support(a: Sequence, d: int | None = None) -> RationalSubspace:
    """Smallest rational subspace containing a, spanned by the coefficient
    vectors of the non-constant monomials."""
    d = len(a) if d is None else d
    return span_subspace([v for m, v in components(a).items() if m != ONE], d)


def _witness_outside(target: RationalSubspace, space: RationalSubspace, a) -> Verdict:
    """Verdict for 'every rational map vanishing on target also vanishes on space'."""
    if subspace_contains(target, space):
        return Verdict(True)
    for row in target.annihilator:
        if any(sum(x * y for x, y in zip(row, b)) for b in space.basis):
            l = _normalise(row)
            return Verdict(False, l, apply_map(l, a).to_fraction())
    raise CrossCheckError("no separating map found")


def is_linearly_irrational(a: Sequence, S: RationalSubspace) -> Verdict:
    """No rational map nontrivial on S takes a rational value at a."""
    if not S.contains(a):
        raise PreconditionError("element is not in the subspace")
    return _witness_outside(irrational_support(a, S.ambient), S, a)


def is_linearly_irrational_mod(a: Sequence, U: RationalSubspace, T: RationalSubspace) -> Verdict:
    """Relative version: only maps vanishing on U n T are tested."""
    if not U.contains(a):
        raise PreconditionError("element is not in U")
    target = subspace_sum(irrational_support(a, U.ambient), subspace_intersect(U, T))
    return _witness_outside(target, U, a)


def is_linearly_irrational_seq(p: PolySeq, S: Sequence[RationalSubspace]) -> Verdict:
    for i in range(1, p.degree + 1):
        s_i = S[i - 1] if i <= len(S) else zero_space(p.dim)
        v = is_linearly_irrational(p.coefficient(i), s_i)
        if not v:
            v.degree = i
            return v
    return Verdict(True)


def is_filtration_irrational(alg: NilLieAlgebra, p: PolySeq, filt: Filtration) -> Verdict:
    """For each i, a_i is linearly irrational in g_i modulo h_i."""
    ok, deg = is_adapted(p.coeffs, filt)
    if not ok:
        raise PreconditionError(f"sequence is not adapted at degree {deg}", witness=deg)
    hs = h_spaces(alg, filt)
    for i in range(1, filt.degree + 1):
        a = p.coefficient(i)
        target = subspace_sum(irrational_support(a, alg.dim), hs[i - 1])
        v = _witness_outside(target, filt[i], a)
        if not v:
            v.degree = i
            return v
    return Verdict(True)


def is_strongly_irrational(alg, p: PolySeq, filt: Filtration, S: Sequence[RationalSubspace]) -> Verdict:
    v = is_filtration_irrational(alg, p, filt)
    if not v:
        return v
    return is_linearly_irrational_seq(p, S)


@dataclass
class AdditiveSplit:
    a_p: tuple
    a_r: tuple
    U_prime: RationalSubspace


def qual_additive_decompose(a: Sequence, U: RationalSubspace, T: RationalSubspace) -> AdditiveSplit:
    """a = a_p + a_r with a_r in (U n T)_Q and a_p linearly irrational in a
    rational U' <= U.  Needs a linearly irrational in U modulo T."""
    rel = is_linearly_irrational_mod(a, U, T)
    if not rel:
        raise PreconditionError("element is not linearly irrational in U modulo T", witness=rel.witness)
    d = U.ambient
    support = irrational_support(a, d)
    const = components(a).get(ONE, [Fraction(0)] * d)
    UT = subspace_intersect(U, T)
    maps = list(support.annihilator)
    if maps and UT.dim:
        # unknown y in coordinates of the Hermite basis of U n T
        mat = [[sum(Fraction(l[r]) * b[r] for r in range(d)) for b in UT.basis] for l in maps]
        rhs = [sum(Fraction(l[r]) * const[r] for r in range(d)) for l in maps]
        y = solve(mat, rhs, trailing=True)
        if y is None:
            raise CrossCheckError("rational part has no solution despite the precondition")
        a_r = tuple(sym(x) for x in UT.from_coordinates(y))
    else:
        if any(sum(Fraction(l[r]) * const[r] for r in range(d)) for l in maps):
            raise CrossCheckError("rational part has no solution despite the precondition")
        a_r = tuple(SymScalar() for _ in range(d))
    a_p = tuple(sym(x) - y for x, y in zip(a, a_r))
    U_prime = irrational_support(a_p, d)
    if not is_linearly_irrational(a_p, U_prime):
        raise CrossCheckError("irrational part fails the certificate")
    return AdditiveSplit(a_p, a_r, U_prime)


@dataclass
class Factorisation:
    p_prime: PolySeq
    r: PolySeq
    S_prime: list
    e: PolySeq | None = None
    rounds: list = field(default_factory=list)


def qual_factorise(alg: NilLieAlgebra, p: PolySeq, filt: Filtration) -> Factorisation:
    """p = p' * r with r rational and p' linearly irrational in its support
    sequence; both factors adapted to the filtration."""
    ok, deg = is_adapted(p.coeffs, filt)
    if not ok:
        raise PreconditionError(f"sequence is not adapted at degree {deg}", witness=deg)
    if any(p.coefficient(0)):
        raise PreconditionError("sequence must vanish at 0")
    d, s = alg.dim, filt.degree
    r_acc = PolySeq.zero(d)
    q = p
    p_k = p
    rounds = []
    for k in range(1, s + 1):
        p_parts, r_parts = {}, {}
        for i in range(1, q.degree + 1):
            b = q.coefficient(i)
            T = filt[max(i, k)]
            U = subspace_sum(irrational_support(b, d), T)
            split = qual_additive_decompose(b, U, T)
            p_parts[i], r_parts[i] = split.a_p, split.a_r
        p_k = PolySeq.make(d, p_parts)
        r_k = PolySeq.make(d, r_parts)
        r_acc = poly_star(alg, r_k, r_acc)
        q = poly_star(alg, p, -r_acc)
        rounds.append({"round": k, "r_k": r_k})
    if q != p_k:
        raise CrossCheckError("factorisation does not close after the last round")
    p_prime = p_k
    if poly_star(alg, p_prime, r_acc) != p:
        raise CrossCheckError("p' * r does not reproduce p")
    S_prime = [irrational_support(p_prime.coefficient(i), d) for i in range(1, s + 1)]
    for i, a in enumerate(p_prime.coeffs):
        if i and not is_linearly_irrational(a, S_prime[i - 1]):
            raise CrossCheckError("p' is not linearly irrational in its support")
    return Factorisation(p_prime, r_acc, S_prime, rounds=rounds)
