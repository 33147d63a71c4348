"""Rescaling a nesting basis so its lattice is closed under the group law,
and periods of rational polynomial sequences."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exactnum import SymScalar, span_subspace, sym
from ..exactnum.intmat import inverse, rref
from .algebra import NilLieAlgebra
from .bch import bch
from .polyseq import N_SYMBOL, PolySeq


def _independent_extension(base: list, candidates: list) -> list:
    chosen = []
    for c in candidates:
        mat = [list(v) for v in base + chosen + [c]]
        if len(rref(mat)[1]) == len(mat):
            chosen.append(c)
    return chosen


def nesting_basis(alg: NilLieAlgebra) -> list[list[int]]:
    """Integer basis X with [g, X_i] inside span(X_{i+1}, ...), built through
    the lower central series."""
    series = alg.lower_central_series()[:-1]
    layers: list[list] = []
    deeper: list = []
    for space in reversed(series):
        extra = _independent_extension(deeper, [list(b) for b in space.basis])
        layers.append(extra)
        deeper = deeper + extra
    out = []
    for layer in reversed(layers):
        out.extend(layer)
    return out


def is_nesting(alg: NilLieAlgebra, basis: Sequence[Sequence]) -> bool:
    d = alg.dim
    for i in range(d):
        tail = span_subspace([basis[j] for j in range(i + 1, d)], d)
        for e in range(d):
            unit = [Fraction(int(r == e)) for r in range(d)]
            if not tail.contains_vector(alg.bracket(unit, [Fraction(x) for x in basis[i]])):
                return False
    return True


@dataclass
class Rescaling:
    nested_basis: list          # columns X_i in the standard coordinates
    k: list[int]                # X'_i = X_i / k_i
    rescaled_basis: list        # columns X'_i
    group_law: list             # P'_i(a', b') as SymScalars in symbols a0.., b0..
    integral: bool
    measured_exponent: float | None = None


def _coords_symbols(prefix, d):
    return [SymScalar.symbol(f"{prefix}{i}") for i in range(d)]


def multiplicative_rescale(alg: NilLieAlgebra, basis: Sequence[Sequence] | None = None,
                           M: int | None = None) -> Rescaling:
    d = alg.dim
    if basis is None:
        basis = nesting_basis(alg)
    elif not is_nesting(alg, basis):
        raise ValueError("basis does not satisfy the nesting property")
    p = [[Fraction(basis[c][r]) for c in range(d)] for r in range(d)]
    local = alg.change_basis(p)
    a, b = _coords_symbols("a", d), _coords_symbols("b", d)
    law = bch(local, a, b)
    k: list[int] = []
    scaled_law = []
    for i in range(d):
        own = ((("a" + str(i), 1),), (("b" + str(i), 1),))
        terms, linear = {}, {}
        for mono, c in sym(law[i]).terms.items():
            if mono in own:
                linear[mono] = c  # k_i * (a'_i / k_i)
                continue
            scale = 1
            for s, e in mono:
                scale *= k[int(s[1:])] ** e
            terms[mono] = c / scale
        den = 1
        for c in terms.values():
            den = math.lcm(den, c.denominator)
        k.append(den)
        scaled = {m: c * den for m, c in terms.items()}
        scaled.update(linear)
        scaled_law.append(SymScalar(scaled))
    integral = all(c.denominator == 1 for P in scaled_law for c in P.terms.values())
    rescaled = [[Fraction(x) / ki for x in col] for col, ki in zip(basis, k)]
    expo = None
    if M and M > 1:
        expo = math.log(max(k)) / math.log(M)
    return Rescaling([list(c) for c in basis], k, rescaled, scaled_law, integral, expo)


def _stirling2_table(n: int) -> list[int]:
    row = [1]
    for m in range(1, n + 1):
        new = [0] * (m + 1)
        for j in range(1, m + 1):
            new[j] = j * (row[j] if j < len(row) else 0) + row[j - 1]
        row = new
    return row


def binomial_coefficients_1d(coeffs: Sequence) -> list[Fraction]:
    """Monomial coefficients c_k (of n^k) to coefficients of C(n, j)."""
    top = len(coeffs) - 1
    out = [Fraction(0)] * (top + 1)
    for kdeg, c in enumerate(coeffs):
        if not c:
            continue
        s2 = _stirling2_table(kdeg)
        for j in range(kdeg + 1):
            out[j] += Fraction(c) * s2[j] * math.factorial(j)
    return out


def is_integer_valued(coeffs: Sequence) -> bool:
    return all(c.denominator == 1 for c in binomial_coefficients_1d(coeffs))


def _shift(elem, q: int):
    shifted = SymScalar.symbol(N_SYMBOL) + q
    return tuple(sym(x).substitute(N_SYMBOL, shifted) for x in elem)


def rational_period(alg: NilLieAlgebra, r: PolySeq, basis: Sequence[Sequence] | None = None,
                    A: int | None = None, M: int | None = None, bound: int | None = None) -> int:
    """Least q >= 1 with r(n)^{-1} * r(n+q) in span_Z(basis) for every integer n."""
    if not r.is_rational():
        raise ValueError("rational_period needs a rational polynomial sequence")
    d = alg.dim
    to_coords = None
    if basis is not None:
        to_coords = inverse([[Fraction(basis[c][rr]) for c in range(d)] for rr in range(d)])
    if bound is None:
        if A is None:
            A = max((max(abs(x.constant().numerator), x.constant().denominator)
                     for a in r.coeffs for x in a), default=1)
        bound = (A * (M or 1)) ** 4
    elem = r.as_element()
    neg = tuple(-x for x in elem)
    for q in range(1, bound + 1):
        diff = bch(alg, neg, _shift(elem, q))
        if to_coords is not None:
            diff = tuple(sum((to_coords[i][j] * diff[j] for j in range(d)), SymScalar()) for i in range(d))
        ok = True
        for x in diff:
            parts = sym(x).coefficient_in(N_SYMBOL)
            top = max(parts, default=0)
            if not is_integer_valued([parts.get(i, SymScalar()).constant() for i in range(top + 1)]):
                ok = False
                break
        if ok:
            return q
    raise ValueError(f"no period found up to {bound}")
