"""Smoothness norms of torus-valued polynomials; smallness and rationality."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Mapping

from ..exactnum import dist_to_int, sym_eval
from .lattice import _stirling2_table
from .polyseq import PolySeq


def _stirling1_signed(n: int) -> list[int]:
    # coefficients of x(x-1)...(x-n+1) in powers of x
    row = [1]
    for m in range(n):
        new = [0] * (len(row) + 1)
        for j, c in enumerate(row):
            new[j + 1] += c
            new[j] -= m * c
        row = new
    return row


def monomial_to_binomial(f: Mapping[tuple, object]) -> dict[tuple, object]:
    """Coefficients of prod_i x_i^{k_i} -> coefficients of prod_i C(x_i, j_i)."""
    out: dict = {}
    for k, c in f.items():
        factors = [[(j, s * math.factorial(j)) for j, s in enumerate(_stirling2_table(ki)) if s]
                   for ki in k]
        for combo in itertools.product(*factors):
            j = tuple(t[0] for t in combo)
            w = math.prod(t[1] for t in combo)
            out[j] = out.get(j, 0) + c * w
    return {j: c for j, c in out.items() if c}


def binomial_to_monomial(f: Mapping[tuple, object]) -> dict[tuple, object]:
    out: dict = {}
    for j, c in f.items():
        factors = [[(k, Fraction(s, math.factorial(ji))) for k, s in enumerate(_stirling1_signed(ji)) if s]
                   for ji in j]
        for combo in itertools.product(*factors):
            k = tuple(t[0] for t in combo)
            w = math.prod((t[1] for t in combo), start=Fraction(1))
            out[k] = out.get(k, 0) + c * w
    return {k: c for k, c in out.items() if c}


def _as_real(c):
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return c


def cinf_norm_binomial(f: Mapping[tuple, object], N: int, basis: str = "monomial") -> float:
    """sup over j != 0 of prod_i N^{j_i} ||alpha_j||, alpha in the binomial basis."""
    alpha = monomial_to_binomial(f) if basis == "monomial" else dict(f)
    best = 0.0
    for j, c in alpha.items():
        if any(j):
            best = max(best, float(N ** sum(j) * dist_to_int(_as_real(c))))
    return best


def cinf_norm_monomial(f: Mapping[tuple, object], N: int, basis: str = "monomial") -> float:
    """sup over m != 1 of N^{deg m} ||beta_m||, beta in the monomial basis."""
    beta = dict(f) if basis == "monomial" else binomial_to_monomial(f)
    best = 0.0
    for k, c in beta.items():
        if any(k):
            best = max(best, float(N ** sum(k) * dist_to_int(_as_real(c))))
    return best


def inf_norm(v) -> float:
    return max((abs(float(x)) for x in v), default=0.0)


def is_small_vector(v, eps: float) -> bool:
    return inf_norm(v) <= eps


def is_rational_vector(v, A: int) -> bool:
    """Entries lie in (1/A)Z."""
    return all((Fraction(x) * A).denominator == 1 for x in v)


def seq_denominator(p: PolySeq) -> int:
    """Least A such that every coefficient of a rational sequence is in (1/A)Z."""
    out = 1
    for a in p.coeffs:
        for x in a:
            out = math.lcm(out, x.to_fraction().denominator)
    return out


def is_small_seq(p: PolySeq, A: float, N: float, assignment=None) -> bool:
    """(A, N)-small: the degree-i coefficient has sup norm at most A / N^i."""
    for i, a in enumerate(p.coeffs):
        if inf_norm([sym_eval(x, assignment) for x in a]) > A / N ** i:
            return False
    return True


def smallness_constant(e: PolySeq, N: float, assignment=None) -> float:
    """Least A with e (A, N)-small."""
    return max((inf_norm([sym_eval(x, assignment) for x in a]) * N ** i
                for i, a in enumerate(e.coeffs)), default=0.0)
