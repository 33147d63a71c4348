"""Systems of integer linear forms, their power expansions and V-spaces."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .exactnum import RationalSubspace, SymScalar, span_subspace, subspace_contains, sym
from .errors import CrossCheckError
from .nilalg.polyseq import PolySeq


@dataclass(frozen=True)
class LinearFormSystem:
    """t forms in D variables; rows[k] holds the coefficients of psi_k."""

    rows: tuple

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "LinearFormSystem":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows or len({len(r) for r in rows}) != 1:
            raise ValueError("forms must be a nonempty rectangular integer matrix")
        return cls(rows)

    @property
    def t(self) -> int:
        return len(self.rows)

    @property
    def D(self) -> int:
        return len(self.rows[0])

    def column(self, l: int) -> tuple[int, ...]:
        return tuple(r[l] for r in self.rows)

    def __call__(self, x: Sequence[int]) -> tuple:
        return tuple(sum(c * xi for c, xi in zip(r, x)) for r in self.rows)

    def to_json(self) -> dict:
        return {"t": self.t, "D": self.D, "forms": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data: dict) -> "LinearFormSystem":
        out = cls.of(data["forms"])
        if ("t" in data and data["t"] != out.t) or ("D" in data and data["D"] != out.D):
            raise ValueError("declared shape does not match the forms")
        return out


def monomials_of_degree(D: int, j: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree j, graded lexicographic (x_1 first)."""
    out = [e for e in itertools.product(range(j + 1), repeat=D) if sum(e) == j]
    return sorted(out, reverse=True)


def multinomial(exps: Sequence[int]) -> int:
    out = math.factorial(sum(exps))
    for e in exps:
        out //= math.factorial(e)
    return out


def power_expansion(psi: LinearFormSystem, j: int) -> dict[tuple, tuple[int, ...]]:
    """Psi(x)^j coordinatewise, as {monomial exponent: coefficient vector}."""
    out = {}
    for m in monomials_of_degree(psi.D, j):
        c = multinomial(m)
        out[m] = tuple(c * math.prod(r[l] ** m[l] for l in range(psi.D)) for r in psi.rows)
    return out


def _hadamard(u, v):
    return [a * b for a, b in zip(u, v)]


def v_space(psi: LinearFormSystem, i: int, check: bool = True) -> RationalSubspace:
    """V^i, the span of the degree-i coefficient vectors.

    Cross-checked against the span of i-fold coordinatewise products of a
    basis of V^1.
    """
    if i < 1:
        raise ValueError("V-spaces are indexed from 1")
    out = span_subspace(list(power_expansion(psi, i).values()), psi.t)
    if check:
        base = span_subspace([psi.column(l) for l in range(psi.D)], psi.t).basis
        prods = [list(itertools.accumulate(combo, _hadamard))[-1]
                 for combo in itertools.combinations_with_replacement(base, i)]
        other = span_subspace(prods, psi.t)
        if other != out:
            raise CrossCheckError(f"V^{i}: expansion {out} vs products {other}")
    return out


def v_spaces(psi: LinearFormSystem, s: int) -> list[RationalSubspace]:
    return [v_space(psi, i) for i in range(1, s + 1)]


def is_flag(psi: LinearFormSystem, s: int) -> tuple[bool, tuple[int, int] | None]:
    """V^i <= V^j for all 1 <= i <= j <= s; the witness is the first failing pair."""
    vs = v_spaces(psi, s)
    for i in range(1, s + 1):
        for j in range(i + 1, s + 1):
            if not subspace_contains(vs[j - 1], vs[i - 1]):
                return False, (i, j)
    return True, None


def tensor_index(k: int, l: int, t: int) -> int:
    """Position of X_k (x) e_l in the flattened g (x) R^t layout."""
    return k * t + l


def tensor(a: Sequence, v: Sequence) -> tuple:
    """a (x) v, flattened so that copy l of g holds v_l * a."""
    t = len(v)
    out = [0] * (len(a) * t)
    for k, x in enumerate(a):
        for l, y in enumerate(v):
            out[k * t + l] = x * y
    return tuple(out)


def psi_compose(p: PolySeq, psi: LinearFormSystem) -> dict[tuple, tuple]:
    """Pattern polynomial x -> (p(psi_1 x), ..., p(psi_t x)) in g (x) R^t,
    as {monomial exponent: tensor coefficient}.  Requires p(0) = 0."""
    if any(p.coefficient(0)):
        raise ValueError("psi_compose needs p(0) = 0")
    out = {}
    for i in range(1, p.degree + 1):
        a = p.coefficient(i)
        if not any(a):
            continue
        for m, v in power_expansion(psi, i).items():
            out[m] = tensor(a, v)
    return out


def evaluate_pattern(poly: dict[tuple, tuple], x: Sequence[int]) -> tuple:
    size = len(next(iter(poly.values()))) if poly else 0
    out = [SymScalar() for _ in range(size)]
    for m, c in poly.items():
        w = math.prod(xi ** e for xi, e in zip(x, m))
        for r in range(size):
            if c[r]:
                out[r] = out[r] + sym(c[r]) * w
    return tuple(out)
