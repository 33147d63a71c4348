"""Polynomial sequences n -> sum_i a_i n^i in a nilpotent Lie algebra."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from ..exactnum import SymScalar, sym, sym_eval
from .algebra import Filtration, NilLieAlgebra, is_adapted
from .bch import bch

N_SYMBOL = "_n"  # reserved polynomial variable, never a user symbol


class NotAdaptedError(ValueError):
    def __init__(self, msg, degree=None):
        super().__init__(msg)
        self.degree = degree


@dataclass(frozen=True)
class PolySeq:
    """coeffs[i] is the degree-i coefficient a_i (a tuple of SymScalars)."""

    dim: int
    coeffs: tuple

    @classmethod
    def make(cls, dim: int, coeffs: Mapping[int, Sequence] | Sequence[Sequence]) -> "PolySeq":
        if not isinstance(coeffs, Mapping):
            coeffs = dict(enumerate(coeffs))
        top = max((i for i, v in coeffs.items() if any(sym(x) for x in v)), default=-1)
        out = []
        for i in range(top + 1):
            v = coeffs.get(i, [0] * dim)
            if len(v) != dim:
                raise ValueError(f"coefficient of degree {i} has length {len(v)}, expected {dim}")
            out.append(tuple(sym(x) for x in v))
        return cls(dim, tuple(out))

    @classmethod
    def zero(cls, dim: int) -> "PolySeq":
        return cls(dim, ())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> tuple:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return tuple(SymScalar() for _ in range(self.dim))

    def as_element(self) -> tuple:
        """The sequence as one algebra element over Q[symbols][n]."""
        out = [SymScalar() for _ in range(self.dim)]
        for i, a in enumerate(self.coeffs):
            ni = SymScalar.symbol(N_SYMBOL, i) if i else SymScalar.const(1)
            for k in range(self.dim):
                if a[k]:
                    out[k] = out[k] + a[k] * ni
        return tuple(out)

    @classmethod
    def from_element(cls, dim: int, elem: Sequence) -> "PolySeq":
        by_deg: dict[int, list] = {}
        for k, x in enumerate(elem):
            for i, c in sym(x).coefficient_in(N_SYMBOL).items():
                by_deg.setdefault(i, [SymScalar() for _ in range(dim)])[k] = c
        return cls.make(dim, by_deg)

    def evaluate(self, n) -> tuple:
        """Exact value at an integer (or rational) n."""
        n = Fraction(n)
        out = [SymScalar() for _ in range(self.dim)]
        for i, a in enumerate(self.coeffs):
            for k in range(self.dim):
                out[k] = out[k] + a[k] * (n ** i)
        return tuple(out)

    def __add__(self, other: "PolySeq") -> "PolySeq":
        top = max(len(self.coeffs), len(other.coeffs))
        return PolySeq.make(self.dim, {i: [x + y for x, y in zip(self.coefficient(i), other.coefficient(i))]
                                       for i in range(top)})

    def __neg__(self) -> "PolySeq":
        return PolySeq(self.dim, tuple(tuple(-x for x in a) for a in self.coeffs))

    def __sub__(self, other: "PolySeq") -> "PolySeq":
        return self + (-other)

    def is_rational(self) -> bool:
        return all(x.is_rational() for a in self.coeffs for x in a)

    def symbols(self) -> set[str]:
        return {s for a in self.coeffs for x in a for s in x.symbols()}

    def numeric(self, assignment=None) -> list[list[float]]:
        return [[sym_eval(x, assignment) for x in a] for a in self.coeffs]

    def substitute(self, values: Mapping[str, SymScalar]) -> "PolySeq":
        out = []
        for a in self.coeffs:
            row = []
            for x in a:
                for s, v in values.items():
                    x = x.substitute(s, v)
                row.append(x)
            out.append(row)
        return PolySeq.make(self.dim, out)

    def to_json(self) -> dict:
        return {"coeffs": {str(i): [x.to_json() for x in a] for i, a in enumerate(self.coeffs) if any(a)}}

    @classmethod
    def from_json(cls, data: dict, dim: int, registry=None) -> "PolySeq":
        coeffs = {int(k): [SymScalar.from_json(x, registry) for x in v] for k, v in data["coeffs"].items()}
        return cls.make(dim, coeffs)


def poly_star(alg: NilLieAlgebra, p: PolySeq, q: PolySeq, filt: Filtration | None = None) -> PolySeq:
    """Pointwise BCH product n -> p(n) * q(n), exact in n."""
    if filt is not None:
        for name, s in (("left", p), ("right", q)):
            ok, deg = is_adapted(s.coeffs, filt)
            if not ok:
                raise NotAdaptedError(f"{name} factor is not adapted at degree {deg}", deg)
    return PolySeq.from_element(alg.dim, bch(alg, p.as_element(), q.as_element()))


def poly_inverse(p: PolySeq) -> PolySeq:
    return -p


def poly_star_many(alg, *seqs: PolySeq) -> PolySeq:
    out = seqs[0]
    for s in seqs[1:]:
        out = poly_star(alg, out, s)
    return out
