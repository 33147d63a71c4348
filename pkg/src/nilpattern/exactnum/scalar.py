"""Exact rationals and polynomial scalars over formally independent symbols."""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by symbol name
ONE: Monomial = ()

Number = Union[int, Fraction]


def to_fraction(x) -> Fraction:
    """Accept int, Fraction, float or a 'num/den' string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as a rational")


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def height(q) -> int:
    q = Fraction(q)
    return max(abs(q.numerator), q.denominator)


def dist_to_int(q) -> Fraction | float:
    """Distance to the nearest integer, exact for Fractions."""
    if isinstance(q, (Fraction, int)):
        q = Fraction(q)
        r = q - math.floor(q)
        return min(r, 1 - r)
    r = q - math.floor(q)
    return min(r, 1.0 - r)


def lcm_denominators(values: Iterable) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    acc = dict(m1)
    for s, e in m2:
        acc[s] = acc.get(s, 0) + e
    return tuple(sorted(acc.items()))


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    return "*".join(s if e == 1 else f"{s}^{e}" for s, e in m)


_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_monomial(text: str, registry: Iterable[str] | None = None) -> Monomial:
    text = text.strip()
    if text in ("", "1"):
        return ONE
    acc: dict[str, int] = {}
    for part in text.split("*"):
        m = _FACTOR.match(part.strip())
        if not m:
            raise ValueError(f"bad monomial factor {part!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if registry is not None and name not in registry:
            raise ValueError(f"undeclared symbol {name!r}")
        acc[name] = acc.get(name, 0) + exp
    return tuple(sorted((s, e) for s, e in acc.items() if e))


def mono_degree(m: Monomial, symbol: str | None = None) -> int:
    if symbol is None:
        return sum(e for _, e in m)
    for s, e in m:
        if s == symbol:
            return e
    return 0


class SymScalar:
    """Element of Q[symbols]; symbols are treated as algebraically independent.

    The canonical form is a dict monomial -> nonzero Fraction, so equality is
    structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SymScalar":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, q: Number) -> "SymScalar":
        q = Fraction(q)
        return cls._raw({ONE: q} if q else {})

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "SymScalar":
        return cls._raw({((name, power),): Fraction(1)})

    @classmethod
    def lift(cls, x) -> "SymScalar":
        if isinstance(x, SymScalar):
            return x
        return cls.const(to_fraction(x))

    @property
    def terms(self) -> dict:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_rational(self) -> bool:
        return all(m == ONE for m in self._terms)

    def constant(self) -> Fraction:
        return self._terms.get(ONE, Fraction(0))

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.constant()

    def symbols(self) -> set[str]:
        return {s for m in self._terms for s, _ in m}

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms)

    def __add__(self, other):
        if not isinstance(other, SymScalar):
            if isinstance(other, (int, Fraction)):
                if not other:
                    return self
                other = SymScalar.const(other)
            else:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SymScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return SymScalar._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        if not isinstance(other, SymScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return SymScalar._raw({})
            return SymScalar._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, SymScalar):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return SymScalar._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SymScalar):
            other = other.to_fraction()
        q = Fraction(other)
        if not q:
            raise ZeroDivisionError("division of SymScalar by zero")
        return self * (1 / q)

    def __pow__(self, k: int):
        out = SymScalar.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, SymScalar):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({ONE: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def coefficient_in(self, symbol: str) -> dict[int, "SymScalar"]:
        """Split as sum_k c_k symbol^k with c_k free of `symbol`."""
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            k = mono_degree(m, symbol)
            rest = tuple(p for p in m if p[0] != symbol)
            out.setdefault(k, {})[rest] = c
        return {k: SymScalar._raw(v) for k, v in out.items()}

    def substitute(self, symbol: str, value: "SymScalar") -> "SymScalar":
        out = SymScalar()
        for k, c in self.coefficient_in(symbol).items():
            out = out + c * (value ** k)
        return out

    def evaluate(self, assignment: Mapping[str, float]) -> float:
        total = []
        for m, c in self._terms.items():
            v = float(c)
            for s, e in m:
                v *= assignment[s] ** e
            total.append(v)
        return math.fsum(total)

    def to_json(self) -> dict:
        return {mono_str(m): fraction_str(c) for m, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data, registry=None) -> "SymScalar":
        if isinstance(data, SymScalar):
            return data
        if isinstance(data, dict):
            return cls({parse_monomial(k, registry): to_fraction(v) for k, v in data.items()})
        return cls.const(to_fraction(data))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items()):
            cs = str(c)
            parts.append(cs if m == ONE else (mono_str(m) if c == 1 else f"{cs}*{mono_str(m)}"))
        return " + ".join(parts)


def sym(x) -> SymScalar:
    return SymScalar.lift(x)


def sym_is_rational(x) -> bool:
    return not isinstance(x, SymScalar) or x.is_rational()


def sym_eval(x, assignment: Mapping[str, float] | None = None) -> float:
    if not isinstance(x, SymScalar):
        return float(x)
    if assignment is None:
        assignment = default_assignment(sorted(x.symbols()))
    return x.evaluate(assignment)


def _primes():
    n = 2
    while True:
        if all(n % p for p in range(2, int(n ** 0.5) + 1)):
            yield n
        n += 1


def default_assignment(symbols: Iterable[str]) -> dict[str, float]:
    """Square roots of consecutive primes, in the given symbol order."""
    gen = _primes()
    return {s: math.sqrt(next(gen)) for s in symbols}


def parse_assignment(text: str) -> dict[str, float]:
    """Parse 'a=sqrt2,b=sqrt(3),c=0.25,d=1/7'."""
    out = {}
    for item in filter(None, (t.strip() for t in text.split(","))):
        name, _, val = item.partition("=")
        val = val.strip()
        m = re.fullmatch(r"sqrt\(?\s*([0-9./]+)\s*\)?", val)
        if m:
            out[name.strip()] = math.sqrt(float(Fraction(m.group(1))))
        else:
            out[name.strip()] = float(Fraction(val))
    return out


def components(vec) -> dict[Monomial, list[Fraction]]:
    """Split a vector of scalars into rational vectors, one per monomial."""
    d = len(vec)
    out: dict[Monomial, list[Fraction]] = {}
    for i, x in enumerate(vec):
        if isinstance(x, SymScalar):
            for m, c in x.terms.items():
                out.setdefault(m, [Fraction(0)] * d)[i] = c
        elif x:
            out.setdefault(ONE, [Fraction(0)] * d)[i] = Fraction(x)
    return out


def assemble(parts: Mapping[Monomial, list]) -> tuple:
    """Inverse of `components`."""
    if not parts:
        return ()
    d = len(next(iter(parts.values())))
    acc = [dict() for _ in range(d)]
    for m, v in parts.items():
        for i, c in enumerate(v):
            if c:
                acc[i][m] = Fraction(c)
    return tuple(SymScalar(t) for t in acc)
