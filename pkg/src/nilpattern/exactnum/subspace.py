"""Rational subspaces of Q^d in canonical (Hermite) form."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .intmat import hnf_columns, integer_kernel, integral_vector
from .scalar import SymScalar, assemble, components


def _reduce_rows(rows: list[list[int]]) -> list[list[int]]:
    """Greedy pairwise size reduction of a lattice basis (not LLL)."""
    def key(r):
        return (max(map(abs, r)), sum(map(abs, r)))

    rows = [list(r) for r in rows]
    improved = True
    while improved:
        improved = False
        for i in range(len(rows)):
            for j in range(len(rows)):
                if i == j:
                    continue
                a, b = rows[i], rows[j]
                bb = sum(x * x for x in b)
                q0 = round(Fraction(sum(x * y for x, y in zip(a, b)), bb))
                for q in {q0, 1, -1}:
                    if not q:
                        continue
                    c = [x - q * y for x, y in zip(a, b)]
                    if key(c) < key(a):
                        rows[i] = a = c
                        improved = True
    out = []
    for r in rows:
        lead = next(x for x in r if x)
        out.append([-x for x in r] if lead < 0 else r)
    return sorted(out, key=lambda r: (key(r), r))


@dataclass(frozen=True)
class RationalSubspace:
    """A subspace S <= Q^d stored by the Hermite basis of S n Z^d.

    `basis` holds column vectors.  Two subspaces are equal iff their stored
    bases agree.
    """

    ambient: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(b) if x) for b in self.basis)

    @cached_property
    def annihilator(self) -> tuple:
        """Integer maps generating the annihilator lattice, size reduced."""
        ker = integer_kernel([list(b) for b in self.basis], self.ambient) if self.basis else \
            [[int(i == j) for i in range(self.ambient)] for j in range(self.ambient)]
        return tuple(tuple(r) for r in _reduce_rows(ker))

    def vectors(self) -> list[list[Fraction]]:
        return [[Fraction(x) for x in b] for b in self.basis]

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise ValueError("dimension mismatch")
        return all(sum(a * x for a, x in zip(row, v) if a) == 0 for row in self.annihilator)

    def contains(self, vec: Sequence) -> bool:
        """Membership of a vector of rationals or SymScalars, per monomial."""
        return all(self.contains_vector(v) for v in components(vec).values())

    def coordinates(self, v: Sequence) -> list[Fraction]:
        """Coefficients of v in the Hermite basis (v must lie in S)."""
        out = []
        for j, (b, p) in enumerate(zip(self.basis, self.pivots)):
            acc = Fraction(v[p]) - sum((out[i] * self.basis[i][p] for i in range(j)), Fraction(0))
            out.append(acc / b[p])
        recon = [sum((c * b[r] for c, b in zip(out, self.basis)), Fraction(0)) for r in range(self.ambient)]
        if any(Fraction(x) != y for x, y in zip(v, recon)):
            raise ValueError("vector is not in the subspace")
        return out

    def coordinates_sym(self, vec: Sequence) -> tuple:
        parts = {m: self.coordinates(v) for m, v in components(vec).items()}
        if not parts:
            return tuple(SymScalar() for _ in range(self.dim))
        return assemble(parts)

    def from_coordinates(self, coords: Sequence) -> tuple:
        return tuple(sum((c * b[r] for c, b in zip(coords, self.basis) if c), 0 * Fraction(0))
                     for r in range(self.ambient))

    def __repr__(self):
        return f"RationalSubspace(ambient={self.ambient}, basis={[list(b) for b in self.basis]})"


def _canonical(cols: Iterable[Sequence[int]], d: int) -> RationalSubspace:
    return RationalSubspace(d, tuple(tuple(c) for c in hnf_columns([list(c) for c in cols], d)))


def kernel_subspace(maps: Iterable[Sequence], d: int) -> RationalSubspace:
    """The common kernel of rational linear maps given as coefficient rows."""
    rows = [integral_vector(m) for m in maps if any(m)]
    return _canonical(integer_kernel(rows, d), d)


def span_subspace(vectors: Iterable[Sequence], d: int) -> RationalSubspace:
    vecs = [integral_vector(v) for v in vectors if any(v)]
    if not vecs:
        return RationalSubspace(d, ())
    return kernel_subspace(integer_kernel(vecs, d), d)


def span_of_elements(elements: Iterable[Sequence], d: int) -> RationalSubspace:
    """Smallest rational subspace containing each monomial component."""
    vecs = []
    for e in elements:
        vecs.extend(components(e).values())
    return span_subspace(vecs, d)


def full_space(d: int) -> RationalSubspace:
    return RationalSubspace(d, tuple(tuple(int(i == j) for i in range(d)) for j in range(d)))


def zero_space(d: int) -> RationalSubspace:
    return RationalSubspace(d, ())


def subspace_sum(*spaces: RationalSubspace) -> RationalSubspace:
    d = spaces[0].ambient
    return span_subspace([b for s in spaces for b in s.basis], d)


def subspace_intersect(*spaces: RationalSubspace) -> RationalSubspace:
    d = spaces[0].ambient
    return kernel_subspace([r for s in spaces for r in s.annihilator], d)


def subspace_contains(s: RationalSubspace, x) -> bool:
    """x may be a vector or another subspace."""
    if isinstance(x, RationalSubspace):
        return all(s.contains_vector(b) for b in x.basis)
    return s.contains(x)


def subspace_equal(s: RationalSubspace, t: RationalSubspace) -> bool:
    return s == t


def subspace_complexity(s: RationalSubspace) -> int:
    """Upper bound on the complexity of S: the largest entry over the stored
    annihilator generators.  The whole space counts as complexity 1."""
    if not s.annihilator:
        return 1
    return max(max(abs(x) for x in r) for r in s.annihilator)


def map_complexity(l: Sequence, s: RationalSubspace) -> Fraction:
    """Sup norm of a linear map restricted to S, in the dual Hermite basis."""
    vals = [abs(sum(Fraction(a) * x for a, x in zip(l, b))) for b in s.basis]
    return max(vals, default=Fraction(0))
