"""Nilpotent Lie algebras in a fixed basis, subalgebras and filtrations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exactnum import (
    RationalSubspace, full_space, span_subspace, subspace_contains, subspace_sum,
    zero_space,
)
from ..exactnum.intmat import inverse


class AlgebraError(ValueError):
    """Structure constants fail antisymmetry, Jacobi or nilpotency."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class FiltrationError(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


def _zero_vec(d):
    return tuple(Fraction(0) for _ in range(d))


class NilLieAlgebra:
    """Structure constants c[(i, j)] = {k: c_ijk} for i < j, 0-based."""

    def __init__(self, dim: int, brackets: dict, check: bool = True):
        self.dim = dim
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), out in brackets.items():
            if i == j:
                if any(out.values()):
                    raise AlgebraError("nonzero [X_i, X_i]", witness=(i, i))
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            entry = {k: sign * Fraction(c) for k, c in out.items() if c}
            if not entry:
                continue
            if (i, j) in table and table[(i, j)] != entry:
                raise AlgebraError("structure constants are not antisymmetric", witness=(i, j))
            table[(i, j)] = entry
        self.table = table
        self.step = self._compute_step(check)
        if check:
            self.check_jacobi()

    @classmethod
    def from_entries(cls, dim, entries: Sequence, check=True):
        """Entries (i, j, k, c) meaning [X_i, X_j] has X_k-coefficient c."""
        acc: dict = {}
        for i, j, k, c in entries:
            key = (i, j)
            acc.setdefault(key, {})
            acc[key][k] = acc[key].get(k, 0) + Fraction(c)
        merged: dict = {}
        for (i, j), out in acc.items():
            if i > j and (j, i) in acc:
                if {k: -c for k, c in out.items() if c} != {k: c for k, c in acc[(j, i)].items() if c}:
                    raise AlgebraError("structure constants are not antisymmetric", witness=(j, i))
                continue
            merged[(i, j)] = out
        return cls(dim, merged, check=check)

    def entries(self) -> list[tuple[int, int, int, Fraction]]:
        return [(i, j, k, c) for (i, j), out in sorted(self.table.items()) for k, c in sorted(out.items())]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        z = [0] * self.dim
        for (i, j), out in self.table.items():
            xi, xj, yi, yj = x[i], x[j], y[i], y[j]
            t = xi * yj - xj * yi
            if not t:
                continue
            for k, c in out.items():
                z[k] = z[k] + c * t
        return tuple(z)

    def basis_bracket(self, i: int, j: int) -> tuple:
        if i == j:
            return _zero_vec(self.dim)
        if i < j:
            out = self.table.get((i, j), {})
            return tuple(out.get(k, Fraction(0)) for k in range(self.dim))
        return tuple(-x for x in self.basis_bracket(j, i))

    def bracket_spaces(self, a: RationalSubspace, b: RationalSubspace) -> RationalSubspace:
        vecs = [self.bracket(u, v) for u in a.vectors() for v in b.vectors()]
        return span_subspace(vecs, self.dim)

    def lower_central_series(self, limit: int | None = None) -> list[RationalSubspace]:
        cur = full_space(self.dim)
        out = [cur]
        limit = limit if limit is not None else self.dim + 1
        while cur.dim and len(out) <= limit:
            cur = self.bracket_spaces(full_space(self.dim), cur)
            out.append(cur)
        return out

    def _compute_step(self, check):
        series = self.lower_central_series()
        if series[-1].dim:
            if check:
                raise AlgebraError("algebra is not nilpotent", witness=series[-1])
            return None
        return len(series) - 1

    def check_jacobi(self):
        e = [tuple(Fraction(int(a == b)) for a in range(self.dim)) for b in range(self.dim)]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    t1 = self.bracket(e[i], self.bracket(e[j], e[k]))
                    t2 = self.bracket(e[j], self.bracket(e[k], e[i]))
                    t3 = self.bracket(e[k], self.bracket(e[i], e[j]))
                    if any(a + b + c for a, b, c in zip(t1, t2, t3)):
                        raise AlgebraError("Jacobi identity fails", witness=(i, j, k))

    def center(self) -> RationalSubspace:
        from ..exactnum.intmat import rational_nullspace
        rows = []
        for i in range(self.dim):
            # coordinate k of [x, X_i] as a linear function of x
            cols = [self.basis_bracket(j, i) for j in range(self.dim)]
            rows.extend([[cols[j][k] for j in range(self.dim)] for k in range(self.dim)])
        return span_subspace(rational_nullspace(rows, self.dim), self.dim)

    def change_basis(self, p: Sequence[Sequence]) -> "NilLieAlgebra":
        """Algebra in the basis whose vectors are the columns of p."""
        d = self.dim
        pinv = inverse([[Fraction(x) for x in row] for row in p])
        cols = [tuple(Fraction(p[r][c]) for r in range(d)) for c in range(d)]
        table = {}
        for a in range(d):
            for b in range(a + 1, d):
                z = self.bracket(cols[a], cols[b])
                coords = {k: sum(pinv[k][r] * z[r] for r in range(d)) for k in range(d)}
                coords = {k: c for k, c in coords.items() if c}
                if coords:
                    table[(a, b)] = coords
        return NilLieAlgebra(d, table)

    def to_json(self) -> dict:
        from ..exactnum import fraction_str
        return {"dim": self.dim, "step": self.step,
                "brackets": [[i, j, k, fraction_str(c)] for i, j, k, c in self.entries()]}

    @classmethod
    def from_json(cls, data: dict) -> "NilLieAlgebra":
        from ..exactnum import to_fraction
        alg = cls.from_entries(int(data["dim"]),
                               [(int(i), int(j), int(k), to_fraction(c)) for i, j, k, c in data.get("brackets", [])])
        if "step" in data and data["step"] is not None and int(data["step"]) != alg.step:
            raise AlgebraError(f"declared step {data['step']} but computed {alg.step}")
        return alg

    def __eq__(self, other):
        return isinstance(other, NilLieAlgebra) and self.dim == other.dim and self.table == other.table

    def __repr__(self):
        return f"NilLieAlgebra(dim={self.dim}, step={self.step}, brackets={self.entries()})"


def heisenberg() -> NilLieAlgebra:
    return NilLieAlgebra(3, {(0, 1): {2: 1}})


def abelian(d: int) -> NilLieAlgebra:
    return NilLieAlgebra(d, {})


def filiform(d: int) -> NilLieAlgebra:
    """[X_0, X_i] = X_{i+1} for 1 <= i < d-1; step d-1."""
    return NilLieAlgebra(d, {(0, i): {i + 1: 1} for i in range(1, d - 1)})


def free_step3_rank2() -> NilLieAlgebra:
    """Free nilpotent algebra of step 3 on two generators (dimension 5)."""
    return NilLieAlgebra(5, {(0, 1): {2: 1}, (0, 2): {3: 1}, (1, 2): {4: 1}})


def direct_sum(a: NilLieAlgebra, b: NilLieAlgebra) -> NilLieAlgebra:
    table = dict(a.table)
    for (i, j), out in b.table.items():
        table[(i + a.dim, j + a.dim)] = {k + a.dim: c for k, c in out.items()}
    return NilLieAlgebra(a.dim + b.dim, table)


def smallest_subalgebra(alg: NilLieAlgebra, generators: Sequence[Sequence]) -> RationalSubspace:
    cur = span_subspace(list(generators), alg.dim)
    while True:
        nxt = subspace_sum(cur, alg.bracket_spaces(cur, cur))
        if nxt == cur:
            return cur
        cur = nxt


def is_subalgebra(alg: NilLieAlgebra, s: RationalSubspace) -> bool:
    return subspace_contains(s, alg.bracket_spaces(s, s))


@dataclass(frozen=True)
class Filtration:
    """g_1 >= g_2 >= ... >= g_s; g_0 = g_1 and g_i = 0 beyond the degree."""

    spaces: tuple

    @property
    def degree(self) -> int:
        return len(self.spaces)

    @property
    def ambient(self) -> int:
        return self.spaces[0].ambient

    def __getitem__(self, i: int) -> RationalSubspace:
        if i <= 0:
            return self.spaces[0]
        if i > len(self.spaces):
            return zero_space(self.ambient)
        return self.spaces[i - 1]

    def __iter__(self):
        return iter(self.spaces)

    def __len__(self):
        return len(self.spaces)


def lower_central_filtration(alg: NilLieAlgebra) -> Filtration:
    series = alg.lower_central_series()
    return Filtration(tuple(series[: max(alg.step, 1)]))


def validate_filtration(alg: NilLieAlgebra, filt: Filtration) -> tuple[bool, dict | None]:
    """Check nesting and [g_i, g_j] <= g_{i+j}; returns (ok, witness)."""
    s = filt.degree
    for i in range(1, s):
        if not subspace_contains(filt[i], filt[i + 1]):
            bad = next(b for b in filt[i + 1].basis if not filt[i].contains_vector(b))
            return False, {"kind": "not_nested", "i": i, "vector": list(bad)}
    for i in range(1, s + 1):
        for j in range(i, s + 1):
            target = filt[i + j]
            for u in filt[i].vectors():
                for v in filt[j].vectors():
                    z = alg.bracket(u, v)
                    if not target.contains_vector(z):
                        return False, {"kind": "bracket", "i": i, "j": j,
                                       "vector": [str(x) for x in z]}
    return True, None


def h_spaces(alg: NilLieAlgebra, filt: Filtration) -> list[RationalSubspace]:
    """h_i = subalgebra generated by g_{i+1} and [g_j, g_{i-j}], 1 <= j < i."""
    out = []
    for i in range(1, filt.degree + 1):
        parts = [filt[i + 1]]
        for j in range(1, i):
            parts.append(alg.bracket_spaces(filt[j], filt[i - j]))
        gens = [b for p in parts for b in p.vectors()]
        out.append(smallest_subalgebra(alg, gens) if gens else zero_space(alg.dim))
    return out


def is_adapted(coeffs: Sequence[Sequence], filt: Filtration) -> tuple[bool, int | None]:
    """Each degree-i coefficient lies in g_i (the constant term in g_0)."""
    for i, a in enumerate(coeffs):
        if any(a) and not filt[i].contains(a):
            return False, i
    return True, None
