"""Exact counting-lemma checks and numeric Weyl-sum verification."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import GuardExceeded, PreconditionError
from .exactnum import ONE, RationalSubspace, SymScalar, default_assignment, full_space, subspace_sum, sym
from .exactnum.intmat import rational_nullspace, integral_vector
from .forms import LinearFormSystem, psi_compose
from .irrfact.qualitative import is_linearly_irrational_seq
from .irrfact.quantitative import IntegerLinearMap, enumerate_integer_maps
from .nilalg import NilLieAlgebra
from .nilalg.polyseq import PolySeq
from .pattern import g_psi, padded, tensor_algebra

GRID_GUARD = 10 ** 7
BLOCK_ROWS = 8


def derived(alg: NilLieAlgebra, h: RationalSubspace) -> RationalSubspace:
    return alg.bracket_spaces(h, h)


def is_character(alg: NilLieAlgebra, h: RationalSubspace, eta: Sequence) -> bool:
    """Whether an ambient linear map restricts to a character of h."""
    return all(sum(Fraction(c) * x for c, x in zip(eta, b)) == 0 for b in derived(alg, h).basis)


def character_family(alg: NilLieAlgebra, h: RationalSubspace, H: int) -> list[IntegerLinearMap]:
    """Integer maps of height <= H on h (dual Hermite coordinates) that vanish
    on [h, h], one per sign class; each comes with an ambient lift."""
    return enumerate_integer_maps(h, H, vanish_on=derived(alg, h))


@dataclass
class CountingReport:
    verdict: bool
    membership: bool
    g_psi: RationalSubspace
    hom_dim: int
    witness: list | None = None        # dual coordinates of a character killing p^Psi mod Q
    pattern: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict


def _characters_basis(alg, h: RationalSubspace) -> list[list[Fraction]]:
    der = derived(alg, h)
    rows = [h.coordinates(b) for b in der.basis]
    return rational_nullspace(rows, h.dim) if rows else \
        [[Fraction(int(i == j)) for i in range(h.dim)] for j in range(h.dim)]


def check_counting_exact(alg: NilLieAlgebra, p: PolySeq, S: Sequence[RationalSubspace],
                         psi: LinearFormSystem) -> CountingReport:
    """p^Psi takes values in g^Psi(S_.) and is additively irrational there:
    no nonzero rational character of g^Psi makes it rational."""
    if any(p.coefficient(0)):
        raise PreconditionError("sequence must vanish at 0")
    s = max(p.degree, len(S))
    S = padded(S, s, alg.dim)
    v = is_linearly_irrational_seq(p, S)
    if not v:
        raise PreconditionError(f"sequence is not linearly irrational in S at degree {v.degree}",
                                witness=v.witness)
    talg = tensor_algebra(alg, psi.t)
    gp = g_psi(alg, psi, S)
    poly = psi_compose(p, psi)
    membership = all(gp.contains(c) for c in poly.values())
    if not membership:
        return CountingReport(False, False, gp, 0, pattern=poly)
    chars = _characters_basis(talg, gp)
    coords = {m: gp.coordinates_sym(c) for m, c in poly.items()}
    keys = sorted({(m, mono) for m, cs in coords.items() for x in cs for mono in sym(x).terms if mono != ONE})
    mat = []
    for eta in chars:
        row = []
        for m, mono in keys:
            row.append(sum((c * sym(x).terms.get(mono, 0) for c, x in zip(eta, coords[m])), Fraction(0)))
        mat.append(row)
    # eta -> irrational parts of eta(p^Psi) must be injective
    cols = [list(r) for r in zip(*mat)] if keys else []
    witness = None
    if len(chars):
        kern = rational_nullspace(cols, len(chars)) if cols else \
            [[Fraction(int(i == j)) for i in range(len(chars))] for j in range(len(chars))]
        if kern:
            comb = kern[0]
            witness = integral_vector([sum(w * eta[q] for w, eta in zip(comb, chars)) for q in range(gp.dim)])
    return CountingReport(witness is None, True, gp, len(chars), witness, pattern=poly)


def compose_character(eta: Sequence, poly: Mapping[tuple, tuple]) -> dict[tuple, SymScalar]:
    """eta o p^Psi as {monomial: scalar}, for an ambient map eta."""
    out = {}
    for m, c in poly.items():
        v = SymScalar()
        for a, x in zip(eta, c):
            if a and x:
                v = v + sym(x) * a
        if v:
            out[m] = v
    return out


def _frac(x):
    return x - np.floor(x)


def _phases(coeffs: Mapping[tuple, float], grids: Sequence[np.ndarray]) -> np.ndarray:
    """sum_m frac(c_m x^m) mod 1, multiplying one factor at a time."""
    total = np.zeros(grids[0].shape)
    for m, c in coeffs.items():
        c = Fraction(c) - math.floor(Fraction(c)) if isinstance(c, (int, Fraction)) else c - math.floor(c)
        v = np.full(grids[0].shape, float(c))
        for g, e in zip(grids, m):
            for _ in range(e):
                v = _frac(v * g)
        total += v
    return _frac(total)


def _axis(N: int, box: str) -> np.ndarray:
    if box == "positive":
        return np.arange(1, N + 1, dtype=float)
    if box == "signed":
        return np.arange(-N, N + 1, dtype=float)
    raise ValueError(f"unknown box {box!r}")


def weyl_sum_complex(coeffs: Mapping[tuple, float], N: int, box: str = "positive", workers: int = 1) -> complex:
    """E_{x in box} e(f(x)) for f = sum_m c_m x^m, with compensated summation.

    The first coordinate is cut into fixed blocks; blocks are summed
    independently and combined in order, so the result does not depend on
    the number of workers."""
    if not coeffs:
        return complex(1.0)
    D = len(next(iter(coeffs)))
    axis = _axis(N, box)
    total_pts = len(axis) ** D
    if total_pts > GRID_GUARD:
        raise GuardExceeded(f"grid of {total_pts} points exceeds {GRID_GUARD}")
    coeffs = {m: (Fraction(c) if isinstance(c, (int, Fraction)) else float(c)) for m, c in coeffs.items()}

    def block(start):
        first = axis[start:start + BLOCK_ROWS]
        grids = np.meshgrid(first, *([axis] * (D - 1)), indexing="ij")
        ph = _phases(coeffs, grids).ravel() * (2 * math.pi)
        return math.fsum(np.cos(ph)), math.fsum(np.sin(ph))

    starts = range(0, len(axis), BLOCK_ROWS)
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(block, starts))
    else:
        parts = [block(s) for s in starts]
    re = math.fsum(p[0] for p in parts)
    im = math.fsum(p[1] for p in parts)
    return complex(re, im) / total_pts


def weyl_sum(coeffs: Mapping[tuple, float], N: int, box: str = "positive", workers: int = 1) -> float:
    return abs(weyl_sum_complex(coeffs, N, box, workers))


def weyl_moduli_batch(polys: Sequence[Mapping[tuple, float]], N: int, box: str = "positive") -> np.ndarray:
    """Moduli for many polynomials in two or fewer variables.

    Pure-variable terms factor out as vectors; mixed terms form an N x N
    kernel shared by every polynomial with the same mixed coefficients."""
    out = np.zeros(len(polys))
    if not polys:
        return out
    dims = {len(m) for f in polys for m in f}
    D = dims.pop() if dims else 1
    if dims or D > 2:
        return np.array([weyl_sum(f, N, box) for f in polys])
    axis = _axis(N, box)
    n = len(axis)
    groups: dict[tuple, list[int]] = {}
    pure: list[tuple[np.ndarray, np.ndarray]] = []
    for idx, f in enumerate(polys):
        fx = {m: c for m, c in f.items() if D == 1 or m[1] == 0}
        fy = {m: c for m, c in f.items() if D == 2 and m[0] == 0 and m[1]}
        mixed = tuple(sorted((m, round(float(c) - math.floor(float(c)), 13)) for m, c in f.items()
                             if D == 2 and m[0] and m[1]))
        mixed = tuple((m, c) for m, c in mixed if c not in (0.0, 1.0))
        ux = np.exp(2j * math.pi * _phases({(m[0],): c for m, c in fx.items()}, [axis])) if fx else np.ones(n)
        vy = np.exp(2j * math.pi * _phases({(m[1],): c for m, c in fy.items()}, [axis])) if fy else np.ones(n)
        pure.append((ux, vy))
        groups.setdefault(mixed, []).append(idx)
    if D == 1:
        return np.array([abs(u.sum()) / n for u, _ in pure])
    gx, gy = np.meshgrid(axis, axis, indexing="ij")
    for mixed, idxs in groups.items():
        U = np.stack([pure[i][0] for i in idxs])
        V = np.stack([pure[i][1] for i in idxs])
        if not mixed:
            vals = U.sum(axis=1) * V.sum(axis=1)
        else:
            K = np.exp(2j * math.pi * _phases(dict(mixed), [gx, gy]))
            vals = np.einsum("ij,ij->i", U @ K, V)
        out[idxs] = np.abs(vals) / (n * n)
    return out


@dataclass
class NumericReport:
    N_values: list
    max_modulus: list                  # per N, over nontrivial characters
    characters: int
    moduli_at_top: list                # per character at the largest N
    vanishing_moduli: list             # ambient characters vanishing on g^Psi
    constraint_exact: bool             # each of those composes to a constant polynomial
    decay: bool
    passed: bool
    threshold: float = 0.1
    sweep: list = field(default_factory=list)   # (character dual coords, N, modulus) rows


def verify_counting_numeric(alg: NilLieAlgebra, p: PolySeq, S: Sequence[RationalSubspace],
                            psi: LinearFormSystem, N_values: Sequence[int] = (50, 100, 200, 400),
                            H: int = 3, assignment: Mapping[str, float] | None = None,
                            box: str = "positive", threshold: float = 0.1) -> NumericReport:
    """Weyl sums of eta o p^Psi for every nontrivial character eta of g^Psi of
    height <= H, plus ambient characters vanishing on g^Psi."""
    if assignment is None:
        assignment = default_assignment(sorted(p.symbols()))
    s = max(p.degree, len(S))
    S = padded(S, s, alg.dim)
    talg = tensor_algebra(alg, psi.t)
    gp = g_psi(alg, psi, S)
    poly = psi_compose(p, psi)
    chars = character_family(talg, gp, H)
    numeric = []
    for eta in chars:
        f = compose_character(eta.coeffs, poly)
        numeric.append({m: v.evaluate(assignment) for m, v in f.items()})
    per_N = []
    top = None
    sweep = []
    for N in N_values:
        mod = weyl_moduli_batch(numeric, N, box)
        per_N.append(float(mod.max()) if mod.size else 0.0)
        sweep.extend((eta.dual, N, float(m)) for eta, m in zip(chars, mod))
        top = mod
    # ambient characters of g (x) R^t vanishing on g^Psi: maps killing g^Psi + [g^t, g^t]
    amb = subspace_sum(gp, talg.bracket_spaces(full_space(talg.dim), full_space(talg.dim)))
    vanish = []
    constant = True
    for row in amb.annihilator:
        f = compose_character(row, poly)
        constant = constant and all(not any(m) for m in f)
        vanish.append(weyl_sum({m: v.evaluate(assignment) for m, v in f.items()} if f else {}, N_values[0], box))
    decay = all(b <= a * 1.1 + 1e-12 for a, b in zip(per_N, per_N[1:])) and per_N[-1] < per_N[0]
    passed = (per_N[-1] < threshold) and decay and constant and all(v == 1.0 for v in vanish)
    return NumericReport(list(N_values), per_N, len(chars), [float(x) for x in top] if top is not None else [],
                         vanish, constant, decay, passed, threshold, sweep)



@dataclass(frozen=True)
class SweepConfig:
    """Settings for a numeric counting sweep."""
    N_values: tuple = (50, 100, 200, 400)
    height: int = 3
    assignment: dict | None = None
    box: str = "positive"
    threshold: float = 0.1

    def run(self, alg: NilLieAlgebra, p: PolySeq, S: Sequence[RationalSubspace],
            psi: LinearFormSystem) -> NumericReport:
        return verify_counting_numeric(alg, p, S, psi, self.N_values, self.height, self.assignment,
                                       self.box, self.threshold)
