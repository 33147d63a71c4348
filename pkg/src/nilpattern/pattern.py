"""Pattern algebras g^Psi(S_.) inside g (x) R^t, and comparison with the
Leibman algebra sum_i g_i (x) V^i."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactnum import (
    RationalSubspace, full_space, span_subspace, subspace_contains, subspace_sum, zero_space,
)
from .errors import CrossCheckError, HypothesisError, PreconditionError
from .forms import LinearFormSystem, tensor, v_space
from .nilalg import Filtration, NilLieAlgebra, h_spaces, smallest_subalgebra, validate_filtration


_TENSOR_CACHE: dict = {}


def tensor_algebra(alg: NilLieAlgebra, t: int) -> NilLieAlgebra:
    """g (x) R^t with [a (x) v, b (x) w] = [a, b] (x) (v w), i.e. t copies of g."""
    key = (tuple(alg.entries()), alg.dim, t)
    if key not in _TENSOR_CACHE:
        table = {}
        for (i, j), out in alg.table.items():
            for l in range(t):
                table[(i * t + l, j * t + l)] = {k * t + l: c for k, c in out.items()}
        _TENSOR_CACHE[key] = NilLieAlgebra(alg.dim * t, table, check=False)
    return _TENSOR_CACHE[key]


def tensor_space(s: RationalSubspace, v: RationalSubspace) -> RationalSubspace:
    vecs = [tensor(a, w) for a in s.basis for w in v.basis]
    return span_subspace(vecs, s.ambient * v.ambient)


def padded(spaces: Sequence[RationalSubspace], s: int, d: int) -> list[RationalSubspace]:
    spaces = list(spaces)
    return spaces + [zero_space(d)] * (s - len(spaces))


def w_sequence(alg: NilLieAlgebra, S: Sequence[RationalSubspace]) -> list[RationalSubspace]:
    """W_1 = S_1, W_i = S_i + sum_{j<i} [W_j, W_{i-j}].

    Brackets can push W past the last S_i (when S_s is not central), so the
    sequence runs to step * len(S) and trailing zeros beyond len(S) are cut."""
    out: list[RationalSubspace] = []
    s = len(S)
    for i in range(1, max(s, alg.step * s) + 1):
        parts = [S[i - 1]] if i <= s else []
        parts += [alg.bracket_spaces(out[j - 1], out[i - j - 1]) for j in range(1, i)]
        out.append(subspace_sum(*parts) if parts else zero_space(alg.dim))
    while len(out) > s and out[-1].dim == 0:
        out.pop()
    return out


def g_psi(alg: NilLieAlgebra, psi: LinearFormSystem, S: Sequence[RationalSubspace],
          check: bool = True) -> RationalSubspace:
    """sum_i W_i (x) V^i, cross-checked against the Lie closure of the S_i (x) V^i."""
    W = w_sequence(alg, S)
    vs = [v_space(psi, i) for i in range(1, len(W) + 1)]
    out = subspace_sum(*[tensor_space(w, v) for w, v in zip(W, vs)])
    if check:
        gens = [b for s_i, v in zip(S, vs) for b in tensor_space(s_i, v).basis]
        closure = smallest_subalgebra(tensor_algebra(alg, psi.t), gens) if gens else zero_space(out.ambient)
        if closure != out:
            raise CrossCheckError(f"g^Psi formula {out} differs from closure {closure}")
    return out


def leibman_algebra(alg: NilLieAlgebra, psi: LinearFormSystem, filt: Filtration) -> RationalSubspace:
    return subspace_sum(*[tensor_space(filt[i], v_space(psi, i)) for i in range(1, filt.degree + 1)])


def check_si_hi(alg: NilLieAlgebra, S: Sequence[RationalSubspace], filt: Filtration) -> tuple[bool, list[bool]]:
    """Whether S_i + h_i = g_i for every i (with per-degree results)."""
    S = padded(S, filt.degree, alg.dim)
    hs = h_spaces(alg, filt)
    per = [subspace_sum(S[i], hs[i]) == filt[i + 1] for i in range(filt.degree)]
    return all(per), per


def minimal_filtration(alg: NilLieAlgebra, S: Sequence[RationalSubspace], filt: Filtration | None = None) -> Filtration:
    """g'_i = sum_{k >= i} W_k, the least filtration containing S_.."""
    W = w_sequence(alg, S)
    spaces = tuple(subspace_sum(*W[i:]) for i in range(len(W)))
    out = Filtration(spaces)
    ok, wit = validate_filtration(alg, out)
    if not ok:
        raise CrossCheckError(f"minimal filtration fails validation: {wit}")
    for i, s_i in enumerate(S):
        if not subspace_contains(out[i + 1], s_i):
            raise CrossCheckError(f"minimal filtration misses S_{i + 1}")
    if filt is not None:
        for i in range(1, out.degree + 1):
            if not subspace_contains(filt[i], out[i]):
                raise HypothesisError(f"S_. is not contained in the given filtration at degree {i}")
    return out


@dataclass
class LeibmanComparison:
    leibman: RationalSubspace
    g_psi: RationalSubspace
    defect: RationalSubspace          # sum_i W_i (x) (sum_{j<i} V^j)
    middle: RationalSubspace          # sum_i W_i (x) (sum_{j<=i} V^j)
    strict: bool
    dims: dict = field(default_factory=dict)


def compare_leibman(alg: NilLieAlgebra, psi: LinearFormSystem, S: Sequence[RationalSubspace],
                    filt: Filtration) -> LeibmanComparison:
    ok, per = check_si_hi(alg, S, filt)
    if not ok:
        bad = per.index(False) + 1
        raise HypothesisError(f"S_i + h_i != g_i at i = {bad}", witness=bad)
    s = filt.degree
    S = padded(S, s, alg.dim)
    W = w_sequence(alg, S)
    vs = [v_space(psi, i) for i in range(1, s + 1)]
    t = psi.t
    upto = [subspace_sum(*vs[: i + 1]) for i in range(s)]
    below = [subspace_sum(*vs[:i]) if i else zero_space(t) for i in range(s)]
    leib = leibman_algebra(alg, psi, filt)
    middle = subspace_sum(*[tensor_space(w, u) for w, u in zip(W, upto)])
    gp = g_psi(alg, psi, S)
    defect = subspace_sum(*[tensor_space(w, b) for w, b in zip(W, below)])
    right = subspace_sum(gp, defect)
    if not (leib == middle == right):
        raise CrossCheckError("Leibman comparison identity fails")
    return LeibmanComparison(leib, gp, defect, middle, strict=gp != leib,
                             dims={"leibman": leib.dim, "g_psi": gp.dim, "defect": defect.dim})


def gw_containment(alg: NilLieAlgebra, psi: LinearFormSystem, S: Sequence[RationalSubspace],
                   filt: Filtration, j: int) -> bool:
    """With V^j = R^t and S_i + h_i = g_i, check g_j (x) R^t <= g^Psi(S_.)."""
    if v_space(psi, j) != full_space(psi.t):
        raise PreconditionError(f"V^{j} is not the whole of R^{psi.t}")
    ok, _ = check_si_hi(alg, S, filt)
    if not ok:
        raise PreconditionError("S_i + h_i = g_i fails")
    S = padded(S, filt.degree, alg.dim)
    return subspace_contains(g_psi(alg, psi, S), tensor_space(filt[j], full_space(psi.t)))
