"""Baker-Campbell-Hausdorff product with exact rational coefficients.

log(exp X exp Y) is expanded in the free associative algebra on {X, Y}; each
homogeneous part is a Lie element, so the Dynkin-Specht-Wever map
w -> [..[w1, w2], ..., wn] / n turns it into an explicit bracket expansion.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

MAX_WEIGHT = 8


class StepTooLarge(ValueError):
    pass


def _mul(p: dict, q: dict, cap: int) -> dict:
    out: dict = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            if len(w1) + len(w2) > cap:
                continue
            w = w1 + w2
            out[w] = out.get(w, 0) + c1 * c2
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def _log_series(cap: int) -> dict:
    # W = exp(X) exp(Y) - 1, truncated at total degree cap
    w = {}
    for a in range(cap + 1):
        for b in range(cap + 1 - a):
            if a + b:
                w["X" * a + "Y" * b] = Fraction(1, factorial(a) * factorial(b))
    total: dict = {}
    power = {"": Fraction(1)}
    for k in range(1, cap + 1):
        power = _mul(power, w, cap)
        sign = Fraction((-1) ** (k + 1), k)
        for word, c in power.items():
            total[word] = total.get(word, 0) + sign * c
    return {word: c for word, c in total.items() if c}


@lru_cache(maxsize=None)
def bch_bracket_terms(weight: int) -> tuple[tuple[str, Fraction], ...]:
    """Left-normed bracket words with coefficients summing to the weight-n
    part of BCH.  Words starting with a repeated letter vanish and are dropped."""
    if weight > MAX_WEIGHT:
        raise StepTooLarge(f"BCH tables stop at weight {MAX_WEIGHT}")
    series = _log_series(weight)
    acc: dict = {}
    for word, c in series.items():
        if len(word) != weight:
            continue
        if weight >= 2 and word[0] == word[1]:
            continue
        acc[word] = acc.get(word, 0) + c / weight
    return tuple(sorted((w, c) for w, c in acc.items() if c))


def bch(alg, x, y):
    """x * y = log(exp x exp y) in a nilpotent algebra of step <= 8."""
    step = alg.step or 0
    if step > MAX_WEIGHT:
        raise StepTooLarge(f"step {step} exceeds the supported weight {MAX_WEIGHT}")
    d = alg.dim
    out = [x[i] + y[i] for i in range(d)]
    if step < 2:
        return tuple(out)
    letters = {"X": tuple(x), "Y": tuple(y)}
    cache: dict[str, tuple] = {}

    def nested(word: str):
        # value of [..[w1, w2], ..., wn]
        if word in cache:
            return cache[word]
        if len(word) == 1:
            val = letters[word]
        else:
            val = alg.bracket(nested(word[:-1]), letters[word[-1]])
        cache[word] = val
        return val

    for n in range(2, step + 1):
        for word, c in bch_bracket_terms(n):
            v = nested(word)
            for i in range(d):
                if v[i]:
                    out[i] = out[i] + c * v[i]
    return tuple(out)


def bch_inverse(x):
    return tuple(-a for a in x)


def bch_many(alg, *elements):
    out = elements[0]
    for e in elements[1:]:
        out = bch(alg, out, e)
    return out
