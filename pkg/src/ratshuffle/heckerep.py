"""Polynomial representation of the degenerate affine Hecke algebra.

The generators sigma_i act on Q[hbar][Y_1..Y_k] by the Demazure-type operator

    sigma_i^kappa = P_{i,i+1} + kappa (1 - P_{i,i+1})/(Y_i - Y_{i+1}),

whose divided-difference part always divides exactly, so polynomials go to
polynomials.  On top of this the module provides the closed-form action of the
(anti)symmetrizers, rational Hall-Littlewood polynomials, Schur polynomials via
the bialternant ratio, and the hbar-deformed power sums.

Symmetrization is organized monomial-wise: an antisymmetrized monomial is a
signed alternant determined by the sorted exponent pattern, so the k! orbit is
generated once per distinct pattern instead of once per input monomial.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

from .exactalg import Polynomial, Variable, poly, rf
from .permops import perm_sign

__all__ = [
    "Y",
    "HBAR",
    "KAPPA",
    "apply_sigma",
    "apply_word",
    "apply_perm",
    "word_symmetrizer_oracle",
    "symmetrize",
    "antisymmetrize",
    "apply_symmetrizer",
    "vandermonde",
    "is_symmetric",
    "hall_littlewood_rational",
    "schur",
    "deformed_power_sum",
    "elementary_symmetric",
    "express_in_elementary",
    "perm_reduced_word",
]

HBAR = poly(Variable("hbar"))
KAPPA = poly(Variable("kappa"))


def Y(i: int) -> Polynomial:
    return poly(Variable("Y", i))


def _swap(f: Polynomial, i: int) -> Polynomial:
    yi, yj = Variable("Y", i), Variable("Y", i + 1)
    return f.subs({yi: Polynomial.variable(yj), yj: Polynomial.variable(yi)})


def apply_sigma(i: int, kappa, f: Polynomial) -> Polynomial:
    """sigma_i^kappa acting on a polynomial in Y_1..Y_k; result is a polynomial."""
    if not isinstance(f, Polynomial):
        raise TypeError("apply_sigma expects a polynomial")
    kappa = poly(kappa)
    swapped = _swap(f, i)
    diff = f - swapped
    if diff.is_zero():
        return swapped
    return swapped + kappa * diff.exact_div(Y(i) - Y(i + 1))


def apply_word(word: Iterable[int], kappa, f: Polynomial) -> Polynomial:
    """Act by sigma_{i_1}^kappa ... sigma_{i_r}^kappa (rightmost letter first)."""
    for i in reversed(list(word)):
        f = apply_sigma(i, kappa, f)
    return f


@lru_cache(maxsize=None)
def perm_reduced_word(s: tuple) -> tuple:
    """A reduced word for the permutation s (one-line, 0-indexed)."""
    s = list(s)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(s) - 1):
            if s[i] > s[i + 1]:
                s[i], s[i + 1] = s[i + 1], s[i]
                word.append(i + 1)
                changed = True
    # bubble sort built s -> id from the left, so the word read backwards
    # multiplies id up to s; the action below needs letters applied in order
    return tuple(reversed(word))


def apply_perm(s: Sequence[int], kappa, f: Polynomial) -> Polynomial:
    """Action of the group element with one-line form s (0-indexed)."""
    return apply_word(perm_reduced_word(tuple(s)), kappa, f)


def word_symmetrizer_oracle(k: int, kappa, sign: str, f: Polynomial) -> Polynomial:
    """(1/k!) sum over S_k of the word action; the slow reference path."""
    total = Polynomial.zero()
    for s in itertools.permutations(range(k)):
        img = apply_perm(s, kappa, f)
        if sign == "-":
            img = img.scale(perm_sign(s))
        total = total + img
    return total.scale(Fraction(1, _fact(k)))


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# Fast monomial-wise symmetrization


def _split_mono(m, k: int):
    """Split a monomial into its Y_1..Y_k exponent vector and the rest."""
    ys = [0] * k
    rest = []
    for v, e in m:
        if v.family == "Y" and v.index is not None and v.index <= k:
            ys[v.index - 1] = e
        else:
            rest.append((v, e))
    return tuple(ys), tuple(rest)


def _join_mono(ys, rest) -> tuple:
    out = [(Variable("Y", i + 1), e) for i, e in enumerate(ys) if e]
    out.extend(rest)
    return tuple(sorted(out, key=lambda p: p[0].sort_key()))


def symmetrize(f: Polynomial, k: int) -> Polynomial:
    """Sym_k f = sum over sigma of f(Y_sigma(1), ..., Y_sigma(k))."""
    buckets = {}
    for m, c in f.terms.items():
        ys, rest = _split_mono(m, k)
        key = (tuple(sorted(ys, reverse=True)), rest)
        buckets[key] = buckets.get(key, Fraction(0)) + c
    out = {}
    for (pattern, rest), c in buckets.items():
        if not c:
            continue
        images = set(itertools.permutations(pattern))
        stab = _fact(k) // len(images)
        for img in images:
            mono = _join_mono(img, rest)
            out[mono] = out.get(mono, Fraction(0)) + c * stab
    return Polynomial(out)


def antisymmetrize(f: Polynomial, k: int) -> Polynomial:
    """Sym_k^- f = sum over sigma of sgn(sigma) f(Y_sigma(1), ..., Y_sigma(k))."""
    buckets = {}
    for m, c in f.terms.items():
        ys, rest = _split_mono(m, k)
        if len(set(ys)) < k:
            continue  # repeated exponents die under antisymmetrization
        order = sorted(range(k), key=lambda i: -ys[i])
        pattern = tuple(ys[i] for i in order)
        # ys = pattern permuted back; sign of that rearrangement
        sgn = perm_sign(tuple(order))
        key = (pattern, rest)
        buckets[key] = buckets.get(key, Fraction(0)) + c * sgn
    out = {}
    for (pattern, rest), c in buckets.items():
        if not c:
            continue
        for s in itertools.permutations(range(k)):
            img = [0] * k
            for b in range(k):
                img[s[b]] = pattern[b]
            mono = _join_mono(tuple(img), rest)
            out[mono] = out.get(mono, Fraction(0)) + c * perm_sign(s)
    return Polynomial(out)


def vandermonde(k: int) -> Polynomial:
    out = Polynomial.const(1)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            out = out * (Y(i) - Y(j))
    return out


def _div_vandermonde(f: Polynomial, k: int) -> Polynomial:
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            f = f.exact_div(Y(i) - Y(j))
    return f


def apply_symmetrizer(k: int, kappa, sign: str, f: Polynomial) -> Polynomial:
    """Closed-form action of the Hecke (anti)symmetrizer idempotent.

    '+': e_k^kappa f  = (1/k!) Sym_k( prod_{i<j} (Y_i - Y_j + kappa)/(Y_i - Y_j) f )
    '-': (e_k^-)^kappa f = (1/k!) prod_{i<j} (Y_i - Y_j - kappa)/(Y_i - Y_j) Sym_k^- f
    """
    kappa = poly(kappa)
    if k == 1:
        return f
    if sign == "+":
        vk = Polynomial.const(1)
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                vk = vk * (Y(i) - Y(j) + kappa)
        num = antisymmetrize(vk * f, k)
        return _div_vandermonde(num, k).scale(Fraction(1, _fact(k)))
    if sign == "-":
        vk = Polynomial.const(1)
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                vk = vk * (Y(i) - Y(j) - kappa)
        num = antisymmetrize(f, k)
        return (vk * _div_vandermonde(num, k)).scale(Fraction(1, _fact(k)))
    raise ValueError("sign must be '+' or '-'")


def is_symmetric(f: Polynomial, k: int) -> bool:
    return all(_swap(f, i) == f for i in range(1, k))


# ---------------------------------------------------------------------------
# Symmetric-function constructions


def _check_partition(parts: Sequence[int]):
    parts = tuple(parts)
    if any(p < 0 for p in parts):
        raise ValueError("partition parts must be non-negative")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError("partition parts must be weakly decreasing")
    return parts


def hall_littlewood_rational(parts: Sequence[int], k: int) -> Tuple[int, Polynomial]:
    """Rational Hall-Littlewood polynomial for the partition.

    Returns (psi_power, polynomial): the actual value is psi**psi_power times
    the polynomial, with psi_power = -|partition| carried as an integer tag.
    """
    parts = _check_partition(parts)
    if len(parts) > k:
        raise ValueError("partition has more parts than the rank")
    parts = parts + (0,) * (k - len(parts))
    mono = Polynomial.const(1)
    for a, p in enumerate(parts, start=1):
        mono = mono * Y(a) ** p
    return (-sum(parts), apply_symmetrizer(k, HBAR, "+", mono))


def schur(parts: Sequence[int], k: int) -> Polynomial:
    """Schur polynomial s_lambda(Y_1..Y_k) by the bialternant ratio."""
    parts = _check_partition(parts)
    if len(parts) > k:
        raise ValueError("partition has more parts than the rank")
    parts = tuple(parts) + (0,) * (k - len(parts))
    mono = Polynomial.const(1)
    for a, p in enumerate(parts, start=1):
        mono = mono * Y(a) ** (p + k - a)
    return _div_vandermonde(antisymmetrize(mono, k), k)


def deformed_power_sum(a: int, k: int) -> Polynomial:
    """p^hbar_a = sum_i Y_i^a prod_{j != i} (Y_i - Y_j + hbar)/(Y_i - Y_j)."""
    if a < 0:
        raise ValueError("power must be >= 0")
    if a == 0:
        return Polynomial.const(k)
    V = vandermonde(k)
    total = Polynomial.zero()
    for i in range(1, k + 1):
        di = Polynomial.const(1)
        ni = Polynomial.const(1)
        for j in range(1, k + 1):
            if j != i:
                di = di * (Y(i) - Y(j))
                ni = ni * (Y(i) - Y(j) + HBAR)
        total = total + Y(i) ** a * ni * V.exact_div(di)
    return total.exact_div(V)


def elementary_symmetric(r: int, k: int) -> Polynomial:
    out = Polynomial.zero()
    for comb in itertools.combinations(range(1, k + 1), r):
        t = Polynomial.const(1)
        for i in comb:
            t = t * Y(i)
        out = out + t
    return out


def express_in_elementary(f: Polynomial, k: int) -> dict:
    """Write a symmetric polynomial as a polynomial in e_1..e_k.

    Returns {exponent tuple over (e_1..e_k): coefficient Polynomial in hbar}.
    Uses the classical leading-monomial descent, which terminates exactly when
    the input is symmetric in Y_1..Y_k.
    """
    out: dict = {}
    es = [elementary_symmetric(r, k) for r in range(k + 1)]
    work = f
    while not work.is_zero():
        # lex-leading Y-pattern among monomials
        best = None
        for m, c in work.terms.items():
            ys, rest = _split_mono(m, k)
            key = ys
            if best is None or key > best[0]:
                best = (key, rest, c)
        lam, rest, c = best
        if any(lam[i] < lam[i + 1] for i in range(k - 1)):
            raise ValueError("input is not symmetric in Y_1..Y_k")
        expo = tuple(lam[i] - (lam[i + 1] if i + 1 < k else 0) for i in range(k))
        prod = Polynomial.const(1)
        for i, e in enumerate(expo):
            if e:
                prod = prod * es[i + 1] ** e
        coeff = Polynomial({rest: c})
        out[expo] = out.get(expo, Polynomial.zero()) + coeff
        work = work - coeff * prod
    return {e: c for e, c in out.items() if not c.is_zero()}
