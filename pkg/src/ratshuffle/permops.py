"""The algebra C[S_k] ⋉ M_k: permutations with rational-function coefficients.

Elements are finite sums sum_sigma c_sigma * sigma where the coefficients are
rational functions of z_1..z_k (and kappa, xi, hbar).  A term c*sigma is the
operator f |-> c * sigma(f), so multiplication transports coefficients:

    (c*sigma)(d*tau) = (c * sigma(d)) * (sigma tau),

where sigma(d) substitutes z_i -> z_{sigma(i)} and (sigma tau)(i) = sigma(tau(i)).
Worked example: P12 * (z1*id) = z2 * P12, since P12 moves the argument slot
before the multiplication happens.

On top of the plain algebra this module builds the rational R-operator
R_ij(xi|kappa) = G(z_i - z_j, kappa)*Id - G(z_i - z_j, xi)*P_ij with kernel
G(z, w) = (z + w)/(z w), its braiding element, the kappa-(anti)symmetrizer
products, and the symmetric-group idempotents obtained from spectral products
of sigma_i + 1/m.  The closed forms they must equal are built independently so
the two can be compared term by term.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Union

from .exactalg import Polynomial, RationalFunction, Variable, poly, rf

__all__ = [
    "PermAlgebraElement",
    "g_factor",
    "perm_compose",
    "su_r",
    "su_rcheck",
    "su_symmetrizer",
    "su_symmetrizer_closed",
    "hecke_idempotent_via_r",
    "symmetric_group_idempotent",
    "hecke_sigma_element",
    "hecke_rcheck",
    "qybe_holds",
    "perm_sign",
]

Perm = tuple  # one-line notation, 0-indexed: s[i] = sigma(i+1) - 1


def _identity(k: int) -> Perm:
    return tuple(range(k))


def _compose(s: Perm, t: Perm) -> Perm:
    """(s t)(i) = s(t(i))."""
    return tuple(s[t[i]] for i in range(len(s)))


def perm_sign(s: Perm) -> int:
    inv = 0
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] > s[j]:
                inv += 1
    return -1 if inv & 1 else 1


def _transport(coeff: RationalFunction, s: Perm) -> RationalFunction:
    """Substitute z_i -> z_{s(i)} (and Y_i -> Y_{s(i)}) in the coefficient."""
    mapping = {}
    for fam in ("z", "Y"):
        for i, si in enumerate(s):
            if si != i:
                mapping[Variable(fam, i + 1)] = Polynomial.variable(Variable(fam, si + 1))
    if not mapping:
        return coeff
    return coeff.subs(mapping)


class PermAlgebraElement:
    """Finite sum of permutations of S_k with RationalFunction coefficients."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms=None):
        self.k = k
        self.terms = {}
        if terms:
            for s, c in terms.items():
                c = rf(c)
                if not c.is_zero():
                    self.terms[tuple(s)] = c

    @classmethod
    def identity(cls, k: int) -> "PermAlgebraElement":
        return cls(k, {_identity(k): rf(1)})

    @classmethod
    def permutation(cls, k: int, s: Iterable[int], one_based: bool = True) -> "PermAlgebraElement":
        s = tuple(s)
        if one_based:
            s = tuple(i - 1 for i in s)
        if sorted(s) != list(range(k)):
            raise ValueError(f"not a permutation of length {k}: {s}")
        return cls(k, {s: rf(1)})

    @classmethod
    def transposition(cls, k: int, i: int, j: int) -> "PermAlgebraElement":
        """The operator P_ij (1-based slots)."""
        if not (1 <= i <= k and 1 <= j <= k and i != j):
            raise ValueError(f"bad transposition ({i},{j}) for k={k}")
        s = list(range(k))
        s[i - 1], s[j - 1] = s[j - 1], s[i - 1]
        return cls(k, {tuple(s): rf(1)})

    def __add__(self, other: "PermAlgebraElement") -> "PermAlgebraElement":
        self._check(other)
        out = dict(self.terms)
        for s, c in other.terms.items():
            acc = out.get(s)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                out.pop(s, None)
            else:
                out[s] = acc
        return PermAlgebraElement(self.k, out)

    def __neg__(self) -> "PermAlgebraElement":
        return PermAlgebraElement(self.k, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other: "PermAlgebraElement") -> "PermAlgebraElement":
        return self + (-other)

    def __mul__(self, other) -> "PermAlgebraElement":
        if isinstance(other, PermAlgebraElement):
            return perm_compose(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> "PermAlgebraElement":
        return self.scale(other)

    def scale(self, c) -> "PermAlgebraElement":
        c = rf(c)
        return PermAlgebraElement(self.k, {s: c * v for s, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermAlgebraElement):
            return NotImplemented
        return self.k == other.k and self.terms == other.terms

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, s: Iterable[int], one_based: bool = True) -> RationalFunction:
        s = tuple(s)
        if one_based:
            s = tuple(i - 1 for i in s)
        return self.terms.get(s, rf(0))

    def _check(self, other: "PermAlgebraElement"):
        if self.k != other.k:
            raise ValueError(f"rank mismatch: {self.k} vs {other.k}")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for s in sorted(self.terms):
            c = self.terms[s]
            name = "id" if s == _identity(self.k) else "perm[" + ",".join(str(i + 1) for i in s) + "]"
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    __repr__ = __str__


def perm_compose(a: PermAlgebraElement, b: PermAlgebraElement) -> PermAlgebraElement:
    """Semidirect-product multiplication: (c*s)(d*t) = (c * s(d)) * (st)."""
    a._check(b)
    out: dict = {}
    for s, c in a.terms.items():
        for t, d in b.terms.items():
            st = _compose(s, t)
            coeff = c * _transport(d, s)
            acc = out.get(st)
            acc = coeff if acc is None else acc + coeff
            if acc.is_zero():
                out.pop(st, None)
            else:
                out[st] = acc
    return PermAlgebraElement(a.k, out)


# ---------------------------------------------------------------------------
# Shibukawa-Ueno operators (rational kernel theta(z) = z)


def g_factor(z, w) -> RationalFunction:
    """G(z, w) = (z + w)/(z w), the rational R-operator kernel."""
    z, w = rf(z), rf(w)
    # divide factor by factor so the denominator keeps its linear factorization
    return (z + w) * z.inverse() * w.inverse()


def _zvar(i: int) -> RationalFunction:
    return rf(Variable("z", i))


def su_r(i: int, j: int, xi, kappa, k: int) -> PermAlgebraElement:
    """R_ij(xi|kappa) = G(z_i - z_j, kappa)*Id - G(z_i - z_j, xi)*P_ij."""
    if i == j:
        raise ValueError("su_r requires i != j")
    if not (1 <= i <= k and 1 <= j <= k):
        raise ValueError(f"slots ({i},{j}) out of range for k={k}")
    d = _zvar(i) - _zvar(j)
    ident = PermAlgebraElement.identity(k)
    pij = PermAlgebraElement.transposition(k, i, j)
    return ident.scale(g_factor(d, kappa)) - pij.scale(g_factor(d, xi))


def su_rcheck(i: int, xi, kappa, k: int) -> PermAlgebraElement:
    """Braiding element P_{i,i+1} R_{i,i+1} = G(z_{i+1}-z_i,kappa)P - G(z_{i+1}-z_i,xi)Id."""
    d = _zvar(i + 1) - _zvar(i)
    pij = PermAlgebraElement.transposition(k, i, i + 1)
    ident = PermAlgebraElement.identity(k)
    return pij.scale(g_factor(d, kappa)) - ident.scale(g_factor(d, xi))


def su_symmetrizer(k: int, kappa, sign: str = "+") -> PermAlgebraElement:
    """Ordered product of braiding elements.

    sign '+': H_k(kappa) = (Rc_{k-1}(-kappa) ... Rc_1(-(k-1)kappa)) ...
              (Rc_{k-1}(-kappa) Rc_{k-2}(-2kappa)) (Rc_{k-1}(-kappa)),
    where the spectral argument of Rc_i inside each group is -(k-i)*kappa.

    sign '-': A_k(kappa) = (Rc_{k-1}(kappa)) (Rc_{k-2}(2kappa) Rc_{k-1}(kappa))
              ... (Rc_1((k-1)kappa) ... Rc_{k-1}(kappa)).
    """
    kappa = rf(kappa)
    out = PermAlgebraElement.identity(k)
    if sign == "+":
        for g in range(1, k):  # group g descends from index k-1 to g
            for i in range(k - 1, g - 1, -1):
                out = out * su_rcheck(i, -kappa * (k - i), kappa, k)
    elif sign == "-":
        for g in range(k - 1, 0, -1):  # group g ascends from index g to k-1
            for i in range(g, k):
                out = out * su_rcheck(i, kappa * (k - i), kappa, k)
    else:
        raise ValueError("sign must be '+' or '-'")
    return out


def su_symmetrizer_closed(k: int, kappa, sign: str = "+") -> PermAlgebraElement:
    """Closed forms: Sym_k . prod G(z_i - z_j, kappa) for '+', and
    prod G(z_i - z_j, -kappa) . Sym_k^- for '-'."""
    kappa = rf(kappa)
    if sign == "+":
        g = rf(1)
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                g = g * g_factor(_zvar(i) - _zvar(j), kappa)
        out: dict = {}
        for s in itertools.permutations(range(k)):
            out[s] = _transport(g, s)
        return PermAlgebraElement(k, out)
    if sign == "-":
        g = rf(1)
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                g = g * g_factor(_zvar(i) - _zvar(j), -kappa)
        out = {}
        for s in itertools.permutations(range(k)):
            out[s] = g if perm_sign(s) > 0 else -g
        return PermAlgebraElement(k, out)
    raise ValueError("sign must be '+' or '-'")


# ---------------------------------------------------------------------------
# Degenerate affine Hecke side: group-algebra R-matrices and idempotents


def hecke_rcheck(i: int, m, k: int) -> PermAlgebraElement:
    """sigma_i + 1/m in C[S_k] (constant coefficients)."""
    return PermAlgebraElement.transposition(k, i, i + 1) + PermAlgebraElement.identity(k).scale(
        rf(1) / rf(m)
    )


def hecke_idempotent_via_r(k: int, sign: str = "+") -> PermAlgebraElement:
    """Ordered spectral products reproducing e_k and e_k^-."""
    out = PermAlgebraElement.identity(k)
    if sign == "+":
        for g in range(1, k):
            for i in range(k - 1, g - 1, -1):
                out = out * hecke_rcheck(i, k - i, k)
        return out.scale(Fraction(1, _factorial(k)))
    if sign == "-":
        for g in range(k - 1, 0, -1):
            for i in range(g, k):
                out = out * hecke_rcheck(i, -(k - i), k)
        # the overall sign is pinned by expanding the product: (-1)^(k(k-1)/2)
        sgn = -1 if (k * (k - 1) // 2) & 1 else 1
        return out.scale(Fraction(sgn, _factorial(k)))
    raise ValueError("sign must be '+' or '-'")


def symmetric_group_idempotent(k: int, sign: str = "+") -> PermAlgebraElement:
    """e_k = (1/k!) sum sigma, or e_k^- = (1/k!) sum sgn(sigma) sigma."""
    c = Fraction(1, _factorial(k))
    out = {}
    for s in itertools.permutations(range(k)):
        out[s] = rf(c if sign == "+" else c * perm_sign(s))
    return PermAlgebraElement(k, out)


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def hecke_sigma_element(i: int, k: int, kappa, family: str = "z") -> PermAlgebraElement:
    """The Demazure-type operator P_{i,i+1} + kappa (1 - P_{i,i+1})/(x_i - x_{i+1})
    as a semidirect-product element (x is the chosen variable family)."""
    kappa = rf(kappa)
    xi_ = rf(Variable(family, i))
    xi1 = rf(Variable(family, i + 1))
    c = kappa / (xi_ - xi1)
    p = PermAlgebraElement.transposition(k, i, i + 1)
    ident = PermAlgebraElement.identity(k)
    return p + ident.scale(c) - p.scale(c)


def qybe_holds(k: int = 3) -> bool:
    """Quantum Yang-Baxter equation for the rational R-operator with symbolic
    spectral parameters xi_1, xi_2, xi_3 and kappa."""
    if k < 3:
        raise ValueError("QYBE check needs k >= 3")
    kap = rf(Variable("kappa"))
    x = [rf(Variable("xi", i)) for i in range(1, 4)]
    r12 = su_r(1, 2, x[0] - x[1], kap, k)
    r13 = su_r(1, 3, x[0] - x[2], kap, k)
    r23 = su_r(2, 3, x[1] - x[2], kap, k)
    lhs = r12 * r13 * r23
    rhs = r23 * r13 * r12
    return lhs == rhs
