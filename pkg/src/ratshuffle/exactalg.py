"""Exact arithmetic kernel: multivariate polynomials and reduced rational functions.

Everything downstream works over the field Q(w_i, Y_i, z_i, u, v, xi_i, kappa,
psi, hbar).  Coefficients are arbitrary-precision rationals (``fractions.Fraction``),
polynomials are sparse maps from exponent monomials to coefficients, and rational
functions are kept fully reduced with a monic denominator, so that two equal
functions have literally identical representations and equality is a dictionary
comparison.  There is no floating point anywhere.

Variable order is fixed globally (w < Y < z < u < v < xi < kappa < psi < hbar,
then by index) and the canonical printer sorts monomials by graded lexicographic
order over that variable order.

Reduction strategy: denominators produced by the library are products of linear
forms (root differences such as w1 - w2 + hbar, spectral factors u - w1, plain
variables).  A rational function carries its denominator as a factor multiset;
when every factor is linear the numerator is reduced by exact trial division,
which is complete because distinct monic linear forms are coprime.  Denominators
of unknown shape (for instance entered through the expression parser) fall back
to a multivariate gcd computed by a primitive polynomial remainder sequence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

__all__ = [
    "Variable",
    "Polynomial",
    "RationalFunction",
    "ExactDivisionError",
    "var",
    "poly",
    "rf",
    "rf_arith",
    "rf_shift",
    "denominator_admissible",
    "poly_gcd",
    "expand_at_infinity",
    "parse_expression",
    "ParseError",
]

Scalar = Union[int, Fraction]

# ---------------------------------------------------------------------------
# Variables

_FAMILIES = ("w", "Y", "z", "u", "v", "xi", "kappa", "psi", "hbar")
_FAMILY_RANK = {f: r for r, f in enumerate(_FAMILIES)}
_ALWAYS_INDEXED = frozenset({"w", "Y", "z"})
_NEVER_INDEXED = frozenset({"u", "v", "kappa", "psi", "hbar"})


@dataclass(frozen=True)
class Variable:
    """A symbol from one of the fixed families, identified by family + index."""

    family: str
    index: Optional[int] = None

    def __post_init__(self):
        if self.family not in _FAMILY_RANK:
            raise ValueError(f"unknown variable family {self.family!r}")
        if self.family in _ALWAYS_INDEXED and (self.index is None or self.index < 1):
            raise ValueError(f"family {self.family!r} requires an index >= 1")
        if self.family in _NEVER_INDEXED and self.index is not None:
            raise ValueError(f"family {self.family!r} does not take an index")
        if self.index is not None and self.index < 1:
            raise ValueError("variable index must be >= 1")

    @property
    def name(self) -> str:
        return self.family if self.index is None else f"{self.family}{self.index}"

    def sort_key(self):
        return (_FAMILY_RANK[self.family], self.index or 0)

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Variable({self.name!r})"


def var(name: str) -> Variable:
    """Build a variable from its text name, e.g. ``w1``, ``Y2``, ``hbar``, ``xi3``."""
    m = re.fullmatch(r"([A-Za-z]+?)(\d*)", name)
    if not m:
        raise ValueError(f"malformed variable name {name!r}")
    family, idx = m.group(1), m.group(2)
    return Variable(family, int(idx) if idx else None)


# ---------------------------------------------------------------------------
# Monomials: sorted tuples of (Variable, exponent) with positive exponents.

Monomial = tuple  # tuple[tuple[Variable, int], ...]

_EMPTY_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda p: p[0].sort_key()))


def _mono_key(m: Monomial):
    # Bigger key <=> bigger monomial in graded lex over the global variable order.
    total = sum(e for _, e in m)
    fr = _FAMILY_RANK
    return (total, tuple(((-fr[v.family], -(v.index or 0)), e) for v, e in m))


def _mono_total(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if monomial a divides monomial b."""
    db = dict(b)
    return all(db.get(v, 0) >= e for v, e in a)


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    d = dict(b)
    for v, e in a:
        d[v] -= e
    return tuple(sorted(((v, e) for v, e in d.items() if e), key=lambda p: p[0].sort_key()))


def _mono_str(m: Monomial) -> str:
    return "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in m)


class ExactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients.

    ``terms`` maps monomials to nonzero Fractions; the zero polynomial is the
    empty map.  Instances are immutable by convention and hashable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, Fraction]] = None):
        if terms is None:
            terms = {}
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls()

    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        return cls({_EMPTY_MONO: c} if c else {})

    @classmethod
    def variable(cls, v: Variable) -> "Polynomial":
        return cls({((v, 1),): Fraction(1)})

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == _EMPTY_MONO for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get(_EMPTY_MONO, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(_mono_total(m) for m in self.terms)

    def degree_in(self, v: Variable) -> int:
        d = 0
        for m in self.terms:
            for mv, e in m:
                if mv == v and e > d:
                    d = e
        return d

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_mono_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(m, Fraction(0))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial()
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out.get(m)
                if s is None:
                    out[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial; use RationalFunction")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return Polynomial()
        return Polynomial({m: c * v for m, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self.terms.items(), key=lambda p: _mono_key(p[0]))))
        return self._hash

    # -- structural operations ------------------------------------------------

    def subs(self, mapping: Mapping[Variable, "Polynomial"]) -> "Polynomial":
        """Simultaneous substitution v -> mapping[v]; unmapped variables are kept."""
        if not mapping:
            return self
        out = Polynomial()
        pow_cache: dict = {}
        for m, c in self.terms.items():
            term = Polynomial.const(c)
            for v, e in m:
                img = mapping.get(v)
                if img is None:
                    term = term * Polynomial({((v, e),): Fraction(1)})
                else:
                    key = (v, e)
                    p = pow_cache.get(key)
                    if p is None:
                        p = img ** e
                        pow_cache[key] = p
                    term = term * p
            out = out + term
        return out

    def shift(self, shifts: Mapping[Variable, "Polynomial"]) -> "Polynomial":
        """Substitute v -> v + shifts[v] for each shifted variable."""
        return self.subs({v: Polynomial.variable(v) + s for v, s in shifts.items()})

    def exact_div(self, d: "Polynomial") -> "Polynomial":
        """Exact division; raises ExactDivisionError if d does not divide self."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if d.is_constant():
            return self.scale(1 / d.constant_value())
        rem = dict(self.terms)
        qout: dict = {}
        dl = d.leading_monomial()
        dc = d.terms[dl]
        while rem:
            lm = max(rem, key=_mono_key)
            if not _mono_divides(dl, lm):
                raise ExactDivisionError("division leaves a remainder")
            qm = _mono_div(lm, dl)
            qc = rem[lm] / dc
            qout[qm] = qout.get(qm, Fraction(0)) + qc
            for m2, c2 in d.terms.items():
                m = _mono_mul(qm, m2)
                s = rem.get(m, Fraction(0)) - qc * c2
                if s:
                    rem[m] = s
                elif m in rem:
                    del rem[m]
        return Polynomial(qout)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.exact_div(self)
            return True
        except ExactDivisionError:
            return False

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_coefficient())

    def __str__(self) -> str:
        return poly_str(self)

    def __repr__(self) -> str:
        return f"Polynomial({poly_str(self)})"


def _as_poly(x) -> Optional[Polynomial]:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    return None


def poly(x: Union[str, Scalar, Variable, Polynomial]) -> Polynomial:
    """Coerce a name, scalar, or variable into a Polynomial."""
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Variable):
        return Polynomial.variable(x)
    if isinstance(x, str):
        return Polynomial.variable(var(x))
    return Polynomial.const(x)


# ---------------------------------------------------------------------------
# Multivariate gcd (primitive PRS).  Cold path: structured denominators are
# reduced by trial division instead, see RationalFunction below.


def _as_univar(p: Polynomial, x: Variable) -> dict:
    """View p as a univariate polynomial in x with Polynomial coefficients."""
    out: dict = {}
    for m, c in p.terms.items():
        deg = 0
        rest = []
        for v, e in m:
            if v == x:
                deg = e
            else:
                rest.append((v, e))
        key = tuple(rest)
        coeff = out.setdefault(deg, {})
        coeff[key] = coeff.get(key, Fraction(0)) + c
    return {d: Polynomial(t) for d, t in out.items() if any(t.values())}


def _from_univar(u: dict, x: Variable) -> Polynomial:
    out = Polynomial()
    xv = Polynomial.variable(x)
    for d, coeff in u.items():
        out = out + coeff * xv**d
    return out


def _uni_scale(u: dict, p: Polynomial) -> dict:
    return {d: c * p for d, c in u.items()}


def _uni_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for d, c in b.items():
        s = out.get(d, Polynomial()) - c
        if s.is_zero():
            out.pop(d, None)
        else:
            out[d] = s
    return out


def _pseudo_rem(f: dict, g: dict) -> dict:
    """Pseudo-remainder of univariate f by g (Polynomial coefficients)."""
    n = max(g)
    lc_g = g[n]
    f = dict(f)
    while f and max(f) >= n:
        m = max(f)
        lc_f = f[m]
        shifted = {d + m - n: c * lc_f for d, c in g.items()}
        f = _uni_sub(_uni_scale(f, lc_g), shifted)
    return f


def _content(coeffs: Iterable[Polynomial]) -> Polynomial:
    g = Polynomial()
    for c in coeffs:
        g = poly_gcd(g, c)
        if g.is_constant() and not g.is_zero():
            return Polynomial.const(1)
    return g


def _mono_content(p: Polynomial) -> Monomial:
    """Largest monomial dividing every term of p."""
    it = iter(p.terms)
    first = dict(next(it))
    for m in it:
        dm = dict(m)
        for v in list(first):
            e = dm.get(v, 0)
            if e < first[v]:
                if e:
                    first[v] = e
                else:
                    del first[v]
        if not first:
            break
    return tuple(sorted(first.items(), key=lambda pr: pr[0].sort_key()))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd of two polynomials over Q."""
    if a.is_zero():
        return b.monic() if not b.is_zero() else Polynomial()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Polynomial.const(1)
    if a.terms == b.terms or a.terms == (-b).terms:
        return a.monic()
    # strip the common monomial factor first
    ca, cb = _mono_content(a), _mono_content(b)
    common = []
    da, db = dict(ca), dict(cb)
    for v, e in da.items():
        if v in db:
            common.append((v, min(e, db[v])))
    common_m = tuple(sorted(common, key=lambda pr: pr[0].sort_key()))
    a1 = Polynomial({_mono_div(m, ca): c for m, c in a.terms.items()})
    b1 = Polynomial({_mono_div(m, cb): c for m, c in b.terms.items()})
    mono_part = Polynomial({common_m: Fraction(1)})
    if a1.is_constant() or b1.is_constant():
        return mono_part
    va, vb = a1.variables(), b1.variables()
    shared = va & vb
    if not shared:
        return mono_part
    x = min(shared, key=lambda v: a1.degree_in(v) + b1.degree_in(v))
    ua, ub = _as_univar(a1, x), _as_univar(b1, x)
    cont_a = _content(ua.values())
    cont_b = _content(ub.values())
    cont_g = poly_gcd(cont_a, cont_b)
    pa = {d: c.exact_div(cont_a) for d, c in ua.items()}
    pb = {d: c.exact_div(cont_b) for d, c in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while pb:
        r = _pseudo_rem(pa, pb)
        if r:
            cont_r = _content(r.values())
            r = {d: c.exact_div(cont_r) for d, c in r.items()}
        pa, pb = pb, r
    g = _from_univar(pa, x)
    return (mono_part * cont_g * g).monic()


# ---------------------------------------------------------------------------
# Rational functions


def _linear(p: Polynomial) -> bool:
    return p.total_degree() == 1


def _split_den(dm: Polynomial):
    """Factor hints for a monic denominator: monomials split per variable,
    linear forms are irreducible; anything else needs the gcd fallback."""
    if len(dm.terms) == 1:
        (mono,) = dm.terms
        return {Polynomial.variable(v): e for v, e in mono}, True
    return {dm: 1}, _linear(dm)


class RationalFunction:
    """Fully reduced rational function with a monic denominator.

    The internal factor multiset ``_dfac`` tracks the denominator's known
    factorization; ``_factored`` is True when all factors are linear forms, in
    which case trial division yields complete reduction and the gcd machinery
    is never invoked.
    """

    __slots__ = ("num", "den", "_dfac", "_factored")

    def __init__(self, num, den=None, _dfac=None, _factored=False, _reduced=False):
        num = poly(num) if not isinstance(num, Polynomial) else num
        if den is None:
            den = Polynomial.const(1)
        den = poly(den) if not isinstance(den, Polynomial) else den
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if _reduced:
            self.num, self.den = num, den
            self._dfac = _dfac if _dfac is not None else ({den: 1} if not _is_one(den) else {})
            self._factored = _factored
            return
        if _dfac is None:
            if _is_one(den):
                _dfac, _factored = {}, True
            else:
                dm = den.monic()
                num = num.scale(1 / den.leading_coefficient())
                den = dm
                _dfac, _factored = _split_den(dm)
        self.num, self.den, self._dfac, self._factored = _reduce(num, den, _dfac, _factored)

    # -- constructors ----------------------------------------------------------

    @classmethod
    def from_factors(cls, num: Polynomial, factors: Mapping[Polynomial, int]) -> "RationalFunction":
        """Build num / prod(f^e) from monic factors (each factor linear)."""
        den = Polynomial.const(1)
        dfac = {}
        scale = Fraction(1)
        for f, e in factors.items():
            fm = f.monic()
            scale = scale * f.leading_coefficient() ** e
            dfac[fm] = dfac.get(fm, 0) + e
            den = den * fm**e
        num = num.scale(1 / scale)
        factored = all(_linear(f) for f in dfac)
        return cls(num, den, _dfac=dfac, _factored=factored)

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(Polynomial(), Polynomial.const(1), _dfac={}, _factored=True, _reduced=True)

    @classmethod
    def one(cls) -> "RationalFunction":
        return cls(Polynomial.const(1), Polynomial.const(1), _dfac={}, _factored=True, _reduced=True)

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return _is_one(self.den)

    def as_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    def is_constant(self) -> bool:
        return self.num.is_constant() and _is_one(self.den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if _is_one(self.den) and _is_one(other.den):
            return RationalFunction(self.num + other.num, _dfac={}, _factored=True)
        dfac, left, right = _merge_factors(self._dfac, other._dfac)
        num = self.num * left + other.num * right
        return RationalFunction(num, _fac_poly(dfac), _dfac=dfac,
                                _factored=self._factored and other._factored)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(
            -self.num, self.den, _dfac=self._dfac, _factored=self._factored, _reduced=True
        )

    def __sub__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalFunction.zero()
        dfac = dict(self._dfac)
        for f, e in other._dfac.items():
            dfac[f] = dfac.get(f, 0) + e
        return RationalFunction(
            self.num * other.num,
            self.den * other.den,
            _dfac=dfac,
            _factored=self._factored and other._factored,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # num becomes the denominator: factorization of the old numerator unknown
        if self.num.is_constant():
            c = self.num.constant_value()
            return RationalFunction(
                self.den.scale(1 / c), Polynomial.const(1), _dfac={}, _factored=True, _reduced=True
            )
        nm = self.num.monic()
        scale = 1 / self.num.leading_coefficient()
        dfac, factored = _split_den(nm)
        return RationalFunction(self.den.scale(scale), nm, _dfac=dfac, _factored=factored)

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = _as_rf(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- substitution -------------------------------------------------------------

    def subs(self, mapping: Mapping[Variable, Polynomial]) -> "RationalFunction":
        """Simultaneous polynomial substitution, re-reduced."""
        num = self.num.subs(mapping)
        dfac: dict = {}
        factored = self._factored
        den = Polynomial.const(1)
        scale = Fraction(1)
        for f, e in self._dfac.items():
            fi = f.subs(mapping)
            if fi.is_zero():
                raise ZeroDivisionError("substitution maps denominator factor to zero")
            lc = fi.leading_coefficient()
            if lc != 1:
                scale = scale * lc**e
                fi = fi.monic()
            if fi.total_degree() > 1:
                factored = False
            dfac[fi] = dfac.get(fi, 0) + e
            den = den * fi**e
        return RationalFunction(num.scale(1 / scale), den, _dfac=dfac, _factored=factored)

    def shift(self, shifts: Mapping[Variable, Polynomial]) -> "RationalFunction":
        """Substitute v -> v + shifts[v]; a ring homomorphism."""
        return self.subs({v: Polynomial.variable(v) + poly(s) for v, s in shifts.items()})

    def variables(self) -> set:
        return self.num.variables() | self.den.variables()

    def __str__(self) -> str:
        return rf_str(self)

    def __repr__(self) -> str:
        return f"RationalFunction({rf_str(self)})"


def _is_one(p: Polynomial) -> bool:
    return p.terms == {_EMPTY_MONO: Fraction(1)}


def _as_rf(x) -> Optional[RationalFunction]:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (int, Fraction, Polynomial, Variable)):
        return RationalFunction(poly(x), _dfac={}, _factored=True)
    return None


def rf(x) -> RationalFunction:
    out = _as_rf(x)
    if out is None:
        raise TypeError(f"cannot coerce {x!r} to RationalFunction")
    return out


def _fac_poly(fac: Mapping[Polynomial, int]) -> Polynomial:
    out = Polynomial.const(1)
    for f, e in fac.items():
        out = out * f**e
    return out


def _merge_factors(a: Mapping[Polynomial, int], b: Mapping[Polynomial, int]):
    """lcm factor multiset plus the cofactors lcm/a and lcm/b as polynomials."""
    merged = dict(a)
    for f, e in b.items():
        merged[f] = max(merged.get(f, 0), e)
    left = Polynomial.const(1)   # lcm / a
    right = Polynomial.const(1)  # lcm / b
    for f, e in merged.items():
        da = e - a.get(f, 0)
        db = e - b.get(f, 0)
        if da:
            left = left * f**da
        if db:
            right = right * f**db
    return merged, left, right


def _reduce(num: Polynomial, den: Polynomial, dfac: dict, factored: bool):
    """Reduce num/den fully; dfac is the known factor multiset of den."""
    if num.is_zero():
        return num, Polynomial.const(1), {}, True
    if _is_one(den):
        return num, den, {}, True
    # trial division against known factors
    dfac = dict(dfac)
    for f in list(dfac):
        while dfac.get(f, 0) > 0:
            try:
                num = num.exact_div(f)
            except ExactDivisionError:
                break
            dfac[f] -= 1
            if not dfac[f]:
                del dfac[f]
    den = _fac_poly(dfac)
    if _is_one(den):
        return num, den, {}, True
    if not factored:
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
        if _is_one(den):
            return num, den, {}, True
        lc = den.leading_coefficient()
        if lc != 1:
            den = den.monic()
            num = num.scale(1 / lc)
        dfac = {den: 1}
        factored = _linear(den)
    return num, den, dfac, factored


# ---------------------------------------------------------------------------
# Spec-facing operation wrappers


def rf_arith(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Exact rational arithmetic dispatcher; op in {add, sub, mul, div}."""
    a, b = rf(a), rf(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivisionError("rf_arith: division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_shift(f: RationalFunction, shifts: Mapping[Variable, Polynomial]) -> RationalFunction:
    """Simultaneous substitution v -> v + shift(v)."""
    return rf(f).shift(shifts)


def denominator_admissible(f: RationalFunction, N: int, spectral_ok: bool = False) -> bool:
    """True iff the denominator is a product of root-difference factors.

    Admissible factors are c*(w_i - w_j + k*hbar) with i != j and integer k.
    With ``spectral_ok`` the spectral factors (u - w_i + k*hbar) and
    (v - w_i + k*hbar) are stripped as well, and any leftover free of the
    w-variables is accepted.
    """
    f = rf(f)
    den = f.den
    if den.is_constant():
        return True
    hb = Polynomial.variable(Variable("hbar"))
    ws = [Polynomial.variable(Variable("w", i)) for i in range(1, N + 1)]
    candidates = []
    for i in range(N):
        for j in range(i + 1, N):
            base = ws[i] - ws[j]
            for k in range(-16, 17):
                candidates.append(base + hb.scale(k))
    if spectral_ok:
        for s in ("u", "v"):
            sv = Polynomial.variable(Variable(s))
            for i in range(N):
                for k in range(-16, 17):
                    candidates.append(sv - ws[i] + hb.scale(k))
    progress = True
    while progress and not den.is_constant():
        progress = False
        for c in candidates:
            while True:
                try:
                    den = den.exact_div(c)
                    progress = True
                except ExactDivisionError:
                    break
            if den.is_constant():
                break
    if den.is_constant():
        return True
    if spectral_ok:
        wset = {Variable("w", i) for i in range(1, N + 1)}
        return not (den.variables() & wset)
    return False


# ---------------------------------------------------------------------------
# Expansion at infinity: f = sum_m c_m * x^{-m}


def expand_at_infinity(f: RationalFunction, x: Variable, order: int) -> dict:
    """Coefficients c_m of x^{-m} in the expansion of f at x = infinity.

    Returns {m: RationalFunction} for all m <= order with c_m possibly nonzero
    (m may be negative, meaning positive powers of x).
    """
    f = rf(f)
    if f.is_zero():
        return {}
    num_u = _as_univar(f.num, x)
    den_u = _as_univar(f.den, x)
    D = max(den_u)
    n_deg = max(num_u)
    lead = rf(den_u[D])
    out = {}
    m0 = D - n_deg
    coeffs: dict = {}
    for m in range(m0, order + 1):
        acc = rf(num_u.get(D - m, Polynomial()))
        for s in range(1, m - m0 + 1):
            ds = den_u.get(D - s)
            if ds is not None:
                acc = acc - rf(ds) * coeffs[m - s]
        c = acc / lead
        coeffs[m] = c
        if not c.is_zero():
            out[m] = c
    return out


# ---------------------------------------------------------------------------
# Canonical printer


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_str(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    parts = []
    for m in sorted(p.terms, key=_mono_key, reverse=True):
        c = p.terms[m]
        neg = c < 0
        ac = -c if neg else c
        if m == _EMPTY_MONO:
            body = _fmt_coeff(ac)
        elif ac == 1:
            body = _mono_str(m)
        else:
            body = f"{_fmt_coeff(ac)}*{_mono_str(m)}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def rf_str(f: RationalFunction) -> str:
    if f.is_polynomial():
        return poly_str(f.num)
    return f"({poly_str(f.num)})/({poly_str(f.den)})"


# ---------------------------------------------------------------------------
# Expression parser.  Grammar: integers, variables (w1, Y2, hbar, kappa, psi,
# u, v, xi1, ...), operators + - * / ^, parentheses.


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z]+\d*)|([()+\-*/^]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", pos)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), pos))
        elif m.group(2):
            tokens.append(("name", m.group(2), pos))
        else:
            tokens.append(("op", m.group(3), pos))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def parse(self) -> RationalFunction:
        out = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return out

    def expr(self) -> RationalFunction:
        out = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                out = out + rhs if val == "+" else out - rhs
            else:
                return out

    def term(self) -> RationalFunction:
        out = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                if val == "*":
                    out = out * rhs
                else:
                    if rhs.is_zero():
                        raise ParseError("division by zero", pos)
                    out = out / rhs
            else:
                return out

    def factor(self) -> RationalFunction:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.factor()
        out = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            k2, v2, p2 = self.next()
            sign = 1
            if k2 == "op" and v2 == "-":
                sign = -1
                k2, v2, p2 = self.next()
            if k2 != "int":
                raise ParseError("exponent must be an integer", p2)
            out = out ** (sign * v2)
        return out

    def atom(self) -> RationalFunction:
        kind, val, pos = self.next()
        if kind == "int":
            return rf(val)
        if kind == "name":
            try:
                return rf(var(val))
            except ValueError as e:
                raise ParseError(str(e), pos) from None
        if kind == "op" and val == "(":
            out = self.expr()
            self.expect_op(")")
            return out
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_expression(text: str) -> RationalFunction:
    """Parse the canonical expression grammar into a RationalFunction."""
    return _Parser(text).parse()
