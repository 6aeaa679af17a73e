"""
Sparse multivariate (Laurent) polynomials and truncated power series over Q.

Terms are stored as a dict from integer exponent tuples to nonzero Fractions.
The single global monomial order is graded lexicographic: higher total degree
first, ties broken lexicographically with x1 > x2 > ... > xn.

Vanishing order at e = (1,...,1) is read off the expansion at e, i.e. after
substituting x_i -> 1 + u_i. A Laurent polynomial f is first multiplied by the
monomial x^(-min), where min is the componentwise minimum of its exponents.
Monomials are units near e (nonzero at e), and multiplying by a unit of the
local ring does not change the lowest nonzero homogeneous part of the
expansion, so order and lowest part are unaffected by the normalization.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Exponent = Tuple[int, ...]

_VARIABLE_NAMES = ("x", "y", "z")


def _order_key(exponent: Exponent):
    return (sum(exponent), exponent)


def monomials_of_degree(n: int, d: int) -> List[Exponent]:
    """All exponent vectors of total degree d in n variables, lex descending."""
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    result = []
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            result.append((first,) + rest)
    return result


def monomials_up_to(n: int, d: int) -> List[Exponent]:
    """Exponent vectors of total degree <= d, ascending degree, lex descending within a degree."""
    result = []
    for k in range(d + 1):
        result.extend(monomials_of_degree(n, k))
    return result


def gen_binomial(a: int, k: int) -> int:
    """binom(a, k) for any integer a (generalized for negative a)."""
    if k < 0:
        return 0
    if a >= 0:
        return math.comb(a, k)
    return (-1) ** k * math.comb(-a + k - 1, k)


class MultiPoly:
    """Sparse polynomial in n variables with rational coefficients.
    Exponents may be negative (Laurent polynomials). Value semantics."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Optional[Mapping[Exponent, Fraction]] = None):
        self.dim = dim
        clean: Dict[Exponent, Fraction] = {}
        for exponent, coeff in (terms or {}).items():
            exponent = tuple(int(e) for e in exponent)
            if len(exponent) != dim:
                raise ValueError(f"Exponent {exponent} does not have {dim} entries")
            coeff = Fraction(coeff)
            if coeff:
                clean[exponent] = clean.get(exponent, Fraction(0)) + coeff
                if not clean[exponent]:
                    del clean[exponent]
        self._terms = clean

    # Constructors

    @classmethod
    def constant(cls, dim: int, c=1) -> 'MultiPoly':
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, exponent: Sequence[int], c=1) -> 'MultiPoly':
        return cls(len(exponent), {tuple(exponent): c})

    @classmethod
    def variable(cls, dim: int, i: int) -> 'MultiPoly':
        return cls.monomial(tuple(1 if j == i else 0 for j in range(dim)))

    @classmethod
    def from_vector(cls, dim: int, monomials: Sequence[Exponent], coeffs: Sequence[Fraction]) -> 'MultiPoly':
        """Polynomial sum(coeffs[i] * x^monomials[i])."""
        terms: Dict[Exponent, Fraction] = {}
        for exponent, c in zip(monomials, coeffs):
            if c:
                terms[tuple(exponent)] = terms.get(tuple(exponent), Fraction(0)) + Fraction(c)
        return cls(dim, terms)

    def _like(self, terms: Mapping[Exponent, Fraction]) -> 'MultiPoly':
        return MultiPoly(self.dim, terms)

    # Inspection

    def terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in canonical (graded lex, descending) order."""
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]), reverse=True)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def coefficient_vector(self, monomials: Sequence[Exponent]) -> List[Fraction]:
        return [self.coefficient(m) for m in monomials]

    def support(self) -> List[Exponent]:
        return [e for e, _ in self.terms()]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_laurent(self) -> bool:
        """True if some exponent is negative."""
        return any(e < 0 for exponent in self._terms for e in exponent)

    def total_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return max(sum(e) for e in self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return min(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def leading_term(self) -> Tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exponent = max(self._terms, key=_order_key)
        return exponent, self._terms[exponent]

    # Graded structure

    def homogeneous_part(self, d: int) -> 'MultiPoly':
        return MultiPoly(self.dim, {e: c for e, c in self._terms.items() if sum(e) == d})

    def graded_parts(self) -> Dict[int, 'MultiPoly']:
        parts: Dict[int, Dict[Exponent, Fraction]] = {}
        for e, c in self._terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: MultiPoly(self.dim, t) for d, t in sorted(parts.items())}

    def truncate(self, d_max: int) -> 'MultiPoly':
        return self._like({e: c for e, c in self._terms.items() if sum(e) <= d_max})

    # Arithmetic

    def _check_dim(self, other: 'MultiPoly'):
        if other.dim != self.dim:
            raise ValueError(f"Dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            return self + MultiPoly.constant(self.dim, other)
        self._check_dim(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return _result_like(self, other, terms)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> 'MultiPoly':
        c = Fraction(c)
        return self._like({e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check_dim(other)
        cutoff = _cutoff_of(self, other)
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            for e2, c2 in other._terms.items():
                if cutoff is not None and d1 + sum(e2) > cutoff:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return _result_like(self, other, terms)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = self._like({(0,) * self.dim: 1})
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.dim, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    # Serialization

    def to_dict(self) -> List[Dict]:
        """List of {exponent, coefficient} in canonical term order."""
        return [{"exponent": list(e), "coefficient": str(c)} for e, c in self.terms()]

    @classmethod
    def from_dict(cls, dim: int, data: Iterable[Dict]) -> 'MultiPoly':
        return cls(dim, {tuple(t["exponent"]): Fraction(t["coefficient"]) for t in data})

    def _variable_names(self) -> List[str]:
        if self.dim <= len(_VARIABLE_NAMES):
            return list(_VARIABLE_NAMES[:self.dim])
        return [f"x{i + 1}" for i in range(self.dim)]

    def __str__(self):
        if not self._terms:
            return "0"
        names = self._variable_names()
        pieces = []
        for exponent, c in self.terms():
            factors = []
            for name, e in zip(names, exponent):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"MultiPoly({self.dim}, {dict(self.terms())!r})"


class TruncatedSeries(MultiPoly):
    """Power series in n variables known up to total degree `cutoff`.
    All exponents are nonnegative; arithmetic re-truncates."""

    __slots__ = ("cutoff",)

    def __init__(self, dim: int, cutoff: int, terms: Optional[Mapping[Exponent, Fraction]] = None):
        if cutoff < 0:
            raise ValueError(f"cutoff must be nonnegative, got {cutoff}")
        kept = {}
        for e, c in (terms or {}).items():
            if any(x < 0 for x in e):
                raise ValueError(f"Power series exponent {tuple(e)} has a negative entry")
            if sum(e) <= cutoff:
                kept[e] = c
        super().__init__(dim, kept)
        self.cutoff = cutoff

    def _like(self, terms):
        return TruncatedSeries(self.dim, self.cutoff, terms)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries) and other.cutoff != self.cutoff:
            return False
        return super().__eq__(other)

    __hash__ = MultiPoly.__hash__

    def __repr__(self):
        return f"TruncatedSeries({self.dim}, cutoff={self.cutoff}, {dict(self.terms())!r})"


def _cutoff_of(a: MultiPoly, b: MultiPoly) -> Optional[int]:
    cutoffs = [p.cutoff for p in (a, b) if isinstance(p, TruncatedSeries)]
    return min(cutoffs) if cutoffs else None


def _result_like(a: MultiPoly, b: MultiPoly, terms) -> MultiPoly:
    cutoff = _cutoff_of(a, b)
    if cutoff is None:
        return MultiPoly(a.dim, terms)
    return TruncatedSeries(a.dim, cutoff, terms)


# Expansions at e

def shift_expand(p: Sequence[int], d_max: int) -> TruncatedSeries:
    """Expansion of prod (1 + u_i)^p_i up to total degree d_max.
    The coefficient of u^delta is prod binom(p_i, delta_i), generalized for negative p_i."""
    if d_max < 0:
        raise ValueError(f"d_max must be nonnegative, got {d_max}")
    n = len(p)
    terms = {}
    for delta in monomials_up_to(n, d_max):
        c = 1
        for a, k in zip(p, delta):
            c *= gen_binomial(a, k)
            if c == 0:
                break
        if c:
            terms[delta] = c
    return TruncatedSeries(n, d_max, terms)


def exp_expand(a: Sequence[int], d_max: int) -> TruncatedSeries:
    """Expansion of exp(a . x) up to total degree d_max: coefficient of x^delta is prod a_i^delta_i / delta_i!."""
    if d_max < 0:
        raise ValueError(f"d_max must be nonnegative, got {d_max}")
    n = len(a)
    terms = {}
    for delta in monomials_up_to(n, d_max):
        c = Fraction(1)
        for ai, k in zip(a, delta):
            c *= Fraction(ai ** k, math.factorial(k))
            if c == 0:
                break
        if c:
            terms[delta] = c
    return TruncatedSeries(n, d_max, terms)


def lowest_part(f: MultiPoly) -> Tuple[int, MultiPoly]:
    """Minimal total degree with a nonzero homogeneous component, and that component."""
    if f.is_zero():
        raise ValueError("lowest_part of the zero series is undefined")
    d = f.min_degree()
    return d, MultiPoly(f.dim, {e: c for e, c in f.terms() if sum(e) == d})


def apply_diff(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """f(d/dx_1, ..., d/dx_n) applied to g, with exact falling-factorial coefficients."""
    if f.is_laurent():
        raise ValueError("differential operator must have nonnegative exponents")
    if f.dim != g.dim:
        raise ValueError(f"Dimension mismatch: {f.dim} vs {g.dim}")
    terms: Dict[Exponent, Fraction] = {}
    for alpha, c in f.terms():
        for beta, d in g.terms():
            if any(b < a for a, b in zip(alpha, beta)):
                continue
            factor = 1
            for a, b in zip(alpha, beta):
                factor *= math.perm(b, a)
            e = tuple(b - a for a, b in zip(alpha, beta))
            terms[e] = terms.get(e, Fraction(0)) + c * d * factor
    return MultiPoly(g.dim, terms)


def multiply(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    return f * g


def normalize_laurent(f: MultiPoly) -> Tuple[Exponent, MultiPoly]:
    """(shift, x^(-shift) * f) where shift is the componentwise minimum exponent.
    The normalized polynomial has nonnegative exponents and a term free of each variable."""
    if f.is_zero():
        return (0,) * f.dim, MultiPoly(f.dim)
    shift = tuple(min(e[i] for e in f.support()) for i in range(f.dim))
    return shift, MultiPoly(f.dim, {tuple(a - s for a, s in zip(e, shift)): c for e, c in f.terms()})


def _shift_monomial(f: MultiPoly, shift: Sequence[int]) -> MultiPoly:
    return MultiPoly(f.dim, {tuple(a + s for a, s in zip(e, shift)): c for e, c in f.terms()})


def divide_exact(f: MultiPoly, g: MultiPoly) -> Optional[MultiPoly]:
    """Quotient f / g when g divides f, else None.
    Reduces by the leading term of g under graded lex; {g} is a Groebner basis of (g),
    so a zero remainder is equivalent to divisibility. Laurent f is normalized by a
    monomial first, which is exact for divisors such as y - 1 that no variable divides."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if g.is_laurent():
        raise ValueError("divisor must have nonnegative exponents")
    shift = (0,) * f.dim
    remainder = f
    if f.is_laurent():
        shift = tuple(min(0, s) for s in normalize_laurent(f)[0])
        remainder = _shift_monomial(f, [-s for s in shift])
    lead_e, lead_c = g.leading_term()
    quotient: Dict[Exponent, Fraction] = {}
    while remainder:
        e, c = remainder.leading_term()
        if any(a < b for a, b in zip(e, lead_e)):
            return None
        q_e = tuple(a - b for a, b in zip(e, lead_e))
        q_c = c / lead_c
        quotient[q_e] = quotient.get(q_e, Fraction(0)) + q_c
        remainder = remainder - MultiPoly.monomial(q_e, q_c) * g
    return _shift_monomial(MultiPoly(f.dim, quotient), shift)


def expand_at_one(f: MultiPoly) -> MultiPoly:
    """Exact expansion of the normalized f at e, as a polynomial in u = x - e."""
    _, poly = normalize_laurent(f)
    if poly.is_zero():
        return MultiPoly(f.dim)
    d_max = poly.total_degree()
    result = MultiPoly(f.dim)
    for exponent, c in poly.terms():
        result = result + MultiPoly(f.dim, dict(shift_expand(exponent, d_max).terms())).scale(c)
    return result


def vanishing_order(f: MultiPoly) -> Tuple[int, MultiPoly]:
    """Order of vanishing of a Laurent polynomial at e, with the lowest part of its expansion."""
    if f.is_zero():
        raise ValueError("the zero polynomial vanishes to infinite order")
    return lowest_part(expand_at_one(f))


def substitute_one(f: MultiPoly, j: int) -> MultiPoly:
    """f with x_j set to 1."""
    terms: Dict[Exponent, Fraction] = {}
    for e, c in f.terms():
        key = e[:j] + (0,) + e[j + 1:]
        terms[key] = terms.get(key, Fraction(0)) + c
    return MultiPoly(f.dim, terms)


def linear_divisor_variable(g: MultiPoly) -> Optional[int]:
    """Index j if g is a nonzero multiple of x_j - 1, else None."""
    if len(g) != 2:
        return None
    zero = (0,) * g.dim
    c0 = g.coefficient(zero)
    others = [(e, c) for e, c in g.terms() if e != zero]
    if not c0 or len(others) != 1:
        return None
    e, c = others[0]
    if sorted(e) != [0] * (g.dim - 1) + [1] or c != -c0:
        return None
    return e.index(1)
