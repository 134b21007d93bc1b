"""Exact arithmetic: rationals and sparse Laurent polynomials.

Variables belong to one of four families (x, y, q, t).  The x and y
families are indexed from 1; q and t carry index 0.  A variable is the pair
``(family_rank, index)`` so that sorting variables gives the canonical
order x1 < x2 < ... < y1 < ... < q < t.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

FAMILIES = ("x", "y", "q", "t")
_FAMILY_RANK = {name: i for i, name in enumerate(FAMILIES)}

Var = tuple  # (family_rank, index)
Monomial = tuple  # sorted tuple of (Var, nonzero int exponent)
Number = Union[int, Fraction]

_VAR_RE = re.compile(r"^([xyqt])(\d*)$")


def var_id(name: str) -> Var:
    """Parse a variable name such as ``"x3"``, ``"t"`` or ``"q"``."""
    m = _VAR_RE.match(name.strip())
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    fam, idx = m.group(1), m.group(2)
    if fam in ("q", "t"):
        if idx not in ("", "0"):
            raise ValueError(f"{fam} takes no index")
        return (_FAMILY_RANK[fam], 0)
    if not idx or int(idx) < 1:
        raise ValueError(f"{fam} needs a positive index")
    return (_FAMILY_RANK[fam], int(idx))


def var_name(v: Var) -> str:
    fam = FAMILIES[v[0]]
    return fam if fam in ("q", "t") else f"{fam}{v[1]}"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        n = d.get(v, 0) + e
        if n:
            d[v] = n
        else:
            del d[v]
    return tuple(sorted(d.items()))


def _mono_pow(a: Monomial, n: int) -> Monomial:
    if n == 0:
        return ()
    return tuple((v, e * n) for v, e in a)


def _mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


class Poly:
    """Sparse Laurent polynomial with exact rational coefficients.

    Instances are immutable by convention; all operations return new
    objects.  Zero coefficients are never stored.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    clean[mono] = Fraction(c)
        self.terms: dict = clean
        self._hash = None

    # construction helpers
    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls({(): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        v = var_id(name)
        return cls({((v, power),): 1} if power else {(): 1})

    @classmethod
    def monomial(cls, exps: Mapping[str, int], coeff: Number = 1) -> "Poly":
        d = {}
        for name, e in exps.items():
            if e:
                v = var_id(name)
                d[v] = d.get(v, 0) + e
        mono = tuple(sorted((v, e) for v, e in d.items() if e))
        return cls({mono: coeff})

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    # ring operations
    def __add__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mono, c in other.terms.items():
            n = out.get(mono, 0) + c
            if n:
                out[mono] = n
            else:
                out.pop(mono, None)
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return Poly._coerce(other) - self

    def __mul__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                n = out.get(mono, 0) + c1 * c2
                if n:
                    out[mono] = n
                else:
                    out.pop(mono, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial")
            (mono, c), = self.terms.items()
            return Poly({_mono_pow(mono, n): Fraction(1) / c ** (-n)})
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Poly({m: c / other for m, c in self.terms.items()})
        if isinstance(other, Poly) and other.is_monomial():
            return self * other ** -1
        raise ValueError("can only divide by a scalar or a monomial")

    # comparisons
    def __eq__(self, other):
        other = Poly._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set:
        return {var_name(v) for mono in self.terms for v, _ in mono}

    def exponents(self) -> dict:
        """Exponent map of a monomial, keyed by variable name."""
        if not self.is_monomial():
            raise ValueError("not a monomial")
        (mono, _), = self.terms.items()
        return {var_name(v): e for v, e in mono}

    def coefficient(self) -> Fraction:
        if not self.is_monomial():
            raise ValueError("not a monomial")
        return next(iter(self.terms.values()))

    def degree_in(self, name: str) -> int:
        v = var_id(name)
        return max((dict(m).get(v, 0) for m in self.terms), default=0)

    def univariate(self, name: str) -> list:
        """Coefficient list c[0..d] of a polynomial in the single variable ``name``."""
        v = var_id(name)
        coeffs: dict = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            e = d.pop(v, 0)
            if d or e < 0:
                raise ValueError(f"not a polynomial in {name} alone")
            coeffs[e] = c
        if not coeffs:
            return [Fraction(0)]
        return [coeffs.get(i, Fraction(0)) for i in range(max(coeffs) + 1)]

    @classmethod
    def from_univariate(cls, coeffs: Iterable[Number], name: str) -> "Poly":
        v = var_id(name)
        return cls({(((v, i),) if i else ()): c for i, c in enumerate(coeffs)})

    # evaluation
    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        """Exact value with every variable assigned."""
        vals = {var_id(k): Fraction(v) for k, v in assignment.items()}
        total = Fraction(0)
        for mono, c in self.terms.items():
            term = c
            for v, e in mono:
                if v not in vals:
                    raise KeyError(f"variable {var_name(v)} not assigned")
                x = vals[v]
                if x == 0 and e < 0:
                    raise ZeroDivisionError(f"{var_name(v)}=0 raised to {e}")
                term *= x ** e
            total += term
        return total

    def substitute(self, assignment: Mapping[str, Number]) -> "Poly":
        """Partial evaluation; unassigned variables stay symbolic."""
        vals = {var_id(k): Fraction(v) for k, v in assignment.items()}
        out: dict = {}
        for mono, c in self.terms.items():
            rest = []
            for v, e in mono:
                if v in vals:
                    x = vals[v]
                    if x == 0 and e < 0:
                        raise ZeroDivisionError(f"{var_name(v)}=0 raised to {e}")
                    c = c * x ** e
                else:
                    rest.append((v, e))
            key = tuple(rest)
            n = out.get(key, 0) + c
            if n:
                out[key] = n
            else:
                out.pop(key, None)
        return Poly(out)

    # text form
    def _sorted_terms(self):
        # graded lex: total degree first, then variable order
        return sorted(self.terms.items(), key=lambda it: (
            _mono_degree(it[0]), tuple((v, -e) for v, e in it[0])))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self._sorted_terms():
            factors = []
            for v, e in mono:
                factors.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                s = str(mag)
            elif mag == 1:
                s = body
            elif mag.denominator == 1:
                s = f"{mag}*{body}"
            else:
                s = f"({mag})*{body}"
            parts.append(("-" if c < 0 else "+", s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def __repr__(self):
        return f"Poly({self.to_text()})"

    __str__ = to_text


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([xyqt]\d*)|(.))")


def parse_poly(text: str) -> Poly:
    """Parse sums, products, powers and parentheses, e.g. "t^2*(1+t) - x1/2".

    Accepts everything :meth:`Poly.to_text` emits.  Division is allowed by
    nonzero constants and monomials only.
    """
    tokens = []
    for num, name, op in _TOKEN_RE.findall(text.strip()):
        if num:
            tokens.append(("num", int(num)))
        elif name:
            tokens.append(("var", name))
        elif op.strip():
            if op not in "+-*/^()":
                raise ValueError(f"unexpected character {op!r} in {text!r}")
            tokens.append(("op", op))
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else ("end", None)

    def take(op=None):
        nonlocal pos
        tok = peek()
        if op is not None and tok != ("op", op):
            raise ValueError(f"expected {op!r} in {text!r}")
        pos += 1
        return tok

    def expr():
        out = term()
        while peek() in (("op", "+"), ("op", "-")):
            sign = take()[1]
            rhs = term()
            out = out + rhs if sign == "+" else out - rhs
        return out

    def term():
        out = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            out = out * rhs if op == "*" else out / _as_divisor(rhs)
        return out

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            neg = False
            if peek() == ("op", "-"):
                take()
                neg = True
            kind, val = take()
            if kind != "num":
                raise ValueError(f"exponent must be an integer in {text!r}")
            base = base ** (-val if neg else val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return Poly.const(val)
        if kind == "var":
            return Poly.var(val)
        if (kind, val) == ("op", "("):
            inner = expr()
            take(")")
            return inner
        raise ValueError(f"unexpected token in {text!r}")

    if not tokens:
        raise ValueError("empty polynomial text")
    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def _as_divisor(p: Poly):
    if p.is_zero():
        raise ZeroDivisionError("division by zero")
    if p.is_monomial() and not p.variables():
        return p.coefficient()
    return p


def pochhammer(x: Number, t: Number, n: int) -> Fraction:
    """The t-Pochhammer symbol (x; t)_n = prod_{i<n} (1 - x t^i)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x, t = Fraction(x), Fraction(t)
    out = Fraction(1)
    p = Fraction(1)
    for _ in range(n):
        out *= 1 - x * p
        p *= t
    return out


def univariate_divmod(num: list, den: list) -> tuple:
    """Long division of coefficient lists (lowest degree first)."""
    num = [Fraction(c) for c in num]
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
    if not any(den):
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    r = list(num)
    lead = Fraction(den[-1])
    for i in range(len(num) - len(den), -1, -1):
        c = r[i + len(den) - 1] / lead
        q[i] = c
        if c:
            for j, d in enumerate(den):
                r[i + j] -= c * d
    r = r[: len(den) - 1] or [Fraction(0)]
    return q, r


def binomial_product_form(p: Poly, name: str = "t") -> str | None:
    """Write a univariate polynomial as ``c*(1+t)^a*(1+t^2)^b...`` when possible.

    Returns None when the polynomial is not a constant times a product of
    factors ``1 + t^l``.
    """
    try:
        coeffs = p.univariate(name)
    except ValueError:
        return None
    if not any(coeffs):
        return None
    found = []
    # largest l first: 1 + t^3 would otherwise lose a factor 1 + t
    for ell in range(len(coeffs) - 1, 0, -1):
        den = [1] + [0] * (ell - 1) + [1]
        while len(coeffs) > ell:
            q, r = univariate_divmod(coeffs, den)
            if any(r):
                break
            coeffs = q
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs = coeffs[:-1]
            found.append(ell)
    if len(coeffs) != 1:
        return None
    c = coeffs[0]
    pieces = []
    for ell in sorted(set(found)):
        base = f"(1+{name})" if ell == 1 else f"(1+{name}^{ell})"
        e = found.count(ell)
        pieces.append(base if e == 1 else f"{base}^{e}")
    if not pieces:
        return str(c)
    if c == 1:
        return "*".join(pieces)
    return "*".join([str(c)] + pieces)
