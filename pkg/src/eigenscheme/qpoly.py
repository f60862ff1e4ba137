"""Multivariate polynomials with exact rational coefficients.

Monomials are plain tuples of non-negative exponents, one entry per ring
variable. A :class:`Polynomial` stores its terms in a dict keyed by
monomial, so two construction routes for the same polynomial always compare
equal; term lists sorted under a :class:`MonomialOrder` are produced on
demand.

    >>> R = Ring.flat(2)
    >>> x1, x2 = R.gens()
    >>> print((x1 + x2) * (x1 - x2))
    x1^2 - x2^2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

from .errors import DimensionError, ParseError

Monomial = tuple  # tuple[int, ...]
Coefficient = Union[int, Fraction]


@dataclass(frozen=True)
class Ring:
    """Polynomial ring over the rationals with named variables x1 > x2 > ..."""

    names: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise DimensionError(f"duplicate variable names in {self.names}")

    @classmethod
    def flat(cls, n: int, prefix: str = "x") -> Ring:
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def one(self) -> Polynomial:
        return self.const(1)

    def const(self, c: Coefficient) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, i: int) -> Polynomial:
        """The variable with 0-based index ``i``."""
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff: Coefficient = 1) -> Polynomial:
        return Polynomial(self, {tuple(exps): coeff})

    def extend(self, names: Sequence[str], front: bool = True) -> Ring:
        """A larger ring with extra variables placed before (or after) ours."""
        names = tuple(names)
        return Ring(names + self.names if front else self.names + names)

    def parse(self, text: str) -> Polynomial:
        return parse_poly(text, self)


class MonomialOrder:
    """A monomial order given by a sort key.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``. ``ranking`` lists
    variable indices from largest to smallest; ``None`` means x1 > x2 > ...
    A block order compares the first ``split`` ranked variables with
    ``inner[0]`` and breaks ties on the rest with ``inner[1]``.
    """

    __slots__ = ("kind", "ranking", "split", "inner", "_key")

    def __init__(self, kind="grevlex", ranking=None, split=None, inner=None):
        if kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and (split is None or inner is None or len(inner) != 2):
            raise ValueError("block order needs a split point and two inner orders")
        self.kind = kind
        self.ranking = tuple(ranking) if ranking is not None else None
        self.split = split
        self.inner = tuple(inner) if inner is not None else None
        self._key = self._build_key()

    def _build_key(self):
        if self.kind == "grevlex":
            def base(e):
                return (sum(e), tuple(-a for a in reversed(e)))
        elif self.kind == "lex":
            base = tuple
        else:
            k = self.split
            first, second = (o.key for o in self.inner)

            def base(e):
                return (first(e[:k]), second(e[k:]))
        if self.ranking is None:
            return base
        rank = self.ranking
        return lambda e: base(tuple(e[i] for i in rank))

    def key(self, m: Monomial):
        """Sort key: ``key(u) > key(v)`` iff ``u > v`` in this order."""
        return self._key(m)

    def _ident(self):
        return (self.kind, self.ranking, self.split, self.inner)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', split={self.split}, inner={self.inner!r})"
        if self.ranking is not None:
            return f"MonomialOrder({self.kind!r}, ranking={self.ranking})"
        return f"MonomialOrder({self.kind!r})"

    @classmethod
    def elimination(cls, k: int) -> MonomialOrder:
        """Grevlex blocks eliminating the first ``k`` variables."""
        return cls("block", split=k, inner=(GREVLEX, GREVLEX))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder = GREVLEX) -> int:
    """Return -1, 0 or 1 as ``m1`` is less than, equal to or greater than ``m2``."""
    if len(m1) != len(m2):
        raise DimensionError(f"monomials of lengths {len(m1)} and {len(m2)}")
    if tuple(m1) == tuple(m2):
        return 0
    return 1 if order.key(tuple(m1)) > order.key(tuple(m2)) else -1


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


class Polynomial:
    """Immutable polynomial; arithmetic with ints and Fractions is allowed."""

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Coefficient]):
        n = ring.nvars
        clean = {}
        for m, c in terms.items():
            m = tuple(m)
            if len(m) != n:
                raise DimensionError(f"monomial {m} does not fit a ring of {n} variables")
            if c:
                clean[m] = c if isinstance(c, Fraction) else Fraction(c)
        self.ring = ring
        self._terms = clean

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> Polynomial:
        # trusted constructor: terms already normalized
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        return p

    # -- inspection ---------------------------------------------------------
    @property
    def terms_dict(self) -> dict:
        return dict(self._terms)

    def terms(self, order: MonomialOrder = GREVLEX) -> list:
        """(coefficient, monomial) pairs in strictly descending order."""
        key = order.key
        return [(self._terms[m], m) for m in sorted(self._terms, key=key, reverse=True)]

    def monomials(self) -> list:
        return list(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(tuple(m), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self._terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self._terms[self.leading_monomial(order)]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(m[i] for m in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def support(self) -> set:
        """Indices of variables that occur."""
        return {i for m in self._terms for i, a in enumerate(m) if a}

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise DimensionError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Coefficient) -> Polynomial:
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c for m, v in self._terms.items()})

    def mul_term(self, c: Coefficient, m: Monomial) -> Polynomial:
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(k, m)): v * c for k, v in self._terms.items()},
        )

    def monic(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def exact_div(self, other: Polynomial) -> Polynomial:
        """Quotient ``self / other``; raises ValueError if it is not exact."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        lm_b = other.leading_monomial(LEX)
        lc_b = other._terms[lm_b]
        quotient: dict = {}
        rest = self
        while rest:
            lm = rest.leading_monomial(LEX)
            if not mono_divides(lm_b, lm):
                raise ValueError(f"{other} does not divide {self}")
            m = mono_div(lm, lm_b)
            c = rest._terms[lm] / lc_b
            quotient[m] = quotient.get(m, 0) + c
            rest = rest - other.mul_term(c, m)
        return Polynomial(self.ring, quotient)

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        """Ring homomorphism sending variable ``i`` to ``images[i]``."""
        if len(images) != self.ring.nvars:
            raise DimensionError(
                f"substitution needs {self.ring.nvars} images, got {len(images)}"
            )
        if not images:
            return self
        target = images[0].ring
        for im in images:
            if im.ring != target:
                raise DimensionError("substitution images live in different rings")
        powers: dict = {}

        def power(i, a):
            key = (i, a)
            if key not in powers:
                powers[key] = images[i] ** a
            return powers[key]

        result = target.zero()
        for m, c in self._terms.items():
            term = target.const(c)
            for i, a in enumerate(m):
                if a:
                    term = term * power(i, a)
            result = result + term
        return result

    def embed(self, ring: Ring, positions: Sequence[int]) -> Polynomial:
        """Move into ``ring``, sending our variable ``i`` to ``positions[i]``."""
        n = ring.nvars
        out = {}
        for m, c in self._terms.items():
            e = [0] * n
            for i, a in enumerate(m):
                e[positions[i]] += a
            out[tuple(e)] = c
        return Polynomial(ring, out)

    def evaluate(self, point: Sequence[Coefficient]) -> Fraction:
        if len(point) != self.ring.nvars:
            raise DimensionError("evaluation point has the wrong length")
        total = Fraction(0)
        for m, c in self._terms.items():
            v = c
            for x, a in zip(point, m):
                if a:
                    v *= Fraction(x) ** a
            total += v
        return total

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    @cached_property
    def _hash(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Polynomial({self!s})"

    def __str__(self):
        return format_poly(self)


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Polynomial, order: MonomialOrder = GREVLEX) -> str:
    """Render in the text format ``c*x1^a1*x2^a2 + ...`` (descending terms)."""
    if p.is_zero():
        return "0"
    names = p.ring.names
    pieces = []
    for idx, (c, m) in enumerate(p.terms(order)):
        sign = "-" if c < 0 else "+"
        c = abs(c)
        factors = [names[i] if a == 1 else f"{names[i]}^{a}" for i, a in enumerate(m) if a]
        if not factors:
            body = _format_coeff(c)
        elif c == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(c) + "*" + "*".join(factors)
        if idx == 0:
            pieces.append(("-" if sign == "-" else "") + body)
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^]))"
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at position {pos} in {text!r}")
        pos = m.end()
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
    return tokens


def parse_poly(text: str, ring: Ring) -> Polynomial:
    """Parse the text format produced by :func:`format_poly`.

    Whitespace is free, ``*`` between factors and ``^1`` are optional,
    coefficients may be written ``p/q``.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial")
    index = {name: i for i, name in enumerate(ring.names)}
    n = ring.nvars
    terms: dict = {}
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    expect_term = True
    sign = 1
    while pos < len(tokens):
        kind, val = peek()
        if kind == "op" and val in "+-":
            sign = sign * (-1 if val == "-" else 1)
            pos += 1
            expect_term = True
            continue
        if not expect_term:
            raise ParseError(f"missing operator before {val!r} in {text!r}")
        coeff = Fraction(sign)
        exps = [0] * n
        seen_factor = False
        while pos < len(tokens):
            kind, val = peek()
            if kind == "op" and val == "*":
                if not seen_factor:
                    raise ParseError(f"dangling '*' in {text!r}")
                pos += 1
                kind, val = peek()
                if kind not in ("num", "name"):
                    raise ParseError(f"dangling '*' in {text!r}")
                continue
            if kind == "num":
                coeff *= Fraction(val)
                pos += 1
            elif kind == "name":
                if val not in index:
                    raise ParseError(f"unknown variable {val!r}; ring has {ring.names}")
                pos += 1
                power = 1
                if peek() == ("op", "^"):
                    pos += 1
                    k2, v2 = peek()
                    if k2 != "num" or "/" in v2:
                        raise ParseError(f"bad exponent after {val!r} in {text!r}")
                    power = int(v2)
                    pos += 1
                exps[index[val]] += power
            else:
                break
            seen_factor = True
        if not seen_factor:
            raise ParseError(f"expected a term in {text!r}")
        m = tuple(exps)
        v = terms.get(m, 0) + coeff
        if v:
            terms[m] = v
        else:
            terms.pop(m, None)
        sign = 1
        expect_term = False
    if expect_term:
        raise ParseError(f"trailing operator in {text!r}")
    return Polynomial(ring, terms)


def linear_form(ring: Ring, coeffs: Iterable[Coefficient]) -> Polynomial:
    """The linear form sum(c_i * x_i)."""
    terms = {}
    for i, c in enumerate(coeffs):
        e = [0] * ring.nvars
        e[i] = 1
        terms[tuple(e)] = c
    return Polynomial(ring, terms)
