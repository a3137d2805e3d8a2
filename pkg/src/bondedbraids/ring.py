"""Exact arithmetic in Z[t, z, zk] localized at {t, 1-z-t*z, 1-zk-t*zk}.

Elements are stored as ``num / (t^a * d1^b * d2^c)`` where ``num`` is a
polynomial with unbounded integer coefficients and ``d1 = 1-z-t*z``,
``d2 = 1-zk-t*zk``.  Only these three elements are ever inverted; that is
exactly what the inverse crossing/bond/kink matrices need, and it keeps
equality decidable by exact division (t, d1, d2 are pairwise coprime primes
of Z[t, z, zk], so the fully divided-out form is canonical).

Monomial order is graded lex with t < z < zk; all printing, hashing and
division use it.  The text format round-trips through
:func:`parse_ring_element`: terms like ``-3*t^2*z``, denominators like
``/ (t^2 * (1-z-t*z))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

__all__ = [
    "Monomial",
    "Polynomial",
    "RingElement",
    "PoleError",
    "NotInvertibleError",
    "ParseError",
    "try_exact_div",
    "invert_special",
    "parse_ring_element",
    "T",
    "Z",
    "ZK",
    "D1",
    "D2",
    "ONE",
    "ZERO",
    "integer",
]


class PoleError(ArithmeticError):
    """Evaluation point lies on a pole of the element."""


class NotInvertibleError(ValueError):
    """The element is not a unit of the localized ring."""


class ParseError(ValueError):
    """Syntax error in the textual element format."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Monomial(NamedTuple):
    exp_t: int
    exp_z: int
    exp_zk: int


# Exponents are packed into a single int so that monomial multiplication is
# one integer addition.  21 bits per variable is far beyond any degree the
# library can produce.
_SHIFT = 21
_MASK = (1 << _SHIFT) - 1


def _pack(exp_t: int, exp_z: int, exp_zk: int) -> int:
    return exp_t | (exp_z << _SHIFT) | (exp_zk << (2 * _SHIFT))


def _unpack(key: int) -> Monomial:
    return Monomial(key & _MASK, (key >> _SHIFT) & _MASK, key >> (2 * _SHIFT))


def _grlex(key: int) -> tuple[int, int, int, int]:
    et = key & _MASK
    ez = (key >> _SHIFT) & _MASK
    ek = key >> (2 * _SHIFT)
    return (et + ez + ek, ek, ez, et)


class Polynomial:
    """Sparse polynomial in t, z, zk over the integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, _terms: dict[int, int] | None = None):
        # _terms maps packed monomial -> nonzero coefficient; trusted input.
        self._terms: dict[int, int] = _terms if _terms is not None else {}
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> Polynomial:
        return _P_ZERO

    @staticmethod
    def one() -> Polynomial:
        return _P_ONE

    @staticmethod
    def constant(c: int) -> Polynomial:
        if c == 0:
            return _P_ZERO
        return Polynomial({0: c})

    @staticmethod
    def variable(name: str) -> Polynomial:
        if name == "t":
            return Polynomial({_pack(1, 0, 0): 1})
        if name == "z":
            return Polynomial({_pack(0, 1, 0): 1})
        if name == "zk":
            return Polynomial({_pack(0, 0, 1): 1})
        raise ValueError(f"unknown variable {name!r}")

    @staticmethod
    def from_terms(terms: dict[Monomial, int]) -> Polynomial:
        out: dict[int, int] = {}
        for mono, coeff in terms.items():
            if coeff == 0:
                continue
            if min(mono) < 0:
                raise ValueError(f"negative exponent in {mono}")
            out[_pack(*mono)] = coeff
        return Polynomial(out)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_one(self) -> bool:
        return self._terms == {0: 1}

    def terms(self) -> dict[Monomial, int]:
        """Term map keyed by :class:`Monomial`, for inspection and tests."""
        return {_unpack(k): c for k, c in self._terms.items()}

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(_grlex(k)[0] for k in self._terms)

    def min_exp_t(self) -> int:
        if not self._terms:
            return 0
        return min(k & _MASK for k in self._terms)

    def leading(self) -> tuple[int, int]:
        """(packed monomial, coefficient) of the graded-lex leading term."""
        key = max(self._terms, key=_grlex)
        return key, self._terms[key]

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: Polynomial) -> Polynomial:
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return Polynomial(out)

    def __neg__(self) -> Polynomial:
        return Polynomial({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not other._terms:
            return self
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) - c
            if s:
                out[k] = s
            else:
                del out[k]
        return Polynomial(out)

    def __mul__(self, other: Polynomial) -> Polynomial:
        if not self._terms or not other._terms:
            return _P_ZERO
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[int, int] = {}
        get = out.get
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                s = get(k, 0) + ca * cb
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Polynomial(out)

    def scale(self, c: int) -> Polynomial:
        if c == 0:
            return _P_ZERO
        if c == 1:
            return self
        return Polynomial({k: c * v for k, v in self._terms.items()})

    def shift_t(self, k: int) -> Polynomial:
        """Multiply by t^k (k >= 0)."""
        if k == 0 or not self._terms:
            return self
        return Polynomial({key + k: c for key, c in self._terms.items()})

    def unshift_t(self, k: int) -> Polynomial:
        """Divide by t^k; every term must have exp_t >= k."""
        if k == 0 or not self._terms:
            return self
        return Polynomial({key - k: c for key, c in self._terms.items()})

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative power of a Polynomial")
        result = _P_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison, hashing -----------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._terms.items())))
        return self._hash

    # -- printing ----------------------------------------------------------

    def _sorted_terms(self) -> Iterator[tuple[int, int]]:
        for k in sorted(self._terms, key=_grlex):
            yield k, self._terms[k]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces: list[str] = []
        for key, coeff in self._sorted_terms():
            mono = _unpack(key)
            factors = []
            for name, exp in (("t", mono.exp_t), ("z", mono.exp_z), ("zk", mono.exp_zk)):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            if not factors:
                term = str(coeff)
            elif coeff == 1:
                term = "*".join(factors)
            elif coeff == -1:
                term = "-" + "*".join(factors)
            else:
                term = f"{coeff}*" + "*".join(factors)
            pieces.append(term)
        out = pieces[0]
        for term in pieces[1:]:
            out += term if term.startswith("-") else "+" + term
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self})"


_P_ZERO = Polynomial({})
_P_ONE = Polynomial({0: 1})
_P_T = Polynomial.variable("t")
_P_Z = Polynomial.variable("z")
_P_ZK = Polynomial.variable("zk")
# d1 = 1 - z - t*z, d2 = 1 - zk - t*zk: the two non-monomial primes that the
# inverse bond/kink matrices divide by.
D1_POLY = _P_ONE - _P_Z - _P_T * _P_Z
D2_POLY = _P_ONE - _P_ZK - _P_T * _P_ZK


def try_exact_div(p: Polynomial, q: Polynomial) -> Polynomial | None:
    """Quotient p/q in Z[t, z, zk], or None when q does not divide p.

    Single-divisor long division by graded-lex leading terms.  Because the
    ring is a domain, ``p = q*r`` forces ``lt(p) = lt(q)*lt(r)``, so peeling
    leading terms succeeds exactly when the division is exact.
    """
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return _P_ZERO
    qk, qc = q.leading()
    qt, qz, qzk = _unpack(qk)
    quo: dict[int, int] = {}
    rem = p
    while not rem.is_zero:
        rk, rc = rem.leading()
        rt, rz, rzk = _unpack(rk)
        if qt > rt or qz > rz or qzk > rzk:
            return None  # lt(q) does not divide lt(rem)
        mk = rk - qk
        c, r = divmod(rc, qc)
        if r:
            return None
        quo[mk] = c
        rem = rem - Polynomial({mk: c}) * q
    return Polynomial(quo)


@dataclass(frozen=True)
class RingElement:
    """Element num / (t^den_t * d1^den_d1 * d2^den_d2), kept normalized.

    Normalization repeatedly divides the numerator by t, d1, d2 while the
    matching denominator exponent is positive and the division is exact;
    the result is unique, so dataclass equality is ring equality.
    """

    num: Polynomial
    den_t: int = 0
    den_d1: int = 0
    den_d2: int = 0

    def __post_init__(self):
        if self.den_t < 0 or self.den_d1 < 0 or self.den_d2 < 0:
            raise ValueError("denominator exponents must be non-negative")
        num, den_t, den_d1, den_d2 = self.num, self.den_t, self.den_d1, self.den_d2
        if num.is_zero:
            den_t = den_d1 = den_d2 = 0
        else:
            if den_t:
                k = min(den_t, num.min_exp_t())
                if k:
                    num = num.unshift_t(k)
                    den_t -= k
            while den_d1:
                q = try_exact_div(num, D1_POLY)
                if q is None:
                    break
                num, den_d1 = q, den_d1 - 1
            while den_d2:
                q = try_exact_div(num, D2_POLY)
                if q is None:
                    break
                num, den_d2 = q, den_d2 - 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den_t", den_t)
        object.__setattr__(self, "den_d1", den_d1)
        object.__setattr__(self, "den_d2", den_d2)

    # -- inspection --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_one(self) -> bool:
        return self.num.is_one and not (self.den_t or self.den_d1 or self.den_d2)

    @property
    def denominator_free(self) -> bool:
        return not (self.den_t or self.den_d1 or self.den_d2)

    # -- arithmetic --------------------------------------------------------

    def _scaled_num(self, den_t: int, den_d1: int, den_d2: int) -> Polynomial:
        """Numerator after raising this element to the given denominators."""
        num = self.num.shift_t(den_t - self.den_t)
        if den_d1 != self.den_d1:
            num = num * D1_POLY ** (den_d1 - self.den_d1)
        if den_d2 != self.den_d2:
            num = num * D2_POLY ** (den_d2 - self.den_d2)
        return num

    def __add__(self, other: RingElement) -> RingElement:
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        dt = max(self.den_t, other.den_t)
        d1 = max(self.den_d1, other.den_d1)
        d2 = max(self.den_d2, other.den_d2)
        num = self._scaled_num(dt, d1, d2) + other._scaled_num(dt, d1, d2)
        return RingElement(num, dt, d1, d2)

    def __neg__(self) -> RingElement:
        return RingElement(-self.num, self.den_t, self.den_d1, self.den_d2)

    def __sub__(self, other: RingElement) -> RingElement:
        return self + (-other)

    def __mul__(self, other: RingElement) -> RingElement:
        if self.is_zero or other.is_zero:
            return ZERO
        return RingElement(
            self.num * other.num,
            self.den_t + other.den_t,
            self.den_d1 + other.den_d1,
            self.den_d2 + other.den_d2,
        )

    def inverse(self) -> RingElement:
        """Inverse, defined only for units +-t^a * d1^b * d2^c of the ring."""
        if self.is_zero:
            raise NotInvertibleError("0 is not invertible")
        num = self.num
        exp_t = num.min_exp_t()
        num = num.unshift_t(exp_t)
        exp_d1 = 0
        while True:
            q = try_exact_div(num, D1_POLY)
            if q is None:
                break
            num, exp_d1 = q, exp_d1 + 1
        exp_d2 = 0
        while True:
            q = try_exact_div(num, D2_POLY)
            if q is None:
                break
            num, exp_d2 = q, exp_d2 + 1
        if not (num.is_one or num == Polynomial.constant(-1)):
            raise NotInvertibleError(
                f"{self} is not a unit of the localized ring"
            )
        sign = 1 if num.is_one else -1
        inv_num = Polynomial.constant(sign).shift_t(self.den_t)
        inv_num = inv_num * D1_POLY**self.den_d1 * D2_POLY**self.den_d2
        return RingElement(inv_num, exp_t, exp_d1, exp_d2)

    def __truediv__(self, other: RingElement) -> RingElement:
        return self * other.inverse()

    def __pow__(self, n: int) -> RingElement:
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation --------------------------------------------------------

    def evaluate(self, t0: Fraction | int, z0: Fraction | int, zk0: Fraction | int) -> Fraction:
        """Exact rational value at (t0, z0, zk0); PoleError on a vanishing denominator."""
        t0, z0, zk0 = Fraction(t0), Fraction(z0), Fraction(zk0)
        d1v = 1 - z0 - t0 * z0
        d2v = 1 - zk0 - t0 * zk0
        den = t0**self.den_t if self.den_t else Fraction(1)
        den *= d1v**self.den_d1 * d2v**self.den_d2
        if (self.den_t and t0 == 0) or (self.den_d1 and d1v == 0) or (self.den_d2 and d2v == 0):
            raise PoleError(f"pole at t={t0}, z={z0}, zk={zk0}")
        total = Fraction(0)
        for mono, coeff in self.num.terms().items():
            total += coeff * t0**mono.exp_t * z0**mono.exp_z * zk0**mono.exp_zk
        return total / den

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        num_str = str(self.num)
        if self.denominator_free:
            return num_str
        parts = []
        for base, exp in (("t", self.den_t), ("(1-z-t*z)", self.den_d1), ("(1-zk-t*zk)", self.den_d2)):
            if exp == 1:
                parts.append(base)
            elif exp > 1:
                parts.append(f"{base}^{exp}")
        if len(self.num) > 1:
            num_str = f"({num_str})"
        return f"{num_str} / ({' * '.join(parts)})"

    def __repr__(self) -> str:
        return f"RingElement({self})"


ZERO = RingElement(_P_ZERO)
ONE = RingElement(_P_ONE)
T = RingElement(_P_T)
Z = RingElement(_P_Z)
ZK = RingElement(_P_ZK)
D1 = RingElement(D1_POLY)
D2 = RingElement(D2_POLY)


def integer(c: int) -> RingElement:
    return RingElement(Polynomial.constant(c))


def invert_special(f: Polynomial | RingElement | str) -> RingElement:
    """1/f for f in {t, d1, d2}; any other element is rejected."""
    if isinstance(f, str):
        try:
            f = {"t": _P_T, "d1": D1_POLY, "d2": D2_POLY}[f]
        except KeyError:
            raise NotInvertibleError(f"{f!r} is not one of t, d1, d2") from None
    if isinstance(f, RingElement):
        if not f.denominator_free:
            raise NotInvertibleError(f"{f} is not one of t, d1, d2")
        f = f.num
    if f == _P_T:
        return RingElement(_P_ONE, den_t=1)
    if f == D1_POLY:
        return RingElement(_P_ONE, den_d1=1)
    if f == D2_POLY:
        return RingElement(_P_ONE, den_d2=1)
    raise NotInvertibleError(f"{f} is not one of t, d1, d2")


# -- parsing ---------------------------------------------------------------

_TOKEN_CHARS = {"+", "-", "*", "/", "^", "(", ")"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _TOKEN_CHARS:
            tokens.append(("op", ch, i))
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            name = text[i:j]
            if name not in ("t", "z", "zk"):
                raise ParseError(f"unknown symbol {name!r}", i)
            tokens.append(("var", name, i))
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _ElementParser:
    """Recursive-descent parser for the ring's textual form.

    Division is multiplication by :meth:`RingElement.inverse`, so anything
    outside the localized ring (e.g. ``1/z``) is rejected.
    """

    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, value, at = self.advance()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}, found {value!r}", at)

    def parse(self) -> RingElement:
        value = self.expr()
        kind, text, at = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input {text!r}", at)
        return value

    def expr(self) -> RingElement:
        value = self.term()
        while True:
            kind, op, _ = self.peek()
            if kind == "op" and op in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if op == "+" else value - rhs
            else:
                return value

    def term(self) -> RingElement:
        value = self.factor()
        while True:
            kind, op, at = self.peek()
            if kind == "op" and op in "*/":
                self.advance()
                rhs = self.factor()
                try:
                    value = value * rhs if op == "*" else value / rhs
                except NotInvertibleError as exc:
                    raise ParseError(str(exc), at) from None
            else:
                return value

    def factor(self) -> RingElement:
        kind, value, at = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            return -self.factor()
        base = self.atom()
        kind, value, at = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            exp = self.exponent()
            try:
                return base**exp
            except NotInvertibleError as exc:
                raise ParseError(str(exc), at) from None
        return base

    def exponent(self) -> int:
        sign = 1
        kind, value, at = self.peek()
        if kind == "op" and value == "-":
            self.advance()
            sign = -1
        kind, value, at = self.advance()
        if kind != "int":
            raise ParseError(f"expected integer exponent, found {value!r}", at)
        return sign * int(value)

    def atom(self) -> RingElement:
        kind, value, at = self.advance()
        if kind == "int":
            return integer(int(value))
        if kind == "var":
            return {"t": T, "z": Z, "zk": ZK}[value]
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected token {value!r}", at)


def parse_ring_element(text: str) -> RingElement:
    """Parse the textual form produced by ``str(RingElement)``."""
    return _ElementParser(text).parse()
