"""Exact arithmetic in Q(u, X) with u = q^(1/2) and X = q^(-s).

Values are kept as u^a X^b * num / den where num and den are polynomials
over Q with no monomial content, gcd(num, den) = 1 and den has leading
coefficient 1.  That representation is unique, so equality is structural.

Root-number symbols eps(chi) with eps(chi)^2 = chi(-1) are carried by
ConstantValue as a reduced word next to a rational-function scalar.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

__all__ = [
    "ExactRingError",
    "NotAValueError",
    "IrrationalEvaluationError",
    "RatFunc",
    "QValue",
    "SValue",
    "Pole",
    "ConstantValue",
    "SArg",
    "S",
    "half",
    "q_power",
    "x_power",
    "canonicalize",
    "substitute_s",
    "evaluate_numeric",
]

_R, _U, _X = ring("u,X", QQ)


class ExactRingError(ValueError):
    pass


class NotAValueError(ExactRingError):
    pass


class IrrationalEvaluationError(ExactRingError):
    pass


def half(x) -> Fraction:
    """Coerce to a Fraction and check that it lies in (1/2)Z."""
    f = Fraction(x)
    if (2 * f).denominator != 1:
        raise ExactRingError(f"{x} is not a half-integer")
    return f


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def _strip_monomial(p):
    """Split p = u^a X^b * p0 with p0 free of monomial content."""
    if not p:
        return 0, 0, p
    terms = p.terms()
    a = min(m[0] for m, _ in terms)
    b = min(m[1] for m, _ in terms)
    if a == 0 and b == 0:
        return 0, 0, p
    return a, b, _R({(m[0] - a, m[1] - b): c for m, c in terms})


def _shift(p, a, b):
    if a == 0 and b == 0:
        return p
    return _R({(m[0] + a, m[1] + b): c for m, c in p.terms()})


def _cancel(p, r):
    if p.is_ground or r.is_ground:
        return p, r
    g = p.gcd(r)
    if g == 1:
        return p, r
    return p.exquo(g), r.exquo(g)


class RatFunc:
    """Element of Q(u, X) in canonical form.  Immutable."""

    __slots__ = ("_a", "_b", "_num", "_den", "_hash")

    def __init__(self, num=None, den=None, a: int = 0, b: int = 0):
        num = _R.zero if num is None else num
        den = _R.one if den is None else den
        if not den:
            raise NotAValueError("not a value: zero denominator")
        if not num:
            self._set(0, 0, _R.zero, _R.one)
            return
        na, nb, num = _strip_monomial(num)
        da, db, den = _strip_monomial(den)
        g = num.gcd(den)
        if g != 1:
            num = num.exquo(g)
            den = den.exquo(g)
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        self._set(a + na - da, b + nb - db, num, den)

    def _set(self, a, b, num, den):
        self._a = a
        self._b = b
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, a, b, num, den):
        obj = cls.__new__(cls)
        obj._set(a, b, num, den)
        return obj

    # constructors

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        if c == 0:
            return cls._raw(0, 0, _R.zero, _R.one)
        return cls._raw(0, 0, _R(QQ(c.numerator, c.denominator)), _R.one)

    @classmethod
    def monomial(cls, c, k: int = 0, j: int = 0) -> "RatFunc":
        """c * u^k * X^j."""
        c = Fraction(c)
        if c == 0:
            return cls.const(0)
        return cls._raw(k, j, _R(QQ(c.numerator, c.denominator)), _R.one)

    @classmethod
    def laurent(cls, terms) -> "RatFunc":
        """Laurent polynomial from {(k, j): c} meaning sum c * u^k * X^j.

        A plain mapping {k: c} is read as a polynomial in u alone.
        """
        items = []
        for key, c in dict(terms).items():
            k, j = (key, 0) if isinstance(key, int) else key
            c = Fraction(c)
            if c:
                items.append((k, j, c))
        if not items:
            return cls.const(0)
        a = min(k for k, _, _ in items)
        b = min(j for _, j, _ in items)
        poly = _R({(k - a, j - b): QQ(c.numerator, c.denominator) for k, j, c in items})
        return cls(poly, _R.one, a, b)

    # structure

    @property
    def has_s(self) -> bool:
        return self._b != 0 or self._num.degree(1) > 0 or self._den.degree(1) > 0

    def is_zero(self) -> bool:
        return not self._num

    def is_one(self) -> bool:
        return self._a == 0 and self._b == 0 and self._num == 1 and self._den == 1

    def _key(self):
        return (self._a, self._b, self._num, self._den)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Rational)):
                other = RatFunc.const(other)
            else:
                return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._a, self._b, tuple(sorted(self._num.terms())),
                               tuple(sorted(self._den.terms()))))
        return self._hash

    # arithmetic

    @staticmethod
    def _coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Rational)):
            return RatFunc.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    def __mul__(self, other):
        if isinstance(other, ConstantValue):
            return NotImplemented
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RatFunc.const(0)
        a, b = self._a + o._a, self._b + o._b
        # scalar monomials need no gcd at all
        if o._den == 1 and o._num.is_ground:
            return RatFunc._raw(a, b, self._num * o._num, self._den)
        if self._den == 1 and self._num.is_ground:
            return RatFunc._raw(a, b, o._num * self._num, o._den)
        # both operands are reduced, so cross-cancelling suffices
        n1, d2 = _cancel(self._num, o._den)
        n2, d1 = _cancel(o._num, self._den)
        num, den = n1 * n2, d1 * d2
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return RatFunc._raw(a, b, num, den)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, ConstantValue):
            return NotImplemented
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        a = min(self._a, o._a)
        b = min(self._b, o._b)
        num = (_shift(self._num * o._den, self._a - a, self._b - b)
               + _shift(o._num * self._den, o._a - a, o._b - b))
        return RatFunc(num, self._den * o._den, a, b)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self._a, self._b, -self._num, self._den) if self._num else self

    def __sub__(self, other):
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise NotAValueError("not a value: division by zero")
        return RatFunc(self._den, self._num, -self._a, -self._b)

    def __truediv__(self, other):
        if isinstance(other, ConstantValue):
            return NotImplemented
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer exponents only")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RatFunc.const(1)
        if self.is_zero():
            return self
        return RatFunc._raw(self._a * k, self._b * k, self._num ** k, self._den ** k)

    # views

    def laurent_parts(self):
        """Return (numerator, denominator) as Laurent term dicts {(k, j): Fraction}.

        Scaled so that the denominator's leading term (largest k, then
        largest j) is exactly 1.
        """
        num = {(m[0] + self._a, m[1] + self._b): _to_fraction(c) for m, c in self._num.terms()}
        den = {m: _to_fraction(c) for m, c in self._den.terms()}
        top = max(den)
        c0 = den[top]
        num = {(k - top[0], j - top[1]): c / c0 for (k, j), c in num.items()}
        den = {(k - top[0], j - top[1]): c / c0 for (k, j), c in den.items()}
        return num, den

    def is_laurent(self) -> bool:
        return self._den == 1

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"RatFunc({self.text()!r})"

    def text(self) -> str:
        if self.is_zero():
            return "0"
        num, den = self.laurent_parts()
        if len(den) == 1:
            return _format_terms(num)
        return f"({_format_terms(num)}) / ({_format_terms(den)})"

    def subs_x(self, value: "RatFunc") -> "RatFunc":
        """Substitute X := value (an element of Q(u)); may raise NotAValueError."""
        def ev(p):
            acc = RatFunc.const(0)
            for (k, j), c in p.terms():
                acc = acc + RatFunc.monomial(_to_fraction(c), k) * value ** j
            return acc
        num = ev(self._num)
        den = ev(self._den)
        if den.is_zero():
            raise NotAValueError("zero denominator after substitution")
        return RatFunc.monomial(1, self._a) * value ** self._b * num / den

    def evaluate(self, q0) -> Fraction:
        """Exact value at q = q0 (requires no X)."""
        if self.has_s:
            raise ExactRingError("value still depends on s; substitute first")
        q0 = Fraction(q0)
        if q0 <= 1:
            raise ExactRingError("q0 must exceed 1")
        num, den = self.laurent_parts()
        odd = any(k % 2 for k, _ in num) or any(k % 2 for k, _ in den)
        u0 = _exact_sqrt(q0)
        if odd and u0 is None:
            raise IrrationalEvaluationError(
                f"irrational evaluation: odd power of q^(1/2) at non-square q0={q0}")

        def ev(terms):
            total = Fraction(0)
            for (k, _), c in terms.items():
                if k % 2 == 0:
                    total += c * q0 ** (k // 2)
                else:
                    total += c * u0 ** k
            return total

        d = ev(den)
        if d == 0:
            raise NotAValueError(f"denominator vanishes at q0={q0}")
        return ev(num) / d


def _exact_sqrt(x: Fraction):
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _format_terms(terms) -> str:
    keys = sorted(terms, key=lambda kj: (-kj[0], -kj[1]))
    parts = []
    for k, j in keys:
        c = terms[(k, j)]
        s = f"{c}*q^({k}/2)"
        if j:
            s += f"*X^({j})"
        parts.append(s)
    return " + ".join(parts) if parts else "0"


QValue = RatFunc
SValue = RatFunc


def q_power(k) -> RatFunc:
    """q^k for k in (1/2)Z."""
    k = half(k)
    return RatFunc.monomial(1, int(2 * k))


def x_power(j: int) -> RatFunc:
    """X^j = q^(-j s)."""
    return RatFunc.monomial(1, 0, j)


class SArg:
    """Affine argument c*s + k with c an integer and k a half-integer."""

    __slots__ = ("c", "k")

    def __init__(self, c: int = 1, k=0):
        self.c = int(c)
        self.k = half(k)

    @staticmethod
    def of(x) -> "SArg":
        if isinstance(x, SArg):
            return x
        return SArg(0, x)

    def __add__(self, other):
        o = SArg.of(other)
        return SArg(self.c + o.c, self.k + o.k)

    __radd__ = __add__

    def __neg__(self):
        return SArg(-self.c, -self.k)

    def __sub__(self, other):
        return self + (-SArg.of(other))

    def __rsub__(self, other):
        return SArg.of(other) + (-self)

    def __mul__(self, m):
        if not isinstance(m, int):
            raise TypeError("SArg scales by integers only")
        return SArg(self.c * m, self.k * m)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, SArg) and (self.c, self.k) == (other.c, other.k)

    def __hash__(self):
        return hash((self.c, self.k))

    @property
    def is_numeric(self) -> bool:
        return self.c == 0

    def q_minus(self) -> RatFunc:
        """q^(-arg) = X^c * u^(-2k)."""
        return RatFunc.monomial(1, int(-2 * self.k), self.c)

    def at(self, s0) -> Fraction:
        return self.c * half(s0) + self.k

    def __repr__(self):
        return f"SArg({self.c}*s + {self.k})"


S = SArg(1, 0)


class Pole:
    """Marker for a genuine pole produced by substitution."""

    __slots__ = ("at",)

    def __init__(self, at=None):
        self.at = None if at is None else Fraction(at)

    def __eq__(self, other):
        return isinstance(other, Pole)

    def __hash__(self):
        return hash("pole")

    def __repr__(self):
        return f"Pole(at={self.at})"

    def text(self) -> str:
        return "pole" if self.at is None else f"pole at s={self.at}"

    __str__ = text


def _word(items):
    return tuple(sorted(items))


class ConstantValue:
    """scalar * prod eps(label) with each eps(label)^2 = sign(label).

    The word is a sorted tuple of (label, sign_at_minus_one) with each label
    at most once.
    """

    __slots__ = ("scalar", "word")

    def __init__(self, scalar=1, word=()):
        scalar = RatFunc._coerce(scalar)
        reduced = {}
        for label, sign in word:
            if sign not in (1, -1):
                raise ExactRingError("unit symbol sign must be +1 or -1")
            if label in reduced:
                if reduced[label] != sign:
                    raise ExactRingError(f"inconsistent sign for eps({label})")
                del reduced[label]
                scalar = scalar * sign
            else:
                reduced[label] = sign
        object.__setattr__(self, "scalar", scalar)
        object.__setattr__(self, "word", _word(reduced.items()))

    def __setattr__(self, name, value):
        raise AttributeError("ConstantValue is immutable")

    @classmethod
    def eps(cls, label: str, sign: int) -> "ConstantValue":
        return cls(1, ((label, sign),))

    @staticmethod
    def lift(x) -> "ConstantValue":
        if isinstance(x, ConstantValue):
            return x
        return ConstantValue(x)

    def __mul__(self, other):
        if isinstance(other, Pole):
            return NotImplemented
        o = ConstantValue.lift(other)
        return ConstantValue(self.scalar * o.scalar, self.word + o.word)

    __rmul__ = __mul__

    def inverse(self) -> "ConstantValue":
        sign = 1
        for _, s in self.word:
            sign *= s
        return ConstantValue(self.scalar.inverse() * sign, self.word)

    def __truediv__(self, other):
        return self * ConstantValue.lift(other).inverse()

    def __rtruediv__(self, other):
        return ConstantValue.lift(other) * self.inverse()

    def __neg__(self):
        return ConstantValue(-self.scalar, self.word)

    def __add__(self, other):
        o = ConstantValue.lift(other)
        if o.scalar.is_zero():
            return self
        if self.scalar.is_zero():
            return o
        if o.word != self.word:
            raise ExactRingError("cannot add values with different unit words")
        return ConstantValue(self.scalar + o.scalar, self.word)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-ConstantValue.lift(other))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ConstantValue(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (RatFunc, int, Rational)):
            other = ConstantValue(other)
        if not isinstance(other, ConstantValue):
            return NotImplemented
        if self.scalar.is_zero() and other.scalar.is_zero():
            return True
        return self.scalar == other.scalar and self.word == other.word

    def __hash__(self):
        if self.scalar.is_zero():
            return hash(self.scalar)
        return hash((self.scalar, self.word))

    @property
    def has_s(self) -> bool:
        return self.scalar.has_s

    def text(self) -> str:
        out = self.scalar.text()
        if self.scalar.is_zero():
            return out
        for label, _ in self.word:
            out += f" * eps({label})"
        return out

    __str__ = text

    def __repr__(self):
        return f"ConstantValue({self.text()!r})"


def canonicalize(x):
    """Return the canonical form of x.

    Values are canonical by construction, so this rebuilds from the raw
    parts and is idempotent.
    """
    if isinstance(x, RatFunc):
        return RatFunc(x._num, x._den, x._a, x._b)
    if isinstance(x, ConstantValue):
        return ConstantValue(canonicalize(x.scalar), x.word)
    if isinstance(x, Pole):
        return x
    if isinstance(x, (int, Rational)):
        return RatFunc.const(x)
    raise TypeError(f"cannot canonicalize {type(x).__name__}")


def substitute_s(x, s0):
    """Replace X by q^(-s0) = u^(-2 s0); return Pole if the denominator dies."""
    s0 = half(s0)
    if isinstance(x, Pole):
        return x
    if isinstance(x, ConstantValue):
        sc = substitute_s(x.scalar, s0)
        if isinstance(sc, Pole):
            return sc
        return ConstantValue(sc, x.word)
    x = canonicalize(x)
    try:
        return x.subs_x(RatFunc.monomial(1, int(-2 * s0)))
    except NotAValueError:
        return Pole(s0)


_FOURTH_ROOTS = {1: 0, 1j: 1, -1: 2, -1j: 3}


def evaluate_numeric(x, q0, unit_values=None) -> Fraction:
    """Exact rational value of x at q = q0.

    unit_values maps labels to a fourth root of unity (1, -1, 1j, -1j),
    which must square to the symbol's sign; the product of the word must
    come out real.
    """
    q0 = Fraction(q0)
    if q0 <= 1:
        raise ExactRingError("q0 must exceed 1")
    if isinstance(x, Pole):
        raise ExactRingError("cannot evaluate a pole")
    if isinstance(x, ConstantValue):
        power = 0
        for label, sign in x.word:
            if unit_values is None or label not in unit_values:
                raise ExactRingError(f"missing unit value for eps({label})")
            v = unit_values[label]
            if v not in _FOURTH_ROOTS:
                raise ExactRingError(f"eps({label}) must be a fourth root of unity")
            p = _FOURTH_ROOTS[v]
            if (-1) ** p != sign:
                raise ExactRingError(f"eps({label})^2 must equal {sign}")
            power += p
        if power % 2:
            raise IrrationalEvaluationError("unit word does not evaluate to a rational")
        return x.scalar.evaluate(q0) * (1 if power % 4 == 0 else -1)
    return RatFunc._coerce(x).evaluate(q0)
