"""Exact arithmetic in Q(q), the field of rational functions in one
indeterminate q over the rationals.

A value is a fraction num/den of integer-coefficient polynomials, stored as
dense little-endian tuples (index = power of q) and kept in a unique
canonical form:

* gcd(num, den) = 1 over the rationals,
* the integer contents of num and den are coprime,
* den has positive leading coefficient.

Canonical form makes equality and hashing structural: two values are equal
iff their tuples coincide.  q is treated as transcendental; the only
specialization is `ratq_eval`, which evaluates at a rational point and is
meant as a fast probabilistic pre-check (decisive equality tests stay
symbolic).

Negative powers of q live in the denominator, e.g. q^-1 is 1/q and
nu = q - q^-1 is (q^2 - 1)/q.
"""

from __future__ import annotations

import math
from fractions import Fraction

# ---------------------------------------------------------------------------
# integer polynomial helpers (dense little-endian tuples, no trailing zeros)

_ZPOL = ()
_ONEPOL = (1,)


def _trim(c: list[int]) -> tuple[int, ...]:
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return tuple(c[:n])


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] += x
    return _trim(c)


def _pneg(a):
    return tuple(-x for x in a)


def _psub(a, b):
    return _padd(a, _pneg(b))


def _pmul(a, b):
    if not a or not b:
        return _ZPOL
    c = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    c[i + j] += x * y
    return _trim(c)


def _pscale(a, k: int):
    if k == 0:
        return _ZPOL
    return tuple(x * k for x in a)


def _content(a) -> int:
    g = 0
    for x in a:
        g = math.gcd(g, x)
        if g == 1:
            return 1
    return g


def _primitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return _ZPOL
    c = _content(a)
    if a[-1] < 0:
        c = -c
    return tuple(x // c for x in a)


def _prem(a, b):
    """Pseudo-remainder of a by b (b nonzero), fraction-free."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and _trim(a):
        da = len(_trim(a)) - 1
        a = list(_trim(a))
        if da < db:
            break
        la = a[-1]
        a = [x * lb for x in a]
        for i, y in enumerate(b):
            a[da - db + i] -= la * y
        a = list(_trim(a))
    return _trim(a)


def _pgcd(a, b):
    """Gcd over Q, returned as a primitive integer polynomial."""
    a, b = _primitive(a), _primitive(b)
    while b:
        a, b = b, _primitive(_prem(a, b))
    return a


def _pdiv_exact(a, b):
    """Quotient a/b assuming exact divisibility in Z[q]."""
    if not a:
        return _ZPOL
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    out = [0] * (len(a) - db)
    for k in range(len(a) - db - 1, -1, -1):
        c = a[k + db]
        if c % lb:
            raise ArithmeticError("inexact polynomial division")
        out[k] = c // lb
        if out[k]:
            for i, y in enumerate(b):
                a[k + i] -= out[k] * y
    if _trim(a):
        raise ArithmeticError("inexact polynomial division")
    return _trim(out)


def _peval(a, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pstr(a) -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            head = "" if abs(c) == 1 else f"{abs(c)}*"
            body = f"{head}q" if k == 1 else f"{head}q^{k}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------------------


class RatQ:
    """An element of Q(q) in canonical form.  Immutable and hashable."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        if isinstance(num, RatQ):
            self.num, self.den = num.num, num.den
            self._hash = num._hash
            return
        if isinstance(num, int):
            num = (num,) if num else _ZPOL
        if den is None:
            den = _ONEPOL
        elif isinstance(den, int):
            den = (den,) if den else _ZPOL
        self.num, self.den = _canonical(tuple(num), tuple(den))
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def q_power(k: int) -> "RatQ":
        if k >= 0:
            return _mk((0,) * k + (1,), _ONEPOL)
        return _mk(_ONEPOL, (0,) * (-k) + (1,))

    @staticmethod
    def from_fraction(x: Fraction) -> "RatQ":
        return _mk((x.numerator,), (x.denominator,))

    # -- ring/field structure ------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return _make_canonical(_padd(self.num, other.num), self.den)
        return _make_canonical(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return _mk(_pneg(self.num), self.den)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        return _make_canonical(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            raise ZeroDivisionError("division by zero in Q(q)")
        return _make_canonical(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def inverse(self) -> "RatQ":
        if not self.num:
            raise ZeroDivisionError("division by zero in Q(q)")
        return _make_canonical(self.den, self.num)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure queries ---------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == _ONEPOL and self.den == _ONEPOL

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        h = self._hash
        if h is None:
            h = self._hash = hash((self.num, self.den))
        return h

    # -- evaluation and rendering --------------------------------------------

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"evaluation at a pole of the denominator: q = {x}")
        return _peval(self.num, x) / d

    def __repr__(self):
        return f"RatQ({self})"

    def __str__(self):
        if self == NU:
            return "nu"
        if self == -NU:
            return "-nu"
        if self.den == _ONEPOL:
            return _pstr(self.num)
        # pure powers render as q^-k
        if len([c for c in self.den if c]) == 1 and self.den[-1] == 1:
            k = len(self.den) - 1
            if self.num == _ONEPOL:
                return f"q^-{k}"
            if self.num == (-1,):
                return f"-q^-{k}"
            nn = _pstr(self.num)
            if len([c for c in self.num if c]) > 1:
                nn = f"({nn})"
            return f"{nn}*q^-{k}"
        nn, dd = _pstr(self.num), _pstr(self.den)
        if len([c for c in self.num if c]) > 1:
            nn = f"({nn})"
        if len([c for c in self.den if c]) > 1:
            dd = f"({dd})"
        return f"{nn}/{dd}"


def _canonical(num, den):
    num, den = _trim(list(num)), _trim(list(den))
    if not den:
        raise ZeroDivisionError("zero denominator in Q(q)")
    if not num:
        return _ZPOL, _ONEPOL
    g = _pgcd(num, den)
    if len(g) > 1 or g != _ONEPOL:
        num = _pdiv_exact(num, g)
        den = _pdiv_exact(den, g)
    cn, cd = _content(num), _content(den)
    r = math.gcd(cn, cd)
    if den[-1] < 0:
        r = -r
    if r != 1:
        num = tuple(x // r for x in num)
        den = tuple(x // r for x in den)
    return num, den


def _mk(num, den) -> RatQ:
    """Build a RatQ from tuples already known to be canonical."""
    out = RatQ.__new__(RatQ)
    out.num, out.den = num, den
    out._hash = None
    return out


def _make_canonical(num, den) -> RatQ:
    out = RatQ.__new__(RatQ)
    out.num, out.den = _canonical(num, den)
    out._hash = None
    return out


def _coerce(x):
    if isinstance(x, RatQ):
        return x
    if isinstance(x, int):
        return _mk((x,) if x else _ZPOL, _ONEPOL)
    if isinstance(x, Fraction):
        return RatQ.from_fraction(x)
    return NotImplemented


ZERO = _mk(_ZPOL, _ONEPOL)
ONE = _mk(_ONEPOL, _ONEPOL)
Q = _mk((0, 1), _ONEPOL)
QINV = _mk(_ONEPOL, (0, 1))
NU = _mk((-1, 0, 1), (0, 1))  # q - q^-1
TWO_Q = _mk((1, 0, 1), (0, 1))  # [2]_q = q + q^-1


def qpow(k: int) -> RatQ:
    return RatQ.q_power(k)


def ratq_arith(a: RatQ, b: RatQ | None, op: str) -> RatQ:
    """Field operations by name; `b` is ignored for op='neg'."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "neg":
        return -a
    raise ValueError(f"unknown op {op!r}")


def ratq_eval(a: RatQ, x) -> Fraction:
    """Exact value of a at the rational point x; error at a pole."""
    return a.evaluate(x)
