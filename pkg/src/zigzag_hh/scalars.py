"""Exact coefficient fields for the parameter q.

Three kinds of field are supported, selected by a :class:`QSpec`:

* ``generic``      the rational function field Q(q) with q transcendental,
* ``rational:p/r`` the rationals with q = p/r,
* ``zeta:s``       the cyclotomic field Q(z) with q = z a primitive s-th root of unity.

Rationals are :class:`flint.fmpq`; the other two kinds use the small wrapper
classes below, which keep a canonical form so that ``==`` and ``bool`` are exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_poly, fmpz_poly

__all__ = [
    "QSpec", "QClass", "Field", "ZeroQ", "BadOrder", "QSpecError",
    "make_field", "q_pow", "classify_q", "parse_qspec",
]


class QSpecError(ValueError):
    """A q specification that cannot be turned into a field."""


class ZeroQ(QSpecError):
    pass


class BadOrder(QSpecError):
    pass


@dataclass(frozen=True)
class QSpec:
    kind: str  # "generic" | "rational" | "zeta"
    value: Fraction | int | None = None

    @staticmethod
    def generic() -> "QSpec":
        return QSpec("generic")

    @staticmethod
    def rational(r) -> "QSpec":
        return QSpec("rational", Fraction(r))

    @staticmethod
    def root_of_unity(s: int) -> "QSpec":
        return QSpec("zeta", int(s))

    def __str__(self) -> str:
        if self.kind == "generic":
            return "generic"
        if self.kind == "rational":
            v = Fraction(self.value)
            return f"rational:{v.numerator}/{v.denominator}"
        return f"zeta:{self.value}"


_RAT = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_qspec(text: str) -> QSpec:
    """Parse ``generic``, ``rational:p/r`` or ``zeta:s``."""
    text = text.strip()
    if text == "generic":
        return QSpec.generic()
    kind, _, rest = text.partition(":")
    if kind == "rational":
        m = _RAT.match(rest)
        if not m:
            raise QSpecError(f"cannot parse rational value {rest!r}")
        den = int(m.group(2) or 1)
        if den == 0:
            raise QSpecError("zero denominator")
        return QSpec.rational(Fraction(int(m.group(1)), den))
    if kind == "zeta":
        try:
            return QSpec.root_of_unity(int(rest))
        except ValueError:
            raise QSpecError(f"cannot parse root-of-unity order {rest!r}") from None
    raise QSpecError(f"unknown q specification {text!r}")


@dataclass(frozen=True)
class QClass:
    """The three-way case split: ``generic``, ``pm1`` (q = 1 or -1) or ``root`` with order s > 2."""

    kind: str
    s: int | None = None
    sign: int | None = None  # the value of q when kind == "pm1"

    def __str__(self) -> str:
        if self.kind == "root":
            return f"PrimitiveRoot({self.s})"
        if self.kind == "pm1":
            return "QisPlusMinusOne"
        return "NotRootOfUnity"


# ---------------------------------------------------------------------------
# element types


class Cyclo:
    """Element of Q(z)/(Phi_s(z)), stored as a reduced fmpq_poly."""

    __slots__ = ("p", "F")

    def __init__(self, p: fmpq_poly, F: "CyclotomicField"):
        self.p = p
        self.F = F

    def _co(self, other):
        if isinstance(other, Cyclo):
            return other.p
        if isinstance(other, (int, fmpq)):
            return fmpq_poly([other])
        if isinstance(other, Fraction):
            return fmpq_poly([fmpq(other.numerator, other.denominator)])
        return NotImplemented

    def __add__(self, o):
        o = self._co(o)
        return NotImplemented if o is NotImplemented else Cyclo(self.p + o, self.F)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._co(o)
        return NotImplemented if o is NotImplemented else Cyclo(self.p - o, self.F)

    def __rsub__(self, o):
        o = self._co(o)
        return NotImplemented if o is NotImplemented else Cyclo(o - self.p, self.F)

    def __mul__(self, o):
        if isinstance(o, Cyclo):
            return Cyclo((self.p * o.p) % self.F.modulus, self.F)
        o = self._co(o)
        return NotImplemented if o is NotImplemented else Cyclo(self.p * o, self.F)

    __rmul__ = __mul__

    def __neg__(self):
        return Cyclo(-self.p, self.F)

    def inverse(self) -> "Cyclo":
        if not self.p:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = self.p.xgcd(self.F.modulus)
        return Cyclo((s / g) % self.F.modulus, self.F)

    def __truediv__(self, o):
        if isinstance(o, Cyclo):
            return self * o.inverse()
        o = self._co(o)
        if o is NotImplemented:
            return NotImplemented
        return Cyclo(self.p / o[0], self.F)

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out, base = Cyclo(fmpq_poly([1]), self.F), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return bool(self.p)

    def __eq__(self, o):
        o = self._co(o)
        return NotImplemented if o is NotImplemented else self.p == o

    def __hash__(self):
        return hash(("cyc", self.F.s, str(self.p)))

    def __repr__(self):
        return self.F.fmt(self)


class RatFunc:
    """Element of Q(q): numerator/denominator fmpq_poly pair, coprime, denominator monic."""

    __slots__ = ("n", "d")

    def __init__(self, n: fmpq_poly, d: fmpq_poly | None = None, *, reduced: bool = False):
        if d is None or reduced:
            self.n, self.d = n, (d if d is not None else _ONE_POLY)
            return
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not n:
            self.n, self.d = n, _ONE_POLY
            return
        if d.degree() > 0:
            g = n.gcd(d)
            if g.degree() > 0:
                n, d = n // g, d // g
        lc = d.leading_coefficient()
        if lc != 1:
            n, d = n / lc, d / lc
        self.n, self.d = n, d

    @staticmethod
    def _co(o):
        if isinstance(o, RatFunc):
            return o
        if isinstance(o, (int, fmpq)):
            return RatFunc(fmpq_poly([o]))
        if isinstance(o, Fraction):
            return RatFunc(fmpq_poly([fmpq(o.numerator, o.denominator)]))
        return NotImplemented

    def __add__(self, o):
        o = self._co(o)
        if o is NotImplemented:
            return o
        if self.d == o.d:
            return RatFunc(self.n + o.n, self.d)
        return RatFunc(self.n * o.d + o.n * self.d, self.d * o.d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.n, self.d, reduced=True)

    def __sub__(self, o):
        o = self._co(o)
        return o if o is NotImplemented else self + (-o)

    def __rsub__(self, o):
        o = self._co(o)
        return o if o is NotImplemented else o + (-self)

    def __mul__(self, o):
        o = self._co(o)
        if o is NotImplemented:
            return o
        if self.d.degree() == 0 and o.d.degree() == 0:
            return RatFunc(self.n * o.n, reduced=True)
        return RatFunc(self.n * o.n, self.d * o.d)

    __rmul__ = __mul__

    def inverse(self):
        if not self.n:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.d, self.n)

    def __truediv__(self, o):
        o = self._co(o)
        return o if o is NotImplemented else self * o.inverse()

    def __rtruediv__(self, o):
        o = self._co(o)
        return o if o is NotImplemented else o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return RatFunc(self.d ** (-e), self.n ** (-e))
        return RatFunc(self.n ** e, self.d ** e, reduced=True)

    def __bool__(self):
        return bool(self.n)

    def __eq__(self, o):
        o = self._co(o)
        return NotImplemented if o is NotImplemented else (self.n == o.n and self.d == o.d)

    def __hash__(self):
        return hash(("rf", str(self.n), str(self.d)))

    def __repr__(self):
        return _fmt_ratfunc(self)


_ONE_POLY = fmpq_poly([1])


# ---------------------------------------------------------------------------
# formatting helpers


def _fmt_q(c: fmpq) -> str:
    return str(c.p) if c.q == 1 else f"{c.p}/{c.q}"


def _fmt_poly(p: fmpq_poly, var: str) -> str:
    terms = []
    for e in range(p.degree(), -1, -1):
        c = p[e]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if e == 0:
            body = _fmt_q(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{_fmt_q(a)}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _fmt_ratfunc(x: RatFunc) -> str:
    num = _fmt_poly(x.n, "q")
    if x.d == 1:
        return num
    if len([c for c in x.n.coeffs() if c]) > 1:
        num = f"({num})"
    den = _fmt_poly(x.d, "q")
    if len([c for c in x.d.coeffs() if c]) > 1 or x.d[x.d.degree()] != 1:
        den = f"({den})"
    return f"{num}/{den}"


# ---------------------------------------------------------------------------
# fields


class Field:
    spec: QSpec
    zero: object
    one: object
    q: object

    def __call__(self, x):
        raise NotImplementedError

    def q_pow(self, e: int):
        return _qpow_cached(self, e)

    def is_zero(self, x) -> bool:
        return not x

    def classify(self) -> QClass:
        raise NotImplementedError

    def fmt(self, x) -> str:
        raise NotImplementedError

    def to_json(self, x):
        return self.fmt(x)

    def __repr__(self):
        return f"<Field {self.spec}>"

    def __eq__(self, other):
        return isinstance(other, Field) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)


@lru_cache(maxsize=None)
def _qpow_cached(F: Field, e: int):
    return F._q_pow(e)


class RationalField(Field):
    def __init__(self, spec: QSpec):
        self.spec = spec
        r = Fraction(spec.value)
        self.zero, self.one = fmpq(0), fmpq(1)
        self.q = fmpq(r.numerator, r.denominator)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return fmpq(x.numerator, x.denominator)
        return fmpq(x)

    def _q_pow(self, e):
        return self.q ** e

    def classify(self):
        if self.q == 1 or self.q == -1:
            return QClass("pm1", sign=int(self.q))
        return QClass("generic")

    def fmt(self, x):
        return _fmt_q(fmpq(x))


class CyclotomicField(Field):
    def __init__(self, spec: QSpec):
        self.spec = spec
        self.s = int(spec.value)
        self.modulus = fmpq_poly(fmpz_poly.cyclotomic(self.s))
        self.zero = Cyclo(fmpq_poly([]), self)
        self.one = Cyclo(fmpq_poly([1]), self)
        self.q = Cyclo(fmpq_poly([0, 1]) % self.modulus, self)

    def __call__(self, x):
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, Fraction):
            x = fmpq(x.numerator, x.denominator)
        return Cyclo(fmpq_poly([x]), self)

    def _q_pow(self, e):
        return self.q ** (e % self.s)

    def classify(self):
        if self.s <= 2:
            return QClass("pm1", sign=1 if self.s == 1 else -1)
        return QClass("root", s=self.s)

    def fmt(self, x):
        return _fmt_poly(self(x).p, "z")


class RationalFunctionField(Field):
    def __init__(self, spec: QSpec):
        self.spec = spec
        self.zero = RatFunc(fmpq_poly([]))
        self.one = RatFunc(fmpq_poly([1]))
        self.q = RatFunc(fmpq_poly([0, 1]))

    def __call__(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Fraction):
            x = fmpq(x.numerator, x.denominator)
        return RatFunc(fmpq_poly([x]))

    def _q_pow(self, e):
        if e >= 0:
            return RatFunc(fmpq_poly([0] * e + [1]), reduced=True)
        return RatFunc(fmpq_poly([1]), fmpq_poly([0] * (-e) + [1]), reduced=True)

    def classify(self):
        return QClass("generic")

    def fmt(self, x):
        return _fmt_ratfunc(self(x))


@lru_cache(maxsize=None)
def make_field(spec: QSpec | str) -> Field:
    """Build (and memoise) the coefficient field for ``spec``."""
    if isinstance(spec, str):
        spec = parse_qspec(spec)
    if spec.kind == "generic":
        return RationalFunctionField(spec)
    if spec.kind == "rational":
        if Fraction(spec.value) == 0:
            raise ZeroQ("q must be nonzero")
        return RationalField(spec)
    if spec.kind == "zeta":
        if int(spec.value) <= 0:
            raise BadOrder(f"root of unity order must be positive, got {spec.value}")
        return CyclotomicField(spec)
    raise QSpecError(f"unknown q kind {spec.kind!r}")


def q_pow(field: Field, e: int):
    return field.q_pow(e)


def classify_q(field: Field) -> QClass:
    return field.classify()
