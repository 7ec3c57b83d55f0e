"""Exact arithmetic over the rationals and cyclotomic fields Q(zeta_m).

Elements of a degree-one field (m = 1 or m = 2) are plain :class:`fractions.Fraction`
objects, which keeps the common rational case fast.  Larger conductors use
:class:`Cyclotomic`, a residue polynomial modulo the m-th cyclotomic polynomial.
Python ints and Fractions mix freely with both representations.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import FieldMismatchError

_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_TERM_RE = re.compile(r"^(\d+(?:/\d+)?)?(?:\*?\(?(?:z|zeta)\)?(?:\^(\d+))?)?$")


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod_exact(a, b):
    """Integer polynomial division by a monic b (coefficients low to high)."""
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1]
        q[k] = c
        if c:
            for i, y in enumerate(b):
                a[k + i] -= c * y
    return q, a[: len(b) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be a positive integer")
    # x^m - 1 = prod_{d | m} Phi_d(x)
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod_exact(num, cyclotomic_polynomial(d))
            assert not any(rem)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


class CyclotomicField:
    """The field Q(zeta_m); use :func:`cyclotomic_field` to obtain instances."""

    def __init__(self, conductor: int):
        self.conductor = conductor
        self.phi = cyclotomic_polynomial(conductor)
        self.degree = len(self.phi) - 1
        d = self.degree
        # reduction table: x^k for d <= k <= 2d-2 in terms of 1..x^(d-1)
        red = {}
        cur = [Fraction(-c) for c in self.phi[:d]]
        for k in range(d, max(2 * d - 1, d + 1)):
            red[k] = tuple(cur)
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [cur[i] - top * self.phi[i] for i in range(d)]
        self._red = red

    def __repr__(self):
        return f"CyclotomicField({self.conductor})"

    def __reduce__(self):
        return (cyclotomic_field, (self.conductor,))

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    @property
    def zeta(self):
        """A primitive m-th root of unity."""
        if self.is_rational:
            return Fraction(1 if self.conductor == 1 else -1)
        return Cyclotomic(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    def has_roots_of_unity(self, order: int) -> bool:
        """True when Q(zeta_order) embeds in this field."""
        m = self.conductor
        full = m if m % 2 == 0 else 2 * m
        return full % order == 0

    def root_of_unity(self, order: int, power: int = 1):
        """zeta_order ** power, with zeta_order a fixed primitive root in this field."""
        if not self.has_roots_of_unity(order):
            raise FieldMismatchError(
                f"Q(zeta_{self.conductor}) has no primitive {order}-th root of unity"
            )
        m = self.conductor
        if m % order == 0:
            return self.zeta ** ((power * (m // order)) % m)
        # m odd: zeta_{2m} = -zeta_m^((m+1)/2)
        z2m = -(self.zeta ** ((m + 1) // 2))
        return z2m ** ((power * (2 * m // order)) % (2 * m))

    def from_coefficients(self, coeffs):
        """Element sum_k coeffs[k] * zeta^k; coefficients may exceed the degree."""
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) <= self.degree:
            coeffs += [Fraction(0)] * (self.degree - len(coeffs))
            return self._make(coeffs)
        # reduce high powers with repeated zeta multiplication
        acc = self._make([Fraction(0)] * self.degree)
        power = self.one
        z = self.zeta
        for c in coeffs:
            if c:
                acc = acc + c * power
            power = power * z
        return acc

    def _make(self, coeffs):
        if self.is_rational:
            return Fraction(coeffs[0])
        return Cyclotomic(self, tuple(coeffs))

    def coefficients(self, x) -> tuple[Fraction, ...]:
        if isinstance(x, Cyclotomic):
            self.check(x)
            return x.c
        return (Fraction(x),) + (Fraction(0),) * (self.degree - 1)

    def check(self, x):
        if isinstance(x, Cyclotomic) and x.field is not self:
            raise FieldMismatchError(f"scalar from {x.field!r} used in {self!r}")
        return x

    def __call__(self, x):
        """Coerce ints, Fractions, strings and same-field elements."""
        if isinstance(x, Cyclotomic):
            return self.check(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, float):
            raise TypeError("floating point scalars are not exact")
        return Fraction(x)

    def parse(self, text: str):
        """Parse "p/q" or a polynomial in z such as "1+2*z^3" or "-1/2*z"."""
        if _RATIONAL_RE.match(text):
            return Fraction(text.replace(" ", ""))
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty scalar string")
        if s[0] not in "+-":
            s = "+" + s
        parts = re.findall(r"[+-][^+-]*", s)
        if "".join(parts) != s:
            raise ValueError(f"cannot parse scalar {text!r}")
        coeffs: dict[int, Fraction] = {}
        for part in parts:
            sign = -1 if part[0] == "-" else 1
            body = part[1:]
            m = _TERM_RE.match(body)
            if not body or m is None or body.startswith("*") or body.endswith("*"):
                raise ValueError(f"cannot parse scalar {text!r}")
            coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            has_z = "z" in body
            if not has_z and not m.group(1):
                raise ValueError(f"cannot parse scalar {text!r}")
            k = int(m.group(2)) if m.group(2) else (1 if has_z else 0)
            coeffs[k] = coeffs.get(k, Fraction(0)) + sign * coef
        top = max(coeffs)
        return self.from_coefficients([coeffs.get(k, 0) for k in range(top + 1)])

    def format(self, x) -> str:
        x = self(x)
        if not isinstance(x, Cyclotomic):
            return str(x)
        terms = []
        for k, c in enumerate(x.c):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")

    # used by Cyclotomic
    def _mul(self, a, b):
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                r = self._red[k]
                for i in range(d):
                    if r[i]:
                        out[i] += c * r[i]
        return tuple(out)

    def _inv(self, a):
        # solve (multiplication-by-a matrix) v = e_0
        d = self.degree
        cols = []
        basis = [Fraction(1)] + [Fraction(0)] * (d - 1)
        col = tuple(a)
        z = (Fraction(0), Fraction(1)) + (Fraction(0),) * (d - 2)
        for _ in range(d):
            cols.append(col)
            col = self._mul(col, z)
        rows = [[cols[j][i] for j in range(d)] + [basis[i]] for i in range(d)]
        for c in range(d):
            p = next((r for r in range(c, d) if rows[r][c]), None)
            if p is None:
                raise ZeroDivisionError("element is not invertible")
            rows[c], rows[p] = rows[p], rows[c]
            pv = rows[c][c]
            rows[c] = [v / pv for v in rows[c]]
            for r in range(d):
                if r != c and rows[r][c]:
                    f = rows[r][c]
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
        return tuple(rows[i][d] for i in range(d))


@lru_cache(maxsize=None)
def cyclotomic_field(conductor: int = 1) -> CyclotomicField:
    """Return the (cached) field Q(zeta_conductor)."""
    if not isinstance(conductor, int) or conductor < 1:
        raise ValueError("conductor must be a positive integer")
    return CyclotomicField(conductor)


QQ = cyclotomic_field(1)


class Cyclotomic:
    """Immutable element of Q(zeta_m) with m such that phi(m) > 1."""

    __slots__ = ("field", "c")

    def __init__(self, field: CyclotomicField, coeffs):
        self.field = field
        self.c = coeffs

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.field is not self.field:
                raise FieldMismatchError(
                    f"cannot combine scalars of {self.field!r} and {other.field!r}"
                )
            return other.c
        if isinstance(other, (int, Fraction)):
            return (Fraction(other),) + (Fraction(0),) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.field, tuple(x + y for x, y in zip(self.c, o)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.field, tuple(-x for x in self.c))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.field, tuple(x - y for x, y in zip(self.c, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.field, tuple(x * other for x in self.c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.field, self.field._mul(self.c, o))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in cyclotomic field")
        return Cyclotomic(self.field, self.field._inv(self.c))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.field, tuple(x / other for x in self.c))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * Cyclotomic(self.field, o).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Cyclotomic(self.field, (Fraction(1),) + (Fraction(0),) * (self.field.degree - 1))
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.field is other.field and self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.c[0] == other and not any(self.c[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash((self.field.conductor, self.c))

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def __repr__(self):
        return f"Cyclotomic({self.field.conductor}, {self.field.format(self)!r})"

    def __str__(self):
        return self.field.format(self)


def field_of(values) -> CyclotomicField | None:
    """The cyclotomic field of the first non-rational value, if any."""
    for v in values:
        if isinstance(v, Cyclotomic):
            return v.field
    return None


def rational_content(values) -> Fraction:
    """Positive rational c with every value / c integral and jointly primitive."""
    num = 0
    den = 1
    for v in values:
        coeffs = v.c if isinstance(v, Cyclotomic) else (v,)
        for c in coeffs:
            if isinstance(c, int):
                num = gcd(num, c)
            elif c:
                num = gcd(num, c.numerator)
                den = den * c.denominator // gcd(den, c.denominator)
    if num == 0:
        return Fraction(1)
    return Fraction(num, den)
