"""Exact truncated series in curve classes and a Laurent variable z.

Two series types, both with Fraction coefficients and no floats:

* MultiSeries: finite sum  sum c * y^beta * z^k  with beta a CurveClass
  kept to weight(beta) <= y_max and k inside a working window
  [z_lo, z_hi].  Weight truncation is exact (weights only add); the
  z-window is a working window whose leakage the callers control by
  padding.
* QZSeries: series in q whose coefficients are Laurent polynomials in
  z, exact on a q-range [q_min, q_max].  q_min may be negative.

Multiplication, exp, log and binomial powers are all exact rational
arithmetic on sparse maps; zero coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .lattice import ZERO_CLASS, CurveClass

Coeff = int | Fraction


def _frac(x: Coeff) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LaurentPoly:
    """Finite Laurent polynomial in z with Fraction coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, Coeff] | None = None):
        c: dict[int, Fraction] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _frac(v)
                if v:
                    c[e] = v
        self._c = c

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def const(cls, v: Coeff) -> LaurentPoly:
        return cls({0: v})

    @classmethod
    def monomial(cls, v: Coeff, e: int) -> LaurentPoly:
        return cls({e: v})

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def items(self) -> list[tuple[int, Fraction]]:
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def width(self) -> int:
        """Spread max_exp - min_exp; zero for the zero polynomial."""
        return 0 if not self._c else max(self._c) - min(self._c)

    def is_palindromic(self) -> bool:
        return all(v == self._c.get(-e, Fraction(0)) for e, v in self._c.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e, Fraction(0)) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        out = LaurentPoly()
        out._c = c
        return out

    def __neg__(self) -> LaurentPoly:
        out = LaurentPoly()
        out._c = {e: -v for e, v in self._c.items()}
        return out

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | Coeff) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        c: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                w = c.get(e, Fraction(0)) + v1 * v2
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        out = LaurentPoly()
        out._c = c
        return out

    __rmul__ = __mul__

    def scale(self, k: Coeff) -> LaurentPoly:
        k = _frac(k)
        out = LaurentPoly()
        if k:
            out._c = {e: v * k for e, v in self._c.items()}
        return out

    def __str__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"{v}*z^{e}" for e, v in self.items())


# the KY kernel z - 2 + 1/z = (sqrt z - 1/sqrt z)^2
KY_KERNEL = LaurentPoly({1: 1, 0: -2, -1: 1})


class MultiSeries:
    """Sparse series sum c * y^beta * z^k, truncated in weight and z."""

    __slots__ = ("y_max", "z_lo", "z_hi", "_c")

    def __init__(self, y_max: int, z_window: tuple[int, int],
                 coeffs: Mapping[tuple[CurveClass, int], Coeff] | None = None):
        z_lo, z_hi = z_window
        if y_max < 0 or z_lo > z_hi:
            raise ValueError("need y_max >= 0 and z_lo <= z_hi")
        self.y_max = y_max
        self.z_lo = z_lo
        self.z_hi = z_hi
        c: dict[tuple[CurveClass, int], Fraction] = {}
        if coeffs:
            for (cls, k), v in coeffs.items():
                if cls.weight > y_max or not (z_lo <= k <= z_hi):
                    continue
                v = _frac(v)
                if v:
                    c[(cls, k)] = v
        self._c = c

    @classmethod
    def zero(cls, y_max: int, z_window: tuple[int, int]) -> MultiSeries:
        return cls(y_max, z_window)

    @classmethod
    def one(cls, y_max: int, z_window: tuple[int, int]) -> MultiSeries:
        return cls(y_max, z_window, {(ZERO_CLASS, 0): 1})

    @classmethod
    def term(cls, coeff: Coeff, klass: CurveClass, z_exp: int,
             y_max: int, z_window: tuple[int, int]) -> MultiSeries:
        return cls(y_max, z_window, {(klass, z_exp): coeff})

    @property
    def z_window(self) -> tuple[int, int]:
        return (self.z_lo, self.z_hi)

    def coeff(self, klass: CurveClass, z_exp: int) -> Fraction:
        return self._c.get((klass, z_exp), Fraction(0))

    def terms(self) -> Iterator[tuple[CurveClass, int, Fraction]]:
        """Terms sorted by (weight, a, z) for deterministic output."""
        def key(item: tuple[tuple[CurveClass, int], Fraction]):
            (cls, k), _ = item
            return (cls.weight, cls.a, k)
        for (cls, k), v in sorted(self._c.items(), key=key):
            yield cls, k, v

    def support_z_min(self) -> int | None:
        return min((k for (_, k) in self._c), default=None)

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiSeries):
            return NotImplemented
        return (self.y_max, self.z_lo, self.z_hi, self._c) == (
            other.y_max, other.z_lo, other.z_hi, other._c)

    __hash__ = None  # type: ignore[assignment]

    def _meet(self, other: MultiSeries) -> tuple[int, int, int]:
        if self.y_max != other.y_max:
            raise ValueError("series have different weight truncations")
        lo = max(self.z_lo, other.z_lo)
        hi = min(self.z_hi, other.z_hi)
        if lo > hi:
            raise ValueError("z-windows do not overlap")
        return self.y_max, lo, hi

    def __add__(self, other: MultiSeries) -> MultiSeries:
        y, lo, hi = self._meet(other)
        c = {k: v for k, v in self._c.items() if lo <= k[1] <= hi}
        for key, v in other._c.items():
            if lo <= key[1] <= hi:
                w = c.get(key, Fraction(0)) + v
                if w:
                    c[key] = w
                else:
                    c.pop(key, None)
        out = MultiSeries(y, (lo, hi))
        out._c = c
        return out

    def __neg__(self) -> MultiSeries:
        out = MultiSeries(self.y_max, (self.z_lo, self.z_hi))
        out._c = {k: -v for k, v in self._c.items()}
        return out

    def __sub__(self, other: MultiSeries) -> MultiSeries:
        return self + (-other)

    def scale(self, k: Coeff) -> MultiSeries:
        k = _frac(k)
        out = MultiSeries(self.y_max, (self.z_lo, self.z_hi))
        if k:
            out._c = {key: v * k for key, v in self._c.items()}
        return out

    def __mul__(self, other: MultiSeries | Coeff) -> MultiSeries:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self.mul(other)

    def __rmul__(self, other: Coeff) -> MultiSeries:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def mul(self, other: MultiSeries) -> MultiSeries:
        """Product, truncated to the shared weight bound and the window
        intersection.  Terms of the factors are bucketed by weight so
        that pairs exceeding the weight bound are never visited."""
        y, lo, hi = self._meet(other)
        buckets: list[list[tuple[CurveClass, int, Fraction]]] = [[] for _ in range(y + 1)]
        for (cls, k), v in other._c.items():
            buckets[cls.weight].append((cls, k, v))
        c: dict[tuple[CurveClass, int], Fraction] = {}
        for (cls1, k1), v1 in self._c.items():
            room = y - cls1.weight
            for w2 in range(room + 1):
                for cls2, k2, v2 in buckets[w2]:
                    k = k1 + k2
                    if k < lo or k > hi:
                        continue
                    key = (cls1 + cls2, k)
                    acc = c.get(key, Fraction(0)) + v1 * v2
                    if acc:
                        c[key] = acc
                    else:
                        c.pop(key, None)
        out = MultiSeries(y, (lo, hi))
        out._c = c
        return out

    def restrict(self, z_lo: int, z_hi: int) -> MultiSeries:
        """Narrow the z-window, discarding terms outside it."""
        if z_lo < self.z_lo or z_hi > self.z_hi:
            raise ValueError("restrict cannot widen the z-window")
        out = MultiSeries(self.y_max, (z_lo, z_hi))
        out._c = {k: v for k, v in self._c.items() if z_lo <= k[1] <= z_hi}
        return out

    def __str__(self) -> str:
        if not self._c:
            return "0"
        return " + ".join(f"{v}*y^({cls})*z^{k}" for cls, k, v in self.terms())


def exp(a: MultiSeries) -> MultiSeries:
    """exp of a series all of whose terms carry a nonzero curve class.

    The weight filtration makes a nilpotent mod truncation, so
    exp(a) = sum_{k <= y_max} a^k / k! is a finite sum.
    """
    for (cls, _k) in a._c:
        if cls.weight == 0:
            raise ValueError("exp needs every term to carry a nonzero curve class")
    out = MultiSeries.one(a.y_max, a.z_window)
    power = out
    for k in range(1, a.y_max + 1):
        power = power.mul(a).scale(Fraction(1, k))
        if power.is_zero():
            break
        out = out + power
    return out


def log(a: MultiSeries) -> MultiSeries:
    """log of a series with constant term 1 and no other weight-0 part.

    log(1 + b) = sum_{k <= y_max} (-1)^(k-1) b^k / k, finite for the
    same nilpotency reason as exp.
    """
    if a.coeff(ZERO_CLASS, 0) != 1:
        raise ValueError("log needs constant term 1")
    for (cls, k) in a._c:
        if cls.weight == 0 and (cls, k) != (ZERO_CLASS, 0):
            raise ValueError("log needs every non-constant term to carry a nonzero curve class")
    b = a - MultiSeries.one(a.y_max, a.z_window)
    out = MultiSeries.zero(a.y_max, a.z_window)
    power = MultiSeries.one(a.y_max, a.z_window)
    for k in range(1, a.y_max + 1):
        power = power.mul(b)
        if power.is_zero():
            break
        out = out + power.scale(Fraction((-1) ** (k - 1), k))
    return out


def _binomial(e: int, k: int) -> int:
    """C(e, k) for any integer e, integer-valued also for e < 0."""
    c = 1
    for i in range(1, k + 1):
        c = c * (e - i + 1) // i
    return c


def pow_binomial(base_class: CurveClass, z_exp: int, sign: int, exponent: int,
                 y_max: int, z_window: tuple[int, int]) -> MultiSeries:
    """(1 + sign * y^base_class * z^z_exp)^exponent, truncated.

    base_class must be effective (so powers climb the weight grading);
    sign is +1 or -1; exponent may be any integer.
    """
    if not base_class.is_effective():
        raise ValueError("base class must be effective and nonzero")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    coeffs: dict[tuple[CurveClass, int], Coeff] = {}
    z_lo, z_hi = z_window
    for k in range(y_max // base_class.weight + 1):
        z = k * z_exp
        if not (z_lo <= z <= z_hi):
            continue
        c = _binomial(exponent, k) * sign ** k
        if c:
            coeffs[(k * base_class, z)] = c
    return MultiSeries(y_max, z_window, coeffs)


class QZSeries:
    """Series in q with LaurentPoly coefficients, exact on [q_min, q_max]."""

    __slots__ = ("q_min", "q_max", "_rows")

    def __init__(self, q_min: int, q_max: int,
                 rows: Mapping[int, LaurentPoly] | None = None):
        if q_min > q_max:
            raise ValueError("q_min must not exceed q_max")
        self.q_min = q_min
        self.q_max = q_max
        r: dict[int, LaurentPoly] = {}
        if rows:
            for m, p in rows.items():
                if m < q_min or m > q_max:
                    raise ValueError(f"q-exponent {m} outside [{q_min}, {q_max}]")
                if not p.is_zero():
                    r[m] = p
        self._rows = r

    @classmethod
    def from_q_poly(cls, coeffs: Mapping[int, Coeff], q_max: int) -> QZSeries:
        """A z-free q-polynomial, exact to any order up to q_max."""
        rows = {m: LaurentPoly.const(v) for m, v in coeffs.items()}
        lo = min(coeffs) if coeffs else 0
        return cls(min(lo, 0), q_max, rows)

    def row(self, m: int) -> LaurentPoly:
        return self._rows.get(m, LaurentPoly.zero())

    def rows(self) -> list[tuple[int, LaurentPoly]]:
        return sorted(self._rows.items())

    def coeff(self, m: int, z_exp: int) -> Fraction:
        return self.row(m).coeff(z_exp)

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QZSeries):
            return NotImplemented
        return (self.q_min, self.q_max, self._rows) == (
            other.q_min, other.q_max, other._rows)

    __hash__ = None  # type: ignore[assignment]

    def truncate(self, q_max: int) -> QZSeries:
        if q_max > self.q_max:
            raise ValueError("truncate cannot raise q_max")
        return QZSeries(self.q_min, q_max,
                        {m: p for m, p in self._rows.items() if m <= q_max})

    def assert_z_width_bound(self) -> None:
        """Width of the q^m row is at most 2 (m - q_min).

        Holds for anything built from factors (1 - c z^j q^n)^e with
        |j| <= 1, n >= 1, and their inverses; a failed check means the
        series left that family.
        """
        for m, p in self._rows.items():
            if p.width() > 2 * (m - self.q_min):
                raise AssertionError(
                    f"q^{m} row has z-width {p.width()} > {2 * (m - self.q_min)}")


def qz_mul(a: QZSeries, b: QZSeries) -> QZSeries:
    """Product, exact on the q-range the factors jointly determine."""
    q_min = a.q_min + b.q_min
    q_max = min(a.q_max + b.q_min, b.q_max + a.q_min)
    if q_min > q_max:
        raise ValueError("product q-range is empty")
    rows: dict[int, LaurentPoly] = {}
    for m1, p1 in a._rows.items():
        for m2, p2 in b._rows.items():
            m = m1 + m2
            if m > q_max:
                continue
            prod = p1 * p2
            if m in rows:
                rows[m] = rows[m] + prod
            else:
                rows[m] = prod
    out = QZSeries(q_min, q_max)
    out._rows = {m: p for m, p in rows.items() if not p.is_zero()}
    return out


def qz_invert(a: QZSeries) -> QZSeries:
    """Inverse of a series whose lowest q-row is a single z-monomial.

    Writing a = c z^j q^v (1 + u) with u supported in q^{>= 1}, the
    inverse is computed by the convolution recurrence and is exact on
    [-v, a.q_max - 2 v].
    """
    v = a.q_min
    lead = a.row(v)
    if len(lead._c) != 1:
        raise ValueError("leading q-coefficient must be a single z-monomial")
    (j, c), = lead._c.items()
    lead_inv = LaurentPoly.monomial(Fraction(1, 1) / c, -j)
    q_max = a.q_max - 2 * v
    q_min = -v
    rows: dict[int, LaurentPoly] = {q_min: lead_inv}
    for m in range(q_min + 1, q_max + 1):
        # coefficient of q^{m+v} in a * result must vanish
        acc = LaurentPoly.zero()
        for k in range(1, m - q_min + 1):
            ak = a.row(v + k)
            if ak.is_zero():
                continue
            bk = rows.get(m - k)
            if bk is None:
                continue
            acc = acc + ak * bk
        rows[m] = (-acc) * lead_inv
    out = QZSeries(q_min, q_max)
    out._rows = {m: p for m, p in rows.items() if not p.is_zero()}
    return out
