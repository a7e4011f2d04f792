"""Curve classes and Mukai vectors on an elliptic K3 with a section.

The Picard lattice is Z s + Z f with Gram matrix [[-2, 1], [1, 0]]
(s a section, f a fiber).  A curve class a*s + b*f is stored as the
integer pair (a, b).  Mukai vectors (r, beta, n) live in
Z + Pic + Z with pairing

    <(r1, b1, n1), (r2, b2, n2)> = b1.b2 - r1*n2 - r2*n1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class CurveClass:
    """Class a*s + b*f in the Picard lattice of an elliptic K3."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise ValueError("curve class coordinates must be integers")

    @property
    def weight(self) -> int:
        """Total degree a + b, the grading used for series truncation."""
        return self.a + self.b

    def self_intersection(self) -> int:
        # (a s + b f)^2 = -2 a^2 + 2 a b
        return 2 * self.a * self.b - 2 * self.a * self.a

    def dot(self, other: CurveClass) -> int:
        return (
            self.a * other.b
            + other.a * self.b
            - 2 * self.a * other.a
        )

    def is_effective(self) -> bool:
        """Nonzero and in the cone spanned by s and f."""
        return self.a >= 0 and self.b >= 0 and (self.a, self.b) != (0, 0)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def divisibility(self) -> int:
        if self.is_zero():
            raise ValueError("divisibility of the zero class is undefined")
        return math.gcd(self.a, self.b)

    def __add__(self, other: CurveClass) -> CurveClass:
        return CurveClass(self.a + other.a, self.b + other.b)

    def __neg__(self) -> CurveClass:
        return CurveClass(-self.a, -self.b)

    def __rmul__(self, k: int) -> CurveClass:
        if not isinstance(k, int):
            return NotImplemented
        return CurveClass(k * self.a, k * self.b)

    def __str__(self) -> str:
        return f"{self.a},{self.b}"

    @classmethod
    def parse(cls, text: str) -> CurveClass:
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected 'a,b', got {text!r}")
        return cls(int(parts[0]), int(parts[1]))


ZERO_CLASS = CurveClass(0, 0)
SECTION = CurveClass(1, 0)
FIBER = CurveClass(0, 1)
# s + 2f squares to +2; its multiples realize the degree-2h-2 polarizations.
POLARIZATION = CurveClass(1, 2)


@dataclass(frozen=True)
class MukaiVector:
    """Triple (r, beta, n): rank, curve class, holomorphic Euler part."""

    r: int
    beta: CurveClass
    n: int

    def mukai_square(self) -> int:
        return self.beta.self_intersection() - 2 * self.r * self.n

    def is_zero(self) -> bool:
        return self.r == 0 and self.n == 0 and self.beta.is_zero()

    def divisibility(self) -> int:
        if self.is_zero():
            raise ValueError("divisibility of the zero vector is undefined")
        return math.gcd(math.gcd(self.r, self.n), math.gcd(self.beta.a, self.beta.b))

    def divide(self, k: int) -> MukaiVector:
        """Exact division by a positive integer dividing every coordinate."""
        if k <= 0 or self.is_zero() or self.divisibility() % k != 0:
            raise ValueError(f"{k} does not divide {self}")
        return MukaiVector(
            self.r // k, CurveClass(self.beta.a // k, self.beta.b // k), self.n // k
        )

    def __add__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.r + other.r, self.beta + other.beta, self.n + other.n)

    def __neg__(self) -> MukaiVector:
        return MukaiVector(-self.r, -self.beta, -self.n)

    def __rmul__(self, k: int) -> MukaiVector:
        if not isinstance(k, int):
            return NotImplemented
        return MukaiVector(k * self.r, k * self.beta, k * self.n)

    def __str__(self) -> str:
        return f"{self.r};{self.beta};{self.n}"

    @classmethod
    def parse(cls, text: str) -> MukaiVector:
        parts = text.split(";")
        if len(parts) != 3:
            raise ValueError(f"expected 'r;a,b;n', got {text!r}")
        return cls(int(parts[0]), CurveClass.parse(parts[1]), int(parts[2]))


def mukai_pairing(v: MukaiVector, w: MukaiVector) -> int:
    return v.beta.dot(w.beta) - v.r * w.n - w.r * v.n


class HodgeIsometry:
    """Integral isometry of the Mukai lattice, built from four generators.

    swap       (r, b, n) -> (n, b, r)
    sign_h2    (r, b, n) -> (r, -b, n)
    negate_rn  (r, b, n) -> (-r, b, -n)
    reflect(w) x -> x + <x, w> w   for a (-2)-vector w

    Compositions apply right to left, like function composition.
    """

    def __init__(self, kind: str, *, kernel: MukaiVector | None = None,
                 parts: tuple[HodgeIsometry, ...] = ()):
        if kind not in ("swap", "sign_h2", "negate_rn", "reflect", "compose"):
            raise ValueError(f"unknown isometry kind {kind!r}")
        if kind == "reflect":
            if kernel is None or mukai_pairing(kernel, kernel) != -2:
                raise ValueError("reflection kernel must have square -2")
        self.kind = kind
        self.kernel = kernel
        self.parts = parts

    @classmethod
    def swap(cls) -> HodgeIsometry:
        return cls("swap")

    @classmethod
    def sign_h2(cls) -> HodgeIsometry:
        return cls("sign_h2")

    @classmethod
    def negate_rn(cls) -> HodgeIsometry:
        return cls("negate_rn")

    @classmethod
    def reflect(cls, w: MukaiVector) -> HodgeIsometry:
        return cls("reflect", kernel=w)

    @classmethod
    def compose(cls, *parts: HodgeIsometry) -> HodgeIsometry:
        return cls("compose", parts=parts)

    def _image(self, v: MukaiVector) -> MukaiVector:
        if self.kind == "swap":
            return MukaiVector(v.n, v.beta, v.r)
        if self.kind == "sign_h2":
            return MukaiVector(v.r, -v.beta, v.n)
        if self.kind == "negate_rn":
            return MukaiVector(-v.r, v.beta, -v.n)
        if self.kind == "reflect":
            w = self.kernel
            return v + mukai_pairing(v, w) * w
        out = v
        for part in reversed(self.parts):
            out = part._image(out)
        return out

    def __call__(self, v: MukaiVector) -> MukaiVector:
        return apply_isometry(self, v)

    def __str__(self) -> str:
        if self.kind == "reflect":
            return f"reflect({self.kernel})"
        if self.kind == "compose":
            return " o ".join(str(p) for p in self.parts)
        return self.kind


def apply_isometry(g: HodgeIsometry, v: MukaiVector) -> MukaiVector:
    """Image g(v), with the pairing norm checked on the way out."""
    gv = g._image(v)
    assert mukai_pairing(gv, gv) == mukai_pairing(v, v), "isometry broke the pairing"
    return gv


def enumerate_effective(y_max: int) -> list[CurveClass]:
    """Effective classes of weight <= y_max, ordered by (weight, a)."""
    if y_max < 0:
        raise ValueError("y_max must be >= 0")
    out = []
    for w in range(1, y_max + 1):
        for a in range(w + 1):
            out.append(CurveClass(a, w - a))
    return out
