"""Stable-pair generating series of a local K3 and their BPS content.

Three builds of the same object, used as one another's oracles:

* pt_main: exponential form

      PT(y, z) = prod exp((n + 2r) J(r, beta, r + n) y^beta z^n)

  over effective beta, with n >= 0, r >= 0 on the z^n side and
  n > 0, r > 0 on the z^{-n} side.  The signed variant weights the
  exponent of the y^beta z^{+-n} factor by (-1)^(n-1).

* pt_borcherds: infinite-product form with integer exponents

      prod (1 - y^beta z^{+-n})^{-(n+2r) chi(Hilb^{beta^2/2 - r(n+r) + 1})}

  over the same index range; the signed variant is
  prod (1 + (-1)^(n-1) y^beta z^{+-n})^{+(n+2r) chi(...)}.

* pt_xbar: the series of the base change, indexed by
  S = {r n > 0} u {r = 0, n > 0} u {r > 0, n = 0} with orientation
  eps(r + n); it equals PT(y, z)^2.

bps_extract reads the genus decomposition of 1/Delta against the
kernel basis (z - 2 + 1/z)^g; gv_extract recovers the same table from
a PT series by stripping multiple covers classwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .invariants import N_from_J, conjectural_J, hilb_euler
from .lattice import CurveClass, MukaiVector, enumerate_effective
from .modular import inv_delta
from .series import KY_KERNEL, LaurentPoly, MultiSeries, QZSeries, exp, log, pow_binomial


class ConsistencyError(Exception):
    """An internal cross-check failed; offenders lists the bad entries."""

    def __init__(self, message: str, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)


@dataclass(frozen=True)
class PTParams:
    """Truncation parameters for the stable-pair series.

    Internally the z-window is padded by the largest accumulated
    negative shift max(beta^2 / 2) over retained classes, so that the
    reported window [-z_max, z_max] is exact.
    """

    y_max: int
    z_max: int
    signed: bool = False

    def __post_init__(self) -> None:
        if self.y_max < 0 or self.z_max < 0:
            raise ValueError("truncation parameters must be >= 0")

    @property
    def z_pad(self) -> int:
        squares = [b.self_intersection() // 2 for b in enumerate_effective(self.y_max)]
        return max([0] + squares)

    @property
    def work_window(self) -> tuple[int, int]:
        pad = self.z_pad
        return (-self.z_max - pad, self.z_max + pad)


def _eps(m: int) -> int:
    assert m != 0, "orientation weight hit r + n = 0"
    return 1 if m > 0 else -1


def _assert_integral(series: MultiSeries, label: str) -> None:
    bad = [(cls, k, v) for cls, k, v in series.terms() if v.denominator != 1]
    if bad:
        raise ConsistencyError(f"{label} produced non-integer coefficients", bad)


def _signed_weight(n: int) -> int:
    # (-1)^(n-1) for the z^{+-n} factor, n = |z-exponent|
    return -1 if n % 2 == 0 else 1


def pt_main(params: PTParams) -> MultiSeries:
    """Exponential form of the stable-pair series.

    Factors with r >= 1 only occur while r (r + n) <= beta^2/2 + k^2
    for some divisor k of the vector, so each class contributes
    finitely many of them; the r = 0 tails are cut at the padded
    window.
    """
    lo, hi = params.work_window
    arg: dict[tuple[CurveClass, int], Fraction] = {}
    for beta in enumerate_effective(params.y_max):
        bsq = beta.self_intersection()
        g = beta.divisibility()
        bound = bsq // 2 + g * g
        rmax = math.isqrt(bound) if bound >= 0 else 0
        for n in range(hi + 1):
            for r in range(rmax + 1):
                weight = n + 2 * r
                if weight == 0:
                    continue
                jval = conjectural_J(MukaiVector(r, beta, r + n))
                if not jval:
                    continue
                c = weight * jval
                if params.signed:
                    c *= _signed_weight(n)
                key = (beta, n)
                arg[key] = arg.get(key, Fraction(0)) + c
        for r in range(1, rmax + 1):
            n = 1
            while r * (r + n) <= bound and -n >= lo:
                jval = conjectural_J(MukaiVector(r, beta, r + n))
                if jval:
                    c = (n + 2 * r) * jval
                    if params.signed:
                        c *= _signed_weight(n)
                    key = (beta, -n)
                    arg[key] = arg.get(key, Fraction(0)) + c
                n += 1
    series = exp(MultiSeries(params.y_max, (lo, hi), arg))
    # only the reported window is exact; the padding strip absorbs the
    # tails of the cut factors and is discarded before the check
    out = series.restrict(-params.z_max, params.z_max)
    _assert_integral(out, "pt_main")
    return out


def pt_borcherds(params: PTParams) -> MultiSeries:
    """Product form of the stable-pair series, one binomial factor per
    (beta, r, n) with nonzero exponent (n + 2r) chi(Hilb^{beta^2/2 - r(n+r) + 1})."""
    lo, hi = params.work_window
    window = (lo, hi)
    out = MultiSeries.one(params.y_max, window)
    for beta in enumerate_effective(params.y_max):
        cap = beta.self_intersection() // 2 + 1
        if cap < 0:
            continue
        factors: list[tuple[int, int, int]] = []  # (z_exp, r, n)
        for n in range(1, hi + 1):
            factors.append((n, 0, n))
        rmax = math.isqrt(cap)
        for r in range(1, rmax + 1):
            n = 0
            while r * (n + r) <= cap and n <= hi:
                factors.append((n, r, n))
                n += 1
            n = 1
            while r * (n + r) <= cap and -n >= lo:
                factors.append((-n, r, n))
                n += 1
        for z_exp, r, n in factors:
            e = (n + 2 * r) * hilb_euler(cap - r * (n + r))
            if not e:
                continue
            if params.signed:
                factor = pow_binomial(beta, z_exp, _signed_weight(n), e,
                                      params.y_max, window)
            else:
                factor = pow_binomial(beta, z_exp, -1, -e, params.y_max, window)
            out = out.mul(factor)
    out = out.restrict(-params.z_max, params.z_max)
    _assert_integral(out, "pt_borcherds")
    return out


def pt_xbar(params: PTParams) -> MultiSeries:
    """Series of the base change, which squares the one-copy series:

        prod_{beta, (r, n) in S} exp((n + 2r) N(r, beta, n) y^beta z^n)^{eps(r+n)}

    with S = {rn > 0} u {r = 0, n > 0} u {r > 0, n = 0}.  The index
    set never meets r + n = 0, so eps is evaluated under an assert
    instead of a branch."""
    if params.signed:
        raise ValueError("the base-change series has no signed variant")
    lo, hi = params.work_window
    arg: dict[tuple[CurveClass, int], Fraction] = {}

    def add(beta: CurveClass, r: int, n: int) -> None:
        val = N_from_J(r, beta, n)
        if not val:
            return
        c = _eps(r + n) * (n + 2 * r) * val
        key = (beta, n)
        arg[key] = arg.get(key, Fraction(0)) + c

    for beta in enumerate_effective(params.y_max):
        bsq = beta.self_intersection()
        g = beta.divisibility()
        bound = bsq // 2 + g * g
        rmax = math.isqrt(bound) if bound >= 0 else 0
        for n in range(1, hi + 1):  # r = 0, n > 0
            add(beta, 0, n)
        for r in range(1, rmax + 1):  # r > 0, n = 0
            if r * r <= bound:
                add(beta, r, 0)
        for r in range(1, rmax + 1):  # r n > 0, both signs
            n = 1
            while r * (r + n) <= bound:
                if n <= hi:
                    add(beta, r, n)
                if -n >= lo:
                    add(beta, -r, -n)
                n += 1
    series = exp(MultiSeries(params.y_max, (lo, hi), arg))
    out = series.restrict(-params.z_max, params.z_max)
    _assert_integral(out, "pt_xbar")
    return out


def ky_pairs_euler(h: int, n: int) -> int:
    """chi of the space of stable pairs with n points on curves of
    arithmetic genus h, as a finite sum of Hilbert scheme terms:

        n >= 0:  sum_{r >= 0} (n + 2r) chi(Hilb^{h - r(r+n)})
        n < 0:   sum_{r >= 1} (|n| + 2r) chi(Hilb^{h - r(r+|n|)})

    Vanishes automatically for n < 1 - h."""
    if h < 0:
        raise ValueError("h must be >= 0")
    m = abs(n)
    r0 = 0 if n >= 0 else 1
    total = 0
    for r in range(r0, math.isqrt(h) + 1):
        chi = hilb_euler(h - r * (r + m))
        if chi:
            total += (m + 2 * r) * chi
    return total


def ky_identity_check(q_max: int, z_window: int,
                      pairs: Callable[[int, int], int] = ky_pairs_euler) -> list:
    """Compare sum_{h, n} chi(P_n, h) z^n q^{h-1} against 1/Delta.

    The stable-pairs side is multiplied by the kernel z - 2 + 1/z, so
    both sides are Laurent polynomials rowwise.  Rows are compared on
    |z-exponent| <= z_window - 1, the part the window determines.
    Returns the list of mismatches (q_exp, z_exp, left, right)."""
    if q_max < -1:
        raise ValueError("q_max must be >= -1")
    if z_window < 1:
        raise ValueError("z_window too small to determine any coefficient")
    rhs = inv_delta(q_max)
    mismatches = []
    for m in range(-1, q_max + 1):
        h = m + 1
        row = LaurentPoly({n: pairs(h, n) for n in range(-z_window, z_window + 1)})
        prod = row * KY_KERNEL
        for j in range(-(z_window - 1), z_window):
            left = prod.coeff(j)
            right = rhs.coeff(m, j)
            if left != right:
                mismatches.append((m, j, left, right))
    return mismatches


@dataclass(frozen=True, eq=True)
class BPSTable:
    """Genus-h table of BPS counts; absent entries are zero."""

    entries: dict
    computed_h: frozenset

    def get(self, g: int, h: int) -> Fraction:
        return self.entries.get((g, h), Fraction(0))

    def mismatches_on_overlap(self, other: BPSTable) -> list:
        """Entry-by-entry differences over the h both tables computed."""
        out = []
        for h in sorted(self.computed_h & other.computed_h):
            gs = {g for (g, hh) in self.entries if hh == h}
            gs |= {g for (g, hh) in other.entries if hh == h}
            for g in sorted(gs):
                a, b = self.get(g, h), other.get(g, h)
                if a != b:
                    out.append((g, h, a, b))
        return out


_kernel_powers = [LaurentPoly.const(1)]


def _kernel_power(g: int) -> LaurentPoly:
    while len(_kernel_powers) <= g:
        _kernel_powers.append(_kernel_powers[-1] * KY_KERNEL)
    return _kernel_powers[g]


def _kernel_decompose(p: LaurentPoly) -> dict[int, Fraction]:
    """Write a palindromic Laurent polynomial as sum c_g (z - 2 + 1/z)^g.

    The g-th basis element has top term z^g with coefficient 1, so
    elimination from the top degree down is triangular and exact."""
    if not p.is_palindromic():
        raise ValueError("polynomial is not palindromic in z")
    out: dict[int, Fraction] = {}
    work = p
    while not work.is_zero():
        d = work.max_exp()
        c = work.coeff(d)
        out[d] = c
        work = work - _kernel_power(d) * c
    return out


def bps_extract(source: QZSeries, q_max: int) -> BPSTable:
    """BPS table of a series in the 1/Delta family: the q^{h-1} row
    equals sum_g (-1)^g r_{g,h} (z - 2 + 1/z)^g, solved triangularly."""
    if source.q_min < -1:
        raise ValueError("source must start at q^{-1} or later")
    if q_max > source.q_max:
        raise ValueError("q_max exceeds the exact range of the source")
    entries: dict = {}
    hs = set()
    for m in range(source.q_min, q_max + 1):
        h = m + 1
        hs.add(h)
        for g, c in _kernel_decompose(source.row(m)).items():
            entries[(g, h)] = c if g % 2 == 0 else -c
    return BPSTable(entries, frozenset(hs))


def _strip_covers(rows: dict, beta: CurveClass, f: dict,
                  z_lo: int, z_hi: int) -> dict[int, Fraction]:
    """f_beta = (log PT row at beta) - sum_{m >= 2, m | beta} (1/m) f_{beta/m}(z^m)."""
    fb = dict(rows.get(beta, {}))
    for mlt in range(2, beta.divisibility() + 1):
        if beta.divisibility() % mlt:
            continue
        sub = CurveClass(beta.a // mlt, beta.b // mlt)
        for j, c in f[sub].items():
            jj = j * mlt
            if z_lo <= jj <= z_hi:
                fb[jj] = fb.get(jj, Fraction(0)) - Fraction(c, 1) / mlt
    return {j: c for j, c in fb.items() if c}


def gv_extract(pt: MultiSeries, signed: bool = False) -> BPSTable:
    """Recover the genus table from a stable-pair series.

    Per class, in increasing weight: strip multiple covers from the
    logarithm, multiply by the kernel z - 2 + 1/z, and decompose the
    result in the basis (z - 2 + 1/z)^g.  The row of a class beta must
    be supported in |z-exponent| <= beta^2/2 + 1 and may depend on beta
    only through beta^2; violations raise ConsistencyError.

    The signed series with the same table is the z -> -z inverse of
    the unsigned one, so the signed case negates the logarithm and
    flips the sign of odd z-rows before running the same machinery.

    Coefficients of the logarithm above
    z_hi - (y_max - 1) * (negative depth of pt) can be polluted by the
    window truncation and are not trusted."""
    lseries = log(pt)
    rows: dict[CurveClass, dict[int, Fraction]] = {}
    for cls, k, v in lseries.terms():
        if signed:
            v = v if k % 2 else -v
        rows.setdefault(cls, {})[k] = v
    floor = pt.support_z_min()
    depth = max(0, -floor) if floor is not None else 0
    trust_hi = pt.z_hi - max(0, pt.y_max - 1) * depth
    w = min(trust_hi, -pt.z_lo) - 1
    if w < 0:
        raise ValueError("z-window too small to determine any genus entry")
    entries: dict = {}
    hs = set()
    reference: dict[int, tuple[CurveClass, dict[int, Fraction]]] = {}
    f: dict[CurveClass, dict[int, Fraction]] = {}
    for beta in enumerate_effective(pt.y_max):
        fb = _strip_covers(rows, beta, f, pt.z_lo, pt.z_hi)
        f[beta] = fb
        row = LaurentPoly(fb) * KY_KERNEL
        h = beta.self_intersection() // 2 + 1
        if h > w:
            raise ValueError(f"z-window too small for class {beta} (needs {h}, has {w})")
        lim = max(h, -1)
        offenders = [(beta, j, row.coeff(j)) for j in range(-w, w + 1)
                     if abs(j) > lim and row.coeff(j)]
        if offenders:
            raise ConsistencyError(
                f"class {beta} has support beyond |z^{lim}|", offenders)
        if h < 0:
            continue
        restricted = LaurentPoly({j: row.coeff(j) for j in range(-h, h + 1)})
        try:
            decomposition = _kernel_decompose(restricted)
        except ValueError as err:
            raise ConsistencyError(f"class {beta}: {err}",
                                   [(beta, j, c) for j, c in restricted.items()])
        rvec = {g: (c if g % 2 == 0 else -c) for g, c in decomposition.items()}
        if h in reference:
            prev_beta, prev = reference[h]
            if prev != rvec:
                raise ConsistencyError(
                    f"classes {prev_beta} and {beta} share beta^2 = {2 * h - 2} "
                    "but extract different tables",
                    [(beta, g, rvec.get(g), prev.get(g))
                     for g in set(prev) | set(rvec) if prev.get(g) != rvec.get(g)])
        else:
            reference[h] = (beta, rvec)
            hs.add(h)
            for g, val in rvec.items():
                entries[(g, h)] = val
    return BPSTable(entries, frozenset(hs))
