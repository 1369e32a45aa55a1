"""Truncated unramified Rankin-Selberg zeta integrals.

The non-compact integrals reduce, by the Iwasawa decomposition and the
standard measure choices, to sums over dominant cocharacter lattices of
unramified Whittaker values; those are Schur polynomials in the Satake
parameters times an explicit q-power (the half-density factor).

Normalization: Satake parameters are the Frobenius eigenvalues of the
N = 0 representation in the rational normalization; the honest Whittaker
function of the corresponding representation therefore carries the extra
twist q^{-(n-1)/2} on each parameter.  The measure constant per n is
calibrated once against the elementary n = 1 computation (where the
maximal compact has volume one) and frozen: with these choices the
certified product L^{-1} * I is identically 1 for unramified-normalized
data, which the tests then verify at many parameters.

Sum shifts are indexed by m in (1 - n1*n2)/2 + Z as in the defining
integrals; the matching inverse L-factor is the tensor one with
T -> q^{-(m + (n1+n2)/2 - 1)} T, the chi_T-twist at which the rational
tensor factor sits for the honest integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Scalar, Coef, PolyT, TruncSeriesT, DomainError
from .factors import l_inverse, gamma
from .wd import WDRep, sp, tensor


@dataclass(frozen=True)
class SatakeData:
    """Frobenius eigenvalues of the unramified (N = 0) representation."""

    params: tuple[Scalar, ...]

    def __post_init__(self):
        ps = tuple(p if isinstance(p, Scalar) else Scalar.from_rational(p)
                   for p in self.params)
        for p in ps:
            if p.is_zero() or p.has_opaque():
                raise ValueError("Satake parameters must be invertible and "
                                 "opaque-free")
        object.__setattr__(self, "params", ps)

    @property
    def n(self) -> int:
        return len(self.params)

    def rep(self) -> WDRep:
        return WDRep([sp(p, 1) for p in self.params])

    def dual(self) -> "SatakeData":
        """Parameters of the contragredient pi(r^*(1-n))."""
        n = self.n
        return SatakeData(tuple(p.inverse() * Scalar.qpow(2 * (n - 1))
                                for p in self.params))

    def unitary_twisted(self) -> "SatakeData":
        """Parameters alpha * q^{-(n-1)/2} of the honest Whittaker model."""
        tw = Scalar.qpow(-(self.n - 1))
        return SatakeData(tuple(p * tw for p in self.params))


def _delta_half_qexp2(lam, n) -> int:
    """Doubled exponent of the half-density delta_B^{1/2} at the
    cocharacter lam: q^{-(1/2) sum_i lam_i (n + 1 - 2i)}."""
    return -sum(l * (n + 1 - 2 * (i + 1)) for i, l in enumerate(lam))


def homogeneous_table(params, maxdeg: int) -> list[Coef]:
    """h_0..h_maxdeg of the complete homogeneous symmetric polynomials,
    via the Newton-style recurrence against the elementary ones."""
    n = len(params)
    e = [Coef.one()]
    prev = [Coef.one()]
    for p in params:
        cur = [Coef.one()]
        pc = Coef.from_scalar(p)
        for i in range(1, len(prev) + 1):
            t = prev[i] if i < len(prev) else Coef.zero()
            cur.append(t + prev[i - 1] * pc)
        prev = cur
    e = prev  # e[i] = elementary symmetric i
    h = [Coef.one()]
    for j in range(1, maxdeg + 1):
        acc = Coef.zero()
        for i in range(1, min(j, n) + 1):
            term = e[i] * h[j - i]
            acc = acc + (term if i % 2 == 1 else -term)
        h.append(acc)
    return h


def schur_from_table(h: list[Coef], lam, n: int) -> Coef:
    """Jacobi-Trudi determinant det(h_{lam_i - i + j})_{1<=i,j<=n}."""
    lam = tuple(lam) + (0,) * (n - len(lam))

    def hh(k):
        if k < 0:
            return Coef.zero()
        if k >= len(h):
            raise IndexError("homogeneous table too short")
        return h[k]

    import itertools
    out = Coef.zero()
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        term = Coef.one()
        for i in range(n):
            term = term * hh(lam[i] - (i + 1) + (perm[i] + 1))
            if term.is_zero():
                break
        out = out + (term if sign > 0 else -term)
    return out


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def whittaker_value(d: SatakeData, lam) -> Coef:
    """Value of the normalized unramified Whittaker function at the torus
    cocharacter lam: delta_B^{1/2} times the Schur polynomial s_lam of the
    given parameters; zero off the dominant cone."""
    lam = tuple(lam)
    if len(lam) != d.n:
        raise ValueError("cocharacter length must equal n")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        return Coef.zero()
    shift = lam[-1] if lam and lam[-1] < 0 else 0
    base = tuple(l - shift for l in lam)
    h = homogeneous_table(d.params, (base[0] if base else 0) + d.n)
    s = schur_from_table(h, base, d.n)
    if shift:
        det = Coef.one()
        for p in d.params:
            det = det * Coef.from_scalar(p)
        for _ in range(-shift):
            s = _coef_div_exact(s, det)
    delta = Scalar.qpow(_delta_half_qexp2(lam, d.n))
    return s.mul_scalar(delta)


def _coef_div_exact(a: Coef, b: Coef) -> Coef:
    from .exact import _coef_div
    out = _coef_div(a, b)
    if out is None:
        raise DomainError("inexact coefficient division")
    return out


@dataclass(frozen=True)
class ZetaResult:
    series: TruncSeriesT
    l_inv: PolyT
    product: TruncSeriesT
    certified_degree: int
    certified: bool

    def product_is_one(self) -> bool:
        if not self.certified:
            return False
        if not self.product.coeff(0).is_one():
            return False
        return all(self.product.coeff(j).is_zero()
                   for j in range(1, self.product.bound + 1))

    def render(self):
        return {"series": self.series.render(),
                "L_inverse": self.l_inv.render(),
                "product": self.product.render(),
                "certified_degree": self.certified_degree,
                "certified": self.certified}


class UncertifiedTruncation(ValueError):
    """The truncation bound is too small to certify polynomiality."""


def _finish(series: TruncSeriesT, l_inv_poly: PolyT, strict: bool) -> ZetaResult:
    product = series.mul_poly(l_inv_poly)
    deg = l_inv_poly.degree()
    deg = deg if isinstance(deg, int) else 0
    certified = product.bound > deg and all(
        product.coeff(j).is_zero() for j in range(deg + 1, product.bound + 1))
    if strict and not certified:
        raise UncertifiedTruncation(
            f"nonzero product tail beyond degree {deg} within the window")
    return ZetaResult(series, l_inv_poly, product, product.bound, certified)


def _check_lattice(m: Fraction, n1: int, n2: int):
    m = Fraction(m)
    if (m - Fraction(1 - n1 * n2, 2)).denominator not in (1, 2):
        raise ValueError("shift m must be a half-integer")
    return m


def zeta_gl_n_gl1(d: SatakeData, m, bound: int, strict: bool = False) -> ZetaResult:
    """Sum over the valuation-j cosets of the embedded GL1 torus against
    the trivial GL1 datum: the j-th coefficient is the Whittaker value at
    (j, 0, ..., 0) times q^{-j(m + (1-n)/2)}."""
    m = _check_lattice(m, d.n, 1)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    n = d.n
    dt = d.unitary_twisted()
    h = homogeneous_table(dt.params, bound + n)
    coeffs = {}
    for j in range(0, bound + 1):
        lam = (j,) + (0,) * (n - 1)
        w = h[j].mul_scalar(Scalar.qpow(_delta_half_qexp2(lam, n)))
        factor_qexp2 = -j * (2 * m + 1 - n)
        if Fraction(factor_qexp2).denominator != 1:
            raise ValueError("shift off the half-integer lattice")
        c = w.mul_scalar(Scalar.qpow(int(factor_qexp2)))
        if not c.is_zero():
            coeffs[j] = c
    series = TruncSeriesT(0, bound, coeffs)
    shift2 = int(2 * m + n - 1)
    l_inv = l_inverse(d.rep()).shift(-shift2)
    return _finish(series, l_inv.poly, strict)


def zeta_gl_n_gl_n(d1: SatakeData, d2: SatakeData, m, bound: int,
                   strict: bool = False) -> ZetaResult:
    """GLn x GLn integral with the standard Schwartz function 1_{O^n}
    (which truncates the last torus coordinate to be >= 0): torus sum of
    products of Whittaker values against the inverse measure density."""
    if d1.n != d2.n:
        raise ValueError("equal ranks required")
    m = _check_lattice(m, d1.n, d2.n)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    n = d1.n
    t1, t2 = d1.unitary_twisted(), d2.unitary_twisted()
    h1 = homogeneous_table(t1.params, bound + n)
    h2 = homogeneous_table(t2.params, bound + n)
    coeffs: dict[int, Coef] = {}
    for lam in _dominant_nonneg(n, bound):
        j = sum(lam)
        s1 = schur_from_table(h1, lam, n)
        if s1.is_zero():
            continue
        s2 = schur_from_table(h2, lam, n)
        if s2.is_zero():
            continue
        # W1 * W2 * delta^{-1} = s_lam(t1) * s_lam(t2): half-densities cancel
        term = s1 * s2
        factor_qexp2 = -j * 2 * m
        if Fraction(factor_qexp2).denominator != 1:
            raise ValueError("shift off the half-integer lattice")
        term = term.mul_scalar(Scalar.qpow(int(factor_qexp2)))
        acc = coeffs.get(j, Coef.zero()) + term
        if acc.is_zero():
            coeffs.pop(j, None)
        else:
            coeffs[j] = acc
    series = TruncSeriesT(0, bound, coeffs)
    shift2 = int(2 * m + 2 * n - 2)
    l_inv = l_inverse(tensor(d1.rep(), d2.rep())).shift(-shift2)
    return _finish(series, l_inv.poly, strict)


def _dominant_nonneg(n: int, total_bound: int):
    """Dominant lam in Z^n with lam_n >= 0 and |lam| <= total_bound."""

    def rec(prefix, remaining, cap):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        slots = n - len(prefix)
        for v in range(min(remaining, cap), -1, -1):
            if v * slots < 0:
                continue
            yield from rec(prefix + [v], remaining - v, v)

    yield from rec([], total_bound, total_bound)


def invariant_pairing_check(d: SatakeData, bound: int) -> bool:
    """vol(K_n)^{-1} L^{-1}(1, V x V-dual) I(W, W-dual, Phi, 1) = 1 for
    normalized unramified data, with any Phi of unit mass (1_{O^n} here);
    verified as the certified product being identically 1."""
    if bound < 20:
        raise ValueError("bound >= 20 required for a meaningful certificate")
    res = zeta_gl_n_gl_n(d, d.dual(), Fraction(1), bound, strict=True)
    return res.product_is_one()


def gl2_gamma_functional_equation_check(d: SatakeData, bound: int) -> bool:
    """Functional equation against the GL1 trivial datum: the dual-side
    integral at the shifted lattice point equals gamma times the primal
    integral, coefficientwise through the certified window.

    The two lattice points are (1-n)/2 and (1-n)/2 + n: the rational
    normalization's translation of the defining equation's 0 and 1.
    """
    n = d.n
    m0 = Fraction(1 - n, 2)
    m1 = m0 + n
    s0 = zeta_gl_n_gl1(d, m0, bound)
    s1 = zeta_gl_n_gl1(d.dual(), m1, bound)
    rf, unit = gamma(d.rep())
    if not unit.is_one():
        raise DomainError("unramified gamma must have trivial unit")
    lhs = s1.series.mul_poly(rf.den)
    rhs = s0.series.mul_poly(rf.num)
    return lhs.eq_window(rhs)
