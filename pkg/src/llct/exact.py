"""Exact coefficient arithmetic.

Values live in the ring generated over Q by

  * roots of unity zeta(a,N)  (kept formal: the unit group, not the
    cyclotomic field -- equality is equality of reduced labels),
  * user-declared opaque unit symbols (a free abelian group),
  * a formal square root q^(1/2) of the residue cardinality q,
  * the family parameter x (Laurent polynomials).

Integer powers of q and the sign zeta(1,2) = -1 are folded into the
rational coefficients, so every element has a unique normal form.

Four layers:
  Scalar       -- a single unit times q^(h/2) times a Laurent poly in x;
                  closed under multiplication, inverted when the x-part
                  is a monomial.
  Coef         -- finite Q-linear combinations of unit monomials; the
                  coefficient ring for polynomials in T.
  PolyT        -- polynomials in the zeta variable T over Coef.
  RatFuncT     -- normalized fractions of PolyT.
  TruncSeriesT -- Laurent series in T truncated at a tracked bound.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .session import get_q, q_pow

Q0 = Fraction(0)
Q1 = Fraction(1)

TRIVIAL_ROOT = (0, 1)


class DomainError(ValueError):
    """Operation left the supported domain (opaque unit, non-invertible...)."""


def _norm_root(a: int, n: int) -> tuple[tuple[int, int], int]:
    """Reduce zeta_n^a to the canonical section a'/n' in [0, 1/2) of the
    root-of-unity group, with the -1 component returned as a sign."""
    if n <= 0:
        raise ValueError("root-of-unity order must be positive")
    a %= n
    g = gcd(a, n)
    if g:
        a, n = a // g, n // g
    if a == 0:
        return TRIVIAL_ROOT, 1
    if 2 * a >= n:
        # zeta_n^a = -zeta of (a/n - 1/2)
        r, s = _norm_root(2 * a - n, 2 * n)
        return r, -s
    return (a, n), 1


def _mul_roots(r1, r2) -> tuple[tuple[int, int], int]:
    (a1, n1), (a2, n2) = r1, r2
    n = n1 * n2 // gcd(n1, n2)
    return _norm_root(a1 * (n // n1) + a2 * (n // n2), n)


def _mul_opaques(o1, o2):
    d = dict(o1)
    for sym, e in o2:
        d[sym] = d.get(sym, 0) + e
        if d[sym] == 0:
            del d[sym]
    return tuple(sorted(d.items()))


class Scalar:
    """unit * q^(qh/2) * (Laurent polynomial in x), in normal form.

    qh is 0 or 1: even powers of q are folded into the coefficients.
    The zero scalar is the one with empty xpoly.
    """

    __slots__ = ("root", "opaques", "qh", "xpoly")

    def __init__(self, root=TRIVIAL_ROOT, opaques=(), qh=0, xpoly=None):
        self.root = root
        self.opaques = opaques
        self.qh = qh
        self.xpoly = {} if xpoly is None else xpoly

    # -- construction -----------------------------------------------------

    @staticmethod
    def make(coeff=1, qexp2: int = 0, xexp: int = 0, root=TRIVIAL_ROOT, opaques=()):
        """coeff * zeta(root) * q^(qexp2/2) * x^xexp, normalized."""
        c = Fraction(coeff)
        root, sign = _norm_root(*root)
        c *= sign
        if c == 0:
            return Scalar()
        c *= q_pow(qexp2 // 2)  # qexp2 = 2*(qexp2//2) + (qexp2 % 2)
        qh = qexp2 % 2
        return Scalar(root, tuple(sorted(opaques)), qh, {xexp: c})

    @staticmethod
    def zero():
        return Scalar()

    @staticmethod
    def one():
        return Scalar.make(1)

    @staticmethod
    def from_rational(c):
        return Scalar.make(Fraction(c))

    @staticmethod
    def qpow(qexp2: int):
        """q^(qexp2/2)."""
        return Scalar.make(1, qexp2=qexp2)

    @staticmethod
    def x_power(k: int = 1, coeff=1):
        return Scalar.make(coeff, xexp=k)

    @staticmethod
    def from_xpoly(xpoly: dict):
        xp = {k: Fraction(c) for k, c in xpoly.items() if c != 0}
        return Scalar(TRIVIAL_ROOT, (), 0, xp)

    @staticmethod
    def opaque(symbol: str, exp: int = 1):
        return Scalar.make(1, opaques=((symbol, exp),))

    @staticmethod
    def root_of_unity(a: int, n: int):
        return Scalar.make(1, root=(a, n))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.xpoly

    def is_one(self) -> bool:
        return (self.root == TRIVIAL_ROOT and not self.opaques and self.qh == 0
                and self.xpoly == {0: Q1})

    def is_monomial(self) -> bool:
        return len(self.xpoly) == 1

    def has_opaque(self) -> bool:
        return bool(self.opaques)

    def is_rational(self) -> bool:
        """A plain rational number (no unit, no q^(1/2), no x)."""
        return (self.root == TRIVIAL_ROOT and not self.opaques and self.qh == 0
                and (not self.xpoly or set(self.xpoly) == {0}))

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise DomainError(f"not a rational scalar: {self}")
        return self.xpoly.get(0, Q0)

    # -- normal form / ordering ---------------------------------------------

    def key(self):
        return (self.root, self.opaques, self.qh,
                tuple(sorted(self.xpoly.items())))

    def sort_key(self):
        r = (Fraction(self.root[0], self.root[1]), self.opaques, self.qh,
             tuple(sorted(self.xpoly.items())))
        return r

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    # -- arithmetic ----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_rational(other)
        if self.is_zero() or other.is_zero():
            return Scalar()
        root, sign = _mul_roots(self.root, other.root)
        qh = self.qh + other.qh
        extra = Q1
        if qh >= 2:
            qh -= 2
            extra = q_pow(1)
        extra *= sign
        xp: dict[int, Fraction] = {}
        for k1, c1 in self.xpoly.items():
            for k2, c2 in other.xpoly.items():
                k = k1 + k2
                v = xp.get(k, Q0) + c1 * c2 * extra
                if v == 0:
                    xp.pop(k, None)
                else:
                    xp[k] = v
        if not xp:
            return Scalar()
        return Scalar(root, _mul_opaques(self.opaques, other.opaques), qh, xp)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.root, self.opaques, self.qh,
                      {k: -c for k, c in self.xpoly.items()})

    def inverse(self):
        if self.is_zero():
            raise DomainError("inverse of zero scalar")
        if not self.is_monomial():
            raise DomainError("scalar inverse needs a monomial x-part")
        (k, c), = self.xpoly.items()
        a, n = self.root
        root, sign = _norm_root(-a, n)
        opa = tuple(sorted((s, -e) for s, e in self.opaques))
        inv = Fraction(1) / c * sign
        if self.qh:
            # 1/q^(1/2) = q^(1/2)/q
            inv /= q_pow(1)
        return Scalar(root, opa, self.qh, {-k: inv})

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = Scalar.one()
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def specialize_x(self, a) -> "Scalar":
        """Substitute x -> a (a rational)."""
        a = Fraction(a)
        v = Q0
        for k, c in self.xpoly.items():
            if k < 0 and a == 0:
                raise DomainError("specializing x -> 0 in a Laurent pole")
            v += c * (a ** k if k >= 0 else Fraction(1) / (a ** (-k)))
        if v == 0:
            return Scalar()
        return Scalar(self.root, self.opaques, self.qh, {0: v})

    def involves_x(self) -> bool:
        return any(k != 0 for k in self.xpoly)

    def q_weight(self):
        """w with |self| = q^(w/2), if the scalar is +-q^(e/2); else None."""
        if self.has_opaque() or self.involves_x() or self.is_zero():
            return None
        c = abs(self.xpoly[0])
        q = get_q()
        e = 0
        num, den = c.numerator, c.denominator
        while num % q == 0 and den == 1:
            num //= q
            e += 1
        while den % q == 0 and num == 1:
            den //= q
            e -= 1
        if num == 1 and den == 1:
            return 2 * e + self.qh
        return None

    # -- rendering -----------------------------------------------------------

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        xp = _render_xpoly(self.xpoly)
        if xp != "1":
            parts.append(xp)
        a, n = self.root
        if n != 1:
            parts.append(f"zeta({a},{n})")
        for sym, e in self.opaques:
            parts.append(sym if e == 1 else f"{sym}^{e}")
        if self.qh:
            parts.append("q^(1/2)")
        if not parts:
            return "1"
        return "*".join(parts)

    def __repr__(self):
        return f"Scalar({self.render()})"


def _render_xterm(k: int, c: Fraction) -> str:
    if k == 0:
        return str(c)
    xs = "x" if k == 1 else f"x^{k}"
    if c == 1:
        return xs
    if c == -1:
        return f"-{xs}"
    return f"{c}*{xs}"


def _render_xpoly(xp: dict) -> str:
    if not xp:
        return "0"
    terms = [_render_xterm(k, c) for k, c in sorted(xp.items())]
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    if len(terms) > 1:
        out = f"({out})"
    return out


# ---------------------------------------------------------------------------
# Coef: linear combinations of unit monomials (coefficient ring for PolyT)
# ---------------------------------------------------------------------------

UnitKey = tuple  # (root, opaques, qh, xexp)


class Coef:
    """Finite Q-linear combination of unit monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[UnitKey, Fraction] = terms or {}

    @staticmethod
    def zero():
        return Coef()

    @staticmethod
    def one():
        return Coef({(TRIVIAL_ROOT, (), 0, 0): Q1})

    @staticmethod
    def from_rational(c):
        c = Fraction(c)
        return Coef({(TRIVIAL_ROOT, (), 0, 0): c} if c else {})

    @staticmethod
    def from_scalar(s: Scalar):
        return Coef({(s.root, s.opaques, s.qh, k): c for k, c in s.xpoly.items()})

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {(TRIVIAL_ROOT, (), 0, 0): Q1}

    def __eq__(self, other):
        return isinstance(other, Coef) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            v = d.get(k, Q0) + c
            if v == 0:
                d.pop(k, None)
            else:
                d[k] = v
        return Coef(d)

    def __neg__(self):
        return Coef({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return Coef()
            return Coef({k: v * c for k, v in self.terms.items()})
        out: dict[UnitKey, Fraction] = {}
        for (r1, o1, h1, x1), c1 in self.terms.items():
            for (r2, o2, h2, x2), c2 in other.terms.items():
                root, sign = _mul_roots(r1, r2)
                h = h1 + h2
                c = c1 * c2 * sign
                if h >= 2:
                    h -= 2
                    c *= q_pow(1)
                k = (root, _mul_opaques(o1, o2), h, x1 + x2)
                v = out.get(k, Q0) + c
                if v == 0:
                    out.pop(k, None)
                else:
                    out[k] = v
        return Coef(out)

    __rmul__ = __mul__

    def mul_scalar(self, s: Scalar):
        return self * Coef.from_scalar(s)

    def has_opaque(self):
        return any(k[1] for k in self.terms)

    def has_root(self):
        return any(k[0] != TRIVIAL_ROOT for k in self.terms)

    def is_plain(self):
        """No roots of unity, no opaques: lives in Q[x^{±}][q^(1/2)]."""
        return not self.has_opaque() and not self.has_root()

    def as_scalar(self):
        """Convert back to a Scalar if all terms share unit, q-half parts."""
        if self.is_zero():
            return Scalar()
        heads = {(r, o, h) for (r, o, h, _x) in self.terms}
        if len(heads) != 1:
            return None
        (r, o, h), = heads
        return Scalar(r, o, h, {x: c for (_r, _o, _h, x), c in self.terms.items()})

    def monomial_scalar(self):
        """The Scalar if this is a single monomial, else None."""
        if len(self.terms) != 1:
            return None
        return self.as_scalar()

    def specialize_x(self, a):
        a = Fraction(a)
        out: dict[UnitKey, Fraction] = {}
        for (r, o, h, x), c in self.terms.items():
            if x < 0 and a == 0:
                raise DomainError("specializing x -> 0 in a Laurent pole")
            v = c * (a ** x if x >= 0 else Fraction(1) / (a ** (-x)))
            k = (r, o, h, 0)
            w = out.get(k, Q0) + v
            if w == 0:
                out.pop(k, None)
            else:
                out[k] = w
        return Coef(out)

    def render(self):
        if self.is_zero():
            return "0"
        parts = []
        for key in sorted(self.terms, key=_unitkey_sort):
            r, o, h, x = key
            parts.append(Scalar(r, o, h, {x: self.terms[key]}).render())
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"Coef({self.render()})"


def _unitkey_sort(key):
    r, o, h, x = key
    return (x, h, Fraction(r[0], r[1]), o)


# ---------------------------------------------------------------------------
# PolyT
# ---------------------------------------------------------------------------

class _NegInf:
    """Degree of the zero polynomial; below every integer."""

    def __lt__(self, other):
        return True

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _NegInf)

    def __repr__(self):
        return "-inf"


NEG_INF = _NegInf()


class PolyT:
    """Polynomial in T with Coef coefficients, zero coefficients stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cs = {}
        for d, c in (coeffs or {}).items():
            if isinstance(c, (int, Fraction)):
                c = Coef.from_rational(c)
            elif isinstance(c, Scalar):
                c = Coef.from_scalar(c)
            if not c.is_zero():
                cs[d] = c
        self.coeffs = cs

    @staticmethod
    def zero():
        return PolyT()

    @staticmethod
    def one():
        return PolyT({0: Coef.one()})

    @staticmethod
    def from_roots(roots):
        """prod (1 - lam*T) over the given Scalars."""
        p = PolyT.one()
        for lam in roots:
            p = p * PolyT({0: Coef.one(), 1: -Coef.from_scalar(lam)})
        return p

    def degree(self):
        return max(self.coeffs) if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def constant_term(self):
        return self.coeffs.get(0, Coef.zero())

    def leading(self):
        if self.is_zero():
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[self.degree()]

    def __eq__(self, other):
        return isinstance(other, PolyT) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted((d, hash(c)) for d, c in self.coeffs.items())))

    def __add__(self, other):
        d = dict(self.coeffs)
        for k, c in other.coeffs.items():
            v = d.get(k, Coef.zero()) + c
            if v.is_zero():
                d.pop(k, None)
            else:
                d[k] = v
        return PolyT(d)

    def __neg__(self):
        return PolyT({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Coef, Scalar, int, Fraction)):
            if isinstance(other, Scalar):
                other = Coef.from_scalar(other)
            elif isinstance(other, (int, Fraction)):
                other = Coef.from_rational(other)
            return PolyT({d: c * other for d, c in self.coeffs.items()})
        out: dict[int, Coef] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                v = out.get(d, Coef.zero()) + c1 * c2
                if v.is_zero():
                    out.pop(d, None)
                else:
                    out[d] = v
        return PolyT(out)

    __rmul__ = __mul__

    def subst_T_scale(self, s: Scalar):
        """T -> s*T."""
        return PolyT({d: c.mul_scalar(s ** d) for d, c in self.coeffs.items()})

    def eval_coef(self, t: Coef) -> Coef:
        """Evaluate at T = t (degrees are >= 0 by construction)."""
        out = Coef.zero()
        powers = {0: Coef.one()}
        for d in sorted(self.coeffs):
            while max(powers) < d:
                m = max(powers)
                powers[m + 1] = powers[m] * t
            out = out + self.coeffs[d] * powers[d]
        return out

    def specialize_x(self, a):
        return PolyT({d: c.specialize_x(a) for d, c in self.coeffs.items()})

    def divmod(self, other: "PolyT"):
        """Exact-ring division; DomainError if a needed coefficient quotient
        does not exist in the coefficient ring."""
        if other.is_zero():
            raise DomainError("division by zero polynomial")
        rem = PolyT(dict(self.coeffs))
        quo: dict[int, Coef] = {}
        dB = other.degree()
        lead = other.coeffs[dB]
        while not rem.is_zero() and rem.degree() >= dB:
            dR = rem.degree()
            c = _coef_div(rem.coeffs[dR], lead)
            if c is None:
                return None, None
            quo[dR - dB] = c
            rem = rem - PolyT({dR - dB: c}) * other
        return PolyT(quo), rem

    def render(self):
        if self.is_zero():
            return "0"
        parts = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d].render()
            if "+" in c[1:] or "-" in c[1:]:
                c = f"({c})"
            if d == 0:
                parts.append(c)
            else:
                ts = "T" if d == 1 else f"T^{d}"
                parts.append(ts if c == "1" else f"{c}*{ts}")
        return _join_signed(parts)

    def __repr__(self):
        return f"PolyT({self.render()})"


def _join_signed(parts):
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def _coef_div(a: Coef, b: Coef):
    """a / b in the coefficient ring, or None if not representable."""
    mono = b.monomial_scalar()
    if mono is not None and not mono.is_zero():
        try:
            return a.mul_scalar(mono.inverse())
        except DomainError:
            pass
    if a.is_plain() and b.is_plain():
        from .linalg import coef_div_plain
        return coef_div_plain(a, b)
    return None


def poly_divides(a: PolyT, b: PolyT) -> bool:
    """True iff b = a*c for some PolyT c, by exact division."""
    if a.is_zero():
        raise DomainError("division by zero polynomial")
    if b.is_zero():
        return True
    quo, rem = b.divmod(a)
    if quo is None:
        from .linalg import poly_divides_plain
        return poly_divides_plain(a, b)
    return rem.is_zero()


def det_char(matrix, size=None) -> PolyT:
    """det(1 - M*T) for a square matrix of Scalars, by subset expansion.

    Division-free, so it works over the full coefficient ring; opaque
    units are rejected since they preclude later evaluation.
    """
    n = len(matrix) if size is None else size
    for row in matrix:
        for s in row:
            if s.has_opaque():
                raise DomainError("det_char: opaque unit entries unsupported")
    # A = 1 - M*T, entries as PolyT
    A = [[PolyT({0: Coef.one() if i == j else Coef.zero(),
                 1: -Coef.from_scalar(matrix[i][j])})
          for j in range(n)] for i in range(n)]
    # determinant by column-subset dynamic programming over the rows
    dets = {0: PolyT.one()}
    for i in range(n):
        new: dict[int, PolyT] = {}
        for mask, val in dets.items():
            if bin(mask).count("1") != i:
                continue
            sign = 1
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    continue
                term = val * A[i][j]
                if sign < 0:
                    term = -term
                k = mask | bit
                new[k] = new.get(k, PolyT.zero()) + term
                sign = -sign
        dets = {m: v for m, v in new.items() if bin(m).count("1") == i + 1}
    return dets.get((1 << n) - 1, PolyT.one() if n == 0 else PolyT.zero())


# ---------------------------------------------------------------------------
# RatFuncT
# ---------------------------------------------------------------------------

class RatFuncT:
    """num/den with gcd cancelled and den canonically scaled (monic in T
    when the leading coefficient is invertible)."""

    __slots__ = ("num", "den")

    def __init__(self, num: PolyT, den: PolyT, reduce=True):
        if den.is_zero():
            raise DomainError("zero denominator")
        if reduce:
            num, den = _ratfunc_reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def from_root_lists(num_roots, den_roots, unit=None):
        """prod(1-aT)/prod(1-bT) with common roots cancelled exactly."""
        nr = list(num_roots)
        dr = list(den_roots)
        out_d = []
        for b in dr:
            if b in nr:
                nr.remove(b)
            else:
                out_d.append(b)
        num = PolyT.from_roots(nr)
        den = PolyT.from_roots(out_d)
        if unit is not None:
            num = num * unit
        return RatFuncT(num, den, reduce=False)

    def __eq__(self, other):
        return (isinstance(other, RatFuncT)
                and (self.num * other.den) == (self.den * other.num))

    def __mul__(self, other):
        return RatFuncT(self.num * other.num, self.den * other.den)

    def render(self):
        return f"({self.num.render()}) / ({self.den.render()})"

    def __repr__(self):
        return f"RatFuncT({self.render()})"


def _ratfunc_reduce(num: PolyT, den: PolyT):
    if num.is_zero():
        return PolyT.zero(), PolyT.one()
    from .linalg import poly_gcd_plain
    if all(c.is_plain() for c in list(num.coeffs.values()) + list(den.coeffs.values())):
        g = poly_gcd_plain(num, den)
        if g is not None and g.degree() != NEG_INF and g.degree() > 0:
            qn, rn = num.divmod(g)
            qd, rd = den.divmod(g)
            if qn is not None and qd is not None and rn.is_zero() and rd.is_zero():
                num, den = qn, qd
    lead = den.leading().monomial_scalar()
    if lead is not None:
        try:
            inv = lead.inverse()
            num = num * inv
            den = den * inv
        except DomainError:
            pass
    return num, den


# ---------------------------------------------------------------------------
# TruncSeriesT
# ---------------------------------------------------------------------------

class TruncSeriesT:
    """Laurent series in T, exact on the window [low, bound]."""

    __slots__ = ("low", "bound", "coeffs")

    def __init__(self, low: int, bound: int, coeffs=None):
        if bound < low:
            raise ValueError("empty series window")
        self.low = low
        self.bound = bound
        cs = {}
        for d, c in (coeffs or {}).items():
            if isinstance(c, (int, Fraction)):
                c = Coef.from_rational(c)
            elif isinstance(c, Scalar):
                c = Coef.from_scalar(c)
            if low <= d <= bound and not c.is_zero():
                cs[d] = c
        self.coeffs = cs

    @staticmethod
    def from_poly(p: PolyT, bound: int, low: int = 0):
        return TruncSeriesT(low, bound, dict(p.coeffs))

    def coeff(self, d: int) -> Coef:
        if d < self.low or d > self.bound:
            raise DomainError(f"coefficient at degree {d} outside valid window")
        return self.coeffs.get(d, Coef.zero())

    def __mul__(self, other):
        if isinstance(other, PolyT):
            return self.mul_poly(other)
        low = self.low + other.low
        bound = min(self.bound + other.low, other.bound + self.low)
        out: dict[int, Coef] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                if d > bound:
                    continue
                v = out.get(d, Coef.zero()) + c1 * c2
                if v.is_zero():
                    out.pop(d, None)
                else:
                    out[d] = v
        return TruncSeriesT(low, bound, out)

    def mul_poly(self, p: PolyT):
        """Series times exact polynomial: valid window [low+v, bound+v] with
        v the valuation of p."""
        if p.is_zero():
            return TruncSeriesT(self.low, self.bound, {})
        v = min(p.coeffs)
        ps = TruncSeriesT(v, self.bound - self.low + p.degree(), dict(p.coeffs))
        return self * ps

    def eq_window(self, other, lo=None, hi=None):
        lo = max(self.low, other.low) if lo is None else lo
        hi = min(self.bound, other.bound) if hi is None else hi
        return all(self.coeff(d) == other.coeff(d) for d in range(lo, hi + 1))

    def specialize_x(self, a):
        return TruncSeriesT(self.low, self.bound,
                            {d: c.specialize_x(a) for d, c in self.coeffs.items()})

    def render(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in sorted(self.coeffs):
            c = self.coeffs[d].render()
            if "+" in c[1:] or "-" in c[1:]:
                c = f"({c})"
            parts.append(c if d == 0 else (f"{c}*T^{d}" if d != 1 else f"{c}*T"))
        return _join_signed(parts) + f" + O(T^{self.bound + 1})"

    def __repr__(self):
        return f"TruncSeriesT({self.render()})"
