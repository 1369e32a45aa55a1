"""Exact linear algebra for the matrix oracle.

Matrices live over one of two explicit fields:

  * Q            -- plain Fractions (fast path),
  * Q(x)(sqrt q) -- elements a + b*sqrt(q) with a, b rational functions of x.

Everything is generic over a small Field object so the elimination,
kernel, and characteristic-polynomial code is written once.
"""

from __future__ import annotations

from fractions import Fraction

from .session import get_q, q_pow, q_is_square

Q0 = Fraction(0)
Q1 = Fraction(1)


# ---------------------------------------------------------------------------
# Q[x] and Q(x)
# ---------------------------------------------------------------------------

class QPoly:
    """Polynomial over Q in one variable, dense-free dict representation."""

    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = {d: Fraction(v) for d, v in (c or {}).items() if v != 0}

    @staticmethod
    def const(v):
        v = Fraction(v)
        return QPoly({0: v} if v else {})

    @staticmethod
    def x(k=1):
        return QPoly({k: Q1})

    def degree(self):
        return max(self.c) if self.c else -1

    def is_zero(self):
        return not self.c

    def __eq__(self, other):
        return self.c == other.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def __add__(self, other):
        d = dict(self.c)
        for k, v in other.c.items():
            w = d.get(k, Q0) + v
            if w == 0:
                d.pop(k, None)
            else:
                d[k] = w
        return QPoly(d)

    def __neg__(self):
        return QPoly({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Fraction) or isinstance(other, int):
            v = Fraction(other)
            return QPoly({k: w * v for k, w in self.c.items()}) if v else QPoly()
        out: dict[int, Fraction] = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                w = out.get(k, Q0) + v1 * v2
                if w == 0:
                    out.pop(k, None)
                else:
                    out[k] = w
        return QPoly(out)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("QPoly division by zero")
        rem = QPoly(dict(self.c))
        quo: dict[int, Fraction] = {}
        db, lb = other.degree(), other.c[other.degree()]
        while not rem.is_zero() and rem.degree() >= db:
            dr = rem.degree()
            f = rem.c[dr] / lb
            quo[dr - db] = f
            rem = rem - QPoly({dr - db: f}) * other
        return QPoly(quo), rem

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a * (Q1 / a.c[a.degree()])

    def eval(self, v: Fraction) -> Fraction:
        out = Q0
        for k, c in self.c.items():
            out += c * v ** k
        return out

    def monic(self):
        if self.is_zero():
            return self
        return self * (Q1 / self.c[self.degree()])

    def __repr__(self):
        return f"QPoly({self.c})"


class RatX:
    """Rational function in x over Q, normalized (monic denominator, coprime)."""

    __slots__ = ("num", "den")

    def __init__(self, num: QPoly, den: QPoly = None, reduce=True):
        den = QPoly.const(1) if den is None else den
        if den.is_zero():
            raise ZeroDivisionError("RatX zero denominator")
        if reduce:
            g = num.gcd(den)
            if not g.is_zero() and g.degree() > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            lead = den.c[den.degree()]
            if lead != 1:
                num = num * (Q1 / lead)
                den = den * (Q1 / lead)
        self.num = num
        self.den = den

    @staticmethod
    def const(v):
        return RatX(QPoly.const(v), reduce=False)

    @staticmethod
    def from_qpoly(p: QPoly):
        return RatX(p, reduce=False)

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        return RatX(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    def __neg__(self):
        return RatX(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatX(self.num * other.num, self.den * other.den)

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("RatX inverse of zero")
        return RatX(self.den, self.num)

    def eval(self, v: Fraction) -> Fraction:
        d = self.den.eval(v)
        if d == 0:
            raise ZeroDivisionError("RatX pole at evaluation point")
        return self.num.eval(v) / d

    def is_const(self):
        return self.num.degree() <= 0 and self.den.degree() == 0

    def const_value(self):
        return self.num.c.get(0, Q0) / self.den.c[0]

    def __repr__(self):
        return f"RatX({self.num.c}/{self.den.c})"


# ---------------------------------------------------------------------------
# Field protocols
# ---------------------------------------------------------------------------

class FieldQ:
    """Plain rational field."""

    zero = Q0
    one = Q1

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return Q1 / a

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def eq(a, b):
        return a == b

    @staticmethod
    def from_int(n):
        return Fraction(n)


class FE:
    """Element a + b*sqrt(q) of Q(x)(sqrt q); b forced 0 when q is square."""

    __slots__ = ("a", "b")

    def __init__(self, a: RatX, b: RatX = None):
        b = RatX.const(0) if b is None else b
        if not b.is_zero() and q_is_square():
            raise ValueError("formal sqrt(q) with square q would be degenerate")
        self.a = a
        self.b = b

    @staticmethod
    def const(v):
        return FE(RatX.const(v))

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        return self.a == other.a and self.b == other.b

    def __add__(self, other):
        return FE(self.a + other.a, self.b + other.b)

    def __neg__(self):
        return FE(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        q = RatX.const(get_q())
        return FE(self.a * other.a + q * (self.b * other.b),
                  self.a * other.b + self.b * other.a)

    def inv(self):
        q = RatX.const(get_q())
        nrm = self.a * self.a - q * (self.b * self.b)
        if nrm.is_zero():
            raise ZeroDivisionError("FE inverse of zero (or zero-norm) element")
        ninv = nrm.inv()
        return FE(self.a * ninv, -(self.b * ninv))

    def __repr__(self):
        return f"FE({self.a!r} + {self.b!r}*sqrt(q))"


class FieldFE:
    zero = FE.const(0)
    one = FE.const(1)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        return a.inv()

    @staticmethod
    def is_zero(a):
        return a.is_zero()

    @staticmethod
    def eq(a, b):
        return a == b

    @staticmethod
    def from_int(n):
        return FE.const(n)


# ---------------------------------------------------------------------------
# Generic matrix routines
# ---------------------------------------------------------------------------

def mat_mul(F, A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    cols = [[B[k][j] for k in range(m)] for j in range(p)]
    return [[_dot(F, A[i], cols[j]) for j in range(p)] for i in range(n)]


def _dot(F, row, col):
    out = F.zero
    for a, b in zip(row, col):
        if F.is_zero(a) or F.is_zero(b):
            continue
        out = F.add(out, F.mul(a, b))
    return out


def mat_vec(F, A, v):
    return [_dot(F, row, v) for row in A]


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def mat_is_zero(F, A):
    return all(F.is_zero(e) for row in A for e in row)


def row_echelon(F, M):
    """Return (echelon rows, pivot column list); M is not modified."""
    rows = [list(r) for r in M]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not F.is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(inv, e) for e in rows[r]]
        for i in range(len(rows)):
            if i != r and not F.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(F, M):
    if not M or not M[0]:
        return 0
    return len(row_echelon(F, M)[0])


def kernel(F, M):
    """Basis of {v : M v = 0} (column kernel), as a list of vectors."""
    if not M:
        return []
    ncols = len(M[0])
    ech, pivots = row_echelon(F, M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(ech[r][fc])
        basis.append(v)
    return basis


def solve(F, M, b):
    """One solution of M v = b, or None."""
    if not M:
        return None
    n, m = len(M), len(M[0])
    aug = [list(M[i]) + [b[i]] for i in range(n)]
    ech, pivots = row_echelon(F, aug)
    v = [F.zero] * m
    for r, pc in enumerate(pivots):
        if pc == m:
            return None  # inconsistent
        v[pc] = ech[r][m]
    # verify (cheap guard against logic errors with exact arithmetic)
    for i in range(n):
        if not F.is_zero(F.sub(_dot(F, M[i], v), b[i])):
            return None
    return v


def mat_inverse(F, M):
    n = len(M)
    aug = [list(M[i]) + identity(F, n)[i] for i in range(n)]
    ech, pivots = row_echelon(F, aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in ech]


def charpoly(F, M):
    """Coefficients [c_0, ..., c_n] of det(X*I - M) via Faddeev-LeVerrier."""
    n = len(M)
    coeffs = [F.zero] * (n + 1)
    coeffs[n] = F.one
    Mk = identity(F, n)
    for k in range(1, n + 1):
        Mk = mat_mul(F, M, Mk)
        tr = F.zero
        for i in range(n):
            tr = F.add(tr, Mk[i][i])
        ck = F.mul(F.neg(F.inv(F.from_int(k))), tr)
        coeffs[n - k] = ck
        for i in range(n):
            Mk[i][i] = F.add(Mk[i][i], ck)
    return coeffs


def row_space_basis(F, vectors):
    if not vectors:
        return []
    ech, _ = row_echelon(F, vectors)
    return ech


def subspace_dim(F, vectors):
    if not vectors:
        return 0
    return rank(F, vectors)


def subspace_sum(F, U, V):
    return row_space_basis(F, list(U) + list(V))


def subspace_intersect(F, U, V):
    """Basis of the intersection of two row spaces."""
    if not U or not V:
        return []
    n = len(U[0])
    stacked = list(U) + [[F.neg(e) for e in row] for row in V]
    # dependencies c with sum_i c_i * stacked_i = 0: kernel of transpose
    tr = [[stacked[i][j] for i in range(len(stacked))] for j in range(n)]
    deps = kernel(F, tr)
    out = []
    for c in deps:
        vec = [F.zero] * n
        for i in range(len(U)):
            if not F.is_zero(c[i]):
                vec = [F.add(a, F.mul(c[i], b)) for a, b in zip(vec, U[i])]
        if any(not F.is_zero(e) for e in vec):
            out.append(vec)
    return row_space_basis(F, out)


def in_span(F, vectors, v):
    if not vectors:
        return all(F.is_zero(e) for e in v)
    tr = [[vec[j] for vec in vectors] for j in range(len(v))]
    return solve(F, tr, v) is not None


def coords_in_basis(F, basis, v):
    tr = [[vec[j] for vec in basis] for j in range(len(v))]
    return solve(F, tr, v)


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------

def _factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; a cofactor surviving the bound is kept
    as one (possibly composite) factor -- fine for smooth inputs."""
    fs: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            fs[p] = fs.get(p, 0) + 1
            n //= p
    d = 17
    while d * d <= n and d < 100_000:
        while n % d == 0:
            fs[d] = fs.get(d, 0) + 1
            n //= d
        d += 2
    if n > 1:
        fs[n] = fs.get(n, 0) + 1
    return fs


def _int_divisors(n: int):
    n = abs(n)
    if n == 0:
        return [1]
    divs = [1]
    for p, e in _factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def rational_roots(coeffs: list[Fraction]):
    """All rational roots (with multiplicity) of sum coeffs[i] X^i."""
    import math
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    roots = []
    while coeffs and coeffs[0] == 0:
        roots.append(Q0)
        coeffs = coeffs[1:]
    if len(coeffs) <= 1:
        return roots
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    cands = []
    for p in _int_divisors(ints[0]):
        for q in _int_divisors(ints[-1]):
            if math.gcd(p, q) == 1:
                cands.extend([Fraction(p, q), Fraction(-p, q)])
    cands = sorted(set(cands))
    for c in cands:
        while _eval_int_poly_at(ints, c) == 0:
            roots.append(c)
            ints = _deflate_list(ints, c)
            if len(ints) <= 1:
                return roots
    return roots


def _eval_int_poly_at(ints, v: Fraction) -> int:
    """b^deg * p(a/b) as an exact integer (zero iff v is a root)."""
    a, b = v.numerator, v.denominator
    out = 0
    bp = 1
    for c in reversed(ints):
        out = out * a + c * bp
        bp *= b
    return out


def _deflate_list(ints, root: Fraction):
    """Divide by (X - root), exact by assumption; denominators re-cleared."""
    import math
    n = len(ints) - 1
    out = [Fraction(0)] * n
    acc = Fraction(ints[n])
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = acc * root + ints[i]
    assert acc == 0
    den = 1
    for c in out:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in out]


def poly_mod_f(F, a, b):
    """Remainder of coefficient-list polynomials over the field F."""
    rem = list(a)
    b = list(b)
    while b and F.is_zero(b[-1]):
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial mod by zero")
    db, lb = len(b) - 1, b[-1]
    while True:
        while rem and F.is_zero(rem[-1]):
            rem.pop()
        if len(rem) - 1 < db:
            break
        f = F.mul(rem[-1], F.inv(lb))
        shift = len(rem) - 1 - db
        for i, c in enumerate(b):
            rem[shift + i] = F.sub(rem[shift + i], F.mul(f, c))
        rem.pop()
    return rem


def poly_gcd_f(F, a, b):
    """Monic gcd of coefficient-list polynomials over the field F."""
    a, b = list(a), list(b)
    while b and any(not F.is_zero(c) for c in b):
        a, b = b, poly_mod_f(F, a, b)
    while a and F.is_zero(a[-1]):
        a.pop()
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(c, inv) for c in a]
    return a


def poly_quot_f(F, a, b):
    """Exact quotient a // b (remainder discarded) over the field F."""
    a, b = list(a), list(b)
    while b and F.is_zero(b[-1]):
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    out = [F.zero] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while True:
        while a and F.is_zero(a[-1]):
            a.pop()
        if len(a) < len(b):
            break
        f = F.mul(a[-1], F.inv(lb))
        shift = len(a) - len(b)
        out[shift] = f
        for i, c in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(f, c))
        a.pop()
    return out


class EigenvalueError(ValueError):
    """Eigenstructure outside the supported monomial class."""


def monomial_roots_fe(coeffs: list[FE]):
    """Roots of a split polynomial over Q(x)(sqrt q), all of which are
    required to be monomials c * sqrt(q)^d * x^k; raises otherwise."""
    while coeffs and coeffs[-1].is_zero():
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    roots = []
    work = list(coeffs)
    while len(work) > 1:
        lam = _find_monomial_root(work)
        if lam is None:
            raise EigenvalueError(
                "eigenvalue outside the monomial class c*q^(h/2)*x^k")
        roots.append(lam)
        work = _deflate_fe(work, lam)
    return roots


def _fe_to_slices(c: FE, den_lcm: QPoly):
    """Clear denominators (multiply by den_lcm) and return {(xdeg, par): Fraction}."""
    out = {}
    for par, rx in ((0, c.a), (1, c.b)):
        if rx.is_zero():
            continue
        num = rx.num * den_lcm.divmod(rx.den)[0]
        for d, v in num.c.items():
            out[(d, par)] = out.get((d, par), Q0) + v
    return {k: v for k, v in out.items() if v != 0}


def _find_monomial_root(coeffs: list[FE]):
    den_lcm = QPoly.const(1)
    for c in coeffs:
        for rx in (c.a, c.b):
            g = den_lcm.gcd(rx.den)
            den_lcm = den_lcm * rx.den.divmod(g)[0]
    sliced = [_fe_to_slices(c, den_lcm) for c in coeffs]
    idx = [j for j, s in enumerate(sliced) if s]
    ks = {0}
    for j1 in idx:
        for j2 in idx:
            if j2 <= j1:
                continue
            for (d1, _p1) in sliced[j1]:
                for (d2, _p2) in sliced[j2]:
                    num = d1 - d2
                    if num % (j2 - j1) == 0:
                        ks.add(num // (j2 - j1))
    q = get_q()
    for k in sorted(ks):
        for delta in (0, 1):
            if delta == 1 and q_is_square():
                continue
            groups: dict[tuple[int, int], dict[int, Fraction]] = {}
            for j, sl in enumerate(sliced):
                for (d, par), v in sl.items():
                    tot = par + delta * j
                    key = (d + k * j, tot % 2)
                    poly = groups.setdefault(key, {})
                    poly[j] = poly.get(j, Q0) + v * q_pow(tot // 2)
            groups = {g: {j: v for j, v in p.items() if v != 0}
                      for g, p in groups.items()}
            groups = {g: p for g, p in groups.items() if p}
            if not groups:
                continue
            # any nonempty group constrains c; use the smallest for speed
            gkey = min(groups, key=lambda g: len(groups[g]))
            poly = groups[gkey]
            deg = max(poly)
            cands = rational_roots([poly.get(i, Q0) for i in range(deg + 1)])
            for c in sorted(set(cands)):
                if c == 0:
                    continue
                lam = _make_fe_monomial(c, delta, k)
                if _poly_eval_fe(coeffs, lam).is_zero():
                    return lam
    return None


def _make_fe_monomial(c: Fraction, delta: int, k: int) -> FE:
    mono = RatX(QPoly({k: c}), reduce=False) if k >= 0 else RatX(
        QPoly({0: c}), QPoly({-k: Q1}), reduce=False)
    if delta == 0:
        return FE(mono)
    return FE(RatX.const(0), mono)


def _poly_eval_fe(coeffs: list[FE], v: FE) -> FE:
    out = FE.const(0)
    for c in reversed(coeffs):
        out = out * v + c
    return out


def _deflate_fe(coeffs: list[FE], root: FE):
    n = len(coeffs) - 1
    out = [FE.const(0)] * n
    acc = coeffs[n]
    for i in range(n - 1, -1, -1):
        out[i] = acc
        acc = acc * root + coeffs[i]
    assert acc.is_zero(), "deflation by a non-root"
    return out


def fe_monomial_parts(v: FE):
    """(c, delta, k) for a monomial FE, else None."""
    if v.is_zero():
        return None
    nz = [(0, v.a), (1, v.b)]
    nz = [(p, r) for p, r in nz if not r.is_zero()]
    if len(nz) != 1:
        return None
    par, rx = nz[0]
    num, den = rx.num, rx.den
    if len(num.c) != 1 or len(den.c) != 1:
        return None
    (dn, cn), = num.c.items()
    (dd, cd), = den.c.items()
    return (cn / cd, par, dn - dd)


# ---------------------------------------------------------------------------
# Scalar <-> field element conversions
# ---------------------------------------------------------------------------

def scalar_to_fe(s) -> FE:
    """Plain Scalar (no roots of unity, no opaques) to a + b*sqrt(q)."""
    if s.root != (0, 1) or s.opaques:
        raise ValueError("scalar outside Q(x)(sqrt q): " + s.render())
    shift = min(list(s.xpoly) + [0])
    den = QPoly({-shift: Q1}) if shift < 0 else QPoly.const(1)
    poly = QPoly({k - shift: v for k, v in s.xpoly.items()})
    rx = RatX(poly, den)
    if s.qh:
        return FE(RatX.const(0), rx)
    return FE(rx)


def scalar_to_fraction(s) -> Fraction:
    """Plain rational Scalar to a Fraction."""
    if s.root != (0, 1) or s.opaques or s.qh or any(k != 0 for k in s.xpoly):
        raise ValueError("scalar is not rational: " + s.render())
    return s.xpoly.get(0, Q0)


def fe_to_scalar(v: FE):
    """Monomial FE back to a Scalar; None when not monomial."""
    from .exact import Scalar
    if v.is_zero():
        return Scalar.zero()
    parts = fe_monomial_parts(v)
    if parts is None:
        return None
    c, par, k = parts
    return Scalar.make(c, qexp2=par, xexp=k)


# ---------------------------------------------------------------------------
# Helpers used by exact.py for "plain" Coef arithmetic
# ---------------------------------------------------------------------------

def _plain_coef_to_fe(coef) -> FE:
    a: dict[int, Fraction] = {}
    b: dict[int, Fraction] = {}
    for (root, opa, qh, xe), v in coef.terms.items():
        assert root == (0, 1) and not opa
        (b if qh else a)[xe] = (b if qh else a).get(xe, Q0) + v
    shift = min(list(a) + list(b) + [0])
    den = QPoly({-shift: Q1}) if shift < 0 else QPoly.const(1)
    pa = QPoly({k - shift: v for k, v in a.items()})
    pb = QPoly({k - shift: v for k, v in b.items()})
    return FE(RatX(pa, den), RatX(pb, den))


def _fe_to_plain_coef(v: FE):
    """Back-convert when denominators are monomials x^k; else None."""
    from .exact import Coef, TRIVIAL_ROOT
    terms = {}
    for par, rx in ((0, v.a), (1, v.b)):
        if rx.is_zero():
            continue
        if len(rx.den.c) != 1:
            return None
        (dd, cd), = rx.den.c.items()
        for d, c in rx.num.c.items():
            key = (TRIVIAL_ROOT, (), par, d - dd)
            terms[key] = terms.get(key, Q0) + c / cd
    return Coef({k: v for k, v in terms.items() if v != 0})


def coef_div_plain(a, b):
    if b.is_zero():
        return None
    try:
        fe = _plain_coef_to_fe(a) * _plain_coef_to_fe(b).inv()
    except ZeroDivisionError:
        return None
    return _fe_to_plain_coef(fe)


def _polyT_to_fe_list(p):
    if p.is_zero():
        return []
    deg = p.degree()
    from .exact import Coef
    return [_plain_coef_to_fe(p.coeffs.get(d, Coef.zero())) for d in range(deg + 1)]


def poly_divides_plain(a, b) -> bool:
    """Divisibility over the fraction field Q(x)(sqrt q); used when the
    coefficient-ring division is inconclusive."""
    if any(not c.is_plain() for c in list(a.coeffs.values()) + list(b.coeffs.values())):
        from .exact import DomainError
        raise DomainError("poly_divides needs opaque/root-free coefficients")
    fa, fb = _polyT_to_fe_list(a), _polyT_to_fe_list(b)
    if not fb:
        return True
    rem = list(fb)
    da, la = len(fa) - 1, fa[-1]
    while len(rem) - 1 >= da and any(not c.is_zero() for c in rem):
        while rem and rem[-1].is_zero():
            rem.pop()
        if len(rem) - 1 < da:
            break
        f = rem[-1] * la.inv()
        shift = len(rem) - 1 - da
        for i, c in enumerate(fa):
            rem[shift + i] = rem[shift + i] - f * c
        rem.pop()
    return all(c.is_zero() for c in rem)


def poly_gcd_plain(a, b):
    """gcd over Q(x)(sqrt q), returned as a PolyT with cleared denominators,
    or None when coefficients are outside the plain subring."""
    from .exact import PolyT, Coef
    if any(not c.is_plain() for c in list(a.coeffs.values()) + list(b.coeffs.values())):
        return None
    fa, fb = _polyT_to_fe_list(a), _polyT_to_fe_list(b)
    while fb and any(not c.is_zero() for c in fb):
        fa, fb = fb, _fe_poly_mod(fa, fb)
    while fa and fa[-1].is_zero():
        fa.pop()
    if not fa:
        return PolyT.zero()
    lead_inv = fa[-1].inv()
    fa = [c * lead_inv for c in fa]
    coeffs = {}
    for d, fe in enumerate(fa):
        c = _fe_to_plain_coef(fe)
        if c is None:
            return None
        if not c.is_zero():
            coeffs[d] = c
    return PolyT(coeffs)


def _fe_poly_mod(fa, fb):
    rem = list(fa)
    while fb and fb[-1].is_zero():
        fb = fb[:-1]
    db, lb = len(fb) - 1, fb[-1]
    while len(rem) - 1 >= db:
        while rem and rem[-1].is_zero():
            rem.pop()
        if len(rem) - 1 < db:
            break
        f = rem[-1] * lb.inv()
        shift = len(rem) - 1 - db
        for i, c in enumerate(fb):
            rem[shift + i] = rem[shift + i] - f * c
        rem.pop()
    return rem
