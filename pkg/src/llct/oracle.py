"""Brute-force matrix realization of unramified-atom Weil-Deligne reps.

A MatrixWD is an explicit pair (Phi, N) with N Phi = q Phi N and N
nilpotent.  realize/classify are mutually inverse, and classify is the
oracle for every structured rule (tensor, dual, twist, filtration,
purity): it never looks at block data, only at the matrices.

Matrices live over Q when possible (fast path) and over Q(x)(sqrt q)
otherwise.  Eigenvalues of Phi must be monomials c * q^(h/2) * x^k;
general characteristic-polynomial factorization is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Scalar, DomainError
from .linalg import (FE, FieldFE, FieldQ, EigenvalueError, charpoly, kernel,
                     mat_mul, mat_vec, mat_is_zero, mat_inverse,
                     monomial_roots_fe, rational_roots, row_space_basis,
                     subspace_dim, subspace_intersect, subspace_sum,
                     identity, scalar_to_fe, fe_monomial_parts,
                     poly_gcd_f, poly_quot_f)
from .partitions import jordan_type_matrix
from .session import get_q, q_pow
from .wd import WDRep, SpehBlock, UNR


@dataclass(frozen=True)
class MatrixWD:
    """Explicit (Phi, N) over the tagged field ("Q" or "FE")."""

    phi: tuple
    n: tuple
    size: int
    field: str

    @staticmethod
    def make(phi_rows, n_rows) -> "MatrixWD":
        """Entries may be Fractions, ints, FE, or plain Scalars."""
        phi = _coerce_matrix(phi_rows)
        nn = _coerce_matrix(n_rows)
        if _is_rational(phi) and _is_rational(nn):
            phi, nn, tag = _to_fractions(phi), _to_fractions(nn), "Q"
        else:
            phi, nn, tag = _to_fe(phi), _to_fe(nn), "FE"
        m = MatrixWD(tuple(map(tuple, phi)), tuple(map(tuple, nn)), len(phi), tag)
        m.check()
        return m

    def _field(self):
        return FieldQ if self.field == "Q" else FieldFE

    def check(self):
        F = self._field()
        phi, nn = [list(r) for r in self.phi], [list(r) for r in self.n]
        q = F.from_int(get_q())
        lhs = mat_mul(F, nn, phi)
        rhs = [[F.mul(q, e) for e in row] for row in mat_mul(F, phi, nn)]
        for i in range(self.size):
            for j in range(self.size):
                if not F.eq(lhs[i][j], rhs[i][j]):
                    raise DomainError("N*Phi = q*Phi*N fails")
        power = nn  # N^(2^k) >= N^size by repeated squaring
        steps = 1
        while steps < self.size and not mat_is_zero(F, power):
            power = mat_mul(F, power, power)
            steps *= 2
        if not mat_is_zero(F, power):
            raise DomainError("N is not nilpotent")

    def conjugate(self, p_rows) -> "MatrixWD":
        """P (Phi, N) P^{-1}."""
        p = _coerce_matrix(p_rows)
        if self.field == "Q" and _is_rational(p):
            F, p = FieldQ, _to_fractions(p)
            phi, nn = [list(r) for r in self.phi], [list(r) for r in self.n]
        else:
            F, p = FieldFE, _to_fe(p)
            phi, nn = _to_fe([list(r) for r in self.phi]), _to_fe([list(r) for r in self.n])
        pinv = mat_inverse(F, p)
        return MatrixWD.make(mat_mul(F, mat_mul(F, p, phi), pinv),
                             mat_mul(F, mat_mul(F, p, nn), pinv))


def _coerce_matrix(rows):
    out = []
    for row in rows:
        r = []
        for e in row:
            if isinstance(e, (int, Fraction)):
                r.append(Fraction(e))
            elif isinstance(e, Scalar):
                r.append(scalar_to_fe(e))
            else:
                r.append(e)
        out.append(r)
    return out


def _is_rational(rows):
    for row in rows:
        for e in row:
            if isinstance(e, Fraction):
                continue
            if isinstance(e, FE) and e.b.is_zero() and e.a.is_const():
                continue
            return False
    return True


def _to_fractions(rows):
    return [[e if isinstance(e, Fraction) else e.a.const_value() for e in row]
            for row in rows]


def _to_fe(rows):
    return [[FE.const(e) if isinstance(e, Fraction) else e for e in row]
            for row in rows]


# ---------------------------------------------------------------------------
# realize / classify
# ---------------------------------------------------------------------------

def realize(r: WDRep) -> MatrixWD:
    """Block diagonal: Sp(unr(alpha), m) becomes Phi = diag(alpha, ...,
    alpha q^{-(m-1)}) with N shifting each twist level onto the next."""
    if not r.is_unramified():
        raise DomainError("realize needs unramified (dim-1) atoms only")
    size = r.rank
    phi = [[Fraction(0)] * size for _ in range(size)]
    nn = [[Fraction(0)] * size for _ in range(size)]
    fe_needed = any(b.alpha.qh or b.alpha.involves_x() for b in r.blocks)
    if fe_needed:
        phi = [[FE.const(0)] * size for _ in range(size)]
        nn = [[FE.const(0)] * size for _ in range(size)]
    off = 0
    for b in r.blocks:
        a = scalar_to_fe(b.alpha) if fe_needed else b.alpha.rational_value()
        for j in range(b.m):
            qj = FE.const(q_pow(-j)) if fe_needed else q_pow(-j)
            phi[off + j][off + j] = a * qj
            if j + 1 < b.m:
                nn[off + j + 1][off + j] = FE.const(1) if fe_needed else Fraction(1)
        off += b.m
    return MatrixWD.make(phi, nn)


def _eigen_setup(m: MatrixWD):
    """(field, phi, n, eigendata) where eigendata maps a hashable key
    (c, qh, xdeg) to (raw eigenvalue, eigenspace basis)."""
    F = m._field()
    phi = [list(r) for r in m.phi]
    nn = [list(r) for r in m.n]
    cp = charpoly(F, phi)
    der = [F.mul(cp[i], F.from_int(i)) for i in range(1, len(cp))]
    sqfree = poly_quot_f(F, cp, poly_gcd_f(F, cp, der))
    if m.field == "Q":
        roots = rational_roots(list(sqfree))
        if len(roots) != len(sqfree) - 1:
            raise DomainError("semisimplification not supported: eigenvalue "
                              "outside the monomial class")
        keyed = [((c, 0, 0), c) for c in roots]
    else:
        try:
            roots = monomial_roots_fe(list(sqfree))
        except EigenvalueError as e:
            raise DomainError(f"semisimplification not supported: {e}") from e
        keyed = [(fe_monomial_parts(lam), lam) for lam in roots]
    spaces = {}
    total = 0
    for key, lam in keyed:
        shifted = [[F.sub(phi[i][j], lam if i == j else F.zero)
                    for j in range(m.size)] for i in range(m.size)]
        basis = kernel(F, shifted)
        spaces[key] = (lam, basis)
        total += len(basis)
    if total != m.size:
        raise DomainError("semisimplification not supported for this "
                          "eigenstructure (Phi not diagonalizable)")
    return F, phi, nn, spaces


def _q_power_ratio(c1: Fraction, c2: Fraction):
    """j with c1 = c2 * q^{-j}, or None."""
    if c2 == 0:
        return None
    ratio = c1 / c2
    if ratio <= 0:
        return None
    q = Fraction(get_q())
    j = 0
    while ratio < 1:
        ratio *= q
        j += 1
    while ratio > 1:
        ratio /= q
        j -= 1
    return j if ratio == 1 else None


def _key_ratio(k1, k2):
    (c1, p1, x1), (c2, p2, x2) = k1, k2
    if p1 != p2 or x1 != x2:
        return None
    return _q_power_ratio(c1, c2)


def _key_to_scalar(key) -> Scalar:
    c, par, xd = key
    return Scalar.make(c, qexp2=par, xexp=xd)


def classify(m: MatrixWD) -> WDRep:
    """Inverse of realize: recover the Speh blocks from the eigenspace
    chains of Phi and the rank profile of N along them."""
    F, _phi, nn, spaces = _eigen_setup(m)
    chains: list[dict[int, tuple]] = []
    for key in spaces:
        placed = False
        for chain in chains:
            base_level, base_key = next(iter(chain.items()))
            j = _key_ratio(key, base_key[2])
            if j is not None:
                chain[base_level + j] = (*spaces[key], key)
                placed = True
                break
        if not placed:
            chains.append({0: (*spaces[key], key)})
    blocks = []
    for chain in chains:
        blocks.extend(_classify_chain(F, nn, chain))
    rep = WDRep(blocks)
    assert rep.rank == m.size
    return rep


def _classify_chain(F, nmat, chain):
    levels = sorted(chain)
    runs, cur = [], [levels[0]]
    for lv in levels[1:]:
        if lv == cur[-1] + 1:
            cur.append(lv)
        else:
            runs.append(cur)
            cur = [lv]
    runs.append(cur)
    out = []
    for run in runs:
        bases = [chain[lv][1] for lv in run]
        keys = [chain[lv][2] for lv in run]
        L = len(run)
        # r[a][b] = rank of N^(b-a) restricted to the level-a eigenspace
        r = [[0] * L for _ in range(L)]
        for a in range(L):
            vecs = bases[a]
            r[a][a] = len(vecs)
            for b in range(a + 1, L):
                vecs = [mat_vec(F, nmat, v) for v in vecs]
                r[a][b] = subspace_dim(F, [v for v in vecs
                                           if any(not F.is_zero(e) for e in v)])
        for a in range(L):
            for b in range(a, L):
                cnt = (r[a][b]
                       - (r[a - 1][b] if a > 0 else 0)
                       - (r[a][b + 1] if b + 1 < L else 0)
                       + (r[a - 1][b + 1] if a > 0 and b + 1 < L else 0))
                if cnt < 0:
                    raise DomainError("inconsistent rank profile")
                alpha = _key_to_scalar(keys[a])
                out.extend(SpehBlock(UNR, alpha, b - a + 1) for _ in range(cnt))
    return out


def tensor_matrix(m1: MatrixWD, m2: MatrixWD) -> MatrixWD:
    """Kronecker realization of the tensor product:
    Phi = Phi1 (x) Phi2, N = N1 (x) 1 + 1 (x) N2."""
    use_fe = m1.field == "FE" or m2.field == "FE"
    if use_fe:
        a_phi, b_phi = _to_fe([list(r) for r in m1.phi]), _to_fe([list(r) for r in m2.phi])
        a_n, b_n = _to_fe([list(r) for r in m1.n]), _to_fe([list(r) for r in m2.n])
        zero, one = FE.const(0), FE.const(1)
    else:
        a_phi, b_phi = [list(r) for r in m1.phi], [list(r) for r in m2.phi]
        a_n, b_n = [list(r) for r in m1.n], [list(r) for r in m2.n]
        zero, one = Fraction(0), Fraction(1)
    n1, n2 = m1.size, m2.size
    phi = [[a_phi[i1][j1] * b_phi[i2][j2]
            for j1 in range(n1) for j2 in range(n2)]
           for i1 in range(n1) for i2 in range(n2)]
    nn = [[(a_n[i1][j1] if i2 == j2 else zero)
           + (b_n[i2][j2] if i1 == j1 else zero)
           for j1 in range(n1) for j2 in range(n2)]
          for i1 in range(n1) for i2 in range(n2)]
    return MatrixWD.make(phi, nn)


def dual_matrix(m: MatrixWD) -> MatrixWD:
    """Dual realization: Phi^* = (Phi^{-1})^t, N^* = -N^t."""
    F = m._field()
    phi = mat_inverse(F, [list(r) for r in m.phi])
    n = m.size
    phi_t = [[phi[j][i] for j in range(n)] for i in range(n)]
    n_t = [[F.neg(m.n[j][i]) for j in range(n)] for i in range(n)]
    return MatrixWD.make(phi_t, n_t)


def twist_matrix(m: MatrixWD, i: int) -> MatrixWD:
    F = m._field()
    s = F.from_int(1)
    qi = q_pow(-i)
    s = FE.const(qi) if m.field == "FE" else qi
    phi = [[F.mul(s, e) for e in row] for row in m.phi]
    return MatrixWD.make(phi, [list(r) for r in m.n])


def direct_sum_matrix(m1: MatrixWD, m2: MatrixWD) -> MatrixWD:
    use_fe = m1.field == "FE" or m2.field == "FE"
    conv = (lambda rows: _to_fe(rows)) if use_fe else (lambda rows: rows)
    zero = FE.const(0) if use_fe else Fraction(0)
    a_phi, b_phi = conv([list(r) for r in m1.phi]), conv([list(r) for r in m2.phi])
    a_n, b_n = conv([list(r) for r in m1.n]), conv([list(r) for r in m2.n])
    n1, n2 = m1.size, m2.size
    size = n1 + n2
    phi = [[zero] * size for _ in range(size)]
    nn = [[zero] * size for _ in range(size)]
    for i in range(n1):
        for j in range(n1):
            phi[i][j] = a_phi[i][j]
            nn[i][j] = a_n[i][j]
    for i in range(n2):
        for j in range(n2):
            phi[n1 + i][n1 + j] = b_phi[i][j]
            nn[n1 + i][n1 + j] = b_n[i][j]
    return MatrixWD.make(phi, nn)


# ---------------------------------------------------------------------------
# Monodromy filtration
# ---------------------------------------------------------------------------

def monodromy_filtration(m: MatrixWD):
    """Graded pieces of the unique filtration with N W_i <= W_{i-2} and
    N^i : Gr_i ~ Gr_{-i}; returns {degree: sorted Phi-eigenvalue list}.

    Built as Deligne's convolution W_k = sum_{i-j=k} Ker N^{i+1} /\\ Im N^j;
    the symmetry of the graded pieces is asserted by explicit rank checks.
    """
    F, _phi, nn, spaces = _eigen_setup(m)
    n = m.size
    powers = [identity(F, n)]
    for _ in range(n + 1):
        powers.append(mat_mul(F, powers[-1], nn))
    kers = [kernel(F, powers[i]) for i in range(n + 2)]
    ims = [row_space_basis(F, [_col(powers[i], j) for j in range(n)])
           for i in range(n + 2)]
    W: dict[int, list] = {}
    for k in range(-n - 1, n + 2):
        acc: list = []
        for i in range(0, n + 2):
            j = i - k
            if j < 0 or j > n + 1:
                continue
            ki = kers[min(i + 1, n + 1)]
            imj = ims[min(j, n + 1)]
            if not ki or not imj:
                continue
            piece = subspace_intersect(F, ki, imj)
            if piece:
                acc = subspace_sum(F, acc, piece)
        W[k] = acc
    degrees = {}
    for k in range(-n - 1, n + 2):
        lower = W.get(k - 1, [])
        if subspace_dim(F, W[k]) == subspace_dim(F, lower):
            continue
        multiset = []
        for key, (lam, basis) in spaces.items():
            dk = subspace_dim(F, subspace_intersect(F, basis, W[k])) if W[k] else 0
            dl = subspace_dim(F, subspace_intersect(F, basis, lower)) if lower else 0
            multiset.extend([_key_to_scalar(key)] * (dk - dl))
        multiset.sort(key=Scalar.sort_key)
        degrees[k] = multiset
    _check_filtration_symmetry(F, nn, W, degrees, n)
    return degrees


def _check_filtration_symmetry(F, nmat, W, degrees, n):
    for k, eigs in degrees.items():
        if k <= 0:
            continue
        lo = degrees.get(-k, [])
        assert len(lo) == len(eigs), "graded dimensions are not symmetric"
        nk = identity(F, n)
        for _ in range(k):
            nk = mat_mul(F, nk, nmat)
        image = [mat_vec(F, nk, v) for v in W[k]]
        tgt = subspace_sum(F, W.get(-k - 1, []), image)
        got = subspace_dim(F, tgt) - subspace_dim(F, W.get(-k - 1, []))
        assert got == len(eigs), "N^k fails to induce Gr_k ~ Gr_{-k}"


def _col(mat, j):
    return [mat[i][j] for i in range(len(mat))]


# ---------------------------------------------------------------------------
# Families of nilpotent matrices over Q[x]
# ---------------------------------------------------------------------------

def generic_rank_profile(n_rows, sample_points):
    """Jordan type over Q(x) and at the given rational sample points.

    Entries are plain Scalars (Laurent polynomials in x); the generic
    type uses ranks over the rational-function field.
    """
    fe_rows = [[scalar_to_fe(e) for e in row] for row in n_rows]
    generic = jordan_type_matrix(fe_rows, FieldFE)
    special = {}
    for a in sample_points:
        a = Fraction(a)
        rows = [[e.specialize_x(a).rational_value() for e in row] for row in n_rows]
        special[a] = jordan_type_matrix(rows, FieldQ)
    return generic, special
