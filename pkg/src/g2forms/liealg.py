"""Matrix Lie algebras with exact structure constants and isotropy modules.

Algebras are lists of rational ambient matrices.  The invariant inner
product is <X, Y> = -trace(XY), which is definite on every compact
realization used here (abelian factors are realized as rotation blocks, so
the same formula covers them).  A reductive complement V of a subalgebra h
gives an isotropy module: the h-action matrices on V, the V-part of the
bracket, the restricted inner product, and any finite component generators.

Everything through `invariant_dims` is exact.  `invariant_form_types`
classifies rational sample forms exactly but can only report "not found at
this resolution" for a negative.
"""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import sympy

from .linalg import (commutator, frac, identity, intersect_nullspaces,
                     inverse, mat, mat_mul, mat_sub, mat_vec, nullspace,
                     rank, rref, solve, transpose, trace)
from .multilinear import KForm, algebra_action, pullback
from .stable_forms import Orbit3Class, classify_coeffs


def _flatten(m):
    return [x for row in m for x in row]


@dataclass
class MatrixLieAlgebra:
    """A Lie algebra of rational matrices with a fixed ordered basis."""

    name: str
    basis: list

    def __post_init__(self):
        self._solver = None
        self._struct = None

    @property
    def dim(self):
        return len(self.basis)

    @property
    def size(self):
        return len(self.basis[0]) if self.basis else 0

    def _coord_solver(self):
        # pivot-row submatrix inverse; coords are then one small mat-vec plus
        # an exact full-length consistency check
        if self._solver is None:
            flat = [_flatten(b) for b in self.basis]
            _, pivots = rref(flat)
            if len(pivots) != self.dim:
                raise ValueError(f"{self.name}: basis is linearly dependent")
            sub = [[flat[r][p] for r in range(self.dim)] for p in pivots]
            self._solver = (flat, pivots, inverse(sub))
        return self._solver

    def coords(self, x):
        """Coordinates of an ambient matrix in the basis; None if outside."""
        if not self.basis:
            return None
        flat, pivots, inv = self._coord_solver()
        xf = _flatten(x)
        c = mat_vec(inv, [xf[p] for p in pivots])
        # exact membership check
        for k in range(len(xf)):
            if sum(ci * flat[i][k] for i, ci in enumerate(c) if ci) != xf[k]:
                return None
        return c

    def element(self, coeffs):
        n = self.size
        out = [[Fraction(0)] * n for _ in range(n)]
        for c, b in zip(coeffs, self.basis):
            c = frac(c)
            if c == 0:
                continue
            for i in range(n):
                for j in range(n):
                    out[i][j] += c * b[i][j]
        return out

    def structure_constants(self):
        """c[i][j] = coordinates of [b_i, b_j]; raises if not closed."""
        if self._struct is None:
            d = self.dim
            table = [[None] * d for _ in range(d)]
            for i in range(d):
                for j in range(i + 1, d):
                    c = self.coords(commutator(self.basis[i], self.basis[j]))
                    if c is None:
                        raise ValueError(
                            f"{self.name}: bracket [b{i}, b{j}] leaves the span")
                    table[i][j] = c
                    table[j][i] = [-x for x in c]
                zero = [Fraction(0)] * d
                table[i][i] = zero
            self._struct = table
        return self._struct

    def check_jacobi(self):
        """Exact Jacobi residual check on all basis triples."""
        d = self.dim
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    a, b, c = self.basis[i], self.basis[j], self.basis[k]
                    s = mat_sub(commutator(commutator(a, b), c),
                                mat_sub(commutator(a, commutator(b, c)),
                                        commutator(b, commutator(a, c))))
                    if any(x != 0 for row in s for x in row):
                        raise AssertionError(
                            f"{self.name}: Jacobi fails on triple {i},{j},{k}")
        return True

    def trace_form(self):
        """Gram matrix of <X, Y> = -tr(XY) on the basis."""
        d = self.dim
        g = [[Fraction(0)] * d for _ in range(d)]
        for i in range(d):
            for j in range(i, d):
                v = -trace(mat_mul(self.basis[i], self.basis[j]))
                g[i][j] = v
                g[j][i] = v
        return g


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def _embed_block(small, size, offset):
    out = [[Fraction(0)] * size for _ in range(size)]
    k = len(small)
    for i in range(k):
        for j in range(k):
            out[offset + i][offset + j] = frac(small[i][j])
    return out


def creal(a, b):
    """Real 2n x 2n expansion of the complex matrix a + i b."""
    n = len(a)
    out = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for p in range(n):
        for q in range(n):
            x, y = frac(a[p][q]), frac(b[p][q])
            out[2 * p][2 * q] = x
            out[2 * p][2 * q + 1] = -y
            out[2 * p + 1][2 * q] = y
            out[2 * p + 1][2 * q + 1] = x
    return out


def _czero(n):
    return [[Fraction(0)] * n for _ in range(n)]


def so_basis(n):
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            m = _czero(n)
            m[i][j] = Fraction(1)
            m[j][i] = Fraction(-1)
            out.append(m)
    return out


def su_basis(n):
    """Real 2n x 2n basis of su(n): off-diagonal pairs, then diagonal tori."""
    out = []
    for p in range(n):
        for q in range(p + 1, n):
            a = _czero(n)
            a[p][q] = Fraction(1)
            a[q][p] = Fraction(-1)
            out.append(creal(a, _czero(n)))
            b = _czero(n)
            b[p][q] = Fraction(1)
            b[q][p] = Fraction(1)
            out.append(creal(_czero(n), b))
    for p in range(n - 1):
        b = _czero(n)
        b[p][p] = Fraction(1)
        b[p + 1][p + 1] = Fraction(-1)
        out.append(creal(_czero(n), b))
    return out


def u_basis(n):
    """u(n) = su(n) + center, realized over R."""
    b = _czero(n)
    for p in range(n):
        b[p][p] = Fraction(1)
    return su_basis(n) + [creal(_czero(n), b)]


def diag_torus_su(n, weights):
    """i * diag(weights) in su(n)/u(n), real 2n x 2n."""
    b = _czero(n)
    for p, w in enumerate(weights):
        b[p][p] = frac(w)
    return creal(_czero(n), b)


def sp_basis(n):
    """Real 4n x 4n basis of sp(n) in the form [[A, B], [-conj B, conj A]].

    A runs over u(n), B over complex symmetric matrices; dim = n(2n + 1).
    """
    out = []

    def emit(a_re, a_im, b_re, b_im):
        # assemble the 2n x 2n complex matrix, then expand
        m_re = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        m_im = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for p in range(n):
            for q in range(n):
                m_re[p][q] = a_re[p][q]
                m_im[p][q] = a_im[p][q]
                m_re[p][n + q] = b_re[p][q]
                m_im[p][n + q] = b_im[p][q]
                m_re[n + p][q] = -b_re[p][q]
                m_im[n + p][q] = b_im[p][q]
                m_re[n + p][n + q] = a_re[p][q]
                m_im[n + p][n + q] = -a_im[p][q]
        out.append(creal(m_re, m_im))

    z = _czero(n)
    for p in range(n):
        d = _czero(n)
        d[p][p] = Fraction(1)
        emit(z, d, z, z)      # i a_p diagonal
        emit(z, z, d, z)      # B = E_pp
        emit(z, z, z, d)      # B = i E_pp
    for p in range(n):
        for q in range(p + 1, n):
            a = _czero(n)
            a[p][q] = Fraction(1)
            a[q][p] = Fraction(-1)
            emit(a, z, z, z)
            b = _czero(n)
            b[p][q] = Fraction(1)
            b[q][p] = Fraction(1)
            emit(z, b, z, z)
            emit(z, z, b, z)
            emit(z, z, z, b)
    return out


def rotation_block():
    return [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]


def torus_basis(k):
    """R^k as k commuting rotation blocks (2k x 2k); -tr form is definite."""
    out = []
    for p in range(k):
        out.append(_embed_block(rotation_block(), 2 * k, 2 * p))
    return out


def product_algebra(name, factors):
    """Block-diagonal product; basis order follows the factor order."""
    sizes = [f.size for f in factors]
    total = sum(sizes)
    basis = []
    off = 0
    for f in factors:
        for b in f.basis:
            basis.append(_embed_block(b, total, off))
        off += f.size
    alg = MatrixLieAlgebra(name=name, basis=basis)
    alg.factor_sizes = sizes
    alg.factor_dims = [f.dim for f in factors]
    return alg


def structure_dump(alg: MatrixLieAlgebra) -> dict:
    """Debug/interop dump: basis matrices as rational strings, sparse c^k_ij."""
    struct = alg.structure_constants()
    sparse = []
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            for k, c in enumerate(struct[i][j]):
                if c != 0:
                    sparse.append({"i": i, "j": j, "k": k, "c": str(c)})
    return {
        "name": alg.name,
        "dim": alg.dim,
        "basis": [[[str(x) for x in row] for row in b] for b in alg.basis],
        "structure_constants": sparse,
    }


def build_algebra(name: str) -> MatrixLieAlgebra:
    """Classical algebras by name: so(n), su(n), sp(n), u(n), t(k).

    Products are available through `product_algebra`.
    """
    name = name.strip()
    if name.startswith("so(") and name.endswith(")"):
        n = int(name[3:-1])
        if not 2 <= n <= 7:
            raise ValueError(f"unsupported size in {name}")
        return MatrixLieAlgebra(name, so_basis(n))
    if name.startswith("su(") and name.endswith(")"):
        n = int(name[3:-1])
        if not 2 <= n <= 4:
            raise ValueError(f"unsupported size in {name}")
        return MatrixLieAlgebra(name, su_basis(n))
    if name.startswith("u(") and name.endswith(")"):
        n = int(name[2:-1])
        if not 1 <= n <= 4:
            raise ValueError(f"unsupported size in {name}")
        if n == 1:
            return MatrixLieAlgebra(name, torus_basis(1))
        return MatrixLieAlgebra(name, u_basis(n))
    if name.startswith("sp(") and name.endswith(")"):
        n = int(name[3:-1])
        if not 1 <= n <= 2:
            raise ValueError(f"unsupported size in {name}")
        return MatrixLieAlgebra(name, sp_basis(n))
    if name.startswith("t(") and name.endswith(")"):
        k = int(name[2:-1])
        if not 1 <= k <= 7:
            raise ValueError(f"unsupported size in {name}")
        return MatrixLieAlgebra(name, torus_basis(k))
    raise ValueError(f"unknown algebra name: {name!r}")


# ---------------------------------------------------------------------------
# isotropy modules
# ---------------------------------------------------------------------------

@dataclass
class IsotropyModule:
    """h-action on the reductive complement V, with finite generators.

    `action[k]` is the matrix of ad(h_k) on V in the V-basis; `gram` is the
    restricted invariant inner product; `brackets[(i, j)]` is the V-part of
    [v_i, v_j] (the structure constants of the invariant complex).
    """

    label: str
    dimV: int
    action: list
    gram: list
    generators: list = field(default_factory=list)  # (name, matrix) accepted
    brackets: dict = field(default_factory=dict)
    h_dim: int = 0
    ambient: object = None
    V_ambient: list = field(default_factory=list)

    def kernel_dim(self):
        """dim of {X in h : ad(X)|V = 0} -- must be 0 for effective entries."""
        if not self.action:
            return 0
        cols = [_flatten(a) for a in self.action]
        return len(nullspace(transpose(mat(cols))))


def reductive_complement(g: MatrixLieAlgebra, h_elements, generators=(),
                         label="") -> IsotropyModule:
    """Split g = h + V orthogonally for -tr(XY) and assemble the module.

    Raises when the trace form is not definite, when h is not a subalgebra,
    or when a generator fails to normalize the pair; [h, V] subset V is
    asserted exactly.
    """
    gram_g = g.trace_form()
    minors = _definite_check(gram_g)
    if not minors:
        raise ValueError(f"{g.name}: invariant trace form is not definite")
    hmat = [g.coords(x) for x in h_elements]
    if any(c is None for c in hmat):
        raise ValueError("subalgebra element outside the ambient algebra")
    if hmat and rank(hmat) != len(hmat):
        raise ValueError("subalgebra basis is linearly dependent")
    for i in range(len(h_elements)):
        for j in range(i + 1, len(h_elements)):
            br = commutator(h_elements[i], h_elements[j])
            if not in_span_matrices(h_elements, br):
                raise ValueError("h is not closed under the bracket")
    # V = trace-form orthogonal complement of h
    if hmat:
        vvecs = nullspace(mat_mul(hmat, gram_g))
    else:
        vvecs = [row[:] for row in identity(g.dim)]
    dimv = len(vvecs)
    v_ambient = [g.element(v) for v in vvecs]
    # change of basis g-coords -> (h | V) components
    cb = inverse(transpose(mat(hmat + vvecs))) if hmat else \
        inverse(transpose(mat(vvecs)))
    hdim = len(hmat)

    def split(xcoords):
        y = mat_vec(cb, xcoords)
        return y[:hdim], y[hdim:]

    action = []
    for he in h_elements:
        cols = []
        for ve in v_ambient:
            hpart, vpart = split(g.coords(commutator(he, ve)))
            if any(x != 0 for x in hpart):
                raise AssertionError("[h, V] escaped V; trace form broken?")
            cols.append(vpart)
        action.append(transpose(cols))
    brackets = {}
    for i in range(dimv):
        for j in range(i + 1, dimv):
            _, vpart = split(g.coords(commutator(v_ambient[i], v_ambient[j])))
            brackets[(i, j)] = vpart
    gram_v = [[sum(vvecs[i][a] * gram_g[a][b] * vvecs[j][b]
                   for a in range(g.dim) for b in range(g.dim))
               for j in range(dimv)] for i in range(dimv)]
    mod = IsotropyModule(label=label, dimV=dimv, action=action, gram=gram_v,
                         brackets=brackets, h_dim=hdim, ambient=g,
                         V_ambient=v_ambient)
    mod.h_ambient = list(h_elements)
    mod.V_coords = vvecs
    for name, fmat in generators:
        mod.generators.append((name, generator_v_matrix(g, hmat, vvecs, fmat)))
    # representation property of the isotropy action
    _check_rep_property(h_elements, action, g)
    return mod


def in_span_matrices(mats, x):
    a = transpose([_flatten(m) for m in mats])
    return solve(a, _flatten(x)) is not None


def generator_v_matrix(g, hmat, vvecs, fmat):
    """V-matrix of Ad_F for an ambient group element F; exact, validated."""
    finv = inverse(mat(fmat))
    imgs = []
    for b in g.basis:
        img = mat_mul(mat_mul(mat(fmat), b), finv)
        c = g.coords(img)
        if c is None:
            raise ValueError("generator does not normalize the algebra")
        imgs.append(c)
    # Ad_F in g-coords: columns are images of basis vectors
    adf = transpose(imgs)
    # h must be preserved
    for hrow in hmat:
        img = mat_vec(adf, hrow)
        if solve(transpose(mat(hmat)), img) is None:
            raise ValueError("generator does not normalize the subalgebra")
    vmat_rows = mat(vvecs)
    cols = []
    for v in vvecs:
        img = mat_vec(adf, v)
        coeff = solve(transpose(vmat_rows), img)
        if coeff is None:
            raise ValueError("generator does not preserve the complement")
        cols.append(coeff)
    return transpose(cols)


def _check_rep_property(h_elements, action, g):
    n = len(h_elements)
    for i in range(n):
        for j in range(i + 1, n):
            br = commutator(h_elements[i], h_elements[j])
            coeffs = solve(transpose([_flatten(x) for x in h_elements]),
                           _flatten(br))
            lhs = mat_sub(mat_mul(action[i], action[j]),
                          mat_mul(action[j], action[i]))
            rhs = [[Fraction(0)] * len(lhs) for _ in range(len(lhs))]
            for c, a in zip(coeffs, action):
                if c:
                    rhs = [[r + c * x for r, x in zip(rr, aa)]
                           for rr, aa in zip(rhs, a)]
            if lhs != rhs:
                raise AssertionError("isotropy action violates the brackets")


def _definite_check(gram):
    from .linalg import leading_principal_minors

    minors = leading_principal_minors(gram)
    return minors is not None and all(m > 0 for m in minors)


def module_from_action(label, action, gram=None) -> IsotropyModule:
    """Module directly from h-action matrices (no ambient pair).

    Used for representation-level entries; if no invariant inner product is
    supplied, one is computed as the unique invariant symmetric form.
    """
    dimv = len(action[0]) if action else 0
    if gram is None:
        sols = _invariant_symmetric_forms(action, [])
        if len(sols) != 1:
            raise ValueError("invariant inner product is not unique")
        gram = sols[0]
        d = gram[0][0]
        gram = [[x / d for x in row] for row in gram]
    return IsotropyModule(label=label, dimV=dimv, action=action, gram=gram,
                          h_dim=len(action))


# ---------------------------------------------------------------------------
# invariant dimensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvariantDims:
    d1: int
    d2: int
    d3: int


def _sym_index(n):
    return [(i, j) for i in range(n) for j in range(i, n)]


def _invariant_symmetric_forms(action, generators, n=None):
    """Basis of symmetric S with rho(X)^T S + S rho(X) = 0, F^T S F = S."""
    if n is None:
        n = len(action[0]) if action else len(generators[0])
    pairs = _sym_index(n)
    pos = {p: k for k, p in enumerate(pairs)}

    def sym_get(vec, i, j):
        return vec[pos[(i, j)]] if i <= j else vec[pos[(j, i)]]

    rows = []
    for a in action:
        for i in range(n):
            for j in range(i, n):
                row = [Fraction(0)] * len(pairs)
                for k in range(n):
                    # (A^T S)_{ij} = sum_k A_{ki} S_{kj}; (S A)_{ij} = S_{ik} A_{kj}
                    if a[k][i] != 0:
                        row[pos[(min(k, j), max(k, j))]] += a[k][i]
                    if a[k][j] != 0:
                        row[pos[(min(i, k), max(i, k))]] += a[k][j]
                if any(x != 0 for x in row):
                    rows.append(row)
    for f in generators:
        for i in range(n):
            for j in range(i, n):
                row = [Fraction(0)] * len(pairs)
                for k in range(n):
                    for l in range(n):
                        c = f[k][i] * f[l][j]
                        if c != 0:
                            row[pos[(min(k, l), max(k, l))]] += c
                row[pos[(i, j)]] -= 1
                if any(x != 0 for x in row):
                    rows.append(row)
    sols = nullspace(rows) if rows else [
        [Fraction(1) if t == s else Fraction(0) for t in range(len(pairs))]
        for s in range(len(pairs))]
    out = []
    for vec in sols:
        out.append([[sym_get(vec, i, j) for j in range(n)] for i in range(n)])
    return out


def lambda3_action_matrix(a, dim=7):
    """Matrix of the infinitesimal action on Lambda^3 coefficients."""
    idxs = list(combinations(range(1, dim + 1), 3))
    cols = [algebra_action(a, KForm.basis(dim, *idx)).coefficient_vector()
            for idx in idxs]
    return transpose(cols)


def lambda_k_pullback_matrix(f, k, dim=7):
    idxs = list(combinations(range(1, dim + 1), k))
    cols = [pullback(f, KForm.basis(dim, *idx)).coefficient_vector()
            for idx in idxs]
    return transpose(cols)


def invariant_3forms(m: IsotropyModule):
    """Exact basis of the invariant 3-forms on V (as KForms, dim 7)."""
    if m.dimV != 7:
        raise ValueError("invariant 3-forms require dim V = 7")
    mats = [lambda3_action_matrix(a) for a in m.action]
    for _, f in m.generators:
        p = lambda_k_pullback_matrix(f, 3)
        mats.append(mat_sub(p, identity(35)))
    vecs = intersect_nullspaces(mats) if mats else \
        [[Fraction(1) if t == s else Fraction(0) for t in range(35)]
         for s in range(35)]
    return [KForm.from_coefficient_vector(7, 3, v) for v in vecs]


def invariant_dims(m: IsotropyModule) -> InvariantDims:
    """(d1, d2, d3): invariant vectors, symmetric forms, 3-forms; exact.

    d3 comes from the direct Lambda^3 fixed-space computation; the identity
    d3 = d1 + d2 is a theorem only in the presence of a definite invariant
    form and is cross-checked by callers, not assumed here.
    """
    kill = list(m.action)
    for _, f in m.generators:
        kill.append(mat_sub(mat(f), identity(m.dimV)))
    d1 = len(intersect_nullspaces(kill)) if kill else m.dimV
    d2 = len(_invariant_symmetric_forms(m.action, [f for _, f in m.generators],
                                        n=m.dimV))
    d3 = len(invariant_3forms(m)) if m.dimV == 7 else None
    return InvariantDims(d1=d1, d2=d2, d3=d3)


# ---------------------------------------------------------------------------
# irreducible decomposition dimensions
# ---------------------------------------------------------------------------

def _commutant_selfadjoint(action, gram):
    """Basis of {C : [C, rho] = 0, C self-adjoint w.r.t. gram}."""
    n = len(gram)
    rows = []
    for a in action:
        for i in range(n):
            for j in range(n):
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    if a[i][k] != 0:
                        row[k * n + j] += a[i][k]
                    if a[k][j] != 0:
                        row[i * n + k] -= a[k][j]
                if any(x != 0 for x in row):
                    rows.append(row)
    # self-adjointness: (G C)^T = G C
    for i in range(n):
        for j in range(i + 1, n):
            row = [Fraction(0)] * (n * n)
            for k in range(n):
                if gram[i][k] != 0:
                    row[k * n + j] += gram[i][k]
                if gram[j][k] != 0:
                    row[k * n + i] -= gram[j][k]
            if any(x != 0 for x in row):
                rows.append(row)
    vecs = nullspace(rows) if rows else []
    return [[[v[i * n + j] for j in range(n)] for i in range(n)] for v in vecs]


def _restrict(mats, basis_vecs):
    """Restrict operators to an invariant subspace given by coordinate rows."""
    bt = transpose(mat(basis_vecs))
    out = []
    for a in mats:
        cols = []
        for v in basis_vecs:
            img = mat_vec(a, v)
            c = solve(bt, img)
            if c is None:
                raise AssertionError("subspace is not invariant")
            cols.append(c)
        out.append(transpose(cols))
    return out


def _poly_factors(matrix):
    """Distinct irreducible factors over Q of the characteristic polynomial."""
    from .linalg import charpoly

    coeffs = charpoly(matrix)
    x = sympy.Symbol("x")
    poly = sum(sympy.Rational(c.numerator, c.denominator) * x ** k
               for k, c in enumerate(coeffs))
    factors = sympy.factor_list(sympy.Poly(poly, x))[1]
    return [f for f, _ in factors]


def _eval_poly(fpoly, matrix):
    x = sympy.Symbol("x")
    coeffs = [Fraction(str(c)) for c in reversed(sympy.Poly(fpoly, x).all_coeffs())]
    n = len(matrix)
    acc = [[Fraction(0)] * n for _ in range(n)]
    power = identity(n)
    for c in coeffs:
        if c != 0:
            acc = [[a + c * p for a, p in zip(ra, rp)]
                   for ra, rp in zip(acc, power)]
        power = mat_mul(power, matrix)
    return acc


def irreducible_dims(m: IsotropyModule, seed=0):
    """Multiset of real-irreducible dimensions of the h-action on V.

    Finite generators are ignored.  The trivial isotypic part is the joint
    kernel of the action (rational); the rest is split with generic
    self-adjoint commutant elements.  Self-adjointness forces real
    eigenvalues, and an irreducible degree-d factor of the splitter's
    characteristic polynomial signals d Galois-conjugate irreducible pieces
    of equal dimension (counted, not exhibited).
    """
    triv = intersect_nullspaces(m.action) if m.action else \
        [[Fraction(1) if i == j else Fraction(0) for j in range(m.dimV)]
         for i in range(m.dimV)]
    dims = [1] * len(triv)
    if triv:
        rest = nullspace(mat_mul(mat(triv), m.gram))
    else:
        rest = [[Fraction(1) if i == j else Fraction(0) for j in range(m.dimV)]
                for i in range(m.dimV)]
    dims += _split_dims(m.action, m.gram, rest, seed)
    dims.sort()
    if sum(dims) != m.dimV:
        raise AssertionError("irreducible dimensions do not add up")
    return dims


def _splitter_candidates(k, seed, tries):
    """Deterministic stream of small integer coefficient vectors."""
    rng = random.Random(seed)
    for _ in range(tries):
        yield [rng.randint(-9, 9) for _ in range(k)]
    if k <= 4:
        from itertools import product as iproduct

        for vec in iproduct(range(-4, 5), repeat=k):
            if any(vec):
                yield list(vec)


def _split_dims(action, gram, basis_vecs, seed):
    dim = len(basis_vecs)
    if dim == 0:
        return []
    acts = _restrict(action, basis_vecs)
    gsub = _gram_restrict(gram, basis_vecs)
    sa = _commutant_selfadjoint(acts, gsub)
    if len(sa) <= 1:
        return [dim]
    for attempt, coeffs in enumerate(_splitter_candidates(len(sa), seed, 40)):
        c = [[sum(frac(cf) * s[i][j] for cf, s in zip(coeffs, sa))
              for j in range(dim)] for i in range(dim)]
        factors = _poly_factors(c)
        if len(factors) == 1:
            deg = int(sympy.degree(factors[0]))
            if deg == 1:
                continue  # scalar draw; retry
            # whole space with an irreducible splitter: d conjugate pieces
            # exactly when the self-adjoint commutant is the field itself
            if len(sa) == deg and dim % deg == 0:
                return [dim // deg] * deg
            continue
        pieces = []
        ok = True
        for f in factors:
            ker = nullspace(_eval_poly(f, c))
            if not ker:
                ok = False
                break
            sub = _restrict_vectors(basis_vecs, ker)
            deg = int(sympy.degree(f))
            inner = _split_dims(action, gram, sub, seed + attempt + 1)
            if deg == 1:
                pieces.extend(inner)
            elif len(inner) == 1:
                if len(ker) % deg:
                    ok = False
                    break
                pieces.extend([len(ker) // deg] * deg)
            else:
                pieces.extend(inner)
        if ok and sum(pieces) == dim:
            return pieces
    return [dim]


def _restrict_vectors(basis_vecs, coeff_vecs):
    """Turn coefficient vectors w.r.t. basis_vecs into ambient-coordinate rows."""
    out = []
    for cv in coeff_vecs:
        vec = [Fraction(0)] * len(basis_vecs[0])
        for c, b in zip(cv, basis_vecs):
            if c != 0:
                vec = [x + c * y for x, y in zip(vec, b)]
        out.append(vec)
    return out


def _gram_restrict(gram, basis_vecs):
    k = len(basis_vecs)
    return [[sum(basis_vecs[i][a] * gram[a][b] * basis_vecs[j][b]
                 for a in range(len(gram)) for b in range(len(gram)))
             for j in range(k)] for i in range(k)]


# ---------------------------------------------------------------------------
# definite / indefinite search over the invariant family
# ---------------------------------------------------------------------------

@dataclass
class ScanConfig:
    grid: int = 10_000
    random: int = 1_000
    seed: int = 0


def _primitive_int_vector(vec):
    denl = 1
    for c in vec:
        c = frac(c)
        denl = denl * c.denominator // math.gcd(denl, c.denominator)
    ints = [int(frac(c) * denl) for c in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return [x // g for x in ints] if g > 1 else ints


def _ray_grid(d, budget):
    """Deterministic projective grid of integer direction vectors."""
    if d == 1:
        return [(1,)]
    if d == 2:
        n = max(1, int(math.isqrt(budget) // 2) * 2)
        out = []
        for q in range(0, n + 1):
            for p in range(-n, n + 1):
                if (p, q) == (0, 0) or (q == 0 and p < 0):
                    continue
                if math.gcd(abs(p), q) > 1:
                    continue
                out.append((p, q))
        return out
    if d == 3:
        n = max(1, round(budget ** (1 / 3) / 2) * 2)
        out = []
        for r in range(0, n + 1):
            for q in range(-n, n + 1):
                for p in range(-n, n + 1):
                    if (p, q, r) == (0, 0, 0):
                        continue
                    if r == 0 and (q < 0 or (q == 0 and p < 0)):
                        continue
                    if math.gcd(math.gcd(abs(p), abs(q)), r) > 1:
                        continue
                    out.append((p, q, r))
        return out
    # high-dimensional families: basis directions and signed pairs only
    out = []
    for i in range(d):
        v = [0] * d
        v[i] = 1
        out.append(tuple(v))
    for i in range(d):
        for j in range(i + 1, d):
            for s in (1, -1):
                v = [0] * d
                v[i] = 1
                v[j] = s
                out.append(tuple(v))
    return out


def invariant_form_types(m: IsotropyModule, config: ScanConfig = None):
    """Scan the invariant 3-form family for definite and indefinite members.

    Every sample is classified exactly; a miss is only "not found at this
    resolution", never a nonexistence proof.  Returns a report dict.
    """
    config = config or ScanConfig()
    basis = invariant_3forms(m)
    d = len(basis)
    report = {"dim": d, "has_definite": False, "has_indefinite": False,
              "samples": 0, "definite_witness": None, "indefinite_witness": None}
    if d == 0:
        return report
    if d == 35:
        # the whole space: the two reference forms decide immediately
        report.update(has_definite=True, has_indefinite=True, samples=2,
                      note="full family; reference forms are witnesses")
        return report
    bvecs = [_primitive_int_vector(f.coefficient_vector()) for f in basis]

    def sample_vec(coeffs):
        return [sum(c * bv[k] for c, bv in zip(coeffs, bvecs))
                for k in range(35)]

    rng = random.Random(config.seed)
    samples = list(_ray_grid(d, config.grid))
    for _ in range(config.random):
        samples.append(tuple(rng.randint(-9, 9) for _ in range(d)))
    seen = 0
    for coeffs in samples:
        if all(c == 0 for c in coeffs):
            continue
        seen += 1
        cls = classify_coeffs(sample_vec(coeffs))
        if cls is Orbit3Class.DEFINITE and not report["has_definite"]:
            report["has_definite"] = True
            report["definite_witness"] = list(coeffs)
        elif cls is Orbit3Class.INDEFINITE and not report["has_indefinite"]:
            report["has_indefinite"] = True
            report["indefinite_witness"] = list(coeffs)
        if report["has_definite"] and report["has_indefinite"]:
            break
    report["samples"] = seen
    return report
