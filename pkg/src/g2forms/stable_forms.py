"""Orbit classification of 3-forms and 4-forms on R^7.

A 3-form t is stable when the symmetric bilinear form
    B(u, v) = (u ⌟ t) ^ (v ⌟ t) ^ t      (valued in Lambda^7, trivialized
                                           by w^{1..7})
is nondegenerate.  Its signature separates the two open GL(R^7)-orbits:
(7,0)/(0,7) for the definite orbit, (4,3)/(3,4) for the indefinite one.
All classification decisions here are exact; floating point only enters
the induced metric and Hodge star (ninth roots are irrational).
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations

from .linalg import (det, frac, leading_principal_minors, mat,
                     symmetric_signature)
from .multilinear import KForm, basis_vector, interior, sort_index, wedge

DIM = 7

#: the definite reference 3-form (identity-metric pattern)
PHI = KForm.make(7, 3, [
    ((1, 2, 3), 1), ((1, 4, 5), 1), ((1, 6, 7), 1), ((2, 4, 6), 1),
    ((2, 5, 7), -1), ((3, 4, 7), -1), ((3, 5, 6), -1),
])

#: the indefinite reference 3-form; PHI + PHITILDE = 2 w^123
PHITILDE = KForm.make(7, 3, [
    ((1, 2, 3), 1), ((1, 4, 5), -1), ((1, 6, 7), -1), ((2, 4, 6), -1),
    ((2, 5, 7), 1), ((3, 4, 7), 1), ((3, 5, 6), 1),
])

IDX3 = list(combinations(range(1, 8), 3))
IDX3_POS = {idx: p for p, idx in enumerate(IDX3)}


class Orbit3Class(Enum):
    DEFINITE = "definite"
    INDEFINITE = "indefinite"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class HitchinData:
    """Exact bilinear-form data of a 3-form: B, det B, and the signature."""

    B: list
    detB: Fraction
    signature: tuple


@dataclass(frozen=True)
class Metric4Data:
    """Bilinear form on covectors induced by a 4-form, in (w^{1..7})^2 units."""

    gdual: list
    det: Fraction


def _perm_sign(seq):
    _, sign = sort_index(seq)
    return sign


_HITCHIN_TABLE = None


def _hitchin_table():
    """Contraction table for B_ij = sum sign * t_I t_J t_K over triples.

    For each i <= j lists (posI, posJ, posK, sign) with i in I, j in J,
    K the complement of (I\\i) u (J\\j); built once, reused for every
    evaluation (the classification scans hit this hard).
    """
    global _HITCHIN_TABLE
    if _HITCHIN_TABLE is not None:
        return _HITCHIN_TABLE
    table = {}
    full = set(range(1, 8))
    for i in range(1, 8):
        for j in range(i, 8):
            entries = []
            for I in IDX3:
                if i not in I:
                    continue
                pi = I.index(i)
                I2 = I[:pi] + I[pi + 1:]
                si = 1 if pi % 2 == 0 else -1
                seti2 = set(I2)
                for J in IDX3:
                    if j not in J:
                        continue
                    pj = J.index(j)
                    J2 = J[:pj] + J[pj + 1:]
                    if seti2 & set(J2):
                        continue
                    sj = 1 if pj % 2 == 0 else -1
                    rest = full - seti2 - set(J2)
                    if len(rest) != 3:
                        continue
                    K = tuple(sorted(rest))
                    s = _perm_sign(I2 + J2 + K)
                    if s == 0:
                        continue
                    entries.append((IDX3_POS[I], IDX3_POS[J], IDX3_POS[K],
                                    si * sj * s))
            table[(i, j)] = entries
    _HITCHIN_TABLE = table
    return table


def _coeffs3(t: KForm):
    if t.dim != DIM or t.degree != 3:
        raise ValueError("expected a 3-form on R^7")
    return t.coefficient_vector()


def hitchin_matrix(coeffs):
    """Symmetric 7x7 matrix B for a dense 35-vector of 3-form coefficients."""
    table = _hitchin_table()
    b = [[0] * 7 for _ in range(7)]
    for i in range(1, 8):
        for j in range(i, 8):
            acc = 0
            for pi, pj, pk, s in table[(i, j)]:
                ci = coeffs[pi]
                if ci == 0:
                    continue
                cj = coeffs[pj]
                if cj == 0:
                    continue
                ck = coeffs[pk]
                if ck == 0:
                    continue
                acc += s * ci * cj * ck
            b[i - 1][j - 1] = acc
            b[j - 1][i - 1] = acc
    return b


def hitchin_bilinear(t: KForm) -> HitchinData:
    """Exact Hitchin data of a degree-3 form on R^7."""
    coeffs = _coeffs3(t)
    b = hitchin_matrix(coeffs)
    bq = mat(b)
    return HitchinData(B=bq, detB=det(bq), signature=symmetric_signature(bq))


def _integerize(coeffs):
    denlcm = 1
    for c in coeffs:
        c = frac(c)
        denlcm = denlcm * c.denominator // math.gcd(denlcm, c.denominator)
    return [int(frac(c) * denlcm) for c in coeffs]


def classify_coeffs(coeffs) -> Orbit3Class:
    """Exact three-way classification from a dense coefficient vector.

    Scaling to integers is harmless (B is homogeneous of degree 3).  The
    leading-principal-minor chain decides definiteness; a nondegenerate B
    that is not definite lies in the indefinite orbit, there being exactly
    two open orbits.
    """
    ints = _integerize(coeffs)
    if all(c == 0 for c in ints):
        return Orbit3Class.DEGENERATE
    b = hitchin_matrix(ints)
    minors = leading_principal_minors(b)
    if minors is None:
        bd = det(mat(b))
        return Orbit3Class.DEGENERATE if bd == 0 else Orbit3Class.INDEFINITE
    if minors[-1] == 0:
        return Orbit3Class.DEGENERATE
    if all(m > 0 for m in minors):
        return Orbit3Class.DEFINITE
    if all((m > 0) == (k % 2 == 1) for k, m in enumerate(minors)):
        return Orbit3Class.DEFINITE  # negative definite: signs -, +, -, ...
    return Orbit3Class.INDEFINITE


def classify3(t: KForm) -> Orbit3Class:
    """Orbit class of a 3-form on R^7 (exact)."""
    return classify_coeffs(_coeffs3(t))


_METRIC_CONST = 6  # pinned by the phi -> identity-metric oracle


def metric_from_3form(t: KForm):
    """Metric and volume of a stable 3-form (floats; ninth roots appear).

    Normalized so the definite reference form yields the identity metric;
    the indefinite case is signed so p < q, i.e. signature (3, 4).
    """
    data = hitchin_bilinear(t)
    if data.detB == 0:
        raise ValueError("degenerate 3-form has no metric")
    scale = float(_METRIC_CONST) ** (2.0 / 9.0) * float(abs(data.detB)) ** (1.0 / 9.0)
    g = [[float(x) / scale for x in row] for row in data.B]
    if data.signature in ((0, 7), (4, 3)):
        g = [[-x for x in row] for row in g]
    volume = math.sqrt(abs(_float_det(g)))
    return g, volume


def _float_det(m):
    import numpy as np

    return float(np.linalg.det(np.array(m, dtype=float)))


def _float_inv(m):
    import numpy as np

    return np.linalg.inv(np.array(m, dtype=float)).tolist()


def _star_with_metric(a: KForm, ginv, volume):
    """Hodge star of a w.r.t. an inverse metric and volume factor.

    Coefficients come back as floats; pure sign bookkeeping otherwise.
    star(e^I) = vol * sum_{I'} det(ginv[I, I']) eps(I', comp I') e^{comp I'}.
    """
    n = a.dim
    k = a.degree
    out = {}
    ksets = list(combinations(range(1, n + 1), k))
    full = set(range(1, n + 1))
    for I, c in a.terms.items():
        for I2 in ksets:
            d = _float_minor(ginv, I, I2)
            if d == 0.0:
                continue
            comp = tuple(sorted(full - set(I2)))
            s = _perm_sign(I2 + comp)
            key = comp
            out[key] = out.get(key, 0.0) + float(c) * d * s * volume
    terms = {kk: vv for kk, vv in out.items() if vv != 0.0}
    return KFormF(n, n - k, terms)


def _float_minor(g, rows, cols):
    k = len(rows)
    if k == 0:
        return 1.0
    if k == 1:
        return g[rows[0] - 1][cols[0] - 1]
    import numpy as np

    sub = [[g[r - 1][c - 1] for c in cols] for r in rows]
    return float(np.linalg.det(np.array(sub)))


class KFormF:
    """Float-coefficient k-form; same sparse layout as KForm.

    Used only downstream of the Hodge star, where exactness is lost anyway.
    """

    def __init__(self, dim, degree, terms):
        self.dim = dim
        self.degree = degree
        self.terms = dict(terms)

    def coefficient_vector(self):
        return [self.terms.get(idx, 0.0)
                for idx in combinations(range(1, self.dim + 1), self.degree)]

    def norm(self):
        return math.sqrt(sum(float(c) ** 2 for c in self.terms.values()))

    def dot(self, other):
        keys = set(self.terms) | set(other.terms)
        return sum(float(self.terms.get(k, 0.0)) * float(other.terms.get(k, 0.0))
                   for k in keys)

    def scaled(self, s):
        return KFormF(self.dim, self.degree, {k: s * v for k, v in self.terms.items()})

    def minus(self, other):
        keys = set(self.terms) | set(other.terms)
        return KFormF(self.dim, self.degree,
                      {k: float(self.terms.get(k, 0.0)) - float(other.terms.get(k, 0.0))
                       for k in keys})

    @staticmethod
    def from_exact(a: KForm):
        return KFormF(a.dim, a.degree, {k: float(v) for k, v in a.terms.items()})


def hodge_star(a: KForm, t: KForm):
    """Hodge star of a w.r.t. the metric and orientation of the stable form t.

    Float coefficients; assertions that depend on this should use a relative
    tolerance around 1e-9.
    """
    g, volume = metric_from_3form(t)
    ginv = _float_inv(g)
    if isinstance(a, KForm):
        return _star_with_metric(a, ginv, volume)
    raise TypeError("hodge_star expects an exact KForm input")


def star_euclidean(a: KForm) -> KForm:
    """Exact Hodge star for the identity metric and w^{1..7} orientation.

    This is the star of the definite reference form; it is used wherever an
    exact dual is required (module decompositions, reference 4-forms).
    """
    n = a.dim
    full = set(range(1, n + 1))
    items = []
    for I, c in a.terms.items():
        comp = tuple(sorted(full - set(I)))
        s = _perm_sign(I + comp)
        items.append((comp, c * s))
    return KForm.make(n, n - a.degree, items)


#: exact dual 4-form of the definite reference (identity metric)
PSI4 = star_euclidean(PHI)


def metric_from_4form(p: KForm) -> Metric4Data:
    """Exact covector bilinear form of a 4-form on R^7.

    gdual(X*, Y*) = <P_X ^ P_Y, p> where P_X is the bivector with
    iota_{P_X} vol = X* ^ p; the value sits in (Lambda^7)^2, trivialized by
    (w^{1..7})^2.  Cubic in p; stability is det(gdual) != 0.
    """
    if p.dim != DIM or p.degree != 4:
        raise ValueError("expected a 4-form on R^7")
    bivectors = []
    full = set(range(1, 8))
    for i in range(1, 8):
        f5 = wedge(KForm.basis(7, i), p)
        biv = {}
        for T, c in f5.terms.items():
            K = tuple(sorted(full - set(T)))
            s = _perm_sign(K + T)
            biv[K] = c * s
        bivectors.append(biv)
    g = [[Fraction(0)] * 7 for _ in range(7)]
    for i in range(7):
        for j in range(i, 7):
            acc = Fraction(0)
            for K, c in bivectors[i].items():
                for K2, c2 in bivectors[j].items():
                    if set(K) & set(K2):
                        continue
                    four = K + K2
                    key, s = sort_index(four)
                    if s == 0:
                        continue
                    acc += c * c2 * s * p.terms.get(key, Fraction(0))
            g[i][j] = acc
            g[j][i] = acc
    return Metric4Data(gdual=g, det=det(g))


def four_form_volume(p: KForm) -> float:
    """Volume factor of a stable 4-form: |det gdual|^(1/12)."""
    d = metric_from_4form(p).det
    if d == 0:
        raise ValueError("degenerate 4-form has no volume")
    return float(abs(d)) ** (1.0 / 12.0)


def classification_report(t: KForm) -> dict:
    """CLI-facing classification record with exact rational det B."""
    data = hitchin_bilinear(t)
    cls = classify3(t)
    return {
        "class": cls.value,
        "detB": str(data.detB),
        "signature": list(data.signature),
    }


# ---------------------------------------------------------------------------
# module decompositions under the annihilator algebra of PHI
# ---------------------------------------------------------------------------

def annihilator_of_form(t: KForm):
    """Basis of {A in gl(R^n) : algebra_action(A, t) = 0}, exact."""
    from .linalg import nullspace
    from .multilinear import algebra_action

    n = t.dim
    cols = []
    for r in range(n):
        for c in range(n):
            unit = [[Fraction(0)] * n for _ in range(n)]
            unit[r][c] = Fraction(1)
            cols.append(algebra_action(unit, t).coefficient_vector())
    rows = [[cols[u][e] for u in range(n * n)] for e in range(len(cols[0]))]
    basis = nullspace(rows)
    return [[[v[n * r + c] for c in range(n)] for r in range(n)]
            for v in basis]


_G2_BASIS = None


def annihilator_g2():
    """Basis of {A in gl(R^7) : algebra_action(A, PHI) = 0} (14 matrices).

    Exact null-space computation; the result is the compact stabilizer
    algebra of the definite reference form, contained in so(7).
    """
    global _G2_BASIS
    if _G2_BASIS is None:
        _G2_BASIS = annihilator_of_form(PHI)
    return _G2_BASIS


def _two_form_of_matrix(a):
    """2-form alpha(u, v) = <A u, v> for the identity metric."""
    items = []
    for i in range(1, 8):
        for j in range(i + 1, 8):
            c = a[j - 1][i - 1]  # alpha(e_i, e_j) = (A e_i)_j
            if c != 0:
                items.append(((i, j), c))
    return KForm.make(7, 2, items)


_DECOMP2 = None
_DECOMP3 = None


def _decomp2_setup():
    global _DECOMP2
    if _DECOMP2 is None:
        from .linalg import inverse, transpose

        basis14 = [_two_form_of_matrix(a) for a in annihilator_g2()]
        basis7 = [interior(basis_vector(7, i), PHI) for i in range(1, 8)]
        cols = [f.coefficient_vector() for f in basis14 + basis7]
        minv = inverse(transpose(mat(cols)))
        _DECOMP2 = (basis14, basis7, minv)
    return _DECOMP2


def decompose2(a: KForm):
    """Split a 2-form into its 14- and 7-dimensional isotypic parts.

    part14 is the image of the annihilator algebra under the metric
    identification; part7 is spanned by the e_i ⌟ PHI.  Exact.
    """
    if a.dim != DIM or a.degree != 2:
        raise ValueError("expected a 2-form on R^7")
    basis14, basis7, minv = _decomp2_setup()
    from .linalg import mat_vec

    x = mat_vec(minv, a.coefficient_vector())
    part14 = KForm.zero(7, 2)
    for c, f in zip(x[:14], basis14):
        part14 = part14 + c * f
    part7 = a - part14
    return part14, part7


def _decomp3_setup():
    global _DECOMP3
    if _DECOMP3 is None:
        from .linalg import inverse, nullspace, transpose

        basis1 = [PHI]
        basis7 = [star_euclidean(wedge(PHI, KForm.basis(7, i)))
                  for i in range(1, 8)]
        span8 = [f.coefficient_vector() for f in basis1 + basis7]
        basis27_vecs = nullspace(span8)  # orthocomplement via coefficient dot
        basis27 = [KForm.from_coefficient_vector(7, 3, v) for v in basis27_vecs]
        cols = [f.coefficient_vector() for f in basis1 + basis7 + basis27]
        minv = inverse(transpose(mat(cols)))
        _DECOMP3 = (basis1, basis7, basis27, minv)
    return _DECOMP3


def decompose3(a: KForm):
    """Split a 3-form into the 1-, 7-, and 27-dimensional isotypic parts."""
    if a.dim != DIM or a.degree != 3:
        raise ValueError("expected a 3-form on R^7")
    basis1, basis7, basis27, minv = _decomp3_setup()
    from .linalg import mat_vec

    x = mat_vec(minv, a.coefficient_vector())
    part1 = x[0] * PHI
    part7 = KForm.zero(7, 3)
    for c, f in zip(x[1:8], basis7):
        part7 = part7 + c * f
    part27 = a - part1 - part7
    return part1, part7, part27


def traceless_to_27(s):
    """Map a traceless symmetric matrix into the 27-part of Lambda^3.

    The symmetrized version of S |-> sum_ij S_ij e^i ^ star(e^j ^ star phi);
    injective on traceless symmetric input, with image the 27-dimensional
    isotypic component.
    """
    acc = KForm.zero(7, 3)
    for i in range(1, 8):
        ei = KForm.basis(7, i)
        for j in range(1, 8):
            c = frac(s[i - 1][j - 1])
            if c == 0:
                continue
            acc = acc + c * wedge(ei, star_euclidean(
                wedge(KForm.basis(7, j), PSI4)))
    return acc
