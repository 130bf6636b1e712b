"""Exact exterior algebra on R^n for small n (n <= 8 in practice).

A k-form is stored sparsely as a map from strictly increasing 1-based index
tuples to rational coefficients.  All operations are pure and exact; values
are immutable by convention (never mutate ``terms`` after construction).

The top exterior power is identified with scalars through the basis form
e^1 ^ ... ^ e^n, so "volume-valued" quantities are returned as the
coefficient with respect to that form.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
import json

from .linalg import frac, mat


def sort_index(idx):
    """Sort an index tuple, returning (tuple, sign); sign 0 on repeats."""
    idx = list(idx)
    sign = 1
    # insertion sort; counts transpositions exactly
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(idx, idx[1:]):
        if a == b:
            return tuple(idx), 0
    return tuple(idx), sign


@dataclass(frozen=True)
class KForm:
    """Alternating k-form with exact rational coefficients."""

    dim: int
    degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 0 or (self.degree > self.dim and self.terms):
            # the zero form of degree > dim is tolerated as a wedge result
            raise ValueError(f"degree {self.degree} out of range for dim {self.dim}")
        for idx in self.terms:
            if len(idx) != self.degree:
                raise ValueError(f"index tuple {idx} has wrong length")
            if any(not (1 <= i <= self.dim) for i in idx):
                raise ValueError(f"index out of range in {idx}")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} not strictly increasing")

    @staticmethod
    def make(dim, degree, items=()):
        """Build a form from (index_tuple, coefficient) pairs.

        Tuples may come in any order; they are sorted with sign and repeated
        indices drop out.  Zero coefficients are never stored.
        """
        terms = {}
        for idx, c in items:
            key, sign = sort_index(idx)
            if sign == 0:
                continue
            c = frac(c) * sign
            acc = terms.get(key, Fraction(0)) + c
            if acc == 0:
                terms.pop(key, None)
            else:
                terms[key] = acc
        return KForm(dim, degree, terms)

    @staticmethod
    def zero(dim, degree):
        return KForm(dim, degree, {})

    @staticmethod
    def basis(dim, *idx):
        """The basis form e^{i1} ^ ... ^ e^{ik} (w^{i1...ik})."""
        return KForm.make(dim, len(idx), [(tuple(idx), 1)])

    def is_zero(self):
        return not self.terms

    def coeff(self, *idx):
        key, sign = sort_index(idx)
        if sign == 0:
            return Fraction(0)
        return sign * self.terms.get(key, Fraction(0))

    def __add__(self, other):
        self._check_match(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            acc = terms.get(k, Fraction(0)) + v
            if acc == 0:
                terms.pop(k, None)
            else:
                terms[k] = acc
        return KForm(self.dim, self.degree, terms)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __rmul__(self, c):
        c = frac(c)
        if c == 0:
            return KForm.zero(self.dim, self.degree)
        return KForm(self.dim, self.degree, {k: c * v for k, v in self.terms.items()})

    __mul__ = __rmul__

    def _check_match(self, other):
        if self.dim != other.dim or self.degree != other.degree:
            raise ValueError("form dimension/degree mismatch")

    def __eq__(self, other):
        return (isinstance(other, KForm) and self.dim == other.dim
                and self.degree == other.degree and self.terms == other.terms)

    def norm1(self):
        return sum(abs(c) for c in self.terms.values())

    def dot(self, other):
        """Coefficient dot product in the sorted-tuple basis."""
        self._check_match(other)
        small, big = (self.terms, other.terms)
        if len(big) < len(small):
            small, big = big, small
        return sum(c * big.get(k, Fraction(0)) for k, c in small.items())

    def coefficient_vector(self):
        """Dense coefficient vector over the sorted k-subset basis."""
        return [self.terms.get(idx, Fraction(0))
                for idx in combinations(range(1, self.dim + 1), self.degree)]

    @staticmethod
    def from_coefficient_vector(dim, degree, vec):
        idxs = list(combinations(range(1, dim + 1), degree))
        if len(vec) != len(idxs):
            raise ValueError("coefficient vector has wrong length")
        return KForm(dim, degree,
                     {idx: frac(c) for idx, c in zip(idxs, vec) if c != 0})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for idx in sorted(self.terms):
            c = self.terms[idx]
            name = "w" + "".join(str(i) for i in idx) if idx else "1"
            parts.append(f"{c}*{name}" if idx else f"{c}")
        return " + ".join(parts).replace("+ -", "- ")


def wedge(a: KForm, b: KForm) -> KForm:
    """Exterior product; returns the zero form when the degree exceeds n."""
    if a.dim != b.dim:
        raise ValueError("wedge: dimension mismatch")
    deg = a.degree + b.degree
    if deg > a.dim:
        return KForm.zero(a.dim, deg)
    out = {}
    for ia, ca in a.terms.items():
        sa = set(ia)
        for ib, cb in b.terms.items():
            if sa & set(ib):
                continue
            key, sign = sort_index(ia + ib)
            c = ca * cb * sign
            acc = out.get(key, Fraction(0)) + c
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc
    return KForm(a.dim, deg, out)


def wedge_all(forms):
    it = iter(forms)
    acc = next(it)
    for f in it:
        acc = wedge(acc, f)
    return acc


def interior(v, a: KForm) -> KForm:
    """Interior product v ⌟ a for a coordinate vector v (length = dim)."""
    if len(v) != a.dim:
        raise ValueError("interior: dimension mismatch")
    if a.degree == 0:
        raise ValueError("interior product of a 0-form")
    out = {}
    for idx, c in a.terms.items():
        for p, i in enumerate(idx):
            vi = v[i - 1]
            if vi == 0:
                continue
            key = idx[:p] + idx[p + 1:]
            contrib = c * frac(vi) * (1 if p % 2 == 0 else -1)
            acc = out.get(key, Fraction(0)) + contrib
            if acc == 0:
                out.pop(key, None)
            else:
                out[key] = acc
    return KForm(a.dim, a.degree - 1, out)


def basis_vector(dim, i):
    return [Fraction(1) if j == i - 1 else Fraction(0) for j in range(dim)]


def _minor_det(m, rows, cols):
    k = len(rows)
    if k == 1:
        return m[rows[0]][cols[0]]
    if k == 2:
        return (m[rows[0]][cols[0]] * m[rows[1]][cols[1]]
                - m[rows[0]][cols[1]] * m[rows[1]][cols[0]])
    if k == 3:
        a, b, c = rows
        d, e, f = cols
        return (m[a][d] * (m[b][e] * m[c][f] - m[b][f] * m[c][e])
                - m[a][e] * (m[b][d] * m[c][f] - m[b][f] * m[c][d])
                + m[a][f] * (m[b][d] * m[c][e] - m[b][e] * m[c][d]))
    # general fallback (Laplace along the first row)
    total = Fraction(0)
    for p, col in enumerate(cols):
        sub = _minor_det(m, rows[1:], cols[:p] + cols[p + 1:])
        total += (-1) ** p * m[rows[0]][col] * sub
    return total


def pullback(m, a: KForm) -> KForm:
    """Pullback of a along the linear map m: (m* a)(v...) = a(m v...)."""
    n = a.dim
    if len(m) != n or any(len(row) != n for row in m):
        raise ValueError("pullback: map shape mismatch")
    if a.degree == 0:
        return a
    mm = mat(m)
    out = {}
    for jdx in combinations(range(1, n + 1), a.degree):
        cols = [j - 1 for j in jdx]
        total = Fraction(0)
        for idx, c in a.terms.items():
            rows = [i - 1 for i in idx]
            d = _minor_det(mm, rows, cols)
            if d != 0:
                total += c * d
        if total != 0:
            out[jdx] = total
    return KForm(n, a.degree, out)


def algebra_action(m, a: KForm) -> KForm:
    """Infinitesimal action (m . a)(v...) = -sum_i a(v1, ..., m v_i, ..., vk).

    This is the derivative at t = 0 of pullback(exp(-t m), a); annihilators of
    a form computed with it are the stabilizer subalgebras.
    """
    n = a.dim
    if len(m) != n or any(len(row) != n for row in m):
        raise ValueError("algebra_action: map shape mismatch")
    if a.degree == 0:
        return KForm.zero(n, 0)
    out = {}
    for idx, c in a.terms.items():
        for p, i in enumerate(idx):
            # replace slot p (covariant index i) by every j with m[i][j] != 0
            row = m[i - 1]
            for j in range(1, n + 1):
                mij = row[j - 1]
                if mij == 0:
                    continue
                new_idx = idx[:p] + (j,) + idx[p + 1:]
                key, sign = sort_index(new_idx)
                if sign == 0:
                    continue
                contrib = -c * frac(mij) * sign
                acc = out.get(key, Fraction(0)) + contrib
                if acc == 0:
                    out.pop(key, None)
                else:
                    out[key] = acc
    return KForm(n, a.degree, out)


def form_to_json(a: KForm) -> dict:
    """JSON object for a form: exact rational coefficient strings."""
    return {
        "dim": a.dim,
        "degree": a.degree,
        "terms": [{"idx": list(idx), "c": str(a.terms[idx])}
                  for idx in sorted(a.terms)],
    }


def form_from_json(obj) -> KForm:
    try:
        dim = int(obj["dim"])
        degree = int(obj["degree"])
        items = [(tuple(int(i) for i in t["idx"]), Fraction(t["c"]))
                 for t in obj["terms"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed form object: {exc}") from exc
    return KForm.make(dim, degree, items)


def load_form(path) -> KForm:
    with open(path) as fh:
        return form_from_json(json.load(fh))
