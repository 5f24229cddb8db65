"""Exterior algebra over Q(sqrt2): alternating forms, wedge, interior
product, gl-action and the Hodge star of an exact metric.

Forms are sparse: a map from strictly increasing 1-based index tuples to
nonzero scalars.  Index conventions follow the usual e^{127}-style
notation, so ``KForm.basis(7, 1, 2, 7)`` is e^127 on R^7.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .linalg import Matrix
from .scalars import ONE, ZERO, Scalar, as_scalar


class DimensionMismatchError(ValueError):
    pass


class DegenerateMetricError(ValueError):
    pass


def sort_indices(idx: Sequence[int]) -> tuple[tuple[int, ...] | None, int]:
    """Sort an index tuple, returning (sorted_tuple, permutation_sign).

    Repeated indices give (None, 0).
    """
    lst = list(idx)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] >= lst[j]:
            if lst[j - 1] == lst[j]:
                return None, 0
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return tuple(lst), sign


class KForm:
    """Alternating k-form on an n-dimensional space."""

    __slots__ = ("dim", "degree", "_t")

    def __init__(self, dim: int, degree: int, terms: Mapping | None = None):
        if degree < 0 or (degree > dim and terms):
            # degree > dim is allowed only for the zero form of a trivial space
            raise ValueError(f"degree {degree} out of range for dim {dim}")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "degree", degree)
        clean: dict[tuple[int, ...], Scalar] = {}
        for idx, c in (terms or {}).items():
            c = as_scalar(c)
            if c.is_zero():
                continue
            tup = tuple(idx)
            if len(tup) != degree:
                raise ValueError(f"index {tup} has wrong length for degree {degree}")
            if any(i < 1 or i > dim for i in tup):
                raise ValueError(f"index {tup} out of range 1..{dim}")
            if any(tup[i] >= tup[i + 1] for i in range(len(tup) - 1)):
                raise ValueError(f"index {tup} not strictly increasing")
            clean[tup] = c
        object.__setattr__(self, "_t", clean)

    def __setattr__(self, name, value):
        raise AttributeError("KForm is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def basis(dim: int, *indices: int) -> "KForm":
        return KForm(dim, len(indices), {tuple(indices): ONE})

    @staticmethod
    def zero(dim: int, degree: int) -> "KForm":
        return KForm(dim, degree, {})

    @staticmethod
    def constant(dim: int, value) -> "KForm":
        return KForm(dim, 0, {(): as_scalar(value)})

    @staticmethod
    def build(dim: int, degree: int, terms: Iterable[tuple]) -> "KForm":
        """Accumulate (coef, i1, i2, ...) terms, sorting indices with signs."""
        acc: dict[tuple[int, ...], Scalar] = {}
        for coef, *idx in terms:
            tup, sg = sort_indices(idx)
            if sg == 0:
                continue
            c = as_scalar(coef)
            cur = acc.get(tup, ZERO) + (c if sg > 0 else -c)
            if cur.is_zero():
                acc.pop(tup, None)
            else:
                acc[tup] = cur
        return KForm(dim, degree, acc)

    # -- access --------------------------------------------------------------

    def items(self):
        return self._t.items()

    def coefficient(self, *indices: int) -> Scalar:
        tup, sg = sort_indices(indices)
        if sg == 0:
            return ZERO
        c = self._t.get(tup, ZERO)
        return c if sg > 0 else -c

    def is_zero(self) -> bool:
        return not self._t

    def support(self) -> list[tuple[int, ...]]:
        return sorted(self._t)

    # -- algebra -------------------------------------------------------------

    def _check(self, other: "KForm"):
        if self.dim != other.dim:
            raise DimensionMismatchError(f"dim {self.dim} vs {other.dim}")

    def __add__(self, other: "KForm") -> "KForm":
        self._check(other)
        if self.degree != other.degree:
            raise DimensionMismatchError("degree mismatch in addition")
        t = dict(self._t)
        for idx, c in other._t.items():
            cur = t.get(idx, ZERO) + c
            if cur.is_zero():
                t.pop(idx, None)
            else:
                t[idx] = cur
        return KForm(self.dim, self.degree, t)

    def __sub__(self, other: "KForm") -> "KForm":
        return self + other.scale(-1)

    def __neg__(self) -> "KForm":
        return self.scale(-1)

    def scale(self, c) -> "KForm":
        c = as_scalar(c)
        if c.is_zero():
            return KForm(self.dim, self.degree, {})
        return KForm(self.dim, self.degree, {i: c * v for i, v in self._t.items()})

    def __rmul__(self, c) -> "KForm":
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, KForm):
            return NotImplemented
        return (self.dim, self.degree, self._t) == (other.dim, other.degree, other._t)

    def __hash__(self):
        return hash((self.dim, self.degree, tuple(sorted(self._t.items()))))

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for idx in sorted(self._t):
            c = self._t[idx]
            if idx == ():
                parts.append(f"({c})")
                continue
            label = "".join(map(str, idx)) if all(i <= 9 for i in idx) else ",".join(map(str, idx))
            parts.append(f"({c})*e{label}")
        return " + ".join(parts)

    def __repr__(self):
        return f"KForm({self.dim},{self.degree}: {self})"

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "degree": self.degree,
            "terms": [
                {"idx": list(idx), "coef": str(c)} for idx, c in sorted(self._t.items())
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(data: dict) -> "KForm":
        terms = {tuple(t["idx"]): Scalar.from_string(str(t["coef"])) for t in data["terms"]}
        return KForm(int(data["dim"]), int(data["degree"]), terms)

    @staticmethod
    def from_json(text: str) -> "KForm":
        return KForm.from_json_dict(json.loads(text))


class Endo:
    """A square matrix read as an endomorphism in a fixed basis."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Matrix):
        if matrix.rows != matrix.cols:
            raise ValueError("endomorphism matrix must be square")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("Endo is immutable")


# -- operations ----------------------------------------------------------------


def wedge(a: KForm, b: KForm) -> KForm:
    """Exterior product a ^ b."""
    a._check(b)
    if a.degree + b.degree > a.dim:
        return KForm(a.dim, a.degree + b.degree, {})
    acc: dict[tuple[int, ...], Scalar] = {}
    for i, c in a._t.items():
        for j, d in b._t.items():
            tup, sg = sort_indices(i + j)
            if sg == 0:
                continue
            v = c * d
            cur = acc.get(tup, ZERO) + (v if sg > 0 else -v)
            if cur.is_zero():
                acc.pop(tup, None)
            else:
                acc[tup] = cur
    return KForm(a.dim, a.degree + b.degree, acc)


def wedge_all(*forms: KForm) -> KForm:
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def interior(vector: Sequence, a: KForm) -> KForm:
    """Interior product v -| a, inserting v into the first slot."""
    if a.degree == 0:
        raise ValueError("interior product needs degree >= 1")
    v = [as_scalar(x) for x in vector]
    if len(v) != a.dim:
        raise DimensionMismatchError("vector length must equal form dimension")
    acc: dict[tuple[int, ...], Scalar] = {}
    for idx, c in a._t.items():
        for pos, i in enumerate(idx):
            vi = v[i - 1]
            if vi.is_zero():
                continue
            rest = idx[:pos] + idx[pos + 1 :]
            term = vi * c
            if pos % 2:
                term = -term
            cur = acc.get(rest, ZERO) + term
            if cur.is_zero():
                acc.pop(rest, None)
            else:
                acc[rest] = cur
    return KForm(a.dim, a.degree - 1, acc)


def gl_action(endo: Matrix | Endo, a: KForm) -> KForm:
    """Derivation action of gl(n) on forms, pinned by (A.al)(v) = -al(Av)
    on 1-forms so that the almost abelian differential reads d rho = f^n ^ A.rho.
    """
    m = endo.matrix if isinstance(endo, Endo) else endo
    if m.rows != a.dim or m.cols != a.dim:
        raise DimensionMismatchError("endomorphism size must match form dimension")
    acc: dict[tuple[int, ...], Scalar] = {}
    rows = [m.row(i) for i in range(m.rows)]
    for idx, c in a._t.items():
        for pos, ip in enumerate(idx):
            row = rows[ip - 1]
            for j in range(a.dim):
                co = row[j]
                if co.is_zero():
                    continue
                tup, sg = sort_indices(idx[:pos] + (j + 1,) + idx[pos + 1 :])
                if sg == 0:
                    continue
                term = co * c
                if sg > 0:
                    term = -term
                cur = acc.get(tup, ZERO) + term
                if cur.is_zero():
                    acc.pop(tup, None)
                else:
                    acc[tup] = cur
    return KForm(a.dim, a.degree, acc)


def pullback(m: Matrix, a: KForm) -> KForm:
    """Pullback of ``a`` along the linear map with matrix ``m``:
    (m^* a)(v_1, ..., v_k) = a(m v_1, ..., m v_k).
    """
    if m.rows != a.dim or m.cols != a.dim:
        raise DimensionMismatchError("matrix size must match form dimension")
    n = a.dim
    rows = [m.row(i) for i in range(n)]
    acc: dict[tuple[int, ...], Scalar] = {}
    for idx, c in a._t.items():
        # expand the product of pulled-back 1-forms m^* e^i = sum_j m[i-1][j] e^{j+1}
        partial: list[tuple[tuple[int, ...], Scalar]] = [((), c)]
        for i in idx:
            row = rows[i - 1]
            nxt: list[tuple[tuple[int, ...], Scalar]] = []
            for tup, coef in partial:
                for j in range(n):
                    mij = row[j]
                    if mij.is_zero():
                        continue
                    nxt.append((tup + (j + 1,), coef * mij))
            partial = nxt
        for tup, coef in partial:
            stup, sg = sort_indices(tup)
            if sg == 0:
                continue
            cur = acc.get(stup, ZERO) + (coef if sg > 0 else -coef)
            if cur.is_zero():
                acc.pop(stup, None)
            else:
                acc[stup] = cur
    return KForm(a.dim, a.degree, acc)


def form_inner(a: KForm, b: KForm, metric_inverse: Matrix) -> Scalar:
    """Metric pairing <a, b>_g on k-forms, via Gram minors of g^{-1}."""
    if a.degree != b.degree:
        raise DimensionMismatchError("degree mismatch in form inner product")
    if a.degree == 0:
        av = a._t.get((), ZERO)
        bv = b._t.get((), ZERO)
        return av * bv
    acc = ZERO
    for i_idx, c in a._t.items():
        for j_idx, d in b._t.items():
            sub = Matrix([[metric_inverse[i - 1, j - 1] for j in j_idx] for i in i_idx])
            v = sub.det()
            if not v.is_zero():
                acc = acc + c * d * v
    return acc


def hodge_star(a: KForm, metric: Matrix, orientation_vol: KForm) -> KForm:
    """Hodge dual pinned by alpha ^ star(beta) = <alpha, beta>_g * orientation_vol."""
    n = a.dim
    if metric.rows != n or metric.cols != n:
        raise DimensionMismatchError("metric size must match form dimension")
    if orientation_vol.degree != n or orientation_vol.is_zero():
        raise ValueError("orientation volume must be a nonzero top form")
    try:
        ginv = metric.inverse()
    except ZeroDivisionError as exc:
        raise DegenerateMetricError("metric is degenerate") from exc
    v0 = orientation_vol.coefficient(*range(1, n + 1))
    full = tuple(range(1, n + 1))
    acc: dict[tuple[int, ...], Scalar] = {}
    k = a.degree
    for idx in combinations(full, k) if k > 0 else [()]:
        val = form_inner(KForm(n, k, {tuple(idx): ONE}), a, ginv)
        if val.is_zero():
            continue
        comp = tuple(x for x in full if x not in idx)
        _, sg = sort_indices(idx + comp)
        term = v0 * val
        if sg < 0:
            term = -term
        cur = acc.get(comp, ZERO) + term
        if cur.is_zero():
            acc.pop(comp, None)
        else:
            acc[comp] = cur
    return KForm(n, n - k, acc)
