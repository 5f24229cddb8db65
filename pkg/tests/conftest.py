"""Shared helpers: seeded random generators for exact objects and
independent oracles used to cross-check the library's own routines."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from g2aa.exterior import KForm, wedge
from g2aa.liealg import AlmostAbelianAlgebra
from g2aa.linalg import Matrix
from g2aa.scalars import ONE, ZERO, Scalar


@pytest.fixture
def rng():
    return random.Random(20240811)


def random_scalar(rng, span=4, sqrt2=True):
    a = Fraction(rng.randint(-span, span), rng.randint(1, 3))
    b = Fraction(rng.randint(-span, span), rng.randint(1, 3)) if sqrt2 else 0
    return Scalar(a, b)


def random_matrix(rng, rows, cols=None, span=3, sqrt2=False):
    cols = rows if cols is None else cols
    return Matrix(
        [[random_scalar(rng, span, sqrt2) for _ in range(cols)] for _ in range(rows)]
    )


def random_unimodular(rng, n, shears=6):
    """Product of integer shears and permutation swaps: det = +-1, exact."""
    m = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for _ in range(shears):
        i, j = rng.sample(range(n), 2)
        c = Scalar(rng.randint(-2, 2))
        for k in range(n):
            m[i][k] = m[i][k] + c * m[j][k]
        if rng.random() < 0.3:
            a, b = rng.sample(range(n), 2)
            m[a], m[b] = m[b], m[a]
    return Matrix(m)


def random_form(rng, dim, degree, terms=3, span=3, sqrt2=False):
    tuples = list(combinations(range(1, dim + 1), degree))
    chosen = rng.sample(tuples, min(terms, len(tuples)))
    return KForm(dim, degree, {t: random_scalar(rng, span, sqrt2) for t in chosen})


def random_algebra(rng, n=7, span=2):
    return AlmostAbelianAlgebra(n, random_matrix(rng, n - 1, span=span))


# -- independent oracles -----------------------------------------------------


def inversion_sign(seq):
    """Permutation sign by counting inversions (used as the wedge oracle)."""
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
            elif seq[i] == seq[j]:
                return 0
    return sign


def oracle_differential(algebra: AlmostAbelianAlgebra, a: KForm) -> KForm:
    """Chevalley-Eilenberg differential computed directly from brackets:
    (d a)(X_0..X_k) = sum_{i<j} (-1)^{i+j} a([X_i, X_j], ..hat i..hat j..).

    Completely independent of the gl-action route used by the library.
    """
    n = algebra.n
    k = a.degree
    out = {}
    for idx in combinations(range(1, n + 1), k + 1):
        acc = ZERO
        for p in range(k + 1):
            for q in range(p + 1, k + 1):
                br = algebra.bracket(idx[p], idx[q])
                rest = [idx[r] for r in range(k + 1) if r not in (p, q)]
                val = ZERO
                for m, c in enumerate(br):
                    if c.is_zero():
                        continue
                    seq = [m + 1] + rest
                    sg = inversion_sign(seq)
                    if sg == 0:
                        continue
                    coeff = a.coefficient(*sorted(seq))
                    if not coeff.is_zero():
                        val = val + (c if sg > 0 else -c) * coeff
                if not val.is_zero():
                    acc = acc + (-val if (p + q) % 2 else val)
        if not acc.is_zero():
            out[idx] = acc
    return KForm(n, k + 1, out)


def oracle_form_inner(a: KForm, b: KForm, metric: Matrix) -> Scalar:
    """<a, b>_g via full index raising: (1/k!) a_{I} b^{I} over all ordered
    index tuples; independent of the library's minor-based pairing."""
    from itertools import permutations

    k = a.degree
    ginv = metric.inverse()
    acc = ZERO
    fact = 1
    for m in range(2, k + 1):
        fact *= m
    for i_idx, c in a.items():
        for j_idx, d in b.items():
            # sum over permutations sigma of j_idx: prod ginv[i, sigma(j)] sign
            for perm in permutations(range(k)):
                sg = inversion_sign(perm)
                prod = ONE
                ok = True
                for s in range(k):
                    e = ginv[i_idx[s] - 1, j_idx[perm[s]] - 1]
                    if e.is_zero():
                        ok = False
                        break
                    prod = prod * e
                if ok:
                    term = c * d * prod
                    acc = acc + (term if sg > 0 else -term)
    return acc


def plain_gauss_rank(m: Matrix) -> int:
    """Field Gaussian elimination, used as the rank oracle."""
    a = m.tolist()
    nr, nc = len(a), len(a[0])
    r = 0
    for c in range(nc):
        p = next((i for i in range(r, nr) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [inv * x for x in a[r]]
        for i in range(nr):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [a[i][j] - f * a[r][j] for j in range(nc)]
        r += 1
        if r == nr:
            break
    return r
