"""Two calibrated split structures that are Ricci-flat but not parallel.

Both live on almost abelian algebras carrying the Witt-frame three-form.
The first is nilpotent (so the simply-connected group has a lattice and
the structure descends to a compact nilmanifold); its holonomy algebra is
three-dimensional abelian and does not annihilate the three-form, so the
holonomy is not contained in the split stabilizer group.
"""

from g2aa import AlmostAbelianAlgebra, Matrix, analyze, certify_g2, differential, witt_phi
from g2aa.geometry import curvature, levi_civita


def show(title, algebra):
    phi = witt_phi()
    s = certify_g2(phi)
    star = s.star_phi()
    print(title)
    print(f"  d phi = {differential(algebra, phi)}")
    print(f"  d star phi = {differential(algebra, star)}")
    conn = levi_civita(algebra, s.metric)
    rep = curvature(conn)
    for (i, j), m in sorted(rep.r.items()):
        if m.is_zero():
            continue
        terms = [
            f"({m[a, b]}) f^{b + 1}(.)f_{a + 1}"
            for a in range(7)
            for b in range(7)
            if not m[a, b].is_zero()
        ]
        print(f"  R(f_{i + 1}, f_{j + 1}) = {' + '.join(terms)}")
    full = analyze(algebra, phi, s.metric)
    print(f"  Ricci flat: {full.is_ricci_flat}")
    print(f"  holonomy dimension: {full.hol_dim}")
    print(f"  holonomy annihilates phi: {full.hol_annihilates_phi}")
    print()


# nilpotent example: chains f4 -> f3 -> f1 and f6 -> f5 -> f2
rows = [[0] * 6 for _ in range(6)]
rows[0][2] = rows[2][3] = rows[1][4] = rows[4][5] = -1
show("nilpotent example (catalog entry n_{7,2}):", AlmostAbelianAlgebra(7, Matrix(rows)))

# a non-unimodular diagonal example with five-dimensional holonomy
show("diagonal example:", AlmostAbelianAlgebra(7, Matrix.diagonal([2, -1, 2, 2, -1, -1])))
