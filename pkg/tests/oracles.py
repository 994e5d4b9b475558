"""Independent reference computations used to check the library.

None of these share code paths with the implementation they check.
"""
from fractions import Fraction
from itertools import combinations, product

import sympy

from tropfan import HeightFunction, MarkedPolygon, regular_subdivision


def concave_hull_by_triangles(psi: HeightFunction) -> tuple[Fraction, ...]:
    """cc(ψ)(a) as the largest value at a of an interpolant over marks.

    By Carathéodory, the concave envelope at a is the max over triangles,
    segments and points of marks containing a of the linear interpolation.
    """
    marks = psi.base.marks
    h = dict(zip(marks, psi.values))
    out = []
    for a in marks:
        best = h[a]
        for p, q in combinations(marks, 2):
            cross = (q[0] - p[0]) * (a[1] - p[1]) - (q[1] - p[1]) * (a[0] - p[0])
            if cross:
                continue
            span = (q[0] - p[0], q[1] - p[1])
            den = span[0] ** 2 + span[1] ** 2
            t = Fraction((a[0] - p[0]) * span[0] + (a[1] - p[1]) * span[1], den)
            if 0 <= t <= 1:
                best = max(best, (1 - t) * h[p] + t * h[q])
        for p, q, r in combinations(marks, 3):
            d = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
            if d == 0:
                continue
            s = Fraction((a[0] - p[0]) * (r[1] - p[1]) - (a[1] - p[1]) * (r[0] - p[0]), d)
            t = Fraction((q[0] - p[0]) * (a[1] - p[1]) - (q[1] - p[1]) * (a[0] - p[0]), d)
            if s >= 0 and t >= 0 and s + t <= 1:
                best = max(best, (1 - s - t) * h[p] + s * h[q] + t * h[r])
        out.append(best)
    shift = out[0]
    return tuple(v - shift for v in out)


def grid_subdivisions(base: MarkedPolygon, radius: int) -> set:
    """All Δ_ψ for integer heights in [-radius, radius] (first mark fixed at 0)."""
    out = set()
    for vals in product(range(-radius, radius + 1), repeat=base.n - 1):
        out.add(regular_subdivision(HeightFunction(base, (0,) + vals)))
    return out


def coset_index(basis1, basis2) -> int:
    """|Z^n / ((L1 ∩ Z^n) + (L2 ∩ Z^n))| by closing the class of 0 under
    the unit vectors.

    x lies in the sum lattice iff its L1-component p1(x) along L2 is
    integral, so the fractional part of p1(x) identifies the class of x.
    """
    n = len(basis1[0])
    k = len(basis1)
    M = sympy.Matrix([list(v) for v in basis1] + [list(v) for v in basis2]).T
    inv = [[Fraction(int(c.p), int(c.q)) for c in M.inv().row(i)] for i in range(n)]
    B1 = [[Fraction(v) for v in b] for b in basis1]

    def p1(x):
        coeffs = [sum(inv[i][j] * x[j] for j in range(n)) for i in range(k)]
        return [sum(coeffs[i] * B1[i][c] for i in range(k)) for c in range(n)]

    def frac(v):
        return tuple(c - (c.numerator // c.denominator) for c in v)

    steps = [p1([int(i == j) for i in range(n)]) for j in range(n)]
    zero = tuple(Fraction(0) for _ in range(n))
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for s in steps:
                w = frac([a + b for a, b in zip(v, s)])
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen)


def upper_faces(marks, values) -> frozenset:
    """Marked point sets of the 2-dimensional upper faces of the lifted
    points, by checking the plane through every non-collinear triple."""
    pts = list(zip(marks, values))
    faces = set()
    for (p, hp), (q, hq), (r, hr) in combinations(pts, 3):
        # normal of the plane through the three lifted points
        u = (q[0] - p[0], q[1] - p[1], hq - hp)
        v = (r[0] - p[0], r[1] - p[1], hr - hp)
        n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if n[2] == 0:
            continue
        sign = 1 if n[2] > 0 else -1
        on = []
        for a, ha in pts:
            s = sign * (n[0] * (a[0] - p[0]) + n[1] * (a[1] - p[1]) + n[2] * (ha - hp))
            if s > 0:
                break
            if s == 0:
                on.append(a)
        else:
            faces.add(frozenset(on))
    return frozenset(faces)
