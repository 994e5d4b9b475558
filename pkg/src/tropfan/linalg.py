"""Exact rational linear algebra and linear programming.

Small dense routines over exact rationals (``gmpy2.mpq`` when available,
:class:`fractions.Fraction` otherwise). Sizes here are a few
dozen rows and columns at most, so plain Gaussian elimination and a
dictionary-form simplex with Bland's rule are fast enough and never lose a
digit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

Vector = Sequence[Fraction]


def to_fraction(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None):
    """Reduced row echelon form.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    m = [[Q(v) for v in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [[Q(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        basis.append(v)
    return basis


def solve_affine(rows: Sequence[Sequence], rhs: Sequence, ncols: int):
    """Parametrize {x : rows . x = rhs} as ``x0 + sum z_k N[k]``.

    Returns ``(x0, N)`` or ``None`` when the system is inconsistent.
    """
    if not rows:
        return [Q(0)] * ncols, nullspace([], ncols)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x0 = [Q(0)] * ncols
    for r, p in enumerate(pivots):
        x0[p] = red[r][ncols]
    return x0, nullspace([r[:ncols] for r in red], ncols)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def integer_form(vec: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to a primitive integer one."""
    fr = [Q(v) for v in vec]
    den = 1
    for v in fr:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in fr]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return tuple(ints)
    return tuple(v // g for v in ints)


# -- simplex ------------------------------------------------------------------

class LPStatus:
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    value: Optional[Fraction] = None
    x: Optional[list[Fraction]] = None


def _pivot(rows, obj, basic, nonbasic, r, j):
    """Exchange basic variable of row r with nonbasic column j (in place).

    Dictionary form: basic[i] = rows[i][0] + sum_k rows[i][k+1] * nonbasic[k].
    """
    row = rows[r]
    a = row[j + 1]
    # Solve row for the entering variable.
    new = [-v / a for v in row]
    new[j + 1] = 1 / a
    rows[r] = new
    for i, other in enumerate(rows):
        if i == r:
            continue
        f = other[j + 1]
        if f == 0:
            continue
        other[j + 1] = 0
        rows[i] = [o + f * n for o, n in zip(other, new)]
    f = obj[j + 1]
    if f != 0:
        obj[j + 1] = 0
        obj[:] = [o + f * n for o, n in zip(obj, new)]
    basic[r], nonbasic[j] = nonbasic[j], basic[r]


def _simplex_loop(rows, obj, basic, nonbasic):
    while True:
        enter = None
        for j in sorted(range(len(nonbasic)), key=lambda k: nonbasic[k]):
            if obj[j + 1] > 0:
                enter = j
                break
        if enter is None:
            return LPStatus.OPTIMAL
        leave = None
        best = None
        for i, row in enumerate(rows):
            a = row[enter + 1]
            if a < 0:
                ratio = row[0] / -a
                if best is None or ratio < best or (ratio == best and basic[i] < basic[leave]):
                    best, leave = ratio, i
        if leave is None:
            return LPStatus.UNBOUNDED
        _pivot(rows, obj, basic, nonbasic, leave, enter)


def maximize(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """maximize c.x subject to A x <= b, x >= 0, exactly.

    Two-phase dictionary simplex; Bland's rule for both entering and leaving
    choices, so it terminates on degenerate problems.
    """
    n = len(c)
    m = len(A)
    # Variables 0..n-1 original, n..n+m-1 slacks, n+m auxiliary.
    rows = [[Q(b[i])] + [-Q(v) for v in A[i]] for i in range(m)]
    basic = list(range(n, n + m))
    nonbasic = list(range(n))

    if any(r[0] < 0 for r in rows):
        aux = n + m
        for r in rows:
            r.append(Q(1))
        nonbasic.append(aux)
        obj = [Q(0)] * (n + 1) + [Q(-1)]
        leave = min(range(m), key=lambda i: (rows[i][0], basic[i]))
        _pivot(rows, obj, basic, nonbasic, leave, len(nonbasic) - 1)
        _simplex_loop(rows, obj, basic, nonbasic)
        if obj[0] < 0:
            return LPResult(LPStatus.INFEASIBLE)
        if aux in basic:
            r = basic.index(aux)
            j = next((k for k in range(len(nonbasic)) if rows[r][k + 1] != 0), None)
            if j is None:
                del rows[r]
                del basic[r]
            else:
                _pivot(rows, obj, basic, nonbasic, r, j)
        col = nonbasic.index(aux)
        for r in rows:
            del r[col + 1]
        del nonbasic[col]

    # Original objective in terms of the current nonbasic variables.
    obj = [Q(0)] * (len(nonbasic) + 1)
    pos = {v: k for k, v in enumerate(nonbasic)}
    for var in range(n):
        cv = Q(c[var])
        if cv == 0:
            continue
        if var in pos:
            obj[pos[var] + 1] += cv
        else:
            row = rows[basic.index(var)]
            obj = [o + cv * v for o, v in zip(obj, row)]
    status = _simplex_loop(rows, obj, basic, nonbasic)
    if status == LPStatus.UNBOUNDED:
        return LPResult(status)
    x = [Q(0)] * n
    for i, var in enumerate(basic):
        if var < n:
            x[var] = rows[i][0]
    return LPResult(LPStatus.OPTIMAL, obj[0], x)


def maximize_free(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPResult:
    """maximize c.x subject to A x <= b with x unrestricted in sign."""
    n = len(c)
    c2 = list(c) + [-v for v in c]
    A2 = [list(r) + [-v for v in r] for r in A]
    res = maximize(c2, A2, b)
    if res.status == LPStatus.OPTIMAL:
        res.x = [res.x[i] - res.x[n + i] for i in range(n)]
    return res


# -- relative interiors ---------------------------------------------------------

@dataclass
class RelativeInterior:
    """A point strictly inside the non-implied inequalities of a polyhedron.

    ``implicit`` holds the indices of inequalities that hold with equality on
    the whole polyhedron; ``dimension`` is the dimension of its affine hull.
    """

    point: list[Fraction]
    implicit: frozenset[int]
    dimension: int


def _strict_point(z_rows, z_rhs, k):
    """max t s.t. z_rows . z - t >= z_rhs, t <= 1; returns (t, z) or None."""
    # In <= form: -z_rows . z + t <= -z_rhs
    A = [[-v for v in r] + [Q(1)] for r in z_rows]
    b = [-h for h in z_rhs]
    A.append([Q(0)] * k + [Q(1)])
    b.append(Q(1))
    res = maximize_free([Q(0)] * k + [Q(1)], A, b)
    if res.status != LPStatus.OPTIMAL:
        return None
    return res.value, res.x[:k]


def _find_implicit(z_rows, z_rhs, k) -> set[int]:
    """Indices of inequalities tight on the whole (nonempty) polyhedron."""
    undecided = set(range(len(z_rows)))
    while undecided:
        order = sorted(undecided)
        w = len(order)
        # Variables: z (k, free) then y (w, bounded in [0, 1]).
        A, b = [], []
        for i, (r, h) in enumerate(zip(z_rows, z_rhs)):
            row = [-v for v in r] + [Q(0)] * w
            if i in undecided:
                row[k + order.index(i)] = Q(1)
            A.append(row)
            b.append(-h)
        for j in range(w):
            row = [Q(0)] * (k + w)
            row[k + j] = Q(1)
            A.append(row)
            b.append(Q(1))
            row = [Q(0)] * (k + w)
            row[k + j] = Q(-1)
            A.append(row)
            b.append(Q(0))
        res = maximize_free([Q(0)] * k + [Q(1)] * w, A, b)
        if res.status != LPStatus.OPTIMAL or res.value == 0:
            break
        y = res.x[k:]
        undecided -= {order[j] for j in range(w) if y[j] > 0}
    return undecided


def relative_interior(
    ncols: int,
    eq_rows: Sequence[Sequence] = (),
    eq_rhs: Sequence = (),
    ineq_rows: Sequence[Sequence] = (),
    ineq_rhs: Sequence = (),
    strict_only: bool = False,
) -> Optional[RelativeInterior]:
    """Relative-interior point of {x : E x = e, G x >= g}, or None if empty.

    With ``strict_only`` the search stops after one LP: None is also
    returned when every point satisfies some inequality with equality that
    is not already implied by E (useful for facet tests).
    """
    eq_rows = [list(map(Q, r)) for r in eq_rows]
    eq_rhs = [Q(v) for v in eq_rhs] or [Q(0)] * len(eq_rows)
    ineq_rows = [list(map(Q, r)) for r in ineq_rows]
    ineq_rhs = [Q(v) for v in ineq_rhs] or [Q(0)] * len(ineq_rows)

    implicit: set[int] = set()
    for _ in range(2):
        extra = sorted(implicit)
        sol = solve_affine(
            eq_rows + [ineq_rows[i] for i in extra],
            eq_rhs + [ineq_rhs[i] for i in extra],
            ncols,
        )
        if sol is None:
            return None
        x0, basis = sol
        k = len(basis)
        # Distinct rows in z-space; groups[r] lists the original indices.
        groups: dict[tuple[int, ...], list[int]] = {}
        for i, (g, h) in enumerate(zip(ineq_rows, ineq_rhs)):
            if i in implicit:
                continue
            zr = [dot(g, bvec) for bvec in basis]
            zh = h - dot(g, x0)
            if not any(zr):
                if zh > 0:
                    return None
                if zh == 0:
                    implicit.add(i)
                continue
            groups.setdefault(integer_form(zr + [zh]), []).append(i)
        if not groups:
            return RelativeInterior(list(map(to_fraction, x0)), frozenset(implicit), k)
        keys = list(groups)
        z_rows = [list(key[:-1]) for key in keys]
        z_rhs = [Q(key[-1]) for key in keys]
        found = _strict_point(z_rows, z_rhs, k)
        if found is None:
            return None
        t, z = found
        if t < 0:
            return None
        if t > 0:
            point = [x0[c] + sum(z[j] * basis[j][c] for j in range(k)) for c in range(ncols)]
            return RelativeInterior(list(map(to_fraction, point)), frozenset(implicit), k)
        if strict_only:
            return None
        for j in _find_implicit(z_rows, z_rhs, k):
            implicit.update(groups[keys[j]])
    raise AssertionError("implicit equalities did not stabilise")
