"""Exact integer and rational linear algebra.

Everything here works on lists of lists of ``int`` or ``Fraction``; there is
no floating point and no tolerance anywhere.
"""
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm


def _as_fraction_rows(matrix):
    return [[Fraction(x) for x in row] for row in matrix]


def clear_denominators(row):
    """Scale a rational row to an integer row (positive common multiple)."""
    den = reduce(lcm, (Fraction(x).denominator for x in row), 1)
    return [int(Fraction(x) * den) for x in row]


def bareiss_determinant(matrix):
    """Determinant of a square matrix by fraction-free (Bareiss) elimination.

    Rational input is scaled row-wise to integers first and the scale is
    divided out at the end, so the result is exact.
    """
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    scale = Fraction(1)
    a = []
    for row in matrix:
        den = reduce(lcm, (Fraction(x).denominator for x in row), 1)
        scale *= den
        a.append([int(Fraction(x) * den) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    det = sign * a[n - 1][n - 1]
    result = Fraction(det) / scale
    return int(result) if result.denominator == 1 else result


def row_echelon(matrix):
    """Reduced row echelon form over Q. Returns (rows, pivot columns)."""
    a = _as_fraction_rows(matrix)
    if not a:
        return [], []
    ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(matrix):
    if not matrix or not matrix[0]:
        return 0
    return len(row_echelon(matrix)[1])


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]


def solve(matrix, rhs):
    """One exact solution x of ``matrix @ x == rhs``, or None if inconsistent.

    Free variables are set to zero.
    """
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    red, pivots = row_echelon(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


def nullspace(matrix, ncols=None):
    """Basis of the right kernel over Q."""
    if ncols is None:
        ncols = len(matrix[0])
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, pivots = row_echelon(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[f]
        basis.append(v)
    return basis


def independent_columns(columns):
    """Indices of a maximal linearly independent subfamily (greedy, in order)."""
    if not columns:
        return []
    _, pivots = row_echelon(transpose(columns))
    return pivots


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def primitive(vector):
    """Divide an integer vector by the gcd of its entries."""
    v = [Fraction(x) for x in vector]
    v = clear_denominators(v)
    g = reduce(gcd, v, 0)
    if g == 0:
        raise ValueError("the zero vector has no primitive generator")
    return tuple(x // g for x in v)


def maximal_minors(matrix):
    """Yield (column tuple, determinant) for every k x k minor of a k x m matrix."""
    k = len(matrix)
    m = len(matrix[0]) if k else 0
    for cols in combinations(range(m), k):
        sub = [[row[c] for c in cols] for row in matrix]
        yield cols, bareiss_determinant(sub)


def smith_normal_form(matrix):
    """Smith normal form with unimodular transforms.

    Returns ``(S, U, V)`` with ``U @ A @ V == S``, ``S`` diagonal (in the
    rectangular sense) with non-negative entries, each dividing the next.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    a = [[int(x) for x in row] for row in matrix]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, f):
        for row in a:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // a[t][t]
                if q:
                    add_row(t, i, -q)
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // a[t][t]
                if q:
                    add_col(t, j, -q)
                if a[t][j]:
                    done = False
            if not done:
                entries = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                entries += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                _, i, j = min(entries)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # enforce divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def invariant_factors(matrix):
    s, _, _ = smith_normal_form(matrix)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)) if s[i][i]]
