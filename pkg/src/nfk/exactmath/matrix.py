"""Exact integer and rational matrix routines (lists of row lists)."""

from fractions import Fraction


def hermite_form(rows):
    """Row Hermite normal form over Z.

    The nonzero rows come first, in echelon form, with positive pivots and the
    entries above each pivot reduced into ``[0, pivot)``.  Zero rows are kept at
    the bottom so the output has as many rows as the input.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    nrows = len(rows)
    pivot_row = 0
    pivots = []
    for col in range(ncols):
        if pivot_row == nrows:
            break
        # gcd-reduce column ``col`` among rows pivot_row..end
        while True:
            nz = [i for i in range(pivot_row, nrows) if rows[i][col] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(rows[i][col]))
            rows[pivot_row], rows[k] = rows[k], rows[pivot_row]
            piv = rows[pivot_row][col]
            done = True
            for i in range(pivot_row + 1, nrows):
                c = rows[i][col]
                if c:
                    q = c // piv
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if all(rows[i][col] == 0 for i in range(pivot_row, nrows)):
            continue
        if rows[pivot_row][col] < 0:
            rows[pivot_row] = [-a for a in rows[pivot_row]]
        piv = rows[pivot_row][col]
        for i in range(pivot_row):
            q = rows[i][col] // piv
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    return rows


def nonzero_rows(rows):
    return [r for r in rows if any(r)]


def reduce_vector(hnf, v):
    """Reduce ``v`` modulo the row lattice of a Hermite form; zero iff ``v`` is in it."""
    v = list(v)
    for row in hnf:
        col = next((j for j, a in enumerate(row) if a), None)
        if col is None:
            continue
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return v


def in_row_span(hnf, v):
    """Coefficients expressing ``v`` in the rows of ``hnf`` over Z, or None."""
    v = list(v)
    coeffs = []
    for row in hnf:
        col = next((j for j, a in enumerate(row) if a), None)
        if col is None:
            coeffs.append(0)
            continue
        if v[col] % row[col]:
            return None
        q = v[col] // row[col]
        coeffs.append(q)
        v = [a - q * b for a, b in zip(v, row)]
    return coeffs if not any(v) else None


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def determinant(m):
    """Determinant by fraction-free Bareiss elimination (ints) or exact Gauss (rationals)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    if all(isinstance(x, int) for r in a for x in r):
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    a = [[Fraction(x) for x in r] for r in a]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


def charpoly(m):
    """Characteristic polynomial det(xI - m), low degree first (Faddeev-LeVerrier)."""
    n = len(m)
    a = [[Fraction(x) for x in r] for r in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        if k == 1:
            mk = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        else:
            prod = mat_mul(a, mk)
            c = coeffs[n - k + 1]
            mk = [[prod[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        am = mat_mul(a, mk)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return tuple(coeffs)


def solve_rational(a, b):
    """Solve the square system a x = b exactly over Q; None when singular."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            return None
        aug[k], aug[piv] = aug[piv], aug[k]
        for i in range(n):
            if i != k and aug[i][k]:
                f = aug[i][k] / aug[k][k]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
    return [aug[i][n] / aug[i][i] for i in range(n)]


def solve_integer(rows, v):
    """Integer coefficients u with u . rows = v, or None if v is not in the row lattice."""
    m = len(rows)
    ncols = len(v)
    aug = [list(r) + [int(i == j) for j in range(m)] for i, r in enumerate(rows)]
    h = hermite_form(aug)
    lattice = [r[:ncols] for r in h if any(r[:ncols])]
    transforms = [r[ncols:] for r in h if any(r[:ncols])]
    coeffs = in_row_span(lattice, v)
    if coeffs is None:
        return None
    return [sum(c * t[j] for c, t in zip(coeffs, transforms)) for j in range(m)]
