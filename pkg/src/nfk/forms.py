"""Positive definite binary quadratic forms: reduction, composition, class numbers.

Forms are plain ``(a, b, c)`` integer triples of discriminant ``b^2 - 4ac < 0``.
"""

from math import gcd, isqrt

from sympy import factorint


def discriminant(form):
    a, b, c = form
    return b * b - 4 * a * c


def is_fundamental(D):
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def _squarefree(n):
    return all(k == 1 for k in factorint(abs(n)).values())


def normalize(form):
    a, b, c = form
    r = (a - b) // (2 * a)
    return (a, b + 2 * r * a, a * r * r + b * r + c)


def reduce_form(form):
    a, b, c = normalize(form)
    while a > c or (a == c and b < 0):
        a, b, c = normalize((c, -b, a))
    return (a, b, c)


def is_reduced(form):
    a, b, c = form
    if not (abs(b) <= a <= c):
        return False
    if (abs(b) == a or a == c) and b < 0:
        return False
    return True


def principal_form(D):
    k = D % 2
    return (1, k, (k - D) // 4)


def reduced_forms(D):
    """All primitive reduced forms of discriminant ``D < 0``."""
    if D >= 0 or D % 4 not in (0, 1):
        raise ValueError(f"bad negative discriminant {D}")
    out = []
    a_max = isqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            f = (a, b, c)
            if c >= a and is_reduced(f) and gcd(gcd(a, b), c) == 1:
                out.append(f)
    return out


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return x0, y0, a


def compose(f1, f2):
    """Gauss composition of two primitive forms of the same discriminant, reduced."""
    D = discriminant(f1)
    if discriminant(f2) != D:
        raise ValueError("discriminant mismatch")
    if f1[0] > f2[0]:
        f1, f2 = f2, f1
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        u, _, d = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        x2, y2, d1 = _xgcd(s, d)
        y2 = -y2
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (b3 * b3 - D) // (4 * a3)
    return reduce_form((a3, b3, c3))


def form_order(form, limit=None):
    """Order of the class of ``form`` in the form class group."""
    D = discriminant(form)
    one = principal_form(D)
    f = reduce_form(form)
    cur, k = f, 1
    while cur != one:
        cur = compose(cur, f)
        k += 1
        if limit is not None and k > limit:
            raise RuntimeError("form order exceeds limit")
    return k


def class_number(D):
    return len(reduced_forms(D))

