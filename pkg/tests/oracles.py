"""Independent reference computations used by the tests.

Nothing here imports the package: these are brute-force counts and plain
integer or sympy expansions.
"""

from itertools import product

import sympy


def plane_partition_counts(max_size):
    """Number of plane partitions of each size 0..max_size by direct enumeration."""
    counts = [0] * (max_size + 1)

    def rows(prev, remaining, total):
        counts[total] += 1
        # next row: a partition dominated entrywise by prev
        for row in _dominated(prev, remaining):
            rows(row, remaining - sum(row), total + sum(row))

    def _dominated(prev, remaining):
        out = []

        def build(i, acc, budget):
            if acc:
                out.append(tuple(acc))
            if i >= len(prev):
                return
            cap = min(prev[i], acc[-1] if acc else prev[i], budget)
            for v in range(1, cap + 1):
                build(i + 1, acc + [v], budget - v)

        build(0, [], remaining)
        return out

    rows((max_size,) * max_size, max_size, 0)
    return counts


def int_series_product(factors, keep):
    """Expand prod (1 + c s^a T^b)^e (integer e) into {(a, b): coeff}.

    ``keep(a, b)`` says whether a monomial lies inside the truncation.
    """
    series = {(0, 0): 1}
    for (a, b, c, e) in factors:
        for _ in range(abs(e)):
            if e > 0:
                out = dict(series)
                for (x, y), v in series.items():
                    if keep(x + a, y + b):
                        out[(x + a, y + b)] = out.get((x + a, y + b), 0) + c * v
            else:
                # divide by (1 + c s^a T^b): g = f - c s^a T^b g
                keys = set()
                for (x, y) in series:
                    while keep(x, y) and (x, y) not in keys:
                        keys.add((x, y))
                        x, y = x + a, y + b
                out = {}
                for (x, y) in sorted(keys):
                    out[(x, y)] = series.get((x, y), 0) - c * out.get((x - a, y - b), 0)
            series = {k: v for k, v in out.items() if v}
    return series


def gl_count(k, q):
    """|GL_k(F_q)| by checking every k x k matrix over Z/q (q prime)."""
    count = 0
    for entries in product(range(q), repeat=k * k):
        m = sympy.Matrix(k, k, entries)
        if m.det() % q:
            count += 1
    return count


def gl2_count_fast(q):
    count = 0
    for a, b, c, d in product(range(q), repeat=4):
        if (a * d - b * c) % q:
            count += 1
    return count


def interpolate_poly(points):
    """Lagrange interpolation through [(q, value)], returned as {power: coeff}."""
    x = sympy.Symbol("x")
    poly = sympy.expand(sympy.interpolate(points, x))
    return {int(m[0]): int(c) for m, c in sympy.Poly(poly, x).terms()}


def laurent_from_sympy(expr, sym, shift=200):
    """Turn a Laurent polynomial in ``sym = L^(1/2)`` into {half-exponent: coeff}."""
    poly = sympy.Poly(sympy.expand(expr * sym ** shift), sym)
    return {int(m[0]) - shift: int(c) for m, c in poly.terms() if c}
