#!/usr/bin/env python3
"""Elementary golden values from plain integer arithmetic.

    python3 tests/oracles/elementary.py > tests/golden/elementary.json
"""
import itertools
import json
import math
from fractions import Fraction


def unit_group_mod(n):
    units = [a for a in range(1, n) if math.gcd(a, n) == 1]
    orders = {}
    for a in units:
        x, k = a, 1
        while x != 1:
            x, k = x * a % n, k + 1
        orders[a] = k
    return units, orders


def det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n, d = len(m), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return d


def poly_disc(coeffs):
    """Discriminant of a monic polynomial (low to high) via the Sylvester resultant with f'."""
    f = list(reversed(coeffs))
    n = len(f) - 1
    df = [c * (n - i) for i, c in enumerate(f[:-1])]
    size = 2 * n - 1
    rows = []
    for i in range(n - 1):
        rows.append([0] * i + f + [0] * (size - len(f) - i))
    for i in range(n):
        rows.append([0] * i + df + [0] * (size - len(df) - i))
    res = det(rows)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return int(sign * res)


def poly_mulmod(a, b, mod_poly, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    n = len(mod_poly) - 1
    for d in range(len(out) - 1, n - 1, -1):
        c = out[d]
        if c:
            for i in range(n + 1):
                out[d - n + i] = (out[d - n + i] - c * mod_poly[i]) % p
    return (out + [0] * n)[:n]


def residue_units_cyclotomic5(p):
    """Element orders of (F_p[x]/(x^4+x^3+x^2+x+1))^x by enumeration."""
    mod_poly = [1, 1, 1, 1, 1]
    one = [1, 0, 0, 0]
    elems = [list(e) for e in itertools.product(range(p), repeat=4) if any(e)]
    orders = []
    for e in elems:
        x, k = e, 1
        while x != one and k <= p ** 4:
            x, k = poly_mulmod(x, e, mod_poly, p), k + 1
        if x == one:
            orders.append(k)
    return len(orders), max(orders)


def roots_mod(coeffs, p):
    return [x for x in range(p) if sum(c * x ** i for i, c in enumerate(coeffs)) % p == 0]


def snf_by_minors(m):
    rows, cols = len(m), len(m[0])
    dk, out = [1], []
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                g = math.gcd(g, int(det([[m[i][j] for j in c] for i in r])))
        dk.append(g)
        out.append(0 if dk[k - 1] == 0 else g // dk[k - 1])
    return out


def minkowski(n, r2, disc):
    return math.factorial(n) / n ** n * (4 / math.pi) ** r2 * math.sqrt(abs(disc))


def main():
    units8, orders8 = unit_group_mod(8)
    gens = [3, 5]
    generated = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g % 8
                if y not in generated:
                    generated.add(y)
                    nxt.append(y)
        frontier = nxt
    n2, max2 = residue_units_cyclotomic5(2)
    out = {
        "units_mod_8": {"order": len(units8), "max_element_order": max(orders8.values()),
                        "generated_by_3_5": len(generated)},
        "snf_diag_2_3": snf_by_minors([[2, 0], [0, 3]]),
        "disc_x4_x3_x2_x_1": poly_disc([1, 1, 1, 1, 1]),
        "disc_x4_5x2_5": poly_disc([5, 0, 5, 0, 1]),
        "disc_quadratic_5": 5,
        "zeta5_mod2_units": {"order": n2, "max_element_order": max2},
        "cyclotomic5_roots_mod": {str(p): roots_mod([1, 1, 1, 1, 1], p) for p in (2, 5, 11)},
        "minkowski_zeta5": minkowski(4, 2, 125),
        "minkowski_8_4_2": minkowski(4, 2, 2048),
        "field_10_5": {"B_times_A2_minus_4B": 5 * (10 ** 2 - 4 * 5),
                       "is_square": math.isqrt(5 * 80) ** 2 == 5 * 80},
    }
    print(json.dumps(out, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
