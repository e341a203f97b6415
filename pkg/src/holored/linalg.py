"""Exact Gaussian elimination over Q."""

from fractions import Fraction


def _size(x: Fraction) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def rref(rows, ncols):
    """Reduced row echelon form; returns (matrix, pivot_columns).

    Pivots are chosen as the entry of smallest bit size in the column,
    which keeps intermediate growth down on the small dense systems used
    here.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(m)):
            x = m[i][c]
            if x != 0 and (best is None or _size(x) < _size(m[best][c])):
                best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row_r = m[r]
                m[i] = [x - f * y for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def nullspace(rows, ncols):
    """Basis of {x : rows . x = 0}, one vector per free column."""
    m, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        basis.append(v)
    return basis


def in_span(vector, basis) -> bool:
    """True when ``vector`` is a linear combination of ``basis``."""
    if not basis:
        return all(x == 0 for x in vector)
    ncols = len(basis)
    # columns = basis vectors; solve B y = vector by rank comparison
    cols = [list(col) for col in zip(*basis)]
    _, p1 = rref(cols, ncols)
    aug = [row + [x] for row, x in zip(cols, vector)]
    _, p2 = rref(aug, ncols + 1)
    return len(p1) == len(p2)
