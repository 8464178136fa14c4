"""Small exact linear algebra over finite fields: determinants, characteristic
polynomials, nullspaces, and coordinate solving.  Matrices are lists of rows of
field elements; all pivot choices are deterministic so outputs are canonical.
"""

from .ffpoly import padd, pmul, pscale


def mat_det(F, M):
    n = len(M)
    if n == 0:
        return F.one
    A = [list(r) for r in M]
    det = F.one
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = F.neg(det)
        det = F.mul(det, A[c][c])
        inv = F.inv(A[c][c])
        for r in range(c + 1, n):
            f = F.mul(A[r][c], inv)
            if f != F.zero:
                A[r] = [F.sub(u, F.mul(f, v)) for u, v in zip(A[r], A[c])]
    return det


def mat_charpoly(F, M):
    """det(xI - M) by evaluation at n+1 canonical points and Lagrange interpolation."""
    n = len(M)
    if n == 0:
        return (F.one,)
    if F.order <= n:
        raise ValueError("field too small for interpolation")
    xs = [F.from_counter(j) for j in range(n + 1)]
    ys = []
    for x in xs:
        A = [[F.sub(x if i == j else F.zero, M[i][j]) for j in range(n)]
             for i in range(n)]
        ys.append(mat_det(F, A))
    out = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        num = (F.one,)
        den = F.one
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = pmul(F, num, (F.neg(xj), F.one))
            den = F.mul(den, F.sub(xi, xj))
        out = padd(F, out, pscale(F, num, F.mul(yi, F.inv(den))))
    # charpoly is monic of degree n; interpolated form may have trimmed zeros
    out = list(out) + [F.zero] * (n + 1 - len(out))
    return tuple(out)


def rref(F, M):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    A = [list(r) for r in M]
    nrows = len(A)
    ncols = len(A[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c] != F.zero), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [F.mul(inv, v) for v in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != F.zero:
                f = A[i][c]
                A[i] = [F.sub(u, F.mul(f, v)) for u, v in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def mat_nullspace(F, M):
    """Canonical basis of the right nullspace (free columns ascending, unit there)."""
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    if ncols == 0:
        return []
    A, pivots = rref(F, M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * ncols
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(A[r][fc])
        basis.append(v)
    return basis


def solve_in_span(F, vecs, target):
    """Coordinates of target in the span of vecs, or None if outside."""
    n = len(target)
    m = len(vecs)
    A = [[vecs[j][i] for j in range(m)] + [target[i]] for i in range(n)]
    R, pivots = rref(F, A)
    coords = [F.zero] * m
    for r, pc in enumerate(pivots):
        if pc == m:
            return None
        coords[pc] = R[r][m]
    return coords


def mat_lift(K, M_ints_mod_p):
    """Embed a prime-field integer matrix into the field K."""
    return [[K.from_int(c) for c in row] for row in M_ints_mod_p]
