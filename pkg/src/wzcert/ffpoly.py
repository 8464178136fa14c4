"""Finite fields and dense univariate polynomial arithmetic over them.

Prime-field elements are plain ints in [0, p); extension-field elements are
tuples of base-field elements (ascending powers of the generator), so towers
nest naturally.  Polynomials over a field are trimmed tuples of elements,
ascending degree, with () as the zero polynomial.

Everything here is deterministic: factor output is canonically sorted, and
splitting elements are enumerated systematically rather than sampled.
"""

import numpy as np
from scipy.signal import convolve2d

from .primes import is_prime


class PrimeField:
    """GF(p) with int elements."""

    __slots__ = ("p", "degree", "order", "zero", "one")

    def __init__(self, p):
        self.p = p
        self.degree = 1
        self.order = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def pow_(self, a, n):
        return pow(a, n, self.p)

    def frob(self, a):
        return a

    def coords(self, a):
        return (a,)

    def from_coords(self, c):
        return c[0] % self.p

    def from_int(self, n):
        return n % self.p

    def from_counter(self, t):
        return t % self.p

    def __repr__(self):
        return f"GF({self.p})"


class ExtField:
    """base[x]/(modulus) for a monic modulus over `base` (prime field or tower)."""

    __slots__ = ("base", "modulus", "d", "p", "degree", "order", "zero", "one", "gen",
                 "_redrow", "_flat")

    def __init__(self, base, modulus):
        self.base = base
        self.modulus = tuple(modulus)
        self.d = len(modulus) - 1
        if self.d < 1 or modulus[-1] != base.one:
            raise ValueError("modulus must be monic of degree >= 1")
        self.p = base.p
        self.degree = base.degree * self.d
        self.order = base.order ** self.d
        self.zero = (base.zero,) * self.d
        self.one = (base.one,) + (base.zero,) * (self.d - 1)
        g = [base.zero] * self.d
        if self.d > 1:
            g[1] = base.one
            self.gen = tuple(g)
        else:
            self.gen = (base.neg(modulus[0]),)
        # reduction row: x^d = -(m_0 + ... + m_{d-1} x^{d-1})
        self._redrow = tuple(base.neg(c) for c in self.modulus[:-1])
        self._flat = type(base) is PrimeField

    def add(self, a, b):
        base = self.base
        return tuple(base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        base = self.base
        return tuple(base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        base = self.base
        return tuple(base.neg(x) for x in a)

    def mul(self, a, b):
        base = self.base
        d = self.d
        if self._flat:
            # int coefficients: accumulate without intermediate reduction
            p = self.p
            prod = [0] * (2 * d - 1)
            for i, ai in enumerate(a):
                if ai:
                    for j, bj in enumerate(b):
                        if bj:
                            prod[i + j] += ai * bj
            red = self._redrow
            for t in range(2 * d - 2, d - 1, -1):
                c = prod[t] % p
                if c:
                    base_t = t - d
                    for i, ri in enumerate(red):
                        if ri:
                            prod[base_t + i] += c * ri
            return tuple(x % p for x in prod[:d])
        zero = base.zero
        prod = [zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                if bj != zero:
                    prod[i + j] = base.add(prod[i + j], base.mul(ai, bj))
        red = self._redrow
        for t in range(2 * d - 2, d - 1, -1):
            c = prod[t]
            if c == zero:
                continue
            prod[t] = zero
            base_t = t - d
            for i, ri in enumerate(red):
                if ri != zero:
                    prod[base_t + i] = base.add(prod[base_t + i], base.mul(c, ri))
        return tuple(prod[:d])

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        g, u = _half_ext_gcd(self.base, ptrim(self.base, a), self.modulus)
        if pdeg(g) != 0:
            raise ArithmeticError("modulus not irreducible over base")
        c = self.base.inv(g[0])
        out = [self.base.mul(c, x) for x in u]
        out += [self.base.zero] * (self.d - len(out))
        return tuple(out[:self.d])

    def pow_(self, a, n):
        if n < 0:
            return self.pow_(self.inv(a), -n)
        out = self.one
        b = a
        while n:
            if n & 1:
                out = self.mul(out, b)
            b = self.mul(b, b)
            n >>= 1
        return out

    def frob(self, a):
        return self.pow_(a, self.p)

    def coords(self, a):
        out = []
        for c in a:
            out.extend(self.base.coords(c))
        return tuple(out)

    def from_coords(self, c):
        bd = self.base.degree
        return tuple(self.base.from_coords(tuple(c[i * bd:(i + 1) * bd]))
                     for i in range(self.d))

    def from_int(self, n):
        return (self.base.from_int(n),) + (self.base.zero,) * (self.d - 1)

    def from_counter(self, t):
        digits = []
        for _ in range(self.degree):
            digits.append(t % self.p)
            t //= self.p
        return self.from_coords(tuple(digits))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"


# ---------------------------------------------------------------------------
# dense polynomials over a field F: trimmed tuples, ascending degree


def ptrim(F, c):
    c = list(c)
    while c and c[-1] == F.zero:
        c.pop()
    return tuple(c)


def pdeg(f):
    return len(f) - 1


def pconst(F, a):
    return () if a == F.zero else (a,)


def padd(F, f, g):
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return ptrim(F, out)


def psub(F, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else F.zero
        b = g[i] if i < len(g) else F.zero
        out.append(F.sub(a, b))
    return ptrim(F, out)


def pscale(F, f, c):
    if c == F.zero:
        return ()
    return ptrim(F, [F.mul(a, c) for a in f])


def pmul(F, f, g):
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == F.zero:
            continue
        for j, b in enumerate(g):
            if b != F.zero:
                out[i + j] = F.add(out[i + j], F.mul(a, b))
    return ptrim(F, out)


def pdivmod(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = pdeg(g)
    inv_lead = F.inv(g[-1])
    q = [F.zero] * max(0, len(f) - dg)
    for t in range(len(f) - 1, dg - 1, -1):
        c = f[t]
        if c == F.zero:
            continue
        c = F.mul(c, inv_lead)
        q[t - dg] = c
        for i in range(dg + 1):
            f[t - dg + i] = F.sub(f[t - dg + i], F.mul(c, g[i]))
    return ptrim(F, q), ptrim(F, f)


def pmod(F, f, g):
    return pdivmod(F, f, g)[1]


def pmonic(F, f):
    if not f:
        return f
    if f[-1] == F.one:
        return f
    return pscale(F, f, F.inv(f[-1]))


def pgcd(F, f, g):
    while g:
        f, g = g, pmod(F, f, g)
    return pmonic(F, f)


def _half_ext_gcd(F, f, g):
    """(gcd, u) with u*f = gcd mod g; used for inverses mod g."""
    r0, r1 = f, g
    u0, u1 = (F.one,), ()
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, psub(F, u0, pmul(F, q, u1))
    return r0, u0


def ppowmod(F, f, e, m):
    out = (F.one,)
    b = pmod(F, f, m)
    while e:
        if e & 1:
            out = pmod(F, pmul(F, out, b), m)
        b = pmod(F, pmul(F, b, b), m)
        e >>= 1
    return out


def pderiv(F, f):
    return ptrim(F, [F.mul(F.from_int(i), c) for i, c in enumerate(f)][1:])


def peval(F, f, x):
    acc = F.zero
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pcompose_mod(F, f, g, m):
    """f(g) mod m by Horner."""
    acc = ()
    for c in reversed(f):
        acc = padd(F, pmod(F, pmul(F, acc, g), m), pconst(F, c))
    return acc


def pfrom_ints(F, ints):
    return ptrim(F, [F.from_int(n) for n in ints])


# ---------------------------------------------------------------------------
# factorization over F (odd order)


def _pth_root_poly(F, f):
    # f is a polynomial in x^p; take p-th roots of coefficients
    q = F.order
    p = F.p
    e = q // p
    return ptrim(F, [F.pow_(f[i], e) for i in range(0, len(f), p)])


def squarefree_decomposition(F, f):
    """[(g, m)] with f = prod g^m (up to the leading unit), g squarefree, m ascending."""
    f = pmonic(F, f)
    out = []
    df = pderiv(F, f)
    if not df:
        for g, m in squarefree_decomposition(F, _pth_root_poly(F, f)):
            out.append((g, m * F.p))
        return out
    c = pgcd(F, f, df)
    w = pdivmod(F, f, c)[0]
    i = 1
    while pdeg(w) > 0:
        y = pgcd(F, w, c)
        z = pdivmod(F, w, y)[0]
        if pdeg(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = pdivmod(F, c, y)[0]
    if pdeg(c) > 0:
        # leftover is a p-th power; the recursion's zero-derivative branch
        # supplies the factor of p in the multiplicities
        out.extend(squarefree_decomposition(F, c))
    return sorted(out, key=lambda gm: gm[1])


def _distinct_degree(F, f):
    """[(product of irreducible factors of degree t, t)] for squarefree monic f."""
    out = []
    x = (F.zero, F.one)
    h = x
    t = 0
    q = F.order
    while pdeg(f) > 0:
        t += 1
        if 2 * t > pdeg(f):
            out.append((f, pdeg(f)))
            break
        h = ppowmod(F, h, q, f)
        g = pgcd(F, psub(F, h, x), f)
        if pdeg(g) > 0:
            out.append((g, t))
            f = pdivmod(F, f, g)[0]
            h = pmod(F, h, f)
    return out


def _equal_degree(F, f, t):
    """Split squarefree monic f (all irreducible factors of degree t) completely."""
    if pdeg(f) == t:
        return [f]
    q = F.order
    odd = q % 2 == 1
    e = (q**t - 1) // 2 if odd else None
    work = [f]
    done = []
    counter = q  # first non-constant polynomial in the canonical enumeration
    while work:
        g = work.pop()
        if pdeg(g) == t:
            done.append(g)
            continue
        while True:
            b = _poly_from_counter(F, counter, pdeg(g))
            counter += 1
            c = pgcd(F, b, g)
            if 0 < pdeg(c) < pdeg(g):
                work.append(c)
                work.append(pdivmod(F, g, c)[0])
                break
            if odd:
                s = ppowmod(F, b, e, g)
            else:
                # characteristic 2: additive trace map splits instead of squares
                s = b
                acc = b
                bits = t * (q.bit_length() - 1)
                for _ in range(bits - 1):
                    acc = pmod(F, pmul(F, acc, acc), g)
                    s = padd(F, s, acc)
            c = pgcd(F, psub(F, s, (F.one,)) if odd else s, g)
            if 0 < pdeg(c) < pdeg(g):
                work.append(c)
                work.append(pdivmod(F, g, c)[0])
                break
    return done


def _poly_from_counter(F, t, maxdeg):
    """Canonical enumeration of polynomials of degree < maxdeg over F."""
    q = F.order
    coeffs = []
    while t:
        coeffs.append(F.from_counter(t % q))
        t //= q
    coeffs = coeffs[:maxdeg]
    return ptrim(F, coeffs)


def factor_monic(F, f):
    """[(g, mult)] with g monic irreducible, canonically sorted, prod g^mult = f."""
    if pdeg(f) < 1:
        raise ValueError("factor input must have degree >= 1")
    f = pmonic(F, f)
    out = []
    for sqf, m in squarefree_decomposition(F, f):
        for prod, t in _distinct_degree(F, sqf):
            for g in _equal_degree(F, prod, t):
                out.append((g, m))
    out.sort(key=lambda gm: (pdeg(gm[0]), tuple(F.coords(c) for c in gm[0])))
    return out


def roots_in_field(F, f):
    """All roots in F of monic f over F, sorted by coordinate tuples."""
    x = (F.zero, F.one)
    xq = ppowmod(F, x, F.order, f)
    lin = pgcd(F, psub(F, xq, x), f)
    roots = []
    if pdeg(lin) > 0:
        for g in _equal_degree(F, lin, 1):
            roots.append(F.neg(g[0]))
    roots.sort(key=F.coords)
    return roots


# ---------------------------------------------------------------------------
# canonical extension fields and embeddings

_canon_modulus_cache = {}
_canon_field_cache = {}
_embed_root_cache = {}


def canonical_modulus(p, d):
    """Lex-least monic irreducible of degree d over GF(p), as int coefficients.

    Coefficient tuples (c_{d-1}, ..., c_0) are compared most-significant first,
    which is the ascending order of the integer sum(c_j p^j).
    """
    key = (p, d)
    got = _canon_modulus_cache.get(key)
    if got is not None:
        return got
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d == 1:
        mod = (0, 1)
        _canon_modulus_cache[key] = mod
        return mod
    F = PrimeField(p)
    t = 0
    while True:
        digits = []
        tt = t
        for _ in range(d):
            digits.append(tt % p)
            tt //= p
        t += 1
        if digits[0] == 0:
            continue  # divisible by x
        f = tuple(digits) + (1,)
        if any(peval(F, f, a) == 0 for a in range(p)):
            continue
        if _is_irreducible(F, f):
            _canon_modulus_cache[key] = f
            return f


def _is_irreducible(F, f):
    """Rabin test for monic f over a prime field."""
    d = pdeg(f)
    p = F.p
    x = (F.zero, F.one)
    # x^(p^t) mod f for the maximal proper divisors t = d/r, then t = d
    h1 = ppowmod(F, x, p, f)
    pows = {1: h1}

    def xp_power(t):
        if t in pows:
            return pows[t]
        h = xp_power(t - 1)
        pows[t] = pcompose_mod(F, h, h1, f)
        return pows[t]

    r = 2
    dd = d
    checked = set()
    while r * r <= dd:
        if dd % r == 0:
            checked.add(d // r)
            while dd % r == 0:
                dd //= r
        r += 1
    if dd > 1:
        checked.add(d // dd)
    for t in sorted(checked):
        g = pgcd(F, psub(F, xp_power(t), x), f)
        if pdeg(g) != 0:
            return False
    return psub(F, xp_power(d), x) == ()


def canonical_field(p, d):
    """The canonical field GF(p^d): PrimeField for d=1, else the canonical quotient."""
    key = (p, d)
    got = _canon_field_cache.get(key)
    if got is None:
        if d == 1:
            got = PrimeField(p)
        else:
            base = canonical_field(p, 1)
            got = ExtField(base, pfrom_ints(base, canonical_modulus(p, d)))
        _canon_field_cache[key] = got
    return got


def embed_root(g_ints, K):
    """Lex-least root in K of a monic irreducible g over GF(p), deg(g) | K.degree.

    Splitting resolvents are norms built from Frobenius powers of x mod g, so
    they evaluate to prime-field scalars at every root and only need exponent
    (p-1)/2.  Because g keeps prime-field coefficients, all heavy arithmetic
    vectorizes: polynomials over K are integer matrices (rows = x-degree,
    columns = generator coordinates), multiplied by 2-D convolution and
    reduced by precomputed matrices on either axis.
    """
    p = K.p
    dp = len(g_ints) - 1
    key = (p, tuple(g_ints), K.degree)
    got = _embed_root_cache.get(key)
    if got is not None:
        return got
    if K.degree % dp:
        raise ValueError("target field does not contain the splitting field")
    if dp == 1:
        root = K.from_int(-g_ints[0])
        _embed_root_cache[key] = root
        return root
    r = _find_root_vectorized(g_ints, K)
    orbit = [r]
    for _ in range(dp - 1):
        orbit.append(K.frob(orbit[-1]))
    root = min(orbit, key=K.coords)
    _embed_root_cache[key] = root
    return root


def _find_root_vectorized(g_ints, K):
    p = K.p
    D = K.degree
    dp = len(g_ints) - 1
    Fp = canonical_field(p, 1)
    g = pfrom_ints(Fp, g_ints)
    # column reduction: y^j mod m for j < 2D-1, as a (2D-1) x D matrix
    m_ints = canonical_modulus(p, D)
    m = pfrom_ints(Fp, m_ints)
    redm = np.zeros((2 * D - 1, D), dtype=np.int64)
    for j in range(2 * D - 1):
        row = pmod(Fp, (0,) * j + (1,), m)
        redm[j, :len(row)] = row
    # row reduction: x^t mod g for t < 2*dp-1, as a (2*dp-1) x dp matrix
    redg = np.zeros((2 * dp - 1, dp), dtype=np.int64)
    for t in range(2 * dp - 1):
        row = pmod(Fp, (0,) * t + (1,), g)
        redg[t, :len(row)] = row

    def reduce_gamma(raw):
        cols = raw @ redm[:raw.shape[1]] % p
        if cols.shape[0] > dp:
            cols = redg[:cols.shape[0]].T @ cols % p
        return cols

    def mulmod(A, B):
        return reduce_gamma(convolve2d(A, B))

    # x^(p^i) mod g stay prime-field polynomials
    x = (0, 1)
    h1 = ppowmod(Fp, x, p, g)
    hp = [x]
    for _ in range(dp - 1):
        hp.append(pcompose_mod(Fp, hp[-1], h1, g))
    hmat = []
    for h in hp:
        A = np.zeros((dp, D), dtype=np.int64)
        A[:len(h), 0] = h
        hmat.append(A)

    def norm_resolvent(a):
        # product over i of (x^(p^i) + sigma^i(a)) mod g, then ^((p-1)/2)
        gamma = np.zeros((1, D), dtype=np.int64)
        gamma[0, 0] = 1
        sa = a
        for i in range(D):
            fac = hmat[i % dp].copy()
            fac[0] += np.asarray(K.coords(sa), dtype=np.int64)
            fac[0] %= p
            gamma = mulmod(gamma, fac)
            sa = K.frob(sa)
        out = np.zeros((1, D), dtype=np.int64)
        out[0, 0] = 1
        e = (p - 1) // 2
        while e:
            if e & 1:
                out = mulmod(out, gamma)
            gamma = mulmod(gamma, gamma)
            e >>= 1
        return out

    def rows_to_poly(A):
        return ptrim(K, [K.from_coords(tuple(int(v) for v in row)) for row in A])

    current = _lift_poly(K, g)
    one_poly = (K.one,)
    # prime-field shifts make the norm resolvent constant on the conjugate
    # orbit, so enumeration starts at the first element outside GF(p)
    trial = p - 1
    guard = 0
    while pdeg(current) > 1:
        guard += 1
        if guard > 10000:
            raise RuntimeError("root splitting failed to converge")
        trial += 1
        a = K.from_counter(trial)
        s = rows_to_poly(norm_resolvent(a))
        s = pmod(K, s, current)
        for cand in (psub(K, s, one_poly), s):
            c = pgcd(K, cand, current)
            if 0 < pdeg(c) < pdeg(current):
                current = c if pdeg(c) <= pdeg(current) - pdeg(c) \
                    else pdivmod(K, current, c)[0]
                break
    return K.neg(current[0])


def _lift_poly(K, f_over_prime):
    """Lift a prime-field polynomial to K coefficients."""
    if isinstance(K, PrimeField):
        return tuple(f_over_prime)
    return ptrim(K, [K.from_int(c) for c in f_over_prime])


_canon_embed_cache = {}


def canonical_embedding(p, d1, d2):
    """(map, K2): evaluate degree-d1 canonical coordinates inside canonical
    GF(p^d2); d1 must divide d2.  The map takes a coords tuple of length d1."""
    if d2 % d1:
        raise ValueError("d1 must divide d2")
    key = (p, d1, d2)
    got = _canon_embed_cache.get(key)
    if got is not None:
        return got
    K2 = canonical_field(p, d2)
    if d1 == 1:
        fn = lambda coords: K2.from_int(coords[0])
    elif d1 == d2:
        fn = K2.from_coords
    else:
        r = embed_root(canonical_modulus(p, d1), K2)

        def fn(coords, _r=r, _K=K2):
            acc = _K.zero
            for c in reversed(coords):
                acc = _K.add(_K.mul(acc, _r), _K.from_int(c))
            return acc

    _canon_embed_cache[key] = (fn, K2)
    return fn, K2


def split_roots(K, f):
    """All roots in K of monic squarefree f over K that splits completely in K.

    The roots may be conjugate over a subfield, and the quadratic character is
    Galois-stable, so shifts fixed by that conjugation can never separate
    them; enumeration therefore starts at the first element outside GF(p)
    (which lies in no proper subfield of K).
    """
    q = K.order
    e = (q - 1) // 2
    roots = []
    work = [pmonic(K, f)]
    counter = K.p - 1
    guard = 0
    while work:
        g = work.pop()
        if pdeg(g) == 1:
            roots.append(K.neg(g[0]))
            continue
        while True:
            guard += 1
            if guard > 10000:
                raise RuntimeError("root splitting failed to converge")
            counter += 1
            b = (K.from_counter(counter), K.one)
            c = pgcd(K, b, g)
            if 0 < pdeg(c) < pdeg(g):
                work.append(c)
                work.append(pdivmod(K, g, c)[0])
                break
            s = ppowmod(K, b, e, g)
            c = pgcd(K, psub(K, s, (K.one,)), g)
            if 0 < pdeg(c) < pdeg(g):
                work.append(c)
                work.append(pdivmod(K, g, c)[0])
                break
    roots.sort(key=K.coords)
    return roots


def clear_caches():
    _canon_modulus_cache.clear()
    _canon_field_cache.clear()
    _embed_root_cache.clear()
