"""Hecke operators on level-one cusp spaces and mod-p eigen systems.

T_m acts on the Miller basis through the classical coefficient formula
a_n(T_m f) = sum_{r | gcd(m,n)} r^(k-1) a_{mn/r^2}(f).  Mod-p eigen systems
are extracted from T_2 eigenspaces, refined by T_3, T_5, ... inside extension
fields when eigenvalues coincide, and a_p is read off the reconstructed
normalized eigenform expansion at precision p+1.  The full T_p matrix (which
needs dim-times-larger precision) is kept only as a determinant oracle.
"""

from collections import OrderedDict
from dataclasses import dataclass
from math import gcd as _gcd

import numpy as np

from . import cache as diskcache
from . import ffpoly
from .exactarith import DEFAULT_MAX_EXT_DEGREE, ExtFieldElem, PrimeFieldElem
from .fflinalg import mat_charpoly, mat_det, mat_lift, mat_nullspace, rref, solve_in_span
from .primes import is_prime, primes_up_to
from .qseries import PrecisionError, dim_cusp, miller_basis


def default_bound(p: int) -> int:
    """Eigenvalue bound B: Sturm-scale for cross-weight matching, never below 13."""
    return max(13, (p + 1) // 12 + 2)


@dataclass(frozen=True)
class HeckeMatrix:
    """Matrix of T_m on the Miller basis of S_k; entries[i][j] = a_{i+1}(T_m B_{j+1})."""

    k: int
    m: int
    ring: int | None
    entries: tuple


def hecke_coeff(f, m: int, n: int):
    """a_n(T_m f) for a weight-tagged series f covering index m*n."""
    if f.prec <= m * n:
        raise PrecisionError(f"need coefficient {m * n}, have precision {f.prec}")
    k = f.weight
    g = _gcd(m, n)
    total = 0
    for r in range(1, g + 1):
        if g % r:
            continue
        if f.ring is None:
            total += r**(k - 1) * f.coeffs[m * n // (r * r)]
        else:
            total += pow(r, k - 1, f.ring) * f.coeffs[m * n // (r * r)]
    return total if f.ring is None else total % f.ring


def hecke_matrix(k: int, m: int, ring: int | None = None) -> HeckeMatrix:
    """Matrix of T_m on S_k in the Miller basis (0x0 when the space is trivial)."""
    d = dim_cusp(k)
    if d == 0:
        return HeckeMatrix(k, m, ring, ())
    basis = miller_basis(k, m * d + 2, ring)
    entries = tuple(
        tuple(hecke_coeff(basis.forms[j], m, i) for j in range(d))
        for i in range(1, d + 1))
    return HeckeMatrix(k, m, ring, entries)


def exact_ap_dim1(k: int, p: int) -> int:
    """The exact integer a_p of the unique normalized eigenform in a 1-dim S_k."""
    if dim_cusp(k) != 1:
        raise ValueError(f"dim S_{k} = {dim_cusp(k)}, not 1")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return miller_basis(k, p + 2).forms[0].coeff(p)


def tp_det_modp(p: int, k: int) -> int:
    """det(T_p mod p) on S_k: zero exactly when some eigen system has a_p = 0.

    Needs basis precision p*dim + 2, so this is a testing oracle for the cheap
    eigenvector-based a_p extraction, not a scan workhorse.
    """
    d = dim_cusp(k)
    if d == 0:
        return 1
    rows = _basis_rows(p, k, p * d + 2)
    M = _op_matrix(rows, k, p, p)
    return mat_det(ffpoly.canonical_field(p, 1), M)


# ---------------------------------------------------------------------------
# internal caches


class _LRU(OrderedDict):
    def __init__(self, maxsize):
        super().__init__()
        self.maxsize = maxsize

    def put(self, key, value):
        self[key] = value
        self.move_to_end(key)
        while len(self) > self.maxsize:
            self.popitem(last=False)


_rows_mem = _LRU(64)
_raw_mem = _LRU(256)
_sys_mem = _LRU(256)


def clear_caches():
    _rows_mem.clear()
    _raw_mem.clear()
    _sys_mem.clear()


def _basis_rows(p, k, prec):
    """Mod-p Miller basis coefficient rows at the given precision (cached)."""
    key = (p, k, prec)
    rows = _rows_mem.get(key)
    if rows is None:
        dc = diskcache.get_cache()
        rows = dc.get("basis", key) if dc else None
        if rows is None:
            rows = [list(f.coeffs) for f in miller_basis(k, prec, p).forms]
            if dc:
                dc.put("basis", key, rows)
        _rows_mem.put(key, rows)
    return rows


def _op_matrix(rows, k, m, p):
    """Matrix of T_m over GF(p) from basis coefficient rows."""
    d = len(rows)
    out = []
    for i in range(1, d + 1):
        g = _gcd(m, i)
        terms = [(pow(r, k - 1, p), m * i // (r * r)) for r in range(1, g + 1) if g % r == 0]
        out.append([sum(c * rows[j][idx] for c, idx in terms) % p for j in range(d)])
    return out


# ---------------------------------------------------------------------------
# eigen systems


@dataclass
class EigenSystem:
    """A Galois-conjugacy class of mod-p Hecke eigen systems on S_k.

    values maps primes ell <= B (ell != p) to elements of the canonical value
    field of degree d; ap is the q^p coefficient of the normalized eigenform.
    Classes whose value field exceeds the extension-degree cap are returned as
    degree-overflow markers with empty values.
    """

    p: int
    k: int
    d: int
    values: dict
    ap: object
    mult: int
    semisimple_action: bool
    B: int
    overflow: bool = False

    @property
    def ordinary(self):
        if self.overflow or self.ap is None:
            return None
        return not self.ap.is_zero()

    def as_doc(self):
        coords = lambda e: [str(c) for c in
                            (e.coeffs if isinstance(e, ExtFieldElem) else (e.value,))]
        return {
            "d": self.d,
            "mult": self.mult,
            "ss": self.semisimple_action,
            "overflow": self.overflow,
            "ap": None if self.ap is None else coords(self.ap),
            "values": {str(ell): coords(v) for ell, v in self.values.items()},
        }


class _RawClass:
    __slots__ = ("field", "values", "ap", "mult", "path", "degenerate", "vec")

    def __init__(self, field, values, ap, mult, path, degenerate, vec=None):
        self.field = field
        self.values = values
        self.ap = ap
        self.mult = mult
        self.path = path
        self.degenerate = degenerate
        self.vec = vec


def _factor_key(F, h):
    return (ffpoly.pdeg(h), tuple(F.coords(c) for c in h))


def _lift_elem(K2, a):
    return (a,) + (K2.base.zero,) * (K2.d - 1)


def _raw_classes(p, k, B):
    """All mod-p eigen system classes on S_k with a_ell (ell <= B) and a_p.

    Returns (classes, semisimple, dim).  Classes live in ad-hoc tower fields;
    canonicalization into the (p, d)-canonical field happens separately.
    """
    key = (p, k, B)
    got = _raw_mem.get(key)
    if got is not None:
        return got
    d = dim_cusp(k)
    if d == 0:
        result = ([], True, 0)
        _raw_mem.put(key, result)
        return result
    Fp = ffpoly.canonical_field(p, 1)
    prec0 = max(p + 2, 2 * d + 2, B + 2)
    rows0 = _basis_rows(p, k, prec0)
    ells = [ell for ell in primes_up_to(B) if ell != p]
    M2 = _op_matrix(rows0, k, 2, p)
    leaves = []
    for g, _mult in ffpoly.factor_monic(Fp, mat_charpoly(Fp, M2)):
        if ffpoly.pdeg(g) == 1:
            K, lam, MK = Fp, Fp.neg(g[0]), M2
        else:
            K = ffpoly.ExtField(Fp, g)
            lam = K.gen
            MK = mat_lift(K, M2)
        A = [[K.sub(MK[i][j], lam if i == j else K.zero) for j in range(d)]
             for i in range(d)]
        space = mat_nullspace(K, A)
        path = ((2, _factor_key(Fp, g)),)
        leaves.extend(_refine(p, k, d, K, space, path, ells, 1, B, prec0))
    classes = [_leaf_class(p, k, d, K, space, path, B, prec0)
               for K, space, path in leaves]
    classes.sort(key=lambda c: c.path)
    semisimple = sum(c.field.degree * c.mult for c in classes) == d
    if not semisimple:
        for c in classes:
            c.degenerate = True
    result = (classes, semisimple, d)
    _raw_mem.put(key, result)
    return result


def _refine(p, k, d, K, space, path, ells, idx, B, prec0):
    """Split a joint eigenspace by the next Hecke operator; leaves are dim-1
    spaces or spaces on which every T_ell (ell <= B) acts by a scalar."""
    if not space:
        raise ArithmeticError("empty eigenspace during refinement")
    if len(space) == 1 or idx >= len(ells):
        return [(K, space, path)]
    ell = ells[idx]
    prec = prec0 if ell * d + 2 <= prec0 else ell * d + 2
    Ml = _op_matrix(_basis_rows(p, k, prec), k, ell, p)
    MlK = Ml if K.degree == 1 else mat_lift(K, Ml)
    m = len(space)
    cols = []
    for v in space:
        w = [K.zero] * d
        for i in range(d):
            acc = K.zero
            row = MlK[i]
            for j in range(d):
                if v[j] != K.zero and row[j] != K.zero:
                    acc = K.add(acc, K.mul(row[j], v[j]))
            w[i] = acc
        coords = solve_in_span(K, space, w)
        if coords is None:
            raise ArithmeticError("Hecke operator does not preserve eigenspace")
        cols.append(coords)
    A = [[cols[j][i] for j in range(m)] for i in range(m)]
    out = []
    for h, _mult in ffpoly.factor_monic(K, mat_charpoly(K, A)):
        if ffpoly.pdeg(h) == 1:
            K2, mu = K, K.neg(h[0])
            A2, space2 = A, space
        else:
            K2 = ffpoly.ExtField(K, h)
            mu = K2.gen
            A2 = [[_lift_elem(K2, x) for x in row] for row in A]
            space2 = [[_lift_elem(K2, x) for x in v] for v in space]
        E = mat_nullspace(K2, [[K2.sub(A2[i][j], mu if i == j else K2.zero)
                                for j in range(m)] for i in range(m)])
        newspace = []
        for e in E:
            vec = [K2.zero] * d
            for t in range(m):
                if e[t] == K2.zero:
                    continue
                for i in range(d):
                    if space2[t][i] != K2.zero:
                        vec[i] = K2.add(vec[i], K2.mul(e[t], space2[t][i]))
            newspace.append(vec)
        out.extend(_refine(p, k, d, K2, newspace,
                           path + ((ell, _factor_key(K, h)),), ells, idx + 1, B, prec0))
    return out


def _leaf_class(p, k, d, K, space, path, B, prec0):
    rows = _basis_rows(p, k, prec0)
    space = [tuple(r) for r in rref(K, space)[0] if any(x != K.zero for x in r)]
    pick = next((v for v in space if v[0] != K.zero), None)
    if pick is None:
        values, ap = _values_via_restriction(p, k, d, K, space, B)
        return _RawClass(K, values, ap, len(space), path, True)
    inv0 = K.inv(pick[0])
    v = [K.mul(inv0, x) for x in pick]
    D = K.degree
    V = np.array([K.coords(x) for x in v], dtype=np.int64)       # d x D
    R = np.array(rows, dtype=np.int64)                           # d x prec
    C = (R.T @ V) % p                                            # prec x D
    values = {}
    for ell in primes_up_to(B):
        if ell != p:
            values[ell] = K.from_coords(tuple(int(x) for x in C[ell]))
    ap = K.from_coords(tuple(int(x) for x in C[p]))
    return _RawClass(K, values, ap, len(space), path, False, vec=v)


def _values_via_restriction(p, k, d, K, space, B):
    """Eigenvalue packet for a space with no a_1-normalizable vector: every
    T_ell (and T_p) restricted to the space must act as a scalar."""
    values = {}
    for ell in primes_up_to(B):
        if ell == p:
            continue
        values[ell] = _restriction_scalar(p, k, d, K, space, ell)
    ap = _restriction_scalar(p, k, d, K, space, p)
    return values, ap


def _restriction_scalar(p, k, d, K, space, m):
    rows = _basis_rows(p, k, m * d + 2)
    M = _op_matrix(rows, k, m, p)
    MK = M if K.degree == 1 else mat_lift(K, M)

    def apply(v):
        w = [K.zero] * d
        for i in range(d):
            acc = K.zero
            row = MK[i]
            for j in range(d):
                if v[j] != K.zero and row[j] != K.zero:
                    acc = K.add(acc, K.mul(row[j], v[j]))
            w[i] = acc
        return w

    coords = solve_in_span(K, space, apply(space[0]))
    if coords is None:
        raise ArithmeticError(f"T_{m} does not preserve the degenerate eigenspace")
    scalar = coords[0]
    for v in space:
        if apply(v) != [K.mul(scalar, x) for x in v]:
            raise ArithmeticError(
                f"mod-{p} Hecke action on S_{k} is not scalar on a degenerate "
                f"eigenspace at T_{m}; eigen data is not separable")
    return scalar


# ---------------------------------------------------------------------------
# canonicalization into the (p, d)-canonical extension field


def _embedding_to_canonical(K):
    """An evaluation map K -> canonical GF(p^degree), choosing the lex-least
    root for each tower generator; deterministic for a given tower."""
    p = K.p
    D = K.degree
    K_can = ffpoly.canonical_field(p, D)
    chain = []
    F = K
    while isinstance(F, ffpoly.ExtField):
        chain.append(F)
        F = F.base
    chain.reverse()

    def base_eval(x):
        return K_can.from_int(x)

    ev = base_eval
    for lvl, F in enumerate(chain):
        mod = F.modulus
        if lvl == 0:
            root = ffpoly.embed_root(tuple(mod), K_can)
        else:
            mapped = ffpoly.ptrim(K_can, [ev(c) for c in mod])
            root = ffpoly.split_roots(K_can, mapped)[0]

        def make(prev, root):
            def evaluate(x):
                acc = K_can.zero
                for c in reversed(x):
                    acc = K_can.add(K_can.mul(acc, root), prev(c))
                return acc
            return evaluate

        ev = make(ev, root)
    return ev, K_can


def _canonical_system(p, k, raw, B, maxdeg):
    D = raw.field.degree
    if D > maxdeg:
        return EigenSystem(p, k, D, {}, None, raw.mult,
                           not raw.degenerate, B, overflow=True)
    if D == 1:
        wrap = lambda x: PrimeFieldElem(p, x)
    else:
        ev, K_can = _embedding_to_canonical(raw.field)
        modulus = ffpoly.canonical_modulus(p, D)
        wrap = lambda x: ExtFieldElem(p, D, modulus, K_can.coords(ev(x)))
    values = {ell: wrap(v) for ell, v in sorted(raw.values.items())}
    return EigenSystem(p, k, D, values, wrap(raw.ap), raw.mult,
                       not raw.degenerate, B)


def _system_from_doc(p, k, B, doc):
    d = doc["d"]

    def elem(coords):
        ints = [int(c) for c in coords]
        if d == 1:
            return PrimeFieldElem(p, ints[0])
        return ExtFieldElem(p, d, ffpoly.canonical_modulus(p, d), tuple(ints))

    values = {int(ell): elem(c) for ell, c in doc["values"].items()}
    ap = None if doc["ap"] is None else elem(doc["ap"])
    return EigenSystem(p, k, d, values, ap, doc["mult"], doc["ss"], B,
                       overflow=doc["overflow"])


def eigensystems(p: int, k: int, B: int | None = None, *,
                 max_degree: int | None = None) -> list:
    """One EigenSystem per Galois-conjugacy class of mod-p eigen systems on S_k."""
    if not is_prime(p) or p <= 5:
        raise ValueError("p must be a prime > 5")
    if k % 2 or k < 0:
        raise ValueError("weight must be even and >= 0")
    if B is None:
        B = default_bound(p)
    if B < 2:
        raise ValueError("bound B must be >= 2")
    maxdeg = DEFAULT_MAX_EXT_DEGREE if max_degree is None else max_degree
    key = (p, k, B, maxdeg)
    got = _sys_mem.get(key)
    if got is not None:
        return got
    dc = diskcache.get_cache()
    doc = dc.get("eigsys", key) if dc else None
    if doc is not None:
        systems = [_system_from_doc(p, k, B, item) for item in doc]
    else:
        raw, _ss, _d = _raw_classes(p, k, B)
        systems = [_canonical_system(p, k, r, B, maxdeg) for r in raw]
        if dc:
            dc.put("eigsys", key, [s.as_doc() for s in systems])
    _sys_mem.put(key, systems)
    return systems


def ap_profile(p: int, k: int, B: int | None = None) -> list:
    """Light-weight per-class data [(value field degree, a_p == 0, mult)].

    Zero-ness of a_p does not depend on the field representation, so this
    skips canonicalization entirely; scans use it to locate non-ordinary
    weights at basis precision ~p.
    """
    if B is None:
        B = default_bound(p)
    key = (p, k, B)
    dc = diskcache.get_cache()
    doc = dc.get("profile", key) if dc else None
    if doc is not None:
        return [tuple(item) for item in doc]
    raw, _ss, _d = _raw_classes(p, k, B)
    out = [(r.field.degree, r.ap == r.field.zero, r.mult) for r in raw]
    if dc:
        dc.put("profile", key, [list(item) for item in out])
    return out


def expansions(p: int, k: int, prec: int, B: int | None = None) -> list:
    """Normalized eigenform q-expansions per eigen system class, as coordinate
    rows in the canonical value field: one dict per class with keys d, mult,
    coeffs (list of coords tuples, index = power of q)."""
    if B is None:
        B = default_bound(p)
    raw, _ss, d = _raw_classes(p, k, B)
    out = []
    for r in raw:
        D = r.field.degree
        if r.vec is None:
            out.append({"d": D, "mult": r.mult, "coeffs": None})
            continue
        rows = _basis_rows(p, k, max(prec, p + 2, 2 * d + 2, B + 2))
        K = r.field
        V = np.array([K.coords(x) for x in r.vec], dtype=np.int64)
        R = np.array([row[:max(prec, 1)] for row in rows], dtype=np.int64)
        C = (R.T @ V) % p
        if D == 1:
            coeffs = [(int(c[0]),) for c in C[:prec]]
        else:
            ev, K_can = _embedding_to_canonical(K)
            coeffs = [K_can.coords(ev(K.from_coords(tuple(int(x) for x in c))))
                      for c in C[:prec]]
        out.append({"d": D, "mult": r.mult, "coeffs": coeffs})
    return out
