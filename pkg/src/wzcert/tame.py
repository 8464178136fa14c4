"""Exact calculus of tame inertial characters.

Level-1 characters are powers of the mod-p cyclotomic character (exponents
mod p-1); level-2 characters are conjugate pairs of powers of the fundamental
character of level 2 (exponents mod p^2-1, pair {e, pe}), which restricts to
level 1 exactly when p+1 divides the exponent.  Inertial types are canonical
multisets of such characters; symmetric powers of two-dimensional restrictions
and the crystalline-family reductions are computed by exact exponent
enumeration.
"""

from dataclasses import dataclass
from math import gcd

from .exactarith import ExponentResidue


@dataclass(frozen=True)
class TameChar:
    """A tame character: level 1 stores e mod p-1; level 2 stores the smaller
    member of the conjugate exponent pair {e, p e mod p^2-1}."""

    p: int
    level: int
    e: int

    def __post_init__(self):
        if self.level == 1:
            object.__setattr__(self, "e", self.e % (self.p - 1))
        elif self.level == 2:
            M = self.p * self.p - 1
            e = self.e % M
            if e % (self.p + 1) == 0:
                raise ValueError("level-2 exponent divisible by p+1 must be "
                                 "canonicalized to level 1")
            object.__setattr__(self, "e", min(e, e * self.p % M))
        else:
            raise ValueError("level must be 1 or 2")

    @property
    def exponent(self):
        M = self.p - 1 if self.level == 1 else self.p * self.p - 1
        return ExponentResidue(M, self.e)

    def pair(self):
        """The conjugate exponent pair for level 2."""
        if self.level != 2:
            raise ValueError("only level-2 characters have conjugate pairs")
        M = self.p * self.p - 1
        return (self.e, self.e * self.p % M)

    @property
    def dim(self):
        return self.level

    def sort_key(self):
        return (self.level, self.e)


@dataclass(frozen=True)
class InertialType:
    """Canonical multiset of tame characters: the semisimplified restriction
    to tame inertia of a mod-p local representation."""

    p: int
    chars: tuple

    @property
    def dim(self):
        return sum(c.dim for c in self.chars)

    def level1_exponents(self):
        return tuple(c.e for c in self.chars if c.level == 1)

    def level2_pairs(self):
        return tuple(c.pair() for c in self.chars if c.level == 2)

    def omega2_exponent_sum(self):
        """Sum of all level-2 exponents mod p^2-1, counting a level-1 char t
        as (p+1) t and a level-2 pair as e + pe."""
        M = self.p * self.p - 1
        total = 0
        for c in self.chars:
            if c.level == 1:
                total += (self.p + 1) * c.e
            else:
                e, pe = c.pair()
                total += e + pe
        return total % M

    def as_doc(self):
        return {
            "p": self.p,
            "dim": self.dim,
            "level1": sorted(self.level1_exponents()),
            "level2": [list(pair) for pair in sorted(self.level2_pairs())],
        }


def _build(p, chars):
    return InertialType(p, tuple(sorted(chars, key=TameChar.sort_key)))


def canonicalize(p: int, raw) -> InertialType:
    """Canonical form of raw character data: (level, exponent) pairs.

    A level-2 entry stands for the conjugate pair {e, pe} (either member may
    be given); when p+1 divides its exponent the pair degenerates to two
    copies of the level-1 character with exponent e/(p+1).
    """
    chars = []
    for level, e in raw:
        if level == 1:
            chars.append(TameChar(p, 1, e))
        elif level == 2:
            e %= p * p - 1
            if e % (p + 1) == 0:
                t = (e // (p + 1)) % (p - 1)
                chars.append(TameChar(p, 1, t))
                chars.append(TameChar(p, 1, t))
            else:
                chars.append(TameChar(p, 2, e))
        else:
            raise ValueError("level must be 1 or 2")
    return _build(p, chars)


def _from_omega2_multiset(p, exps):
    """Group a multiset of one-dimensional omega_2 exponents (closed under
    multiplication by p) into level-1 singles and level-2 conjugate pairs."""
    M = p * p - 1
    from collections import Counter
    count = Counter(e % M for e in exps)
    chars = []
    for e in sorted(count):
        while count[e] > 0:
            if e % (p + 1) == 0:
                count[e] -= 1
                chars.append(TameChar(p, 1, e // (p + 1)))
            else:
                pe = e * p % M
                if count[pe] <= (1 if pe == e else 0):
                    raise ValueError("exponent multiset is not stable under "
                                     "conjugation")
                count[e] -= 1
                count[pe] -= 1
                chars.append(TameChar(p, 2, e))
    return _build(p, chars)


def sym_ordinary(p: int, k: int, n: int) -> InertialType:
    """Inertial type of the (n-1)-st symmetric power of a split ordinary
    two-dimensional restriction, centered by the half-determinant twist:
    level-1 exponents (n-1)(k-2)/2 - (k-1)i for i = 0..n-1."""
    if k % 2:
        raise ValueError("weight must be even")
    if n < 1:
        raise ValueError("n must be >= 1")
    c = (n - 1) * (k - 2) // 2
    return _build(p, [TameChar(p, 1, c - (k - 1) * i) for i in range(n)])


def _sym2_exponents(p, a, n):
    M = p * p - 1
    return [(a * (n - 1 - i) + p * a * i) % M for i in range(n)]


def sym_level2(p: int, a: int, n: int) -> InertialType:
    """Inertial type of the (n-1)-st symmetric power of the irreducible
    two-dimensional type with fundamental-character exponents {a, pa}."""
    if a % (p + 1) == 0:
        raise ValueError("exponent a must not be divisible by p+1")
    if n < 1:
        raise ValueError("n must be >= 1")
    return _from_omega2_multiset(p, _sym2_exponents(p, a, n))


def rho_nm_inertial(p: int, n: int, m: int) -> InertialType:
    """Inertial type of the mod-p reduction of the crystalline family member
    with Hodge-Tate weights 0, m, ..., (n-1)m (symmetric power of the induced
    character with exponent -m)."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be >= 1")
    return _from_omega2_multiset(p, _sym2_exponents(p, (-m) % (p * p - 1), n))


def type_equal(T1: InertialType, T2: InertialType) -> bool:
    """Multiset equality of canonical forms."""
    if T1.p != T2.p:
        raise ValueError("mixed primes")
    return T1.chars == T2.chars


def rho_pm_independent(p: int, m: int) -> bool:
    """Whether the reduction with parameter m agrees with the m = 1 reduction;
    true whenever gcd(m, p+1) = 1."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return type_equal(rho_nm_inertial(p, p, m), rho_nm_inertial(p, p, 1))


@dataclass(frozen=True)
class OrdinaryLocalData:
    """Unramified unit-root datum of an ordinary local representation; by
    convention alpha is a_p mod p.  Only alpha != 0 is contractual."""

    p: int
    k: int
    alpha: object

    def __post_init__(self):
        if self.alpha.is_zero():
            raise ValueError("unit root must be nonzero")


@dataclass(frozen=True)
class LiftCheckResult:
    """Outcome of a weight-zero tame-shape comparison.

    On PASS, `lift` describes the crystalline lift symbolically: unramified
    characters lift to their Teichmueller representatives, cyclotomic powers
    lift exactly.  On FAIL, `mismatch` is the first residue whose multiset
    multiplicity differs (residue, expected_count, got_count).
    """

    passed: bool
    p: int
    k: int
    n: int
    got: InertialType
    expected: InertialType
    lift: dict | None = None
    mismatch: tuple | None = None

    def as_doc(self):
        doc = {
            "passed": self.passed,
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "computed_type": self.got.as_doc(),
            "expected_type": self.expected.as_doc(),
        }
        if self.lift is not None:
            doc["lift"] = self.lift
        if self.mismatch is not None:
            doc["first_mismatch"] = {
                "residue": self.mismatch[0],
                "expected_count": self.mismatch[1],
                "got_count": self.mismatch[2],
            }
        return doc


def _first_multiset_mismatch(p, got, expected):
    from collections import Counter
    cg = Counter(got.level1_exponents())
    ce = Counter(expected.level1_exponents())
    for r in range(p - 1):
        if cg[r] != ce[r]:
            return (r, ce[r], cg[r])
    return None


def lift_check_ordinary(p: int, k: int, n: int) -> LiftCheckResult:
    """PASS when the ordinary symmetric-power type is the weight-zero target
    {cyclotomic^-i : i = 0..n-1}; n must be p-1 or p-2."""
    if n not in (p - 1, p - 2):
        raise ValueError("n must be p-1 or p-2")
    got = sym_ordinary(p, k, n)
    expected = _build(p, [TameChar(p, 1, -i) for i in range(n)])
    if type_equal(got, expected):
        lift = {
            "characters": n,
            "shape": "unramified_teichmuller_unit * cyclotomic^-i for i = 0..n-1",
            "hodge_tate_weights": list(range(n)),
            "unit_duality": "psi[n-1-i] = psi[i]^-1",
        }
        return LiftCheckResult(True, p, k, n, got, expected, lift=lift)
    return LiftCheckResult(False, p, k, n, got, expected,
                           mismatch=_first_multiset_mismatch(p, got, expected))


def lift_check_nonordinary(p: int, k: int) -> LiftCheckResult:
    """PASS when gcd(k-1, p+1) = 1 and the symmetric-power type of the
    irreducible local input matches the weight-zero crystalline reduction.

    Defined for any 2 <= k < p; cuspidal callers only reach 12 <= k.
    """
    if not 2 <= k < p:
        raise ValueError("need 2 <= k < p")
    got = sym_level2(p, k - 1, p)
    expected = rho_nm_inertial(p, p, 1)
    g = gcd(k - 1, p + 1)
    if g == 1 and type_equal(got, expected):
        lift = {
            "characters": "weight-zero crystalline family member, m = 1",
            "hodge_tate_weights": list(range(p)),
        }
        return LiftCheckResult(True, p, k, p, got, expected, lift=lift)
    mismatch = None
    if not type_equal(got, expected):
        from collections import Counter
        cg = Counter([(c.level, c.e) for c in got.chars])
        ce = Counter([(c.level, c.e) for c in expected.chars])
        diff = sorted(set(cg) | set(ce))
        for key in diff:
            if cg[key] != ce[key]:
                mismatch = (key, ce[key], cg[key])
                break
    return LiftCheckResult(False, p, k, p, got, expected, mismatch=mismatch)
