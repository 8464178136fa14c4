"""Certification orchestration: per-prime hypothesis verdicts, machine-readable
certificates, scan reports, and canonical JSON emission.

A certificate for (p, mode) lists every candidate weight with its full check
record.  Ordinary candidates are the even 12 <= k < p with gcd(k-1, p-1) = 1
carrying an ordinary eigen system; they are checked for large image, a
companion form (local splitness), and the weight-zero tame shape for both
n = p-1 and n = p-2.  Non-ordinary candidates are the gcd-eligible
non-ordinary weights, checked by exact arithmetic; gcd-ineligible
non-ordinary weights are recorded with their failing gcd.
"""

import json
from dataclasses import dataclass, field
from math import gcd

from . import TOOL_VERSION
from .exactarith import DEFAULT_MAX_EXT_DEGREE
from .galoischecks import (CheckVerdict, FAIL, INCONCLUSIVE, PASS,
                           large_image_verdict, split_verdict)
from .hecke import default_bound, eigensystems, exact_ap_dim1
from .ordscan import EligibilityRow, nonordinary_weights
from .primes import is_prime, primes_up_to
from .qseries import dim_cusp
from .tame import lift_check_nonordinary, lift_check_ordinary

CERTIFIED = "CERTIFIED"
REJECTED = "REJECTED"
INCONCLUSIVE_CERT = "INCONCLUSIVE"

FORMAT_CERTIFICATE = "wzcert.certificate.v1"
FORMAT_REPORT = "wzcert.scan.v1"


@dataclass
class Certificate:
    p: int
    mode: str
    conclusion: str
    candidates: list
    bounds: dict
    split_pairs: list = field(default_factory=list)
    toolversion: str = TOOL_VERSION

    def as_doc(self):
        doc = {
            "format": FORMAT_CERTIFICATE,
            "toolversion": self.toolversion,
            "p": self.p,
            "mode": self.mode,
            "conclusion": self.conclusion,
            "bounds": self.bounds,
            "candidates": self.candidates,
        }
        if self.mode == "ordinary":
            doc["split_pairs"] = self.split_pairs
        return doc


def _check_prime(p):
    if not is_prime(p) or p <= 5:
        raise ValueError("certification requires a prime p > 5")


def _ext_cap(k):
    # large enough that no class in S_k can overflow
    return max(DEFAULT_MAX_EXT_DEGREE, dim_cusp(k))


def _candidate_conclusion(checks):
    verdicts = [c["verdict"] for c in checks]
    if any(v == FAIL for v in verdicts):
        return REJECTED
    if any(v == INCONCLUSIVE for v in verdicts):
        return INCONCLUSIVE_CERT
    return CERTIFIED


def _aggregate(candidates):
    if any(c["conclusion"] == CERTIFIED for c in candidates):
        return CERTIFIED
    if any(c["conclusion"] == INCONCLUSIVE_CERT for c in candidates):
        return INCONCLUSIVE_CERT
    return REJECTED


def _gcd_check(k, modulus, label):
    g = gcd(k - 1, modulus)
    verdict = PASS if g == 1 else FAIL
    return CheckVerdict("gcd_eligibility", verdict, {
        "k_minus_1": k - 1,
        "modulus": modulus,
        "modulus_label": label,
        "gcd": g,
    })


def _split_pair_survey(p, B):
    """All companion matches among weight pairs (k, p+1-k), 12 <= k <= (p+1)/2,
    regardless of gcd eligibility.

    This records local splitness evidence separately from the full hypothesis
    verdicts: a prime can carry a split ordinary pair whose weights all fail
    the gcd filter, in which case it never certifies even though companion
    data exists.  Matches of a class against its own twist are flagged: they
    witness a quadratic self-twist rather than a companion pair.
    """
    from .galoischecks import companion_match
    pairs = []
    for k in range(12, (p + 1) // 2 + 1, 2):
        kk = p + 1 - k
        if dim_cusp(k) == 0 or kk < 12 or dim_cusp(kk) == 0:
            continue
        for sys in eigensystems(p, k, B, max_degree=_ext_cap(k)):
            if sys.ordinary is not True:
                continue
            found = companion_match(p, k, sys, B, max_degree=_ext_cap(kk))
            if found is None:
                continue
            gsys, e, _j = found
            pairs.append({
                "k": k,
                "companion_weight": kk,
                "exponent": e,
                "gcd_k_minus_1_p_minus_1": gcd(k - 1, p - 1),
                "eligible": gcd(k - 1, p - 1) == 1,
                "self_twist": k == kk and gsys.as_doc() == sys.as_doc(),
                "a2": sys.as_doc()["values"]["2"],
            })
    return pairs


def certify_ordinary(p: int, B_img: int | None = None,
                     strict: bool = False) -> Certificate:
    """Certificate for the ordinary split regime at p (targets n = p-1, p-2)."""
    _check_prime(p)
    B = default_bound(p)
    if strict:
        B = max(B, (p + 1) // 12 + 2)  # equal to the default bound by design
    B_img = B if B_img is None else B_img
    B_use = max(B, B_img)
    candidates = []
    for k in range(12, p, 2):
        if gcd(k - 1, p - 1) != 1 or dim_cusp(k) == 0:
            continue
        for sys in eigensystems(p, k, B_use, max_degree=_ext_cap(k)):
            if sys.ordinary is not True:
                continue
            checks = [_gcd_check(k, p - 1, "p-1")]
            ord_witness = {"ap": sys.as_doc()["ap"]}
            if dim_cusp(k) == 1:
                ord_witness["ap_exact"] = str(exact_ap_dim1(k, p))
            checks.append(CheckVerdict("ordinary_at_p", PASS, ord_witness))
            checks.append(large_image_verdict(p, k, sys, "ordinary", B_img))
            checks.append(split_verdict(p, k, sys, B, max_degree=_ext_cap(p + 1 - k)))
            for n in (p - 2, p - 1):
                res = lift_check_ordinary(p, k, n)
                checks.append(CheckVerdict(
                    f"lift_weight0_n{n}", PASS if res.passed else FAIL, res.as_doc()))
            checks = [c.as_doc() for c in checks]
            candidates.append({
                "k": k,
                "n_values": [p - 2, p - 1],
                "eigen": sys.as_doc(),
                "checks": checks,
                "conclusion": _candidate_conclusion(checks),
            })
    bounds = {"B": B_use, "B_img": B_img, "strict": strict,
              "ext_degree_cap": "max(8, dim)"}
    return Certificate(p, "ordinary", _aggregate(candidates), candidates, bounds,
                       split_pairs=_split_pair_survey(p, B_use))


def _nonordinary_rows(p):
    """Eligibility split without the public p > 13 guard (p > 5 suffices here)."""
    eligible, ineligible = [], []
    for k in nonordinary_weights(p) if p > 13 else _small_nonordinary(p):
        g = gcd(k - 1, p + 1)
        (eligible if g == 1 else ineligible).append((k, g))
    return EligibilityRow(p, tuple(eligible), tuple(ineligible))


def _small_nonordinary(p):
    from .hecke import ap_profile
    out = []
    for k in range(12, p, 2):
        if dim_cusp(k) and any(z for _d, z, _m in ap_profile(p, k)):
            out.append(k)
    return out


def certify_nonordinary(p: int, B_img: int | None = None,
                        strict: bool = False) -> Certificate:
    """Certificate for the non-ordinary regime at p (target n = p)."""
    _check_prime(p)
    B = default_bound(p)
    if strict:
        B = max(B, (p + 1) // 12 + 2)
    B_img = B if B_img is None else B_img
    B_use = max(B, B_img)
    rows = _nonordinary_rows(p)
    candidates = []
    for k, g in sorted(rows.eligible + rows.ineligible):
        for sys in eigensystems(p, k, B_use, max_degree=_ext_cap(k)):
            if sys.ordinary is not False:
                continue
            checks = [_gcd_check(k, p + 1, "p+1")]
            checks.append(CheckVerdict("nonordinary_at_p", PASS, {
                "ap": sys.as_doc()["ap"],
                "class_degree": sys.d,
            }))
            if g == 1:
                checks.append(large_image_verdict(p, k, sys, "nonordinary"))
            res = lift_check_nonordinary(p, k)
            checks.append(CheckVerdict(
                f"lift_weight0_n{p}", PASS if res.passed else FAIL, res.as_doc()))
            checks = [c.as_doc() for c in checks]
            candidates.append({
                "k": k,
                "n_values": [p],
                "eigen": sys.as_doc(),
                "checks": checks,
                "conclusion": _candidate_conclusion(checks),
            })
    bounds = {"B": B_use, "B_img": B_img, "strict": strict,
              "ext_degree_cap": "max(8, dim)"}
    return Certificate(p, "nonordinary", _aggregate(candidates), candidates, bounds)


def certify(p: int, mode: str, B_img: int | None = None,
            strict: bool = False) -> Certificate:
    if mode == "ordinary":
        return certify_ordinary(p, B_img, strict)
    if mode == "nonordinary":
        return certify_nonordinary(p, B_img, strict)
    raise ValueError("mode must be ordinary or nonordinary")


# ---------------------------------------------------------------------------
# scans


@dataclass
class ScanReport:
    mode: str
    pmax: int
    certified: list
    certificates: list = field(default_factory=list)

    def as_doc(self):
        doc = {
            "format": FORMAT_REPORT,
            "toolversion": TOOL_VERSION,
            "mode": self.mode,
            "pmax": self.pmax,
            "certified": self.certified,
            "certificates": [c.as_doc() for c in self.certificates],
        }
        if self.mode == "ordinary":
            doc["split_pair_primes"] = [
                c.p for c in self.certificates
                if any(not pair["self_twist"] for pair in c.split_pairs)]
        return doc


def _certify_task(args):
    p, mode = args
    return certify(p, mode)


def scan_report(pmax: int, mode: str, jobs: int = 1) -> ScanReport:
    """Certify every prime 5 < p <= pmax; certified primes listed ascending.

    Results are independent of the job count: each prime is certified in
    isolation and reports are assembled in prime order.
    """
    if pmax < 17:
        raise ValueError("pmax must be >= 17")
    if mode not in ("ordinary", "nonordinary"):
        raise ValueError("scan mode must be ordinary or nonordinary")
    primes = [p for p in primes_up_to(pmax) if p > 5]
    if jobs > 1:
        import multiprocessing
        with multiprocessing.Pool(jobs) as pool:
            certs = pool.map(_certify_task, [(p, mode) for p in primes], chunksize=1)
    else:
        certs = [certify(p, mode) for p in primes]
    certified = [c.p for c in certs if c.conclusion == CERTIFIED]
    return ScanReport(mode, pmax, certified, certs)


# ---------------------------------------------------------------------------
# canonical JSON emission


def _canonical_json(doc):
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def emit_certificate(cert: Certificate, destination=None) -> str:
    """Serialize a certificate as canonical JSON (sorted keys, big integers as
    decimal strings); optionally write it to a path.  Round-trips losslessly."""
    text = _canonical_json(cert.as_doc())
    if destination is not None:
        with open(destination, "w", encoding="ascii") as fh:
            fh.write(text)
    return text


def parse_certificate(text: str) -> Certificate:
    doc = json.loads(text)
    if doc.get("format") != FORMAT_CERTIFICATE:
        raise ValueError("not a certificate document")
    return Certificate(doc["p"], doc["mode"], doc["conclusion"],
                       doc["candidates"], doc["bounds"],
                       doc.get("split_pairs", []), doc["toolversion"])


def emit_report(report: ScanReport, destination=None) -> str:
    text = _canonical_json(report.as_doc())
    if destination is not None:
        with open(destination, "w", encoding="ascii") as fh:
            fh.write(text)
    return text


def parse_report(text: str) -> ScanReport:
    doc = json.loads(text)
    if doc.get("format") != FORMAT_REPORT:
        raise ValueError("not a scan report document")
    certs = [Certificate(c["p"], c["mode"], c["conclusion"], c["candidates"],
                         c["bounds"], c.get("split_pairs", []), c["toolversion"])
             for c in doc["certificates"]]
    return ScanReport(doc["mode"], doc["pmax"], doc["certified"], certs)
