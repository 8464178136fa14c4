import pytest

from wzcert import hecke
from wzcert.ordscan import (eligible_nonordinary, nonordinary_weights,
                            scan_nonordinary)


def test_nonordinary_weights_anchors():
    ws59 = nonordinary_weights(59)
    assert 16 in ws59 and min(ws59) == 16
    assert 38 in nonordinary_weights(79)
    assert 26 not in nonordinary_weights(107)


def test_nonordinary_weights_sorted_even():
    ws = nonordinary_weights(79)
    assert ws == sorted(ws)
    assert all(k % 2 == 0 and 12 <= k < 79 for k in ws)


def test_eligibility_rows():
    row = eligible_nonordinary(79)
    assert (38, 1) in row.eligible
    row59 = eligible_nonordinary(59)
    assert row59.eligible == ()
    assert (16, 15) in row59.ineligible
    assert eligible_nonordinary(151).eligible != ()


def test_scan_prefix_and_anchors():
    assert scan_nonordinary(85) == [79]
    s100 = scan_nonordinary(100)
    assert s100 == [79]
    s110 = scan_nonordinary(110)
    assert s110[:len(s100)] == s100


def test_recomputation_confirms_nonordinary():
    for k in nonordinary_weights(59):
        systems = hecke.eigensystems(59, k, 13)
        assert any(s.ap.is_zero() for s in systems)


def test_preconditions():
    for bad in (13, 12, 15):
        with pytest.raises(ValueError):
            nonordinary_weights(bad)
    with pytest.raises(ValueError):
        scan_nonordinary(16)
