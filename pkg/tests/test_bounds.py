import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

from spreadkit.bounds import (
    bounds_record,
    bounds_table,
    counting_bound,
    deficiency,
    deficiency_lower_bound,
    exact_value,
    lower_bound,
    lower_bound_rules,
    render_records,
    theta_floor,
    upper_bound,
    upper_bound_rules,
)
from spreadkit.constructions import multi_component_size
from spreadkit.errors import ParameterError

getcontext().prec = 80


def theta_floor_decimal(q, k, r):
    """Independent floor via high-precision decimal square root."""
    two_theta = Decimal(1 + 4 * q**k * (q**k - q**r)).sqrt() - (2 * q**k - 2 * q**r + 1)
    return math.floor(two_theta / 2)


def test_theta_examples():
    assert theta_floor(2, 4, 2) == 1
    assert theta_floor(2, 3, 2) == 1
    assert theta_floor(3, 4, 2) == 3
    with pytest.raises(ParameterError):
        theta_floor(2, 4, 4)


def test_theta_matches_decimal_oracle():
    for q in (2, 3, 4, 5, 7, 8, 9):
        for k in range(2, 14):
            for r in range(1, k):
                assert theta_floor(q, k, r) == theta_floor_decimal(q, k, r)


def test_theta_closed_form_grid():
    mismatches = []
    for q in (2, 3, 4, 5, 7, 8, 9):
        for r in range(1, 5):
            for k in range(2 * r, 2 * r + 9):
                if theta_floor(q, k, r) != (q**r - 2) // 2:
                    mismatches.append((q, k, r))
    for q in (2, 3):
        for r in range(2, 5):
            if theta_floor(q, 2 * r - 1, r) != (q**r - 2) // 2:
                mismatches.append((q, 2 * r - 1, r))
    assert mismatches == []


def test_upper_bound_examples():
    assert upper_bound(2, 10, 4) == (65, "binary-r2")
    assert upper_bound_rules(2, 10, 4)["theta"] == 66
    assert upper_bound(2, 11, 4) == (133, "theta")
    assert upper_bound(3, 10, 4) == (733, "ternary-r2")
    assert upper_bound_rules(3, 10, 4)["theta"] == 734
    assert upper_bound(2, 8, 3) == (34, "binary-k3")


def test_lower_bound_examples():
    assert lower_bound(2, 10, 4) == (65, "multi-component")
    assert lower_bound(2, 8, 3) == (34, "binary-k3")
    assert lower_bound(2, 11, 4) == (129, "multi-component")
    assert lower_bound(3, 10, 4) == (730, "multi-component")
    assert lower_bound_rules(2, 8, 3)["multi-component"] == 33


def test_exact_value_examples():
    assert exact_value(2, 9, 4) == (33, "almost-spread")
    assert exact_value(2, 12, 4) == (273, "spread")
    assert exact_value(2, 10, 4) == (65, "binary-r2")
    assert exact_value(2, 11, 4) is None
    assert exact_value(2, 6, 4) == (1, "small-ambient")
    assert exact_value(3, 5, 1) == (121, "points")


def test_binary_k3_family():
    for m in range(2, 5):
        assert exact_value(2, 3 * m, 3).value == (2 ** (3 * m) - 1) // 7
        assert exact_value(2, 3 * m + 1, 3).value == (2 ** (3 * m + 1) - 9) // 7
        assert exact_value(2, 3 * m + 2, 3).value == (2 ** (3 * m + 2) - 18) // 7
        # one more than the construction at r = 2
        assert exact_value(2, 3 * m + 2, 3).value == multi_component_size(2, 3 * m + 2, 3) + 1


def test_almost_spread_closed_forms_agree():
    for q in (2, 3, 4, 5):
        for k in range(2, 7):
            for t in range(1, 4):
                n = k * (t + 1) + 1
                a = (q**n - q) // (q**k - 1) - q + 1
                b = (q**n - q ** (k + 1) + q**k - 1) // (q**k - 1)
                c = 1 + sum(q ** (n - i * k) for i in range(1, n // k))
                assert a == b == c == exact_value(q, n, k).value


def test_binary_r2_equals_construction():
    for k in range(4, 9):
        for t in range(1, 4):
            n = k * (t + 1) + 2
            assert exact_value(2, n, k).value == multi_component_size(2, n, k)
    assert exact_value(2, 12, 5).value == 129 == 2**7 + 1
    assert exact_value(2, 10, 4).value == 2**6 + 1


def test_grid_invariants():
    for q in (2, 3, 4, 5):
        for k in range(1, 7):
            for n in range(k, 21):
                rec = bounds_record(q, n, k)
                assert rec.lower <= rec.upper <= counting_bound(q, n, k)
                if rec.exact is not None:
                    assert rec.lower == rec.upper == rec.exact


def test_deficiency_examples():
    assert deficiency(2, 10, 4, 65) == 3
    assert deficiency(2, 9, 4, 33) == 1
    for q in (2, 3, 4):
        for k in (3, 4, 5):
            for n in range(2 * k + 1, 4 * k):
                if n % k:
                    assert deficiency(q, n, k, multi_component_size(q, n, k)) == q ** (n % k) - 1
    with pytest.raises(ParameterError):
        deficiency(2, 8, 4, 17)


def test_deficiency_lower_bound_is_smallest_strict_integer():
    for q in (2, 3, 4, 5):
        for k in range(2, 9):
            for r in range(1, k):
                s = deficiency_lower_bound(q, k, r)
                x = Fraction(q**r - 1, 2) - Fraction(q) ** (2 * r - k) / 5
                assert s >= q - 1
                assert s > x
                assert s - 1 < q - 1 or not (s - 1 > x)


def test_table_examples():
    recs = {(r.q, r.n, r.k): r for r in bounds_table([2], range(4, 6), range(8, 14))}
    assert recs[(2, 10, 4)].exact == 65
    assert recs[(2, 12, 5)].exact == 129
    r = recs[(2, 11, 4)]
    assert (r.lower, r.upper, r.gap) == (129, 133, 4)


def test_k3_table_provenance():
    recs = bounds_table([2], [3], range(6, 13))
    assert [r.exact for r in recs] == [9, 17, 34, 73, 145, 290, 585]
    r8 = next(r for r in recs if r.n == 8)
    assert r8.exact_rule == "binary-k3" and r8.lower_rule == "binary-k3"
    assert lower_bound_rules(2, 8, 3)["multi-component"] == 33


def test_render_formats_are_stable():
    recs = bounds_table([2], [4], range(8, 14))
    csv_text = render_records(recs, "csv")
    assert csv_text.splitlines()[0] == "q,n,k,lower,upper,exact,lower_rule,upper_rule,gap"
    assert "2,10,4,65,65,65,multi-component,binary-r2,0" in csv_text.splitlines()
    assert render_records(recs, "csv") == csv_text
    assert render_records(recs, "json") == render_records(bounds_table([2], [4], range(8, 14)), "json")
    assert len(render_records(recs, "jsonl").splitlines()) == len(recs)
    with pytest.raises(ParameterError):
        render_records(recs, "xml")
