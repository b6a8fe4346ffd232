"""
Lower bounds, upper bounds and exact values of A_q(n, 2k; k), the maximum
size of a partial k-spread in F_q^n.

Write n = k(t+1) + r with 0 <= r < k. Every bound is a registered rule with
an applicability predicate; ``upper_bound`` takes the minimum over applicable
rules and ``lower_bound`` the maximum, ties broken by rule priority. All
arithmetic is in Python integers and ``Fraction``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .errors import ParameterError
from .finite_field import is_prime_power
from .subspace import gaussian_binomial


def _check(q: int, n: int, k: int) -> None:
    if not is_prime_power(q):
        raise ParameterError(f"q={q} is not a prime power")
    if not (1 <= k <= n):
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")


def split(n: int, k: int) -> tuple[int, int]:
    """Return (t, r) with n = k(t+1) + r and 0 <= r < k (t >= -1 when n < k)."""
    r = n % k
    return (n - r) // k - 1, r


def theta_floor(q: int, k: int, r: int) -> int:
    """floor(theta) where 2*theta = sqrt(1 + 4q^k(q^k - q^r)) - (2q^k - 2q^r + 1).

    With s = isqrt(D) and B the subtracted term, floor((sqrt(D) - B)/2) equals
    (s - B) // 2 whether or not D is a perfect square.
    """
    if not (0 < r < k):
        raise ParameterError(f"need 0 < r < k, got r={r}, k={k}")
    D = 1 + 4 * q**k * (q**k - q**r)
    B = 2 * q**k - 2 * q**r + 1
    return (math.isqrt(D) - B) // 2


def _base(q: int, k: int, t: int, r: int) -> int:
    """q^r (q^(k(t+1)) - 1)/(q^k - 1), the zero-deficiency size."""
    return q**r * (q ** (k * (t + 1)) - 1) // (q**k - 1)


def deficiency(q: int, n: int, k: int, size: int) -> int:
    _check(q, n, k)
    t, r = split(n, k)
    if r == 0:
        raise ParameterError("deficiency is defined for k not dividing n")
    return _base(q, k, t, r) - size


def deficiency_lower_bound(q: int, k: int, r: int) -> int:
    """Smallest integer s with s >= q - 1 and s > (q^r - 1)/2 - q^(2r-k)/5."""
    x = Fraction(q**r - 1, 2) - Fraction(q) ** (2 * r - k) / 5
    return max(q - 1, math.floor(x) + 1)


# -- closed forms ---------------------------------------------------------------

def counting_bound(q: int, n: int, k: int) -> int:
    return (q**n - 1) // (q**k - 1)


def spread_size(q: int, n: int, k: int) -> int:
    return (q**n - 1) // (q**k - 1)


def almost_spread_size(q: int, n: int, k: int) -> int:
    return (q**n - q ** (k + 1) + q**k - 1) // (q**k - 1)


def multi_component_size(q: int, n: int, k: int) -> int:
    return 1 + sum(q ** (n - i * k) for i in range(1, n // k))


def binary_k3_size(n: int) -> int:
    r = n % 3
    return (2**n - (1, 9, 18)[r]) // 7


def binary_r2_size(n: int, k: int) -> int:
    return (2**n - 3 * 2**k - 1) // (2**k - 1)


def ternary_r2_upper(n: int, k: int) -> int:
    return (3**n - 9) // (3**k - 1) - 5


def theta_upper(q: int, n: int, k: int) -> int:
    t, r = split(n, k)
    return _base(q, k, t, r) - theta_floor(q, k, r) - 1


def deficiency_upper(q: int, n: int, k: int) -> int:
    t, r = split(n, k)
    return _base(q, k, t, r) - deficiency_lower_bound(q, k, r)


# -- rule registry ------------------------------------------------------------------

class Rule(NamedTuple):
    name: str
    applies: Callable[[int, int, int], bool]
    value: Callable[[int, int, int], int]


def _r(n, k):
    return n % k


# checked in order; the first applicable family provides the exact value
EXACT_RULES = [
    Rule("points", lambda q, n, k: k == 1, lambda q, n, k: gaussian_binomial(n, 1, q)),
    Rule("small-ambient", lambda q, n, k: n < 2 * k, lambda q, n, k: 1),
    Rule("binary-k3", lambda q, n, k: q == 2 and k == 3, lambda q, n, k: binary_k3_size(n)),
    Rule("spread", lambda q, n, k: _r(n, k) == 0, spread_size),
    Rule("almost-spread", lambda q, n, k: _r(n, k) == 1, almost_spread_size),
    Rule(
        "binary-r2",
        lambda q, n, k: q == 2 and k >= 4 and _r(n, k) == 2 and n >= 2 * k + 2,
        lambda q, n, k: binary_r2_size(n, k),
    ),
]

# upper-bound rules other than exact families, in tie-break priority order
UPPER_RULES = [
    Rule(
        "ternary-r2",
        lambda q, n, k: q == 3 and k >= 4 and _r(n, k) == 2 and n >= 2 * k + 2,
        lambda q, n, k: ternary_r2_upper(n, k),
    ),
    Rule("theta", lambda q, n, k: 0 < _r(n, k) < k, theta_upper),
    Rule("deficiency", lambda q, n, k: 0 < _r(n, k) < k, deficiency_upper),
    Rule("counting", lambda q, n, k: True, counting_bound),
]

LOWER_RULES = [
    Rule("spread", lambda q, n, k: _r(n, k) == 0, spread_size),
    Rule("multi-component", lambda q, n, k: _r(n, k) != 0, multi_component_size),
]


class Bound(NamedTuple):
    value: int
    rule: str


def exact_value(q: int, n: int, k: int) -> Bound | None:
    _check(q, n, k)
    for rule in EXACT_RULES:
        if rule.applies(q, n, k):
            return Bound(rule.value(q, n, k), rule.name)
    return None


def upper_bound_rules(q: int, n: int, k: int) -> dict[str, int]:
    """Every applicable upper-bound rule and its value, in priority order."""
    _check(q, n, k)
    out = {}
    ex = exact_value(q, n, k)
    if ex is not None:
        out[ex.rule] = ex.value
    for rule in UPPER_RULES:
        if rule.applies(q, n, k):
            out[rule.name] = rule.value(q, n, k)
    return out


def lower_bound_rules(q: int, n: int, k: int) -> dict[str, int]:
    _check(q, n, k)
    out = {}
    for rule in LOWER_RULES:
        if rule.applies(q, n, k):
            out[rule.name] = rule.value(q, n, k)
    ex = exact_value(q, n, k)
    if ex is not None and ex.rule not in out:
        out[ex.rule] = ex.value
    out.setdefault("trivial", 1)
    return out


def _pick(rules: dict[str, int], better) -> Bound:
    best = None
    for name, value in rules.items():
        if best is None or better(value, best.value):
            best = Bound(value, name)
    return best


def upper_bound(q: int, n: int, k: int) -> Bound:
    return _pick(upper_bound_rules(q, n, k), lambda a, b: a < b)


def lower_bound(q: int, n: int, k: int) -> Bound:
    return _pick(lower_bound_rules(q, n, k), lambda a, b: a > b)


@dataclass(frozen=True)
class BoundsRecord:
    q: int
    n: int
    k: int
    lower: int
    upper: int
    exact: int | None
    lower_rule: str
    upper_rule: str
    exact_rule: str | None
    r: int
    t: int
    s_lower: int | None
    s_construction: int | None

    @property
    def gap(self) -> int:
        return self.upper - self.lower

    def row(self) -> dict:
        return {
            "q": self.q, "n": self.n, "k": self.k,
            "lower": self.lower, "upper": self.upper,
            "exact": self.exact if self.exact is not None else "",
            "lower_rule": self.lower_rule, "upper_rule": self.upper_rule,
            "gap": self.gap,
        }


COLUMNS = ["q", "n", "k", "lower", "upper", "exact", "lower_rule", "upper_rule", "gap"]


def bounds_record(q: int, n: int, k: int) -> BoundsRecord:
    lo, up, ex = lower_bound(q, n, k), upper_bound(q, n, k), exact_value(q, n, k)
    t, r = split(n, k)
    return BoundsRecord(
        q, n, k, lo.value, up.value,
        ex.value if ex else None, lo.rule, up.rule, ex.rule if ex else None,
        r, t,
        _base(q, k, t, r) - up.value if r else None,
        q**r - 1 if r else None,
    )


def bounds_table(q_list: Iterable[int], k_range: Iterable[int], n_range: Iterable[int]) -> list[BoundsRecord]:
    qs, ks, ns = sorted(set(q_list)), sorted(set(k_range)), sorted(set(n_range))
    if not qs or not ks or not ns:
        raise ParameterError("parameter ranges must be nonempty")
    return [bounds_record(q, n, k) for q in qs for k in ks for n in ns if 1 <= k <= n]


def render_records(records: list[BoundsRecord], fmt: str = "text") -> str:
    rows = [r.row() for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    if fmt == "jsonl":
        return "".join(json.dumps(_jsonable(r), sort_keys=False) + "\n" for r in records)
    if fmt == "json":
        return json.dumps([_jsonable(r) for r in records], indent=1) + "\n"
    if fmt == "text":
        table = [COLUMNS] + [[str(row[c]) for c in COLUMNS] for row in rows]
        widths = [max(len(line[i]) for line in table) for i in range(len(COLUMNS))]
        return "".join(
            "  ".join(cell.rjust(w) for cell, w in zip(line, widths)).rstrip() + "\n" for line in table
        )
    raise ParameterError(f"unknown format {fmt!r}")


def _jsonable(r: BoundsRecord) -> dict:
    d = asdict(r)
    d["gap"] = r.gap
    return d
