"""
Partial-spread verification and the hole/hyperplane analyses built on it.

Everything here is exact: point incidences are computed by enumerating
projective points, and the counting arguments use ``fractions.Fraction``.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .constructions import SubspaceCode
from .errors import InconsistentSystem, MixedDimensions, NotASpread, ParameterError
from .subspace import Vector, all_points, enumerate_points, hyperplane_normals, null_space, num_points, Subspace


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    min_subspace_distance: float | int
    witness_pair: tuple[int, int] | None
    codeword_count: int
    hole_count: int | None

    def summary(self) -> str:
        status = "valid" if self.valid else "INVALID"
        parts = [f"{status} partial spread", f"codewords={self.codeword_count}"]
        parts.append(f"min_subspace_distance={self.min_subspace_distance}")
        if self.hole_count is not None:
            parts.append(f"holes={self.hole_count}")
        if self.witness_pair is not None:
            parts.append(f"witness_pair={self.witness_pair[0]},{self.witness_pair[1]}")
        return ", ".join(parts)


def _point_cover(C: SubspaceCode) -> dict[Vector, list[int]]:
    cover: dict[Vector, list[int]] = defaultdict(list)
    for idx, U in enumerate(C.codewords):
        for pt in enumerate_points(U):
            cover[pt].append(idx)
    return cover


def _check_dims(C: SubspaceCode) -> None:
    if any(U.dim != C.k for U in C.codewords):
        raise MixedDimensions("codewords of different dimensions")


def verify_spread(C: SubspaceCode) -> VerificationReport:
    """Check pairwise trivial intersection via point coverage.

    The meet of two codewords sharing s points has dimension j with
    (q^j - 1)/(q - 1) = s, which gives the exact minimum subspace distance.
    """
    _check_dims(C)
    q, k = C.q, C.k
    cover = _point_cover(C)
    shared: Counter[tuple[int, int]] = Counter()
    for owners in cover.values():
        if len(owners) > 1:
            for pair in itertools.combinations(owners, 2):
                shared[pair] += 1
    if len(C) <= 1:
        min_ds = math.inf
    elif not shared:
        min_ds = 2 * k
    else:
        worst = max(shared.values())
        meet = round(math.log(worst * (q - 1) + 1, q))
        min_ds = 2 * k - 2 * meet
    valid = not shared
    witness = min(shared) if shared else None
    holes = num_points(C.n, q) - len(C) * num_points(k, q) if valid else None
    return VerificationReport(valid, min_ds, witness, len(C), holes)


def _require_spread(C: SubspaceCode) -> dict[Vector, list[int]]:
    _check_dims(C)
    cover = _point_cover(C)
    if any(len(o) > 1 for o in cover.values()):
        raise NotASpread("codewords intersect nontrivially")
    return cover


def compute_holes(C: SubspaceCode) -> list[Vector]:
    """Uncovered points, lexicographic order."""
    cover = _require_spread(C)
    return [pt for pt in all_points(C.ctx, C.n) if pt not in cover]


# -- vector space partition types ------------------------------------------

@dataclass(frozen=True, order=True)
class PartitionType:
    """Multiplicities of a vector space partition, stored as (dim, count)
    pairs with count > 0 and dims descending."""

    parts: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, counts: dict[int, int] | Iterable[tuple[int, int]]) -> PartitionType:
        items = counts.items() if isinstance(counts, dict) else counts
        merged: Counter[int] = Counter()
        for d, m in items:
            if d < 1:
                raise ParameterError(f"member dimension must be >= 1, got {d}")
            merged[d] += m
        return cls(tuple(sorted(((d, m) for d, m in merged.items() if m > 0), reverse=True)))

    def multiplicity(self, d: int) -> int:
        return dict(self.parts).get(d, 0)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.parts)

    @property
    def tail_dim(self) -> int:
        return self.parts[-1][0]

    @property
    def tail_length(self) -> int:
        return self.parts[-1][1]

    @property
    def second_dim(self) -> int | None:
        return self.parts[-2][0] if len(self.parts) > 1 else None

    def covered_vectors(self, q: int) -> int:
        return sum(m * (q**d - 1) for d, m in self.parts)

    def is_partition_count(self, q: int, n: int) -> bool:
        return self.covered_vectors(q) == q**n - 1

    def __str__(self):
        return " ".join(f"{d}^{m}" for d, m in self.parts)


def partition_type(C: SubspaceCode, count_holes_as_points: bool = True) -> PartitionType:
    _require_spread(C)
    counts = {C.k: len(C)}
    if count_holes_as_points:
        holes = num_points(C.n, C.q) - len(C) * num_points(C.k, C.q)
        counts = Counter(counts)
        counts[1] += holes
    return PartitionType.of(dict(counts))


# -- hyperplane spectrum ----------------------------------------------------

@dataclass(frozen=True)
class HyperplaneRecord:
    normal: Vector
    contained: int
    cut: int
    holes: int


@dataclass
class HyperplaneSpectrum:
    q: int
    n: int
    k: int
    code_size: int
    hole_count: int
    records: list[HyperplaneRecord]
    counts: dict[PartitionType, int] = field(default_factory=dict)

    def i_counts(self) -> dict[int, int]:
        """Number of hyperplanes containing exactly i codewords."""
        return dict(sorted(Counter(r.contained for r in self.records).items()))

    def identities(self) -> dict[str, tuple[int, int]]:
        """Incidence identities as (observed, predicted) pairs."""
        q, n, k, m = self.q, self.n, self.k, self.code_size
        out = {
            "hyperplanes": (len(self.records), num_points(n, q)),
            "codeword_flags": (sum(r.contained for r in self.records), m * num_points(n - k, q)),
            "hole_flags": (sum(r.holes for r in self.records), self.hole_count * num_points(n - 1, q)),
        }
        if n >= 2 * k:
            out["codeword_pair_flags"] = (
                sum(comb(r.contained, 2) for r in self.records),
                comb(m, 2) * num_points(n - 2 * k, q),
            )
        return out

    def identities_hold(self) -> bool:
        return all(a == b for a, b in self.identities().values())


def section_type(k: int, contained: int, cut: int, holes: int) -> PartitionType:
    counts: Counter[int] = Counter()
    counts[k] += contained
    if k > 1:
        counts[k - 1] += cut
    counts[1] += holes
    return PartitionType.of(dict(counts))


def hyperplane_spectrum(C: SubspaceCode) -> HyperplaneSpectrum:
    """Classify every hyperplane H by the section {U ∩ H} plus holes on H.

    U lies in H = h⊥ exactly when h ∈ U⊥, and a hole x lies on H exactly when
    h ∈ x⊥; so both counts come from enumerating points of complements.
    """
    holes = compute_holes(C)
    ctx, n = C.ctx, C.n
    contained: Counter[Vector] = Counter()
    for U in C.codewords:
        perp = null_space(ctx, U.basis, n)
        if perp:
            contained.update(enumerate_points(Subspace(ctx, n, perp)))
    on_h: Counter[Vector] = Counter()
    for x in holes:
        perp = null_space(ctx, [x], n)
        if perp:
            on_h.update(enumerate_points(Subspace(ctx, n, perp)))
    records = []
    counts: Counter[PartitionType] = Counter()
    for h in hyperplane_normals(ctx, n):
        i = contained[h]
        rec = HyperplaneRecord(h, i, len(C) - i, on_h[h])
        records.append(rec)
        counts[section_type(C.k, rec.contained, rec.cut, rec.holes)] += 1
    return HyperplaneSpectrum(C.q, n, C.k, len(C), len(holes), records, dict(sorted(counts.items(), reverse=True)))


# -- tail condition -----------------------------------------------------------

@dataclass(frozen=True)
class TailVerdict:
    admissible: bool
    clause: str
    requirement: str

    def __bool__(self):
        return self.admissible


def tail_admissible(q: int, d1: int, d2: int, n1: int) -> TailVerdict:
    """Length-of-tail condition for a vector space partition whose tail
    consists of n1 subspaces of dimension d1, next dimension d2."""
    if q < 2 or d1 < 1 or d2 <= d1 or n1 < 1:
        raise ParameterError(f"need q >= 2, 1 <= d1 < d2, n1 >= 1; got q={q}, d1={d1}, d2={d2}, n1={n1}")
    divides = n1 % q ** (d2 - d1) == 0
    wide = d2 >= 2 * d1
    if not divides and not wide:
        bound = q**d1 + 1
        return TailVerdict(n1 >= bound, "i", f"n1 >= {bound}")
    if not divides and wide:
        exact = (q**d2 - 1) // (q**d1 - 1) if d2 % d1 == 0 else None
        bound = 2 * q ** (d2 - d1)
        ok = (exact is not None and n1 == exact) or n1 > bound
        req = (f"n1 == {exact} or " if exact is not None else "") + f"n1 > {bound}"
        return TailVerdict(ok, "ii", req)
    if divides and not wide:
        bound = q**d2 - q**d1 + q ** (d2 - d1)
        return TailVerdict(n1 >= bound, "iii", f"n1 >= {bound}")
    bound = q**d2
    return TailVerdict(n1 >= bound, "iv", f"n1 >= {bound}")


# -- forbidden partition certificates ----------------------------------------

@dataclass(frozen=True)
class ContradictionCertificate:
    q: int
    k: int
    t: int
    variant: str
    partition: PartitionType
    type_consistent: bool
    residue: int
    residue_modulus: int
    candidate_hole_counts: tuple[int, ...]
    excluded_by_tail: tuple[int, ...]
    min_hole_count: int
    hyperplanes: int
    hyperplanes_per_point: int
    total_hole_lower_bound: Fraction
    intermediate_bound: Fraction
    available_holes: int
    certified: bool

    def chain(self) -> tuple[Fraction, Fraction, int]:
        return self.total_hole_lower_bound, self.intermediate_bound, self.available_holes


def forbidden_partition_check(q: int, k: int, t: int, variant: str) -> ContradictionCertificate:
    """Redo the counting argument showing that a vector space partition of
    F_q^(k(t+1)+1) with hole tail of the given length cannot exist.

    ``q2_lemma``: type k^a (k-1)^b 1^(1+2^(k-1)) over F_2.
    ``odd_q_lemma``: type k^(p-1) (k-1)^(m-p+1) 1^((q+1)/2 + q^(k-1)) for odd q.

    Intersecting with a hyperplane leaves m non-holes of dimension >= k-2,
    which pins the hole count L_H modulo q^(k-2). The smallest residue
    candidate fails the tail condition, so every hyperplane carries at least
    the next one; double counting hole/hyperplane flags then needs more holes
    than exist.
    """
    if t < 1 or k < 4:
        raise ParameterError(f"need t >= 1 and k >= 4, got t={t}, k={k}")
    N = k * (t + 1)
    if variant == "q2_lemma":
        if q != 2:
            raise ParameterError("q2_lemma requires q = 2")
        nk = (2 ** (k * t + 2) + 2**k - 5) // (2**k - 1)
        nk1 = 2 ** (k * t + 2) - 3
        available = 1 + 2 ** (k - 1)
        ptype = PartitionType.of({k: nk, k - 1: nk1, 1: available})
    elif variant == "odd_q_lemma":
        if q < 3 or q % 2 == 0:
            raise ParameterError("odd_q_lemma requires odd q >= 3")
        p = (q ** (k * t + 2) - q**2) // (q**k - 1) + (q + 1) // 2
        m = (q ** (N + 2) - q**2) // (q**k - 1) - (q**2 - 1) // 2
        available = (q + 1) // 2 + q ** (k - 1)
        ptype = PartitionType.of({k: p - 1, k - 1: m - p + 1, 1: available})
    else:
        raise ParameterError(f"unknown variant {variant!r}")

    non_holes = sum(mult for d, mult in ptype.parts if d > 1)
    modulus = q ** (k - 2)
    # a subspace of dim >= k-2 has (q^(k-2)-1)/(q-1) points mod q^(k-2)
    c = num_points(k - 2, q)
    residue = (num_points(N, q) - non_holes * c) % modulus
    candidates = tuple(range(residue, available + 1, modulus))
    # second-lowest dimension in the section is one of k-2, k-1, k
    excluded = tuple(
        L for L in candidates
        if L > 0 and not any(tail_admissible(q, 1, d2, L) for d2 in (k - 2, k - 1, k))
    )
    remaining = [L for L in candidates if L not in excluded]
    L_min = min(remaining)
    hyperplanes = num_points(N + 1, q)
    per_point = num_points(N, q)
    lower = Fraction(L_min * hyperplanes, per_point)
    intermediate = Fraction(2 * L_min) if variant == "q2_lemma" else Fraction(q * L_min)
    certified = lower > available
    return ContradictionCertificate(
        q, k, t, variant, ptype, ptype.is_partition_count(q, N + 1), residue, modulus,
        candidates, excluded, L_min, hyperplanes, per_point, lower, intermediate, available, certified,
    )


# -- standard equations -----------------------------------------------------

@dataclass(frozen=True)
class Profile:
    """Hyperplane profile: i contained codewords and L holes."""

    i: int
    holes: int | None = None


@dataclass
class StandardEquationsResult:
    n: int
    k: int
    q: int
    code_size: int
    profiles: list[Profile]
    equations: list[tuple[list[int], int]]
    general_solution: dict[int, tuple[Fraction, dict[int, Fraction]]]
    free: list[int]
    free_ranges: dict[int, tuple[int, int]]
    spectra: list[tuple[int, ...]]
    constrained_spectra: list[tuple[int, ...]] | None = None
    span_constraint_validated: bool | None = None

    def satisfies(self, spectrum: Sequence[int]) -> bool:
        """True if the spectrum (one count per profile) solves all equations."""
        return len(spectrum) == len(self.profiles) and all(
            sum(c * a for c, a in zip(row, spectrum)) == b for row, b in self.equations
        )

    def describe(self) -> list[str]:
        lines = []
        for piv, (const, coeffs) in self.general_solution.items():
            expr = _fmt_affine(const, coeffs, self.profiles)
            lines.append(f"a_{self.profiles[piv].i} = {expr}")
        for f, (lo, hi) in self.free_ranges.items():
            lines.append(f"{lo} <= a_{self.profiles[f].i} <= {hi}")
        return lines


def _fmt_affine(const: Fraction, coeffs: dict[int, Fraction], profiles: list[Profile]) -> str:
    terms = [str(const)] if const or not coeffs else []
    for f, c in coeffs.items():
        if c == 0:
            continue
        name = f"a_{profiles[f].i}"
        mag = abs(c)
        body = name if mag == 1 else f"{mag}{name}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms) if terms else "0"


def hyperplane_profiles(n: int, k: int, q: int, code_size: int) -> list[Profile]:
    """Feasible (i, L) hyperplane profiles for a partial spread of the given size.

    L follows from counting points in the hyperplane; profiles with L out of
    range or a hole tail failing the tail condition are dropped.
    """
    total_holes = num_points(n, q) - code_size * num_points(k, q)
    if total_holes < 0:
        raise ParameterError(f"{code_size} codewords do not fit in F_{q}^{n}")
    out = []
    for i in range(code_size + 1):
        L = num_points(n - 1, q) - i * num_points(k, q) - (code_size - i) * num_points(k - 1, q)
        if L < 0 or L > total_holes:
            continue
        if L > 0 and k > 2:
            d2 = k - 1 if i < code_size else k
            if not tail_admissible(q, 1, d2, L):
                continue
        out.append(Profile(i, L))
    return out


def _rref_fractions(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [r[:] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = m[r][c]
        m[r] = [x / s for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve_standard_equations(
    n: int,
    k: int,
    q: int,
    code_size: int,
    per_hyperplane_profiles: Sequence[Profile | int | tuple[int, int]],
    span_constraint: bool = False,
    max_enumeration: int = 10_000_000,
    enumerate_spectra: bool = True,
) -> StandardEquationsResult:
    """All nonnegative integer hyperplane spectra (a_i) satisfying

        sum a_i            = #hyperplanes
        sum i a_i          = code_size * #hyperplanes through a codeword
        sum C(i,2) a_i     = C(code_size,2) * #hyperplanes through a 2k-space

    With ``span_constraint``, the number of hyperplanes carrying every hole
    must equal the number of hyperplanes through some subspace of dimension
    j >= the least dimension able to hold all holes.
    """
    if code_size < 1:
        raise ParameterError("code_size must be >= 1")
    profiles = [_as_profile(p) for p in per_hyperplane_profiles]
    if not profiles:
        raise ParameterError("need at least one profile")
    P = len(profiles)
    rhs = [
        num_points(n, q),
        code_size * num_points(n - k, q),
        comb(code_size, 2) * num_points(max(n - 2 * k, 0), q),
    ]
    coeff_rows = [[1] * P, [p.i for p in profiles], [comb(p.i, 2) for p in profiles]]
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(coeff_rows, rhs)]
    red, pivots = _rref_fractions(aug, P)
    if any(row[P] != 0 for row in red[len(pivots):]):
        raise InconsistentSystem("the standard equations have no rational solution")
    free = [c for c in range(P) if c not in pivots]
    general = {}
    for row, pc in zip(red, pivots):
        general[pc] = (row[P], {f: -row[f] for f in free})

    if not enumerate_spectra:
        return StandardEquationsResult(
            n, k, q, code_size, profiles, [(r, b) for r, b in zip(coeff_rows, rhs)],
            general, free, {}, [],
        )
    H = rhs[0]
    count = (H + 1) ** len(free)
    if count > max_enumeration:
        raise ParameterError(f"{len(free)} free variables: {count} candidates exceed the enumeration cap")
    spectra = []
    for values in itertools.product(range(H + 1), repeat=len(free)):
        sol = [0] * P
        for f, v in zip(free, values):
            sol[f] = v
        ok = True
        for pc, (const, coeffs) in general.items():
            val = const + sum(c * sol[f] for f, c in coeffs.items())
            if val.denominator != 1 or val < 0:
                ok = False
                break
            sol[pc] = int(val)
        if ok:
            spectra.append(tuple(sol))
    if not spectra:
        raise InconsistentSystem("no nonnegative integer solution")
    ranges = {}
    if len(free) == 1:
        f = free[0]
        vals = [s[f] for s in spectra]
        ranges[f] = (min(vals), max(vals))

    result = StandardEquationsResult(
        n, k, q, code_size, profiles, [(r, b) for r, b in zip(coeff_rows, rhs)],
        general, free, ranges, spectra,
    )
    if span_constraint:
        result.constrained_spectra = _apply_span_constraint(result)
        result.span_constraint_validated = q == 2
        if not result.constrained_spectra:
            raise InconsistentSystem("no spectrum satisfies the hole-span constraint")
    return result


def _as_profile(p) -> Profile:
    if isinstance(p, Profile):
        return p
    if isinstance(p, int):
        return Profile(p)
    i, L = p
    return Profile(i, L)


def _apply_span_constraint(res: StandardEquationsResult) -> list[tuple[int, ...]]:
    n, k, q = res.n, res.k, res.q
    total_holes = num_points(n, q) - res.code_size * num_points(k, q)
    profiles = res.profiles
    if any(p.holes is None for p in profiles):
        # derive hole counts from point counting
        derived = {p.i: p.holes for p in hyperplane_profiles(n, k, q, res.code_size)}
        for idx, p in enumerate(profiles):
            if p.holes is None:
                L = num_points(n - 1, q) - p.i * num_points(k, q) - (res.code_size - p.i) * num_points(k - 1, q)
                profiles[idx] = Profile(p.i, derived.get(p.i, L))
    full = [idx for idx, p in enumerate(profiles) if p.holes == total_holes]
    if total_holes == 0 or not full:
        return list(res.spectra)
    min_dim = next(j for j in range(n + 1) if num_points(j, q) >= total_holes)
    allowed = {num_points(n - j, q) for j in range(min_dim, n + 1)}
    return sorted(s for s in res.spectra if sum(s[idx] for idx in full) in allowed)
