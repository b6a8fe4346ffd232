"""
Exact arithmetic in GF(p) and GF(p^e).

Elements are plain integers in ``[0, q)``. For an extension field the base-p
digits of the integer are the coefficients of the residue polynomial, lowest
degree first, so ``x^3 + 1`` in GF(16) is ``0b1001 == 9``. Prime fields use
ordinary modular arithmetic; extension fields use exp/log tables built once
per field and cached, since all fields of interest here are tiny.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import DegreeOutOfRange, DivisionByZero, FieldTooLarge, NotPrime, ParameterError

MAX_FIELD_ORDER = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``, or raise ParameterError."""
    if q < 2:
        raise ParameterError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ParameterError(f"{q} is not a prime power")
    return p, e


def is_prime_power(q: int) -> bool:
    try:
        prime_power(q)
    except ParameterError:
        return False
    return True


# -- polynomials over GF(p) as coefficient lists, lowest degree first --------

def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        a, d = divmod(a, p)
        out.append(d)
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial m."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [c % p for c in a[:dm]] + [0] * max(0, dm - len(a))


def _poly_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, m, p)


def _poly_divides(d: Sequence[int], f: Sequence[int], p: int) -> bool:
    """True if the monic polynomial d divides f."""
    return not any(_poly_mod(list(f), d, p))


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    e = len(poly) - 1
    for deg in range(1, e // 2 + 1):
        for low in range(p**deg):
            divisor = _digits(low, p, deg) + [1]
            if _poly_divides(divisor, poly, p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree e (highest coefficient first).

    Monic polynomials packed as base-p integers sort in exactly that order.
    """
    for low in range(p**e):
        poly = _digits(low, p, e) + [1]
        if is_irreducible(poly, p):
            return poly
    raise AssertionError(f"no irreducible polynomial of degree {e} over GF({p})")


class FieldCtx:
    """A finite field GF(p^e). Immutable; compare by ``(p, e, modulus)``."""

    __slots__ = ("p", "e", "q", "modulus", "_exp", "_log")

    def __init__(self, p: int, e: int, modulus: Sequence[int]):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(modulus)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        if e > 1:
            self._build_tables()

    def _build_tables(self) -> None:
        p, e, q, m = self.p, self.e, self.q, self.modulus
        for g in range(2, q):
            gd = _digits(g, p, e)
            exp = [1]
            cur = [1] + [0] * (e - 1)
            while True:
                cur = _poly_mulmod(cur, gd, m, p)
                a = _undigits(cur, p)
                if a == 1:
                    break
                exp.append(a)
            if len(exp) == q - 1:
                break
        else:
            raise AssertionError("no primitive element found")
        log = [0] * q
        for i, a in enumerate(exp):
            log[a] = i
        self._exp, self._log = exp, log

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.e, self.modulus) == (
            other.p,
            other.e,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, modulus={list(self.modulus)})"

    def __reduce__(self):
        return (make_field, (self.p, self.e))

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def elements(self) -> range:
        return range(self.q)

    def check(self, a: int) -> int:
        if not (isinstance(a, int) and 0 <= a < self.q):
            raise ParameterError(f"{a!r} is not an element of GF({self.q})")
        return a

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        p = self.p
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, self.e), _digits(b, p, self.e))], p)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        p = self.p
        return _undigits([-x % p for x in _digits(a, p, self.e)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.q})")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[-self._log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        if self.e == 1:
            return pow(a, k, self.p)
        return self._exp[self._log[a] * k % (self.q - 1)]

    def expand_to_base(self, a: int) -> tuple[int, ...]:
        """Coordinates of a in the basis 1, x, ..., x^(e-1) over GF(p)."""
        return tuple(_digits(a, self.p, self.e))

    def from_base(self, coords: Sequence[int]) -> int:
        if len(coords) != self.e:
            raise ParameterError(f"expected {self.e} coordinates, got {len(coords)}")
        return _undigits([c % self.p for c in coords], self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "e": self.e, "modulus": list(self.modulus)}


@lru_cache(maxsize=None)
def _make_field(p: int, e: int, max_order: int) -> FieldCtx:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1:
        raise DegreeOutOfRange(f"extension degree must be >= 1, got {e}")
    if p**e > max_order:
        raise FieldTooLarge(f"GF({p}^{e}) exceeds the field size cap {max_order}")
    modulus = [0, 1] if e == 1 else smallest_irreducible(p, e)
    return FieldCtx(p, e, modulus)


def make_field(p: int, e: int = 1, max_order: int = MAX_FIELD_ORDER) -> FieldCtx:
    """GF(p^e) with the lexicographically smallest monic irreducible modulus."""
    return _make_field(p, e, max_order)


def field_of_order(q: int, max_order: int = MAX_FIELD_ORDER) -> FieldCtx:
    p, e = prime_power(q)
    return make_field(p, e, max_order)


def field_from_json(data: dict) -> FieldCtx:
    ctx = make_field(int(data["p"]), int(data["e"]))
    if "modulus" in data and tuple(data["modulus"]) != ctx.modulus:
        raise ParameterError(
            f"modulus {data['modulus']} differs from the canonical {list(ctx.modulus)}"
        )
    return ctx


_OPS = {
    "add": FieldCtx.add,
    "sub": FieldCtx.sub,
    "mul": FieldCtx.mul,
    "pow": FieldCtx.pow,
}


def field_arith(ctx: FieldCtx, op: str, a: int, b: int | None = None) -> int:
    """Dispatch a named field operation; ``inv`` and ``neg`` ignore b."""
    ctx.check(a)
    if op == "inv":
        return ctx.inv(a)
    if op == "neg":
        return ctx.neg(a)
    if op not in _OPS:
        raise ParameterError(f"unknown field operation {op!r}")
    if op != "pow":
        ctx.check(b)
    return _OPS[op](ctx, a, b)


def expand_to_base(ctx: FieldCtx, a: int) -> tuple[int, ...]:
    return ctx.expand_to_base(ctx.check(a))


class FieldExtension:
    """GF(q^m) viewed as an m-dimensional vector space over GF(q).

    ``big`` is realized as GF(p^(e*m)); the subfield GF(q) is embedded through
    a root of ``base.modulus`` and the relative basis is 1, x, ..., x^(m-1)
    where x is the generator of ``big``'s polynomial basis.
    """

    def __init__(self, base: FieldCtx, m: int, max_order: int = MAX_FIELD_ORDER):
        if m < 1:
            raise ParameterError(f"extension degree must be >= 1, got {m}")
        self.base = base
        self.m = m
        p, e = base.p, base.e
        self.big = make_field(p, e * m, max_order)
        big = self.big
        if e == 1:
            self._root = None
            self._embed = list(range(p))
            return

        # root of base.modulus inside big; coefficients are in GF(p) so the
        # integer encodings coincide
        def evaluate(poly, z):
            acc = 0
            for c in reversed(poly):
                acc = big.add(big.mul(acc, z), c)
            return acc

        self._root = next(z for z in range(big.q) if evaluate(base.modulus, z) == 0)
        beta_pows = [big.pow(self._root, i) for i in range(e)]
        self._embed = [
            _sum(big, (big.mul(c, b) for c, b in zip(base.expand_to_base(a), beta_pows)))
            for a in range(base.q)
        ]
        # GF(p)-basis of big: beta^i * x^j, column (j*e + i)
        x = p
        cols = []
        for j in range(m):
            xj = big.pow(x, j)
            for i in range(e):
                cols.append(big.expand_to_base(big.mul(beta_pows[i], xj)))
        n = e * m
        mat = [[cols[c][r] for c in range(n)] for r in range(n)]
        self._inverse = _invert_mod_p(mat, p)

    def embed(self, a: int) -> int:
        return self._embed[a]

    def coordinates(self, b: int) -> tuple[int, ...]:
        """Coordinates of b in GF(q)^m with respect to 1, x, ..., x^(m-1)."""
        if self.base.e == 1:
            return self.big.expand_to_base(b)
        p, e = self.base.p, self.base.e
        v = self.big.expand_to_base(b)
        flat = [sum(row[c] * v[c] for c in range(len(v))) % p for row in self._inverse]
        return tuple(_undigits(flat[j * e:(j + 1) * e], p) for j in range(self.m))

    def basis_element(self, j: int) -> int:
        """x^j in ``big``."""
        if self.big.e == 1:
            return 1 if j == 0 else 0
        return self.big.pow(self.big.p, j)


def _sum(ctx: FieldCtx, items) -> int:
    acc = 0
    for a in items:
        acc = ctx.add(acc, a)
    return acc


def _invert_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat)
    aug = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        iv = pow(aug[col][col], p - 2, p)
        aug[col] = [v * iv % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]
