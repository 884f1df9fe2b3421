"""Small finite fields GF(p^k) with total element enumeration.

Elements are encoded as integers in ``[0, q)``: the base-p digits of the
encoding are the coefficients of the residue polynomial, lowest degree
first.  Prime fields work directly mod p; extension fields multiply
through discrete-log tables built at construction time (desk scale,
q <= 2^16).  Dense q-by-q operation tables for vectorized evaluation are
built lazily.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

_MAX_Q_TABLES = 1 << 16
_MAX_PRIME = 1 << 20
_MAX_Q_DENSE = 1 << 11


class NotPrime(ValueError):
    """The characteristic must be prime (and prime powers must be exact)."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- polynomial helpers over F_p (coefficient tuples, lowest degree first) ----


def _poly_divmod(num: tuple, den: tuple, p: int) -> tuple[tuple, tuple]:
    num = list(num)
    dd = len(den) - 1
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            f = (c * inv_lead) % p
            quot[i - dd] = f
            for j, dc in enumerate(den):
                num[i - dd + j] = (num[i - dd + j] - f * dc) % p
    rem = [c % p for c in num[:dd]]
    while rem and rem[-1] == 0:
        rem.pop()
    return tuple(quot), tuple(rem)


def _is_irreducible(modulus: tuple, p: int) -> bool:
    """Exhaustive trial division by all monic polynomials up to half degree."""
    k = len(modulus) - 1
    if k == 1:
        return True
    if modulus[0] == 0:  # divisible by x
        return False
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            den = tuple(tail) + (1,)
            _, rem = _poly_divmod(modulus, den, p)
            if not rem:
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Candidates are compared by their coefficient tuples read from the
    constant term upward.
    """
    if k == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=k):
        candidate = tuple(tail) + (1,)
        if _is_irreducible(candidate, p):
            return candidate
    raise RuntimeError(f"no irreducible of degree {k} over F_{p}")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """Description of GF(p^k) plus the lookup tables the arithmetic uses."""

    p: int
    k: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        if self.p >= _MAX_PRIME:
            raise ValueError(f"characteristic {self.p} above desk-scale bound 2^20")
        if self.k < 1:
            raise ValueError("extension degree must be >= 1")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k (lowest coefficient first)")
        if any(not (0 <= c < self.p) for c in self.modulus):
            raise ValueError("modulus coefficients must be reduced mod p")
        if self.k > 1:
            if self.q > _MAX_Q_TABLES:
                raise ValueError(f"extension field size {self.q} above table bound 2^16")
            if not _is_irreducible(self.modulus, self.p):
                raise ValueError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.k

    def __str__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # -- encoding ------------------------------------------------------------

    def _digits(self, value: int) -> list[int]:
        digs = []
        for _ in range(self.k):
            digs.append(value % self.p)
            value //= self.p
        return digs

    def _unite(self, digits) -> int:
        out = 0
        for d in reversed(digits):
            out = out * self.p + d
        return out

    def _mul_raw(self, a: int, b: int) -> int:
        """Table-free residue multiplication, used to bootstrap the tables."""
        if self.k == 1:
            return (a * b) % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        for i in range(2 * self.k - 1, self.k - 1, -1):
            c = prod[i]
            if c:
                for j in range(self.k + 1):
                    prod[i - self.k + j] = (prod[i - self.k + j] - c * self.modulus[j]) % self.p
        return self._unite(prod[: self.k])

    # -- discrete-log tables (extension fields) --------------------------------

    @cached_property
    def _log_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(log, antilog) for the multiplicative group, generator found by
        exhaustive order check."""
        q = self.q
        for g in range(2, q):
            order = 1
            x = g
            while x != 1:
                x = self._mul_raw(x, g)
                order += 1
                if order > q - 1:
                    break
            if order == q - 1:
                break
        else:
            raise RuntimeError("no generator found")  # unreachable for true fields
        antilog = np.zeros(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            antilog[i] = x
            log[x] = i
            x = self._mul_raw(x, g)
        return log, antilog

    # -- scalar arithmetic on encodings ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self._unite((x + y) % self.p for x, y in zip(self._digits(a), self._digits(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._unite((-x) % self.p for x in self._digits(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        log, antilog = self._log_tables
        return int(antilog[(int(log[a]) + int(log[b])) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        log, antilog = self._log_tables
        return int(antilog[(-int(log[a])) % (self.q - 1)])

    def power(self, a: int, e: int) -> int:
        if e < 0:
            return self.power(self.inv(a), -e)
        result = 1
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def embed(self, value: int) -> int:
        """Image of an integer under Z -> F_q (lands in the prime subfield)."""
        return value % self.p

    # -- dense tables for vectorized evaluation ----------------------------------

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.q
        if q > _MAX_Q_DENSE:
            raise ValueError(f"dense tables unsupported for q={q}")
        if self.k == 1:
            grid = np.arange(q, dtype=np.int64)
            return (grid[:, None] + grid[None, :]) % self.p
        digits = np.zeros((q, self.k), dtype=np.int64)
        vals = np.arange(q)
        for i in range(self.k):
            digits[:, i] = (vals // self.p**i) % self.p
        summed = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.k, dtype=np.int64)
        return (summed * weights).sum(axis=2)

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        if q > _MAX_Q_DENSE:
            raise ValueError(f"dense tables unsupported for q={q}")
        if self.k == 1:
            grid = np.arange(q, dtype=np.int64)
            return (grid[:, None] * grid[None, :]) % self.p
        table = np.zeros((q, q), dtype=np.int64)
        log, antilog = self._log_tables
        nz = np.arange(1, q)
        idx = (log[nz][:, None] + log[nz][None, :]) % (q - 1)
        table[1:, 1:] = antilog[idx]
        return table

    # -- elements ------------------------------------------------------------------

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value % self.q if self.k == 1 else value)

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        """All q elements exactly once, ascending encoding."""
        for v in range(self.q):
            yield FieldElement(self, v)


@dataclass(frozen=True)
class FieldElement:
    """An element of a fixed FieldSpec, by its integer encoding."""

    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not (0 <= self.value < self.spec.q):
            raise ValueError(f"encoding {self.value} outside [0, {self.spec.q})")

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError("expected a FieldElement")
        if other.spec != self.spec:
            raise ValueError("elements belong to different fields")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.spec.add(self.value, other.value))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.spec.sub(self.value, other.value))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.spec, self.spec.mul(self.value, other.value))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.neg(self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec, self.spec.inv(self.value))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.spec, self.spec.power(self.value, e))

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return f"{self.value}"


def make_field(p: int, k: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """GF(p^k) with the lexicographically smallest irreducible modulus.

    ``modulus`` overrides the default (it must be monic irreducible of
    degree k, coefficients lowest-first); k=1 always uses the identity
    polynomial x.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 1:
        raise ValueError("k must be >= 1")
    if modulus is None:
        modulus = smallest_irreducible(p, k)
    return FieldSpec(p, k, tuple(modulus))


def enumerate_elements(spec: FieldSpec):
    """Iterator over all q elements, ascending encoding."""
    return spec.elements()


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    p = q
    for f in range(2, int(q**0.5) + 1):
        if q % f == 0:
            p = f
            break
    k = 0
    rest = q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise NotPrime(f"{q} is not a prime power")
    return p, k


def parse_field_token(token: str) -> FieldSpec:
    """Parse "7", "4", or "2^3" into a FieldSpec."""
    token = token.strip()
    if "^" in token:
        base, _, exp = token.partition("^")
        return make_field(int(base), int(exp))
    p, k = _factor_prime_power(int(token))
    return make_field(p, k)


def parse_fields_csv(text: str) -> list[FieldSpec]:
    """Parse a comma-separated list of prime powers, e.g. "2,3,4,5,7,11"."""
    tokens = [t for t in text.split(",") if t.strip()]
    if not tokens:
        raise ValueError("empty field list")
    return [parse_field_token(t) for t in tokens]
