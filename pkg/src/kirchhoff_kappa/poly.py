"""Sparse multivariate polynomials with exact integer coefficients.

The variable set is ``k`` (a distinguished deformation parameter, always
exponent-vector position 0) followed by ``t1 .. tn``.  Terms live in a
dict keyed by exponent tuples; coefficients are arbitrary-precision ints
and zero coefficients are never stored, so equal polynomials have equal
term dicts.

Variable ids throughout this module: ``0`` means ``k``, ``i >= 1`` means
``t_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

KAPPA = 0  # variable id of the deformation parameter


class ArityMismatch(ValueError):
    """Operands disagree on the number of t-variables."""


class ZeroPolynomial(ValueError):
    """The zero polynomial has no degree."""


@dataclass(frozen=True)
class Monomial:
    """One term: an exponent vector (k first, then t1..tn) and a coefficient."""

    coefficient: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.coefficient == 0:
            raise ValueError("monomials carry non-zero coefficients")

    @property
    def kappa_exponent(self) -> int:
        return self.exponents[0]

    @property
    def t_exponents(self) -> tuple[int, ...]:
        return self.exponents[1:]


def _term_sort_key(exponents: tuple[int, ...]):
    # Graded order: total degree first, then kappa-degree, then t-exponents
    # compared high-to-low so e.g. t1*t2*t3 prints before t1*t2*t4.
    return (sum(exponents), exponents[0], tuple(-e for e in exponents[1:]))


class MultiPoly:
    """Immutable sparse polynomial in Z[k, t1..tn]."""

    __slots__ = ("num_t_vars", "_terms")

    def __init__(self, num_t_vars: int, terms: Mapping[tuple[int, ...], int] = ()):
        if num_t_vars < 0:
            raise ValueError("num_t_vars must be non-negative")
        width = num_t_vars + 1
        clean: dict[tuple[int, ...], int] = {}
        for exps, coeff in dict(terms).items():
            exps = tuple(exps)
            if len(exps) != width:
                raise ArityMismatch(
                    f"exponent vector {exps} has length {len(exps)}, expected {width}"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if coeff:
                clean[exps] = int(coeff)
        object.__setattr__(self, "num_t_vars", num_t_vars)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, num_t_vars: int) -> "MultiPoly":
        return cls(num_t_vars)

    @classmethod
    def constant(cls, value: int, num_t_vars: int) -> "MultiPoly":
        if value == 0:
            return cls(num_t_vars)
        return cls(num_t_vars, {(0,) * (num_t_vars + 1): value})

    @classmethod
    def one(cls, num_t_vars: int) -> "MultiPoly":
        return cls.constant(1, num_t_vars)

    @classmethod
    def variable(cls, var: int, num_t_vars: int) -> "MultiPoly":
        """The polynomial ``k`` (var=0) or ``t_var`` (var >= 1)."""
        exps = [0] * (num_t_vars + 1)
        try:
            exps[var] += 1
        except IndexError:
            raise ArityMismatch(f"variable id {var} out of range 0..{num_t_vars}") from None
        return cls(num_t_vars, {tuple(exps): 1})

    @classmethod
    def kappa(cls, num_t_vars: int) -> "MultiPoly":
        return cls.variable(KAPPA, num_t_vars)

    @classmethod
    def t(cls, index: int, num_t_vars: int) -> "MultiPoly":
        if index < 1:
            raise ArityMismatch("t-variables are numbered from 1")
        return cls.variable(index, num_t_vars)

    @classmethod
    def from_monomials(cls, monomials: Iterable[Monomial], num_t_vars: int) -> "MultiPoly":
        acc: dict[tuple[int, ...], int] = {}
        for m in monomials:
            acc[m.exponents] = acc.get(m.exponents, 0) + m.coefficient
        return cls(num_t_vars, acc)

    # -- inspection -------------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], int]:
        return dict(self._terms)

    def monomials(self) -> list[Monomial]:
        return [
            Monomial(c, e)
            for e, c in sorted(self._terms.items(), key=lambda kv: _term_sort_key(kv[0]))
        ]

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self == MultiPoly.constant(other, self.num_t_vars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.num_t_vars == other.num_t_vars and self._terms == other._terms

    def __hash__(self):
        return hash((self.num_t_vars, frozenset(self._terms.items())))

    # -- ring operations ----------------------------------------------------------

    def _coerce(self, other: Union["MultiPoly", int]) -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly.constant(other, self.num_t_vars)
        if not isinstance(other, MultiPoly):
            raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")
        if other.num_t_vars != self.num_t_vars:
            raise ArityMismatch(
                f"operands have {self.num_t_vars} and {other.num_t_vars} t-variables"
            )
        return other

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        acc = dict(self._terms)
        for exps, c in other._terms.items():
            acc[exps] = acc.get(exps, 0) + c
        return MultiPoly(self.num_t_vars, acc)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.num_t_vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return MultiPoly(self.num_t_vars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        acc: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                acc[key] = acc.get(key, 0) + c1 * c2
        return MultiPoly(self.num_t_vars, acc)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MultiPoly":
        if exponent < 0:
            raise ValueError("negative power")
        result = MultiPoly.one(self.num_t_vars)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- specialization and structure ------------------------------------------------

    def substitute(self, var: int, value: Union[int, "MultiPoly"]) -> "MultiPoly":
        """Exact substitution of one variable by an integer or a polynomial.

        The variable slot stays in the exponent vectors (with exponent 0
        everywhere), so arities are preserved.
        """
        self._check_var(var)
        if isinstance(value, MultiPoly):
            value = self._coerce(value)
            by_power = self.coefficients_in(var)
            result = MultiPoly.zero(self.num_t_vars)
            power = MultiPoly.one(self.num_t_vars)
            for coeff_poly in by_power:
                result = result + coeff_poly * power
                power = power * value
            return result
        acc: dict[tuple[int, ...], int] = {}
        for exps, c in self._terms.items():
            scaled = c * (value ** exps[var])
            if scaled == 0:
                continue
            key = exps[:var] + (0,) + exps[var + 1 :]
            acc[key] = acc.get(key, 0) + scaled
        return MultiPoly(self.num_t_vars, acc)

    def coefficients_in(self, var: int) -> list["MultiPoly"]:
        """Coefficients [P_0 .. P_d] of powers of one variable.

        Reassembling ``sum(P_i * var**i)`` reproduces the polynomial.  The
        zero polynomial yields ``[0]``.
        """
        self._check_var(var)
        degree = max((e[var] for e in self._terms), default=0)
        buckets: list[dict[tuple[int, ...], int]] = [{} for _ in range(degree + 1)]
        for exps, c in self._terms.items():
            key = exps[:var] + (0,) + exps[var + 1 :]
            buckets[exps[var]][key] = c
        return [MultiPoly(self.num_t_vars, b) for b in buckets]

    def degree_in(self, var: int) -> int:
        self._check_var(var)
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        return max(e[var] for e in self._terms)

    def total_degree(self, in_t_only: bool = False) -> int:
        if not self._terms:
            raise ZeroPolynomial("the zero polynomial has no degree")
        if in_t_only:
            return max(sum(e[1:]) for e in self._terms)
        return max(sum(e) for e in self._terms)

    def kappa_degree(self) -> int:
        return max((e[0] for e in self._terms), default=0)

    def insert_t_variable(self, position: int) -> "MultiPoly":
        """Widen by one t-variable at 1-based ``position`` (exponent 0 everywhere).

        Used to embed a polynomial of a graph with a deleted edge back into
        the parent graph's ring.
        """
        if not (1 <= position <= self.num_t_vars + 1):
            raise ArityMismatch(f"insert position {position} out of range")
        acc = {}
        for exps, c in self._terms.items():
            acc[exps[:position] + (0,) + exps[position:]] = c
        return MultiPoly(self.num_t_vars + 1, acc)

    def permute_t_variables(self, new_from_old: Sequence[int]) -> "MultiPoly":
        """Rename t-variables: new index ``new_from_old[i]`` takes old ``i+1``.

        ``new_from_old`` is a permutation of ``1..n``, one entry per old
        t-variable.
        """
        if sorted(new_from_old) != list(range(1, self.num_t_vars + 1)):
            raise ArityMismatch("expected a permutation of 1..num_t_vars")
        acc: dict[tuple[int, ...], int] = {}
        for exps, c in self._terms.items():
            out = [exps[0]] + [0] * self.num_t_vars
            for old, e in enumerate(exps[1:], start=1):
                out[new_from_old[old - 1]] = e
            acc[tuple(out)] = c
        return MultiPoly(self.num_t_vars, acc)

    def evaluate(self, t_values: Sequence[int], kappa_value: int = 0) -> int:
        """Exact evaluation over the integers."""
        if len(t_values) != self.num_t_vars:
            raise ArityMismatch(f"expected {self.num_t_vars} t-values, got {len(t_values)}")
        total = 0
        for exps, c in self._terms.items():
            term = c * (kappa_value ** exps[0])
            for v, e in zip(t_values, exps[1:]):
                if e:
                    term *= v ** e
            total += term
        return total

    def _check_var(self, var: int) -> None:
        if not (0 <= var <= self.num_t_vars):
            raise ArityMismatch(f"variable id {var} out of range 0..{self.num_t_vars}")

    # -- rendering ---------------------------------------------------------------------

    def to_text(self, t_names: Sequence[str] | None = None) -> str:
        """Canonical text form: sorted terms joined by ' + ' / ' - '.

        Exponent 1 is left implicit and unit coefficients are dropped, so a
        single edge graph renders as ``t1 + k``.
        """
        if not self._terms:
            return "0"
        if t_names is None:
            t_names = [f"t{i}" for i in range(1, self.num_t_vars + 1)]
        elif len(t_names) != self.num_t_vars:
            raise ArityMismatch("need one name per t-variable")
        names = ["k", *t_names]
        pieces: list[str] = []
        for exps, coeff in sorted(self._terms.items(), key=lambda kv: _term_sort_key(kv[0])):
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coeff)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"{' + ' if coeff > 0 else ' - '}{body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"MultiPoly({self.num_t_vars}, {self.to_text()!r})"
