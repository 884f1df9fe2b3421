"""Exact rational polynomial fits of point counts against q.

Everything here runs in Fraction arithmetic; there is no floating point
anywhere, because the downstream question — does the count function fit
a polynomial with *integer* coefficients — is meaningless under rounding.
Interpolation uses Newton divided differences; an exact least-squares
mode (normal equations over the rationals) exists for over-determined
data.  A counting function that is polynomial with rational coefficients
must in fact have integer coefficients, so a non-integer coefficient in
the exact interpolant certifies that the counts on the tested range do
not come from any integer-coefficient polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

Number = Union[int, Fraction]


class DuplicateAbscissa(ValueError):
    """Two data points share the same q."""


@dataclass(frozen=True)
class RationalFit:
    """A polynomial fit with exact rational coefficients, constant term first."""

    degree: int
    coefficients: tuple[Fraction, ...]
    residuals: tuple[Fraction, ...]
    points: tuple[tuple[int, Fraction], ...]

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def evaluate(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def to_json_dict(self, verdict: str = "") -> dict:
        return {
            "degree": self.degree,
            "coefficients": [
                {"num": str(c.numerator), "den": str(c.denominator)} for c in self.coefficients
            ],
            "integral": self.is_integral,
            "verdict": verdict,
        }

    def to_text(self, var: str = "q") -> str:
        pieces = []
        for i, c in enumerate(self.coefficients):
            if c == 0 and self.degree > 0:
                continue
            mag = abs(c)
            body = str(mag) if i == 0 else (f"{var}^{i}" if mag == 1 else f"{mag}*{var}^{i}")
            if i >= 1 and i == 1:
                body = body.replace(f"{var}^1", var)
            if not pieces:
                pieces.append(body if c >= 0 else f"-{body}")
            else:
                pieces.append(f"{' + ' if c >= 0 else ' - '}{body}")
        return "".join(pieces) if pieces else "0"


def _validate_points(points) -> list[tuple[int, Fraction]]:
    pts = [(int(x), Fraction(y)) for x, y in points]
    seen = set()
    for x, _ in pts:
        if x in seen:
            raise DuplicateAbscissa(f"duplicate abscissa q={x}")
        seen.add(x)
    return pts


def interpolate(points: Sequence[tuple[int, Number]]) -> RationalFit:
    """The unique degree <= m-1 polynomial through m points.

    Newton divided differences, expanded to monomial coefficients.
    Trailing zero coefficients are trimmed, so data lying on a lower
    degree polynomial reports that lower degree.  Residuals are computed
    and returned even though interpolation forces them all to zero.
    """
    pts = _validate_points(points)
    if len(pts) < 2:
        raise ValueError("need at least two points")
    xs = [Fraction(x) for x, _ in pts]
    divided = [y for _, y in pts]
    m = len(pts)
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - level])

    coeffs = [Fraction(0)] * m
    basis = [Fraction(1)]  # prod_{j<level} (x - x_j), expanded
    for level in range(m):
        for d, b in enumerate(basis):
            coeffs[d] += divided[level] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for d, b in enumerate(basis):
            nxt[d] -= b * xs[level]
            nxt[d + 1] += b
        basis = nxt

    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    fit = RationalFit(
        degree=len(coeffs) - 1,
        coefficients=tuple(coeffs),
        residuals=(),
        points=tuple(pts),
    )
    residuals = tuple(y - fit.evaluate(x) for x, y in pts)
    return RationalFit(fit.degree, fit.coefficients, residuals, fit.points)


def fit_least_squares(points: Sequence[tuple[int, Number]], degree: int) -> RationalFit:
    """Exact least-squares fit of fixed degree via rational normal equations."""
    pts = _validate_points(points)
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if len(pts) < degree + 1:
        raise ValueError("not enough points for the requested degree")
    m, w = len(pts), degree + 1
    design = [[Fraction(x) ** j for j in range(w)] for x, _ in pts]
    ata = [[sum(design[r][i] * design[r][j] for r in range(m)) for j in range(w)] for i in range(w)]
    aty = [sum(design[r][i] * pts[r][1] for r in range(m)) for i in range(w)]
    coeffs = _solve_exact(ata, aty)
    fit = RationalFit(degree, tuple(coeffs), (), tuple(pts))
    residuals = tuple(y - fit.evaluate(x) for x, y in pts)
    return RationalFit(degree, fit.coefficients, residuals, fit.points)


def _solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


@dataclass(frozen=True)
class Verdict:
    """Integer-coefficient test outcome for a fit of counting data."""

    polynomially_countable_consistent: bool
    reason: str
    witness: RationalFit

    @property
    def verdict_text(self) -> str:
        if self.polynomially_countable_consistent:
            return "consistent with polynomial countability (on tested range)"
        return "NOT polynomially countable (on tested range)"

    def to_json_dict(self) -> dict:
        return self.witness.to_json_dict(verdict=self.verdict_text)


def check_integrality(fit: RationalFit) -> Verdict:
    """Decide whether a fit is compatible with integer-coefficient counting.

    A non-integer coefficient is conclusive for the tested points: no
    integer-coefficient polynomial passes through them.  All-integer
    coefficients are only consistency, never proof.
    """
    qs = ", ".join(str(x) for x, _ in fit.points)
    for i, c in enumerate(fit.coefficients):
        if c.denominator != 1:
            return Verdict(
                False,
                f"coefficient of q^{i} is {c}, not an integer; "
                f"no polynomial in Z[q] matches the counts at q = {qs}",
                fit,
            )
    return Verdict(
        True,
        f"all coefficients are integers; counts at q = {qs} are consistent "
        f"with polynomial countability (not a proof)",
        fit,
    )


@dataclass(frozen=True)
class CrossValidation:
    """Fit on retained points, evaluated against held-out points."""

    fit: RationalFit
    holdout_residuals: tuple[tuple[int, Fraction], ...]

    @property
    def exact(self) -> bool:
        return all(r == 0 for _, r in self.holdout_residuals)


def cross_validate(
    points: Sequence[tuple[int, Number]], holdout: Sequence[int]
) -> CrossValidation:
    """Interpolate on the non-held-out points, report exact holdout residuals."""
    pts = _validate_points(points)
    held = set(holdout)
    missing = held - {x for x, _ in pts}
    if missing:
        raise ValueError(f"holdout q values {sorted(missing)} not among the points")
    retained = [(x, y) for x, y in pts if x not in held]
    if len(retained) < 2:
        raise ValueError("need at least two retained points")
    fit = interpolate(retained)
    residuals = tuple((x, y - fit.evaluate(x)) for x, y in pts if x in held)
    return CrossValidation(fit, residuals)
