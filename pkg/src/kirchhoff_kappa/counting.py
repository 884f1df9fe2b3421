"""Counting rational points of affine hypersurfaces over small fields.

Given a polynomial with the deformation parameter already specialized,
this module counts the zeros of the induced function on F_q^n, either by
full enumeration (the oracle) or by fibering over one variable: the
other n-1 variables are enumerated, the polynomial collapses to a low
degree univariate on each fiber, and its roots are counted by direct
evaluation.  A fiber whose reduced univariate vanishes identically
contributes q points, which the evaluation loop covers with no special
case.

Enumeration is vectorized in chunks; multi-threaded runs partition the
assignment space into contiguous index ranges whose exact integer counts
are summed in range order, so results do not depend on scheduling.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .gf import FieldSpec
from .poly import KAPPA, MultiPoly

_CHUNK = 1 << 16
_MAX_ENUMERATION = 1 << 42
_LAZY_MOD_BOUND = 1 << 62

NAIVE = "naive"
FIBERED = "fibered"

CSV_HEADER = "q,p,k,count,kappa,method,wall_time_s"


@dataclass(frozen=True)
class CountRecord:
    """One row of a counting experiment."""

    q: int
    p: int
    k: int
    n: int
    count: int
    kappa_value: int
    wall_time_s: float
    method: str

    def __post_init__(self):
        if not (0 <= self.count <= self.q**self.n):
            raise ValueError(f"count {self.count} outside [0, q^n]")

    def to_json_dict(self, include_timing: bool = True) -> dict:
        return {
            "q": self.q,
            "p": self.p,
            "k": self.k,
            "count": str(self.count),
            "kappa": self.kappa_value,
            "method": self.method,
            "wall_time_s": self.wall_time_s if include_timing else 0.0,
        }

    def csv_row(self, include_timing: bool = True) -> str:
        t = self.wall_time_s if include_timing else 0.0
        return f"{self.q},{self.p},{self.k},{self.count},{self.kappa_value},{self.method},{t}"


def _require_specialized(poly: MultiPoly) -> None:
    if poly.kappa_degree() != 0:
        raise ValueError("specialize the deformation parameter before counting")


class EvaluationProgram:
    """Straight-line evaluation plan for one polynomial over one field.

    Terms are compiled to (embedded coefficient, [(column, exponent), ...])
    with per-exponent power tables, so a block of points is evaluated by
    table gathers and elementwise arithmetic only.  Prime fields use plain
    residue arithmetic (with modular reduction deferred when the term
    bound allows); extension fields go through dense add/mul tables.
    """

    def __init__(
        self,
        poly: MultiPoly,
        field: FieldSpec,
        var_columns: Optional[dict[int, int]] = None,
    ):
        _require_specialized(poly)
        self.field = field
        self.num_t_vars = poly.num_t_vars
        if var_columns is None:
            var_columns = {v: v - 1 for v in range(1, poly.num_t_vars + 1)}
        self._var_columns = dict(var_columns)

        q, p = field.q, field.p
        max_exp = 0
        terms: list[tuple[int, tuple[tuple[int, int], ...]]] = []
        for exps, coeff in poly.terms.items():
            embedded = field.embed(coeff)
            if embedded == 0:
                continue
            factors = []
            for var, e in enumerate(exps[1:], start=1):
                if e == 0:
                    continue
                if var not in self._var_columns:
                    raise ValueError(f"t{var} appears in the polynomial but has no column")
                factors.append((self._var_columns[var], e))
                max_exp = max(max_exp, e)
            terms.append((embedded, tuple(factors)))
        self._terms = terms

        # pow[e][v] = v^e as a field encoding
        base = np.arange(q, dtype=np.int64)
        pow_tables = [np.ones(q, dtype=np.int64)]
        for _ in range(max_exp):
            if field.k == 1:
                pow_tables.append((pow_tables[-1] * base) % p)
            else:
                pow_tables.append(field.mul_table[pow_tables[-1], base])
        self._pow = pow_tables

        if field.k == 1:
            max_factors = max((len(f) for _, f in terms), default=0)
            worst = len(terms) * (p - 1) ** (max_factors + 1) if terms else 0
            self._lazy = worst < _LAZY_MOD_BOUND
        else:
            self._lazy = False

    def evaluate_block(self, columns: Sequence[np.ndarray], length: int) -> np.ndarray:
        """Encodings of the polynomial's values at ``length`` points."""
        field = self.field
        p = field.p
        if field.k == 1:
            acc = np.zeros(length, dtype=np.int64)
            for coeff, factors in self._terms:
                vals: Optional[np.ndarray] = None
                for col, e in factors:
                    g = self._pow[e][columns[col]]
                    vals = g if vals is None else vals * g
                    if not self._lazy:
                        vals %= p
                if vals is None:
                    acc += coeff
                elif coeff == 1:
                    acc += vals
                else:
                    acc += vals * coeff
                if not self._lazy:
                    acc %= p
            return acc % p

        mul, add = field.mul_table, field.add_table
        acc = np.zeros(length, dtype=np.int64)
        for coeff, factors in self._terms:
            vals = None
            for col, e in factors:
                g = self._pow[e][columns[col]]
                vals = g if vals is None else mul[vals, g]
            if vals is None:
                vals = np.full(length, coeff, dtype=np.int64)
            elif coeff != 1:
                vals = mul[vals, coeff]
            acc = add[acc, vals]
        return acc

    def evaluate_point(self, values: Sequence[int]) -> int:
        width = max(self._var_columns.values(), default=-1) + 1
        cols: list[np.ndarray] = [np.zeros(1, dtype=np.int64) for _ in range(width)]
        for var, col in self._var_columns.items():
            cols[col] = np.array([values[var - 1]], dtype=np.int64)
        return int(self.evaluate_block(cols, 1)[0])


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _run_partitioned(total: int, threads: int, work: Callable[[int, int], int]) -> int:
    spans = _ranges(total, threads)
    if threads <= 1 or len(spans) == 1:
        return sum(work(lo, hi) for lo, hi in spans)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(work, lo, hi) for lo, hi in spans]
        return sum(f.result() for f in futures)


def _digit_columns(idx: np.ndarray, q: int, ndigits: int) -> list[np.ndarray]:
    cols = []
    scale = 1
    for _ in range(ndigits):
        cols.append((idx // scale) % q)
        scale *= q
    return cols


def count_points_naive(
    poly: MultiPoly, field: FieldSpec, threads: int = 1, kappa_value: int = 0
) -> CountRecord:
    """Exact zero count over F_q^n by full enumeration.

    ``kappa_value`` is record metadata only; the polynomial must already
    be specialized.
    """
    _require_specialized(poly)
    n = poly.num_t_vars
    q = field.q
    total = q**n
    if total > _MAX_ENUMERATION:
        raise ValueError(f"q^n = {total} is too large to enumerate")
    program = EvaluationProgram(poly, field)

    def work(lo: int, hi: int) -> int:
        hits = 0
        for start in range(lo, hi, _CHUNK):
            stop = min(start + _CHUNK, hi)
            idx = np.arange(start, stop, dtype=np.int64)
            cols = _digit_columns(idx, q, n)
            block = program.evaluate_block(cols, stop - start)
            hits += int((block == 0).sum())
        return hits

    t0 = time.perf_counter()
    count = _run_partitioned(total, threads, work)
    elapsed = time.perf_counter() - t0
    return CountRecord(q, field.p, field.k, n, count, kappa_value, elapsed, NAIVE)


def choose_fiber_variable(poly: MultiPoly) -> int:
    """Variable of lowest degree in the polynomial; ties pick the highest index."""
    if poly.num_t_vars == 0:
        raise ValueError("no variables to fiber over")
    degrees = []
    for var in range(1, poly.num_t_vars + 1):
        d = max((e[var] for e in poly.terms), default=0)
        degrees.append((d, -var, var))
    return min(degrees)[2]


def count_points_fibered(
    poly: MultiPoly,
    field: FieldSpec,
    fiber_var: Optional[int] = None,
    threads: int = 1,
    kappa_value: int = 0,
) -> CountRecord:
    """Same count as the naive oracle, via q^(n-1) univariate fibers."""
    _require_specialized(poly)
    n = poly.num_t_vars
    q = field.q
    if n == 0:
        rec = count_points_naive(poly, field, threads, kappa_value)
        return CountRecord(q, field.p, field.k, n, rec.count, kappa_value, rec.wall_time_s, FIBERED)
    if fiber_var is None:
        fiber_var = choose_fiber_variable(poly)
    elif not (1 <= fiber_var <= n):
        raise ValueError(f"fiber variable t{fiber_var} out of range")

    outer_vars = [v for v in range(1, n + 1) if v != fiber_var]
    total = q ** len(outer_vars)
    if total > _MAX_ENUMERATION:
        raise ValueError(f"q^(n-1) = {total} is too large to enumerate")
    var_columns = {v: i for i, v in enumerate(outer_vars)}
    coefficient_programs = [
        EvaluationProgram(cp, field, var_columns) for cp in poly.coefficients_in(fiber_var)
    ]

    p = field.p
    if field.k > 1:
        mul, add = field.mul_table, field.add_table

    def work(lo: int, hi: int) -> int:
        hits = 0
        for start in range(lo, hi, _CHUNK):
            stop = min(start + _CHUNK, hi)
            idx = np.arange(start, stop, dtype=np.int64)
            cols = _digit_columns(idx, q, len(outer_vars))
            length = stop - start
            coeffs = [prog.evaluate_block(cols, length) for prog in coefficient_programs]
            for x in range(q):
                val = coeffs[-1]
                for j in range(len(coeffs) - 2, -1, -1):
                    if field.k == 1:
                        val = (val * x + coeffs[j]) % p
                    else:
                        val = add[mul[val, x], coeffs[j]]
                hits += int((val == 0).sum())
        return hits

    t0 = time.perf_counter()
    count = _run_partitioned(total, threads, work)
    elapsed = time.perf_counter() - t0
    return CountRecord(q, field.p, field.k, n, count, kappa_value, elapsed, FIBERED)


def count_series(
    poly: MultiPoly,
    fields: Sequence[FieldSpec],
    kappa_value: int = 1,
    threads: int = 1,
    progress: Optional[Callable[[CountRecord], None]] = None,
) -> list[CountRecord]:
    """Fibered counts of the kappa-specialized polynomial over many fields."""
    if not fields:
        raise ValueError("need at least one field")
    specialized = poly.substitute(KAPPA, kappa_value)
    records = []
    for field in fields:
        rec = count_points_fibered(specialized, field, threads=threads, kappa_value=kappa_value)
        records.append(rec)
        if progress is not None:
            progress(rec)
    return records
