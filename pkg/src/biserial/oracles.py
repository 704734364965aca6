"""Brute-force oracles for the test suite.

Nothing in the library imports this module, and it deliberately avoids the
library's linear algebra and counting routines: an oracle sharing a bug
with the code it checks would be useless.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .errors import BudgetExceeded, InconsistentData
from .quiver import BoundQuiver

DEFAULT_BUDGET = 2_000_000
BOUND_CONSTANT = 4  # N_q <= C q^dim at q = 5; C < 5 pins the degree down


@dataclass(frozen=True)
class OracleReport:
    instance: str
    oracle_value: Any
    formula_value: Any
    agree: bool

    def __post_init__(self):
        if self.agree != (self.oracle_value == self.formula_value):
            raise InconsistentData("agreement flag disagrees with the reported values")

    def to_json(self) -> dict[str, Any]:
        return asdict(self)

    def line(self) -> str:
        tag = "ok" if self.agree else "MISMATCH"
        return f"{tag}: {self.instance} oracle={self.oracle_value} formula={self.formula_value}"


def _mul(a, b, q):
    inner = len(b)
    cols = len(b[0]) if b else 0
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(inner)) % q for j in range(cols)) for i in range(len(a)))


def _is_zero(m) -> bool:
    return all(x == 0 for row in m for x in row)


def oracle_rank(m, q: int) -> int:
    """Rank over F_q by plain row reduction."""
    rows = [list(r) for r in m]
    rk = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], q - 2, q)
        for i in range(len(rows)):
            if i != rk and rows[i][c] % q:
                f = rows[i][c] * inv
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def _all_matrices(rows: int, cols: int, q: int):
    for flat in itertools.product(range(q), repeat=rows * cols):
        yield tuple(tuple(flat[i * cols:(i + 1) * cols]) for i in range(rows))


def _eval_relation(rel, point, dims, bq, q):
    qv = bq.quiver
    out = None
    for coef, path in rel.terms:
        c = Fraction(coef)
        cq = c.numerator * pow(c.denominator, q - 2, q) % q
        prod = point[path.arrows[0]]
        for a in path.arrows[1:]:
            prod = _mul(point[a], prod, q)
        if out is None:
            rows = dims[qv.head(path.arrows[-1])]
            cols = dims[qv.tail(path.arrows[0])]
            out = [[0] * cols for _ in range(rows)]
        for i, row in enumerate(prod):
            for j, x in enumerate(row):
                out[i][j] = (out[i][j] + cq * x) % q
    return out


def exhaustive_rep_enumeration(bq: BoundQuiver, d: Mapping[str, int], q: int,
                               budget: int = DEFAULT_BUDGET) -> list[dict[str, tuple]]:
    """Every tuple of matrices over F_q of dimension ``d`` killing all relations."""
    qv = bq.quiver
    dims = {v: int(d[v]) for v in qv.vertices}
    shapes = [(a.name, dims[a.head], dims[a.tail]) for a in qv.arrows]
    exponent = sum(r * c for _, r, c in shapes)
    if q**exponent > budget:
        raise BudgetExceeded(f"{q}^{exponent} tuples exceed the oracle budget")
    names = [s[0] for s in shapes]
    spaces = [list(_all_matrices(r, c, q)) for _, r, c in shapes]
    out = []
    for combo in itertools.product(*spaces):
        point = dict(zip(names, combo))
        if all(_is_zero(_eval_relation(r, point, dims, bq, q)) for r in bq.relations):
            out.append(point)
    return out


def _lagrange(points: Sequence[tuple[int, int]]) -> list[Fraction]:
    """Coefficients (low degree first) of the interpolating polynomial."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / denom
    return coeffs


@dataclass(frozen=True)
class DimensionVerdict:
    ok: bool
    method: str
    estimate: int | None
    detail: str

    def __bool__(self) -> bool:
        return self.ok


def dimension_from_counts(counts: Sequence[tuple[int, int]], expected_dim: int) -> DimensionVerdict:
    """Compare point counts ``(q, N_q)`` with an expected dimension.

    Three samples determine a polynomial of degree at most 2, which is then
    fitted exactly (integer coefficients, degree ``expected_dim``).  Larger
    dimensions are checked by ``q^dim <= N_q`` for every sample and
    ``N_q <= C q^dim`` at the largest ``q`` with ``C < q``.
    """
    counts = sorted((int(q), int(n)) for q, n in counts)
    if len(counts) < 3:
        raise InconsistentData("at least three sample fields are needed")
    if any(n < 1 for _, n in counts):
        raise InconsistentData("point counts must be positive (the zero point always exists)")
    if expected_dim <= len(counts) - 1:
        coeffs = _lagrange(counts)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        integral = all(c.denominator == 1 for c in coeffs)
        degree = len(coeffs) - 1
        ok = integral and degree == expected_dim and coeffs[-1] > 0
        poly = " + ".join(f"{c}*q^{k}" for k, c in enumerate(coeffs) if c)
        return DimensionVerdict(ok, "exact fit", degree, f"N_q = {poly or '0'}")
    lower = all(n >= q**expected_dim for q, n in counts)
    qmax, nmax = counts[-1]
    upper = nmax <= BOUND_CONSTANT * qmax**expected_dim
    est = 0
    while qmax ** (est + 1) <= nmax:
        est += 1
    detail = f"q^{expected_dim} <= N_q: {lower}; N_{qmax} <= {BOUND_CONSTANT}*{qmax}^{expected_dim}: {upper}"
    return DimensionVerdict(lower and upper, "bounds", est, detail)


def rank_profile(point: Mapping[str, tuple], q: int) -> dict[str, int]:
    return {a: oracle_rank(m, q) for a, m in point.items()}
