"""Varieties of circular complexes and their rank-condition subvarieties.

A cycle shape ``n = (n_0, ..., n_{l-1})`` describes the oriented cycle with
arrows ``a_i: i -> i+1`` (indices mod ``l``) and every composite
``a_{i+1} a_i`` zero.  A point is a tuple of matrices ``A_i`` of shape
``n_{i+1} x n_i``; a rank sequence bounds ``rank A_i <= r_i``.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import BudgetExceeded, InvalidRankSequence, ShapeMismatch
from .linalg import QQ, Matrix, rank_mod_p
from .representation import Representation

RankSeq = tuple[int, ...]

DEFAULT_COUNT_BUDGET = 5**16


@dataclass(frozen=True)
class CycleShape:
    """Vertex dimensions around a cycle.

    Zero entries are accepted so that slices of arbitrary dimension vectors
    can be treated uniformly.
    """

    n: tuple[int, ...]

    def __post_init__(self):
        n = tuple(int(x) for x in self.n)
        if not n:
            raise ShapeMismatch("cycle length must be positive")
        if any(x < 0 for x in n):
            raise ShapeMismatch("cycle dimensions must be non-negative")
        object.__setattr__(self, "n", n)

    @property
    def l(self) -> int:
        return len(self.n)

    def __getitem__(self, i: int) -> int:
        return self.n[i % len(self.n)]

    def __iter__(self):
        return iter(self.n)


def _shape(shape) -> CycleShape:
    return shape if isinstance(shape, CycleShape) else CycleShape(tuple(shape))


def _check_len(shape: CycleShape, r: Sequence[int]) -> RankSeq:
    r = tuple(int(x) for x in r)
    if len(r) != shape.l:
        raise ShapeMismatch(f"rank sequence has length {len(r)}, cycle has length {shape.l}")
    return r


def is_rank_sequence(shape, r: Sequence[int]) -> bool:
    shape = _shape(shape)
    r = _check_len(shape, r)
    l = shape.l
    if any(x < 0 for x in r):
        return False
    return all(r[i - 1] + r[i] <= shape[i] for i in range(l))


def _require(shape: CycleShape, r: Sequence[int]) -> RankSeq:
    r = _check_len(shape, r)
    if not is_rank_sequence(shape, r):
        raise InvalidRankSequence(f"{r} is not a rank sequence for n={shape.n}")
    return r


def maximal_rank_sequences(shape, zero: Sequence[int] = ()) -> list[RankSeq]:
    """Coordinatewise-maximal rank sequences, sorted lexicographically.

    Indices listed in ``zero`` are forced to rank 0.
    """
    shape = _shape(shape)
    l = shape.l
    forced = set(zero)
    ranges = [
        range(1) if i in forced else range(min(shape[i], shape[i + 1]) + 1)
        for i in range(l)
    ]
    valid = [r for r in itertools.product(*ranges) if is_rank_sequence(shape, r)]
    out = [r for r in valid if not any(s != r and leq(r, s) for s in valid)]
    return sorted(out)


def leq(r1: Sequence[int], r2: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(r1, r2))


def closure_leq(r1: Sequence[int], r2: Sequence[int]) -> bool:
    """``r1 <= r2`` coordinatewise, i.e. ``M0(n, r1)`` lies in the closure of ``M0(n, r2)``'s orbit."""
    if len(r1) != len(r2):
        raise ShapeMismatch("rank sequences of different lengths")
    return leq(r1, r2)


def dim_comp(shape, r: Sequence[int]) -> int:
    shape = _shape(shape)
    r = _require(shape, r)
    return sum((r[i - 1] + r[i]) * (shape[i] - r[i - 1]) for i in range(shape.l))


def defects(shape, r: Sequence[int]) -> tuple[int, ...]:
    """``k_i = n_i - r_i - r_{i-1}``: multiplicity of the simple at ``i`` in ``M0``."""
    shape = _shape(shape)
    r = _require(shape, r)
    return tuple(shape[i] - r[i] - r[i - 1] for i in range(shape.l))


def indecomposable_multiplicities(shape, r: Sequence[int]) -> tuple[RankSeq, tuple[int, ...]]:
    """``(t, s)`` with ``M0 = sum E_{i,i+1}^{t_i} + sum S_i^{s_i}``.

    For ``l == 1`` the ``E`` summand is the square-zero Jordan block and the
    equation reads ``2 t_0 + s_0 = n_0``.
    """
    shape = _shape(shape)
    r = _require(shape, r)
    return r, defects(shape, r)


def circular_blocks(shape, r: Sequence[int], lam=1, r_target: Sequence[int] | None = None,
                    field=QQ) -> list[Matrix]:
    """Matrices ``A_i`` of ``M0(n, r)``, optionally with a degeneration parameter.

    Basis at vertex ``i``: ``r_{i-1}`` vectors hit by ``a_{i-1}``, then
    ``r_i`` vectors sent along ``a_i``, then ``k_i`` simples.  The first
    ``r_target[i]`` of the arrow's identity entries are 1, the rest ``lam``.
    """
    shape = _shape(shape)
    r = _require(shape, r)
    rt = r if r_target is None else _require(shape, r_target)
    if not leq(rt, r):
        raise InvalidRankSequence(f"{rt} is not coordinatewise below {r}")
    l = shape.l
    one, lam = field(1), field(lam)
    mats = []
    for i in range(l):
        rows, cols = shape[i + 1], shape[i]
        data = [[field(0)] * cols for _ in range(rows)]
        start = r[i - 1]
        for j in range(r[i]):
            data[j][start + j] = one if j < rt[i] else lam
        mats.append(Matrix(data, field, cols))
    return mats


def _cycle_algebra(l: int):
    from .catalog import cyclic

    return cyclic(l)


def _as_rep(shape: CycleShape, mats: list[Matrix], field) -> Representation:
    bq = _cycle_algebra(shape.l)
    dim = {str(i): shape[i] for i in range(shape.l)}
    return Representation(bq, dim, {f"a{i}": m for i, m in enumerate(mats)}, field)


def build_M0(shape, r: Sequence[int], field=QQ) -> Representation:
    shape = _shape(shape)
    return _as_rep(shape, circular_blocks(shape, r, field=field), field)


def degeneration_path(shape, r: Sequence[int], r_target: Sequence[int], lam, field=QQ) -> Representation:
    """``E^{r'} + S^{k} + E(lam)^{r - r'}``: rank sequence ``r`` for ``lam != 0``, ``r'`` at 0."""
    shape = _shape(shape)
    r = _require(shape, r)
    rt = _require(shape, r_target)
    if not leq(rt, r):
        raise InvalidRankSequence(f"{rt} and {r} are not comparable as target <= source")
    return _as_rep(shape, circular_blocks(shape, r, lam, rt, field), field)


# ---------------------------------------------------------------------------
# point counting over F_q


def _rank(m: Sequence[Sequence[int]], p: int) -> int:
    return rank_mod_p([list(row) for row in m], p)


def _nullspace_mod(m: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of ``{x : m x = 0}`` over ``F_p``."""
    a = [[x % p for x in row] for row in m]
    pivots = []
    rr = 0
    for c in range(ncols):
        piv = next((i for i in range(rr, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rr], a[piv] = a[piv], a[rr]
        inv = pow(a[rr][c], p - 2, p)
        a[rr] = [x * inv % p for x in a[rr]]
        for i in range(len(a)):
            if i != rr and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rr])]
        pivots.append(c)
        rr += 1
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [0] * ncols
        v[free] = 1
        for i, c in enumerate(pivots):
            v[c] = -a[i][free] % p
        basis.append(v)
    return basis


def _transpose(m, rows: int, cols: int):
    return [[m[i][j] for i in range(rows)] for j in range(cols)]


def _matmul(a, b, p: int, inner: int):
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) % p for j in range(cols)] for i in range(len(a))]


@lru_cache(maxsize=None)
def _bounded_matrices(rows: int, cols: int, bound: int, p: int) -> tuple:
    """All ``rows x cols`` matrices over ``F_p`` with rank at most ``bound``."""
    out = []
    for flat in itertools.product(range(p), repeat=rows * cols):
        m = [list(flat[i * cols:(i + 1) * cols]) for i in range(rows)]
        if rows == 0 or cols == 0 or _rank(m, p) <= bound:
            out.append(tuple(map(tuple, m)))
    return tuple(out)


def _count_rest(shape: CycleShape, r: RankSeq, p: int, a0) -> int:
    """Number of completions ``(A_1, ..., A_{l-1})`` of a fixed ``A_0``."""
    l = shape.l
    kernel0 = _nullspace_mod(a0, shape[0], p)  # columns of the last arrow live here

    def rec(i: int, prev) -> int:
        n_i = shape[i]
        # rows of A_i must lie in the left kernel of A_{i-1}
        left = _nullspace_mod(_transpose(prev, shape[i], shape[i - 1]), n_i, p) if n_i else []
        c = len(left)
        if i == l - 1:
            return len(_bounded_matrices(len(kernel0), c, r[i], p))
        total = 0
        for b in _bounded_matrices(shape[i + 1], c, r[i], p):
            a_i = _matmul(b, left, p, c) if c else [[0] * n_i for _ in range(shape[i + 1])]
            total += rec(i + 1, a_i)
        return total

    return rec(1, a0)


def _count_chunk(args) -> int:
    shape, r, p, chunk = args
    return sum(_count_rest(shape, r, p, a0) for a0 in chunk)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("BISERIAL_THREADS", "1")))
    except ValueError:
        return 1


def count_points(shape, r: Sequence[int], q: int, budget: int = DEFAULT_COUNT_BUDGET,
                 workers: int | None = None) -> int:
    """``|Comp(n, r)(F_q)|`` by enumeration, arrow by arrow.

    Each new matrix is drawn only from the solutions of the composite-zero
    condition with the previous one; the last arrow must also compose to
    zero with ``A_0``.
    """
    shape = _shape(shape)
    r = _require(shape, r)
    if q not in (2, 3, 5):
        raise ValueError("q must be one of the prime fields 2, 3, 5")
    l = shape.l
    cost = q ** sum(shape[i] * shape[i + 1] for i in range(l))
    if cost > budget:
        raise BudgetExceeded(f"enumeration cost {q}^{sum(shape[i] * shape[i + 1] for i in range(l))} exceeds budget")
    if l == 1:
        n = shape[0]
        count = 0
        for m in _bounded_matrices(n, n, r[0], q):
            if not any(any(row) for row in _matmul(m, m, q, n)):
                count += 1
        return count
    firsts = _bounded_matrices(shape[1], shape[0], r[0], q)
    workers = workers or _threads()
    if workers <= 1 or len(firsts) < 64:
        return _count_chunk((shape, r, q, firsts))
    chunks = [firsts[i::workers] for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return sum(ex.map(_count_chunk, [(shape, r, q, c) for c in chunks]))
