"""Endomorphism rings, Krull-Schmidt splitting and isomorphism tests.

Splitting works over QQ: a random endomorphism is factored through its
characteristic polynomial, and the generalized kernels of the coprime
factors are subrepresentations giving a direct-sum decomposition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ShapeMismatch, SplitInconclusive
from .linalg import (
    QQ,
    Matrix,
    block_diag,
    char_poly,
    factor_rational_poly,
    inverse,
    random_invertible,
    nullspace,
    poly_of_matrix,
    poly_pow,
    rank,
)
from .representation import Representation, direct_sum, hom_space

Endo = dict  # vertex -> Matrix

DEFAULT_RETRIES = 40
DEFAULT_CONFIDENCE = 6


@dataclass(frozen=True)
class EndBasis:
    elements: tuple
    rep: Representation

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def is_commutative(self) -> bool:
        els = self.elements
        return all(
            _compose(x, y) == _compose(y, x) for i, x in enumerate(els) for y in els[i + 1:]
        )


@dataclass(frozen=True)
class Summand:
    """An indecomposable summand with its multiplicity.

    ``degree`` > 1 marks a summand that is indecomposable over QQ but whose
    commutative endomorphism field has that degree: over an algebraic
    closure it is a sum of ``degree`` pairwise non-isomorphic pieces.
    """

    rep: Representation
    multiplicity: int
    degree: int = 1

    @property
    def geometric_multiplicity(self) -> int:
        return self.multiplicity * self.degree


@dataclass(frozen=True)
class Certificate:
    indecomposable: bool
    trials: int = 0
    witness: Endo | None = field(default=None, compare=False)
    degree: int = 1

    def __bool__(self) -> bool:
        return self.indecomposable


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _compose(x: Endo, y: Endo) -> Endo:
    return {v: x[v] @ y[v] for v in x}


def _combine(basis: Sequence[Endo], coeffs: Sequence[int], f) -> Endo:
    out = None
    for c, e in zip(coeffs, basis):
        if not c:
            continue
        term = {v: m.scale(f(c)) for v, m in e.items()}
        out = term if out is None else {v: out[v] + term[v] for v in out}
    if out is None:
        out = {v: Matrix.zeros(*m.shape, f) for v, m in basis[0].items()}
    return out


def _flatten(m: Representation, phi: Endo) -> Matrix:
    return block_diag([phi[v] for v in m.bq.vertices], m.field)


def end_ring(m: Representation) -> EndBasis:
    return EndBasis(tuple(hom_space(m, m)), m)


def _is_scalar(m: Representation, phi: Endo) -> bool:
    big = _flatten(m, phi)
    n = big.rows
    if n == 0:
        return True
    c = big[0, 0]
    return big == Matrix.scalar(n, c, m.field)


def split_by(m: Representation, phi: Endo) -> list[Representation] | None:
    """Summands from the coprime factors of ``phi``'s characteristic polynomial."""
    if m.field is not QQ:
        raise ValueError("splitting is implemented over QQ only")
    factors = factor_rational_poly(char_poly(_flatten(m, phi)))
    if len(factors) < 2:
        return None
    parts = []
    for fac, mult in factors:
        g = poly_pow(fac, mult)
        bases = {v: nullspace(poly_of_matrix(g, phi[v])) if m.dim[v] else [] for v in m.bq.vertices}
        parts.append(m.restrict(bases))
    return parts


def _factor_data(m: Representation, phi: Endo) -> list[tuple[tuple, int]]:
    return factor_rational_poly(char_poly(_flatten(m, phi)))


def _candidates(basis: Sequence[Endo], rng: random.Random, retries: int):
    """Basis elements, pairwise products, then random combinations."""
    yield from basis
    for x in basis[:6]:
        for y in basis[:6]:
            yield _compose(x, y)
    n = len(basis)
    f = basis[0][next(iter(basis[0]))].field
    for _ in range(retries):
        yield _combine(basis, [rng.randint(-3, 3) for _ in range(n)], f)


def _projection(m: Representation, parts_bases: list[dict]) -> Endo:
    """Idempotent projecting onto the first block of a decomposition."""
    f = m.field
    proj = {}
    for v in m.bq.vertices:
        d = m.dim[v]
        if d == 0:
            proj[v] = Matrix.zeros(0, 0, f)
            continue
        cols = [vec for bases in parts_bases for vec in bases[v]]
        b = Matrix.from_columns(cols, d, f)
        k = len(parts_bases[0][v])
        diag = Matrix([[f(int(i == j and i < k)) for j in range(d)] for i in range(d)], f, d)
        proj[v] = b @ diag @ inverse(b)
    return proj


def _try_split(m: Representation, seed, retries: int):
    """``(parts, phi, max_degree, commutative)``; ``parts`` is None when no split was found."""
    rng = _rng(seed)
    end = end_ring(m)
    if end.dimension <= 1:
        return None, None, 1, True
    max_deg = 1
    for phi in _candidates(list(end.elements), rng, retries):
        if _is_scalar(m, phi):
            continue
        factors = _factor_data(m, phi)
        if len(factors) > 1:
            return split_by(m, phi), phi, max_deg, None
        max_deg = max(max_deg, len(factors[0][0]) - 1)
    return None, None, max_deg, end.is_commutative()


def is_indecomposable(m: Representation, seed=0, k: int = DEFAULT_CONFIDENCE) -> Certificate:
    """Randomized certificate: ``k`` End elements, each with a primary characteristic polynomial."""
    if m.total_dim == 0:
        return Certificate(False, 0)
    rng = _rng(seed)
    end = end_ring(m)
    if end.dimension == 1:
        return Certificate(True, k)
    f = m.field
    basis = list(end.elements)
    candidates = basis + [_combine(basis, [rng.randint(-3, 3) for _ in basis], f) for _ in range(k)]
    max_deg = 1
    for phi in candidates:
        factors = _factor_data(m, phi)
        if len(factors) > 1:
            g0 = poly_pow(*factors[0])
            first = {v: nullspace(poly_of_matrix(g0, phi[v])) if m.dim[v] else [] for v in m.bq.vertices}
            rest = {v: [] for v in m.bq.vertices}
            for fac, mult in factors[1:]:
                g = poly_pow(fac, mult)
                for v in m.bq.vertices:
                    if m.dim[v]:
                        rest[v] += nullspace(poly_of_matrix(g, phi[v]))
            return Certificate(False, k, _projection(m, [first, rest]))
        max_deg = max(max_deg, len(factors[0][0]) - 1)
    return Certificate(True, k, degree=max_deg if end.is_commutative() else 1)


def _split_all(m: Representation, rng: random.Random, retries: int) -> list[tuple[Representation, int]]:
    if m.total_dim == 0:
        return []
    parts, _, max_deg, commutative = _try_split(m, rng, retries)
    if parts is None:
        if max_deg > 1 and not commutative:
            raise SplitInconclusive(
                f"no split of {m!r} found after {retries} random endomorphisms"
            )
        return [(m, max_deg if commutative else 1)]
    out = []
    for p in parts:
        out.extend(_split_all(p, rng, retries))
    return out


def decompose(m: Representation, seed=0, retries: int = DEFAULT_RETRIES, trials: int = 8) -> list[Summand]:
    """Krull-Schmidt decomposition over QQ, grouped up to isomorphism."""
    if m.field is not QQ:
        raise ValueError("decompose works over QQ")
    rng = _rng(seed)
    pieces = _split_all(m, rng, retries)
    groups: list[list] = []
    for rep, deg in pieces:
        for g in groups:
            if g[2] == deg and is_isomorphic(g[0], rep, trials, rng):
                g[1] += 1
                break
        else:
            groups.append([rep, 1, deg])
    return [Summand(r, k, d) for r, k, d in groups]


def _invertible(m: Representation, phi: Endo) -> bool:
    return all(rank(phi[v]) == m.dim[v] for v in m.bq.vertices)


def find_isomorphism(m: Representation, n: Representation, trials: int = 8, seed=0) -> Endo | None:
    if m.bq != n.bq or m.dim != n.dim or m.field is not n.field:
        return None
    if m.rank_sequence() != n.rank_sequence():
        return None
    basis = hom_space(m, n)
    if not basis:
        return None
    rng = _rng(seed)
    for phi in basis:
        if _invertible(m, phi):
            return phi
    f = m.field
    for _ in range(trials):
        phi = _combine(basis, [rng.randint(-5, 5) for _ in basis], f)
        if _invertible(m, phi):
            return phi
    return None


def is_isomorphic(m: Representation, n: Representation, trials: int = 8, seed=0) -> bool:
    return find_isomorphism(m, n, trials, seed) is not None


def conjugate(m: Representation, seed=0) -> Representation:
    """Random base change of ``m``; deterministic per seed."""
    rng = _rng(seed)
    g = {v: random_invertible(m.dim[v], rng, m.field) for v in m.bq.vertices}
    return m.conjugate(g)


def reassemble(summands: Sequence[Summand]) -> Representation:
    reps = [s.rep for s in summands for _ in range(s.multiplicity)]
    return direct_sum(reps)


def check_summands(m: Representation, summands: Sequence[Summand]) -> None:
    total = None
    for s in summands:
        d = s.rep.dim.scaled(s.multiplicity)
        total = d if total is None else total + d
    if total is not None and total != m.dim:
        raise ShapeMismatch("summand dimension vectors do not add up")
