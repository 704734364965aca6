"""Irreducible components of representation varieties of gentle algebras.

A gentle algebra ``A`` is handled through a complete gentle algebra ``L``
together with a set ``Z`` of arrows of ``L`` that are set to zero, so that
``A = L / <Z>``.  Since every arrow of ``L`` lies on exactly one effective
cycle, ``rep(L, d)`` is a product of varieties of circular complexes and its
components are indexed by one maximal rank sequence per cycle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import circular
from .errors import InvalidRankSequence, NotCompleteGentle, SamplingFailed, ShapeMismatch
from .linalg import QQ, Matrix, inverse, random_invertible, rank
from .quiver import (
    BoundQuiver,
    DimVector,
    Quiver,
    check_complete_gentle,
    completion,
    effective_cycles,
)
from .representation import Representation, hom_dim, hom_space

SAMPLE_RETRIES = 8

__all__ = [
    "GentlePresentation",
    "ComponentDescriptor",
    "presentation",
    "check_relations",
    "rank_sequence_of",
    "components",
    "dim_component",
    "sample_generic",
    "hom_space",
    "generic_hom",
]


@dataclass(frozen=True)
class GentlePresentation:
    """``algebra = completion / <zero>``."""

    algebra: BoundQuiver
    completion: BoundQuiver
    zero: frozenset[str]

    @cached_property
    def cycles(self) -> list[tuple[str, ...]]:
        return effective_cycles(self.completion)


def _quotient(big: BoundQuiver, zero: frozenset[str]) -> BoundQuiver:
    q = big.quiver
    arrows = tuple(a for a in q.arrows if a.name not in zero)
    rels = tuple(r for r in big.relations if not any(a in zero for _, p in r.terms for a in p.arrows))
    return BoundQuiver(Quiver(q.vertices, arrows), rels, name=big.name)


def presentation(bq: BoundQuiver | GentlePresentation, zero: Sequence[str] = ()) -> GentlePresentation:
    """Present ``bq`` as a complete gentle algebra modulo zero arrows.

    A complete gentle ``bq`` is taken as ``L`` with the given ``zero`` set;
    a gentle ``bq`` is completed and the added arrows become ``Z``.
    """
    if isinstance(bq, GentlePresentation):
        return bq
    zero = frozenset(zero)
    if check_complete_gentle(bq):
        unknown = zero - set(bq.arrows)
        if unknown:
            raise ShapeMismatch(f"unknown zero arrows {sorted(unknown)}")
        algebra = _quotient(bq, zero) if zero else bq
        return GentlePresentation(algebra, bq, zero)
    if zero:
        raise NotCompleteGentle("a zero-arrow set needs a complete gentle algebra")
    big, z = completion(bq)
    return GentlePresentation(bq, big, z)


@dataclass(frozen=True)
class ComponentDescriptor:
    """The component ``rep(L, d, r)`` of ``rep(A, d)``."""

    pres: GentlePresentation
    dim: DimVector
    ranks: tuple[tuple[str, int], ...]

    def __post_init__(self):
        dim = self.dim if isinstance(self.dim, DimVector) else DimVector(self.dim)
        dim.validate(self.pres.completion.quiver)
        object.__setattr__(self, "dim", dim)
        order = self.pres.completion.quiver.arrow_order()
        ranks = dict(self.ranks)
        if set(ranks) != set(order):
            raise ShapeMismatch("rank sequence must have one entry per arrow of the completion")
        object.__setattr__(self, "ranks", tuple(sorted(ranks.items(), key=lambda kv: order[kv[0]])))
        for a in self.pres.zero:
            if ranks[a]:
                raise InvalidRankSequence(f"zero arrow {a} has rank {ranks[a]}")
        for shape, r in self.cycle_data():
            if not circular.is_rank_sequence(shape, r):
                raise InvalidRankSequence(f"ranks {r} violate the cycle bound for n={shape.n}")

    @property
    def algebra(self) -> BoundQuiver:
        return self.pres.algebra

    def rank(self, arrow: str) -> int:
        return dict(self.ranks)[arrow]

    def rank_map(self) -> dict[str, int]:
        return dict(self.ranks)

    def cycle_data(self) -> list[tuple[circular.CycleShape, tuple[int, ...]]]:
        out = []
        q = self.pres.completion.quiver
        ranks = dict(self.ranks)
        for cyc in self.pres.cycles:
            shape = circular.CycleShape(tuple(self.dim[q.tail(a)] for a in cyc))
            out.append((shape, tuple(ranks[a] for a in cyc)))
        return out

    def rank_text(self) -> str:
        return "(" + ",".join(f"{a}:{r}" for a, r in self.ranks) + ")"

    def __str__(self) -> str:
        return f"r={self.rank_text()}"


def check_relations(bq: BoundQuiver, m: Representation):
    """``(ok, first failing relation or None)``."""
    if m.bq != bq:
        raise ShapeMismatch("representation belongs to a different bound quiver")
    bad = m.failing_relation()
    return bad is None, bad


def rank_sequence_of(m: Representation) -> dict[str, int]:
    return m.rank_sequence()


def components(bq, d, zero: Sequence[str] = ()) -> list[ComponentDescriptor]:
    """Irreducible components of ``rep(A, d)``, one per tuple of maximal cycle rank sequences."""
    pres = presentation(bq, zero)
    dim = d if isinstance(d, DimVector) else DimVector(d)
    dim.validate(pres.completion.quiver)
    q = pres.completion.quiver
    per_cycle = []
    for cyc in pres.cycles:
        shape = circular.CycleShape(tuple(dim[q.tail(a)] for a in cyc))
        forced = [i for i, a in enumerate(cyc) if a in pres.zero]
        per_cycle.append([dict(zip(cyc, r)) for r in circular.maximal_rank_sequences(shape, forced)])
    out = []
    for choice in itertools.product(*per_cycle):
        ranks: dict[str, int] = {}
        for part in choice:
            ranks.update(part)
        out.append(ComponentDescriptor(pres, dim, tuple(ranks.items())))
    order = q.arrow_order()
    out.sort(key=lambda c: tuple(-c.rank(a) for a in sorted(order, key=order.get)))
    return out


def dim_component(c: ComponentDescriptor) -> int:
    total = sum(circular.dim_comp(shape, r) for shape, r in c.cycle_data())
    bound = sum(x * x for x in c.dim.entries.values())
    assert total <= bound, "component dimension above the sum of squares"
    return total


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def sample_on_completion(c: ComponentDescriptor, seed=0, field=QQ) -> Representation:
    """Generic point of ``rep(L, d, r)`` as a representation of the completion."""
    rng = _rng(seed)
    big = c.pres.completion
    ranks = c.rank_map()
    for _ in range(SAMPLE_RETRIES):
        mats: dict[str, Matrix] = {}
        for cyc, (shape, r) in zip(c.pres.cycles, c.cycle_data()):
            blocks = circular.circular_blocks(shape, r, field=field)
            g = [random_invertible(shape[i], rng, field) for i in range(shape.l)]
            for i, a in enumerate(cyc):
                mats[a] = g[(i + 1) % shape.l] @ blocks[i] @ inverse(g[i])
        m = Representation(big, c.dim, mats, field)
        if all(rank(m.mats[a]) == ranks[a] for a in ranks) and m.satisfies_relations():
            return m
    raise SamplingFailed(f"no generic sample with ranks {c.rank_text()} after {SAMPLE_RETRIES} attempts")


def restrict_to_algebra(m: Representation, pres: GentlePresentation) -> Representation:
    """Forget the (zero) arrows of ``Z`` to get a representation of ``A``."""
    if pres.algebra == m.bq:
        return m
    for a in pres.zero:
        if not m.mats[a].is_zero():
            raise ShapeMismatch(f"arrow {a} of the zero set acts nontrivially")
    keep = {a: mat for a, mat in m.mats.items() if a not in pres.zero}
    return Representation(pres.algebra, m.dim, keep, m.field)


def sample_generic(c: ComponentDescriptor, seed=0, field=QQ) -> Representation:
    """Generic point of the component as a representation of ``A``.

    Each cycle's ``M0`` blocks are conjugated by independent random
    invertible matrices at every cycle position.
    """
    return restrict_to_algebra(sample_on_completion(c, seed, field), c.pres)


def generic_hom(c1: ComponentDescriptor, c2: ComponentDescriptor, trials: int = 3, seed=0) -> int:
    """Minimum of ``dim Hom(X, Y)`` over sampled pairs: an upper bound for the generic value."""
    if c1.pres != c2.pres:
        raise ShapeMismatch("components of different algebras")
    rng = _rng(seed)
    best = None
    for _ in range(max(1, trials)):
        x = sample_generic(c1, rng)
        y = sample_generic(c2, rng)
        h = hom_dim(x, y)
        best = h if best is None else min(best, h)
        if best == 0:
            break
    return best
