"""Quivers, paths, relations and the special biserial / gentle axioms.

Paths are stored in application order: ``Path(("a", "b"))`` applies ``a``
first and renders as ``b*a``, so a relation ``b*a`` means
``M(b) M(a) = 0``.  Monomial relations of length two are handled as
ordered pairs ``(first, second)`` throughout this module.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Iterable, Mapping, Sequence

from .errors import (
    CompletionFailed,
    NonMonomialRelations,
    NotCompleteGentle,
    QuiverError,
    ShapeMismatch,
)

log = logging.getLogger(__name__)

FINITE = "finite"
COMPLETE_GENTLE = "complete_gentle"
INFINITE = "infinite"


@dataclass(frozen=True)
class Arrow:
    name: str
    tail: str
    head: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.tail not in vs or a.head not in vs:
                raise QuiverError(f"arrow {a.name} references an unknown vertex")
        if self.vertices and not self.is_connected():
            log.warning("quiver is not connected")

    @classmethod
    def build(cls, vertices: Iterable, arrows: Iterable[tuple[str, str, str]]) -> "Quiver":
        return cls(tuple(str(v) for v in vertices), tuple(Arrow(n, str(t), str(h)) for n, t, h in arrows))

    def arrow(self, name: str) -> Arrow:
        try:
            return self._arrow_index[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    @property
    def _arrow_index(self) -> dict[str, Arrow]:
        cache = self.__dict__.get("_ai")
        if cache is None:
            cache = {a.name: a for a in self.arrows}
            object.__setattr__(self, "_ai", cache)
        return cache

    @property
    def arrow_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.arrows)

    def tail(self, name: str) -> str:
        return self.arrow(name).tail

    def head(self, name: str) -> str:
        return self.arrow(name).head

    def arrows_from(self, v: str) -> list[str]:
        return [a.name for a in self.arrows if a.tail == v]

    def arrows_into(self, v: str) -> list[str]:
        return [a.name for a in self.arrows if a.head == v]

    def vertex_order(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def arrow_order(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a in self.arrows:
            adj[a.tail].add(a.head)
            adj[a.head].add(a.tail)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)


@dataclass(frozen=True)
class Path:
    """Arrows in application order; ``source`` is the tail of the first one."""

    arrows: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if not self.arrows:
            raise QuiverError("paths must contain at least one arrow")

    def __len__(self) -> int:
        return len(self.arrows)

    def check(self, q: Quiver) -> None:
        for a, b in zip(self.arrows, self.arrows[1:]):
            if q.head(a) != q.tail(b):
                raise QuiverError(f"arrows {a} and {b} do not compose")

    def source(self, q: Quiver) -> str:
        return q.tail(self.arrows[0])

    def target(self, q: Quiver) -> str:
        return q.head(self.arrows[-1])

    def text(self) -> str:
        return "*".join(reversed(self.arrows))


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[Fraction, Path], ...]

    def __post_init__(self):
        terms = tuple((Fraction(c), p if isinstance(p, Path) else Path(tuple(p))) for c, p in self.terms)
        if not terms:
            raise QuiverError("empty relation")
        if any(c == 0 for c, _ in terms):
            raise QuiverError("relation terms must have nonzero coefficients")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def monomial(cls, *arrows: str) -> "Relation":
        """Monomial relation from arrows in application order."""
        return cls(((Fraction(1), Path(arrows)),))

    def check(self, q: Quiver) -> None:
        ends = set()
        for _, p in self.terms:
            p.check(q)
            if len(p) < 2:
                raise QuiverError(f"relation path {p.text()} has length < 2")
            ends.add((p.source(q), p.target(q)))
        if len(ends) != 1:
            raise QuiverError("relation paths are not parallel")

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def pair(self) -> tuple[str, str] | None:
        """``(first, second)`` when this is a monomial path of length two."""
        if self.is_monomial and len(self.terms[0][1]) == 2:
            a, b = self.terms[0][1].arrows
            return (a, b)
        return None

    def text(self) -> str:
        out = []
        for k, (c, p) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            piece = coef + p.text()
            if k == 0:
                out.append(("-" if sign == "-" else "") + piece)
            else:
                out.append(f"{sign} {piece}")
        return " ".join(out)


@dataclass(frozen=True)
class BoundQuiver:
    """A quiver with relations; ``kind`` is inferred unless given."""

    quiver: Quiver
    relations: tuple[Relation, ...] = ()
    name: str = "Q"
    kind: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            r.check(self.quiver)
        inferred = _infer_kind(self)
        if self.kind is None:
            object.__setattr__(self, "kind", inferred)
        elif self.kind == FINITE and inferred == INFINITE:
            raise QuiverError("relations do not bound the path algebra: arbitrarily long paths survive")
        elif self.kind == COMPLETE_GENTLE and inferred != COMPLETE_GENTLE:
            raise NotCompleteGentle(str(check_complete_gentle(self)))
        elif self.kind not in (FINITE, COMPLETE_GENTLE, INFINITE):
            raise QuiverError(f"unknown kind {self.kind!r}")

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[str, ...]:
        return self.quiver.arrow_names

    def monomial_pairs(self) -> set[tuple[str, str]]:
        return {p for r in self.relations if (p := r.pair()) is not None}

    def all_length_two_monomial(self) -> bool:
        return all(r.pair() is not None for r in self.relations)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundQuiver):
            return NotImplemented
        return (self.quiver, self.relations, self.name) == (other.quiver, other.relations, other.name)

    def __hash__(self) -> int:
        return hash((self.quiver, self.relations, self.name))


def is_finite_dimensional(bq: BoundQuiver) -> bool | None:
    """Decide finite dimensionality for monomial relation sets.

    Builds the graph whose nodes are relation-free paths of length
    ``L - 1`` (``L`` the longest relation) and looks for a cycle.  Returns
    ``None`` when some relation is not monomial.
    """
    if any(not r.is_monomial for r in bq.relations):
        return None
    q = bq.quiver
    forbidden = {r.terms[0][1].arrows for r in bq.relations}
    k = max([len(f) for f in forbidden] + [2]) - 1

    def clean(path: tuple[str, ...]) -> bool:
        return not any(path[i:j] in forbidden for i in range(len(path)) for j in range(i + 2, len(path) + 1))

    states: list[tuple[str, ...]] = [(a,) for a in q.arrow_names]
    for _ in range(k - 1):
        states = [s + (b,) for s in states for b in q.arrows_from(q.head(s[-1])) if clean(s + (b,))]
    graph: dict[tuple, set] = {s: set() for s in states}
    for s in states:
        for b in q.arrows_from(q.head(s[-1])):
            ext = s + (b,)
            if clean(ext):
                graph[s].add(ext[1:])
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError:
        return False
    return True


def _infer_kind(bq: BoundQuiver) -> str:
    if bq.quiver.vertices and check_complete_gentle(bq):
        return COMPLETE_GENTLE
    fin = is_finite_dimensional(bq)
    return INFINITE if fin is False else FINITE


@dataclass(frozen=True)
class Verdict:
    ok: bool
    axiom: str | None = None
    witness: tuple = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        return f"fail {self.axiom}: {self.detail} (witness {self.witness})"


PASS = Verdict(True)


def _sb1(bq: BoundQuiver) -> Verdict:
    q = bq.quiver
    for v in q.vertices:
        if len(q.arrows_into(v)) > 2:
            return Verdict(False, "SB1", (v,), f"more than two arrows end at {v}")
        if len(q.arrows_from(v)) > 2:
            return Verdict(False, "SB1", (v,), f"more than two arrows start at {v}")
    return PASS


def _sb2(bq: BoundQuiver, pairs: set[tuple[str, str]]) -> Verdict:
    q = bq.quiver
    for a in q.arrow_names:
        before = [b for b in q.arrows_into(q.tail(a)) if (b, a) not in pairs]
        if len(before) > 1:
            return Verdict(False, "SB2", (a, before[0], before[1]), f"{a}*{before[0]} and {a}*{before[1]} both survive")
        after = [c for c in q.arrows_from(q.head(a)) if (a, c) not in pairs]
        if len(after) > 1:
            return Verdict(False, "SB2", (a, after[0], after[1]), f"{after[0]}*{a} and {after[1]}*{a} both survive")
    return PASS


def check_special_biserial(bq: BoundQuiver) -> Verdict:
    """SB1 and SB2 for relation sets made of monomial length-two paths."""
    for r in bq.relations:
        if r.pair() is None:
            raise NonMonomialRelations(f"relation {r.text()} is not a monomial path of length 2")
    v = _sb1(bq)
    if not v:
        return v
    return _sb2(bq, bq.monomial_pairs())


def check_gentle(bq: BoundQuiver) -> Verdict:
    for r in bq.relations:
        if r.pair() is None:
            return Verdict(False, "G3", (r.text(),), "relation is not a path of length two")
    pairs = bq.monomial_pairs()
    v = _sb1(bq)
    if not v:
        return v
    # the "exactly one" conditions imply SB2, so they are checked first and named
    q = bq.quiver
    for vert in q.vertices:
        outs, ins = q.arrows_from(vert), q.arrows_into(vert)
        if len(outs) == 2:
            a1, a2 = outs
            for b in ins:
                if ((b, a1) in pairs) == ((b, a2) in pairs):
                    return Verdict(False, "G1", (a1, a2, b), f"not exactly one of {a1}*{b}, {a2}*{b} is a relation")
        if len(ins) == 2:
            b1, b2 = ins
            for a in outs:
                if ((b1, a) in pairs) == ((b2, a) in pairs):
                    return Verdict(False, "G2", (b1, b2, a), f"not exactly one of {a}*{b1}, {a}*{b2} is a relation")
    return _sb2(bq, pairs)


def check_complete_gentle(bq: BoundQuiver) -> Verdict:
    q = bq.quiver
    for r in bq.relations:
        if r.pair() is None:
            return Verdict(False, "monomial", (r.text(),), "relations must be monomial paths of length two")
    for v in q.vertices:
        if len(q.arrows_into(v)) != 2:
            return Verdict(False, "in-degree", (v,), f"{len(q.arrows_into(v))} arrows end at {v}")
        if len(q.arrows_from(v)) != 2:
            return Verdict(False, "out-degree", (v,), f"{len(q.arrows_from(v))} arrows start at {v}")
    pairs = bq.monomial_pairs()
    for a in q.arrow_names:
        pre = [p for p, s in pairs if s == a]
        if len(pre) != 1:
            return Verdict(False, "predecessor", (a,), f"{len(pre)} relations of the form {a}*x")
        post = [s for p, s in pairs if p == a]
        if len(post) != 1:
            return Verdict(False, "successor", (a,), f"{len(post)} relations of the form x*{a}")
    return PASS


def _fresh_names(taken: set[str]):
    k = 1
    while True:
        name = f"w{k}"
        k += 1
        if name not in taken:
            taken.add(name)
            yield name


def complete_gentle_closure(bq: BoundQuiver) -> BoundQuiver:
    """Embed a gentle quiver with relations into a complete gentle one.

    Arrows are added one at a time between the smallest vertex pair
    ``(x, y)`` with spare out-degree at ``x`` and spare in-degree at ``y``
    (pairs with ``x != y`` first).  A relation from the textbook recipe is
    kept only when it is the unique candidate and keeps the relations at
    every vertex a partial matching.  A final pass completes the matching
    at every vertex lexicographically; existing relations are never removed.
    """
    verdict = check_gentle(bq)
    if not verdict:
        raise QuiverError(f"completion needs a gentle input: {verdict}")
    q = bq.quiver
    vorder = q.vertex_order()
    arrows: list[Arrow] = list(q.arrows)
    pairs: list[tuple[str, str]] = [r.pair() for r in bq.relations]  # type: ignore[misc]
    names = _fresh_names({a.name for a in arrows} | set(q.vertices))

    def outs(v):
        return [a.name for a in arrows if a.tail == v]

    def ins(v):
        return [a.name for a in arrows if a.head == v]

    def safe(p: tuple[str, str]) -> bool:
        return all(x[0] != p[0] and x[1] != p[1] for x in pairs)

    while len(arrows) < 2 * len(q.vertices):
        xs = [v for v in q.vertices if len(outs(v)) < 2]
        ys = [v for v in q.vertices if len(ins(v)) < 2]
        cands = [(x, y) for x in xs for y in ys if x != y] or [(x, x) for x in xs if x in ys]
        if not cands:
            raise CompletionFailed("no vertex pair with spare degree")
        x, y = min(cands, key=lambda t: (vorder[t[0]], vorder[t[1]]))
        start_x, end_y = outs(x), ins(y)
        into_x, from_y = ins(x), outs(y)
        c = next(names)
        arrows.append(Arrow(c, x, y))
        current = set(pairs)
        new_in = []
        if len(start_x) == 1:
            a = start_x[0]
            new_in = [(a2, c) for a2 in into_x if (a2, a) not in current]
        new_out = []
        if len(end_y) == 1:
            b = end_y[0]
            new_out = [(c, b2) for b2 in from_y if (b, b2) not in current]
        for cand in (new_in, new_out):
            if len(cand) == 1 and safe(cand[0]):
                pairs.append(cand[0])

    aorder = {a.name: i for i, a in enumerate(arrows)}
    for v in q.vertices:
        vin = sorted(ins(v), key=aorder.__getitem__)
        vout = sorted(outs(v), key=aorder.__getitem__)
        here = [p for p in pairs if p[0] in vin and p[1] in vout]
        firsts = [p[0] for p in here]
        seconds = [p[1] for p in here]
        if len(set(firsts)) != len(firsts) or len(set(seconds)) != len(seconds):
            raise CompletionFailed(f"relations at vertex {v} are not a partial matching")
        if len(here) == 0:
            pairs.extend([(vin[0], vout[0]), (vin[1], vout[1])])
        elif len(here) == 1:
            p, s = here[0]
            pairs.append((next(b for b in vin if b != p), next(a for a in vout if a != s)))

    old = set(r.pair() for r in bq.relations)
    added = sorted((p for p in pairs if p not in old), key=lambda t: (aorder[t[1]], aorder[t[0]]))
    relations = tuple(bq.relations) + tuple(Relation.monomial(*p) for p in added)
    out = BoundQuiver(Quiver(q.vertices, tuple(arrows)), relations, name=bq.name)
    if out.kind != COMPLETE_GENTLE:
        raise CompletionFailed(str(check_complete_gentle(out)))
    return out


def completion(bq: BoundQuiver) -> tuple[BoundQuiver, frozenset[str]]:
    """Complete gentle algebra together with the arrows to set to zero."""
    if check_complete_gentle(bq):
        return bq, frozenset()
    big = complete_gentle_closure(bq)
    return big, frozenset(set(big.arrows) - set(bq.arrows))


def effective_cycles(bq: BoundQuiver) -> list[tuple[str, ...]]:
    """Partition the arrows of a complete gentle quiver into effective cycles.

    Each cycle ``(a_1, ..., a_n)`` lists arrows in application order, so
    ``a_{i+1}*a_i`` is a relation for every ``i`` (cyclically).  Cycles
    start at their smallest arrow and are ordered by it.
    """
    v = check_complete_gentle(bq)
    if not v:
        raise NotCompleteGentle(str(v))
    succ = dict(bq.monomial_pairs())
    order = bq.quiver.arrow_order()
    seen: set[str] = set()
    cycles = []
    for a in bq.arrows:
        if a in seen:
            continue
        cyc = [a]
        seen.add(a)
        nxt = succ[a]
        while nxt != a:
            if nxt in seen:
                raise NotCompleteGentle(f"arrow {nxt} lies on two cycles")
            cyc.append(nxt)
            seen.add(nxt)
            nxt = succ[nxt]
        k = min(range(len(cyc)), key=lambda i: order[cyc[i]])
        cycles.append(tuple(cyc[k:] + cyc[:k]))
    cycles.sort(key=lambda c: order[c[0]])
    return cycles


def _check_vertex_map(q: Quiver, values: Mapping[str, int], what: str) -> None:
    if set(values) != set(q.vertices):
        raise ShapeMismatch(f"{what} must have one entry per vertex")


@dataclass(frozen=True)
class DimVector:
    entries: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        ent = {str(k): int(v) for k, v in dict(self.entries).items()}
        if any(v < 0 for v in ent.values()):
            raise ShapeMismatch("dimension vector entries must be non-negative")
        object.__setattr__(self, "entries", ent)

    def __getitem__(self, v: str) -> int:
        return self.entries[v]

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.entries.items())))

    def total(self) -> int:
        return sum(self.entries.values())

    def __add__(self, other: "DimVector") -> "DimVector":
        return DimVector({k: self.entries[k] + other.entries[k] for k in self.entries})

    def scaled(self, k: int) -> "DimVector":
        return DimVector({v: k * x for v, x in self.entries.items()})

    def support(self) -> list[str]:
        return [v for v, x in self.entries.items() if x]

    def validate(self, q: Quiver) -> "DimVector":
        _check_vertex_map(q, self.entries, "dimension vector")
        return self

    def as_tuple(self, q: Quiver) -> tuple[int, ...]:
        return tuple(self.entries[v] for v in q.vertices)


@dataclass(frozen=True)
class Weight:
    entries: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "entries", {str(k): int(v) for k, v in dict(self.entries).items()})

    def __getitem__(self, v: str) -> int:
        return self.entries[v]

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.entries.items())))

    def scaled(self, k: int) -> "Weight":
        return Weight({v: k * x for v, x in self.entries.items()})


def theta_pairing(theta: Weight | Mapping[str, int], d: DimVector | Mapping[str, int]) -> int:
    th = theta.entries if isinstance(theta, Weight) else dict(theta)
    dv = d.entries if isinstance(d, DimVector) else dict(d)
    if set(th) != set(dv):
        raise ShapeMismatch("weight and dimension vector live on different vertex sets")
    return sum(th[v] * dv[v] for v in th)


def relation_pairs_text(pairs: Sequence[tuple[str, str]]) -> list[str]:
    return [f"{s}*{p}" for p, s in pairs]
