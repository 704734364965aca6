"""Explicit representations: one exact matrix per arrow."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import ShapeMismatch
from .linalg import QQ, Matrix, block_diag, inverse, nullspace, rank, solve_linear_system
from .quiver import BoundQuiver, DimVector, Relation


@dataclass(frozen=True, eq=False)
class Representation:
    """``mats[a]`` has shape ``dim[head a] x dim[tail a]``; missing arrows are zero."""

    bq: BoundQuiver
    dim: DimVector
    mats: Mapping[str, Matrix] = field(default_factory=dict)
    field: object = QQ

    def __post_init__(self):
        dim = self.dim if isinstance(self.dim, DimVector) else DimVector(self.dim)
        dim.validate(self.bq.quiver)
        object.__setattr__(self, "dim", dim)
        q = self.bq.quiver
        mats = {}
        for a in q.arrows:
            shape = (dim[a.head], dim[a.tail])
            m = self.mats.get(a.name)
            if m is None:
                m = Matrix.zeros(*shape, self.field)
            elif not isinstance(m, Matrix):
                m = Matrix.from_json(m, self.field, shape)
            if m.shape != shape:
                raise ShapeMismatch(f"arrow {a.name}: expected {shape}, got {m.shape}")
            if m.field is not self.field:
                m = m.to_field(self.field)
            mats[a.name] = m
        extra = set(self.mats) - set(mats)
        if extra:
            raise ShapeMismatch(f"matrices given for unknown arrows {sorted(extra)}")
        object.__setattr__(self, "mats", mats)

    @classmethod
    def zero(cls, bq: BoundQuiver, dim, field=QQ) -> "Representation":
        return cls(bq, DimVector(dim), {}, field)

    @classmethod
    def simple(cls, bq: BoundQuiver, vertex: str, field=QQ) -> "Representation":
        return cls.zero(bq, {v: int(v == vertex) for v in bq.vertices}, field)

    def __getitem__(self, arrow: str) -> Matrix:
        return self.mats[arrow]

    @property
    def total_dim(self) -> int:
        return self.dim.total()

    def dim_tuple(self) -> tuple[int, ...]:
        return self.dim.as_tuple(self.bq.quiver)

    def evaluate(self, rel: Relation) -> Matrix:
        q = self.bq.quiver
        _, first = rel.terms[0]
        out = Matrix.zeros(self.dim[first.target(q)], self.dim[first.source(q)], self.field)
        for coef, path in rel.terms:
            prod = self.mats[path.arrows[0]]
            for a in path.arrows[1:]:
                prod = self.mats[a] @ prod
            out = out + prod.scale(self.field(coef))
        return out

    def failing_relation(self) -> Relation | None:
        for r in self.bq.relations:
            if not self.evaluate(r).is_zero():
                return r
        return None

    def satisfies_relations(self) -> bool:
        return self.failing_relation() is None

    def rank_sequence(self) -> dict[str, int]:
        return {a: rank(m) for a, m in self.mats.items()}

    def direct_sum(self, other: "Representation") -> "Representation":
        if other.bq != self.bq:
            raise ShapeMismatch("direct sum of representations of different quivers")
        mats = {a: block_diag([self.mats[a], other.mats[a]], self.field) for a in self.mats}
        return Representation(self.bq, self.dim + other.dim, mats, self.field)

    def conjugate(self, g: Mapping[str, Matrix]) -> "Representation":
        """Base change ``M(a) -> g[head] M(a) g[tail]^-1``."""
        q = self.bq.quiver
        ginv = {v: inverse(m) for v, m in g.items()}
        mats = {a.name: g[a.head] @ self.mats[a.name] @ ginv[a.tail] for a in q.arrows}
        return Representation(self.bq, self.dim, mats, self.field)

    def reduce(self, field) -> "Representation":
        return Representation(self.bq, self.dim, {a: m.to_field(field) for a, m in self.mats.items()}, field)

    def restrict(self, bases: Mapping[str, Sequence[tuple]]) -> "Representation":
        """Representation on ``span(bases[v])`` assuming it is a subrepresentation."""
        q = self.bq.quiver
        f = self.field
        new_dim = {v: len(bases[v]) for v in q.vertices}
        mats = {}
        for a in q.arrows:
            bh = Matrix.from_columns(list(bases[a.head]), self.dim[a.head], f)
            cols = []
            for vec in bases[a.tail]:
                img = self.mats[a.name].apply(vec)
                x, _ = solve_linear_system(bh, img)
                cols.append(x)
            mats[a.name] = Matrix.from_columns(cols, new_dim[a.head], f) if cols else Matrix.zeros(new_dim[a.head], 0, f)
        return Representation(self.bq, DimVector(new_dim), mats, f)

    def same_data(self, other: "Representation") -> bool:
        return (
            self.bq == other.bq
            and self.dim == other.dim
            and self.field is other.field
            and all(self.mats[a] == other.mats[a] for a in self.mats)
        )

    def __repr__(self) -> str:
        d = ",".join(f"{v}:{self.dim[v]}" for v in self.bq.vertices)
        return f"Representation({self.bq.name}, dim=({d}), field={self.field!r})"


def direct_sum(reps: Sequence[Representation]) -> Representation:
    if not reps:
        raise ValueError("empty direct sum")
    out = reps[0]
    for r in reps[1:]:
        out = out.direct_sum(r)
    return out


def hom_space(m: Representation, n: Representation) -> list[dict[str, Matrix]]:
    """Basis of ``Hom(M, N)``: tuples ``phi`` with ``phi_h M(a) = N(a) phi_t``."""
    if m.bq != n.bq:
        raise ShapeMismatch("Hom between representations of different quivers")
    f = m.field
    q = m.bq.quiver
    offsets, pos = {}, 0
    for v in q.vertices:
        offsets[v] = pos
        pos += n.dim[v] * m.dim[v]
    nvars = pos

    def var(v, i, k):
        return offsets[v] + i * m.dim[v] + k

    zero = f(0)
    rows = []
    for a in q.arrows:
        t, h = a.tail, a.head
        ma, na = m.mats[a.name], n.mats[a.name]
        for i in range(n.dim[h]):
            for j in range(m.dim[t]):
                row = [zero] * nvars
                for k in range(m.dim[h]):
                    c = ma[k, j]
                    if c:
                        row[var(h, i, k)] = f.add(row[var(h, i, k)], c)
                for k in range(n.dim[t]):
                    c = na[i, k]
                    if c:
                        row[var(t, k, j)] = f.sub(row[var(t, k, j)], c)
                if any(row):
                    rows.append(row)
    if not rows:
        kernel = [tuple(f(int(i == j)) for i in range(nvars)) for j in range(nvars)]
    else:
        kernel = nullspace(Matrix(rows, f, nvars))
    basis = []
    for vec in kernel:
        phi = {}
        for v in q.vertices:
            dn, dm = n.dim[v], m.dim[v]
            phi[v] = Matrix([[vec[var(v, i, k)] for k in range(dm)] for i in range(dn)], f, dm)
        basis.append(phi)
    return basis


def hom_dim(m: Representation, n: Representation) -> int:
    return len(hom_space(m, n))
