"""Text format for bound quivers and JSON payloads for representations.

Quiver files hold one declaration per line; ``#`` starts a comment::

    quiver kronecker
    vertex 1
    vertex 2
    arrow a : 1 -> 2
    arrow b : 1 -> 2
    rel b*a - 2/3*c*d      # paths read right to left
    dim 1=2 2=2
    theta 1=1 2=-1
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import QuiverError, QuiverParseError, ShapeMismatch
from .krull_schmidt import Summand
from .linalg import Matrix, field_from_name
from .quiver import Arrow, BoundQuiver, DimVector, Path, Quiver, Relation, Weight
from .representation import Representation

_ID = r"[A-Za-z_][A-Za-z0-9_]*"
_VERTEX = r"[A-Za-z0-9_]+"
_ARROW_RE = re.compile(rf"^arrow\s+({_ID})\s*:\s*({_VERTEX})\s*->\s*({_VERTEX})\s*$")
_TERM_RE = re.compile(rf"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\*)?({_ID}(?:\*{_ID})*)\s*")
_ASSIGN_RE = re.compile(rf"^({_VERTEX})=(-?\d+)$")


@dataclass(frozen=True)
class QuiverFile:
    bq: BoundQuiver
    dim: DimVector | None = None
    theta: Weight | None = None


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def _parse_relation(body: str, lineno: int, offset: int) -> Relation:
    terms = []
    pos = 0
    while pos < len(body):
        m = _TERM_RE.match(body, pos)
        if not m or m.end() == pos:
            raise QuiverParseError(f"cannot parse relation term {body[pos:].strip()!r}", lineno, offset + pos + 1)
        sign, coef, path = m.groups()
        if terms and sign is None:
            raise QuiverParseError("relation terms must be separated by + or -", lineno, offset + pos + 1)
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        arrows = tuple(reversed(path.split("*")))
        terms.append((c, Path(arrows)))
        pos = m.end()
    if not terms:
        raise QuiverParseError("empty relation", lineno, offset + 1)
    return Relation(tuple(terms))


def _parse_assignments(body: str, lineno: int, offset: int) -> dict[str, int]:
    out = {}
    col = offset
    for tok in body.split():
        col = offset + body.index(tok, col - offset) + 1
        m = _ASSIGN_RE.match(tok)
        if not m:
            raise QuiverParseError(f"expected vertex=integer, got {tok!r}", lineno, col)
        if m.group(1) in out:
            raise QuiverParseError(f"vertex {m.group(1)} assigned twice", lineno, col)
        out[m.group(1)] = int(m.group(2))
    return out


def parse_quiver(text: str) -> QuiverFile:
    name = "Q"
    vertices: list[str] = []
    arrows: list[Arrow] = []
    rels: list[tuple[int, Relation]] = []
    dim = theta = None
    dim_line = theta_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        keyword, _, rest = line.partition(" ")
        body_col = indent + len(keyword) + 1
        rest_stripped = rest.lstrip()
        body_col += len(rest) - len(rest_stripped)
        if keyword == "quiver":
            if not re.fullmatch(r"\S+", rest_stripped):
                raise QuiverParseError("quiver needs a single name", lineno, body_col + 1)
            name = rest_stripped
        elif keyword == "vertex":
            ids = rest_stripped.split()
            if not ids:
                raise QuiverParseError("vertex needs an identifier", lineno, body_col + 1)
            for v in ids:
                if not re.fullmatch(_VERTEX, v):
                    raise QuiverParseError(f"bad vertex identifier {v!r}", lineno, body_col + rest_stripped.index(v) + 1)
                if v in vertices:
                    raise QuiverParseError(f"duplicate vertex {v}", lineno, body_col + rest_stripped.index(v) + 1)
                vertices.append(v)
        elif keyword == "arrow":
            m = _ARROW_RE.match(line)
            if not m:
                raise QuiverParseError("expected 'arrow <id> : <tail> -> <head>'", lineno, body_col + 1)
            a, t, h = m.groups()
            for v, grp in ((t, 2), (h, 3)):
                if v not in vertices:
                    raise QuiverParseError(f"unknown vertex {v}", lineno, indent + m.start(grp) + 1)
            if any(x.name == a for x in arrows):
                raise QuiverParseError(f"duplicate arrow {a}", lineno, indent + m.start(1) + 1)
            arrows.append(Arrow(a, t, h))
        elif keyword == "rel":
            rels.append((lineno, _parse_relation(rest_stripped, lineno, body_col)))
        elif keyword == "dim":
            dim, dim_line = _parse_assignments(rest_stripped, lineno, body_col), lineno
        elif keyword == "theta":
            theta, theta_line = _parse_assignments(rest_stripped, lineno, body_col), lineno
        else:
            raise QuiverParseError(f"unknown declaration {keyword!r}", lineno, indent + 1)
    try:
        q = Quiver(tuple(vertices), tuple(arrows))
    except QuiverError as e:
        raise QuiverParseError(str(e), 0, 0) from e
    for lineno, r in rels:
        try:
            r.check(q)
        except (QuiverError, KeyError) as e:
            raise QuiverParseError(f"bad relation: {e}", lineno, 1) from e
    bq = BoundQuiver(q, tuple(r for _, r in rels), name=name)
    dv = wt = None
    if dim is not None:
        if set(dim) != set(vertices):
            raise QuiverParseError("dim must assign every vertex", dim_line, 1)
        try:
            dv = DimVector(dim)
        except ShapeMismatch as e:
            raise QuiverParseError(str(e), dim_line, 1) from e
    if theta is not None:
        if set(theta) != set(vertices):
            raise QuiverParseError("theta must assign every vertex", theta_line, 1)
        wt = Weight(theta)
    return QuiverFile(bq, dv, wt)


def load_quiver(path: str) -> QuiverFile:
    with open(path, encoding="utf-8") as fh:
        return parse_quiver(fh.read())


def _assign_text(entries: dict, vertices) -> str:
    return " ".join(f"{v}={entries[v]}" for v in vertices)


def print_quiver(x: QuiverFile | BoundQuiver) -> str:
    qf = x if isinstance(x, QuiverFile) else QuiverFile(x)
    bq = qf.bq
    lines = [f"quiver {bq.name}"]
    lines += [f"vertex {v}" for v in bq.vertices]
    lines += [f"arrow {a.name} : {a.tail} -> {a.head}" for a in bq.quiver.arrows]
    lines += [f"rel {r.text()}" for r in bq.relations]
    if qf.dim is not None:
        lines.append("dim " + _assign_text(qf.dim.entries, bq.vertices))
    if qf.theta is not None:
        lines.append("theta " + _assign_text(qf.theta.entries, bq.vertices))
    return "\n".join(lines) + "\n"


def parse_assignment_arg(text: str) -> dict[str, int]:
    """``"1=2,2=2"`` -> ``{"1": 2, "2": 2}`` (commas or spaces)."""
    out = {}
    for tok in re.split(r"[,\s]+", text.strip()):
        if not tok:
            continue
        m = _ASSIGN_RE.match(tok)
        if not m:
            raise ValueError(f"expected vertex=integer, got {tok!r}")
        out[m.group(1)] = int(m.group(2))
    return out


def parse_int_list(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in re.split(r"[,\s]+", text.strip()) if t)


# ---------------------------------------------------------------------------
# JSON


def rep_to_json(m: Representation) -> dict[str, Any]:
    return {
        "quiver": m.bq.name,
        "dim": {v: m.dim[v] for v in m.bq.vertices},
        "field": m.field.name,
        "mats": {a: m.mats[a].to_json() for a in m.bq.arrows},
    }


def rep_from_json(bq: BoundQuiver, data: dict[str, Any]) -> Representation:
    try:
        field = field_from_name(data.get("field", "Q"))
        dim = DimVector(data["dim"])
        dim.validate(bq.quiver)
        mats = {}
        for a, rows in data.get("mats", {}).items():
            if a not in bq.arrows:
                raise ShapeMismatch(f"unknown arrow {a}")
            shape = (dim[bq.quiver.head(a)], dim[bq.quiver.tail(a)])
            mats[a] = Matrix.from_json(rows, field, shape)
    except (KeyError, TypeError, ValueError) as e:
        raise ShapeMismatch(f"malformed representation JSON: {e}") from e
    return Representation(bq, dim, mats, field)


def load_rep(bq: BoundQuiver, path: str) -> Representation:
    with open(path, encoding="utf-8") as fh:
        return rep_from_json(bq, json.load(fh))


def summands_to_json(summands, labels=None) -> dict[str, Any]:
    out = []
    for i, s in enumerate(summands):
        item = {"representation": rep_to_json(s.rep), "multiplicity": s.multiplicity}
        if getattr(s, "degree", 1) != 1:
            item["degree"] = s.degree
        if labels is not None:
            item["identified"] = labels[i]
        out.append(item)
    return {"summands": out}


def summands_from_json(bq: BoundQuiver, data: dict[str, Any]):
    return [
        Summand(rep_from_json(bq, item["representation"]), int(item["multiplicity"]), int(item.get("degree", 1)))
        for item in data["summands"]
    ]


def dumps(obj: Any) -> str:
    """Deterministic JSON rendering."""
    return json.dumps(obj, indent=2, sort_keys=True)
