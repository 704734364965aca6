"""String and band combinatorics for gentle algebras.

A word is a walk of letters ``(arrow, +1)`` (walk along the arrow) or
``(arrow, -1)`` (walk against it).  Text form: ``a0.a1^-1.a2``; the trivial
string at vertex ``v`` is written ``@v``.

Band modules carry their parameter on the last letter: for the Kronecker
band ``a.b^-1`` and ``lam`` this gives ``a = [1]``, ``b = [lam]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import InvalidWord, NoSolution, Unidentified
from .krull_schmidt import is_isomorphic
from .linalg import QQ, Matrix, char_poly, factor_rational_poly, inverse, nullspace, poly_str, rank, rref, solve_linear_system
from .quiver import BoundQuiver, DimVector
from .representation import Representation

Letter = tuple[str, int]


def _letter_text(l: Letter) -> str:
    return l[0] if l[1] > 0 else f"{l[0]}^-1"


_LETTER_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(\^-1)?$")


def parse_letters(text: str) -> tuple[Letter, ...]:
    out = []
    for part in text.strip().split("."):
        m = _LETTER_RE.match(part.strip())
        if not m:
            raise InvalidWord(f"cannot parse letter {part!r}")
        out.append((m.group(1), -1 if m.group(2) else 1))
    return tuple(out)


def _ends(bq: BoundQuiver, l: Letter) -> tuple[str, str]:
    a = bq.quiver.arrow(l[0])
    return (a.tail, a.head) if l[1] > 0 else (a.head, a.tail)


def _compatible(bq: BoundQuiver, pairs, x: Letter, y: Letter) -> bool:
    """May ``y`` follow ``x`` in a reduced walk?"""
    if _ends(bq, x)[1] != _ends(bq, y)[0]:
        return False
    if x[0] == y[0] and x[1] != y[1]:
        return False
    if x[1] > 0 and y[1] > 0:
        return (x[0], y[0]) not in pairs
    if x[1] < 0 and y[1] < 0:
        return (y[0], x[0]) not in pairs
    return True


def _inverse(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    return tuple((a, -s) for a, s in reversed(letters))


def _key(bq: BoundQuiver, letters: Sequence[Letter]):
    order = bq.quiver.arrow_order()
    return tuple((order[a], 0 if s > 0 else 1) for a, s in letters)


@dataclass(frozen=True)
class StringWord:
    bq: BoundQuiver
    letters: tuple[Letter, ...] = ()
    vertex: str | None = None  # only for the trivial string

    def __post_init__(self):
        letters = tuple((str(a), int(s)) for a, s in self.letters)
        object.__setattr__(self, "letters", letters)
        q = self.bq.quiver
        if not letters:
            if self.vertex not in q.vertices:
                raise InvalidWord(f"trivial string needs a vertex, got {self.vertex!r}")
            return
        for a, s in letters:
            if a not in q.arrow_names or s not in (1, -1):
                raise InvalidWord(f"unknown letter {a!r}")
        pairs = self.bq.monomial_pairs()
        for x, y in zip(letters, letters[1:]):
            if not _compatible(self.bq, pairs, x, y):
                raise InvalidWord(f"{_letter_text(x)}.{_letter_text(y)} is not a reduced step")
        object.__setattr__(self, "vertex", _ends(self.bq, letters[0])[0])

    @classmethod
    def parse(cls, bq: BoundQuiver, text: str) -> "StringWord":
        text = text.strip()
        if text.startswith("@"):
            return cls(bq, (), text[1:])
        return cls(bq, parse_letters(text))

    def positions(self) -> list[str]:
        out = [self.vertex]
        for l in self.letters:
            out.append(_ends(self.bq, l)[1])
        return out

    def dim_vector(self) -> DimVector:
        counts = {v: 0 for v in self.bq.vertices}
        for v in self.positions():
            counts[v] += 1
        return DimVector(counts)

    def inverse(self) -> "StringWord":
        if not self.letters:
            return self
        return StringWord(self.bq, _inverse(self.letters))

    def canonical(self) -> "StringWord":
        if not self.letters:
            return self
        inv = _inverse(self.letters)
        if _key(self.bq, inv) < _key(self.bq, self.letters):
            return StringWord(self.bq, inv)
        return self

    def text(self) -> str:
        if not self.letters:
            return f"@{self.vertex}"
        return ".".join(_letter_text(l) for l in self.letters)

    def __str__(self) -> str:
        return self.text()


def _is_primitive(letters: Sequence[Letter]) -> bool:
    n = len(letters)
    for p in range(1, n):
        if n % p == 0 and tuple(letters[p:]) + tuple(letters[:p]) == tuple(letters):
            return False
    return True


def _rotations(letters: Sequence[Letter]):
    letters = tuple(letters)
    for i in range(len(letters)):
        yield letters[i:] + letters[:i]


@dataclass(frozen=True)
class BandWord:
    """A primitive cyclically reduced closed walk, stored in normal form.

    Walks made only of direct letters are allowed: they occur as bands of
    infinite-dimensional complete gentle algebras.
    """

    bq: BoundQuiver
    letters: tuple[Letter, ...]

    def __post_init__(self):
        letters = tuple((str(a), int(s)) for a, s in self.letters)
        if not letters:
            raise InvalidWord("a band needs at least one letter")
        q = self.bq.quiver
        for a, s in letters:
            if a not in q.arrow_names or s not in (1, -1):
                raise InvalidWord(f"unknown letter {a!r}")
        pairs = self.bq.monomial_pairs()
        n = len(letters)
        for i in range(n):
            if not _compatible(self.bq, pairs, letters[i], letters[(i + 1) % n]):
                raise InvalidWord("band word is not cyclically reduced")
        if not _is_primitive(letters):
            raise InvalidWord("band word is a proper power")
        object.__setattr__(self, "letters", _normal_form(self.bq, letters))

    @classmethod
    def parse(cls, bq: BoundQuiver, text: str) -> "BandWord":
        return cls(bq, parse_letters(text))

    def positions(self) -> list[str]:
        return [_ends(self.bq, l)[0] for l in self.letters]

    def dim_vector(self) -> DimVector:
        counts = {v: 0 for v in self.bq.vertices}
        for v in self.positions():
            counts[v] += 1
        return DimVector(counts)

    def text(self) -> str:
        return ".".join(_letter_text(l) for l in self.letters)

    def __str__(self) -> str:
        return self.text()


def _normal_form(bq: BoundQuiver, letters: Sequence[Letter]) -> tuple[Letter, ...]:
    cands = list(_rotations(letters)) + list(_rotations(_inverse(letters)))
    return min(cands, key=lambda w: _key(bq, w))


def _letters_in_order(bq: BoundQuiver) -> list[Letter]:
    return [(a, s) for a in bq.arrows for s in (1, -1)]


@lru_cache(maxsize=256)
def enumerate_strings(bq: BoundQuiver, max_total_dim: int) -> tuple[StringWord, ...]:
    """Reduced walks up to inversion with at most ``max_total_dim`` positions."""
    if max_total_dim <= 0:
        return ()
    pairs = bq.monomial_pairs()
    alphabet = _letters_in_order(bq)
    seen = set()
    out = [StringWord(bq, (), v) for v in bq.vertices]

    def grow(word: tuple[Letter, ...]):
        if len(word) + 1 > max_total_dim:
            return
        key = min(_key(bq, word), _key(bq, _inverse(word)))
        if key not in seen:
            seen.add(key)
            out.append(StringWord(bq, word).canonical())
        for l in alphabet:
            if _compatible(bq, pairs, word[-1], l):
                grow(word + (l,))

    for l in alphabet:
        grow((l,))
    return tuple(out)


@lru_cache(maxsize=256)
def enumerate_bands(bq: BoundQuiver, max_total_dim: int) -> tuple[BandWord, ...]:
    """Normal-form band words whose modules (parameter size 1) fit the bound."""
    pairs = bq.monomial_pairs()
    alphabet = _letters_in_order(bq)
    found: dict = {}

    def grow(word: tuple[Letter, ...]):
        first = word[0]
        if _ends(bq, word[-1])[1] == _ends(bq, first)[0] and _compatible(bq, pairs, word[-1], first):
            if _is_primitive(word):
                nf = _normal_form(bq, word)
                found.setdefault(_key(bq, nf), nf)
        if len(word) >= max_total_dim:
            return
        for l in alphabet:
            if _compatible(bq, pairs, word[-1], l):
                grow(word + (l,))

    for l in alphabet:
        grow((l,))
    return tuple(BandWord(bq, found[k]) for k in sorted(found, key=lambda k: (len(k), k)))


def _position_index(positions: Sequence[str], block: int):
    """Map walk position -> offset inside its vertex space."""
    counter: dict[str, int] = {}
    index = []
    for v in positions:
        index.append(counter.get(v, 0))
        counter[v] = counter.get(v, 0) + block
    return index, counter


def string_module(w: StringWord, field=QQ) -> Representation:
    bq = w.bq
    pos = w.positions()
    index, counts = _position_index(pos, 1)
    dims = {v: counts.get(v, 0) for v in bq.vertices}
    data = {a: [[field(0)] * dims[bq.quiver.tail(a)] for _ in range(dims[bq.quiver.head(a)])] for a in bq.arrows}
    for j, (a, s) in enumerate(w.letters):
        src, dst = (j, j + 1) if s > 0 else (j + 1, j)
        data[a][index[dst]][index[src]] = field(1)
    mats = {a: Matrix(rows, field, dims[bq.quiver.tail(a)]) for a, rows in data.items()}
    m = Representation(bq, DimVector(dims), mats, field)
    assert m.dim == w.dim_vector()
    return m


def jordan_block(lam, size: int, field=QQ) -> Matrix:
    lam = field(lam)
    return Matrix([[lam if i == j else field(int(j == i + 1)) for j in range(size)] for i in range(size)], field, size)


def band_module_matrix(b: BandWord, phi: Matrix) -> Representation:
    """Band module with an invertible parameter matrix on the last letter."""
    f = phi.field
    m = phi.rows
    if not phi.is_square or rank(phi) != m:
        raise InvalidWord("band parameter must be an invertible square matrix")
    bq = b.bq
    pos = b.positions()
    n = len(pos)
    index, counts = _position_index(pos, m)
    dims = {v: counts.get(v, 0) for v in bq.vertices}
    data = {a: [[f(0)] * dims[bq.quiver.tail(a)] for _ in range(dims[bq.quiver.head(a)])] for a in bq.arrows}
    for j, (a, s) in enumerate(b.letters):
        nxt = (j + 1) % n
        src, dst = (j, nxt) if s > 0 else (nxt, j)
        block = phi if j == n - 1 else Matrix.identity(m, f)
        for r in range(m):
            for c in range(m):
                if block[r, c]:
                    data[a][index[dst] + r][index[src] + c] = f.add(data[a][index[dst] + r][index[src] + c], block[r, c])
    mats = {a: Matrix(rows, f, dims[bq.quiver.tail(a)]) for a, rows in data.items()}
    return Representation(bq, DimVector(dims), mats, f)


def band_module(b: BandWord, lam, mult: int = 1, field=QQ) -> Representation:
    if field(lam) == field(0):
        raise InvalidWord("band parameter must be nonzero")
    if mult < 1:
        raise InvalidWord("band multiplicity must be positive")
    return band_module_matrix(b, jordan_block(lam, mult, field))


def companion(coeffs: Sequence, field=QQ) -> Matrix:
    """Companion matrix of a monic polynomial given low degree first."""
    k = len(coeffs) - 1
    rows = [[field(0)] * k for _ in range(k)]
    for i in range(1, k):
        rows[i][i - 1] = field(1)
    for i in range(k):
        rows[i][k - 1] = field(-coeffs[i])
    return Matrix(rows, field, k)


# ---------------------------------------------------------------------------
# identification


@dataclass(frozen=True)
class Identification:
    kind: str  # "simple" | "string" | "band"
    word: str
    vertex: str | None = None
    parameter: Matrix | None = None

    @property
    def lam(self):
        if self.parameter is not None and self.parameter.shape == (1, 1):
            return self.parameter[0, 0]
        return None

    def text(self) -> str:
        if self.kind == "simple":
            return f"simple {self.vertex}"
        if self.kind == "string":
            return f"string {self.word}"
        f = self.parameter.field
        if self.lam is not None:
            return f"band {self.word} lambda={f.to_str(self.lam)}"
        cp = char_poly(self.parameter)
        if f is QQ:
            factors = factor_rational_poly(cp)
            if len(factors) == 1 and len(factors[0][0]) == 2:
                lam = -factors[0][0][0]
                return f"band {self.word} lambda={f.to_str(lam)} mult={factors[0][1]}"
        return f"band {self.word} charpoly={poly_str(cp)}"


def _span(vectors: Sequence[Sequence], n: int, field) -> list[tuple]:
    vectors = [tuple(v) for v in vectors if any(v)]
    if not vectors:
        return []
    rows, pivots = rref(Matrix(vectors, field, n))
    return [tuple(r) for r in rows[: len(pivots)]]


def _compose(s: list[tuple], r: list[tuple], du: int, dv: int, dw: int, field) -> list[tuple]:
    """``R o S`` for relations given by bases of pairs (concatenated tuples)."""
    if not s or not r:
        return []
    cols = [x[du:] for x in s] + [tuple(field.neg(c) for c in y[:dv]) for y in r]
    if dv == 0:
        kern = [tuple(field(int(i == j)) for i in range(len(cols))) for j in range(len(cols))]
    else:
        kern = nullspace(Matrix.from_columns(cols, dv, field))
    out = []
    ns = len(s)
    for k in kern:
        u = [field(0)] * du
        w = [field(0)] * dw
        for i, c in enumerate(k[:ns]):
            if c:
                u = [field.add(a, field.mul(c, b)) for a, b in zip(u, s[i][:du])]
        for i, c in enumerate(k[ns:]):
            if c:
                w = [field.add(a, field.mul(c, b)) for a, b in zip(w, r[i][dv:])]
        out.append(tuple(u) + tuple(w))
    return _span(out, du + dw, field)


def _letter_relation(n: Representation, l: Letter) -> list[tuple]:
    f = n.field
    mat = n.mats[l[0]]
    src, dst = _ends(n.bq, l)
    ds, dd = n.dim[src], n.dim[dst]
    out = []
    if l[1] > 0:
        for i in range(ds):
            e = tuple(f(int(k == i)) for k in range(ds))
            out.append(e + mat.column(i))
    else:
        for i in range(dd):
            e = tuple(f(int(k == i)) for k in range(dd))
            out.append(mat.column(i) + e)
    return _span(out, ds + dd, f)


def recover_parameter(n: Representation, b: BandWord) -> Matrix | None:
    """Induced automorphism of the composite relation around ``b`` on its stable part."""
    f = n.field
    pos = b.positions()
    d0 = n.dim[pos[0]]
    dims = [n.dim[v] for v in pos] + [d0]
    rel = _letter_relation(n, b.letters[0])
    for j, l in enumerate(b.letters[1:], start=1):
        rel = _compose(rel, _letter_relation(n, l), d0, dims[j], dims[j + 1], f)
    power = rel
    image, indet = None, None
    for _ in range(d0 + 2):
        img = _span([x[d0:] for x in power], d0, f)
        ind = _span([x[d0:] for x in _kernel_part(power, d0, f)], d0, f)
        if image is not None and len(img) == len(image) and len(ind) == len(indet):
            break
        image, indet = img, ind
        power = _compose(power, rel, d0, d0, d0, f)
    if not image:
        return None
    inter = _intersect(image, indet, d0, f)
    quot = _complement_in(image, inter, d0, f)
    if not quot:
        return None
    basis = inter + quot
    cols = []
    for v in quot:
        w = _apply_relation(rel, v, d0, f)
        if w is None:
            return None
        coords = _coordinates(basis, w, d0, f)
        if coords is None:
            return None
        cols.append(coords[len(inter):])
    return Matrix.from_columns(cols, len(quot), f)


def _kernel_part(rel: list[tuple], d: int, f) -> list[tuple]:
    """Pairs ``(0, w)`` in the relation: combinations with zero first half."""
    if not rel:
        return []
    firsts = Matrix.from_columns([x[:d] for x in rel], d, f)
    out = []
    for k in nullspace(firsts):
        w = [f(0)] * (len(rel[0]) - d)
        for c, x in zip(k, rel):
            if c:
                w = [f.add(a, f.mul(c, y)) for a, y in zip(w, x[d:])]
        out.append((f(0),) * d + tuple(w))
    return out


def _intersect(a: list[tuple], b: list[tuple], d: int, f) -> list[tuple]:
    if not a or not b:
        return []
    cols = list(a) + [tuple(f.neg(x) for x in v) for v in b]
    out = []
    for k in nullspace(Matrix.from_columns(cols, d, f)):
        v = [f(0)] * d
        for c, x in zip(k[: len(a)], a):
            if c:
                v = [f.add(p, f.mul(c, y)) for p, y in zip(v, x)]
        out.append(tuple(v))
    return _span(out, d, f)


def _complement_in(space: list[tuple], sub: list[tuple], d: int, f) -> list[tuple]:
    cur = list(sub)
    out = []
    for v in space:
        if len(_span(cur + [v], d, f)) > len(cur):
            cur.append(v)
            out.append(v)
    return out


def _apply_relation(rel: list[tuple], v: tuple, d: int, f):
    firsts = Matrix.from_columns([x[:d] for x in rel], d, f)
    try:
        k, _ = solve_linear_system(firsts, v)
    except NoSolution:
        return None
    w = [f(0)] * d
    for c, x in zip(k, rel):
        if c:
            w = [f.add(a, f.mul(c, y)) for a, y in zip(w, x[d:])]
    return tuple(w)


def _coordinates(basis: list[tuple], w: tuple, d: int, f):
    try:
        x, _ = solve_linear_system(Matrix.from_columns(basis, d, f), w)
    except NoSolution:
        return None
    return x


def identify(n: Representation, bq: BoundQuiver | None = None, seed=0, trials: int = 8) -> Identification:
    """Name an indecomposable representation as a simple, a string or a band."""
    bq = bq or n.bq
    if n.bq != bq:
        raise Unidentified("representation belongs to a different bound quiver")
    dim = n.dim
    total = n.total_dim
    if total == 1:
        v = next(v for v in bq.vertices if dim[v])
        if all(m.is_zero() for m in n.mats.values()):
            return Identification("simple", f"@{v}", v)
    for w in enumerate_strings(bq, total):
        if w.dim_vector() == dim and is_isomorphic(string_module(w, n.field), n, trials, seed):
            if not w.letters:
                return Identification("simple", w.text(), w.vertex)
            return Identification("string", w.text())
    for b in enumerate_bands(bq, total):
        bd = b.dim_vector()
        k = next((k for k in range(1, total + 1) if bd.scaled(k) == dim), None)
        if k is None:
            continue
        phi = recover_parameter(n, b)
        if phi is None or phi.rows != k or rank(phi) != k:
            continue
        for cand in (phi, inverse(phi)):
            if is_isomorphic(band_module_matrix(b, cand), n, trials, seed):
                return Identification("band", b.text(), parameter=cand)
    raise Unidentified(f"no string or band matches {n!r}")
