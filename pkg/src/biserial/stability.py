"""King stability and the moduli structure of components.

Subrepresentations are enumerated exhaustively over small prime fields.
A rational module is reduced modulo several primes; primes where some arrow
loses rank are skipped, and disagreement between the remaining primes is
reported as a :class:`FieldSensitivity` warning.
"""

from __future__ import annotations

import itertools
import random
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

from .errors import (
    BudgetExceeded,
    GenericPointUnstable,
    InconsistentData,
    SummandNotStable,
    ThetaMismatch,
)
from .krull_schmidt import decompose, end_ring
from .linalg import GF, Matrix, PrimeField, char_poly, factor_rational_poly, rank, rank_mod_p
from .quiver import DimVector, Weight, theta_pairing
from .repvar import ComponentDescriptor, components, presentation, sample_generic
from .representation import Representation, hom_dim
from .strings_bands import BandWord, band_module, identify

UNSTABLE = "unstable"
SEMISTABLE = "semistable_not_stable"
STABLE = "stable"

DEFAULT_PRIMES = (2, 3, 5)
DEFAULT_SUBSPACE_BUDGET = 2_000_000


class FieldSensitivity(UserWarning):
    """Stability verdicts differ between prime fields."""


@dataclass(frozen=True)
class StabilityVerdict:
    status: str
    witness: DimVector | None = None
    primes: tuple[int, ...] = ()
    per_prime: tuple[tuple[int, str], ...] = ()
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def semistable(self) -> bool:
        return self.status != UNSTABLE

    @property
    def stable(self) -> bool:
        return self.status == STABLE


# ---------------------------------------------------------------------------
# subspaces and subrepresentations over F_p


def _gaussian_count(d: int, p: int) -> int:
    total = 0
    for k in range(d + 1):
        num = den = 1
        for i in range(k):
            num *= p ** (d - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total


def _encode(v: Sequence[int], p: int) -> int:
    out = 0
    for x in reversed(v):
        out = out * p + x
    return out


@lru_cache(maxsize=64)
def _subspaces(d: int, p: int) -> tuple:
    """All subspaces of ``F_p^d`` as ``(basis, encoded span)`` pairs."""
    out = []
    for k in range(d + 1):
        for pivots in itertools.combinations(range(d), k):
            free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, d) if j not in pivots]
            for vals in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * d for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), x in zip(free, vals):
                    rows[i][j] = x
                span = set()
                for coeffs in itertools.product(range(p), repeat=k):
                    v = [sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(d)]
                    span.add(_encode(v, p))
                out.append((tuple(map(tuple, rows)), frozenset(span)))
    return tuple(out)


def subrep_dim_vectors(m: Representation, budget: int = DEFAULT_SUBSPACE_BUDGET) -> set[DimVector]:
    """Dimension vectors of all subrepresentations of ``m`` over its prime field."""
    return set(_subreps(m, budget))


def _subreps(m: Representation, budget: int) -> dict[DimVector, None]:
    if not isinstance(m.field, PrimeField):
        raise ValueError("subrepresentation enumeration needs a prime field")
    p = m.field.p
    q = m.bq.quiver
    verts = list(q.vertices)
    cost = 1
    for v in verts:
        cost *= _gaussian_count(m.dim[v], p)
    if cost > budget:
        raise BudgetExceeded(f"{cost} vertex-subspace tuples exceed the budget {budget}")
    index = {v: i for i, v in enumerate(verts)}
    checks: list[list] = [[] for _ in verts]
    for a in q.arrows:
        later = max(index[a.tail], index[a.head])
        rows = [list(r) for r in m.mats[a.name].data]
        checks[later].append((a.tail, a.head, rows))
    found: dict[DimVector, None] = {}
    chosen: dict[str, tuple] = {}

    def closed(tail, head, rows) -> bool:
        basis, _ = chosen[tail]
        _, span = chosen[head]
        for u in basis:
            img = [sum(x * y for x, y in zip(row, u)) % p for row in rows]
            if _encode(img, p) not in span:
                return False
        return True

    def rec(i: int):
        if i == len(verts):
            dv = DimVector({v: len(chosen[v][0]) for v in verts})
            found.setdefault(dv, None)
            return
        v = verts[i]
        for sub in _subspaces(m.dim[v], p):
            chosen[v] = sub
            if all(closed(t, h, rows) for t, h, rows in checks[i]):
                rec(i + 1)
        del chosen[v]

    rec(0)
    return found


def _verdict_from(dims: Sequence[DimVector], total: DimVector, theta) -> tuple[str, DimVector | None]:
    vals = [(theta_pairing(theta, d), d) for d in dims]
    worst = max(vals, key=lambda t: (t[0], -t[1].total()), default=None)
    if worst is not None and worst[0] > 0:
        pos = [d for t, d in vals if t == worst[0]]
        return UNSTABLE, min(pos, key=lambda d: (d.total(), sorted(d.entries.items())))
    zero = [d for t, d in vals if t == 0 and d.total() and d != total]
    if zero:
        return SEMISTABLE, min(zero, key=lambda d: (d.total(), sorted(d.entries.items())))
    return STABLE, None


def reduce_mod(m: Representation, p: int) -> Representation | None:
    """Integral model of ``m`` reduced mod ``p``, or None if some arrow loses rank.

    Each arrow's matrix is scaled by the lcm of its denominators, which does
    not change the subrepresentations.
    """
    f = GF(p)
    mats = {}
    for a, mat in m.mats.items():
        den = 1
        for row in mat.data:
            for x in row:
                den = lcm(den, Fraction(x).denominator)
        ints = [[int(Fraction(x) * den) for x in row] for row in mat.data]
        if mat.rows and mat.cols and rank_mod_p([r[:] for r in ints], p) != rank(mat):
            return None
        mats[a] = Matrix(ints, f, mat.cols)
    return Representation(m.bq, m.dim, mats, f)


def _as_weight(theta) -> Weight:
    return theta if isinstance(theta, Weight) else Weight(theta)


def check_stability(m: Representation, theta, primes: Sequence[int] = DEFAULT_PRIMES,
                    budget: int = DEFAULT_SUBSPACE_BUDGET) -> StabilityVerdict:
    """King's criterion by exhaustive subrepresentation enumeration."""
    theta = _as_weight(theta)
    td = theta_pairing(theta, m.dim)
    if td > 0:
        return StabilityVerdict(UNSTABLE, m.dim)
    if td < 0:
        raise ThetaMismatch(f"theta(dim M) = {td} < 0: no semistable points")
    if isinstance(m.field, PrimeField):
        status, wit = _verdict_from(list(_subreps(m, budget)), m.dim, theta)
        p = m.field.p
        return StabilityVerdict(status, wit, (p,), ((p, status),))
    results = []
    for p in primes:
        red = reduce_mod(m, p)
        if red is None:
            continue
        results.append((p, *_verdict_from(list(_subreps(red, budget)), m.dim, theta)))
    if not results:
        for p in (7, 11, 13):
            red = reduce_mod(m, p)
            if red is not None:
                results.append((p, *_verdict_from(list(_subreps(red, budget)), m.dim, theta)))
                break
    if not results:
        raise InconsistentData("every tried prime reduces some arrow's rank")
    notes = []
    counts = Counter(s for _, s, _ in results)
    top = max(counts.values())
    chosen = max(p for p, s, _ in results if counts[s] == top)
    status, witness = next((s, w) for p, s, w in results if p == chosen)
    if len(counts) > 1:
        msg = "verdicts differ across primes: " + ", ".join(f"F{p}:{s}" for p, s, _ in results)
        warnings.warn(msg, FieldSensitivity, stacklevel=2)
        notes.append(msg)
    if status == STABLE:
        e = end_ring(m).dimension
        if e != 1:
            notes.append(f"stable verdict but End has dimension {e}")
    return StabilityVerdict(
        status, witness, tuple(p for p, _, _ in results), tuple((p, s) for p, s, _ in results), tuple(notes)
    )


# ---------------------------------------------------------------------------
# theta-stable decomposition and moduli


BAND_FAMILY = "band_family"
ORBIT_CLOSURE = "orbit_closure"


@dataclass(frozen=True)
class Factor:
    kind: str
    label: str
    dim: DimVector
    multiplicity: int

    def text(self) -> str:
        tag = "band family" if self.kind == BAND_FAMILY else "orbit closure"
        return f"{self.multiplicity} x {tag} {self.label} dim={_dim_text(self.dim)}"


def _dim_text(d: DimVector) -> str:
    return "(" + ",".join(f"{v}:{x}" for v, x in d.entries.items()) + ")"


@dataclass(frozen=True)
class ThetaStableDecomposition:
    component: ComponentDescriptor
    theta: Weight
    factors: tuple[Factor, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class ModuliStructure:
    exponents: tuple[int, ...] = ()
    computed: bool = True
    reason: str = ""

    @property
    def dimension(self) -> int:
        return sum(self.exponents)

    def text(self) -> str:
        if not self.computed:
            return f"not computed ({self.reason})"
        if not self.exponents:
            return "point"
        return " x ".join(f"P^{m}" for m in self.exponents)

    def __str__(self) -> str:
        return self.text()


def _band_pieces(param: Matrix) -> int:
    """Geometric band summands encoded by a rational parameter matrix."""
    facs = factor_rational_poly(char_poly(param))
    if any(mult > 1 for _, mult in facs):
        return 0
    return sum(len(f) - 1 for f, _ in facs)


def theta_stable_decomposition(c: ComponentDescriptor, theta, seed=0,
                               primes: Sequence[int] = DEFAULT_PRIMES) -> ThetaStableDecomposition:
    theta = _as_weight(theta)
    td = theta_pairing(theta, c.dim)
    if td != 0:
        raise ThetaMismatch(f"theta(d) = {td}, must vanish")
    alg = c.algebra
    support = c.dim.support()
    if all(theta[v] == 0 for v in support):
        # trivial character: polystable points are semisimple
        factors = tuple(
            Factor(ORBIT_CLOSURE, f"@{v}", DimVector({u: int(u == v) for u in alg.vertices}), c.dim[v])
            for v in support
        )
        return ThetaStableDecomposition(c, theta, factors, ("theta vanishes on the support: semisimple",))
    rng = random.Random(seed)
    m = sample_generic(c, rng)
    summands = decompose(m, rng)
    bands: dict[str, list] = {}
    orbits: dict[str, list] = {}
    for s in summands:
        td = theta_pairing(theta, s.rep.dim)
        if td != 0:
            raise GenericPointUnstable(f"summand of dimension {_dim_text(s.rep.dim)} has theta value {td}")
        ident = identify(s.rep)
        if ident.kind == "band":
            pieces = _band_pieces(ident.parameter)
            if pieces == 0:
                raise SummandNotStable(f"band summand {ident.word} has a repeated parameter")
            word = BandWord.parse(alg, ident.word)
            entry = bands.setdefault(ident.word, [word, 0])
            entry[1] += pieces * s.multiplicity
        else:
            entry = orbits.setdefault(ident.word, [s.rep, 0])
            entry[1] += s.multiplicity
    factors = []
    reps = []
    lam = [Fraction(rng.randint(2, 9)), Fraction(-rng.randint(2, 9))]
    for label, (word, mult) in sorted(bands.items()):
        for x in lam:
            v = check_stability(band_module(word, x), theta, primes)
            if v.status == UNSTABLE:
                raise GenericPointUnstable(f"band family {label} is unstable (witness {_dim_text(v.witness)})")
            if v.status != STABLE:
                raise SummandNotStable(f"band family {label} is not stable at lambda={x}")
        factors.append(Factor(BAND_FAMILY, label, word.dim_vector(), mult))
        reps.append(band_module(word, lam[0]))
        if mult > 1 and hom_dim(band_module(word, lam[0]), band_module(word, lam[1])):
            raise InconsistentData(f"band family {label}: distinct parameters have morphisms")
    for label, (rep, mult) in sorted(orbits.items()):
        v = check_stability(rep, theta, primes)
        if v.status == UNSTABLE:
            raise GenericPointUnstable(f"summand {label} is unstable (witness {_dim_text(v.witness)})")
        if v.status != STABLE:
            raise SummandNotStable(f"summand {label} is semistable but not stable")
        factors.append(Factor(ORBIT_CLOSURE, label, rep.dim, mult))
        reps.append(rep)
    for i, x in enumerate(reps):
        for j, y in enumerate(reps):
            if i != j and hom_dim(x, y):
                raise InconsistentData(f"factors {factors[i].label} and {factors[j].label} have morphisms")
    total = None
    for f in factors:
        d = f.dim.scaled(f.multiplicity)
        total = d if total is None else total + d
    if total != c.dim:
        raise InconsistentData("factor dimensions do not add up to d")
    return ThetaStableDecomposition(c, theta, tuple(factors))


def moduli_of(dec: ThetaStableDecomposition) -> ModuliStructure:
    """Orbit-closure factors contribute a point; a band family of multiplicity m contributes P^m."""
    exps = sorted((f.multiplicity for f in dec.factors if f.kind == BAND_FAMILY), reverse=True)
    return ModuliStructure(tuple(exps))


def moduli_structure(algebra, d, theta, seed=0, zero: Sequence[str] = (),
                     primes: Sequence[int] = DEFAULT_PRIMES) -> list[tuple[ComponentDescriptor, ModuliStructure, ThetaStableDecomposition | None]]:
    """Per component of ``rep(A, d)``: the moduli structure of its semistable locus."""
    pres = presentation(algebra, zero)
    dim = d if isinstance(d, DimVector) else DimVector(d)
    theta = _as_weight(theta)
    td = theta_pairing(theta, dim)
    if td != 0:
        raise ThetaMismatch(f"theta(d) = {td}, must vanish")
    out = []
    for i, c in enumerate(components(pres, dim)):
        try:
            dec = theta_stable_decomposition(c, theta, seed * 1000 + i, primes)
        except GenericPointUnstable:
            out.append((c, ModuliStructure((), False, "generic point unstable"), None))
            continue
        out.append((c, moduli_of(dec), dec))
    return out
