"""Exact dense linear algebra over the rationals and prime fields.

Matrices are immutable and row-major.  Rational entries are
:class:`fractions.Fraction`; prime-field entries are plain ``int`` in
``[0, p)``.  All elimination routines go through the field object so the
same code serves both cases, with a fraction-free (Bareiss) path for rank
and determinant over the rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

from sympy import QQ as SQQ
from sympy.polys.matrices import DomainMatrix

from .errors import NoSolution, ShapeMismatch

Vector = tuple


class RationalField:
    name = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        return a / b

    def inv(self, a):
        return 1 / a

    def to_str(self, a) -> str:
        return str(a)

    def __repr__(self) -> str:
        return "QQ"

    def __reduce__(self):
        return (_rational_field, ())


class PrimeField:
    characteristic: int

    def __init__(self, p: int):
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1

    def __call__(self, x) -> int:
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def inv(self, a):
        return pow(a, -1, self.p)

    def to_str(self, a) -> str:
        return str(a)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))


def _rational_field():
    return QQ


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str):
    """``"Q"`` -> QQ, ``"F5"`` -> GF(5)."""
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        return GF(int(name[1:]))
    raise ValueError(f"unknown field {name!r}")


class Matrix:
    """Immutable dense matrix over ``QQ`` or a prime field."""

    __slots__ = ("rows", "cols", "data", "field")

    def __init__(self, data: Iterable[Iterable], field=QQ, cols: int | None = None):
        rows = tuple(tuple(field(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ShapeMismatch("ragged matrix rows")
        object.__setattr__(self, "data", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "field", field)

    def __setattr__(self, key, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int, field) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "data", data)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "field", field)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ) -> "Matrix":
        z = field.zero
        return cls._raw(tuple((z,) * cols for _ in range(rows)), rows, cols, field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Matrix":
        return cls.scalar(n, field.one, field)

    @classmethod
    def scalar(cls, n: int, value, field=QQ) -> "Matrix":
        z = field.zero
        value = field(value)
        return cls._raw(
            tuple(tuple(value if i == j else z for j in range(n)) for i in range(n)),
            n, n, field,
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int, field=QQ) -> "Matrix":
        if not columns:
            return cls.zeros(nrows, 0, field)
        return cls([[c[i] for c in columns] for i in range(nrows)], field, cols=len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(self.field.to_str(x) for x in r) + "]" for r in self.data)
        return f"Matrix({self.rows}x{self.cols}, {self.field!r}, [{body}])"

    def _check_same(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        f = self.field
        return Matrix._raw(
            tuple(tuple(f.add(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.rows, self.cols, f,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        f = self.field
        return Matrix._raw(
            tuple(tuple(f.sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.rows, self.cols, f,
        )

    def __neg__(self) -> "Matrix":
        f = self.field
        return Matrix._raw(tuple(tuple(f.neg(a) for a in r) for r in self.data), self.rows, self.cols, f)

    def scale(self, c) -> "Matrix":
        f = self.field
        c = f(c)
        return Matrix._raw(tuple(tuple(f.mul(c, a) for a in r) for r in self.data), self.rows, self.cols, f)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        cols = list(zip(*other.data)) if other.rows else [()] * other.cols
        if f is QQ:
            data = tuple(
                tuple(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols) for r in self.data
            )
        else:
            p = f.p
            data = tuple(tuple(sum(a * b for a, b in zip(r, c)) % p for c in cols) for r in self.data)
        return Matrix._raw(data, self.rows, other.cols, f)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ShapeMismatch("vector length mismatch")
        f = self.field
        if f is QQ:
            return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.data)
        return tuple(sum(a * b for a, b in zip(r, v)) % f.p for r in self.data)

    @property
    def T(self) -> "Matrix":
        if self.rows == 0:
            return Matrix.zeros(self.cols, 0, self.field)
        return Matrix._raw(tuple(zip(*self.data)), self.cols, self.rows, self.field)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(a == z for r in self.data for a in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(self.data[i][j] for j in cols) for i in rows), len(rows), len(cols), self.field
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ShapeMismatch("hstack row mismatch")
        return Matrix._raw(
            tuple(r + s for r, s in zip(self.data, other.data)), self.rows, self.cols + other.cols, self.field
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ShapeMismatch("vstack column mismatch")
        return Matrix._raw(self.data + other.data, self.rows + other.rows, self.cols, self.field)

    def to_field(self, field) -> "Matrix":
        """Reduce (or coerce) every entry into ``field``."""
        return Matrix(self.data, field, cols=self.cols)

    def to_json(self) -> list[list[str]]:
        return [[self.field.to_str(a) for a in r] for r in self.data]

    @classmethod
    def from_json(cls, rows: list, field=QQ, shape: tuple[int, int] | None = None) -> "Matrix":
        if shape is not None and not rows:
            return cls.zeros(shape[0], shape[1], field)
        m = cls(rows, field)
        if shape is not None and m.shape != shape:
            if m.rows == 0 and shape[0] == 0:
                return cls.zeros(0, shape[1], field)
            raise ShapeMismatch(f"expected shape {shape}, got {m.shape}")
        return m

    # thin wrappers so call sites read naturally
    def rank(self) -> int:
        return rank(self)

    def det(self):
        return det(self)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def nullspace(self) -> list[tuple]:
        return nullspace(self)


def block_diag(blocks: Sequence[Matrix], field=QQ) -> Matrix:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    z = field.zero
    out = [[z] * m for _ in range(n)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            out[r0 + i][c0:c0 + b.cols] = b.data[i]
        r0 += b.rows
        c0 += b.cols
    return Matrix._raw(tuple(map(tuple, out)), n, m, field)


# -- elimination ---------------------------------------------------------


def _rref_domain(m: Matrix) -> tuple[list[list], list[int]]:
    # sympy's DomainMatrix runs on gmpy rationals when available
    dm = DomainMatrix([[SQQ(x.numerator, x.denominator) for x in row] for row in m.data], m.shape, SQQ)
    red, pivots = dm.rref()
    rows = [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in red.to_list()]
    return rows, list(pivots)


def rref(m: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form via Gauss-Jordan; returns (rows, pivot columns)."""
    f = m.field
    if f is QQ and m.rows * m.cols >= 64:
        return _rref_domain(m)
    a = [list(r) for r in m.data]
    pivots: list[int] = []
    r = 0
    z = f.zero
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != z), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(inv, x) if x != z else z for x in a[r]]
        support = [(j, y) for j, y in enumerate(a[r]) if y != z]
        for i in range(m.rows):
            if i != r and a[i][c] != z:
                factor = a[i][c]
                row = a[i]
                for j, y in support:
                    row[j] = f.sub(row[j], f.mul(factor, y))
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def _integer_rows(m: Matrix) -> list[list[int]]:
    out = []
    for row in m.data:
        den = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def _bareiss(a: list[list[int]], ncols: int) -> tuple[int, int]:
    """In-place fraction-free elimination. Returns (rank, sign-adjusted last pivot)."""
    nrows = len(a)
    prev = 1
    r = 0
    sign = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
            sign = -sign
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == nrows:
            break
    return r, sign * prev


def rank(m: Matrix) -> int:
    """Exact rank; fraction-free over QQ, modular elimination over F_p."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field is QQ:
        r, _ = _bareiss(_integer_rows(m), m.cols)
        return r
    return rank_mod_p([list(r) for r in m.data], m.field.p)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank of an integer matrix reduced mod ``p``; destroys ``rows``."""
    a = rows
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        pr = [x * inv % p for x in a[r]]
        a[r] = pr
        for i in range(r + 1, nrows):
            x = a[i][c] % p
            if x:
                a[i] = [(u - x * v) % p for u, v in zip(a[i], pr)]
        r += 1
        if r == nrows:
            break
    return r


def det(m: Matrix):
    if not m.is_square():
        raise ShapeMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return m.field.one
    if m.field is QQ:
        dens = [lcm(*(x.denominator for x in row)) for row in m.data]
        a = [[int(x * d) for x in row] for row, d in zip(m.data, dens)]
        r, last = _bareiss(a, n)
        if r < n:
            return Fraction(0)
        scale = 1
        for d in dens:
            scale *= d
        return Fraction(last, scale)
    f = m.field
    a = [list(r) for r in m.data]
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c] % f.p
        inv = f.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c]:
                x = a[i][c] * inv % f.p
                a[i] = [(u - x * v) % f.p for u, v in zip(a[i], a[c])]
    return d % f.p


def nullspace(m: Matrix) -> list[tuple]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    f = m.field
    a, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [f.zero] * m.cols
        v[free] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(a[i][free])
        basis.append(tuple(v))
    return basis


def solve_linear_system(coeffs: Matrix, rhs: Sequence) -> tuple[tuple, list[tuple]]:
    """Return one solution of ``coeffs x = rhs`` and a kernel basis.

    Free variables are set to zero in the particular solution.  Raises
    :class:`NoSolution` on inconsistent systems.
    """
    f = coeffs.field
    if len(rhs) != coeffs.rows:
        raise ShapeMismatch("right-hand side length mismatch")
    aug = Matrix._raw(
        tuple(r + (f(b),) for r, b in zip(coeffs.data, rhs)), coeffs.rows, coeffs.cols + 1, f
    )
    a, pivots = rref(aug)
    if coeffs.cols in pivots:
        raise NoSolution("inconsistent linear system")
    x = [f.zero] * coeffs.cols
    for i, pc in enumerate(pivots):
        x[pc] = a[i][coeffs.cols]
    return tuple(x), nullspace(coeffs)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ShapeMismatch("inverse of a non-square matrix")
    n = m.rows
    aug = m.hstack(Matrix.identity(n, m.field))
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NoSolution("matrix is singular")
    return Matrix._raw(tuple(tuple(r[n:]) for r in a), n, n, m.field)


def column_space(m: Matrix) -> list[tuple]:
    """Basis (pivot columns of ``m``) of the image."""
    _, pivots = rref(m)
    return [m.column(j) for j in pivots]


def complement_basis(subspace: Sequence[Sequence], dim: int, field=QQ) -> list[tuple]:
    """Standard basis vectors completing ``subspace`` to a basis of the ambient space."""
    cols = list(subspace) + [tuple(field.one if i == j else field.zero for i in range(dim)) for j in range(dim)]
    mat = Matrix.from_columns(cols, dim, field)
    _, pivots = rref(mat)
    k = len(subspace)
    return [cols[j] for j in pivots if j >= k]


# -- polynomials and characteristic polynomials ---------------------------


def char_poly(m: Matrix) -> tuple:
    """Characteristic polynomial det(xI - m), coefficients low degree first."""
    if not m.is_square():
        raise ShapeMismatch("characteristic polynomial of a non-square matrix")
    if m.field is not QQ:
        raise ValueError("char_poly is implemented over QQ only")
    n = m.rows
    if n == 0:
        return (Fraction(1),)
    dm = DomainMatrix([[SQQ(x.numerator, x.denominator) for x in row] for row in m.data], (n, n), SQQ)
    return tuple(Fraction(int(c.numerator), int(c.denominator)) for c in reversed(dm.charpoly()))


def poly_of_matrix(coeffs: Sequence, m: Matrix) -> Matrix:
    """Evaluate a polynomial (low degree first) at a square matrix by Horner."""
    n = m.rows
    out = Matrix.zeros(n, n, m.field)
    for c in reversed(coeffs):
        out = out @ m + Matrix.scalar(n, c, m.field)
    return out


def poly_mul(a: Sequence, b: Sequence) -> tuple:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def poly_pow(a: Sequence, e: int) -> tuple:
    out: tuple = (Fraction(1),)
    for _ in range(e):
        out = poly_mul(out, a)
    return out


def poly_str(coeffs: Sequence, var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and c == 1:
            t = mono
        elif mono and c == -1:
            t = "-" + mono
        else:
            t = f"{c}{'*' + mono if mono else ''}"
        terms.append(t)
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def factor_rational_poly(coeffs: Sequence) -> list[tuple[tuple, int]]:
    """Factor a monic rational polynomial into monic irreducibles with multiplicity."""
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for fac, mult in factors:
        fc = fac.all_coeffs()
        lead = fc[0]
        monic = tuple(Fraction(int(sympy.fraction(c / lead)[0]), int(sympy.fraction(c / lead)[1])) for c in reversed(fc))
        out.append((monic, int(mult)))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


@dataclass(frozen=True)
class FactorBlock:
    """One irreducible factor of a characteristic polynomial and its generalized kernel."""

    factor: tuple
    multiplicity: int
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)


def char_poly_factor_split(m: Matrix) -> list[FactorBlock]:
    """Split the space into the generalized kernels ``ker f(m)^mult`` over QQ."""
    if m.field is not QQ:
        raise ValueError("factor splitting is implemented over QQ only")
    if m.rows == 0:
        return []
    blocks = []
    for fac, mult in factor_rational_poly(char_poly(m)):
        g = poly_of_matrix(poly_pow(fac, mult), m)
        blocks.append(FactorBlock(fac, mult, tuple(nullspace(g))))
    return blocks


def random_invertible(n: int, seed, field=QQ, low: int = -3, high: int = 3) -> Matrix:
    """Random invertible ``n x n`` matrix with entries in ``[low, high]``.

    Deterministic per ``seed``; singular draws are rejected.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    while True:
        m = Matrix([[rng.randint(low, high) for _ in range(n)] for _ in range(n)], field, cols=n)
        if n == 0 or rank(m) == n:
            return m
