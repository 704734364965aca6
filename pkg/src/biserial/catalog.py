"""Small named bound quivers used in examples, tests and the CLI."""

from __future__ import annotations

from .quiver import BoundQuiver, Quiver, Relation


def kronecker() -> BoundQuiver:
    q = Quiver.build(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    return BoundQuiver(q, (), name="kronecker")


def cyclic(l: int) -> BoundQuiver:
    """Oriented cycle on ``Z/l`` with every length-two composite zero.

    Arrow ``a{i}`` goes from ``i`` to ``i+1``; for ``l == 1`` this is the
    loop ``a0`` with ``a0*a0 = 0``.
    """
    if l < 1:
        raise ValueError("cycle length must be positive")
    verts = [str(i) for i in range(l)]
    arrows = [(f"a{i}", str(i), str((i + 1) % l)) for i in range(l)]
    rels = tuple(Relation.monomial(f"a{i}", f"a{(i + 1) % l}") for i in range(l))
    return BoundQuiver(Quiver.build(verts, arrows), rels, name=f"cyclic{l}")


def one_loop() -> BoundQuiver:
    q = Quiver.build(["0"], [("a", "0", "0")])
    return BoundQuiver(q, (Relation.monomial("a", "a"),), name="one_loop")


def double_loop() -> BoundQuiver:
    """K<a,b>/(a^2, b^2): one vertex, two loops."""
    q = Quiver.build(["0"], [("a", "0", "0"), ("b", "0", "0")])
    return BoundQuiver(q, (Relation.monomial("a", "a"), Relation.monomial("b", "b")), name="double_loop")


def linear(n: int, relations: str = "none") -> BoundQuiver:
    """Linearly oriented A_n: ``b{i}: i -> i+1``.

    ``relations`` is ``"none"``, ``"all"`` (every composite zero) or
    ``"alternating"`` (``b{i+1}*b{i}`` zero for even ``i``).
    """
    verts = [str(i) for i in range(1, n + 1)]
    arrows = [(f"b{i}", str(i), str(i + 1)) for i in range(1, n)]
    rels = []
    for i in range(1, n - 1):
        if relations == "all" or (relations == "alternating" and i % 2 == 1):
            rels.append(Relation.monomial(f"b{i}", f"b{i + 1}"))
        elif relations not in ("none", "all", "alternating"):
            raise ValueError(f"unknown relation pattern {relations!r}")
    return BoundQuiver(Quiver.build(verts, arrows), tuple(rels), name=f"A{n}_{relations}")


def star3() -> BoundQuiver:
    q = Quiver.build(["0", "1", "2", "3"], [("a", "0", "1"), ("b", "0", "2"), ("c", "0", "3")])
    return BoundQuiver(q, (), name="star3")


def corpus() -> list[BoundQuiver]:
    """Gentle inputs exercised by the completion checks."""
    out = [one_loop(), kronecker()]
    out += [cyclic(l) for l in range(1, 5)]
    for n in range(1, 5):
        for pattern in ("none", "alternating", "all"):
            bq = linear(n, pattern)
            if bq not in out:
                out.append(bq)
    return out
