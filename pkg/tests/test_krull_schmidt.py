import random

from hypothesis import given, settings
from hypothesis import strategies as st

from biserial import catalog, circular
from biserial.krull_schmidt import (
    check_summands,
    conjugate,
    decompose,
    end_ring,
    find_isomorphism,
    is_indecomposable,
    is_isomorphic,
    reassemble,
)
from biserial.representation import Representation, direct_sum
from biserial.strings_bands import enumerate_bands, enumerate_strings, band_module, string_module

K = catalog.kronecker()


def band(lam):
    return Representation(K, {"1": 1, "2": 1}, {"a": [[1]], "b": [[lam]]})


def test_end_ring_examples():
    assert end_ring(Representation.simple(K, "1")).dimension == 1
    assert end_ring(band(3)).dimension == 1
    assert end_ring(direct_sum([band(3), band(3)])).dimension == 4


def test_decompose_semisimple():
    c2 = catalog.cyclic(2)
    summands = decompose(Representation.zero(c2, {"0": 2, "1": 1}))
    got = sorted((tuple(s.rep.dim.entries.values()), s.multiplicity) for s in summands)
    assert got == [((0, 1), 1), ((1, 0), 2)]


def test_decompose_generic_kronecker_pencil():
    m = Representation(K, {"1": 2, "2": 2}, {"a": [[1, 0], [0, 1]], "b": [[2, 0], [0, 5]]})
    summands = decompose(conjugate(m, 4))
    assert len(summands) == 2
    assert all(s.rep.dim.entries == {"1": 1, "2": 1} and s.multiplicity == 1 for s in summands)


def test_irrational_pencil_is_one_summand_of_degree_two():
    # b = companion of x^2 - 2: indecomposable over Q, two bands over Q-bar
    m = Representation(K, {"1": 2, "2": 2}, {"a": [[1, 0], [0, 1]], "b": [[0, 2], [1, 0]]})
    (s,) = decompose(m)
    assert s.degree == 2 and s.multiplicity == 1 and s.geometric_multiplicity == 2
    assert is_indecomposable(m).degree == 2


def test_indecomposability_certificates():
    s1 = Representation.simple(K, "1")
    assert is_indecomposable(s1)
    cert = is_indecomposable(direct_sum([s1, s1]))
    assert not cert and cert.witness is not None
    assert is_indecomposable(band(7))


def test_isomorphism_examples():
    m = band(2)
    assert is_isomorphic(m, m)
    assert not is_isomorphic(band(2), band(3))
    e01 = circular.build_M0((1, 1), (1, 0))
    c2 = e01.bq
    assert not is_isomorphic(e01, direct_sum([Representation.simple(c2, "0"), Representation.simple(c2, "1")]))


def test_find_isomorphism_intertwines():
    m = band(4)
    n = conjugate(m, 9)
    phi = find_isomorphism(m, n)
    assert phi is not None
    for a in K.arrows:
        t, h = K.quiver.tail(a), K.quiver.head(a)
        assert phi[h] @ m.mats[a] == n.mats[a] @ phi[t]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 100_000))
def test_decompose_reassembles(seed):
    rng = random.Random(seed)
    bq = rng.choice([catalog.kronecker(), catalog.cyclic(2), catalog.double_loop(), catalog.linear(3, "none")])
    pieces = [string_module(w) for w in enumerate_strings(bq, 3)]
    pieces += [band_module(b, rng.choice([1, 2, -3])) for b in enumerate_bands(bq, 2)]
    chosen = [rng.choice(pieces) for _ in range(rng.randint(1, 3))]
    m = conjugate(direct_sum(chosen), seed)
    summands = decompose(m, seed)
    check_summands(m, summands)
    assert sum(s.multiplicity for s in summands) == len(chosen)
    assert is_isomorphic(reassemble(summands), m)
