import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biserial import catalog, circular
from biserial.errors import InvalidWord, Unidentified
from biserial.krull_schmidt import conjugate, end_ring, is_indecomposable
from biserial.linalg import Matrix
from biserial.representation import Representation, direct_sum
from biserial.strings_bands import (
    BandWord,
    StringWord,
    band_module,
    enumerate_bands,
    enumerate_strings,
    identify,
    string_module,
)

K = catalog.kronecker()
C2 = catalog.cyclic(2)
DL = catalog.double_loop()


def test_cyclic2_strings_and_bands():
    assert [w.text() for w in enumerate_strings(C2, 4)] == ["@0", "@1", "a0", "a1"]
    assert enumerate_bands(C2, 6) == ()


def test_kronecker_strings_grow_with_dimension():
    words = enumerate_strings(K, 3)
    dims = sorted(tuple(w.dim_vector().entries.values()) for w in words)
    assert dims == [(0, 1), (1, 0), (1, 1), (1, 1), (1, 2), (2, 1)]
    assert enumerate_strings(K, 0) == ()


def test_kronecker_has_one_band():
    (b,) = enumerate_bands(K, 4)
    assert b.text() == "a.b^-1"
    assert b.dim_vector().entries == {"1": 1, "2": 1}


def test_double_loop_bands():
    texts = sorted(b.text() for b in enumerate_bands(DL, 2))
    assert "a.b^-1" in texts
    assert all(b.dim_vector().entries == {"0": 2} for b in enumerate_bands(DL, 2))


def test_string_module_examples():
    assert string_module(StringWord.parse(C2, "@1")).same_data(Representation.simple(C2, "1"))
    assert string_module(StringWord.parse(C2, "a0")).same_data(circular.build_M0((1, 1), (1, 0)))
    m = string_module(StringWord.parse(K, "a"))
    assert m.mats["a"] == Matrix([[1]]) and m.mats["b"] == Matrix([[0]])


def test_invalid_words_are_rejected():
    with pytest.raises(InvalidWord):
        StringWord.parse(C2, "a0.a1")
    with pytest.raises(InvalidWord):
        band_module(enumerate_bands(K, 2)[0], 0)


def test_kronecker_band_module():
    m = band_module(BandWord.parse(K, "a.b^-1"), 5)
    assert {m.mats["a"][0, 0], m.mats["b"][0, 0]} == {1, 5}
    assert is_indecomposable(m)


def test_double_loop_band_module():
    b = BandWord.parse(DL, "a.b^-1")
    m = band_module(b, 1)
    assert m.satisfies_relations()
    assert end_ring(m).dimension == 2
    assert is_indecomposable(m)


def test_band_multiplicity_doubles_dimension():
    b = BandWord.parse(K, "a.b^-1")
    m = band_module(b, 3, 2)
    assert m.dim.entries == {"1": 2, "2": 2}
    assert end_ring(m).dimension == 2
    assert is_indecomposable(m)


def test_identify_examples():
    j = conjugate(circular.build_M0((2,), (1,)), 5)
    assert identify(j).text() == "string a0"
    generic = Representation(K, {"1": 1, "2": 1}, {"a": [[2]], "b": [[6]]})
    ident = identify(generic)
    assert ident.kind == "band" and ident.lam in (3, 1 / 3)
    assert identify(Representation.zero(K, {"1": 0, "2": 1})).text() == "simple 2"


def test_identify_jordan_band():
    b = BandWord.parse(K, "a.b^-1")
    assert identify(conjugate(band_module(b, 2, 2), 1)).text() == "band a.b^-1 lambda=2 mult=2"


def test_identify_rejects_decomposables():
    with pytest.raises(Unidentified):
        identify(direct_sum([Representation.simple(K, "1"), Representation.simple(K, "2")]))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([K, C2, DL, catalog.one_loop(), catalog.linear(4, "alternating")]), st.data())
def test_string_identification_round_trip(bq, data):
    w = data.draw(st.sampled_from(enumerate_strings(bq, 5)))
    m = conjugate(string_module(w), data.draw(st.integers(0, 1000)))
    ident = identify(m)
    if w.letters:
        assert ident.text() == f"string {w.text()}"
    else:
        assert ident.text() == f"simple {w.vertex}"


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([K, DL]), st.integers(-7, 7).filter(bool), st.integers(0, 1000))
def test_band_identification_round_trip(bq, lam, seed):
    b = enumerate_bands(bq, 2)[0]
    ident = identify(conjugate(band_module(b, lam), seed))
    assert ident.kind == "band" and ident.word == b.text() and ident.lam == lam
