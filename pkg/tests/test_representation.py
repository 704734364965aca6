import pytest

from biserial import catalog, circular
from biserial.errors import ShapeMismatch
from biserial.linalg import Matrix
from biserial.representation import Representation, direct_sum, hom_dim
from biserial.repvar import (
    ComponentDescriptor,
    check_relations,
    components,
    dim_component,
    generic_hom,
    presentation,
    rank_sequence_of,
    sample_generic,
    sample_on_completion,
)


def test_shape_validation():
    with pytest.raises(ShapeMismatch):
        Representation(catalog.kronecker(), {"1": 1, "2": 1}, {"a": [[1, 2]]})


def test_check_relations_examples():
    c2 = catalog.cyclic(2)
    ok, _ = check_relations(c2, circular.build_M0((2, 2), (1, 1)))
    assert ok
    ok, rel = check_relations(c2, Representation(c2, {"0": 1, "1": 1}, {"a0": [[1]], "a1": [[1]]}))
    assert not ok and rel.text() == "a1*a0"
    assert check_relations(c2, Representation.zero(c2, {"0": 2, "1": 1}))[0]


def test_rank_sequence_examples():
    assert rank_sequence_of(circular.build_M0((2, 2), (1, 0))) == {"a0": 1, "a1": 0}
    assert set(rank_sequence_of(Representation.zero(catalog.kronecker(), {"1": 1, "2": 1})).values()) == {0}


def test_hom_dims():
    k = catalog.kronecker()
    s1, s2 = Representation.simple(k, "1"), Representation.simple(k, "2")
    assert hom_dim(s1, s2) == 0 and hom_dim(s1, s1) == 1
    m = Representation(k, {"1": 1, "2": 1}, {"a": [[1]], "b": [[2]]})
    n = Representation(k, {"1": 1, "2": 1}, {"a": [[1]], "b": [[3]]})
    assert hom_dim(m, n) == 0
    assert hom_dim(direct_sum([m, m]), m) == 2


def test_kronecker_components():
    (c,) = components(catalog.kronecker(), {"1": 1, "2": 1})
    assert c.rank("a") == 1 and c.rank("b") == 1
    assert sum(c.rank_map().values()) == 2
    assert dim_component(c) == 2


def test_cyclic2_components():
    comps = components(catalog.cyclic(2), {"0": 1, "1": 1})
    assert sorted((c.rank("a0"), c.rank("a1")) for c in comps) == [(0, 1), (1, 0)]
    assert all(dim_component(c) == 1 for c in comps)


def test_double_loop_component():
    (c,) = components(catalog.double_loop(), {"0": 2})
    assert c.rank_map() == {"a": 1, "b": 1}
    assert dim_component(c) == 4


def test_zero_component_dimension_and_sample():
    pres = presentation(catalog.kronecker())
    c = ComponentDescriptor(pres, {"1": 1, "2": 2}, tuple((a, 0) for a in pres.completion.arrows))
    assert dim_component(c) == 0
    assert all(m.is_zero() for m in sample_generic(c, 3).mats.values())


@pytest.mark.parametrize(
    "bq, d",
    [
        (catalog.kronecker(), {"1": 2, "2": 2}),
        (catalog.cyclic(2), {"0": 2, "1": 2}),
        (catalog.double_loop(), {"0": 3}),
        (catalog.linear(3, "alternating"), {"1": 1, "2": 2, "3": 1}),
    ],
    ids=["kronecker", "cyclic2", "double_loop", "A3"],
)
def test_generic_samples_realize_the_rank_sequence(bq, d):
    for c in components(bq, d):
        big = sample_on_completion(c, 11)
        assert big.satisfies_relations()
        assert big.rank_sequence() == c.rank_map()
        m = sample_generic(c, 11)
        assert m.bq == bq and m.satisfies_relations()


def test_generic_hom_examples():
    (band,) = components(catalog.kronecker(), {"1": 1, "2": 1})
    assert generic_hom(band, band) == 0
    pres = presentation(catalog.kronecker())
    zero = {a: 0 for a in pres.completion.arrows}
    s1 = ComponentDescriptor(pres, {"1": 1, "2": 0}, tuple(zero.items()))
    s2 = ComponentDescriptor(pres, {"1": 0, "2": 1}, tuple(zero.items()))
    assert generic_hom(s1, s2) == 0
    assert generic_hom(s1, s1) == 1
