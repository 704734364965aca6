import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biserial import catalog, circular
from biserial.errors import BudgetExceeded, InvalidRankSequence
from biserial.krull_schmidt import decompose, is_isomorphic
from biserial.linalg import Matrix, rank
from biserial.oracles import exhaustive_rep_enumeration, rank_profile
from biserial.representation import Representation


def shapes_and_ranks(max_l=3, max_n=3):
    def pick(n):
        ranges = [range(min(n[i], n[(i + 1) % len(n)]) + 1) for i in range(len(n))]
        seqs = [r for r in itertools.product(*ranges) if circular.is_rank_sequence(n, r)]
        return st.sampled_from(seqs).map(lambda r: (n, r))

    return st.lists(st.integers(0, max_n), min_size=1, max_size=max_l).map(tuple).flatmap(pick)


def test_is_rank_sequence_examples():
    assert circular.is_rank_sequence((2, 2), (1, 1))
    assert not circular.is_rank_sequence((2, 2), (2, 1))
    assert not circular.is_rank_sequence((3,), (2,))


def test_maximal_rank_sequences_examples():
    assert circular.maximal_rank_sequences((2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert circular.maximal_rank_sequences((1, 1)) == [(0, 1), (1, 0)]
    assert circular.maximal_rank_sequences((3,)) == [(1,)]


def test_maximal_rank_sequences_with_forced_zero():
    assert circular.maximal_rank_sequences((2, 2), zero=[1]) == [(2, 0)]


def test_dim_comp_examples():
    assert circular.dim_comp((2, 2), (1, 1)) == 4
    assert circular.dim_comp((2,), (1,)) == 2
    assert circular.dim_comp((3, 1, 2), (0, 0, 0)) == 0
    with pytest.raises(InvalidRankSequence):
        circular.dim_comp((2, 2), (2, 1))


def test_build_M0_examples():
    e01 = circular.build_M0((1, 1), (1, 0))
    assert e01.mats["a0"] == Matrix([[1]]) and e01.mats["a1"] == Matrix([[0]])
    assert all(m.is_zero() for m in circular.build_M0((2, 1), (0, 0)).mats.values())
    j = circular.build_M0((2,), (1,)).mats["a0"]
    assert rank(j) == 1
    assert (j @ j).is_zero() and not j.is_zero()


def test_indecomposable_multiplicities_examples():
    assert circular.indecomposable_multiplicities((2, 2), (1, 1)) == ((1, 1), (0, 0))
    assert circular.indecomposable_multiplicities((2, 2), (1, 0)) == ((1, 0), (1, 1))
    assert circular.indecomposable_multiplicities((2, 3), (0, 0)) == ((0, 0), (2, 3))


def test_M0_decomposes_as_predicted():
    m = circular.build_M0((2, 2), (1, 0))
    summands = decompose(m)
    dims = sorted((tuple(s.rep.dim.entries.values()), s.multiplicity) for s in summands)
    assert dims == [((0, 1), 1), ((1, 0), 1), ((1, 1), 1)]


def test_closure_leq_examples():
    assert circular.closure_leq((0, 0), (1, 1))
    assert not circular.closure_leq((1, 0), (0, 1))
    assert not circular.closure_leq((0, 1), (1, 0))
    assert circular.closure_leq((1, 1), (1, 1))


def test_degeneration_with_equal_targets_is_constant():
    n, r = (2, 2), (1, 1)
    for lam in (1, 0, 5):
        assert is_isomorphic(circular.degeneration_path(n, r, r, lam), circular.build_M0(n, r))


def test_count_points_examples():
    assert circular.count_points((2,), (1,), 2) == 4
    assert circular.count_points((1, 1), (1, 0), 3) == 3
    assert circular.count_points((2, 1, 2), (0, 0, 0), 5) == 1


def test_count_points_budget():
    with pytest.raises(BudgetExceeded):
        circular.count_points((3, 3, 3), (1, 1, 1), 5, budget=1000)


def test_count_points_parallel_matches_serial():
    n, r = (2, 2, 2), (1, 1, 0)
    assert circular.count_points(n, r, 3, workers=2) == circular.count_points(n, r, 3, workers=1)


@pytest.mark.parametrize("n", [(1,), (2,), (1, 1), (2, 1), (1, 2, 1), (2, 2)])
def test_count_points_matches_oracle(n):
    l = len(n)
    points = exhaustive_rep_enumeration(catalog.cyclic(l), {str(i): n[i] for i in range(l)}, 2)
    profiles = [tuple(rank_profile(p, 2)[f"a{i}"] for i in range(l)) for p in points]
    ranges = [range(min(n[i], n[(i + 1) % l]) + 1) for i in range(l)]
    for r in itertools.product(*ranges):
        if circular.is_rank_sequence(n, r):
            expected = sum(1 for prof in profiles if circular.leq(prof, r))
            assert circular.count_points(n, r, 2) == expected


@settings(max_examples=80, deadline=None)
@given(shapes_and_ranks())
def test_dimension_identity(nr):
    n, r = nr
    lhs = sum(x * x for x in n) - 2 * circular.dim_comp(n, r)
    assert lhs == sum(k * k for k in circular.defects(n, r))


@settings(max_examples=60, deadline=None)
@given(shapes_and_ranks())
def test_M0_has_the_prescribed_ranks(nr):
    n, r = nr
    m = circular.build_M0(n, r)
    assert m.satisfies_relations()
    assert tuple(m.rank_sequence()[f"a{i}"] for i in range(len(n))) == r


@settings(max_examples=40, deadline=None)
@given(shapes_and_ranks(max_n=2), st.integers(0, 10_000))
def test_degeneration_endpoints(nr, seed):
    import random

    n, r = nr
    lower = [s for s in itertools.product(*[range(x + 1) for x in r]) if circular.is_rank_sequence(n, s)]
    rt = random.Random(seed).choice(lower)
    top = circular.degeneration_path(n, r, rt, 2)
    bottom = circular.degeneration_path(n, r, rt, 0)
    assert top.satisfies_relations() and bottom.satisfies_relations()
    assert tuple(top.rank_sequence()[f"a{i}"] for i in range(len(n))) == r
    assert tuple(bottom.rank_sequence()[f"a{i}"] for i in range(len(n))) == rt
