import json

import pytest
from hypothesis import given, strategies as st

from hyperhitchin import LieAlgebraSpec, check_degree_identity, invariant_data
from hyperhitchin.errors import InputError, InvalidRank, UnsupportedSeries


@pytest.mark.parametrize(
    "series,rank,degrees,dim,n",
    [
        ("A", 1, (2,), 3, 2),
        ("A", 2, (2, 3), 8, 3),
        ("C", 2, (2, 4), 10, 4),
        ("B", 2, (2, 4), 10, 5),
        ("B", 3, (2, 4, 6), 21, 7),
    ],
)
def test_invariant_table(series, rank, degrees, dim, n):
    data = invariant_data(LieAlgebraSpec(series, rank))
    assert data.degrees == degrees
    assert data.dim_g == dim
    assert data.n_standard == n


@pytest.mark.parametrize("series,rank,total", [("A", 1, 3), ("B", 3, 21), ("C", 4, 36)])
def test_degree_identity_examples(series, rank, total):
    spec = LieAlgebraSpec(series, rank)
    assert sum(2 * d - 1 for d in spec.degrees) == total
    assert check_degree_identity(spec)


@given(st.sampled_from("ABC"), st.integers(1, 10))
def test_degree_identity_and_ordering(series, rank):
    spec = LieAlgebraSpec(series, rank)
    d = spec.degrees
    assert check_degree_identity(spec)
    assert len(d) == rank
    assert all(a < b for a, b in zip(d, d[1:]))
    assert min(d) >= 2


def test_c1_is_a1():
    spec = LieAlgebraSpec("C", 1)
    assert spec == LieAlgebraSpec("A", 1)
    assert spec.degrees == (2,)


def test_lowercase_series():
    assert LieAlgebraSpec("b", 2).series == "B"


@pytest.mark.parametrize("series", ["D", "E", "G", "F", "X"])
def test_unsupported_series(series):
    with pytest.raises(UnsupportedSeries):
        LieAlgebraSpec(series, 2)


@pytest.mark.parametrize("rank", [0, -3, 1.5, True])
def test_invalid_rank(rank):
    with pytest.raises(InvalidRank):
        LieAlgebraSpec("A", rank)


def test_errors_are_input_errors():
    assert issubclass(InvalidRank, InputError)
    assert issubclass(UnsupportedSeries, ValueError)


def test_json_round_trip():
    spec = LieAlgebraSpec("C", 3)
    text = json.dumps(spec.to_json())
    assert json.loads(text) == {"series": "C", "rank": 3}
    assert LieAlgebraSpec.from_json(json.loads(text)) == spec
