import pytest
from hypothesis import given, settings, strategies as st

from kgraphs.catalog import bouquet, omega
from kgraphs.errors import BadColor, DanglingEndpoint, DuplicateId, UnknownVertex
from kgraphs.skeleton import (
    RANGE,
    SOURCE,
    Edge,
    Skeleton,
    deg_join,
    deg_le,
    deg_meet,
    degrees_below,
    edges_at,
    natural_key,
    unit,
    validate_skeleton,
)

from corpus import random_one_graph


def ids(edges):
    return [e.id for e in edges]


def test_bouquet_is_valid():
    assert validate_skeleton(bouquet(2).skeleton).ok


def test_missing_second_colour_is_reported():
    sk = Skeleton(2, ["v"], [Edge("e", 1, "v", "v")])
    report = validate_skeleton(sk)
    assert [(p.kind, p.detail) for p in report.problems] == [("NoSourceAt", ("v", 2))]


@pytest.mark.parametrize("n", range(1, 7))
def test_omega_valid_for_every_size(n):
    assert validate_skeleton(omega(n).skeleton).ok


def test_dangling_endpoint_and_bad_colour():
    with pytest.raises(DanglingEndpoint):
        validate_skeleton(Skeleton(1, ["v"], [Edge("e", 1, "v", "w")]))
    with pytest.raises(BadColor):
        validate_skeleton(Skeleton(1, ["v"], [Edge("e", 2, "v", "v")]))


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateId):
        Skeleton(1, ["v", "v"], [])
    with pytest.raises(DuplicateId):
        Skeleton(1, ["v"], [Edge("e", 1, "v", "v"), Edge("e", 1, "v", "v")])


def test_edges_at_examples():
    assert ids(edges_at(bouquet(2).skeleton, "v", 1, RANGE)) == ["e1", "e2"]
    o3 = omega(3).skeleton
    assert ids(edges_at(o3, "0", 1, RANGE)) == ["a0", "b0", "c0"]
    assert ids(edges_at(o3, "2", 1, SOURCE)) == ["a2", "b2", "c1"]
    with pytest.raises(UnknownVertex):
        edges_at(o3, "9", 1)


def test_natural_key_orders_numbers_numerically():
    assert sorted(["e10", "e2", "e1"], key=natural_key) == ["e1", "e2", "e10"]


degrees = st.lists(st.integers(0, 4), min_size=3, max_size=3).map(tuple)


@given(degrees, degrees)
def test_join_and_meet_are_bounds(m, n):
    j, w = deg_join(m, n), deg_meet(m, n)
    assert deg_le(m, j) and deg_le(n, j) and deg_le(w, m) and deg_le(w, n)


def test_degrees_below_and_units():
    assert list(degrees_below((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert unit(3, 2) == (0, 1, 0)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_edges_at_partitions_edges(rng):
    sk = random_one_graph(rng).skeleton
    total = len(sk.edges)
    assert sum(len(edges_at(sk, v, 1, RANGE)) for v in sk.vertices) == total
    assert sum(len(edges_at(sk, v, 1, SOURCE)) for v in sk.vertices) == total
    assert all(edges_at(sk, v, 1, RANGE) for v in sk.vertices)
