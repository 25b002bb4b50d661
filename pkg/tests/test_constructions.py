import random

import pytest
from hypothesis import given, settings, strategies as st

from kgraphs.aperiodicity import APERIODIC, UNKNOWN, aperiodic_status, condition_L, find_quartet
from kgraphs.catalog import bouquet, f_theta, gamma_ex1, gamma_labels, omega
from kgraphs.constructions import (
    GroupSpec,
    cartesian_product,
    pair_id,
    product_form_probe,
    skew_labels,
    skew_product,
    validate_functor,
)
from kgraphs.errors import InconsistentSquare
from kgraphs.io import emit_kg
from kgraphs.skeleton import validate_skeleton

from corpus import isomorphic_1skeleton, random_one_graph

Z3 = GroupSpec((3, 3))


class TestGroupSpec:
    def test_parse_and_arithmetic(self):
        g = GroupSpec.parse("Z3xZ3")
        assert g.moduli == (3, 3) and str(g) == "Z3xZ3"
        assert g.add((2, 1), (2, 2)) == (1, 0)
        assert len(g.elements()) == 9 and g.zero == (0, 0)
        assert GroupSpec.parse("trivial").elements() == [()]

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            GroupSpec.parse("Z3*Z3")
        with pytest.raises(ValueError):
            GroupSpec((0,))


class TestCartesian:
    def test_omega2_counts(self):
        kg = cartesian_product(omega(2), omega(2))
        assert len(kg.vertices) == 4
        assert len(kg.skeleton.edges_of_color(1)) == 10
        assert len(kg.skeleton.edges_of_color(2)) == 10
        assert len(kg.rules) == 25

    def test_bouquets_give_identity_theta(self):
        prod = cartesian_product(bouquet(2), bouquet(3))
        expected = f_theta(2, 3)
        rename = {pair_id(f"e{i}", "v"): f"f{i}" for i in (1, 2)}
        rename.update({pair_id("v", f"e{j}"): f"g{j}" for j in (1, 2, 3)})
        got = {(tuple(rename[x] for x in sq.lhs), tuple(rename[x] for x in sq.rhs)) for sq in prod.rules}
        assert got == {(sq.lhs, sq.rhs) for sq in expected.rules}

    @settings(max_examples=25, deadline=None)
    @given(st.randoms(use_true_random=False))
    def test_products_stay_valid(self, rng):
        a = random_one_graph(rng, 3, 5)
        b = random_one_graph(rng, 3, 5)
        prod = cartesian_product(a, b)
        assert prod.validated and validate_skeleton(prod.skeleton).ok
        assert len(prod.vertices) == len(a.vertices) * len(b.vertices)


class TestFunctor:
    def test_gamma_labels_valid(self):
        assert validate_functor(gamma_ex1(), gamma_labels(), Z3).ok
        assert validate_functor(gamma_ex1(), {}, GroupSpec((5,))).ok

    def test_inconsistent(self):
        report = validate_functor(gamma_ex1(), {"f1": (1, 0)}, Z3)
        assert "InconsistentSquare" in report.kinds()
        with pytest.raises(InconsistentSquare):
            skew_product(gamma_ex1(), {"f1": (1, 0)}, Z3)

    def test_unknown_edge(self):
        assert "UnknownEdge" in validate_functor(gamma_ex1(), {"zz": (1, 0)}, Z3).kinds()


class TestSkew:
    def test_counts(self):
        kg = skew_product(gamma_ex1(), gamma_labels(), Z3)
        assert len(kg.vertices) == 9
        assert len(kg.skeleton.edges_of_color(1)) == 27
        assert len(kg.skeleton.edges_of_color(2)) == 27
        assert len(kg.rules) == 81

    def test_trivial_group_is_isomorphic(self):
        kg = skew_product(omega(3), {}, GroupSpec(()))
        assert isomorphic_1skeleton(kg, omega(3))

    def test_quartet_lifts_to_every_vertex(self):
        kg = skew_product(gamma_ex1(), gamma_labels(), Z3)
        for v in kg.sorted_vertices:
            q = find_quartet(kg, v, 1, 1)
            base = [w[0].split(",")[0].strip("(") for w in q.edges()]
            assert base == ["f1", "f2", "g1", "g2"]

    def test_labels_push_forward(self):
        base = gamma_ex1()
        kg = skew_product(base, gamma_labels(), Z3)
        assert validate_functor(kg, skew_labels(base, gamma_labels(), Z3), Z3).ok

    @settings(max_examples=25, deadline=None)
    @given(st.randoms(use_true_random=False), st.integers(1, 4))
    def test_random_labels_on_one_graphs(self, rng, n):
        kg = random_one_graph(rng, 3, 6)
        group = GroupSpec((n,))
        labels = {e: (rng.randrange(n),) for e in kg.skeleton.edges}
        sk = skew_product(kg, labels, group)
        assert validate_skeleton(sk.skeleton).ok
        assert len(sk.vertices) == n * len(kg.vertices)


def test_product_form_probe_finds_counterexample():
    report = product_form_probe(omega(2), omega(2))
    assert report.total == 6 and report.product_form == 5
    assert report.counterexamples == [frozenset({"(0,1)", "(1,0)", "(1,1)"})]


def test_product_aperiodicity_matches_factors():
    rng = random.Random(11)
    for _ in range(20):
        a, b = random_one_graph(rng, 3, 5), random_one_graph(rng, 3, 5)
        verdict = aperiodic_status(cartesian_product(a, b))
        assert verdict.status != UNKNOWN
        assert (verdict.status == APERIODIC) == (condition_L(a).holds and condition_L(b).holds)


def test_emit_of_product_is_stable():
    assert emit_kg(cartesian_product(omega(2), omega(2))) == emit_kg(cartesian_product(omega(2), omega(2)))
