import random

import pytest
from hypothesis import given, settings, strategies as st

from kgraphs.catalog import bouquet, gamma_ex1, omega
from kgraphs.constructions import cartesian_product
from kgraphs.errors import DegreeOutOfRange, NotComposable, ValidationError
from kgraphs.factorization import (
    KGraph,
    RuleSet,
    compose,
    enumerate_morphisms,
    morphisms_equal,
    normal_form,
    random_word,
    segment,
    validate_cubes,
    validate_rules,
    vertex_at,
)
from kgraphs.skeleton import degrees_below

from corpus import (
    TWO_GRAPHS,
    cube_bad_parts,
    descending_word_count,
    fixtures,
    rewrite_class,
    segment_oracle,
)

FIX = fixtures()


def words(kg, *ws):
    return [kg.morphism(w) for w in ws]


@pytest.fixture(scope="module")
def gamma():
    return gamma_ex1()


class TestRules:
    def test_gamma_rules_valid(self, gamma):
        assert validate_rules(gamma.skeleton, gamma.rules).ok
        assert len(gamma.rules) == 9

    def test_missing_square(self, gamma):
        rules = RuleSet(sq for sq in gamma.rules if sq.lhs != ("f3", "g1"))
        report = validate_rules(gamma.skeleton, rules)
        assert "MissingSquare" in report.kinds()

    def test_non_injective_rules(self, gamma):
        squares = [(("f2", "g1"), ("g1", "f1")), (("f1", "g1"), ("g1", "f1"))]
        squares += [(sq.lhs, sq.rhs) for sq in gamma.rules if sq.lhs not in {("f2", "g1"), ("f1", "g1")}]
        with pytest.raises(ValidationError) as info:
            KGraph(gamma.skeleton, squares, validate=True)
        assert "DuplicateSquare" in info.value.report.kinds()

    def test_endpoint_mismatch(self):
        o = omega(2)
        bad = KGraph(cartesian_product(o, o).skeleton,
                     [(("(a0,0)", "(0,c0)"), ("(0,a0)", "(a1,0)"))])
        with pytest.raises(ValidationError) as info:
            bad.validate()
        assert "EndpointMismatch" in info.value.report.kinds()


class TestCubes:
    def test_two_graphs_vacuous(self, gamma):
        assert validate_cubes(gamma).ok

    def test_triple_product_coherent(self):
        o = omega(2)
        assert validate_cubes(cartesian_product(cartesian_product(o, o), o)).ok

    def test_scrambled_cube_detected(self):
        sk, squares = cube_bad_parts()
        kg = KGraph(sk, squares)
        assert validate_rules(sk, kg.rules).ok
        assert "CubeIncoherent" in validate_cubes(kg).kinds()
        with pytest.raises(ValidationError):
            kg.validate()


class TestNormalForm:
    def test_defining_relations(self, gamma):
        assert normal_form(gamma, gamma.morphism(["g1", "f2"])).word == ("f1", "g1")
        assert normal_form(gamma, gamma.morphism(["g2", "f3"])).word == ("f3", "g2")

    def test_single_colour_untouched(self, gamma):
        m = gamma.morphism(["g1", "g3", "g2"])
        assert normal_form(gamma, m) == m

    def test_equality(self, gamma):
        g1f1, f2g1, f1g1 = words(gamma, ["g1", "f1"], ["f2", "g1"], ["f1", "g1"])
        assert morphisms_equal(gamma, g1f1, f2g1)
        assert not morphisms_equal(gamma, g1f1, f1g1)
        assert not morphisms_equal(gamma, *words(gamma, ["f1"], ["f2"]))

    def test_not_composable(self):
        with pytest.raises(NotComposable):
            omega(3).morphism(["c0", "a0"])


class TestCompose:
    def test_identity_law(self, gamma):
        p = gamma.morphism(["f1", "g2"])
        assert compose(gamma, gamma.identity("v"), p) == p

    def test_concatenation(self):
        b2 = bouquet(2)
        m = compose(b2, *words(b2, ["e1"], ["e2"]))
        assert m.word == ("e1", "e2") and m.degree == (2,)

    def test_degree_adds(self, gamma):
        assert compose(gamma, *words(gamma, ["f1"], ["g1"])).degree == (1, 1)

    def test_mismatch(self):
        o = omega(2)
        with pytest.raises(NotComposable):
            compose(o, *words(o, ["a0"], ["a1"]))


class TestSegment:
    def test_examples(self, gamma):
        lam = gamma.morphism(["g1", "f1"])
        assert segment(gamma, lam, (0, 0), (1, 1)).word == ("f2", "g1")
        assert segment(gamma, lam, (1, 0), (1, 1)).word == ("g1",)
        empty = segment(gamma, lam, (1, 0), (1, 0))
        assert empty.word == () and empty.range == "v"

    def test_out_of_range(self, gamma):
        with pytest.raises(DegreeOutOfRange):
            segment(gamma, gamma.morphism(["f1"]), (0, 0), (0, 1))

    def test_vertex_at(self):
        o3 = omega(3)
        lam = o3.morphism(["c0", "c1"])
        assert vertex_at(o3, lam, (0,)) == "0"
        assert vertex_at(o3, lam, (1,)) == "1"
        assert vertex_at(o3, lam, (2,)) == "2"


class TestEnumeration:
    def test_counts(self, gamma):
        assert len(enumerate_morphisms(gamma, "v", (1, 1))) == 9
        assert [m.word for m in enumerate_morphisms(gamma, "v", (0, 0))] == [()]
        assert len(enumerate_morphisms(bouquet(2), "v", (3,))) == 8

    @pytest.mark.parametrize("name", TWO_GRAPHS + ("Omega2^3", "Omega3"))
    def test_count_independent_of_colour_order(self, name):
        kg = FIX[name]
        top = (2,) * kg.k if kg.k < 3 else (1,) * kg.k
        for v in kg.sorted_vertices:
            for d in degrees_below(top):
                found = enumerate_morphisms(kg, v, d)
                assert len(found) == descending_word_count(kg, v, d)
                assert len({normal_form(kg, m).word for m in found}) == len(found)


@pytest.mark.parametrize("name", TWO_GRAPHS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_normal_form_matches_rewrite_oracle(name, data):
    kg = FIX[name]
    v = data.draw(st.sampled_from(kg.sorted_vertices))
    d = data.draw(st.tuples(st.integers(0, 2), st.integers(0, 2)))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    word = random_word(kg, v, d, rng)
    if not word:
        return
    cls = rewrite_class(kg, word)
    ascending = {w for w in cls if all(kg.color(a) <= kg.color(b) for a, b in zip(w, w[1:]))}
    # exactly one representative has non-decreasing colours
    assert len(ascending) == 1
    nf = normal_form(kg, kg.morphism(word)).word
    assert {nf} == ascending
    # every representative in the class has the same normal form
    for w in list(cls)[:10]:
        assert normal_form(kg, kg.morphism(w)).word == nf
    assert normal_form(kg, normal_form(kg, kg.morphism(word))).word == nf


@pytest.mark.parametrize("name", TWO_GRAPHS)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_segment_matches_rewrite_oracle(name, data):
    kg = FIX[name]
    v = data.draw(st.sampled_from(kg.sorted_vertices))
    d = data.draw(st.tuples(st.integers(0, 2), st.integers(0, 2)))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    lam = kg.morphism(random_word(kg, v, d, rng), v)
    m = tuple(data.draw(st.integers(0, x)) for x in d)
    n = tuple(data.draw(st.integers(a, x)) for a, x in zip(m, d))
    seg = segment(kg, lam, m, n)
    assert (seg.word in segment_oracle(kg, lam.word, m, n)) or (seg.word == () and m == n)
    whole = compose(kg, segment(kg, lam, (0,) * kg.k, m), compose(kg, seg, segment(kg, lam, n, d)))
    assert morphisms_equal(kg, whole, lam)


def test_one_graph_equality_is_word_equality():
    o = omega(3)
    a, b = words(o, ["a0", "c0"], ["b0", "c0"])
    assert not morphisms_equal(o, a, b) and morphisms_equal(o, a, a)
