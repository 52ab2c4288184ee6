from itertools import product

import pytest
from hypothesis import given, strategies as st

from confork import (
    ALL_AXIOMS,
    FORKNESS_AXIOMS,
    FormatError,
    NotRegularForkness,
    TernaryRelation,
    check_forkness,
    check_regular,
    full_axiom_report,
    quotient,
    sharp,
)

from support import axiom_instance_holds, forkness_closure, naive_axiom_holds


def rel(ground, triples):
    return TernaryRelation(ground, triples)


def full_cube(labels):
    return rel(labels, set(product(labels, repeat=3)))


@st.composite
def relations(draw, max_ground=4, max_triples=14):
    n = draw(st.integers(0, max_ground))
    ground = [chr(97 + i) for i in range(n)]
    if n == 0:
        return rel([], [])
    triple = st.tuples(*[st.sampled_from(ground)] * 3)
    return rel(ground, draw(st.sets(triple, max_size=max_triples)))


class TestConstruction:
    def test_ground_set_is_sorted_and_triples_deduplicated(self):
        r = rel(["b", "a"], [("a", "b", "a"), ("a", "b", "a")])
        assert r.ground_set == ("a", "b")
        assert len(r.triples) == 1

    def test_rejects_foreign_labels(self):
        with pytest.raises(FormatError):
            rel(["a"], [("a", "a", "z")])

    def test_rejects_duplicate_ground_labels(self):
        with pytest.raises(FormatError):
            rel(["a", "a"], [])


class TestForknessAxioms:
    def test_empty_relation_satisfies_all(self):
        report = check_forkness(rel(["1", "2", "3"], []))
        assert report.all_hold() and not report.witnesses

    def test_full_cube_satisfies_all(self):
        report = check_forkness(full_cube(["1", "2"]))
        assert report.all_hold()

    def test_single_distinct_triple_fails_lower(self):
        report = check_forkness(rel(["1", "2", "3"], [("1", "2", "3")]))
        assert not report.holds["lower"]
        assert report.witnesses["lower"] == ("1", "2", "3")
        # (1,2,2) is indeed missing
        assert not axiom_instance_holds(
            rel(["1", "2", "3"], [("1", "2", "3")]), "lower", ("1", "2", "3")
        )

    def test_missing_sym_partner(self):
        report = check_forkness(rel(["1", "2"], [("1", "2", "1")]))
        assert not report.holds["sym"]
        assert report.witnesses["sym"] == ("1", "2")

    @given(relations())
    def test_matches_naive_quantifier_evaluation(self, r):
        report = check_forkness(r)
        for axiom in FORKNESS_AXIOMS:
            assert report.holds[axiom] == naive_axiom_holds(r, axiom)

    @given(relations())
    def test_witnesses_falsify_their_axiom(self, r):
        report = full_axiom_report(r)
        assert set(report.witnesses) == set(report.failed())
        for axiom, witness in report.witnesses.items():
            assert not axiom_instance_holds(r, axiom, witness)


class TestRegularity:
    def test_full_cube_is_regular(self):
        assert check_regular(full_cube(["1", "2"])).holds["regular"]

    def test_regular_leaves_forkness_axioms_unevaluated(self):
        report = check_regular(rel(["1"], []))
        assert set(report.holds) == {"regular"}

    def test_asymmetric_relation_fails_with_six_tuple(self):
        r = rel(
            ["1", "2"],
            [("1", "1", "1"), ("2", "2", "2"), ("1", "2", "1"), ("2", "1", "2"),
             ("1", "2", "2")],
        )
        report = check_regular(r)
        assert not report.holds["regular"]
        witness = report.witnesses["regular"]
        assert len(witness) == 6
        assert not axiom_instance_holds(r, "regular", witness)

    @given(relations())
    def test_matches_naive_quantifier_evaluation(self, r):
        assert check_regular(r).holds["regular"] == naive_axiom_holds(r, "regular")


class TestQuotient:
    def test_everything_equivalent_collapses_to_one_class(self):
        r = full_cube(["1", "2"])
        q = quotient(r)
        assert q.classes == {"1": frozenset({"1", "2"})}
        assert q.class_of == {"1": "1", "2": "1"}
        assert q.quotient == rel(["1"], [("1", "1", "1")])

    def test_identity_equivalence_reproduces_the_relation(self):
        r = forkness_closure(["1", "2", "3"], [("1", "2", "3")])
        q = quotient(r)
        assert all(len(m) == 1 for m in q.classes.values())
        assert q.quotient == r

    def test_rejects_non_regular_forkness(self):
        with pytest.raises(NotRegularForkness):
            quotient(rel(["1", "2", "3"], [("1", "2", "3")]))

    def test_elements_without_diagonal_are_dropped(self):
        r = rel(["1", "2"], [("1", "1", "1")])
        q = quotient(r)
        assert set(q.class_of) == {"1"}
        assert q.quotient.ground_set == ("1",)

    @given(relations(max_ground=3, max_triples=6))
    def test_quotient_invariants_on_generated_regular_forknesses(self, seed_rel):
        r = forkness_closure(seed_rel.ground_set, seed_rel.triples)
        if not naive_axiom_holds(r, "regular"):
            return
        q = quotient(r)
        core = {i for i in r.ground_set if (i, i, i) in r.triples}
        # classes partition the core
        assert set().union(*q.classes.values()) == core if q.classes else not core
        for i in core:
            for j in core:
                same = q.class_of[i] == q.class_of[j]
                assert same == ((i, j, i) in r.triples)
        # membership transfers between relation and quotient
        for a, b, c in r.triples:
            assert (q.class_of[a], q.class_of[b], q.class_of[c]) in q.quotient.triples
        for qi, qj, qk in q.quotient.triples:
            members = lambda lab: q.classes[lab]
            assert all(
                (x, y, z) in r.triples
                for x in members(qi) for y in members(qj) for z in members(qk)
            )
        # the quotient is itself a forkness with identity equivalence
        assert check_forkness(q.quotient).all_hold()
        for label in q.quotient.ground_set:
            assert (label, label, label) in q.quotient.triples
        for a, b, c in q.quotient.triples:
            if a == c:
                assert a == b


class TestSharp:
    def test_full_cube_keeps_the_six_permutations(self):
        s = sharp(full_cube(["1", "2", "3"]))
        assert len(s.triples) == 6
        assert all(len(set(t)) == 3 for t in s.triples)

    def test_diagonal_only_becomes_empty(self):
        assert sharp(rel(["1"], [("1", "1", "1")])).triples == frozenset()

    def test_unsolvable_fixture_sharp_is_its_eight_generators(self, unsolvable_forkness):
        base = {
            ("1", "3", "2"), ("2", "3", "4"), ("3", "1", "4"), ("1", "4", "2"),
            ("2", "3", "1"), ("4", "3", "2"), ("4", "1", "3"), ("2", "4", "1"),
        }
        assert sharp(unsolvable_forkness).triples == frozenset(base)

    def test_unsolvable_fixture_is_the_closure_of_its_generators(self, unsolvable_forkness):
        base = sharp(unsolvable_forkness).triples
        assert forkness_closure(["1", "2", "3", "4"], base) == unsolvable_forkness
        assert len(unsolvable_forkness.triples) == 36

    @given(relations())
    def test_idempotent(self, r):
        assert sharp(sharp(r)) == sharp(r)


def test_report_failed_ordering_follows_axiom_order():
    r = rel(["1", "2", "3"], [("1", "2", "3")])
    report = full_axiom_report(r)
    failed = report.failed()
    assert failed == tuple(a for a in ALL_AXIOMS if a in failed)
