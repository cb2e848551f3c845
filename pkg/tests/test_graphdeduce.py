"""Planarity fact closure: rules, traces, scenarios, consistency."""

import pytest

from tanglekit.errors import InconsistentFacts, TangleError
from tanglekit.graphdeduce import (
    COMPRESSIBLE,
    COUNTEREXAMPLES,
    EDGES,
    NOT_PLANAR,
    PLANAR,
    FactBase,
    compressible_minus,
    counterexample_incompressible,
    counterexample_no_common_vertex,
    counterexample_three_trans,
    deduce,
    opposite_corollary_scenario,
    planar_minus,
    planar_subgraph,
    rational_solution_scenario,
    rule_g_bij,
    rule_opposite,
    rule_thompson,
)


class TestAtoms:
    def test_valid_atoms(self):
        FactBase.from_atoms(["PlanarMinus:e1", "CompressibleExt", "Planar"])

    def test_invalid_atom(self):
        with pytest.raises(TangleError):
            FactBase.from_atoms(["PlanarMinus:e9"])
        with pytest.raises(TangleError):
            FactBase.from_atoms(["Bogus"])


class TestRules:
    def test_thompson_forward(self):
        fb = FactBase.from_atoms(
            [planar_minus(e) for e in EDGES] + [COMPRESSIBLE]
        )
        assert PLANAR in rule_thompson(fb)

    def test_thompson_needs_compressibility(self):
        fb = FactBase.from_atoms([planar_minus(e) for e in EDGES])
        assert PLANAR not in rule_thompson(fb)

    def test_thompson_converse(self):
        fb = FactBase.from_atoms([PLANAR])
        out = rule_thompson(fb)
        assert all(planar_minus(e) in out for e in EDGES)
        assert COMPRESSIBLE in out

    def test_empty_base_no_change(self):
        fb = FactBase.from_atoms([])
        assert rule_thompson(fb).facts == fb.facts
        assert rule_g_bij(fb).facts == fb.facts
        assert rule_opposite(fb).facts == fb.facts

    def test_g_bij_spoke_star(self):
        fb = FactBase.from_atoms(
            [planar_minus(e) for e in ("e1", "e2", "e3")]
            + [compressible_minus("b12")]
        )
        assert planar_minus("b12") in rule_g_bij(fb)

    def test_g_bij_missing_premise(self):
        fb = FactBase.from_atoms(
            [planar_minus(e) for e in ("e1", "e2")] + [compressible_minus("b12")]
        )
        assert planar_minus("b12") not in rule_g_bij(fb)

    def test_g_bij_all_rims(self):
        fb = FactBase.from_atoms(
            [planar_minus(e) for e in ("e1", "e2", "e3")]
            + [compressible_minus(b) for b in ("b12", "b23", "b31")]
        )
        out = rule_g_bij(fb)
        assert all(planar_minus(b) in out for b in ("b12", "b23", "b31"))

    def test_g_bij_hub_star(self):
        fb = FactBase.from_atoms(
            [planar_minus(e) for e in ("e1", "b12", "b31")]
            + [compressible_minus("e2")]
        )
        assert planar_minus("e2") in rule_g_bij(fb)

    def test_opposite_five(self):
        fb = FactBase.from_atoms(
            [planar_minus(e) for e in EDGES[:5]] + [COMPRESSIBLE]
        )
        assert PLANAR in rule_opposite(fb)

    def test_opposite_four_insufficient(self):
        fb = FactBase.from_atoms(
            [planar_minus(e) for e in EDGES[:4]] + [COMPRESSIBLE]
        )
        assert PLANAR not in rule_opposite(fb)


class TestDeduce:
    def test_rational_solution_scenario(self):
        closed, trace = deduce(rational_solution_scenario())
        assert PLANAR in closed
        derived = {s.derived for s in trace.steps}
        assert PLANAR in derived

    def test_corollary_scenario(self):
        closed, trace = deduce(opposite_corollary_scenario())
        assert PLANAR in closed
        rules = [s.rule for s in trace.steps if s.derived == PLANAR]
        assert rules and rules[0].startswith("opposite")

    def test_trace_soundness(self):
        fb = rational_solution_scenario()
        closed, trace = deduce(fb)
        known = set(fb.facts)
        for step in trace.steps:
            assert all(p in known for p in step.premises), step
            known.add(step.derived)
        assert known == set(closed.facts)

    def test_counterexamples_never_planar(self):
        for name, make in COUNTEREXAMPLES.items():
            closed, _ = deduce(make())
            assert PLANAR not in closed, name
            assert closed.consistent, name

    def test_fixed_point(self):
        closed, _ = deduce(rational_solution_scenario())
        again, trace2 = deduce(closed)
        assert again.facts == closed.facts
        assert not trace2.steps

    def test_subgraph_downward_closure(self):
        closed, _ = deduce(FactBase.from_atoms([planar_minus("e1")]))
        assert planar_subgraph(frozenset({"e2", "b12"})) in closed
        assert planar_subgraph(frozenset()) in closed

    def test_opposite_subsumed_by_thompson(self):
        base = FactBase.from_atoms(
            [planar_minus(e) for e in EDGES] + [COMPRESSIBLE]
        )
        via_thompson = deduce(base)[0]
        assert PLANAR in via_thompson

    def test_inconsistency_flagged(self):
        fb = rational_solution_scenario().with_facts([NOT_PLANAR])
        closed, _ = deduce(fb)
        assert not closed.consistent
        with pytest.raises(InconsistentFacts):
            deduce(fb, strict=True)


class TestScenarioContent:
    """The negative content: dropping any hypothesis loses planarity."""

    def test_three_trans_has_rim_deletions_planar(self):
        fb = counterexample_three_trans()
        assert planar_minus("b23") in fb
        closed, _ = deduce(fb)
        assert PLANAR not in closed

    def test_no_common_vertex_case(self):
        fb = counterexample_no_common_vertex()
        closed, _ = deduce(fb)
        assert PLANAR not in closed

    def test_incompressible_case_all_deletions_planar(self):
        fb = counterexample_incompressible()
        assert all(planar_minus(e) in fb for e in EDGES)
        closed, _ = deduce(fb)
        assert PLANAR not in closed
