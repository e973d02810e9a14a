import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lafsat import oracle
from lafsat.formula import CnfFormula, FormulaError, Literal, classify
from lafsat.reduce import (ReductionTrace, lift_witness, positivize, reduce_sat_to_eos,
                           to_one_in_three, to_three_cnf)
from tests.strategies import formulas

BIG = 30  # oracle limit for reduced formulas; pruning keeps these searches fast


def test_positivize_identity_on_positive(toy):
    g, tr = positivize(toy)
    assert g == toy and tr.steps == ()


def test_positivize_single():
    g, tr = positivize(CnfFormula(2, [[1, -2]]))
    assert g.num_vars == 3
    assert g.to_lists() == [[1, 3], [2, 3]]
    assert [fv.var for fv in tr.fresh_vars()] == [3]


def test_positivize_pure_polarity_negative():
    f = CnfFormula(2, [[-1, -2]])
    g, _ = positivize(f)
    assert g.flags.positive
    assert oracle.is_eos(f) == oracle.is_eos(g)
    # each EOS witness of f extends to exactly one witness of g
    assert {w[:2] for w in oracle.enumerate_eos(g)} == set(oracle.enumerate_eos(f))


@given(formulas(max_vars=7, max_clauses=7))
@settings(max_examples=150)
def test_positivize_equi_eos(f):
    g, tr = positivize(f)
    assert g.flags.positive
    assert oracle.is_eos(f) == oracle.is_eos(g)
    for w in oracle.iter_eos(g):
        assert f.is_eos_by(lift_witness(tr, w))
        break


def test_split_k4():
    f = CnfFormula(4, [[1, -2, 3, 4]])
    g, tr = to_three_cnf(f)
    assert g.to_lists() == [[1, -2, 5], [-5, 3, 4]]
    assert tr.fresh_vars()[0].var == 5


def test_split_identity_on_three_cnf(toy):
    g, tr = to_three_cnf(toy)
    assert g is toy and not tr.steps


@given(formulas(max_vars=6, max_clauses=5, max_width=6))
@settings(max_examples=150)
def test_split_equisat(f):
    g, tr = to_three_cnf(f)
    assert g.flags.max_width <= 3
    assert oracle.is_sat(f) == oracle.is_sat(g, BIG)
    w = next(oracle.iter_sat(g, BIG), None)
    if w is not None:
        assert f.is_sat_by(lift_witness(tr, w))


def test_gadget_unit_clause():
    g, _ = to_one_in_three(CnfFormula(1, [[1]]))
    assert g.to_lists() == [[-1, 2, 3], [1, 3, 4], [-1, 4, 5]]
    sols = oracle.enumerate_eos(g)
    assert sols and all(w[0] for w in sols)


def test_gadget_three_clause_projects_onto_models():
    f = CnfFormula(3, [[1, 2, 3]])
    g, _ = to_one_in_three(f)
    assert g.num_vars == 7 and g.num_clauses == 3
    proj = {w[:3] for w in oracle.enumerate_eos(g)}
    models = {w for w in itertools.product((False, True), repeat=3) if any(w)}
    assert proj == models and len(proj) == 7


def test_gadget_two_clause():
    g, _ = to_one_in_three(CnfFormula(2, [[1, 2]]))
    assert g.num_vars == 6
    proj = {w[:2] for w in oracle.enumerate_eos(g)}
    assert proj == {(False, True), (True, False), (True, True)}


def test_gadget_rejects_wide():
    with pytest.raises(FormulaError):
        to_one_in_three(CnfFormula(4, [[1, 2, 3, 4]]))


@given(formulas(max_vars=6, max_clauses=4))
@settings(max_examples=150)
def test_gadget_iff(f):
    g, tr = to_one_in_three(f)
    assert oracle.is_sat(f) == oracle.is_eos(g, BIG)


def test_reduce_unsat_pair():
    f = CnfFormula(1, [[1], [-1]])
    g, tr = reduce_sat_to_eos(f)
    assert g.flags.positive and g.flags.max_width <= 3
    assert not oracle.is_eos(g, BIG)


def test_reduce_toy_as_plain_cnf(toy):
    g, tr = reduce_sat_to_eos(toy)
    w = next(oracle.iter_eos(g, BIG))
    assert toy.is_sat_by(lift_witness(tr, w))


@given(formulas(max_vars=5, max_clauses=3, max_width=4))
@settings(max_examples=100)
def test_reduce_properties(f):
    g, tr = reduce_sat_to_eos(f)
    fl = classify(g)
    assert fl.positive and fl.max_width <= 3
    assert tr.output_num_vars == g.num_vars
    w = next(oracle.iter_eos(g, 40), None)
    assert (w is not None) == oracle.is_sat(f)
    if w is not None:
        assert f.is_sat_by(lift_witness(tr, w))


def test_trace_fresh_vars_cover_output():
    f = CnfFormula(4, [[1, -2, 3, -4], [-1, 2]])
    g, tr = reduce_sat_to_eos(f)
    fresh = [fv.var for fv in tr.fresh_vars()]
    assert sorted(fresh) == list(range(f.num_vars + 1, g.num_vars + 1))
    assert len(set(fresh)) == len(fresh)


def test_trace_json_round_trip():
    _, tr = reduce_sat_to_eos(CnfFormula(3, [[1, -2], [3]]))
    assert ReductionTrace.from_json(tr.to_json()) == tr
    with pytest.raises(ValueError):
        ReductionTrace.from_json('{"schema_version": 99}')


def test_lift_witness():
    assert lift_witness(ReductionTrace(3), (True, False, True)) == (True, False, True)
    _, tr = positivize(CnfFormula(2, [[1, -2]]))
    assert lift_witness(tr, (True, False, True)) == (True, False)
    with pytest.raises(ValueError):
        lift_witness(tr, (True,))


def test_trace_composition_checks():
    with pytest.raises(ValueError):
        ReductionTrace(2).then(ReductionTrace(3))
    assert Literal(1) == Literal.from_int(1)
