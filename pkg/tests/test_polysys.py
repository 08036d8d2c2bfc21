import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from splicetype import corpus
from splicetype.diagram import node_degree
from splicetype.polysys import (HammError, Polynomial, SpliceSystemError, admissible_exponents,
                                bph_system, hamm_check, homogeneous_degree, initial_form,
                                initial_system, min_weight, node_weight_vector,
                                strict_splice_system, system_from_dict, validate_higher_order,
                                vandermonde_matrix, weighted_degree)

seeds = st.integers(min_value=0, max_value=2**32)


def test_polynomial_arithmetic():
    x = Polynomial.monomial((1, 0))
    y = Polynomial.monomial((0, 1))
    f = x * x - y + Fraction(1, 2) * y
    assert f.terms == {(2, 0): 1, (0, 1): Fraction(-1, 2)}
    assert (f - f) == Polynomial.zero(2)
    assert len(f) == 2
    assert f.format(["x", "y"]) == "x^2 - 1/2*y"
    assert Polynomial.zero(3).format() == "0"


def test_polynomial_rejects_bad_exponents():
    with pytest.raises(ValueError):
        Polynomial(2, {(1,): 1})
    with pytest.raises(ValueError):
        Polynomial(2, {(1, -1): 1})


def test_polynomial_term_round_trip():
    f = Polynomial(3, {(1, 2, 0): Fraction(-3, 7), (0, 0, 5): 10**30})
    assert Polynomial.from_terms(3, f.to_terms()) == f
    assert all(isinstance(t["num"], str) for t in f.to_terms())


def test_prepend_and_restrict():
    f = Polynomial(2, {(1, 1): 2})
    g = f.prepend_variable() - Polynomial(3, {(4, 0, 0): 1})
    assert g.restrict_first_to_zero() == f


def test_weights_and_initial_forms():
    f = Polynomial(2, {(2, 0): 1, (0, 3): 1, (1, 1): 5})
    w = (3, 2)
    assert min_weight(f, w) == 5
    assert initial_form(f, w) == Polynomial(2, {(1, 1): 5})
    assert homogeneous_degree(f, w) is None
    assert homogeneous_degree(Polynomial(2, {(2, 0): 1, (0, 3): 1}), w) == 6
    assert weighted_degree((1, 1), (Fraction(1, 2), 1)) == Fraction(3, 2)


def test_two_node_7_11_system(pair711):
    s = strict_splice_system(pair711, corpus.COEFFS_7_11)
    names = ["z1", "z2", "z3", "z4"]
    assert s.equations["a"][0].format(names) == "z1^2 - z2^3 + z3*z4"
    assert s.equations["b"][0].format(names) == "z1*z2^4 + z3^5 - z4^2"
    assert s.exponents[("a", "b")] == (0, 0, 1, 1)
    assert s.exponents[("b", "a")] == (1, 4, 0, 0)
    assert homogeneous_degree(s.equations["a"][0], node_weight_vector(pair711, "a")) == 42
    assert homogeneous_degree(s.equations["b"][0], node_weight_vector(pair711, "b")) == 110


def test_two_node_49_11_system_shape(pair4911):
    s = strict_splice_system(pair4911, corpus.COEFFS_49_11)
    assert len(s.equations["a"]) == 1 and len(s.equations["b"]) == 2
    assert len(s) == 3
    assert s.exponents[("a", "b")] == (0, 0, 0, 1, 1)


def test_e8_is_brieskorn(e8):
    s = strict_splice_system(e8)
    (f,) = s.equations["v"]
    assert set(f.terms) == {(2, 0, 0), (0, 3, 0), (0, 0, 5)}


def test_bph_system():
    s = bph_system([2, 3, 5, 7], [[1, 1, 1, 1], [1, 2, 3, 4]])
    assert len(s.equations["v"]) == 2
    w = node_weight_vector(s.diagram, "v")
    assert all(homogeneous_degree(f, w) == 210 for f in s.equations["v"])
    with pytest.raises(HammError):
        bph_system([2, 3, 5, 7], [[1, 1, 1, 1], [1, 1, 3, 4]])
    with pytest.raises(SpliceSystemError):
        bph_system([2, 3], [])


def test_bad_coefficients_rejected(pair4911):
    bad = {"a": [[1, -2, 1]], "b": [[1, 1, 1, 1], [1, 1, 2, 3]]}
    with pytest.raises(HammError):
        strict_splice_system(pair4911, bad)
    with pytest.raises(SpliceSystemError, match="1 x 3"):
        strict_splice_system(pair4911, {"a": [[1, 2]]})


def test_exponent_overrides(pair711):
    # 110 = 3*30 + 1*20 is the other admissible choice at b
    s = strict_splice_system(pair711, exponents={("b", "a"): (3, 1, 0, 0)})
    assert s.exponents[("b", "a")] == (3, 1, 0, 0)
    with pytest.raises(SpliceSystemError):
        admissible_exponents(pair711, {("b", "a"): (2, 1, 0, 0)})
    with pytest.raises(SpliceSystemError):
        admissible_exponents(pair711, {("b", "a"): (0, 0, 22, 0)})


def test_higher_order_terms(pair711):
    w = node_weight_vector(pair711, "a")
    assert validate_higher_order(Polynomial(4, {(3, 0, 0, 0): 1}), "a", pair711)
    assert not validate_higher_order(Polynomial(4, {(0, 0, 1, 1): 1}), "a", pair711)
    assert w == (21, 14, 12, 30)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=5, max_size=5), min_size=1, max_size=3))
def test_hamm_matches_leibniz(rows):
    assert hamm_check(rows).ok == oracles.all_minors_nonzero(rows)


def test_hamm_reports_columns():
    verdict = hamm_check([[1, 2, 2], [0, 1, 1]])
    assert not verdict.ok and verdict.failing_columns == (1, 2)
    with pytest.raises(ValueError):
        hamm_check([[1], [2]])


@pytest.mark.parametrize("m, k, seed", [(3, 1, 0), (6, 4, 0), (7, 5, 11)])
def test_vandermonde_passes(m, k, seed):
    assert hamm_check(vandermonde_matrix(m, k, seed)).ok


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=20))
def test_random_systems_homogeneous(seed, vseed):
    d = corpus.random_diagram(random.Random(seed))
    s = strict_splice_system(d, seed=vseed)
    for v, fs in s.equations.items():
        assert len(fs) == d.valency(v) - 2
        w = node_weight_vector(d, v)
        assert all(homogeneous_degree(f, w) == node_degree(d, v) for f in fs)
    assert system_from_dict(json.loads(s.to_json())) == s


def test_initial_system_at_node_weight(pair711):
    s = strict_splice_system(pair711, corpus.COEFFS_7_11)
    res = initial_system(s, node_weight_vector(pair711, "a"))
    assert res.forms[0] == s.equations["a"][0]
    assert res.generators_monomial_free
    res = initial_system(s, (1, 1, 1, 1))
    assert not res.generators_monomial_free


def test_system_from_dict_rejects_wrong_kind():
    with pytest.raises(ValueError):
        system_from_dict({"kind": "fan"})
