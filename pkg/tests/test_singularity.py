from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.singularity import (
    SingularityRecord,
    TorusKnotSingularity,
    conductor_exponent,
    delta_invariant,
    euler_compactified_jacobian,
    multiplicity_closed_form,
    multiplicity_factorial_form,
    semigroup_gaps,
)
from oracles import semigroup_gaps_bruteforce

COPRIME_PAIRS = [(p, q) for q in range(3, 13) for p in range(2, q) if gcd(p, q) == 1]


@pytest.mark.parametrize("pq,expected", [((2, 3), 2), ((2, 5), 3), ((3, 4), 5), ((2, 7), 4), ((3, 5), 7), ((4, 5), 14)])
def test_closed_form_values(pq, expected):
    assert multiplicity_closed_form(pq) == expected
    assert multiplicity_factorial_form(pq) == expected


def test_gaps_delta_conductor_examples():
    assert semigroup_gaps((2, 3)) == [1]
    assert semigroup_gaps((2, 5)) == [1, 3]
    assert semigroup_gaps((3, 4)) == [1, 2, 5]
    assert [delta_invariant(pq) for pq in [(2, 3), (3, 4), (2, 5)]] == [1, 3, 2]
    assert [conductor_exponent(pq) for pq in [(2, 3), (2, 5), (3, 4)]] == [2, 4, 6]


@pytest.mark.parametrize("p,q", COPRIME_PAIRS)
def test_invariants_by_enumeration(p, q):
    gaps = semigroup_gaps_bruteforce(p, q)
    assert semigroup_gaps((p, q)) == gaps
    assert delta_invariant((p, q)) == (p - 1) * (q - 1) // 2 == len(gaps)
    assert conductor_exponent((p, q)) == gaps[-1] + 1 == 2 * len(gaps)


def test_validation():
    with pytest.raises(ValueError):
        TorusKnotSingularity(2, 4)
    with pytest.raises(ValueError):
        TorusKnotSingularity(3, 2)
    with pytest.raises(ValueError):
        TorusKnotSingularity(1, 5)


def test_euler_number_products():
    node = SingularityRecord.node()
    assert euler_compactified_jacobian([]) == 1
    assert euler_compactified_jacobian([node, node, node]) == 1
    recs = [SingularityRecord.torus_knot(2, 5), SingularityRecord.torus_knot(3, 5)]
    assert euler_compactified_jacobian(recs) == 21


@given(st.integers(2, 40), st.integers(3, 41))
def test_closed_and_factorial_forms_agree(p, q):
    if p >= q or gcd(p, q) != 1:
        return
    assert multiplicity_closed_form((p, q)) == multiplicity_factorial_form((p, q))
    # symmetric in p and q as a rational Catalan number
    assert multiplicity_closed_form(TorusKnotSingularity(p, q)) > 0
