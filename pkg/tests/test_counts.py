from fractions import Fraction as F

import pytest

from tautverify.counts import (
    abel_difference_degree,
    even_theta_count,
    mixed_difference_degree,
    odd_theta_count,
    scorza_correspondence_class,
    scorza_triple_degree,
)
from tautverify.errors import UnknownNameError


@pytest.mark.parametrize("d, expected", [(1, 8), (2, 72), (3, 288)])
def test_abel_degree(d, expected):
    assert abel_difference_degree(d) == expected


@pytest.mark.parametrize("d1, d2, expected", [(3, 1, 18), (1, 1, 2), (2, 3, 72)])
def test_mixed_degree(d1, d2, expected):
    assert mixed_difference_degree(d1, d2) == expected


def test_degree_formulas_agree():
    for d in range(1, 11):
        assert abel_difference_degree(d) == mixed_difference_degree(d + 1, d)


def test_mixed_symmetric():
    for d1 in range(1, 7):
        for d2 in range(1, 7):
            assert mixed_difference_degree(d1, d2) == mixed_difference_degree(d2, d1)


def test_nonpositive_rejected():
    with pytest.raises(ValueError):
        abel_difference_degree(0)
    with pytest.raises(ValueError):
        mixed_difference_degree(1, 0)
    with pytest.raises(ValueError):
        scorza_correspondence_class(1)


@pytest.mark.parametrize("g, triple", [(2, (1, 1, 1)), (3, (2, 2, 1)), (4, (3, 3, 1))])
def test_correspondence_class(g, triple):
    cc = scorza_correspondence_class(g)
    assert (cc.a, cc.b, cc.c) == tuple(F(x) for x in triple)


def test_triple_point_degree():
    total, parts = scorza_triple_degree()
    assert (total, parts) == (108, (18, 18, 72))
    assert total == sum(parts)


def test_theta_counts():
    assert even_theta_count(2) == 10
    assert odd_theta_count(2) == 6
    assert even_theta_count(1) == 3
    assert odd_theta_count(4) == 120


def test_registry_values(repo):
    expected = {
        "T1_F31_fibers": 72,
        "T2_F31_fibers": 80,
        "V1_pairs_per_side": 384,
        "V1_H4plus": 4608,
        "V2_case_even_tail": 1440,
        "V2_case_odd_tail": 1280,
        "V2_case_interior": 640,
        "V2_H4plus": 3360,
        "scorza_triple_total": 108,
    }
    for cid, value in expected.items():
        const = repo.counts.get(cid)
        assert const.value == value
        assert const.reevaluate(repo.counts) == value


def test_registry_unknown_id(repo):
    with pytest.raises(UnknownNameError):
        repo.counts.get("no_such_constant")


def test_sides_decomposition(repo):
    # the two-tail family total is the sum of its three stated cases
    total = repo.counts.get("V2_H4plus").value
    cases = [repo.counts.get(f"V2_case_{c}").value for c in ("even_tail", "odd_tail", "interior")]
    assert total == sum(cases)
