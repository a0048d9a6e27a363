import random

import pytest

from rvknot.laurent import LaurentPoly


def _random_poly(rng):
    return LaurentPoly({rng.randint(-12, 12): rng.randint(-3, 3) for _ in range(rng.randint(0, 5))})


def test_no_zero_coefficients_stored():
    p = LaurentPoly({2: 0, -4: 3})
    assert p.terms == {-4: 3}
    assert (p - p).is_zero()
    assert (p - p) == LaurentPoly.zero()


def test_delta_and_powers():
    d = LaurentPoly.delta()
    assert d == LaurentPoly({2: -1, -2: -1})
    assert d * d == LaurentPoly({4: 1, 0: 2, -4: 1})
    assert d ** 0 == LaurentPoly.one()
    assert LaurentPoly.monomial(3, -1) ** -1 == LaurentPoly.monomial(-3, -1)


def test_negative_power_of_non_monomial_rejected():
    with pytest.raises(ValueError):
        LaurentPoly.delta() ** -1


def test_text_form_matches_documented_example():
    p = LaurentPoly({-16: -1, -12: 1, -4: 1})
    assert str(p) == "-A^-16 + A^-12 + A^-4"
    assert str(LaurentPoly.one()) == "1"
    assert str(LaurentPoly.zero()) == "0"


def test_parse_inverts_str():
    rng = random.Random(11)
    for _ in range(200):
        p = _random_poly(rng)
        assert LaurentPoly.parse(str(p)) == p


def test_json_round_trip():
    rng = random.Random(12)
    for _ in range(100):
        p = _random_poly(rng)
        assert LaurentPoly.from_json(p.to_json()) == p
    assert LaurentPoly({-4: 2}).to_json() == {"-4": 2}


def test_ring_laws():
    rng = random.Random(13)
    for _ in range(200):
        p, q, r = (_random_poly(rng) for _ in range(3))
        assert p * (q + r) == p * q + p * r
        assert p * q == q * p
        assert (p + q) - q == p
        assert (p * q).invert_variable() == p.invert_variable() * q.invert_variable()


def test_palindrome_and_hash():
    fig8 = LaurentPoly({-8: 1, -4: -1, 0: 1, 4: -1, 8: 1})
    assert fig8.is_palindromic()
    assert not LaurentPoly({-16: -1, -12: 1, -4: 1}).is_palindromic()
    assert len({fig8, LaurentPoly({8: 1, 4: -1, 0: 1, -4: -1, -8: 1})}) == 1
