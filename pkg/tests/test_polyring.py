import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import NaiveField, irreducible_count_sieve, is_irreducible_trial

from mrlrc import ExhaustedError, FieldError, Poly
from mrlrc.gf import field_make, field_of_order
from mrlrc.polyring import (
    coprime_family,
    coprime_supply,
    count_irreducible,
    divisors,
    find_irreducible,
    is_irreducible,
    iter_irreducible,
    iter_monic,
    poly_gcd,
    poly_mod_inverse,
)

F2 = field_make(2, 1)
F3 = field_make(3, 1)
F4 = field_make(2, 2)


def _naive(F):
    return NaiveField(F.p, F.modulus) if F.t > 1 else NaiveField(F.p, (0, 1))


def test_first_irreducibles_over_f2():
    assert find_irreducible(F2, 3).coeffs == (1, 1, 0, 1)  # x^3 + x + 1
    assert find_irreducible(F2, 3, exclude=[(1, 1, 0, 1)]).coeffs == (1, 0, 1, 1)
    with pytest.raises(ExhaustedError):
        find_irreducible(F2, 2, exclude=[(1, 1, 1)])


def test_quadratic_over_f4():
    assert find_irreducible(F4, 2).coeffs == (2, 1, 1)  # x^2 + x + w


def test_counts_frozen():
    assert [count_irreducible(F2, d) for d in range(1, 7)] == [2, 1, 2, 3, 6, 9]
    assert [count_irreducible(F3, d) for d in range(1, 7)] == [3, 3, 8, 18, 48, 116]
    assert [count_irreducible(F4, d) for d in range(1, 7)] == [4, 6, 20, 60, 204, 670]


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("d", range(1, 7))
def test_count_matches_product_sieve(q, d):
    F = field_of_order(q)
    assert count_irreducible(F, d) == irreducible_count_sieve(_naive(F), d)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_degree_sum_identity(q):
    F = field_of_order(q)
    for m in range(1, 9):
        assert sum(e * count_irreducible(F, e) for e in divisors(m)) == q**m


@pytest.mark.parametrize("q,d", [(2, 4), (2, 5), (3, 3), (4, 2), (4, 3)])
def test_rabin_matches_trial_division(q, d):
    F = field_of_order(q)
    naive = _naive(F)
    for f in iter_monic(F, d):
        assert is_irreducible(f) == is_irreducible_trial(naive, f.coeffs)


def test_enumeration_is_in_integer_encoding_order():
    def key(p):
        return sum(c * 3**i for i, c in enumerate(p.coeffs))

    irr = list(iter_irreducible(F3, 3))
    assert [key(p) for p in irr] == sorted(key(p) for p in irr)
    assert len(irr) == 8


def test_coprime_family_examples():
    assert [p.coeffs for p in coprime_family(F2, 2, 2).members] == [(1, 1, 1), (0, 0, 1)]
    assert [p.coeffs for p in coprime_family(F2, 3, 2).members] == [(1, 1, 0, 1), (1, 0, 1, 1)]
    fam = coprime_family(F2, 4, 5)
    # three quartic irreducibles, then (x^2+x+1)^2, then x^4
    assert [p.coeffs for p in fam.members] == [
        (1, 1, 0, 0, 1), (1, 0, 0, 1, 1), (1, 1, 1, 1, 1), (1, 0, 1, 0, 1), (0, 0, 0, 0, 1)]
    assert fam.is_pairwise_coprime()
    with pytest.raises(ExhaustedError):
        coprime_family(F2, 2, coprime_supply(F2, 2) + 1)


@pytest.mark.parametrize("q,m", [(2, 2), (2, 4), (2, 6), (3, 2), (4, 2)])
def test_full_coprime_supply_is_pairwise_coprime(q, m):
    F = field_of_order(q)
    fam = coprime_family(F, m, coprime_supply(F, m))
    assert fam.is_pairwise_coprime()
    assert all(p.degree == m and p.is_monic for p in fam.members)


def test_mod_inverse_example():
    inv = poly_mod_inverse(Poly(F2, (1, 1)), Poly(F2, (1, 1, 0, 1)))
    assert inv.coeffs == (0, 1, 1)  # x^2 + x
    with pytest.raises(FieldError):
        poly_mod_inverse(Poly(F2, (1, 1)), Poly(F2, (1, 0, 1)))


def test_zero_polynomial_irreducibility_is_an_error():
    with pytest.raises(FieldError):
        is_irreducible(Poly(F2, ()))


def test_string_round_trip_and_display():
    p = Poly.from_string(F3, "1,2,0,1")
    assert p.to_string() == "1,2,0,1" and p.degree == 3
    assert str(p) == "x^3 + 2*x + 1"
    assert Poly.from_string(F3, "1,0,0").coeffs == (1,)


polys = st.lists(st.integers(0, 3), min_size=0, max_size=6).map(lambda cs: Poly(F4, tuple(cs)))


@given(polys, polys)
def test_division_identity(a, b):
    if b.is_zero():
        return
    qt, rm = divmod(a, b)
    assert qt * b + rm == a
    assert rm.is_zero() or rm.degree < b.degree


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly(F4, ())


@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    assert g.is_monic
    assert (a % g).is_zero() and (b % g).is_zero()


@given(polys, st.integers(0, 3))
def test_evaluation_is_a_homomorphism(a, x):
    b = Poly(F4, (1, 2))
    assert (a * b)(x) == F4.mul(a(x), b(x))
    assert (a + b)(x) == F4.add(a(x), b(x))


@given(st.sampled_from([(2, 3), (2, 4), (3, 2), (4, 2)]), st.data())
def test_mod_inverse_property(qm, data):
    q, d = qm
    F = field_of_order(q)
    Q = find_irreducible(F, d)
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=d))
    f = Poly(F, tuple(coeffs))
    if f.is_zero():
        return
    inv = poly_mod_inverse(f, Q)
    assert ((f * inv) % Q).coeffs == (1,)


def test_monic_iteration_counts():
    for q, d in itertools.product([2, 3], [1, 2, 3]):
        F = field_of_order(q)
        assert len(list(iter_monic(F, d))) == q**d
