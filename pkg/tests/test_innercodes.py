import itertools
import math

import pytest
from oracles import NaiveField, independent_brute, min_distance_brute

from mrlrc import CapExceededError, ConstructionError
from mrlrc.gf import field_make, field_of_order
from mrlrc.innercodes import (
    IndependentFamily,
    MatrixFq,
    bch_family,
    bch_generator,
    bch_redundancy,
    brute_min_distance,
    evaluation_points,
    family_dispatch,
    family_route,
    identity_family,
    mds_family,
    vandermonde_mds,
    verify_family,
)
from mrlrc.linalg import det

F2 = field_make(2, 1)
F4 = field_make(2, 2)
F5 = field_make(5, 1)


def _naive(F):
    return NaiveField(F.p, F.modulus if F.t > 1 else (0, 1))


def _all_minors_nonzero(F, rows):
    k = len(rows)
    for idx in itertools.combinations(range(len(rows[0])), k):
        if det(F, [[r[j] for j in idx] for r in rows]) == 0:
            return False
    return True


def test_vandermonde_examples():
    assert vandermonde_mds(F2, 2, 1).tolist() == [[1, 1]]
    V = vandermonde_mds(F4, 4, 2)
    w = F4.primitive_element
    assert V.tolist() == [[1, 1, 1, 1], [0, 1, w, F4.mul(w, w)]]
    assert _all_minors_nonzero(F4, V.tolist())
    assert vandermonde_mds(F2, 3, 2).tolist() == [[1, 1, 0], [0, 1, 1]]  # extended column (0,1)
    with pytest.raises(ConstructionError):
        vandermonde_mds(F2, 4, 2)


def test_evaluation_points_order():
    F8 = field_make(2, 3)
    pts = evaluation_points(F8, 8)
    assert pts[:2] == [0, 1] and sorted(pts) == list(range(8))
    assert pts[2] == F8.primitive_element


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8])
def test_vandermonde_is_mds(q):
    F = field_of_order(q)
    for r in range(1, q + 2):
        for a in range(1, r + 1):
            G = vandermonde_mds(F, r, a)
            if q**a <= 5000:
                assert brute_min_distance(G) == r - a + 1
            assert _all_minors_nonzero(F, G.tolist())


def test_repetition_code_for_any_length():
    assert vandermonde_mds(F2, 7, 1).tolist() == [[1] * 7]
    assert vandermonde_mds(F2, 7, 0).shape == (0, 0)


def test_identity_family():
    fam = identity_family(F2, 5, 3)
    assert fam.columns == ((1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0))
    assert verify_family(fam) and verify_family(identity_family(F4, 4, 4))
    with pytest.raises(ConstructionError):
        identity_family(F2, 2, 3)


@pytest.mark.parametrize("q,m,r", [(4, 3, 4), (5, 2, 4), (4, 4, 4), (3, 2, 4), (8, 3, 9)])
def test_mds_family(q, m, r):
    F = field_of_order(q)
    fam = mds_family(F, m, r)
    assert fam.s == m and len(fam.columns) == r
    assert verify_family(fam)
    N = _naive(F)
    for idx in itertools.combinations(range(r), m):
        assert independent_brute(N, [fam.columns[j] for j in idx])


def test_mds_family_errors():
    with pytest.raises(ConstructionError):
        mds_family(F4, 2, 6)
    with pytest.raises(ConstructionError):
        mds_family(F4, 5, 4)


def test_duplicate_column_fails_verification():
    fam = IndependentFamily(F2, 2, 2, 2, ((1, 0), (1, 0)))
    assert not verify_family(fam)


def test_bch_examples():
    fam = bch_family(8, 4)
    assert fam.m == 4 and fam.s == 3 and verify_family(fam)
    fam = bch_family(4, 2)
    assert fam.m == 1 and fam.columns == ((1,),) * 4
    fam = bch_family(16, 6)
    assert fam.m == 9 and verify_family(fam)
    with pytest.raises(ConstructionError):
        bch_family(8, 8)  # redundancy 10 >= r


def test_bch_generators_frozen():
    assert bch_generator(3, 4).coeffs == (1, 1, 0, 1)  # x^3 + x + 1
    assert bch_generator(4, 6).coeffs == (1, 0, 0, 0, 1, 0, 1, 1, 1)  # (x^4+x+1)(x^4+x^3+x^2+x+1)


@pytest.mark.parametrize("r", range(4, 17))
@pytest.mark.parametrize("d", range(2, 8))
def test_bch_strength_and_redundancy(r, d):
    bound = bch_redundancy(r, d)
    if bound >= r:
        with pytest.raises(ConstructionError):
            bch_family(r, d)
        return
    fam = bch_family(r, d)
    assert fam.m == bound
    assert verify_family(fam)
    # the rows carry at most ``bound`` independent checks (zero padding allowed)
    nonzero_rows = [row for row in fam.as_matrix() if any(row)]
    assert len(nonzero_rows) <= bound


def test_bch_code_distance_by_codeword_enumeration():
    # the code whose parity checks are the family has distance >= d
    from mrlrc.linalg import nullspace

    for r, d in [(8, 4), (8, 3), (16, 4), (16, 6)]:
        fam = bch_family(r, d)
        G = nullspace(F2, fam.as_matrix(), r)
        assert min_distance_brute(_naive(F2), G) >= d
        assert brute_min_distance(G, field=F2) >= d


def test_brute_min_distance_examples():
    assert brute_min_distance(MatrixFq.from_rows(F2, [[1, 1]])) == 2
    hamming8 = [[1, 1, 1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1, 0, 0],
                [0, 0, 0, 0, 1, 1, 1, 1], [0, 1, 0, 1, 0, 1, 0, 1]]
    assert brute_min_distance(hamming8, field=F2) == 4
    assert brute_min_distance(vandermonde_mds(F4, 4, 2)) == 3
    with pytest.raises(ValueError):
        brute_min_distance([], field=F2)
    with pytest.raises(CapExceededError):
        brute_min_distance([[int(i == j) for j in range(30)] for i in range(25)], field=F2, cap=1000)


def test_brute_min_distance_support_scan_agrees():
    F3 = field_make(3, 1)
    G = vandermonde_mds(F3, 4, 3).tolist()
    assert brute_min_distance(G, field=F3) == brute_min_distance(G, field=F3, cap=20) == 2


def test_family_dispatch_routes():
    assert family_dispatch(F4, 5, 4, 3).route == "identity"
    fam = family_dispatch(F4, 3, 4, 3)
    assert fam.route == "mds" and verify_family(fam)
    # m >= r wins before the BCH branch is tried
    assert family_route(2, 10, 8, 7) == "identity"
    fam = family_dispatch(F2, 9, 16, 4)
    assert fam.route == "bch" and fam.m == 9 and verify_family(fam)
    with pytest.raises(ConstructionError):
        family_dispatch(F2, 3, 16, 6)


def test_bch_redundancy_formula():
    for r in range(2, 40):
        for d in range(2, 10):
            assert bch_redundancy(r, d) == (d - 1) // 2 * math.ceil(math.log2(r)) + 1
