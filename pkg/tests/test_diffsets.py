from itertools import combinations

import pytest

from singerlat.diffsets import (
    AffineMap, DifferenceMatrix, DifferenceSet, DifferenceVector,
    agl_apply, agl_orbit_of_set, all_difference_sets, canonical_difference_set,
    find_agl_map, is_difference_set, matrix_from_text, matrix_to_text,
    normalize_matrix, set_stabilizer_in_agl, singer_difference_set,
    stabilizer_index_perms,
)
from singerlat.errors import CapExceeded, InvalidInput


def oracle_difference_counts(elements, m):
    counts = [0] * m
    for d in elements:
        for d2 in elements:
            if d != d2:
                counts[(d - d2) % m] += 1
    return counts


def test_examples_mod_7():
    assert is_difference_set([1, 2, 4], 2)
    assert oracle_difference_counts([1, 2, 4], 7)[1:] == [1] * 6
    assert not is_difference_set([0, 1, 2], 2)


def test_example_mod_13():
    assert is_difference_set([0, 1, 3, 9], 3)


def test_malformed_input_is_an_error():
    with pytest.raises(InvalidInput):
        is_difference_set([1, 1, 2], 2)
    with pytest.raises(InvalidInput):
        is_difference_set([0, 1, 9], 2)
    with pytest.raises(InvalidInput):
        is_difference_set([0, 1, 3], 1)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_singer_sets_are_difference_sets(q):
    D = singer_difference_set(q)
    assert D.modulus == q * q + q + 1
    assert len(D.elements) == q + 1
    assert is_difference_set(D.elements, q)


def test_singer_q2_equivalent_to_1_2_4():
    D = singer_difference_set(2)
    assert tuple(sorted((1, 2, 4))) in agl_orbit_of_set(D)


def test_singer_cap_and_nonprimepower():
    with pytest.raises(InvalidInput):
        singer_difference_set(6)
    with pytest.raises(CapExceeded):
        singer_difference_set(11)


@pytest.mark.parametrize("q", [2, 3])
def test_every_difference_set_is_affine_image_of_singer(q):
    found = all_difference_sets(q)
    orbit = agl_orbit_of_set(singer_difference_set(q))
    assert {D.elements for D in found} == orbit


def test_all_difference_sets_q4_single_orbit():
    found = all_difference_sets(4)
    orbit = agl_orbit_of_set(singer_difference_set(4))
    assert {D.elements for D in found} == orbit
    assert len(found) == 42


def test_all_difference_sets_cap():
    with pytest.raises(CapExceeded):
        all_difference_sets(5)


def test_canonical_set_is_orbit_minimum():
    for q in (2, 3):
        C = canonical_difference_set(q)
        assert C.elements == min(agl_orbit_of_set(singer_difference_set(q)))
    assert canonical_difference_set(2).elements == (0, 1, 3)


def test_agl_apply_examples():
    v = DifferenceVector.make(2, (1, 2, 4))
    assert agl_apply(AffineMap(2, 0, 7), v).entries == (2, 4, 1)
    assert agl_apply(AffineMap(1, 3, 7), v).entries == (4, 5, 0)


def test_agl_apply_preserves_difference_property_exhaustively():
    for q in (2, 3):
        D = singer_difference_set(q)
        m = D.modulus
        from singerlat.diffsets import agl_maps
        for g in agl_maps(m):
            img = [g(x) for x in D.elements]
            assert is_difference_set(img, q)


def test_affine_map_group_laws():
    g = AffineMap(2, 3, 7)
    h = AffineMap(4, 1, 7)
    x = 5
    assert g.compose(h)(x) == g(h(x))
    assert g.compose(g.inverse())(x) == x
    assert g.inverse().compose(g)(x) == x
    with pytest.raises(InvalidInput):
        AffineMap(7, 1, 21)  # 7 is not a unit mod 21


@pytest.mark.parametrize("q,size", [(2, 3), (3, 3), (4, 6), (8, 9)])
def test_stabilizer_orders(q, size):
    D = canonical_difference_set(q)
    stab = set_stabilizer_in_agl(D)
    assert len(stab) == size


def test_stabilizer_is_a_group():
    D = canonical_difference_set(4)
    stab = set_stabilizer_in_agl(D)
    pairs = {(g.a, g.b) for g in stab}
    for g in stab:
        assert (g.inverse().a, g.inverse().b) in pairs
        for h in stab:
            c = g.compose(h)
            assert (c.a, c.b) in pairs


def test_stabilizer_index_perms_are_permutations():
    for q in (2, 3, 4):
        D = canonical_difference_set(q)
        perms = stabilizer_index_perms(D)
        assert tuple(range(q + 1)) in perms
        for p in perms:
            assert sorted(p) == list(range(q + 1))


def test_normalize_matrix_identity_case():
    D = DifferenceSet.make(2, (1, 2, 4))
    M = DifferenceMatrix.make(2, [(1, 2, 4)] * 3)
    N = normalize_matrix(M, D)
    for col in N.columns:
        assert col.entries == (1, 2, 4)


def test_normalize_matrix_reorders_and_remaps():
    D = DifferenceSet.make(2, (1, 2, 4))
    M = DifferenceMatrix.make(2, [(1, 2, 4), (2, 4, 1), (4, 5, 0)])
    N = normalize_matrix(M, D)
    assert N.columns[0].entries == (1, 2, 4)
    for col in N.columns:
        assert tuple(sorted(col.entries)) == (1, 2, 4)
    # column 1 was a cyclic shift, so it stays a nontrivial ordering of D
    assert N.columns[1].entries != (1, 2, 4)


def test_normalize_matrix_reports_bad_column():
    # every q=2 set is affine-equivalent to the canonical one, so the
    # failure path needs a target of the wrong order
    D3 = canonical_difference_set(3)
    M = DifferenceMatrix.make(3, [D3.elements, D3.elements, D3.elements])
    N = normalize_matrix(M, D3)
    assert N.columns[0].entries == D3.elements
    with pytest.raises(InvalidInput):
        normalize_matrix(M, canonical_difference_set(2))


def test_normalized_alphas_recover_columns():
    D = canonical_difference_set(3)
    pos = {d: i for i, d in enumerate(D.elements)}
    M = DifferenceMatrix.make(3, [
        tuple(reversed(D.elements)),
        D.elements,
        (D.elements[1], D.elements[0], D.elements[3], D.elements[2]),
    ])
    N = normalize_matrix(M, D)
    for col in N.columns:
        alpha = tuple(pos[e] for e in col.entries)
        assert sorted(alpha) == list(range(4))
        assert tuple(D.elements[j] for j in alpha) == col.entries


def test_matrix_text_round_trip_bit_exact():
    M = DifferenceMatrix.make(2, [(1, 2, 4), (2, 4, 1), (1, 4, 2)])
    text = matrix_to_text(M)
    M2 = matrix_from_text(text)
    assert M2 == M
    assert matrix_to_text(M2) == text


def test_matrix_text_rejects_malformed():
    with pytest.raises(InvalidInput):
        matrix_from_text("not json")
    with pytest.raises(InvalidInput):
        matrix_from_text('{"q": 2, "modulus": 8, "columns": [[1,2,4],[1,2,4],[1,2,4]]}')
    with pytest.raises(InvalidInput):
        matrix_from_text('{"q": 2, "modulus": 7, "columns": [[1,2,4],[1,2,4]]}')
    with pytest.raises(InvalidInput):
        matrix_from_text('{"q": 2, "modulus": 7, "columns": [[1,2,5],[1,2,4],[1,2,4]]}')


def test_find_agl_map_deterministic_and_complete():
    D = canonical_difference_set(2)
    g = find_agl_map((1, 2, 4), D.elements, 7)
    assert g is not None
    assert tuple(sorted(g(x) for x in (1, 2, 4))) == D.elements
    # no map between sets of different sizes
    assert find_agl_map((0, 1), (0, 1, 3), 7) is None


def test_difference_set_count_q2():
    # hand count: the affine orbit has size 42 / |stabilizer| = 14
    assert len(all_difference_sets(2)) == 14
    assert len(all_difference_sets(3)) == 52
