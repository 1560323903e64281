from fractions import Fraction
from itertools import combinations_with_replacement, permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from semmap.reference import CENSUS_CHI_M2
from semmap.typearith import (
    EnumerationParams,
    TypeError_,
    VertexType,
    canonical_type,
    chi_of,
    enumerate_types,
    face_vector,
    local_obstructions,
    parse_type,
    prop31_check,
    size_upper_bound,
    vertex_count,
)

FLOOR_REASONS = {"spherical/non-integral", "vertex_floor", "face_count_floor"}


def test_canonical_examples():
    t = canonical_type((3, 3, 4, 3, 3, 4))
    assert t.sizes == (3, 3, 4, 3, 3, 4)
    assert str(t) == "[3^2,4^1,3^2,4^1]"
    assert canonical_type((10, 3, 3, 3, 3)).sizes == (3, 3, 3, 3, 10)
    assert str(canonical_type((10, 3, 3, 3, 3))) == "[3^4,10^1]"
    assert canonical_type((3, 3, 4, 3, 6)) == canonical_type((3, 3, 6, 3, 4))


def test_bad_types():
    with pytest.raises(TypeError_):
        canonical_type((3, 2, 4))
    with pytest.raises(TypeError_):
        parse_type("[3^x]")


@pytest.mark.parametrize("text", ["[3^4,10]", "[3^4,10^1]", "3,3,3,3,10", "[10,3^4]"])
def test_parse_forms(text):
    assert parse_type(text) == parse_type("[3^4,10^1]")


def test_vertex_count():
    assert vertex_count("[3^7]", -2) == 12
    assert vertex_count("[7^3]", -2) == 28
    assert vertex_count("[4,6,8]", -2) is None
    assert vertex_count("[4,6,18]", -2) == 72


def test_face_vector():
    assert face_vector("[3^4,10]", 30) == {3: 40, 10: 3}
    assert face_vector("[3^7]", 12) == {3: 28}
    assert face_vector("[3^7]", 13) is None


def test_prop31():
    assert prop31_check("[3^3,5^2]") == "i"
    assert prop31_check("[3^3,4,5]") == "ii"
    assert prop31_check("[3,5,4,5]") == "iii"
    assert prop31_check("[3^7]") is None


def test_local_obstructions():
    assert local_obstructions("[3,8,4,8]", 12) == "link_bound"
    assert local_obstructions("[5,10^2]", 20) == "completeness_bound"
    assert local_obstructions("[3,8,3,8]", 24) == "patch_bound"
    assert local_obstructions("[3,8,3,8]", 24, patch=False) is None


def test_size_upper_bound():
    p = EnumerationParams(chi=-2)
    assert size_upper_bound(3, p) >= 20
    assert 1000 > size_upper_bound(3, p)
    assert size_upper_bound(7, p) >= 4


def test_params_validation():
    with pytest.raises(ValueError):
        EnumerationParams(chi=0)
    with pytest.raises(ValueError):
        EnumerationParams(chi=-2, min_vertices=0)


def census(**kw):
    return [(e.n, e.type) for e in enumerate_types(EnumerationParams(chi=-2, **kw))]


def test_census_is_the_published_list():
    got = census()
    assert len(got) == 46
    assert set(got) == set(CENSUS_CHI_M2)
    assert got[0] == (12, parse_type("[3^7]"))
    assert got == sorted(got, key=lambda e: (e[0], e[1].sizes))


def test_census_without_exclusions_adds_one():
    extra = set(census(apply_paper_exclusions=False)) - set(census())
    assert extra == {(12, parse_type("[3^2,4,3^2,4]"))}


def test_census_face_vector_large_entry():
    e = [e for e in enumerate_types(EnumerationParams(chi=-2)) if e.n == 168][0]
    assert e.type == parse_type("[4,6,14]")
    assert e.face_vector == {4: 42, 6: 28, 14: 12}


def test_census_with_patch_bound():
    dropped = set(census()) - set(census(apply_patch_bound=True))
    assert dropped == {(24, parse_type("[3,8,3,8]")), (18, parse_type("[3,9,3,9]"))}


def test_rejections_have_reasons():
    rows = enumerate_types(EnumerationParams(chi=-2), include_rejected=True)
    reasons = {r.rejection for r in rows}
    assert None in reasons
    assert {"prop31(i)", "prop31(ii)", "link_bound", "paper_exclusion"} <= reasons


def _dihedral_min(seq):
    d = len(seq)
    return min(tuple(s[i:] + s[:i]) for s in (tuple(seq), tuple(reversed(seq))) for i in range(d))


def brute_census(chi, min_vertices, min_face_count, caps):
    """Every cyclic size sequence with n >= floor and every x_s >= floor,
    generated from scratch up to generous size caps."""
    out = set()
    for d, cap in caps.items():
        for ms in combinations_with_replacement(range(3, cap + 1), d):
            # cheap float screen with a wide margin; exact test follows
            approx = d / 2 - 1 - sum(1 / s for s in ms)
            if approx <= -1e-9 or (approx > 1e-9 and -chi / approx < min_vertices - 0.5):
                continue
            deficit = Fraction(d, 2) - 1 - sum(Fraction(1, s) for s in ms)
            if deficit <= 0:
                continue
            n = Fraction(-chi) / deficit
            if n.denominator != 1 or n < min_vertices:
                continue
            n = int(n)
            ok = True
            for s in set(ms):
                x = Fraction(n * ms.count(s), s)
                if x.denominator != 1 or x < min_face_count:
                    ok = False
            if not ok:
                continue
            for perm in set(permutations(ms)):
                out.add((n, _dihedral_min(perm)))
    return out


def test_enumeration_complete_against_brute_force():
    p = EnumerationParams(chi=-2)
    rows = enumerate_types(p, include_rejected=True)
    mine = {(r.n, r.type.sizes) for r in rows if r.rejection not in FLOOR_REASONS}
    caps = {3: 200, 4: 40, 5: 16, 6: 8, 7: 5}
    assert p.max_degree == 7
    assert mine == brute_census(-2, 12, 3, caps)


def test_small_floors_chi_minus_one():
    p = EnumerationParams(chi=-1, min_vertices=1, min_face_count=1, apply_paper_exclusions=False)
    rows = enumerate_types(p)
    assert rows
    for r in rows:
        assert chi_of(r.type, r.n) == -1


sizes = st.lists(st.integers(3, 12), min_size=3, max_size=8)


@given(sizes, st.integers(0, 7), st.booleans())
def test_canonical_invariant(seq, shift, flip):
    s = seq[shift % len(seq):] + seq[:shift % len(seq)]
    if flip:
        s = s[::-1]
    t = canonical_type(seq)
    assert canonical_type(s) == t
    assert canonical_type(t.sizes) == t
    assert parse_type(str(t)) == t


@given(sizes)
def test_vertex_count_solves_euler(seq):
    t = VertexType(_dihedral_min(seq))
    for chi in (-1, -2, -4):
        n = vertex_count(t, chi)
        if n is not None:
            assert n > 0
            assert chi_of(t, n) == chi


def test_accepted_entries_recompute_chi():
    for r in enumerate_types(EnumerationParams(chi=-2)):
        d = r.type.degree
        assert r.n - Fraction(d * r.n, 2) + r.n * sum(Fraction(1, s) for s in r.type.sizes) == -2
