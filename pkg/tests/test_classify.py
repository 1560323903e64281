import json
import os

import pytest

from oracles import brute_force_isomorphisms, euler, f_vector
from semmap import catalog
from semmap.classify import (
    BudgetExhausted,
    ClassifyError,
    ClassifyOptions,
    anchored_applicable,
    classify_type,
)
from semmap.maps import PolyhedralMap, is_orientable, semi_equivelar_type
from semmap.reference import HAND_EXCLUDED_CHI_M2
from semmap.symmetry import are_isomorphic, automorphism_group, canonical_code, is_chiral
from semmap.typearith import as_type

DATA = os.path.join(os.path.dirname(__file__), "data")

SPHERES = [
    ("[3^3]", 4, 1),
    ("[3^4]", 6, 1),
    ("[4^3]", 8, 1),
    ("[3^5]", 12, 1),
    ("[3,4,3,4]", 12, 1),
    ("[3,6^2]", 12, 1),
    ("[4,6^2]", 24, 1),
    # rhombicuboctahedron and its twisted relative
    ("[3,4^3]", 24, 2),
]


@pytest.mark.parametrize("t,n,count", SPHERES)
def test_spheres(t, n, count):
    res = classify_type(t, 2)
    assert res.n == n
    assert len(res.maps) == count
    for m in res.maps:
        assert semi_equivelar_type(m) == as_type(t)
        assert euler(m.faces) == 2
        assert f_vector(m.faces)[0] == n


def test_spheres_are_the_known_solids():
    tet = classify_type("[3^3]", 2).maps[0]
    assert are_isomorphic(tet, catalog.get("tetrahedron").map) is not None
    cube = classify_type("[4^3]", 2).maps[0]
    assert are_isomorphic(cube, catalog.get("cube").map) is not None


def test_projective_plane_six_vertices():
    res = classify_type("[3^5]", 1)
    assert res.n == 6
    assert len(res.maps) == 1
    assert not is_orientable(res.maps[0])
    assert brute_force_isomorphisms(res.maps[0].faces, catalog.get("rp2_6").map.faces, limit=1)


@pytest.mark.parametrize("t", ["[3,8,3,8]", "[3,9,3,9]", "[3,6,5,6]"])
def test_empty_types(t):
    res = classify_type(t, -2)
    assert res.maps == []


def test_truncated_octahedron_search_stays_small():
    # abandoned face generators used to leak fresh labels, which multiplied
    # the labelled copies of each map
    res = classify_type("[4,6^2]", 2)
    assert res.nodes < 100
    assert res.leaves <= 48


def test_mode_selection():
    assert anchored_applicable(as_type("[3^4,10]"))
    assert not anchored_applicable(as_type("[3,8,3,8]"))
    assert not anchored_applicable(as_type("[3^7]"))
    assert classify_type("[3^3]", 2).mode == "generic"


def test_bad_inputs():
    with pytest.raises(ClassifyError):
        classify_type("[3^3]", 2, ClassifyOptions(mode="sideways"))
    with pytest.raises(ClassifyError):
        classify_type("[3^3]", 2, ClassifyOptions(mode="anchored"))
    with pytest.raises(ClassifyError):
        classify_type("[3^6]", 0)


def test_budget():
    with pytest.raises(BudgetExhausted) as info:
        classify_type("[3,4^3]", 2, ClassifyOptions(budget=5))
    assert info.value.nodes == 6
    assert isinstance(info.value.partial, list)


@pytest.fixture(scope="module")
def k_result():
    return classify_type("[3^4,10]", -2)


@pytest.fixture(scope="module")
def sat_classes():
    with open(os.path.join(DATA, "sat_3-4_10.json")) as fh:
        data = json.load(fh)
    return [PolyhedralMap([tuple(f) for f in c]) for c in data["classes"]]


def test_k_maps_valid(k_result):
    assert k_result.mode == "anchored"
    assert k_result.n == 30
    for m in k_result.maps:
        sizes = sorted(len(f) for f in m.faces)
        assert sizes.count(3) == 40 and sizes.count(10) == 3
        assert euler(m.faces) == -2
        assert is_orientable(m)


def test_k_maps_match_sat_oracle(k_result, sat_classes):
    # the SAT enumeration (tests/sat_oracle.py) found exactly these classes
    assert len(k_result.maps) == len(sat_classes) == 2
    assert sorted(canonical_code(m) for m in sat_classes) == k_result.certificates


def test_k_maps_chiral(k_result):
    assert all(is_chiral(m) for m in k_result.maps)
    assert k_result.oriented_count() == 4
    assert sorted(automorphism_group(m).order for m in k_result.maps) == [6, 10]


def test_k_catalog_entries(k_result):
    ours = {canonical_code(catalog.get(n).map) for n in ("K1_3-4_10", "K2_3-4_10")}
    assert ours == set(k_result.certificates)


def test_shuffle_seed_same_classes(k_result):
    res = classify_type("[3^4,10]", -2, ClassifyOptions(shuffle_seed=7))
    assert res.certificates == k_result.certificates


@pytest.mark.slow
def test_three_seven():
    res = classify_type("[3^7]", -2)
    assert len(res.maps) == 34
    assert sum(map(is_orientable, res.maps)) == 6
    n1 = catalog.get("N1").map
    assert any(are_isomorphic(m, n1) is not None for m in res.maps)


@pytest.mark.slow
def test_sat_oracle_rerun(sat_classes):
    # several minutes: every labelled completion of three fixed decagons
    from sat_oracle import enumerate_classes

    labelled, found = enumerate_classes()
    assert sorted(found) == sorted(canonical_code(m) for m in sat_classes)
    assert sorted(found.values()) == [240, 400]
    assert labelled == 640


def _rejected_small():
    from semmap.typearith import EnumerationParams, enumerate_types

    rows = enumerate_types(EnumerationParams(chi=-2), include_rejected=True)
    out = []
    for r in rows:
        if r.rejection and (r.rejection.startswith("prop31") or r.rejection.endswith("_bound")) and r.n <= 30:
            slow = str(r.type) in ("[3^3,5^2]", "[4^2,5^2]")
            out.append(pytest.param(str(r.type), r.rejection, marks=[pytest.mark.slow] if slow else []))
    return out


@pytest.mark.parametrize("t,reason", _rejected_small())
def test_rejected_types_have_no_maps(t, reason):
    assert classify_type(t, -2, ClassifyOptions(budget=10**5)).maps == []


@pytest.mark.parametrize("t", [
    pytest.param(str(t), marks=[pytest.mark.slow] if str(t) == "[3^1,16^2]" else [])
    for t in HAND_EXCLUDED_CHI_M2
])
def test_hand_excluded_types_are_empty(t):
    assert classify_type(t, -2).maps == []
