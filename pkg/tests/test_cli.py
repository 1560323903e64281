import json
import subprocess
import sys

import pytest

from semmap.cli import main
from semmap.maps import load


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def js(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_banner(capsys):
    code, out, _ = run(capsys, "type", "N1")
    assert code == 0
    assert out.startswith("# semmap ")
    code, out2, _ = run(capsys, "type", "N1", "--no-banner")
    assert out2.splitlines() == ["[3^7]", "chi=-2", "n=12", "orientable"]


def test_no_banner_is_deterministic(capsys):
    outs = {run(capsys, "--no-banner", "aut", "N1")[1] for _ in range(2)}
    assert len(outs) == 1


def test_json_flag_either_side(capsys):
    a = js(capsys, "type", "N1")[1]
    code, out, _ = run(capsys, "type", "N1", "--json")
    assert json.loads(out) == a == {"type": "[3^7]", "chi": -2, "n": 12, "orientable": True}


def test_validate_file(capsys, tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"faces": [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]}))
    code, data = js(capsys, "validate", str(p))
    assert code == 0 and data["valid"] and data["f_vector"] == [4, 6, 4]


def test_validate_bad_map(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"faces": [[0, 1, 2], [0, 1, 3]]}))
    code, _, err = run(capsys, "validate", str(p))
    assert code == 1
    assert err.startswith("error:")


def test_missing_map(capsys):
    code, _, err = run(capsys, "type", "no/such/file.json")
    assert code == 1 and "no such map" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["cover", "N1"])
    assert info.value.code == 2


def test_aut_and_orbits(capsys):
    code, data = js(capsys, "aut", "N1", "--elements")
    assert data["order"] == 12 and len(data["elements"]) == 12
    code, data = js(capsys, "orbits", "N1")
    assert data["vertex_transitive"]


def test_iso_exit_codes(capsys):
    code, data = js(capsys, "iso", "N1", "n1.json")
    assert code == 0 and data["isomorphic"]
    code, data = js(capsys, "iso", "N1", "N1_cover2")
    assert code == 1 and not data["isomorphic"]


def test_enumerate(capsys):
    code, data = js(capsys, "enumerate", "--chi", "-2")
    assert code == 0
    assert len(data["entries"]) == 46
    code, data = js(capsys, "enumerate", "--chi", "-2", "--no-paper-exclusions")
    assert len(data["entries"]) == 47
    code, data = js(capsys, "enumerate", "--chi", "-2", "--patch-bound")
    assert len(data["entries"]) == 44


def test_cycles(capsys):
    code, data = js(capsys, "cycles", "N1", "--max-len", "3")
    assert [0, 6, 10] in data["cycles"]


def test_cover(capsys, tmp_path):
    out = tmp_path / "c3.json"
    code, data = js(capsys, "cover", "N1", "--cycle", "0,6,10", "--m", "3", "--aut", "--swap",
                    "--out", str(out))
    assert code == 0
    assert data["cover"]["chi"] == -6
    assert data["cover"]["f_vector"][0] == 36
    assert data["deck_order"] == 3
    assert data["aut"]["order"] == 6 and data["aut"]["group"] == "D3"
    assert data["predicted_group"] == "D3"
    assert data["side_swap"] is not None
    assert load(out).f0 == 36


def test_cover_bad_cycle(capsys):
    code, _, err = run(capsys, "cover", "N1", "--cycle", "0,1,5", "--m", "2")
    assert code == 1


def test_classify(capsys, tmp_path):
    code, data = js(capsys, "classify", "--type", "[3^5]", "--chi", "1", "--emit-dir", str(tmp_path))
    assert code == 0
    assert data["count"] == 1 and data["n"] == 6
    assert load(tmp_path / "map_001.json").f0 == 6


def test_classify_budget(capsys):
    code, _, err = run(capsys, "classify", "--type", "[3,4^3]", "--chi", "2", "--budget", "3")
    assert code == 1 and "budget" in err


def test_blocks(capsys):
    code, data = js(capsys, "blocks", "K2_3-4_10")
    assert code == 0
    assert data["certificate"] == [[1, 2, 2]] * 5


def test_catalog(capsys):
    code, data = js(capsys, "catalog")
    assert {e["name"] for e in data["entries"]} >= {"N1", "K1_3-4_10"}
    code, data = js(capsys, "catalog", "N1_cover3")
    assert data["command"].startswith("semmap cover")
    code, _, err = run(capsys, "catalog", "nope")
    assert code == 1


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "semmap.cli", "--no-banner", "type", "N1"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert r.stdout.splitlines()[0] == "[3^7]"
