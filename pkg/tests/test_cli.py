import io
import json
import subprocess
import sys

import pytest

from raagkit.cli import main


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "p3": "vertices a b c\nedge a b\nedge b c\n",
        "k3": "vertices a b c\nedge a b\nedge b c\nedge a c\n",
        "c5": "vertices a b c d e\nedge a b\nedge b c\nedge c d\nedge d e\nedge e a\n",
        "bad": "vertices a\nedge a a\n",
    }.items():
        p = tmp_path / f"{name}.graph"
        p.write_text(text)
        paths[name] = str(p)
    paths["dir"] = tmp_path
    return paths


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_info(files):
    code, out, _ = run("info", files["p3"])
    assert code == 0 and "clique_number: 2" in out and "is_abelian: false" in out
    code, out, _ = run("info", files["c5"], "--json")
    assert json.loads(out)["center_rank"] == 0


def test_normal_form(files):
    assert run("normal-form", files["p3"], "a", "b", "a^-1") == (0, "b\n", "")
    assert run("normal-form", files["p3"], "a a^-1")[1] == "1\n"
    assert run("normal-form", files["p3"], "z")[0] == 2


def test_subgroup_verify(files):
    code, out, _ = run("subgroup", files["p3"], "--vertex", "a", "--index", "2", "--verify", "100", "--seed", "7")
    assert code == 0
    assert "4 vertices" in out and "0 failures" in out
    code, out, _ = run("subgroup", files["p3"], "--vertex", "a", "--index", "2", "--verify", "10", "--json")
    data = json.loads(out)
    assert data["glued_vertices"] == 4 and data["verification"]["failures"] == []
    assert data["generators"]["c@1"] == "a c a^-1"


def test_subgroup_bad_vertex(files):
    assert run("subgroup", files["p3"], "--vertex", "q", "--index", "2")[0] == 2


def test_grow(files):
    code, out, _ = run("grow", files["p3"], "--target", "7")
    assert code == 0 and out.startswith("vertex counts: 3 -> 4")
    assert run("grow", files["k3"], "--target", "4")[0] == 1


def test_certificate_and_verify(files):
    cert = files["dir"] / "cert.json"
    code, out, _ = run("certificate", files["c5"], "--k", "8", "--out", str(cert))
    assert code == 0 and "(Z/2Z)^8" in out
    assert run("verify", str(cert)) == (0, "OK: (Z/2Z)^8 verified\n", "")
    data = json.loads(cert.read_text())
    data["witnesses"][0]["power"] += 1
    cert.write_text(json.dumps(data))
    code, out, _ = run("verify", str(cert))
    assert code == 1 and out.startswith("REJECTED")


def test_certificate_complete_graph(files):
    code, _, err = run("certificate", files["k3"], "--k", "2")
    assert code == 1
    assert "defining graph is complete: A is abelian" in err


def test_mcg(files):
    code, out, _ = run("mcg", "--genus", "2", "--punctures", "0")
    assert code == 0 and "Comm obstruction" in out
    code, out, _ = run("mcg", "--genus", "0", "--punctures", "4", "--json")
    assert json.loads(out)["kind"] == "exception"


def test_compare(files):
    code, out, _ = run("compare", files["p3"], files["k3"])
    assert code == 0 and out.startswith("obstructed")
    assert run("compare", files["p3"], files["c5"])[1].startswith("no obstruction found")


def test_usage_errors(files):
    assert run()[0] == 2
    assert run("info")[0] == 2
    assert run("info", str(files["dir"] / "missing.graph"))[0] == 2
    code, _, err = run("info", files["bad"])
    assert code == 2 and "line 2" in err
    assert run("verify", files["p3"])[0] == 2
    assert run("certificate", files["p3"], "--k", "0")[0] == 2
    assert run("grow", files["p3"], "--target", "0")[0] == 2


def test_deterministic_output(files):
    args = ("subgroup", files["c5"], "--vertex", "b", "--index", "3", "--verify", "40", "--seed", "3", "--json")
    assert run(*args) == run(*args)
    assert run("certificate", files["p3"], "--k", "6") == run("certificate", files["p3"], "--k", "6")


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "raagkit", "mcg", "--genus", "5", "--punctures", "0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "dimension obstruction" in proc.stdout
