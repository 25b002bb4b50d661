import json
import subprocess
import sys

import pytest

from kgraphs.catalog import gamma_ex1, omega
from kgraphs.cli import main, split_ids
from kgraphs.io import emit_kg, parse_kg


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, kg in {"gamma": gamma_ex1(), "o2": omega(2), "o3": omega(3)}.items():
        p = tmp_path / f"{name}.kg"
        p.write_text(emit_kg(kg))
        paths[name] = str(p)
    labels = tmp_path / "labels.txt"
    labels.write_text("group Z3xZ3\nlabel f3 (1,0)\nlabel g3 (0,1)\n")
    paths["labels"] = str(labels)
    bad = tmp_path / "bad.kg"
    bad.write_text("kgraph k=2\nvertex v\nedge e color=1 range=v source=v\n")
    paths["bad"] = str(bad)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_split_ids_keeps_pairs():
    assert split_ids("(0,1), (1,1),x") == ["(0,1)", "(1,1)", "x"]
    assert split_ids("") == []


def test_validate(files, capsys):
    assert run(capsys, "validate", files["gamma"])[:2] == (0, "ok\n")
    code, _, err = run(capsys, "validate", files["bad"])
    assert code == 1 and "NoSourceAt" in err


def test_quartet(files, capsys):
    assert run(capsys, "quartet", files["gamma"], "--vertex", "v")[1] == "(f1,f2,g1,g2)\n"


def test_ideal_commands(files, capsys):
    assert run(capsys, "lattice", files["o3"])[1].splitlines() == ["{}", "{2}", "{1, 2}", "{0, 1, 2}"]
    assert run(capsys, "saturate", files["o3"], "--set", "1,2")[1] == "{1, 2}\n"
    assert run(capsys, "hclose", files["o3"], "--set", "0")[1] == "{0, 1, 2}\n"
    code, out, _ = run(capsys, "quotient", files["o3"], "--set", "2")
    assert code == 0 and emit_kg(parse_kg(out)) == emit_kg(omega(2))
    assert run(capsys, "quotient", files["o3"], "--set", "0")[0] == 1


def test_tail_commands(files, capsys):
    assert run(capsys, "tails", files["o3"], "--method", "both")[1].splitlines() == [
        "{0}", "{0, 1}", "{0, 1, 2}"]
    code, out, _ = run(capsys, "topology", files["o3"], "--json")
    assert code == 0 and json.loads(out)["report"]["ok"]
    assert run(capsys, "topology", files["o3"], "--dot")[1].count("->") == 2


def test_aperiodicity_commands(files, capsys):
    assert run(capsys, "aperiodic", files["gamma"])[1].startswith("Aperiodic")
    code, out, _ = run(capsys, "strong-aperiodic", files["o3"], "--json")
    assert code == 0 and json.loads(out)["status"] == "Aperiodic"


def test_constructions(files, capsys, tmp_path):
    code, out, _ = run(capsys, "product", files["o2"], files["o2"])
    assert code == 0 and len(parse_kg(out).rules) == 25
    code, out, _ = run(capsys, "skew", files["gamma"], "--labels", files["labels"])
    assert code == 0 and len(parse_kg(out).vertices) == 9
    code, out, _ = run(capsys, "product-probe", files["o2"], files["o2"])
    assert "not a product: {(0,1), (1,0), (1,1)}" in out


def test_normal_form_and_info(files, capsys):
    assert run(capsys, "normal-form", files["gamma"], "--path", "g1,f2")[1] == "f1 g1\n"
    assert "squares = 9" in run(capsys, "info", files["gamma"])[1]


def test_catalog(capsys):
    assert parse_kg(run(capsys, "catalog", "omega", "3")[1]).vertices == ("0", "1", "2")


def test_usage_and_io_errors(files, capsys):
    with pytest.raises(SystemExit) as info:
        main(["quartet", files["gamma"]])
    assert info.value.code == 2
    assert run(capsys, "info", "/nonexistent.kg")[0] == 1


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "kgraphs", "validate", files["gamma"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "ok\n"
