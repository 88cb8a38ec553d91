import io
import json

import pytest

from conftest import chip
from oracles import all_words
from qcrewrite import rsys
from qcrewrite.cli import NonCircuitNormalForm, compile_word, main
from qcrewrite.ncpoly import NCPoly
from qcrewrite.rewrite import RewritingSystem, orient
from qcrewrite.words import parse_word

W = parse_word


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def fragment_rsys(tmp_path_factory):
    path = tmp_path_factory.mktemp("sys") / "fragment.rsys"
    code, out = run("complete", "--chip", str(chip("rigetti_fragment")), "--out", str(path))
    assert code == 0 and "complete=true" in out
    return path


@pytest.fixture(scope="module")
def parallel_rsys(tmp_path_factory):
    path = tmp_path_factory.mktemp("sys") / "parallel.rsys"
    assert run("complete", "--chip", str(chip("rigetti_parallel")), "--out", str(path))[0] == 0
    return path


def test_complete_writes_braid_and_absorption_rules(fragment_rsys):
    lines = fragment_rsys.read_text().splitlines()
    assert "s12 s23 s12 -> s23 s12 s23" in lines
    assert "s23 r23 -> r23" in lines


def test_complete_empty_relations(tmp_path):
    spec = tmp_path / "chip.json"
    spec.write_text(json.dumps({"qubits": [1, 2], "gates": [{"name": "s12", "qubits": [1, 2], "duration": 2}],
                                "relations": [], "crosstalk": [], "parallel": {"policy": "off"}}))
    for method in ("kb", "shuffle"):
        out = tmp_path / f"{method}.rsys"
        code, text = run("complete", "--chip", str(spec), "--out", str(out), "--method", method)
        assert code == 0 and text.startswith("0 rules complete=true")
        assert rsys.load(out).rules == ()


def test_complete_shuffle_route_on_swap_seeds(tmp_path, capsys):
    out = tmp_path / "shuffle.rsys"
    code, _ = run("complete", "--chip", str(chip("rigetti_swaps")), "--out", str(out), "--method", "shuffle")
    # The shuffle-ideal basis, read back as concatenation rules, forces 1 = 0.
    assert code == 1 and not out.exists()
    assert "inconsistent" in capsys.readouterr().err


def test_complete_capped_exits_zero(tmp_path, capsys):
    out = tmp_path / "capped.rsys"
    code, text = run("complete", "--chip", str(chip("rigetti_swaps")), "--out", str(out), "--max-rules", "4")
    assert code == 0 and "capped=true" in text
    assert "warning" in capsys.readouterr().err


def test_complete_bad_chip(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"qubits": [1], "gates": [{"name": "s12", "qubits": [1, 2], "duration": 2}]}')
    code, _ = run("complete", "--chip", str(bad), "--out", str(tmp_path / "x.rsys"))
    assert code == 1 and "gates[0].qubits" in capsys.readouterr().err


def test_compile_w1(fragment_rsys, tmp_path):
    circuit = tmp_path / "w1.txt"
    circuit.write_text("s14 s12 s23 s12 r23\n")
    code, out = run("compile", "--system", str(fragment_rsys), "--chip", str(chip("rigetti_fragment")),
                    "--circuit", str(circuit), "--json")
    assert code == 0
    result = json.loads(out)
    assert result["normal_form"] == ["s14", "s23", "s12", "r23"]
    assert result["makespan_cycles"] == "10"
    assert result["warnings"] == []
    assert [t["rule"] for t in result["trace"]]


def test_compile_w3_w4(parallel_rsys, tmp_path):
    results = {}
    for name, text in {"w3": "b12 s14;23 s12 r23", "w4": "s14;23 s12 s14;23 r23 b12"}.items():
        circuit = tmp_path / f"{name}.txt"
        circuit.write_text(text)
        code, out = run("compile", "--system", str(parallel_rsys), "--chip", str(chip("rigetti_parallel")),
                        "--circuit", str(circuit), "--json")
        assert code == 0
        results[name] = json.loads(out)
    assert results["w4"]["input_makespan_cycles"] == "13"
    assert results["w3"]["input_makespan_cycles"] == "11"
    assert results["w4"]["normal_form"] == results["w3"]["normal_form"] == ["b12", "s14;23", "s12", "r23"]
    assert results["w4"]["makespan_cycles"] == "11"


def test_compile_with_placement(tmp_path):
    system = tmp_path / "cnot.rsys"
    assert run("complete", "--chip", str(chip("cnot_placement")), "--out", str(system))[0] == 0
    circuit = tmp_path / "c.txt"
    circuit.write_text("cnot01 s01 cnot12 cnot13\ngate cnot 0 1\ngate cnot 0 2\ngate cnot 0 3\n")
    code, out = run("compile", "--system", str(system), "--chip", str(chip("cnot_placement")),
                    "--circuit", str(circuit), "--json")
    result = json.loads(out)
    assert code == 0
    assert result["normal_form"] == ["cnot10", "cnot12", "cnot13"]
    assert result["placement"] == {"0": 1, "1": 0, "2": 2, "3": 3}


def test_compile_text_output_and_trace(fragment_rsys, tmp_path):
    circuit = tmp_path / "w1.txt"
    circuit.write_text("s14 s12 s23 s12 r23")
    code, out = run("compile", "--system", str(fragment_rsys), "--chip", str(chip("rigetti_fragment")),
                    "--circuit", str(circuit), "--trace")
    assert code == 0
    assert out.splitlines()[0] == "normal_form: s14 s23 s12 r23"
    assert "rule" in out


def test_compile_unknown_letter(fragment_rsys, tmp_path, capsys):
    circuit = tmp_path / "bad.txt"
    circuit.write_text("s14 zz")
    code, _ = run("compile", "--system", str(fragment_rsys), "--chip", str(chip("rigetti_fragment")),
                  "--circuit", str(circuit))
    assert code == 1 and "zz" in capsys.readouterr().err


def test_non_circuit_normal_form(fragment):
    order = fragment.order
    r = orient(NCPoly.word(W("s12 s12")) - NCPoly.one() - NCPoly.word(W("s23")), order)
    system = RewritingSystem((r,), order, fragment.alphabet, complete=True)
    with pytest.raises(NonCircuitNormalForm) as exc:
        compile_word(W("s12 s12"), system, fragment)
    assert "s23 + eps" in str(exc.value)


def test_capped_system_warns(fragment, fragment_system):
    capped = fragment_system.with_rules(fragment_system.rules, capped=True)
    result = compile_word(W("s12 s12"), capped, fragment)
    assert any("capped" in w for w in result.warnings)


def test_makespan_is_tau_max_times_weight(parallel, parallel_system):
    for w in all_words(("s14;23", "s12", "b12", "r23"), 4):
        result = compile_word(w, parallel_system, parallel)
        assert result.makespan_cycles == parallel.tau_max * parallel.order.weight(result.normal_form)


def test_output_is_deterministic(parallel_rsys, tmp_path):
    circuit = tmp_path / "w4.txt"
    circuit.write_text("s14;23 s12 s14;23 r23 b12")
    args = ("compile", "--system", str(parallel_rsys), "--chip", str(chip("rigetti_parallel")),
            "--circuit", str(circuit), "--json", "--trace")
    assert run(*args) == run(*args)
    again = tmp_path / "again.rsys"
    run("complete", "--chip", str(chip("rigetti_parallel")), "--out", str(again))
    assert again.read_bytes() == parallel_rsys.read_bytes()


@pytest.mark.parametrize("word, expected", [
    ("s23 s12 s23 s12 s23", "s12"),
    ("eps", "eps"),
    ("s23 s12 s23 s12", "s12 s23"),
])
def test_nf_command(fragment_rsys, word, expected):
    code, out = run("nf", "--system", str(fragment_rsys), "--word", word)
    assert code == 0 and out.strip() == expected


def test_nf_trace(fragment_rsys):
    code, out = run("nf", "--system", str(fragment_rsys), "--word", "s12 s12", "--trace")
    assert out.splitlines() == ["eps", "  rule 2 (s12 s12 -> eps) at 0 in s12 s12"]


def test_shuffle_command():
    assert run("shuffle", "a", "b") == (0, "a b + b a\n")
    code, out = run("shuffle", "s23 s12", "s12", "--alphabet", str(chip("rigetti_swaps")))
    assert out.strip() == "s12 s23 s12 + 2*s23 s12 s12"


def test_lyndon_command(capsys):
    code, out = run("lyndon", "--word", "b12 s14;23 s12 s23", "--alphabet", str(chip("rigetti_parallel")))
    assert (code, out.strip()) == (0, "[b12][s14;23 s12 s23]")
    assert run("lyndon", "--enumerate", "2", "--letters", "a,b") == (0, "a, a b, b\n")
    code, _ = run("lyndon", "--word", "eps")
    assert code == 1 and "empty" in capsys.readouterr().err


def test_module_entry_point(fragment_rsys):
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "qcrewrite", "nf", "--system", str(fragment_rsys),
                           "--word", "s12 s23 s12"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "s23 s12 s23"
