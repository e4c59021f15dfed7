import json
import sys
from pathlib import Path

from swaproute.cli import main

STUB = str(Path(__file__).parent / "external_stub.py")


def run(args):
    return main(args)


def write_three_gate(tmp_path) -> str:
    path = tmp_path / "in.qasm"
    path.write_text(
        "OPENQASM 2.0;\n"
        'include "qelib1.inc";\n'
        "qreg q[4];\n"
        "cx q[0],q[1];\n"
        "h q[2];\n"
        "cx q[0],q[2];\n"
        "cx q[0],q[3];\n"
    )
    return str(path)


def test_map_global_three_gate(tmp_path, capsys):
    src = write_three_gate(tmp_path)
    out = tmp_path / "routed.qasm"
    stats = tmp_path / "stats.json"
    code = run(["map", "--input", src, "--arch", "line:4", "--strategy", "global", "--n", "1",
                "--output", str(out), "--stats", str(stats)])
    assert code == 0
    record = json.loads(stats.read_text())
    assert record["swap_count"] == 1
    assert record["gates_added"] == 3
    assert record["status"] == "optimal"
    assert record["gates_added"] == 3 * record["swap_count"]
    assert out.read_text().startswith("// initial_map:")


def test_map_output_verifies_via_cli(tmp_path):
    src = write_three_gate(tmp_path)
    out = tmp_path / "routed.qasm"
    assert run(["map", "--input", src, "--arch", "line:4", "--strategy", "global", "--output", str(out)]) == 0
    assert run(["verify", "--source", src, "--routed", str(out), "--arch", "line:4"]) == 0


def test_verify_with_explicit_initial_map(tmp_path):
    src = write_three_gate(tmp_path)
    out = tmp_path / "routed.qasm"
    run(["map", "--input", src, "--arch", "line:4", "--strategy", "global", "--output", str(out)])
    comment = next(ln for ln in out.read_text().splitlines() if ln.startswith("// initial_map:"))
    placement = comment.split(":", 1)[1].strip()
    assert run(["verify", "--source", src, "--routed", str(out), "--arch", "line:4",
                "--initial-map", placement]) == 0
    # a wrong map must be rejected as a verdict, not a usage error
    assert run(["verify", "--source", src, "--routed", str(out), "--arch", "line:4",
                "--initial-map", "0 0 1 2"]) == 3


def test_verify_detects_tampering(tmp_path):
    src = write_three_gate(tmp_path)
    out = tmp_path / "routed.qasm"
    run(["map", "--input", src, "--arch", "line:4", "--strategy", "global", "--output", str(out)])
    text = out.read_text().replace("swap q[1],q[2];", "swap q[0],q[2];")
    tampered = tmp_path / "tampered.qasm"
    tampered.write_text(text)
    assert run(["verify", "--source", src, "--routed", str(tampered), "--arch", "line:4"]) == 3


def test_map_sliced_stats_carry_size_runs(tmp_path):
    src = write_three_gate(tmp_path)
    stats = tmp_path / "stats.json"
    code = run(["map", "--input", src, "--arch", "line:4", "--strategy", "sliced",
                "--slice-size", "1,2,3", "--output", str(tmp_path / "r.qasm"), "--stats", str(stats)])
    assert code == 0
    record = json.loads(stats.read_text())
    assert record["selected_slice_size"] in (1, 2, 3)
    assert {r["slice_size"] for r in record["size_runs"]} == {1, 2, 3}
    assert record["status"] == "best_effort"


def test_map_cyclic_strategy(tmp_path):
    qasm = tmp_path / "qaoa.qasm"
    assert run(["gen-qaoa", "--qubits", "4", "--cycles", "2", "--seed", "3", "--output", str(qasm)]) == 0
    stats = tmp_path / "stats.json"
    code = run(["map", "--input", str(qasm), "--arch", "line:4", "--strategy", "cyclic",
                "--cyclic-block-slots", "12", "--output", str(tmp_path / "r.qasm"), "--stats", str(stats)])
    assert code == 0
    record = json.loads(stats.read_text())
    assert record["swap_count"] % 2 == 0  # identical copies, identical cost


def test_map_cyclic_with_sliced_block(tmp_path):
    qasm = tmp_path / "qaoa6.qasm"
    assert run(["gen-qaoa", "--qubits", "6", "--cycles", "2", "--seed", "7", "--output", str(qasm)]) == 0
    out = tmp_path / "routed.qasm"
    code = run(["map", "--input", str(qasm), "--arch", "grid:2x3", "--strategy", "cyclic",
                "--cyclic-block-slots", "18", "--slice-size", "6", "--budget", "60",
                "--output", str(out)])
    assert code == 0
    assert run(["verify", "--source", str(qasm), "--routed", str(out), "--arch", "grid:2x3"]) == 0


def test_map_cyclic_requires_block_flag(tmp_path):
    src = write_three_gate(tmp_path)
    assert run(["map", "--input", src, "--arch", "line:4", "--strategy", "cyclic"]) == 1


def test_map_rejects_non_cyclic_block_split(tmp_path):
    src = write_three_gate(tmp_path)
    code = run(["map", "--input", src, "--arch", "line:4", "--strategy", "cyclic", "--cyclic-block-slots", "1"])
    assert code == 1


def test_map_deterministic_output(tmp_path):
    src = write_three_gate(tmp_path)
    a, b = tmp_path / "a.qasm", tmp_path / "b.qasm"
    run(["map", "--input", src, "--arch", "line:4", "--strategy", "sliced", "--slice-size", "2", "--output", str(a)])
    run(["map", "--input", src, "--arch", "line:4", "--strategy", "sliced", "--slice-size", "2", "--output", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_map_decompose_swaps(tmp_path):
    src = write_three_gate(tmp_path)
    out = tmp_path / "routed.qasm"
    run(["map", "--input", src, "--arch", "line:4", "--strategy", "global", "--decompose-swaps", "--output", str(out)])
    text = out.read_text()
    assert "swap" not in text.replace("// initial_map:", "")
    assert text.count("cx") == 3 + 3  # three source CNOTs plus one decomposed swap


def test_map_external_solver(tmp_path):
    src = write_three_gate(tmp_path)
    stats = tmp_path / "stats.json"
    solver = f"cmd:{sys.executable} {STUB} ok {{wcnf}}"
    code = run(["map", "--input", src, "--arch", "line:4", "--strategy", "global",
                "--solver", solver, "--output", str(tmp_path / "r.qasm"), "--stats", str(stats)])
    assert code == 0
    assert json.loads(stats.read_text())["swap_count"] == 1


def test_map_external_unsat_exits_3(tmp_path):
    src = write_three_gate(tmp_path)
    solver = f"cmd:{sys.executable} {STUB} unsat {{wcnf}}"
    code = run(["map", "--input", src, "--arch", "line:4", "--strategy", "global", "--solver", solver])
    assert code == 3


def test_map_timeout_exits_2(tmp_path):
    qasm = tmp_path / "qaoa6.qasm"
    run(["gen-qaoa", "--qubits", "6", "--cycles", "1", "--seed", "7", "--output", str(qasm)])
    code = run(["map", "--input", qasm.as_posix(), "--arch", "line:6", "--strategy", "cyclic",
                "--cyclic-block-slots", "18", "--budget", "0.3"])
    assert code == 2


def test_map_usage_error_exits_1(tmp_path):
    assert run(["map", "--input", "/nonexistent.qasm", "--arch", "line:4"]) == 1
    src = write_three_gate(tmp_path)
    assert run(["map", "--input", src, "--arch", "not_an_arch"]) == 1
    assert run(["map", "--input", src, "--arch", "line:4", "--solver", "magic"]) == 1


def test_emit_wcnf(tmp_path):
    src = write_three_gate(tmp_path)
    out = tmp_path / "inst.wcnf"
    assert run(["emit-wcnf", "--input", src, "--arch", "line:2"]) == 1  # too few physical qubits
    assert run(["emit-wcnf", "--input", src, "--arch", "line:4", "--output", str(out)]) == 0
    assert out.read_text().startswith("p wcnf ")


def test_arch_subcommand_round_trips(tmp_path):
    out = tmp_path / "tokyo.arch"
    assert run(["arch", "--name", "tokyo", "--output", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("n 20\n")
    from swaproute.arch import load_arch

    assert load_arch(str(out)) == load_arch("tokyo")


def test_gen_qaoa_stdout(capsys):
    assert run(["gen-qaoa", "--qubits", "4", "--cycles", "1", "--seed", "0"]) == 0
    assert "OPENQASM 2.0;" in capsys.readouterr().out


def test_noise_flag_weighted_mode(tmp_path):
    src = write_three_gate(tmp_path)
    noise = tmp_path / "noise.json"
    records = [{"edge": [u, v], "cx": 0.99} for u, v in [(0, 1), (1, 2), (2, 3)]]
    noise.write_text(json.dumps(records))
    stats = tmp_path / "stats.json"
    code = run(["map", "--input", src, "--arch", "line:4", "--strategy", "global",
                "--noise", str(noise), "--output", str(tmp_path / "r.qasm"), "--stats", str(stats)])
    assert code == 0
    record = json.loads(stats.read_text())
    assert record["weighted_objective"] is not None
    assert record["swap_count"] == 1
