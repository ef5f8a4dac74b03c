import json

import pytest

from netident import Poly
from netident.cli import EXIT_AMBIGUOUS, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT, EXIT_OK, main
from netident.counterexamples import bridge_network, linear_bridge_pair
from netident.netfile import load_network, save_network

TRIANGLE = {
    "nodes": ["1", "2", "3"],
    "edges": [
        {"from": "1", "to": "2", "coeffs": ["0", "1"]},
        {"from": "2", "to": "3", "coeffs": ["1"]},
        {"from": "1", "to": "3", "coeffs": ["1"]},
    ],
}


@pytest.fixture
def triangle_file(tmp_path):
    p = tmp_path / "triangle.json"
    p.write_text(json.dumps(TRIANGLE))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze(capsys, triangle_file):
    code, out, _ = run(capsys, "analyze", triangle_file)
    assert code == EXIT_OK
    assert "sinks: 3" in out and "measure: 3" in out and "sources: 1" in out


def test_analyze_path_general(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"nodes": ["a", "b", "c"], "edges": [
        {"from": "a", "to": "b", "coeffs": ["1"], "a0": "1"}, {"from": "b", "to": "c", "coeffs": ["0", "1"]}]}))
    code, out, _ = run(capsys, "analyze", str(p))
    assert code == EXIT_OK
    assert "class: general" in out and "measure: b, c" in out and "sufficient: yes" in out


def test_identify_pass(capsys, triangle_file):
    code, out, _ = run(capsys, "identify", triangle_file, "--seed", "1")
    assert code == EXIT_OK
    assert out.count("PASS") == 4 and "result: PASS" in out


def test_identify_canonical(capsys, triangle_file):
    code, out, _ = run(capsys, "identify", triangle_file, "--canonical")
    assert code == EXIT_OK and "verification: canonical" in out


def test_identify_linear_bridge_is_ambiguous(capsys, tmp_path):
    p = tmp_path / "lin.json"
    save_network(linear_bridge_pair(1, 2, 3, 4).net_a, p)
    code, out, _ = run(capsys, "identify", str(p))
    assert code == EXIT_AMBIGUOUS and "AMBIGUOUS" in out


def test_identify_unmeasured_sink(capsys, triangle_file):
    code, out, _ = run(capsys, "identify", triangle_file, "--measure", "2")
    assert code == EXIT_AMBIGUOUS


def test_identify_term_cap(capsys, triangle_file, monkeypatch):
    monkeypatch.setenv("NETIDENT_TERM_CAP", "2")
    code, _, err = run(capsys, "identify", triangle_file, "--canonical")
    assert code == EXIT_LIMIT and "more than 2 terms" in err


def test_cycle_is_input_error(capsys, tmp_path):
    p = tmp_path / "cyc.json"
    p.write_text(json.dumps({"nodes": ["a", "b"], "edges": [
        {"from": "a", "to": "b", "coeffs": ["1"]}, {"from": "b", "to": "a", "coeffs": ["1"]}]}))
    code, _, err = run(capsys, "analyze", str(p))
    assert code == EXIT_INPUT and "cycle" in err.lower()


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "export-dot", str(tmp_path / "nope.json"))
    assert code == EXIT_INPUT


def test_bad_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("[")
    assert run(capsys, "identify", str(p))[0] == EXIT_INPUT


def test_simulate_impulse_with_check(capsys, triangle_file, tmp_path):
    out_csv = tmp_path / "traj.csv"
    code, _, err = run(capsys, "simulate", triangle_file, "--horizon", "6", "--impulse", "1", "--check", "-o", str(out_csv))
    assert code == EXIT_OK
    assert err.count("PASS") == 3
    rows = out_csv.read_text().splitlines()
    assert rows[0] == "t,node,u,y"
    assert len(rows) == 1 + 7 * 3
    # impulse at node 1, t=0: y2 = f21(1) at t=2, y3 = f31(1) + f32(0) at t=2
    assert "2,2,0,1" in rows and "2,3,0,1" in rows


def test_simulate_input_csv(capsys, triangle_file, tmp_path):
    u = tmp_path / "u.csv"
    u.write_text("t,node,u\n0,1,2\n1,2,1/2\n")
    code, out, _ = run(capsys, "simulate", triangle_file, "--horizon", "4", "--input", str(u))
    assert code == EXIT_OK
    # y2[2] = f21(y1[1]) + u2[1] = 2^2 + 1/2
    assert "2,2,0,9/2" in out.splitlines()


def test_simulate_needs_source(capsys, triangle_file):
    assert run(capsys, "simulate", triangle_file, "--horizon", "3")[0] == EXIT_INPUT


def test_witness_gauge_default(capsys):
    code, out, _ = run(capsys, "witness", "--kind", "gauge", "--gamma", "1/2")
    assert code == EXIT_OK and "verified: yes" in out


def test_witness_gauge_from_file(capsys, tmp_path):
    p = tmp_path / "path.json"
    p.write_text(json.dumps({"nodes": ["a", "b", "c", "d"], "edges": [
        {"from": "a", "to": "b", "coeffs": ["1", "1"]},
        {"from": "b", "to": "c", "coeffs": ["0", "0", "1"]},
        {"from": "c", "to": "d", "coeffs": ["2"]}]}))
    code, out, _ = run(capsys, "witness", "--kind", "gauge", "--file", str(p), "--node", "c", "--gamma", "-1")
    assert code == EXIT_OK and "edge b -> c:" in out and "edge c -> d:" in out


def test_witness_gauge_rejects_endpoint(capsys):
    assert run(capsys, "witness", "--kind", "gauge", "--node", "1")[0] == EXIT_INPUT


def test_witness_linear_bridge_out_dir(capsys, tmp_path):
    code, out, _ = run(capsys, "witness", "--kind", "linear-bridge", "--alpha", "2", "--beta", "1",
                       "--gamma-c", "1", "--delta", "3", "--out-dir", str(tmp_path / "w"))
    assert code == EXIT_OK and "verified: yes" in out
    a, b = load_network(tmp_path / "w" / "net_a.json"), load_network(tmp_path / "w" / "net_b.json")
    assert a != b and a.graph == b.graph


def test_witness_linear_bridge_rejects_zero(capsys):
    assert run(capsys, "witness", "--kind", "linear-bridge", "--alpha", "0")[0] == EXIT_INPUT


def test_check_lemmas(capsys):
    code, out, _ = run(capsys, "check-lemmas", "--instances", "60", "--seed", "3")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "overall: PASS"
    assert "linear counterexample: verified" in out


def test_export_dot(capsys, tmp_path):
    p = tmp_path / "bridge.json"
    x2 = Poly([0, 1, 1])
    save_network(bridge_network(x2, x2, x2, x2), p)
    code, out, _ = run(capsys, "export-dot", str(p))
    assert code == EXIT_OK
    assert out.startswith('digraph "bridge"') and out.count("->") == 4


def test_bad_subcommand():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
