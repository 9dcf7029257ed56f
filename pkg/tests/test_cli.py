"""Tests for the command-line interface: schemas, determinism, exit codes."""

import json

import pytest

from mystica.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_group_text_output(capsys):
    code, out, _ = run(capsys, "group", "--m", "1", "--p", "1", "--n", "3")
    assert code == 0
    assert out.startswith("G(1,1,3)  order 6")
    assert out.count("* (") >= 5  # permutation cycle text


def test_group_json_schema(capsys):
    code, out, _ = run(capsys, "group", "--m", "2", "--p", "2", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["group"] == {"kind": "G", "m": 2, "p": 2, "n": 2}
    assert data["order"] == 4
    assert {"n": 2, "N": 4, "perm": [1, 2], "exp": [0, 0]} in data["elements"]


def test_w_group_via_cprime(capsys):
    code, out, _ = run(capsys, "group", "--m", "2", "--cprime", "1", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["group"] == {"kind": "W", "m": 2, "cprime": 1, "n": 2}
    assert data["order"] == 4


def test_mu_json(capsys):
    code, out, _ = run(capsys, "mu", "--m", "2", "--p", "2", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["label"] == "W(2,1,2)"
    assert data["order"] == 4


def test_equiv_text_and_exit(capsys):
    code, out, _ = run(capsys, "equiv", "--m", "2", "--p", "2", "--n", "2")
    assert code == 0
    assert out.strip().endswith("VERDICT: equivalent")
    code, out, _ = run(capsys, "equiv", "--m", "2", "--p", "2", "--n", "2", "--format", "json")
    data = json.loads(out)
    assert data["verdict"] is True
    assert data["D"] == 8
    assert data["per_degree"] == [True] * 9


def test_equiv_with_scalar_literal(capsys):
    # the twist carries the counterpart's group sum to the original group sum
    # for every invertible parameter, so equivalence holds at zeta4 as well
    code, out, _ = run(capsys, "equiv", "--m", "2", "--p", "2", "--n", "2", "--c", "zeta4^1")
    assert code == 0
    assert "VERDICT: equivalent" in out
    # the untwisted tag on the counterpart side must fail: distinct subgroups
    # have distinct group sums under a faithful action
    code, out, _ = run(capsys, "equiv", "--m", "2", "--p", "2", "--n", "2", "--c", "0")
    assert code == 1
    assert "VERDICT: not equivalent" in out


def test_invariants_command(capsys):
    code, out, _ = run(capsys, "invariants", "--m", "2", "--p", "2", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["generators_commute"] is True
    assert data["dimensions"]["series"] == data["dimensions"]["untwisted"]
    assert data["dimensions"]["series"] == data["dimensions"]["twisted"]
    assert data["verdict"] is True


def test_iso_command(capsys):
    code, out, _ = run(capsys, "iso", "--m", "2", "--p", "2", "--n", "2")
    assert code == 0
    assert "not isomorphic" in out


def test_thick_command(capsys):
    code, out, _ = run(capsys, "thick", "--m", "2", "--n", "2")
    assert code == 0
    assert "thick subgroups at level 2, rank 2: 3" in out


def test_determinism_identical_bytes(capsys):
    _, first, _ = run(capsys, "thick", "--m", "4", "--n", "2", "--format", "json")
    _, second, _ = run(capsys, "thick", "--m", "4", "--n", "2", "--format", "json")
    assert first == second
    _, first, _ = run(capsys, "group", "--m", "6", "--p", "3", "--n", "2", "--format", "json")
    _, second, _ = run(capsys, "group", "--m", "6", "--p", "3", "--n", "2", "--format", "json")
    assert first == second


def test_usage_errors_exit_two(capsys):
    code, _, err = run(capsys, "group", "--m", "6", "--p", "4", "--n", "2")
    assert code == 2
    assert "must divide" in err
    code, _, _ = run(capsys, "nonsense")
    assert code == 2
    code, _, err = run(capsys, "mu", "--m", "3", "--p", "1", "--n", "2")
    assert code == 2
    assert "even" in err


def test_cap_env_override(capsys, monkeypatch):
    monkeypatch.setenv("MYSTICA_CAP", "10")
    code, _, err = run(capsys, "thick", "--m", "2", "--n", "3")
    assert code == 2
    assert "cap" in err.lower()
    monkeypatch.delenv("MYSTICA_CAP")
    code, _, _ = run(capsys, "thick", "--m", "2", "--n", "3")
    assert code == 0


def test_verify_all_quick_grid(capsys):
    code, out, _ = run(
        capsys,
        "verify-all", "--max-m", "2", "--max-n", "2", "--instances", "50",
    )
    assert code == 0
    assert "failures: 0" in out
    assert "[PASS] orders-grid" in out


def test_verify_all_json_schema(capsys):
    code, out, _ = run(
        capsys,
        "verify-all", "--max-m", "2", "--max-n", "2", "--instances", "20", "--format", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert all(set(entry) >= {"check", "params", "pass"} for entry in data)
    assert all(entry["pass"] is True for entry in data)
