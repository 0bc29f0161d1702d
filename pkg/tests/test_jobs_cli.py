from __future__ import annotations

import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from copoly import QQ, Zmod, delta, exp_family, from_moments
from copoly import diffop
from copoly.cli import main, regression_suite, run_file
from copoly.jobs import Resolver, dump, run_job

import golden_gen

GOLDEN = Path(__file__).parent / "golden"


def job(**kw):
    base = {"ring": "rat", "degree": 3}
    base.update(kw)
    return base


def rows(result):
    assert result.exit_code == 0, result.text
    return json.loads(result.text)


def test_golden_files_are_current(tmp_path):
    golden_gen.write(tmp_path)
    fresh = sorted(p.name for p in tmp_path.iterdir())
    assert fresh == sorted(p.name for p in GOLDEN.iterdir())
    for name in fresh:
        assert (tmp_path / name).read_text() == (GOLDEN / name).read_text(), name


def test_regression_suite_passes():
    outcomes = regression_suite(GOLDEN)
    assert outcomes and all(o.passed for o in outcomes), [o for o in outcomes if not o.passed]


def test_tampered_golden_is_reported(tmp_path):
    d = tmp_path / "golden"
    shutil.copytree(GOLDEN, d)
    out = d / "helmholtz_c1_n3.out"
    out.write_text(out.read_text().replace('"-2"', '"-3"', 1))
    (d / "hilb_int.exit").write_text("2\n")
    (d / "orphan.json").write_text("{}")
    failed = {o.name: o.detail for o in regression_suite(d) if not o.passed}
    assert set(failed) == {"helmholtz_c1_n3", "hilb_int", "orphan"}
    assert "differs" in failed["helmholtz_c1_n3"]


def test_spec_examples():
    r = rows(run_job(job(command="fundamental", degree=4,
                         operator={"op_family": "helmholtz", "params": {"c": "1", "n": 3}})))
    assert {"alpha": [2, 0, 0], "value": "-2"} in r
    r = rows(run_job(job(command="cauchy_fundamental", kmax=2, degree=4,
                         operator={"op_family": "laplacian", "params": {"n": 1}})))
    assert {"alpha": [4], "k": 2, "value": "12"} in r
    bad = run_job(job(ring="int", command="cauchy", kmax=3,
                      operator={"op": [{"alpha": [0], "a": "1"}]}, initial={"kind": "delta"}))
    assert bad.exit_code == 2
    payload = json.loads(bad.text)
    assert payload["k"] == 2 and payload["alpha"] == [0]


@pytest.mark.parametrize("data, code", [
    ({"ring": "rat", "command": "nope"}, 1),
    ({"ring": "real", "command": "moments"}, 1),
    (job(command="moments", copolynomial="missing"), 1),
    (job(command="moments", degree=-1, copolynomial={"kind": "delta"}), 1),
    (job(command="moments", copolynomial={"kind": "delta"}, output="xml"), 1),
    (job(command="moments", objects={"A": "B", "B": "A"}, copolynomial="A"), 1),
    (job(command="apply_op", operator={"kind": "delta"}, copolynomial={"kind": "delta"}), 1),
    (job(command="fundamental", ring="int", operator={"op": [{"alpha": [0], "a": "2"}]}), 3),
    (job(command="laplace", ring="int", copolynomial={"kind": "delta"}), 3),
    (job(command="cauchy", ring="mod", m=2, kmax=2,
         operator={"op": [{"alpha": [2], "a": "1"}]}, initial={"kind": "delta"}), 3),
    (job(command="parseval", degree=1, copolynomial={"kind": "delta"},
         polynomial=[{"alpha": [3], "c": "1"}]), 4),
    (job(command="convolve", left={"kind": "delta", "n": 1}, right={"kind": "delta", "n": 2}), 1),
    ([1, 2], 1),
])
def test_exit_codes(data, code):
    result = run_job(data)
    assert result.exit_code == code, result.text
    assert "error" in json.loads(result.text)


def test_composite_modulus_env(tmp_path, monkeypatch):
    path = tmp_path / "j.json"
    path.write_text(json.dumps(job(ring={"ring": "mod", "m": 6}, command="moments",
                                   copolynomial={"kind": "exp_family", "a": "5"})))
    monkeypatch.delenv("COPOLY_UNSAFE_RINGS", raising=False)
    assert run_file(path).exit_code == 1
    monkeypatch.setenv("COPOLY_UNSAFE_RINGS", "1")
    assert [r["value"] for r in rows(run_file(path))] == ["1", "5", "2", "0"]


def test_overrides_and_tsv():
    data = job(command="moments", copolynomial={"kind": "exp_family", "a": "2"})
    assert len(rows(run_job(data, degree=5))) == 6
    text = run_job(data, output="tsv").text
    assert text.splitlines() == ["alpha\tk\tvalue", "0\t-\t1", "1\t-\t2", "2\t-\t8", "3\t-\t48"]
    text = run_job(job(command="cauchy", kmax=1, degree=1, operator={"op": [{"alpha": [1, 0], "a": "1"}]},
                       initial={"kind": "delta", "n": 2}), output="tsv").text
    assert text.splitlines()[1:3] == ["0 0\t0\t1", "0 1\t0\t0"]


def test_every_command_runs():
    F = {"op": [{"alpha": [0], "a": "1"}, {"alpha": [2], "a": "1"}]}
    d = {"kind": "delta"}
    cases = [
        job(command="moments", copolynomial=d),
        job(command="convolve", left=d, right={"kind": "exp_family", "a": "1"}),
        job(command="apply_op", operator=F, copolynomial=d),
        job(command="fundamental", operator=F),
        job(command="solve", operator=F, rhs={"kind": "exp_family", "a": "3"}),
        job(command="laplace", copolynomial=d),
        job(command="parseval", copolynomial=d, polynomial=[{"alpha": [2], "c": "3"}]),
        job(command="cauchy", kmax=2, operator=F, initial=d),
        job(command="cauchy_fundamental", kmax=2, operator=F),
        job(command="inhomogeneous_heat", kmax=2, a="1/2", source=d),
        job(command="connections", kmax=3, degree=4, operator=F),
    ]
    for data in cases:
        result = run_job(data)
        assert result.exit_code == 0, (data["command"], result.text)
    report = json.loads(run_job(cases[-1]).text)
    assert report["passed"] is True


def test_solve_job_satisfies_equation():
    F = diffop.from_terms(QQ, 1, {(0,): 1, (2,): 1})
    rhs = exp_family(QQ, 3)
    sol = rows(run_job(job(command="solve", degree=5, operator=dump(F), rhs=dump(rhs))))
    u = from_moments(QQ, 1, {tuple(r["alpha"]): r["value"] for r in sol})
    assert F.apply(u).equal_up_to(rhs, 3)


def test_literal_roundtrip():
    r = Resolver(QQ)
    T = delta(QQ, 2).shift(["1/2", "3"]).scaled_derivative((1, 0)).convolve(
        delta(QQ, 2).derivative((0, 2))).scale(5) - delta(QQ, 2)
    lit = dump(T)
    back = r.build(json.loads(json.dumps(lit)))
    assert back.equal_up_to(T, 5)
    assert dump(back) == lit
    E = exp_family(QQ, "2/3").tensor(exp_family(QQ, 1))
    assert r.build(dump(E)).equal_up_to(E, 5)
    for F in (diffop.helmholtz(QQ, 2, 2), diffop.heat(QQ, 1, 3), diffop.transport(QQ, [1, 2]),
              diffop.mixed_xt(QQ), diffop.neumann_sum(QQ, 2), diffop.laplacian(QQ, 3, 5),
              diffop.directional(QQ, [4]), diffop.from_terms(QQ, 2, {(1, 1): "1/3", (0, 0): 2})):
        G = r.build(json.loads(json.dumps(dump(F))))
        T = delta(QQ, F.n).shift([1] * F.n)
        assert F.apply(T).equal_up_to(G.apply(T), 4)
        assert dump(G) == dump(F)


def test_ring_elements_over_modular_ring():
    r = Resolver(Zmod(5))
    assert r.build({"kind": "exp_family", "a": "1/2"}).moment((1,)) == 3


def test_determinism():
    path = GOLDEN / "transport_s12.json"
    outs = {run_file(path).text for _ in range(3)}
    assert len(outs) == 1


def test_cli_main(capsys):
    assert main(["run", str(GOLDEN / "helmholtz_c1_n3.json"), "--degree", "2"]) == 0
    out = capsys.readouterr().out
    assert '{"alpha": [2, 0, 0], "value": "-2"}' in out
    assert main(["run", str(GOLDEN / "example72_int.json")]) == 2
    err = capsys.readouterr().err
    assert json.loads(err)["k"] == 2
    assert main(["suite", str(GOLDEN)]) == 0
    assert "golden jobs passed" in capsys.readouterr().out


def test_cli_missing_file(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["run", str(bad)]) == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "copoly", "run", str(GOLDEN / "hilb_int.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "hilb_int.out").read_text()
