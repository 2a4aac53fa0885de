import json
import math
import os
import random
import subprocess
from fractions import Fraction
from pathlib import Path

import pytest

import ctxbounds as cb

DATA = Path(os.environ.get("CTXBOUNDS_DATA", Path(__file__).resolve().parents[2] / "data"))
CLI = os.environ.get("CTXBOUNDS_CLI")


def test_pentagon_bounds():
    h = cb.instance("pentagon")
    value, witness = cb.beta_classical(h)
    assert value == Fraction(2)
    assert witness == ["0", "2"]
    g = cb.beta_general(h)
    assert g["value"] == Fraction(5, 2)
    assert g["witness"] == [Fraction(1, 2)] * 5
    q = cb.beta_quantum(h)
    assert q["certified"]
    assert abs(q["value"] - math.sqrt(5)) < 1e-6
    assert abs(cb.critical_epsilon(h, q["value"]) - (math.sqrt(5) - 2) / 5) < 1e-6
    assert cb.robust_bound(h, Fraction(1, 100)) == Fraction(41, 20)
    assert cb.robust_bound(h, "1/100") == Fraction(41, 20)
    with pytest.raises(TypeError):
        cb.robust_bound(h, 0.01)


def test_hypergraph_roundtrip_and_errors():
    h = cb.make_hypergraph("w", ["a", "b", "c"], [["a", "b"], ["b", "c"]], [Fraction(1, 3), 2, "5/4"])
    assert h.weights == [Fraction(1, 3), Fraction(2), Fraction(5, 4)]
    assert h.multiplicities == [1, 2, 1]
    assert h.penalty_slope == Fraction(2)
    assert cb.parse_hypergraph(h.to_json()) == h
    with pytest.raises(cb.ParseError):
        cb.parse_hypergraph('{"name":"x","outcomes":["a"],"contexts":[["a","z"]]}')
    ok, findings = cb.validate(cb.make_hypergraph("iso", ["a", "b"], [["a"]]))
    assert ok and findings[0]["severity"] == "warning"


def test_peres_and_models():
    h = cb.instance("mp24")
    assert len(h.outcomes) == 24 and len(h.contexts) == 24
    assert cb.beta_classical(h)[0] == 5
    ok, findings, best = cb.verify_quantum(h, cb.quantum_model("mp24"))
    assert ok and not findings
    assert abs(best - 6) < 1e-9
    assert cb.quantum_model("cycle7") is None


def test_onc_generator_and_verification():
    h = cb.instance("pentagon")
    model = cb.sample_onc(h, Fraction(1, 20), seed=42, size=1000)
    assert model == cb.sample_onc(h, Fraction(1, 20), seed=42, size=1000)
    report = cb.verify_onc(h, model)
    assert report["feasible"] and report["collapse_bound_holds"] and report["collapsed_noncontextual"]
    assert report["epsilon_max"] <= Fraction(1, 10)
    assert report["weighted_sum"] <= report["robust_bound"]


def test_analyze_data_files():
    r = cb.analyze(DATA / "pentagon.json", target="qu", epsilon="1/100")
    assert r["beta_cl"]["rational"] == "2"
    assert r["beta_g"]["rational"] == "5/2"
    assert abs(r["critical_epsilon"]["value"] - 0.0472136) < 1e-6
    assert r["robust_bound"]["bound"]["rational"] == "41/20"
    single = cb.analyze(DATA / "single_context.json")
    assert single["beta_cl"]["rational"] == "1" and single["beta_g"]["rational"] == "1"
    assert abs(single["beta_qu"]["value"] - 1) < 1e-6


def theta_cvxpy(h):
    cvxpy = pytest.importorskip("cvxpy")
    n = len(h.outcomes)
    w = [math.sqrt(float(x)) for x in h.weights]
    b = cvxpy.Variable((n, n), symmetric=True)
    cons = [b >> 0, cvxpy.trace(b) == 1]
    cons += [b[i, j] == 0 for i, j in cb.exclusivity_edges(h)]
    obj = cvxpy.Maximize(sum(w[i] * w[j] * b[i, j] for i in range(n) for j in range(n)))
    prob = cvxpy.Problem(obj, cons)
    solver = "CLARABEL" if "CLARABEL" in cvxpy.installed_solvers() else "SCS"
    prob.solve(solver=solver)
    return prob.value


def test_theta_against_cvxpy():
    rng = random.Random(5)
    for trial in range(6):
        n = rng.randint(3, 9)
        ids = [f"v{i}" for i in range(n)]
        contexts = [rng.sample(ids, rng.randint(1, 3)) for _ in range(n)]
        weights = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(n)]
        h = cb.make_hypergraph("r", ids, contexts, weights)
        q = cb.beta_quantum(h)
        assert q["certified"]
        assert abs(q["value"] - theta_cvxpy(h)) < 1e-5


@pytest.mark.skipif(CLI is None, reason="CLI path not provided")
def test_cli_seed_fallback(tmp_path):
    args = [CLI, "simulate", str(DATA / "pentagon.json"), "--epsilon", "1/50", "--trials", "5", "--format", "json"]
    env = dict(os.environ, CTXBOUNDS_SEED="17")
    from_env = subprocess.run(args, env=env, capture_output=True, text=True, check=True).stdout
    from_flag = subprocess.run(args + ["--seed", "17"], capture_output=True, text=True, check=True).stdout
    other = subprocess.run(args + ["--seed", "18"], capture_output=True, text=True, check=True).stdout
    assert from_env == from_flag != other
    assert json.loads(from_env)["seed"] == 17

    bad = subprocess.run([CLI, "analyze", str(tmp_path / "missing.json")], capture_output=True, text=True)
    assert bad.returncode == 1
    out = tmp_path / "lib"
    subprocess.run([CLI, "instances", "emit", "mp24", "--out", str(out)], check=True, capture_output=True)
    assert (out / "mp24.json").exists() and (out / "mp24.quantum.json").exists()
    vq = subprocess.run([CLI, "verify-quantum", str(out / "mp24.json"), str(out / "mp24.quantum.json")],
                        capture_output=True, text=True)
    assert vq.returncode == 0 and "PASS" in vq.stdout
