"""End-to-end command line checks: documents, exit codes, determinism.

Every invocation goes through a real subprocess so the exit-code
contract is exercised exactly as a shell would see it.
"""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from qberry.operators import quadrupole_ops
from qberry.serialize import canonical_dumps, operator_to_obj, state_to_obj
from qberry.states import quadrupolar_from_axis

E_ZERO = [0.0, 1.0, 0.0]


def run_cli(*argv, env_extra=None, cwd=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "qberry.cli", *argv],
        capture_output=True, text=True, env=env, cwd=cwd)


def write_json(path, obj):
    path.write_text(canonical_dumps(obj))
    return str(path)


@pytest.fixture
def state_file(tmp_path):
    def make(amps, name="state.json"):
        return write_json(tmp_path / name,
                          state_to_obj(np.asarray(amps, dtype=complex)))
    return make


# ---- stars ----

def test_stars_of_middle_basis_state_sit_at_the_poles(state_file):
    res = run_cli("stars", "--input", state_file(E_ZERO))
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["antipodal"] is True
    assert doc["zero_spin"] is True
    thetas = sorted(s["theta"] for s in doc["stars"])
    assert thetas[0] == pytest.approx(0.0, abs=1e-12)
    assert thetas[1] == pytest.approx(np.pi)
    assert set(doc["metadata"]) == {"version", "seed", "config_sha256"}


def test_stars_flags_real_double_root_as_coincident(state_file):
    amps = [0.5, 1.0 / np.sqrt(2.0), 0.5]
    res = run_cli("stars", "--input", state_file(amps))
    doc = json.loads(res.stdout)
    assert doc["coincident"] is True
    assert doc["mirror_pair"] is True
    assert doc["antipodal"] is False


def test_stars_rejects_malformed_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"amps": [[1, 0]]}')
    res = run_cli("stars", "--input", str(bad))
    assert res.returncode == 2
    missing = run_cli("stars", "--input", str(tmp_path / "absent.json"))
    assert missing.returncode == 2


# ---- loop-phase ----

def test_loop_phase_exchange_reports_pi():
    res = run_cli("loop-phase", "--kind", "exchange", "--samples", "400")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    rep = doc["report"]
    assert rep["class"] == "Exchange"
    assert rep["quantized"] == pytest.approx(np.pi)
    assert abs(abs(rep["gamma"]) - np.pi) < 1e-3


def test_loop_phase_individual_reports_zero():
    res = run_cli("loop-phase", "--kind", "individual", "--samples", "400")
    doc = json.loads(res.stdout)
    assert doc["report"]["class"] == "IndividualLoops"
    assert abs(doc["report"]["gamma"]) < 1e-3


def test_loop_phase_three_point_geodesic_gives_minus_one_eighth():
    res = run_cli("loop-phase", "--kind", "geodesic", "--samples", "3")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["bargmann"][0] == pytest.approx(-0.125, abs=1e-12)
    assert doc["bargmann"][1] == pytest.approx(0.0, abs=1e-12)
    assert doc["tracked"] is False


def test_loop_phase_file_kind_needs_input():
    res = run_cli("loop-phase", "--kind", "file")
    assert res.returncode == 2


# ---- spectrum ----

def test_spectrum_equatorial_top_eigenvalue(tmp_path):
    q = quadrupole_ops()
    th = np.pi / 3.0
    h = np.cos(th) * q["x2-y2"] + np.sin(th) * q["xy"]
    path = write_json(tmp_path / "h.json", operator_to_obj(h))
    res = run_cli("spectrum", "--input", path)
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    target = np.sqrt(5.0 + 3.0 * np.cos(2.0 * th)) / (2.0 * np.sqrt(2.0))
    assert doc["eigenvalues"][2] == pytest.approx(target, abs=1e-12)
    assert len(doc["eigenstates"]) == 3
    for e in doc["eigenstates"]:
        assert len(e["stars"]) == 2


def test_spectrum_random_quadrupolar_axes_are_perpendicular(tmp_path):
    rng = np.random.default_rng(5)
    from qberry.operators import quadrupolar_hamiltonian
    keys = ("xy", "yz", "zx", "zz", "x2-y2")
    h = quadrupolar_hamiltonian(
        dict(zip(keys, rng.standard_normal(5))))
    path = write_json(tmp_path / "hq.json", operator_to_obj(h))
    doc = json.loads(run_cli("spectrum", "--input", path).stdout)
    assert len(doc["axis_angles"]) == 3
    for entry in doc["axis_angles"]:
        assert entry["angle"] == pytest.approx(np.pi / 2.0, abs=1e-8)


def test_spectrum_rejects_non_hermitian(tmp_path):
    m = np.zeros((3, 3), dtype=complex)
    m[0, 1] = 1.0
    path = write_json(tmp_path / "nh.json", operator_to_obj(m))
    assert run_cli("spectrum", "--input", path).returncode == 2


# ---- evolve ----

def test_evolve_geodesic_start_summarizes_phase_pi(tmp_path, state_file):
    from qberry.operators import global_unitary
    psi = global_unitary().conj().T @ np.array([1.0, 0.0, 0.0])
    path = write_json(tmp_path / "geo.json", state_to_obj(psi))
    res = run_cli("evolve", "--input", path, "--field", "1,0,0",
                  "--samples", "64")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    s = doc["summary"]
    assert s["aa_phase"] == pytest.approx(np.pi)
    assert s["classification"] == "Exchange"
    assert doc["residual_max"] < 1e-12
    assert len(doc["trajectory"]) == 65


def test_evolve_generic_start_summarizes_phase_zero(tmp_path):
    from qberry.operators import global_unitary
    r = np.array([1.0, 0.0, 1.5])
    r /= np.linalg.norm(r)
    psi = global_unitary().conj().T @ r
    path = write_json(tmp_path / "gen.json", state_to_obj(psi))
    doc = json.loads(run_cli("evolve", "--input", path, "--field", "1,0,0",
                             "--samples", "32").stdout)
    assert doc["summary"]["aa_phase"] == pytest.approx(0.0, abs=1e-9)
    assert doc["summary"]["classification"] == "IndividualLoops"


def test_evolve_quadrupole_drive_reports_residual_and_exits_4(tmp_path):
    doc_in = {"state": state_to_obj(quadrupolar_from_axis([1.0, 0.0, 0.0])),
              "operator": operator_to_obj(quadrupole_ops()["xy"])}
    path = write_json(tmp_path / "drive.json", doc_in)
    out = tmp_path / "traj.json"
    res = run_cli("evolve", "--input", path, "--require-quadrupolar",
                  "--samples", "32", "--output", str(out))
    assert res.returncode == 4
    doc = json.loads(out.read_text())
    assert doc["residual_max"] > 1e-2
    assert doc["zero_spin_preserved"] is False
    # without the flag the same run reports and exits cleanly
    assert run_cli("evolve", "--input", path,
                   "--samples", "32").returncode == 0


def test_evolve_rejects_unnormalized_state(tmp_path):
    path = write_json(tmp_path / "un.json",
                      {"amps": [[1.0, 0.0], [1.0, 0.0], [0.0, 0.0]]})
    res = run_cli("evolve", "--input", path, "--field", "1,0,0")
    assert res.returncode == 2


def test_evolve_csv_has_metadata_comments_and_header(tmp_path, state_file):
    path = state_file(E_ZERO)
    res = run_cli("evolve", "--input", path, "--field", "0,0,1",
                  "--samples", "8", "--format", "csv")
    assert res.returncode == 0
    lines = res.stdout.splitlines()
    assert lines[0].startswith("# version=")
    header = next(l for l in lines if not l.startswith("#"))
    assert header.split(",")[:2] == ["tau", "re_plus"]
    data = [l for l in lines if not l.startswith("#")][1:]
    assert len(data) == 9


# ---- morph ----

def test_morph_writes_sorted_per_alpha_files(tmp_path):
    outdir = tmp_path / "sweep"
    res = run_cli("morph", "--alpha", "1,0,0.99", "--output", str(outdir))
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    alphas = [r["alpha"] for r in doc["results"]]
    assert alphas == [0.0, 0.99, 1.0]
    classes = {r["alpha"]: r["classification"] for r in doc["results"]}
    assert classes[0.0] == "Exchange"
    assert classes[0.99] == "Exchange"
    assert classes[1.0] == "IndividualLoops"
    for r in doc["results"]:
        per_alpha = json.loads((outdir / os.path.basename(r["file"]))
                               .read_text())
        assert per_alpha["classification"] == r["classification"]
        assert len(per_alpha["trajectory"]) == per_alpha["samples"] + 1


def test_morph_rejects_alpha_outside_unit_interval(tmp_path):
    res = run_cli("morph", "--alpha", "1.5", "--output", str(tmp_path / "x"))
    assert res.returncode == 2


def test_morph_coarse_sampling_exits_3(tmp_path):
    res = run_cli("morph", "--alpha", "1", "--samples", "1024",
                  "--output", str(tmp_path / "x"))
    assert res.returncode == 3


# ---- verify ----

def test_verify_single_criterion_suite_passes_and_reruns_identically():
    first = run_cli("verify", "--suite", "morph", "--seed", "7")
    second = run_cli("verify", "--suite", "morph", "--seed", "7")
    assert first.returncode == 0
    assert first.stdout == second.stdout  # byte-identical report
    doc = json.loads(first.stdout)
    assert doc["passed"] is True
    crit = doc["criteria"][0]
    assert crit["passed"] is True
    for chk in crit["checks"].values():
        assert chk["measured"] <= chk["bound"]
    assert "[11] pass" in first.stderr


def test_verify_rejects_unknown_suite():
    assert run_cli("verify", "--suite", "bogus").returncode == 2


# ---- shared plumbing ----

def test_env_var_overrides_default_samples():
    res = run_cli("loop-phase", "--kind", "geodesic",
                  env_extra={"QBERRY_DEFAULT_SAMPLES": "12"})
    assert json.loads(res.stdout)["samples"] == 12


def test_explicit_samples_beat_the_env_var():
    res = run_cli("loop-phase", "--kind", "geodesic", "--samples", "6",
                  env_extra={"QBERRY_DEFAULT_SAMPLES": "12"})
    assert json.loads(res.stdout)["samples"] == 6


def test_output_file_matches_stdout_document(tmp_path, state_file):
    path = state_file(E_ZERO)
    piped = json.loads(run_cli("stars", "--input", path).stdout)
    out = tmp_path / "doc.json"
    written = run_cli("stars", "--input", path, "--output", str(out))
    assert written.returncode == 0
    assert written.stdout == ""
    filed = json.loads(out.read_text())
    # the destination is part of the configuration, so only the hash moves
    assert filed["metadata"]["config_sha256"] != (
        piped["metadata"]["config_sha256"])
    filed["metadata"].pop("config_sha256")
    piped["metadata"].pop("config_sha256")
    assert filed == piped


def test_seed_lands_in_metadata_and_changes_the_hash():
    a = json.loads(run_cli("loop-phase", "--kind", "exchange",
                           "--samples", "64", "--seed", "1").stdout)
    b = json.loads(run_cli("loop-phase", "--kind", "exchange",
                           "--samples", "64", "--seed", "2").stdout)
    assert a["metadata"]["seed"] == 1
    assert b["metadata"]["seed"] == 2
    assert a["metadata"]["config_sha256"] != b["metadata"]["config_sha256"]
