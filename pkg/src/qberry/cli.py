"""Command line front end: JSON in, JSON or CSV out.

Every run emits one document carrying a metadata block (package
version, seed, sha256 of the resolved configuration), so repeating an
invocation with the same configuration gives byte-identical output.
Commands only produce plot-ready data; nothing here renders.

Exit codes: 0 success, 1 verification failure, 2 bad input,
3 numerical inconsistency, 4 physics assertion failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys

import numpy as np

from . import __version__
from .berry import (
    bargmann_invariant,
    classify_and_verify,
    discrete_geometric_phase,
    exchange_loop,
    geodesic_loop,
    individual_loop,
    morph_loop,
    track_stars,
)
from .dynamics import SpinFieldReal, aa_cycle, field_generator_standard
from .errors import (
    InputError,
    NotHermitianError,
    NumericalInconsistencyError,
    OutOfRangeError,
    PhysicsError,
    StepTooCoarseError,
)
from .majorana import are_antipodal, mirror_pair_check, stars_from_state
from .numerics import eig_hermitian3, is_hermitian, wrap_pi
from .serialize import (
    canonical_dumps,
    config_hash,
    load_json,
    loop_from_obj,
    operator_from_obj,
    report_to_obj,
    star_to_obj,
    state_from_obj,
    state_to_obj,
)
from .states import (
    is_quadrupolar,
    overlap,
    random_quadrupolar,
    random_real_state,
    spin_expectation,
)
from .verify import SUITES, run_suite

# residual above which a state no longer counts as zero-spin
QUADRUPOLAR_TOL = 1e-9

# --samples default per command when QBERRY_DEFAULT_SAMPLES is unset
_SAMPLES_DEFAULT = {"loop-phase": 400, "evolve": 512, "morph": 4096}

# flags below use a looser tolerance than the physics checks; they
# describe the output, they do not gate it
_FLAG_TOL = 1e-6


# ---- configuration and metadata ----

def _resolve_samples(args) -> int | None:
    default = _SAMPLES_DEFAULT.get(args.command)
    if default is None:
        return None
    if args.samples is not None:
        n = int(args.samples)
    else:
        env = os.environ.get("QBERRY_DEFAULT_SAMPLES")
        if env:
            try:
                n = int(env)
            except ValueError:
                raise InputError(
                    f"QBERRY_DEFAULT_SAMPLES must be an integer, got {env!r}")
        else:
            n = default
    if n < 3:
        raise InputError("need at least 3 samples")
    return n


def _parse_field(text: str) -> list[float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise InputError('--field takes three comma separated numbers "a,b,c"')
    try:
        return [float(x) for x in parts]
    except ValueError as exc:
        raise InputError(f"bad --field value: {exc}") from exc


def _parse_alphas(chunks) -> list[float]:
    vals = []
    for chunk in chunks:
        for piece in chunk.split(","):
            piece = piece.strip()
            if not piece:
                continue
            try:
                vals.append(float(piece))
            except ValueError as exc:
                raise InputError(f"bad --alpha value {piece!r}") from exc
    if not vals:
        raise InputError("--alpha needs at least one value")
    for a in vals:
        if not (np.isfinite(a) and 0.0 <= a <= 1.0):
            raise OutOfRangeError(f"alpha must lie in [0, 1], got {a}")
    # canonical sweep order: sorted, exact duplicates dropped
    return sorted(dict.fromkeys(vals))


def _config(args, samples) -> dict:
    return {
        "command": args.command,
        "input": getattr(args, "input", None),
        "output": getattr(args, "output", None),
        "format": getattr(args, "format", "json"),
        "samples": samples,
        "seed": int(getattr(args, "seed", 0)),
        "kind": getattr(args, "kind", None),
        "alpha": getattr(args, "alphas_resolved", None),
        "theta": getattr(args, "theta", None),
        "field": getattr(args, "field_resolved", None),
        "periods": getattr(args, "periods", None),
        "suite": getattr(args, "suite", None),
        "require_quadrupolar": getattr(args, "require_quadrupolar", None),
    }


def _metadata(cfg: dict) -> dict:
    return {"version": __version__, "seed": cfg["seed"],
            "config_sha256": config_hash(cfg)}


# ---- output formatting ----

def _flatten_rows(val, prefix: str, rows: list) -> None:
    if isinstance(val, dict):
        for k in sorted(val):
            _flatten_rows(val[k], f"{prefix}.{k}" if prefix else str(k), rows)
    elif isinstance(val, (list, tuple)):
        for i, v in enumerate(val):
            _flatten_rows(v, f"{prefix}[{i}]", rows)
    else:
        rows.append((prefix, "" if val is None else val))


def _document_text(out: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical_dumps(out)
    rows: list = []
    _flatten_rows(out, "", rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["key", "value"])
    for key, val in rows:
        w.writerow([key, val])
    return buf.getvalue()


def _comment_block(pairs) -> str:
    return "".join(f"# {k}={v}\n" for k, v in pairs)


def _evolve_csv(out: dict) -> str:
    meta = out["metadata"]
    pairs = [("version", meta["version"]), ("seed", meta["seed"]),
             ("config_sha256", meta["config_sha256"]),
             ("generator", out["generator"]), ("omega", out["omega"]),
             ("periods", out["periods"]), ("samples", out["samples"]),
             ("residual_max", out["residual_max"]),
             ("zero_spin_preserved", out["zero_spin_preserved"])]
    if out["summary"] is not None:
        pairs += [(f"summary_{k}", v) for k, v in sorted(out["summary"].items())]
    buf = io.StringIO()
    buf.write(_comment_block(pairs))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["tau", "re_plus", "im_plus", "re_zero", "im_zero",
                "re_minus", "im_minus", "residual",
                "star1_theta", "star1_phi", "star2_theta", "star2_phi"])
    for row in out["trajectory"]:
        amps = row["state"]
        (t1, p1), (t2, p2) = row["stars"]
        w.writerow([row["tau"],
                    amps[0][0], amps[0][1], amps[1][0], amps[1][1],
                    amps[2][0], amps[2][1], row["residual"],
                    t1, p1, t2, p2])
    return buf.getvalue()


def _morph_csv(doc: dict) -> str:
    meta = doc["metadata"]
    rep = doc["report"]
    pairs = [("version", meta["version"]), ("seed", meta["seed"]),
             ("config_sha256", meta["config_sha256"]),
             ("alpha", doc["alpha"]), ("samples", doc["samples"]),
             ("classification", doc["classification"]),
             ("gamma", rep["gamma"]), ("gamma0", rep["gamma0"]),
             ("gammaC", rep["gammaC"])]
    buf = io.StringIO()
    buf.write(_comment_block(pairs))
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["sample", "theta", "u1x", "u1y", "u1z", "u2x", "u2y", "u2z"])
    for row in doc["trajectory"]:
        u1, u2 = row["star1"], row["star2"]
        w.writerow([row["sample"], row["theta"],
                    u1[0], u1[1], u1[2], u2[0], u2[1], u2[2]])
    return buf.getvalue()


# ---- commands ----

def _cmd_stars(args, meta, n):
    psi = state_from_obj(load_json(args.input))
    ss = stars_from_state(psi)
    u = ss.unit_vectors()
    dot = float(u[0] @ u[1])
    out = {
        "metadata": meta,
        "state": state_to_obj(psi),
        "stars": [star_to_obj(s) for s in ss.stars],
        "unit_vectors": [[float(x) for x in row] for row in u],
        "axis_dot": dot,
        "antipodal": bool(are_antipodal(ss)),
        "coincident": bool(dot >= 1.0 - _FLAG_TOL),
        "mirror_pair": bool(mirror_pair_check(ss)),
        "zero_spin": bool(is_quadrupolar(psi)),
    }
    return out, 0


def _real_pair(rng):
    # reject nearly parallel or antiparallel draws: the closed
    # geodesic through them is then ill conditioned
    while True:
        a = random_real_state(rng)
        b = random_real_state(rng)
        o = abs(overlap(a, b))
        if 1e-3 < o < 1.0 - 1e-3:
            return a, b


def _cmd_loop_phase(args, meta, n):
    rng = np.random.default_rng([args.seed])
    kind = args.kind
    if kind == "file":
        if not args.input:
            raise InputError("--kind file needs --input with a loop object")
        loop = loop_from_obj(load_json(args.input))
    elif kind == "geodesic":
        if args.input:
            obj = load_json(args.input)
            states = obj.get("states") if isinstance(obj, dict) else None
            if not isinstance(states, list) or len(states) < 2:
                raise InputError(
                    'geodesic endpoints: --input must hold {"states": '
                    "[state, state]}")
            a = state_from_obj(states[0])
            b = state_from_obj(states[1])
        else:
            a, b = _real_pair(rng)
        loop = geodesic_loop(a, b, n)
    else:
        if args.input:
            psi = state_from_obj(load_json(args.input))
        else:
            psi = random_quadrupolar(rng)
        if kind == "exchange":
            loop = exchange_loop(psi, n)
        else:
            loop = individual_loop(psi, n)
    binv = complex(bargmann_invariant(loop.states))
    try:
        rep_obj = report_to_obj(classify_and_verify(loop))
        tracked = True
    except StepTooCoarseError:
        # too few samples to follow the stars; the overlap route and
        # the cyclic product are still well defined
        rep_obj = {"gamma": float(discrete_geometric_phase(loop)),
                   "gamma0": None, "gammaC": None,
                   "class": "Untracked", "quantized": None}
        tracked = False
    out = {
        "metadata": meta,
        "kind": kind,
        "samples": int(loop.states.shape[0]),
        "bargmann": [binv.real, binv.imag],
        "tracked": tracked,
        "report": rep_obj,
    }
    return out, 0


def _cmd_spectrum(args, meta, n):
    h = operator_from_obj(load_json(args.input))
    if not is_hermitian(h):
        raise NotHermitianError("spectrum needs a Hermitian operator")
    w, v = eig_hermitian3(h)
    eigenstates = []
    axes = []
    for k in range(3):
        psi = v[:, k]
        ss = stars_from_state(psi)
        u = ss.unit_vectors()
        dot = float(u[0] @ u[1])
        axis = u[0] if abs(dot) >= 1.0 - _FLAG_TOL else None
        axes.append(axis)
        eigenstates.append({
            "eigenvalue": float(w[k]),
            "state": state_to_obj(psi),
            "stars": [star_to_obj(s) for s in ss.stars],
            "zero_spin": bool(is_quadrupolar(psi)),
            "axis": None if axis is None else [float(x) for x in axis],
        })
    angles = []
    for i in range(3):
        for j in range(i + 1, 3):
            if axes[i] is None or axes[j] is None:
                continue
            c = min(1.0, abs(float(axes[i] @ axes[j])))
            angles.append({"pair": [i, j], "angle": float(np.arccos(c))})
    out = {
        "metadata": meta,
        "eigenvalues": [float(x) for x in w],
        "eigenstates": eigenstates,
        "axis_angles": angles,
    }
    return out, 0


def _cmd_evolve(args, meta, n):
    payload = load_json(args.input)
    op = None
    if isinstance(payload, dict) and "state" in payload:
        psi0 = state_from_obj(payload["state"])
        if "operator" in payload:
            op = operator_from_obj(payload["operator"])
    else:
        psi0 = state_from_obj(payload)
    if op is not None and args.field:
        raise InputError(
            "give --field or an operator in the input file, not both")
    periods = float(args.periods)
    if not (np.isfinite(periods) and periods > 0):
        raise InputError("--periods must be positive")

    if op is None:
        if not args.field:
            raise InputError(
                '--field "a,b,c" or an "operator" entry in the input file '
                "is required")
        fa, fb, fc = args.field_resolved
        field = SpinFieldReal(fa, fb, fc)
        h = field_generator_standard(field)
        omega = field.omega
        generator = "field"
    else:
        if not is_hermitian(op):
            raise NotHermitianError("the generator must be Hermitian")
        field = None
        h = op
        w_op, _ = eig_hermitian3(h)
        omega = float(w_op[2] - w_op[0])
        if omega <= 0.0:
            raise InputError(
                "the generator has a flat spectrum; nothing evolves")
        generator = "operator"

    # one "period" is the full spectral cycle 2 pi / omega
    horizon = periods * 2.0 * np.pi / omega
    taus = horizon * np.arange(n + 1) / n
    w, v = eig_hermitian3(h)
    coeff = v.conj().T @ psi0
    states = (v @ (np.exp(-1j * np.outer(w, taus)) * coeff[:, None])).T
    states /= np.linalg.norm(states, axis=1)[:, None]

    rows = []
    residual_max = 0.0
    for t, psi in zip(taus, states):
        res = float(np.max(np.abs(spin_expectation(psi))))
        residual_max = max(residual_max, res)
        ss = stars_from_state(psi)
        rows.append({
            "tau": float(t),
            "state": state_to_obj(psi)["amps"],
            "residual": res,
            "stars": [[float(s.theta), float(s.phi)] for s in ss.stars],
        })

    summary = None
    if generator == "field" and is_quadrupolar(psi0):
        cyc = aa_cycle(field, psi0)
        summary = {
            "stationary": bool(cyc.stationary),
            "cycle_time": float(cyc.cycle_time),
            "total_phase": float(cyc.total_phase),
            "dynamical_phase": float(cyc.dynamical_phase),
            "aa_phase": float(wrap_pi(cyc.total_phase - cyc.dynamical_phase)),
            "classification": cyc.report.classification,
        }

    out = {
        "metadata": meta,
        "generator": generator,
        "omega": float(omega),
        "periods": periods,
        "samples": int(n),
        "residual_max": residual_max,
        "zero_spin_preserved": bool(residual_max <= QUADRUPOLAR_TOL),
        "summary": summary,
        "trajectory": rows,
    }
    code = 4 if (args.require_quadrupolar
                 and residual_max > QUADRUPOLAR_TOL) else 0
    return out, code


def _morph_grid(n: int, theta_offset) -> np.ndarray:
    # matches the sampling rule in morph_loop
    thetas = 2.0 * np.pi * (np.arange(int(n)) + 0.5) / float(n)
    if theta_offset is not None:
        thetas += float(theta_offset) - np.pi / float(n)
    return thetas


def _cmd_morph(args, meta, n):
    if not args.output:
        raise InputError(
            "--output DIR is required: one trajectory file per alpha is "
            "written there")
    os.makedirs(args.output, exist_ok=True)
    thetas = _morph_grid(n, args.theta)
    results = []
    for a in args.alphas_resolved:
        loop = morph_loop(a, n, theta_offset=args.theta)
        traj = track_stars(loop)
        rep = classify_and_verify(loop)
        rep_obj = report_to_obj(rep)
        rows = []
        for k in range(n + 1):
            th = float(thetas[0] + 2.0 * np.pi) if k == n else float(thetas[k])
            rows.append({
                "sample": k,
                "theta": th,
                "star1": [float(x) for x in traj.positions[k, 0]],
                "star2": [float(x) for x in traj.positions[k, 1]],
            })
        doc = {
            "metadata": meta,
            "alpha": float(a),
            "samples": int(n),
            "classification": rep.classification,
            "report": rep_obj,
            "trajectory": rows,
        }
        path = os.path.join(args.output, f"alpha_{a:.6f}.{args.format}")
        text = _morph_csv(doc) if args.format == "csv" else canonical_dumps(doc)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        results.append({
            "alpha": float(a),
            "file": path,
            "classification": rep.classification,
            "gamma": rep_obj["gamma"],
            "gamma0": rep_obj["gamma0"],
            "gammaC": rep_obj["gammaC"],
        })
    out = {
        "metadata": meta,
        "samples": int(n),
        "theta": args.theta,
        "results": results,
    }
    return out, 0


def _cmd_verify(args, meta, n):
    results = run_suite(args.suite, args.seed)
    criteria = []
    for r in results:
        print(r.line(), file=sys.stderr)
        checks = {k: {"measured": float(m), "bound": float(b),
                      "ok": bool(m <= b)}
                  for k, (m, b) in sorted(r.checks.items())}
        criteria.append({"id": r.cid, "name": r.name, "passed": r.passed,
                         "checks": checks, "note": r.note})
    ok = all(r.passed for r in results)
    out = {
        "metadata": meta,
        "suite": args.suite,
        "passed": ok,
        "criteria": criteria,
    }
    return out, 0 if ok else 1


_HANDLERS = {
    "stars": _cmd_stars,
    "loop-phase": _cmd_loop_phase,
    "spectrum": _cmd_spectrum,
    "evolve": _cmd_evolve,
    "morph": _cmd_morph,
    "verify": _cmd_verify,
}


# ---- parser ----

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qberry",
        description="Geometric phases of spin-1 states via their stars: "
                    "star finding, loop phases by two routes, spectra, "
                    "closed-form evolution, and the verification suite.")
    p.add_argument("--version", action="version",
                   version=f"qberry {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, samples=False):
        sp.add_argument("--output", help="write here instead of stdout")
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for any randomized inputs (default 0)")
        if samples:
            sp.add_argument("--samples", type=int, default=None,
                            help="samples per loop or trajectory "
                                 "(QBERRY_DEFAULT_SAMPLES overrides the "
                                 "built-in default)")

    sp = sub.add_parser("stars", help="Majorana stars of one state")
    sp.add_argument("--input", required=True,
                    help='state JSON {"amps": [[re, im], x3]}')
    common(sp)

    sp = sub.add_parser("loop-phase",
                        help="both phase routes for one closed loop")
    sp.add_argument("--kind", required=True,
                    choices=("exchange", "individual", "geodesic", "file"))
    sp.add_argument("--input",
                    help="state JSON (exchange/individual), endpoints "
                         "(geodesic), or loop JSON (file); random from "
                         "--seed when omitted")
    common(sp, samples=True)

    sp = sub.add_parser("spectrum",
                        help="eigenvalues and eigenstate stars of a "
                             "Hermitian operator")
    sp.add_argument("--input", required=True,
                    help='operator JSON {"entries": 3x3 [re, im]}')
    common(sp)

    sp = sub.add_parser("evolve",
                        help="trajectory under a spin field or a general "
                             "Hermitian generator")
    sp.add_argument("--input", required=True,
                    help='state JSON, or {"state": ..., "operator": ...}')
    sp.add_argument("--field",
                    help='spin field "a,b,c" in the real-vector basis')
    sp.add_argument("--periods", type=float, default=1.0,
                    help="horizon in spectral cycles (default 1)")
    sp.add_argument("--require-quadrupolar", action="store_true",
                    help="exit 4 if any sample leaves the zero-spin "
                         "subspace")
    common(sp, samples=True)

    sp = sub.add_parser("morph",
                        help="star trajectories of the interpolated "
                             "operator family, one file per alpha")
    sp.add_argument("--alpha", required=True, action="append",
                    help="comma separated interpolation parameters in "
                         "[0, 1]; repeatable")
    sp.add_argument("--theta", type=float, default=None,
                    help="start the parameter grid here instead of the "
                         "collision-avoiding midpoint grid")
    common(sp, samples=True)

    sp = sub.add_parser("verify", help="run acceptance criteria")
    sp.add_argument("--suite", default="all", choices=sorted(SUITES),
                    help="criteria subset (default all)")
    common(sp)

    return p


# ---- entry point ----

def _run(args) -> int:
    if args.command == "evolve" and args.field:
        args.field_resolved = _parse_field(args.field)
    else:
        args.field_resolved = None
    if args.command == "morph":
        args.alphas_resolved = _parse_alphas(args.alpha)
    n = _resolve_samples(args)
    cfg = _config(args, n)
    meta = _metadata(cfg)
    out, code = _HANDLERS[args.command](args, meta, n)

    if args.command == "evolve" and args.format == "csv":
        text = _evolve_csv(out)
    else:
        text = _document_text(out, args.format)
    output = getattr(args, "output", None)
    if output and args.command != "morph":
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        # morph writes per-alpha files itself; stdout gets the summary
        sys.stdout.write(text)

    if code == 1:
        print("qberry: verification failed", file=sys.stderr)
    elif code == 4:
        print("qberry: the trajectory leaves the zero-spin subspace "
              f"(residual {out['residual_max']:.3e})", file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _run(args)
    except InputError as exc:
        print(f"qberry: input error: {exc}", file=sys.stderr)
        return 2
    except NumericalInconsistencyError as exc:
        print(f"qberry: numerical inconsistency: {exc}", file=sys.stderr)
        return 3
    except PhysicsError as exc:
        print(f"qberry: physics assertion failed: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"qberry: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
