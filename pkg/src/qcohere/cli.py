"""Scenario runner for the full analysis pipeline.

Loads a state and an observable (from JSON files or builtins), runs the
selected analyses and writes machine-readable artifacts:

* ``coherence``  -> coherence.json (profile summary and C_HS)
* ``witness``    -> certificate.json (negativity certificate or verdict)
* ``phase``      -> pphi.csv rows (phi, value) and gamma_tau.csv rows
  (tau, re, im), or a combined phase.json with ``--format json``
* ``resolution`` -> resolution.csv with one row per scenario, or
  resolution.json (which additionally carries the exact distances at
  the requested signal value)
* ``all``        -> every artifact selected by the scenario

Outputs are deterministic for a given scenario and seed: CSV numbers
use 17-significant-digit decimals and JSON uses Python's shortest
round-trip float representation, so every value can be reproduced by
calling the underlying operation directly.

Exit codes: 0 success, 2 validation failure (with a message naming the
violated invariant), 3 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import metrology, nonclassicality, phase
from .coherence import coherence_profile, hilbert_schmidt_coherence
from .errors import DimensionMismatchError, QcohereError
from .qcore import (
    BasisObservable,
    DensityMatrix,
    UnitarySignal,
    load_observable,
    load_state,
    random_state,
)

ANALYSES = ("coherence", "witness", "phase", "resolution")

RESOLUTION_COLUMNS = (
    "state_id",
    "basis_id",
    "C_HS",
    "witness_p_min",
    "delta2_lambda",
    "d2_coeff",
    "D2_coeff",
    "bound_lhs",
    "bound_rhs",
)

_SCENARIO_KEYS = {
    "state",
    "observable",
    "dim",
    "lambda",
    "seed",
    "mc_samples",
    "out_dir",
    "format",
    "analyses",
    "tol_witness",
    "eps",
}

_PHASE_GRID_POINTS = 512


@dataclass(frozen=True)
class Scenario:
    """Fully resolved run configuration (defaults < file < flags)."""

    state: str = "plus"
    observable: str = "linear"
    dim: int = 2
    lam: float = 0.01
    seed: int = 0
    mc_samples: int = 0
    out_dir: str = "."
    format: str = "csv"
    analyses: tuple[str, ...] = ANALYSES
    tol_witness: float = 1e-9
    eps: float = 1e-10


def _fmt(x: float) -> str:
    """17-significant-digit decimal; exact float round-trip."""
    return format(float(x), ".17g")


def load_scenario_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise QcohereError("scenario file must hold a JSON object")
    unknown = set(data) - _SCENARIO_KEYS
    if unknown:
        raise QcohereError(f"unknown scenario keys: {sorted(unknown)}")
    return data


def resolve_scenario(args: argparse.Namespace) -> Scenario:
    scenario = Scenario()
    seed_from_file = False
    if args.scenario:
        data = load_scenario_file(args.scenario)
        fields = {}
        if "state" in data:
            fields["state"] = str(data["state"])
        if "observable" in data:
            fields["observable"] = str(data["observable"])
        if "dim" in data:
            fields["dim"] = int(data["dim"])
        if "lambda" in data:
            fields["lam"] = float(data["lambda"])
        if "seed" in data:
            fields["seed"] = int(data["seed"])
            seed_from_file = True
        if "mc_samples" in data:
            fields["mc_samples"] = int(data["mc_samples"])
        if "out_dir" in data:
            fields["out_dir"] = str(data["out_dir"])
        if "format" in data:
            fields["format"] = str(data["format"])
        if "analyses" in data:
            fields["analyses"] = _check_analyses(data["analyses"])
        if "tol_witness" in data:
            fields["tol_witness"] = float(data["tol_witness"])
        if "eps" in data:
            fields["eps"] = float(data["eps"])
        scenario = replace(scenario, **fields)
    env_seed = os.environ.get("QCOHERE_SEED")
    if env_seed is not None and args.seed is None and not seed_from_file:
        try:
            scenario = replace(scenario, seed=int(env_seed))
        except ValueError:
            raise QcohereError(f"QCOHERE_SEED must be an integer, got {env_seed!r}")
    overrides = {}
    if args.state is not None:
        overrides["state"] = args.state
    if args.observable is not None:
        overrides["observable"] = args.observable
    if args.dim is not None:
        overrides["dim"] = args.dim
    if args.lam is not None:
        overrides["lam"] = args.lam
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.mc_samples is not None:
        overrides["mc_samples"] = args.mc_samples
    if args.out_dir is not None:
        overrides["out_dir"] = args.out_dir
    if args.format is not None:
        overrides["format"] = args.format
    scenario = replace(scenario, **overrides)
    if args.command != "all":
        scenario = replace(scenario, analyses=(args.command,))
    if scenario.format not in ("csv", "json"):
        raise QcohereError(f"format must be 'csv' or 'json', got {scenario.format!r}")
    if scenario.dim < 1:
        raise QcohereError("dim must be a positive integer")
    return scenario


def _check_analyses(raw) -> tuple[str, ...]:
    names = tuple(str(a) for a in raw)
    unknown = [a for a in names if a not in ANALYSES]
    if unknown:
        raise QcohereError(f"unknown analyses: {unknown}")
    return names


def build_state(scenario: Scenario) -> DensityMatrix:
    src = scenario.state
    if src == "mixed":
        return DensityMatrix.maximally_mixed(scenario.dim)
    if src == "plus":
        return DensityMatrix.plus_state(scenario.dim)
    if src.startswith("random:"):
        parts = src.split(":")
        if len(parts) != 3:
            raise QcohereError("random state builtin must be 'random:SEED:RANK'")
        return random_state(scenario.dim, rank=int(parts[2]), seed=int(parts[1]))
    rho = load_state(src)
    if rho.dim != scenario.dim and scenario.dim != Scenario().dim:
        raise DimensionMismatchError(
            f"state file dimension {rho.dim} conflicts with requested dim {scenario.dim}"
        )
    return rho


def build_observable(scenario: Scenario, dim: int) -> BasisObservable:
    src = scenario.observable
    if src == "computational":
        return BasisObservable.computational(dim)
    if src == "linear":
        return BasisObservable.linear(dim)
    if src == "hadamard":
        return BasisObservable.hadamard_pair(dim)
    obs = load_observable(src)
    if obs.dim != dim:
        raise DimensionMismatchError(
            f"observable dimension {obs.dim} conflicts with state dimension {dim}"
        )
    return obs


def default_povm(observable: BasisObservable) -> metrology.Povm:
    """Projective POVM in the half-step Fourier mixing of the basis kets.

    Complementary to the generator basis for every dimension; for a
    qubit these are the sigma_y eigenprojectors.
    """
    fourier = BasisObservable.fourier(observable.dim, offset=0.5)
    mixed = BasisObservable(observable.basis @ fourier.basis)
    return metrology.Povm.projective(mixed)


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_coherence(scenario: Scenario, rho, observable) -> str:
    profile = coherence_profile(rho, observable)
    (j, k), modulus = profile.max_pair()
    payload = {
        "state_id": scenario.state,
        "basis_id": scenario.observable,
        "dim": profile.dim,
        "c_hs": hilbert_schmidt_coherence(profile),
        "diagonal": profile.diagonal.tolist(),
        "pairs": [
            {"j": a, "k": b, "re": profile.pairs[(a, b)].real, "im": profile.pairs[(a, b)].imag}
            for a in range(profile.dim)
            for b in range(profile.dim)
            if a != b
        ],
        "max_pair": {"j": j, "k": k, "modulus": modulus},
    }
    path = os.path.join(scenario.out_dir, "coherence.json")
    _write_json(path, payload)
    return path


def run_witness(scenario: Scenario, rho, observable) -> str:
    certificate = nonclassicality.witness_search(rho, observable, scenario.tol_witness)
    path = os.path.join(scenario.out_dir, "certificate.json")
    _write_json(path, certificate.to_json_dict())
    return path


def run_phase(scenario: Scenario, rho, observable) -> list[str]:
    dist = phase.single_phase_distribution(rho, observable)
    multi = phase.multi_phase_distribution(rho, observable)
    phis = np.arange(_PHASE_GRID_POINTS) * (2.0 * np.pi / _PHASE_GRID_POINTS)
    values = dist.evaluate(phis)
    taus = range(-(rho.dim - 1), rho.dim)
    renyi = phase.renyi_integral(multi)
    renyi_mc = None
    if scenario.mc_samples > 0:
        stats = phase.mc_phase_statistics(multi, scenario.mc_samples, seed=scenario.seed)
        renyi_mc = stats.mean_square
    written = []
    if scenario.format == "json":
        payload = {
            "state_id": scenario.state,
            "basis_id": scenario.observable,
            "phi": phis.tolist(),
            "p": values.tolist(),
            "gamma": [
                {"tau": t, "re": dist.gamma(t).real, "im": dist.gamma(t).imag}
                for t in taus
            ],
            "renyi_analytic": renyi,
        }
        if renyi_mc is not None:
            payload["renyi_mc"] = renyi_mc
            payload["mc_samples"] = scenario.mc_samples
        path = os.path.join(scenario.out_dir, "phase.json")
        _write_json(path, payload)
        written.append(path)
    else:
        path = os.path.join(scenario.out_dir, "pphi.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["phi", "value"])
            for phi, value in zip(phis, values):
                writer.writerow([_fmt(phi), _fmt(value)])
        written.append(path)
        path = os.path.join(scenario.out_dir, "gamma_tau.csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["tau", "re", "im"])
            for t in taus:
                writer.writerow([t, _fmt(dist.gamma(t).real), _fmt(dist.gamma(t).imag)])
        written.append(path)
        if renyi_mc is not None:
            print(f"renyi integral: analytic {_fmt(renyi)}, "
                  f"mc({scenario.mc_samples} samples) {_fmt(renyi_mc)}")
    return written


def _resolution_values(scenario: Scenario, rho, observable) -> dict:
    profile = coherence_profile(rho, observable)
    certificate = nonclassicality.witness_search(rho, observable, scenario.tol_witness)
    if certificate.is_nonclassical:
        witness_p_min = certificate.value
    else:
        witness_p_min = certificate.min_p
    report = metrology.wiener_kintchine_resolution(
        phase.single_phase_distribution(rho, observable))
    povm = default_povm(observable)
    d2_coeff = metrology.small_signal_quadratic(rho, observable, povm)
    signal = UnitarySignal(observable, scenario.lam)
    d2_exact = metrology.statistical_distance(rho, signal, povm)
    exact, quadratic = metrology.density_matrix_distance(rho, signal)
    bound = metrology.uncertainty_bound_check(rho, observable, povm)
    return {
        "state_id": scenario.state,
        "basis_id": scenario.observable,
        "C_HS": hilbert_schmidt_coherence(profile),
        "witness_p_min": witness_p_min,
        "delta2_lambda": report.delta2_lambda,
        "d2_coeff": d2_coeff,
        "D2_coeff": quadratic,
        "bound_lhs": bound.lhs,
        "bound_rhs": bound.rhs if bound.applicable else float("nan"),
        "lambda": scenario.lam,
        "d2_exact": d2_exact,
        "D2_exact": exact,
        "flat_distribution": report.flat,
    }


def run_resolution(scenario: Scenario, rho, observable) -> str:
    values = _resolution_values(scenario, rho, observable)
    if scenario.format == "json":
        path = os.path.join(scenario.out_dir, "resolution.json")
        _write_json(path, values)
        return path
    path = os.path.join(scenario.out_dir, "resolution.csv")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESOLUTION_COLUMNS)
        writer.writerow([
            values["state_id"],
            values["basis_id"],
            *(_fmt(values[c]) for c in RESOLUTION_COLUMNS[2:]),
        ])
    return path


def run(scenario: Scenario) -> list[str]:
    os.makedirs(scenario.out_dir, exist_ok=True)
    rho = build_state(scenario)
    observable = build_observable(scenario, rho.dim)
    written = []
    for analysis in scenario.analyses:
        if analysis == "coherence":
            written.append(run_coherence(scenario, rho, observable))
        elif analysis == "witness":
            written.append(run_witness(scenario, rho, observable))
        elif analysis == "phase":
            written.extend(run_phase(scenario, rho, observable))
        elif analysis == "resolution":
            written.append(run_resolution(scenario, rho, observable))
    for path in written:
        print(f"wrote {path}")
    return written


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcohere",
        description="Coherence, nonclassicality and resolution analyses "
                    "of finite-dimensional quantum states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("coherence", "coherence profile and Hilbert-Schmidt measure"),
        ("witness", "nonclassicality negativity certificate"),
        ("phase", "phase distribution P(phi) and coherence function Gamma(tau)"),
        ("resolution", "metrological resolution table"),
        ("all", "every analysis selected by the scenario"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--scenario", help="JSON scenario file; flags override its fields")
        p.add_argument("--state",
                       help="state file or builtin: mixed, plus, random:SEED:RANK")
        p.add_argument("--observable",
                       help="observable file or builtin: computational, linear, hadamard")
        p.add_argument("--dim", type=int, help="dimension for builtin states")
        p.add_argument("--lambda", dest="lam", type=float,
                       help="signal value for exact distances (default 0.01)")
        p.add_argument("--seed", type=int,
                       help="seed for random builtins and MC (env QCOHERE_SEED as fallback)")
        p.add_argument("--mc-samples", type=int,
                       help="torus samples for the MC cross-check (0 disables)")
        p.add_argument("--out-dir", help="directory for artifacts (default .)")
        p.add_argument("--format", choices=("csv", "json"), help="table format")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        scenario = resolve_scenario(args)
        run(scenario)
    except QcohereError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON input: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
