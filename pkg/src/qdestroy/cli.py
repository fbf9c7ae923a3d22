"""Command-line front end.

    qdestroy run <scenario.json> [--out report.json] [--sample --seed S]
    qdestroy verify [--trials N] [--seed S] [--dims a,b,...] [--out report.json]
    qdestroy examples [--dir DIR]

Scenario files are JSON: complex numbers are [re, im] pairs, matrices are
row-major nested arrays.  See docs/scenario.schema.json for the full shape
and docs/report.schema.json for the report this tool writes.

Exit codes: 0 success (verify: all properties passed), 1 property failure,
2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .destruction import (
    DestructionMode,
    destroy_one,
    destroy_two_distinguishable,
    destroy_two_identical,
)
from .errors import CertificationError, QdestroyError, ScenarioError, SymmetryViolationError
from .operators import (
    DEFAULT_TOLERANCES,
    DensityMatrix,
    Operator,
    Projector,
    SpectralWindow,
    certify_density,
    projector_from_observable,
    von_neumann_entropy,
)
from .spaces import PhysicalSpace
from .symmetry import ExchangeSign
from .verify import TrialConfig, run_suite, suite_document, suite_passed

SYSTEMS = (
    "one_particle",
    "two_distinguishable",
    "two_identical_symmetric",
    "two_identical_antisymmetric",
)

PRESETS = ("singlet", "triplet0", "maximally_mixed")


@dataclass(frozen=True)
class Scenario:
    system: str
    dims: tuple[int, ...]
    state: DensityMatrix
    projectors: tuple[Projector, ...]
    mode: DestructionMode


# ---------------------------------------------------------------------------
# Parsing and validation
# ---------------------------------------------------------------------------

def _parse_complex_entry(value, field: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise ScenarioError(field, "complex entries must be [re, im] pairs of numbers")
    return complex(value[0], value[1])


def _parse_matrix(value, field: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ScenarioError(field, "expected a matrix as non-empty nested arrays")
    n = len(value)
    out = np.zeros((n, n), dtype=np.complex128)
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != n:
            raise ScenarioError(field, f"matrix must be square; row {r} has wrong length")
        for c, entry in enumerate(row):
            out[r, c] = _parse_complex_entry(entry, f"{field}[{r}][{c}]")
    return out


def _parse_observable(value, field: str, dim: int) -> np.ndarray:
    if isinstance(value, dict):
        diagonal = value.get("diagonal")
        if diagonal is None or set(value) != {"diagonal"}:
            raise ScenarioError(field, 'observable shorthand must be {"diagonal": [...]}')
        if (
            not isinstance(diagonal, list)
            or len(diagonal) != dim
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in diagonal)
        ):
            raise ScenarioError(field, f"diagonal must list {dim} real numbers")
        return np.diag(np.array(diagonal, dtype=np.complex128))
    matrix = _parse_matrix(value, field)
    if matrix.shape[0] != dim:
        raise ScenarioError(field, f"observable must be {dim}x{dim}, got {matrix.shape[0]}")
    return matrix


def _parse_omega(value, field: str) -> tuple[float, ...]:
    if not isinstance(value, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        raise ScenarioError(field, "expected a list of real eigenvalues")
    return tuple(float(x) for x in value)


def _preset_matrix(name: str, system: str, total_dim: int, field: str) -> np.ndarray:
    if name == "maximally_mixed":
        return np.eye(total_dim, dtype=np.complex128) / total_dim
    if name in ("singlet", "triplet0"):
        if total_dim != 4:
            raise ScenarioError(field, f'preset "{name}" needs a 2x2 pair (total dim 4)')
        sign = -1.0 if name == "singlet" else 1.0
        vec = np.zeros(4, dtype=np.complex128)
        vec[1] = 1.0 / np.sqrt(2)
        vec[2] = sign / np.sqrt(2)
        return np.outer(vec, vec.conj())
    raise ScenarioError(field, f"unknown preset {name!r}; known presets: {PRESETS}")


def _state_dims(system: str, dims: tuple[int, ...]) -> tuple[int, ...]:
    """Physical dimensions of both particles (one entry for one_particle)."""
    if system == "one_particle":
        return dims
    if system == "two_distinguishable":
        return dims
    return (dims[0], dims[0])


def load_scenario(document: dict) -> Scenario:
    """Validate a scenario document and build the runnable inputs.

    Raises `ScenarioError` naming the offending field.
    """
    if not isinstance(document, dict):
        raise ScenarioError("", "scenario must be a JSON object")
    system = document.get("system")
    if system not in SYSTEMS:
        raise ScenarioError("system", f"must be one of {SYSTEMS}, got {system!r}")

    dims_raw = document.get("dims")
    if not isinstance(dims_raw, list) or not dims_raw or not all(
        isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims_raw
    ):
        raise ScenarioError("dims", "expected one or two positive integers")
    dims = tuple(dims_raw)
    if system == "one_particle" and len(dims) != 1:
        raise ScenarioError("dims", "one_particle takes exactly one dimension")
    if system == "two_distinguishable" and len(dims) != 2:
        raise ScenarioError("dims", "two_distinguishable takes exactly two dimensions")
    if system.startswith("two_identical"):
        if len(dims) == 2 and dims[0] != dims[1]:
            raise ScenarioError("dims", "identical particles need equal dimensions")
        if len(dims) > 2:
            raise ScenarioError("dims", "expected one or two dimensions")
        dims = (dims[0],)

    mode_raw = document.get("mode")
    try:
        mode = DestructionMode(mode_raw)
    except ValueError:
        raise ScenarioError(
            "mode", f'must be "selection" or "no_selection", got {mode_raw!r}'
        ) from None

    eps_eig = document.get("eps_eig", DEFAULT_TOLERANCES.eigenvalue_match)
    if not isinstance(eps_eig, (int, float)) or isinstance(eps_eig, bool) or eps_eig <= 0:
        raise ScenarioError("eps_eig", "must be a positive number")

    particle_dims = _state_dims(system, dims)
    total_dim = int(np.prod(particle_dims))
    state_raw = document.get("state")
    if isinstance(state_raw, str):
        matrix = _preset_matrix(state_raw, system, total_dim, "state")
    else:
        matrix = _parse_matrix(state_raw, "state")
        if matrix.shape[0] != total_dim:
            raise ScenarioError(
                "state", f"state must be {total_dim}x{total_dim}, got {matrix.shape[0]}"
            )
    try:
        state = certify_density(Operator(matrix, PhysicalSpace(total_dim)))
    except CertificationError as err:
        raise ScenarioError("state", f"not a density matrix: {err}") from err

    def build_projector(obs_field: str, omega_field: str, dim: int) -> Projector:
        if obs_field not in document:
            raise ScenarioError(obs_field, "missing observable")
        if omega_field not in document:
            raise ScenarioError(omega_field, "missing spectral window")
        obs = _parse_observable(document[obs_field], obs_field, dim)
        omega = _parse_omega(document[omega_field], omega_field)
        window = SpectralWindow(omega, float(eps_eig))
        try:
            pi, _ = projector_from_observable(Operator(obs, PhysicalSpace(dim)), window)
        except QdestroyError as err:
            raise ScenarioError(obs_field, str(err)) from err
        return pi

    if system == "two_distinguishable":
        projectors = (
            build_projector("observable", "omega", dims[0]),
            build_projector("observable_b", "omega_b", dims[1]),
        )
    else:
        projectors = (build_projector("observable", "omega", dims[0]),)

    return Scenario(system=system, dims=dims, state=state, projectors=projectors, mode=mode)


# ---------------------------------------------------------------------------
# Running
# ---------------------------------------------------------------------------

def _matrix_to_json(matrix: np.ndarray) -> list:
    return [
        [[float(np.real(entry)), float(np.imag(entry))] for entry in row]
        for row in matrix
    ]


def _certification_to_json(state: DensityMatrix) -> dict:
    return {
        "hermiticity_defect": state.hermiticity_defect,
        "trace_defect": state.trace_defect,
        "min_eigenvalue": state.min_eigenvalue,
    }


def _branch_to_json(label, probability, state, sector) -> dict:
    entry = {
        "label": label,
        "probability": float(probability),
        "possible": state is not None,
        "sector": sector.value if sector is not None else None,
        "entropy": None,
        "certification": None,
        "state": None,
    }
    if state is not None:
        entry["entropy"] = von_neumann_entropy(state)
        entry["certification"] = _certification_to_json(state)
        entry["state"] = _matrix_to_json(state.matrix)
    return entry


def run_scenario(scenario: Scenario, sample_seed: int | None = None) -> dict:
    """Execute a scenario and return the report document."""
    if scenario.system == "one_particle":
        outcome = destroy_one(scenario.state, scenario.projectors[0], scenario.mode)
        extended_dims = [scenario.dims[0] + 1]
    elif scenario.system == "two_distinguishable":
        outcome = destroy_two_distinguishable(
            scenario.state, scenario.projectors[0], scenario.projectors[1], scenario.mode
        )
        extended_dims = [scenario.dims[0] + 1, scenario.dims[1] + 1]
    else:
        sign = (
            ExchangeSign.SYMMETRIC
            if scenario.system == "two_identical_symmetric"
            else ExchangeSign.ANTISYMMETRIC
        )
        try:
            outcome = destroy_two_identical(
                scenario.state, scenario.projectors[0], sign, scenario.mode
            )
        except SymmetryViolationError as err:
            raise ScenarioError("state", str(err)) from err
        extended_dims = [scenario.dims[0] + 1, scenario.dims[0] + 1]

    if scenario.mode is DestructionMode.NO_SELECTION:
        branches = [_branch_to_json("no_selection", 1.0, outcome.state, None)]
    else:
        branches = [
            _branch_to_json(b.label, b.probability, b.state, b.sector)
            for b in outcome.branches
        ]
    report = {
        "system": scenario.system,
        "mode": scenario.mode.value,
        "dims": list(scenario.dims),
        "extended_dims": extended_dims,
        "input": {
            "entropy": von_neumann_entropy(scenario.state),
            "certification": _certification_to_json(scenario.state),
        },
        "branches": branches,
    }
    if sample_seed is not None:
        if scenario.mode is not DestructionMode.SELECTION:
            raise ScenarioError("mode", "--sample needs a selection-mode scenario")
        rng = np.random.default_rng(sample_seed)
        probabilities = np.array([b["probability"] for b in branches])
        probabilities = np.clip(probabilities, 0.0, None)
        probabilities /= probabilities.sum()
        drawn = int(rng.choice(len(branches), p=probabilities))
        report["sampled_branch"] = branches[drawn]["label"]
    return report


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _emit(document: dict, out_path: str | None) -> None:
    text = json.dumps(document, indent=2)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def cmd_run(args) -> int:
    try:
        with open(args.scenario, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as err:
        print(f"error: cannot read scenario: {err}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as err:
        print(f"error: scenario is not valid JSON: {err}", file=sys.stderr)
        return 2
    try:
        scenario = load_scenario(document)
        report = run_scenario(scenario, args.seed if args.sample else None)
    except ScenarioError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    _emit(report, args.out)
    return 0


def cmd_verify(args) -> int:
    try:
        dims = tuple(int(part) for part in str(args.dims).split(",") if part != "")
        config = TrialConfig(seed=args.seed, trials=args.trials, dims=dims)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    reports = run_suite(config)
    for report in reports:
        status = "pass" if report.passed else "FAIL"
        print(
            f"[{status}] {report.name}: max defect {report.max_defect:.3e} "
            f"(tolerance {report.tolerance:.1e}, {report.trials} trials, "
            f"{report.seconds:.2f}s)",
            file=sys.stderr,
        )
    _emit(suite_document(config, reports), args.out)
    return 0 if suite_passed(reports) else 1


EXAMPLE_SCENARIOS = {
    "example1.json": {
        "system": "one_particle",
        "dims": [2],
        "state": [
            [[0.25, 0.0], [0.0, 0.1]],
            [[0.0, -0.1], [0.75, 0.0]],
        ],
        "observable": {"diagonal": [0.5, -0.5]},
        "omega": [0.5],
        "mode": "no_selection",
    },
    "example2.json": {
        "system": "two_distinguishable",
        "dims": [3, 1],
        "state": [
            [[0.5, 0.0], [0.1, 0.0], [0.0, 0.0]],
            [[0.1, 0.0], [0.2, 0.0], [-0.04, 0.0]],
            [[0.0, 0.0], [-0.04, 0.0], [0.3, 0.0]],
        ],
        "observable": {"diagonal": [1.0, 0.0, -1.0]},
        "omega": [0.0],
        "observable_b": {"diagonal": [0.0]},
        "omega_b": [0.0],
        "mode": "no_selection",
    },
    "example3.json": {
        "system": "two_identical_antisymmetric",
        "dims": [2],
        "state": "singlet",
        "observable": {"diagonal": [0.5, -0.5]},
        "omega": [0.5],
        "mode": "no_selection",
    },
}


def cmd_examples(args) -> int:
    try:
        for name, document in EXAMPLE_SCENARIOS.items():
            path = os.path.join(args.dir, name)
            with open(path, "w", encoding="utf-8") as handle:
                json.dump(document, handle, indent=2)
                handle.write("\n")
            report = run_scenario(load_scenario(document))
            branch = report["branches"][0]
            print(f"wrote {path}")
            print(
                f"  {document['system']}, {report['mode']}: "
                f"input entropy {report['input']['entropy']:.6f}, "
                f"output entropy {branch['entropy']:.6f}"
            )
    except OSError as err:
        print(f"error: cannot write example scenarios: {err}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdestroy",
        description="Run particle-destruction scenarios and the verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run a scenario file")
    run_parser.add_argument("scenario", help="path to a scenario JSON file")
    run_parser.add_argument("--out", help="write the report here instead of stdout")
    run_parser.add_argument(
        "--sample",
        action="store_true",
        help="draw one branch at random (selection mode only)",
    )
    run_parser.add_argument("--seed", type=int, default=0, help="seed for --sample")
    run_parser.set_defaults(func=cmd_run)

    verify_parser = sub.add_parser("verify", help="run the verification suite")
    verify_parser.add_argument("--trials", type=int, default=1000)
    verify_parser.add_argument("--seed", type=int, default=42)
    verify_parser.add_argument("--dims", default="2,3,4", help="comma-separated physical dims")
    verify_parser.add_argument("--out", help="write the report here instead of stdout")
    verify_parser.set_defaults(func=cmd_verify)

    examples_parser = sub.add_parser("examples", help="write the bundled example scenarios")
    examples_parser.add_argument("--dir", default=".", help="target directory")
    examples_parser.set_defaults(func=cmd_examples)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
