import json

import numpy as np
import pytest

import qdestroy as q
from qdestroy.cli import EXAMPLE_SCENARIOS, main

EXAMPLE1_C0 = {
    "system": "one_particle",
    "dims": [2],
    "state": [[[0.25, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.75, 0.0]]],
    "observable": {"diagonal": [0.5, -0.5]},
    "omega": [0.5],
    "mode": "no_selection",
}

SINGLET_SCENARIO = {
    "system": "two_identical_antisymmetric",
    "dims": [2],
    "state": "singlet",
    "observable": {"diagonal": [0.5, -0.5]},
    "omega": [0.5],
    "mode": "no_selection",
}


def _write(tmp_path, document, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(document))
    return str(path)


def _run(tmp_path, document, *extra):
    out = tmp_path / "report.json"
    code = main(["run", _write(tmp_path, document), "--out", str(out), *extra])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


def _matrix_from_json(entries):
    return np.array([[complex(re, im) for re, im in row] for row in entries])


def test_run_reports_the_mixed_survivor_entropy(tmp_path):
    code, report = _run(tmp_path, EXAMPLE1_C0)
    assert code == 0
    branch = report["branches"][0]
    assert branch["entropy"] == pytest.approx(0.562335, abs=1e-6)
    state = _matrix_from_json(branch["state"])
    np.testing.assert_allclose(state, np.diag([0.0, 0.75, 0.25]), atol=1e-12)


def test_run_singlet_preset_yields_pure_survivor(tmp_path):
    code, report = _run(tmp_path, SINGLET_SCENARIO)
    assert code == 0
    branch = report["branches"][0]
    assert branch["entropy"] == pytest.approx(0.0, abs=1e-10)
    assert report["input"]["entropy"] == pytest.approx(0.0, abs=1e-10)


def test_run_rejects_non_square_state(tmp_path, capsys):
    bad = dict(EXAMPLE1_C0)
    bad["state"] = [[[1.0, 0.0], [0.0, 0.0]]]
    code, report = _run(tmp_path, bad)
    assert code == 2
    assert report is None
    assert "'state'" in capsys.readouterr().err


def test_run_rejects_unknown_system(tmp_path, capsys):
    bad = dict(EXAMPLE1_C0)
    bad["system"] = "three_particles"
    code, _ = _run(tmp_path, bad)
    assert code == 2
    assert "'system'" in capsys.readouterr().err


def test_run_rejects_asymmetric_state_for_identical_system(tmp_path, capsys):
    bad = dict(SINGLET_SCENARIO)
    bad["state"] = "maximally_mixed"
    code, _ = _run(tmp_path, bad)
    assert code == 2
    assert "'state'" in capsys.readouterr().err


def test_run_rejects_invalid_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["run", str(path)]) == 2
    assert "JSON" in capsys.readouterr().err


def test_run_is_a_pure_function_of_the_scenario(tmp_path):
    _, first = _run(tmp_path, EXAMPLE1_C0)
    _, second = _run(tmp_path, EXAMPLE1_C0)
    assert first == second


def test_branch_states_recertify_after_reload(tmp_path):
    scenario = dict(EXAMPLE1_C0)
    scenario["mode"] = "selection"
    code, report = _run(tmp_path, scenario)
    assert code == 0
    assert sum(b["probability"] for b in report["branches"]) == pytest.approx(1.0, abs=1e-10)
    for branch in report["branches"]:
        if not branch["possible"]:
            continue
        matrix = _matrix_from_json(branch["state"])
        dim = matrix.shape[0]
        reloaded = q.certify_density(q.Operator(matrix, q.PhysicalSpace(dim)))
        assert reloaded.trace_defect <= 1e-10


def test_sampling_draws_a_branch_deterministically(tmp_path):
    scenario = dict(EXAMPLE1_C0)
    scenario["mode"] = "selection"
    code, report = _run(tmp_path, scenario, "--sample", "--seed", "11")
    assert code == 0
    assert report["sampled_branch"] in {"destroyed", "survived"}
    _, again = _run(tmp_path, scenario, "--sample", "--seed", "11")
    assert again["sampled_branch"] == report["sampled_branch"]


def test_sampling_requires_selection_mode(tmp_path, capsys):
    code, _ = _run(tmp_path, EXAMPLE1_C0, "--sample")
    assert code == 2
    assert "'mode'" in capsys.readouterr().err


def test_examples_command_writes_runnable_scenarios(tmp_path, capsys):
    assert main(["examples", "--dir", str(tmp_path)]) == 0
    output = capsys.readouterr().out
    for name in ("example1.json", "example2.json", "example3.json"):
        assert (tmp_path / name).exists()
        assert name in output
    example3 = json.loads((tmp_path / "example3.json").read_text())
    assert example3["system"] == "two_identical_antisymmetric"


def test_bundled_examples_reproduce_reference_outputs(tmp_path):
    assert main(["examples", "--dir", str(tmp_path)]) == 0

    _, report1 = _run(tmp_path, json.loads((tmp_path / "example1.json").read_text()))
    state1 = _matrix_from_json(report1["branches"][0]["state"])
    np.testing.assert_allclose(state1, np.diag([0.0, 0.75, 0.25]), atol=1e-12)

    _, report2 = _run(tmp_path, json.loads((tmp_path / "example2.json").read_text()))
    state2 = _matrix_from_json(report2["branches"][0]["state"])
    expected2 = np.zeros((8, 8), dtype=complex)
    weights = json.loads((tmp_path / "example2.json").read_text())["state"]
    w1 = weights[0][0][0]
    w2 = weights[2][2][0]
    expected2[1, 1], expected2[5, 5], expected2[7, 7] = w1, w2, 1 - w1 - w2
    np.testing.assert_allclose(state2, expected2, atol=1e-12)

    _, report3 = _run(tmp_path, json.loads((tmp_path / "example3.json").read_text()))
    state3 = _matrix_from_json(report3["branches"][0]["state"])
    vec = np.zeros(9, dtype=complex)
    vec[5] = vec[7] = 1 / np.sqrt(2)
    np.testing.assert_allclose(state3, np.outer(vec, vec), atol=1e-12)
    assert report3["branches"][0]["entropy"] == pytest.approx(0.0, abs=1e-10)


def test_verify_command_is_deterministic_and_exits_zero(tmp_path, capsys):
    def run_once(name):
        out = tmp_path / name
        code = main(
            ["verify", "--trials", "2", "--seed", "7", "--dims", "2", "--out", str(out)]
        )
        capsys.readouterr()
        document = json.loads(out.read_text())
        for entry in document["properties"]:
            entry.pop("seconds")
        return code, document

    code1, doc1 = run_once("v1.json")
    code2, doc2 = run_once("v2.json")
    assert code1 == code2 == 0
    assert doc1 == doc2
    assert doc1["all_passed"] is True
    assert doc1["config"] == {"seed": 7, "trials": 2, "dims": [2], "kinds": list(q.SYSTEM_KINDS)}


def test_verify_rejects_bad_flags(capsys):
    assert main(["verify", "--trials", "0"]) == 2
    assert "trials" in capsys.readouterr().err


def test_documents_conform_to_shipped_schemas(tmp_path, capsys):
    jsonschema = pytest.importorskip("jsonschema")
    import pathlib

    docs = pathlib.Path(__file__).resolve().parent.parent / "docs"
    scenario_schema = json.loads((docs / "scenario.schema.json").read_text())
    report_schema = json.loads((docs / "report.schema.json").read_text())
    verify_schema = json.loads((docs / "verify_report.schema.json").read_text())

    for document in EXAMPLE_SCENARIOS.values():
        jsonschema.validate(document, scenario_schema)
    jsonschema.validate(EXAMPLE1_C0, scenario_schema)

    _, report = _run(tmp_path, EXAMPLE1_C0)
    jsonschema.validate(report, report_schema)
    selection = dict(SINGLET_SCENARIO)
    selection["mode"] = "selection"
    _, report_sel = _run(tmp_path, selection)
    jsonschema.validate(report_sel, report_schema)

    out = tmp_path / "verify.json"
    main(["verify", "--trials", "1", "--seed", "1", "--dims", "2", "--out", str(out)])
    capsys.readouterr()
    jsonschema.validate(json.loads(out.read_text()), verify_schema)
