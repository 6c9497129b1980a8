import io
import json
from pathlib import Path

import pytest

from optical_hqc.config import settings
from optical_hqc.engine.holonomy_engine import LoopPath
from optical_hqc.main import main
from optical_hqc.models import JobConfig, Report, Tolerances
from optical_hqc.services import AnalysisService, HolonomyService
from optical_hqc.storage import (FileStorage, MemoryStorage, StdoutStorage,
                                 StorageType, create_storage, render_body)
from optical_hqc.utils.converters import pairs_to_matrix, unitarity_defect
from optical_hqc.utils.exceptions import InvalidArgumentError

LOOPS = Path(__file__).resolve().parents[1] / "loops"
CIRCLE = str(LOOPS / "alpha1_circle.json")


def circle_job(**updates):
    values = {"cutoff": 6, "n_segments": 64, "refinements": 1, "loop": CIRCLE}
    values.update(updates)
    return JobConfig(**values)


def circle(config):
    return LoopPath.circle(config.build_spec(), "alpha1_re", "alpha1_im", 0.2)


def test_job_config_constraints():
    with pytest.raises(ValueError):
        JobConfig(model="two_qubit", qubits=3)
    with pytest.raises(ValueError):
        JobConfig(model="n_qubit", qubits=1)
    with pytest.raises(ValueError):
        JobConfig(tolerances={"unknown": 1.0})
    assert JobConfig(model="n_qubit", qubits=3, cutoff=4).build_spec().n_coordinates == 20


def test_holonomy_job_report():
    storage = MemoryStorage()
    config = circle_job()
    outcome = HolonomyService(storage).run_holonomy_job(config, circle(config))

    assert outcome.exit_code == 0
    assert outcome.location == "memory:1"
    body = outcome.report.body
    assert body.kind == "holonomy"
    assert len(body.gate) == 4 and len(body.gate[0]) == 4 and len(body.gate[0][0]) == 2
    assert body.segments_used == 64
    assert [entry.segments for entry in body.discretization_history] == [64]
    assert body.cutoff_history == []
    assert body.loop.segments[0].plane == ("alpha1_re", "alpha1_im")
    assert unitarity_defect(pairs_to_matrix(body.gate)) < 1e-7

    loaded = storage.load_report(outcome.location)
    assert isinstance(loaded, Report)
    assert render_body(loaded) == render_body(outcome.report)


def test_holonomy_job_is_deterministic():
    config = circle_job()
    first = HolonomyService().run_holonomy_job(config, circle(config))
    second = HolonomyService(workers=3).run_holonomy_job(config, circle(config))
    assert render_body(first.report) == render_body(second.report)


def test_failed_tolerance_gives_exit_code_3():
    config = circle_job(refinements=0, tolerances={"unitarity": 1e-30})
    outcome = HolonomyService().run_holonomy_job(config, circle(config))
    assert outcome.exit_code == 3
    assert [f.check for f in outcome.failures] == ["unitarity"]


def test_holonomy_job_with_cutoff_history():
    config = circle_job(refinements=0, cutoffs=[4, 6, 8])
    outcome = HolonomyService().run_holonomy_job(config, circle(config))
    table = outcome.report.body.cutoff_history
    assert [entry.cutoff for entry in table] == [4, 6, 8]
    assert table[-1].gate_distance == 0.0


def test_convergence_sweep():
    config = circle_job(refinements=0, tolerances={"cutoff_gap": 1e9})
    outcome = HolonomyService().run_convergence_sweep(config, circle(config), [4, 6, 8])
    body = outcome.report.body
    assert body.kind == "sweep"
    assert body.config.cutoffs == [4, 6, 8]
    assert [entry.cutoff for entry in body.table] == [4, 6, 8]
    assert body.final_gap == body.table[1].gate_distance
    assert isinstance(body.monotone, bool)
    assert outcome.exit_code == 0


def test_sweep_gap_failure():
    config = circle_job(refinements=0, tolerances={"cutoff_gap": 1e-30})
    outcome = HolonomyService().run_convergence_sweep(config, circle(config), [3, 6])
    assert outcome.exit_code == 3
    assert outcome.failures[0].check == "cutoff_gap"


def test_connection_report():
    config = JobConfig(cutoff=6, point={"alpha1_re": 0.1, "mu1_im": -0.05})
    outcome = AnalysisService().run_connection(config)
    body = outcome.report.body
    assert body.kind == "connection"
    assert len(body.components) == 12
    assert len(body.components["lambda1_im"]) == 4
    assert body.point["mu1_im"] == -0.05
    assert body.antihermitian_defect < 1e-12
    assert outcome.exit_code == 0


def test_curvature_report():
    config = JobConfig(cutoff=6, mu="alpha1_re", nu="alpha1_im")
    outcome = AnalysisService().run_curvature(config)
    body = outcome.report.body
    assert (body.mu, body.nu) == ("alpha1_re", "alpha1_im")
    assert body.antihermitian_defect < 1e-8
    assert outcome.exit_code == 0
    with pytest.raises(InvalidArgumentError):
        AnalysisService().run_curvature(JobConfig(cutoff=6, mu="alpha1_re"))


def test_curvature_tolerance_is_its_own_check():
    assert Tolerances().curvature_antihermitian == 1e-8
    config = JobConfig(
        cutoff=6,
        mu="alpha1_re",
        nu="beta1_im",
        point={"alpha1_re": 0.1, "lambda1_re": 0.2},
        tolerances={"curvature_antihermitian": 1e-30, "connection_antihermitian": 1.0},
    )
    outcome = AnalysisService().run_curvature(config)
    assert outcome.exit_code == 3
    failure = outcome.failures[0]
    assert (failure.check, failure.tolerance) == ("curvature_antihermitian", 1e-30)


def test_rank_probe_report():
    config = JobConfig(cutoff=6, samples=4, eps=0.04, seed=2)
    outcome = AnalysisService().run_rank_probe(config)
    body = outcome.report.body
    assert body.kind == "rank_probe"
    assert body.label == "two_qubit"
    assert body.u_dimension == 16
    assert body.samples == 4
    assert body.verdict.value in ("full_u", "inconclusive")
    assert outcome.exit_code == 0


def test_file_storage_round_trip(tmp_path):
    config = circle_job(refinements=0)
    storage = FileStorage(tmp_path / "nested" / "report.json")
    outcome = HolonomyService(storage).run_holonomy_job(config, circle(config))
    assert storage.list_reports() == [outcome.location]
    loaded = storage.load_report(outcome.location)
    assert render_body(loaded) == render_body(outcome.report)
    assert storage.load_report(str(tmp_path / "absent.json")) is None


def test_storage_factory(tmp_path):
    assert isinstance(create_storage("memory"), MemoryStorage)
    with pytest.raises(ValueError):
        create_storage("redis")
    with pytest.raises(ValueError):
        create_storage(StorageType.FILE)


def test_cli_writes_report_file(tmp_path):
    out = tmp_path / "reports" / "gate.json"
    code = main(["holonomy", "--loop", CIRCLE, "--cutoff", "6", "--segments", "64", "--out", str(out)])
    assert code == 0
    document = json.loads(out.read_text(encoding="utf-8"))
    assert document["body"]["kind"] == "holonomy"
    assert document["meta"]["tool"] == "optical-hqc"
    assert document["body"]["config"]["n_segments"] == 64


def test_cli_prints_to_stdout(capsys):
    code = main(["connection", "--cutoff", "5", "--point", "beta2_re=0.1"])
    assert code == 0
    document = json.loads(capsys.readouterr().out)
    assert document["body"]["point"]["beta2_re"] == 0.1


@pytest.mark.parametrize(
    "argv",
    [
        ["connection", "--cutoff", "5", "--point", "mu7_re=0.1"],
        ["connection", "--cutoff", "5", "--point", "alpha1_re"],
        ["connection", "--cutoff", "5", "--point", "alpha1_re=abc"],
        ["connection", "--qubits", "3"],
        ["connection", "--tol", "bogus=1"],
        ["holonomy", "--loop", "no/such/loop.json", "--cutoff", "5"],
        ["sweep", "--loop", CIRCLE, "--cutoff", "5"],
        ["curvature", "--mu", "alpha1_re", "--nu", "alpha1_re", "--cutoff", "5"],
    ],
)
def test_cli_invalid_input_exit_code(argv, tmp_path):
    assert main(argv + ["--out", str(tmp_path / "r.json")]) == 2


def test_cli_tolerance_exit_code(tmp_path):
    argv = ["holonomy", "--loop", CIRCLE, "--cutoff", "6", "--segments", "32", "--refinements", "0"]
    argv += ["--tol", "unitarity=1e-30", "--out", str(tmp_path / "r.json")]
    assert main(argv) == 3
    document = json.loads((tmp_path / "r.json").read_text(encoding="utf-8"))
    assert document["body"]["failures"][0]["check"] == "unitarity"


def test_cli_resource_budget_exit_code(tmp_path):
    argv = ["holonomy", "--loop", CIRCLE, "--cutoff", "100", "--out", str(tmp_path / "r.json")]
    assert main(argv) == 4


def test_cli_requires_loop():
    with pytest.raises(SystemExit):
        main(["holonomy"])


def test_reports_record_engine_settings(monkeypatch):
    config = JobConfig(cutoff=5, point={"alpha1_re": 0.1})
    before = AnalysisService().run_connection(config).report.body
    assert before.engine.sample_radius == settings.sample_radius
    assert before.engine.rank_rel_tol == settings.rank_rel_tol

    monkeypatch.setattr(settings, "sample_radius", 0.05)
    monkeypatch.setattr(settings, "rank_rel_tol", 1e-3)
    after = AnalysisService().run_connection(config).report.body
    assert after.config == before.config
    assert (after.engine.sample_radius, after.engine.rank_rel_tol) == (0.05, 1e-3)
    assert after.engine != before.engine


def test_stdout_storage_keeps_nothing():
    stream = io.StringIO()
    storage = StdoutStorage(stream)
    config = circle_job(refinements=0)
    outcome = HolonomyService(storage).run_holonomy_job(config, circle(config))
    assert outcome.location == "stdout:1"
    assert storage.list_reports() == ["stdout:1"]
    assert storage.load_report(outcome.location) is None
    assert json.loads(stream.getvalue())["body"]["kind"] == "holonomy"


@pytest.mark.parametrize(
    "argv",
    [
        ["holonomy", "--loop", CIRCLE, "--seed", "3"],
        ["sweep", "--loop", CIRCLE, "--cutoffs", "4", "6", "--point", "alpha1_re=0.1"],
        ["holonomy", "--loop", CIRCLE, "--point", "alpha1_re=0.1"],
    ],
)
def test_cli_rejects_flags_a_verb_does_not_use(argv):
    with pytest.raises(SystemExit) as raised:
        main(argv)
    assert raised.value.code == 2
