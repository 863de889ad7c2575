import json
import math

import numpy as np
import pandas as pd
import pytest
from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from basis.hermite import eval_hermite
from basis.indices import FamilyId
from verify.commands import (
    EXIT_BAD_INPUT,
    EXIT_FAILED,
    EXIT_OK,
    AnalyzeCommand,
    EvalCommand,
    SynthesizeCommand,
    VerifyCommand,
    parse_index,
)
from verify.config import SUITES, SuiteConfig, load_suite_config
from verify.io import read_coeffs, read_samples
from verify.report import Check, VerificationReport, render_csv, render_json, render_table
from verify.suites import run_suite


def casimir_config(**overrides):
    options = dict(suite="casimir", algebra="su11_laguerre", alpha=2.0, window="n<=30")
    options.update(overrides)
    return load_suite_config(options)


@pytest.mark.parametrize(
    "options,message",
    [
        ({"suite": "everything"}, "unknown suite"),
        ({"format": "xml"}, "unknown format"),
        ({"jobs": 0}, "jobs must be positive"),
        ({"tol": -1.0}, "tol must be positive"),
        ({"rho_min": 0.8, "rho_max": 0.2}, "decay profile"),
    ],
)
def test_suite_config_validation(options, message):
    with pytest.raises(ValueError, match=message):
        SuiteConfig(**options)


def test_load_suite_config_rejects_unknown_keys():
    with pytest.raises(OmegaConfBaseException):
        load_suite_config({"suite": "casimir", "colour": "blue"})


def test_load_suite_config_merges():
    config = load_suite_config(OmegaConf.create({"suite": "ft", "tol": 1e-3}), seed=7)
    assert config.seed == 7
    assert config.tolerance("ode") == 1e-3
    assert config.to_container()["suite"] == "ft"
    assert load_suite_config().tolerance("quadrature") == 1e-10


def test_run_casimir_suite():
    report = run_suite(casimir_config())
    assert report.checks
    assert report.passed
    assert all(check.residual <= 1e-12 for check in report.checks)


def test_reports_do_not_depend_on_jobs():
    serial = render_json(run_suite(casimir_config(suite="commutators", jobs=1)))
    threaded = json.loads(render_json(run_suite(casimir_config(suite="commutators", jobs=3))))
    assert json.loads(serial)["checks"] == threaded["checks"]


@pytest.mark.parametrize("suite", SUITES)
def test_unfiltered_suites_pass(suite):
    report = run_suite(load_suite_config({"suite": suite}))
    assert report.checks
    assert not report.failures, [(c.name, c.residual, c.details.get("reason")) for c in report.failures]


def test_adjoint_and_weights_use_each_algebra_window():
    for suite in ("adjoint", "weights"):
        unfiltered = run_suite(load_suite_config({"suite": suite}))
        for tag in ("su22_jacobi", "so32_spherical", "heisenberg_hermite"):
            alone = run_suite(load_suite_config({"suite": suite, "algebra": tag}))
            by_name = {check.name: check for check in unfiltered.checks}
            for check in alone.checks:
                assert by_name[check.name].residual == check.residual


@pytest.mark.parametrize("suite", ["seminorms", "bounds", "weights", "all"])
def test_reruns_are_byte_identical(suite):
    config = load_suite_config({"suite": suite, "jobs": 4})
    assert render_json(run_suite(config)) == render_json(run_suite(config))


def test_run_suite_rejects_unknown_algebra():
    with pytest.raises(ValueError, match="unknown algebra"):
        run_suite(load_suite_config({"suite": "casimir", "algebra": "so5_nothing"}))


def test_failing_task_becomes_failing_check():
    check = Check.failure("broken", 1e-12, "ZeroDivisionError: division by zero")
    assert not check.passed
    assert math.isnan(check.residual)
    assert check.details["reason"].startswith("ZeroDivisionError")


def test_informational_checks():
    assert Check("measured", 3.5, 1e-12, informational=True).passed
    assert Check("measured", math.inf, 1e-12, informational=True).tolerance == math.inf
    assert not Check("measured", math.nan, 1e-12, informational=True).passed


def test_report_renderings():
    report = VerificationReport(
        "demo",
        {"seed": 1},
        [
            Check("a", 1e-14, 1e-12),
            Check("b", 1e-3, 1e-12),
            Check("c", 5.0, 0.0, informational=True),
        ],
        warnings=["w", "w"],
    )
    assert not report.passed
    assert [check.name for check in report.failures] == ["b"]
    csv = render_csv(report).splitlines()
    assert csv[0] == "name,residual,tolerance,pass"
    assert csv[1] == "a,1.000000000000000e-14,1.000000000000000e-12,true"
    assert csv[2].endswith("false")
    document = json.loads(render_json(report))
    assert document["warnings"] == ["w"]
    assert document["checks"][2]["informational"]
    assert document["checks"][2]["pass"]
    assert "runtime_ms" not in document
    assert render_json(report) == render_json(report)
    assert "2/3 checks passed" in render_table(report)


def test_parse_index():
    family = FamilyId("JacobiJ")
    assert parse_index(family, "j=3/2,m=1/2,q=-1/2").components == (3, 1, -1)
    assert parse_index(family, "j=1.5,m=0.5,q=0.5").components == (3, 1, 1)
    with pytest.raises(ValueError, match="needs q"):
        parse_index(family, "j=1,m=0")
    with pytest.raises(ValueError, match="not a quantum number"):
        parse_index(family, "j=1,m=0,q=0,k=2")


@pytest.mark.parametrize(
    "family,index,at,expected",
    [
        ("zernike-r", "n=2,m=0", "r=1.0", "1"),
        ("hermite", "n=1", "x=0", "0"),
    ],
)
def test_eval_command(family, index, at, expected, capsys):
    code = EvalCommand(family=family, index=index, at=at).run()
    assert code == EXIT_OK
    assert capsys.readouterr().out.strip() == expected


def test_eval_command_rejects_bad_index(capsys):
    code = EvalCommand(family="sph-y", index="l=1,m=2", at="theta=0.1,phi=0.2").run()
    assert code == EXIT_BAD_INPUT
    assert "|m| <= l violated" in capsys.readouterr().err


def test_eval_command_needs_one_location(capsys):
    code = EvalCommand(family="hermite", index="n=1").run()
    assert code == EXIT_BAD_INPUT
    assert "exactly one" in capsys.readouterr().err


def test_verify_command(logdir, offline, capsys):
    from utils.logger import Logger

    logger = Logger(OmegaConf.create({}), offline, logdir, progress=False)
    command = VerifyCommand(
        logger=logger,
        seed=3,
        suite="casimir",
        algebra="su11_laguerre",
        alpha=1.0,
        window="n<=20",
        format="csv",
    )
    assert command.run() == EXIT_OK
    assert capsys.readouterr().out.startswith("name,residual,tolerance,pass")
    document = json.loads((logger.data_dir / "report.json").read_text())
    assert document["passed"]
    assert document["config"]["seed"] == 3


def test_verify_command_reports_failures():
    command = VerifyCommand(
        suite="orthonormality", family="hermite", window="n<=8", tol=1e-300, format="json"
    )
    assert command.run() == EXIT_FAILED


def test_verify_command_rejects_bad_config(capsys):
    assert VerifyCommand(suite="nothing").run() == EXIT_BAD_INPUT
    assert "unknown suite" in capsys.readouterr().err
    assert VerifyCommand(suite="casimir", float_precision=32).run() == EXIT_BAD_INPUT


def test_analyze_from_plan_nodes(tmp_path):
    nodes = tmp_path / "nodes.csv"
    coeffs = tmp_path / "coeffs.json"
    family = FamilyId("Hermite")
    assert AnalyzeCommand(family="hermite", window="n<=6", emit_nodes=True, out=str(nodes)).run() == 0
    frame = pd.read_csv(nodes)
    assert list(frame.columns) == ["x", "re", "im"]
    frame["re"] = eval_hermite(2, frame["x"].to_numpy())
    frame.to_csv(nodes, index=False, float_format="%.17e")

    code = AnalyzeCommand(family="hermite", window="n<=6", input=str(nodes), out=str(coeffs)).run()
    assert code == EXIT_OK
    v = read_coeffs(coeffs)
    assert v.family == family
    assert v[(2,)] == pytest.approx(1.0, abs=1e-10)
    assert sum(abs(a) for c, a in v.entries().items() if c != (2,)) < 1e-10


def test_analyze_rejects_off_node_samples(tmp_path, capsys):
    samples = tmp_path / "samples.csv"
    pd.DataFrame({"x": [0.0, 1.0], "re": [1.0, 2.0], "im": [0.0, 0.0]}).to_csv(samples, index=False)
    code = AnalyzeCommand(family="hermite", window="n<=6", input=str(samples)).run()
    assert code == EXIT_BAD_INPUT
    assert "plan nodes" in capsys.readouterr().err


def test_synthesize_on_points(tmp_path):
    coeffs = tmp_path / "coeffs.json"
    coeffs.write_text(
        json.dumps({"family": "FourierCircle", "entries": [{"index": [1], "re": 1.0, "im": 0.0}]})
    )
    points = tmp_path / "points.csv"
    phi = np.linspace(0.0, 2 * math.pi, 7)
    pd.DataFrame({"phi": phi}).to_csv(points, index=False)
    out = tmp_path / "values.csv"
    code = SynthesizeCommand(input=str(coeffs), points=str(points), out=str(out)).run()
    assert code == EXIT_OK
    coords, values = read_samples(str(out), FamilyId("FourierCircle"))
    np.testing.assert_allclose(coords[0], phi, atol=1e-14)
    np.testing.assert_allclose(values, np.exp(-1j * phi) / math.sqrt(2 * math.pi), atol=1e-14)


def test_synthesize_on_grid(tmp_path):
    coeffs = tmp_path / "coeffs.json"
    coeffs.write_text(
        json.dumps({"family": "ZernikeW", "entries": [{"index": [0, 0], "re": 2.0}]})
    )
    out = tmp_path / "grid.csv"
    assert SynthesizeCommand(input=str(coeffs), grid=5, out=str(out)).run() == EXIT_OK
    frame = pd.read_csv(out)
    assert len(frame) == 25
    assert list(frame.columns) == ["r", "phi", "re", "im"]


def test_synthesize_missing_file(tmp_path, capsys):
    code = SynthesizeCommand(input=str(tmp_path / "missing.json")).run()
    assert code == EXIT_BAD_INPUT
    assert "cannot read" in capsys.readouterr().err
