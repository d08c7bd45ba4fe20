"""
Unittests for the "graded_kernel/tasks.py" module
"""
import importlib
import os
import textwrap

import pytest

from .utils import ASSETS_PATH
from graded_kernel.config import GeneralConfig
from graded_kernel.errors import ParseError, ValidationError
from graded_kernel.report import Status
from graded_kernel.tasks import Overrides, REGISTRY, TaskParameters, load_document, plan_tasks
from graded_kernel.tasks import reachable_operations, run_document, task


def write_task_file(tmp_path, content: str) -> str:
    path = os.path.join(tmp_path, "tasks.yaml")
    with open(path, mode="w") as file:
        file.write(textwrap.dedent(content))
    return path


def run_asset(name: str, **kwargs):
    config = GeneralConfig()
    document = load_document(os.path.join(ASSETS_PATH, name), config)
    return run_document(document, config, **kwargs)


class TestRegistry:

    def test_reachable_operations_exist(self):
        operations = reachable_operations()
        assert len(operations) > 40
        for operation in operations:
            module_name, name = operation.split(".")
            module = importlib.import_module(f"graded_kernel.{module_name}")
            assert callable(getattr(module, name)), operation

    def test_every_kernel_module_is_reachable(self):
        modules = {operation.split(".")[0] for operation in reachable_operations()}
        assert modules == {"abelian", "grading", "graded_algebra", "derived", "completion", "comodule"}

    def test_registering_a_keyword_twice_raises(self):
        assert "cokernel" in REGISTRY
        with pytest.raises(ValueError):
            task("cokernel", TaskParameters)(lambda document, params, settings: None)


class TestPlanTasks:

    def test_settings_precedence(self, tmp_path):
        path = write_task_file(tmp_path, """\
            version: 1
            defaults:
              window: "0..4"
              precision: 7
            rings:
              R:
                variables: {x: 1}
            tasks:
              - op: ring_piece
                ring: R
                window: "0..3"
              - op: ring_piece
                ring: R
        """)
        config = GeneralConfig()
        document = load_document(path, config)

        planned = plan_tasks(document, config, Overrides())
        assert [str(p.settings.window) for p in planned] == ["0..3", "0..4"]
        assert planned[0].settings.precision == 7
        assert planned[0].settings.depth == config.depth

        planned = plan_tasks(document, config, Overrides(window="0..2", precision=1))
        assert [str(p.settings.window) for p in planned] == ["0..2", "0..2"]
        assert planned[1].settings.precision == 1

    def test_unknown_keyword_raises(self, tmp_path):
        path = write_task_file(tmp_path, """\
            version: 1
            tasks:
              - op: frobnicate
        """)
        config = GeneralConfig()
        document = load_document(path, config)
        with pytest.raises(ValidationError) as info:
            plan_tasks(document, config, Overrides())
        assert "frobnicate" in info.value.message
        assert info.value.line == 3

    def test_unknown_reference_raises(self, tmp_path):
        path = write_task_file(tmp_path, """\
            version: 1
            tasks:
              - op: ring_piece
                ring: nope
        """)
        config = GeneralConfig()
        document = load_document(path, config)
        with pytest.raises(ValidationError) as info:
            plan_tasks(document, config, Overrides())
        assert info.value.message == "unknown ring 'nope'"
        assert info.value.line == 4

    def test_unknown_parameter_raises(self, tmp_path):
        path = write_task_file(tmp_path, """\
            version: 1
            rings:
              R:
                variables: {x: 1}
            tasks:
              - op: ring_piece
                ring: R
                colour: blue
        """)
        config = GeneralConfig()
        document = load_document(path, config)
        with pytest.raises(ValidationError) as info:
            plan_tasks(document, config, Overrides())
        assert info.value.message.startswith("ring_piece: colour:")

    def test_invalid_default_window_raises(self, tmp_path):
        path = write_task_file(tmp_path, """\
            version: 1
            defaults:
              window: "4..1"
            tasks: []
        """)
        with pytest.raises(ValidationError) as info:
            load_document(path, GeneralConfig())
        assert info.value.line == 3


class TestRunDocument:

    def test_run_document_basically_works(self):
        report = run_asset("zx_xadic.yaml")

        assert [result.status for result in report.results] == [Status.PASS]
        rows = {row.key: row for row in report.results[0].rows}
        assert rows["deg 3"].value == "Stabilized(Z, stage 4)"
        assert rows["expect deg 8"].verdict == "pass"
        assert report.exit_code == 0

    def test_group_tasks(self):
        report = run_asset("groups.yaml")

        assert [result.status for result in report.results] == [
            Status.PASS, Status.PASS, Status.PASS, Status.UNDETERMINED,
        ]
        assert report.results[2].task == "p-adic tower"
        assert report.exit_code == 0

    def test_strict_undetermined(self):
        report = run_asset("groups.yaml", strict_undetermined=True)
        assert report.exit_code == 1

    def test_failed_expectations(self):
        report = run_asset("failing.yaml")

        result = report.results[0]
        assert result.status == Status.FAIL
        assert result.rows[-1].key == "expect deg 2"
        assert result.rows[-1].verdict == "fail"
        assert report.exit_code == 1

    def test_roundtrip_tasks_pass(self):
        report = run_asset("roundtrip.yaml")
        assert all(result.status == Status.PASS for result in report.results)

    def test_kernel_errors_become_error_results(self, tmp_path):
        path = write_task_file(tmp_path, """\
            version: 1
            rings:
              R:
                variables: {x: 1}
            tasks:
              - op: koszul_complex
                ring: R
                sequence: ["x + x^2"]
              - op: ring_piece
                ring: R
                degrees: [1]
        """)
        config = GeneralConfig()
        report = run_document(load_document(path, config), config)

        assert [result.status for result in report.results] == [Status.ERROR, Status.PASS]
        assert "NotHomogeneous" in report.results[0].error
        assert report.exit_code == 1

    def test_unparsable_polynomials_raise(self, tmp_path):
        path = write_task_file(tmp_path, """\
            version: 1
            rings:
              R:
                variables: {x: 1}
            tasks:
              - op: koszul_complex
                ring: R
                sequence: ["x + * x"]
        """)
        config = GeneralConfig()
        with pytest.raises(ParseError) as info:
            run_document(load_document(path, config), config)
        assert info.value.message.startswith("koszul_complex:")
        assert info.value.line == 6

    def test_koszul_rows(self, tmp_path):
        path = write_task_file(tmp_path, """\
            version: 1
            rings:
              R:
                variables: {x: 1, y: 1}
            tasks:
              - op: koszul_complex
                ring: R
                sequence: [x, y]
                indices: [0]
                window: "0..1"
        """)
        config = GeneralConfig()
        report = run_document(load_document(path, config), config)

        rows = {row.key: row.value for row in report.results[0].rows}
        assert rows == {"pi_0 deg 0": "Z", "pi_0 deg 1": "0"}
