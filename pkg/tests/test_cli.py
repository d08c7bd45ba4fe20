"""
Unittests for the "graded_kernel/cli.py" module
"""
import json
import os

import pytest
from click.testing import CliRunner

from .utils import ASSETS_PATH
from graded_kernel.cli import gradk
from graded_kernel.helpers import get_version
from graded_kernel.testing import MockKernelConfig


@pytest.fixture
def kernel_config():
    previous = gradk.kernel_config
    with MockKernelConfig() as config:
        gradk.kernel_config = config
        yield config
    gradk.kernel_config = previous


class TestGradK:

    def test_help_command(self):
        runner = CliRunner()
        result = runner.invoke(gradk, ["--help"])
        assert result.exit_code == 0
        assert "Options" in result.output
        assert "Commands" in result.output
        assert "Graded Kernel Command Line Interface" in result.output

    def test_version_command(self):
        version_true = get_version()

        runner = CliRunner()
        result = runner.invoke(gradk, ["--version"])
        assert result.exit_code == 0
        assert version_true in result.output

    def test_ops_command(self):
        runner = CliRunner()
        result = runner.invoke(gradk, ["ops"])
        assert result.exit_code == 0
        assert "Available Task Keywords" in result.output
        assert "cokernel" in result.output

    def test_config_show_command(self, kernel_config):
        runner = CliRunner()
        result = runner.invoke(gradk, ["config", "show"])
        assert result.exit_code == 0, result.output
        assert "window" in result.output
        assert "0..6" in result.output
        assert os.path.exists(kernel_config.general_config_path)


class TestRunCommand:

    @pytest.mark.parametrize("name, exit_code", [
        ("zx_xadic.yaml", 0),
        ("roundtrip.yaml", 0),
        ("groups.yaml", 0),
        ("failing.yaml", 1),
        ("not_pointed.yaml", 2),
    ])
    def test_run_command_exit_codes(self, kernel_config, name: str, exit_code: int):
        runner = CliRunner()
        result = runner.invoke(gradk, ["run", os.path.join(ASSETS_PATH, name)])
        assert result.exit_code == exit_code, result.output

    def test_run_command_basically_works(self, kernel_config):
        runner = CliRunner()
        result = runner.invoke(gradk, ["run", os.path.join(ASSETS_PATH, "zx_xadic.yaml")])
        assert result.exit_code == 0, result.output
        assert "[PASS] x-adic completion of Z[x]" in result.output
        assert "Stabilized(Z, stage 9)" in result.output

    def test_validation_errors_are_anchored(self, kernel_config):
        runner = CliRunner()
        result = runner.invoke(gradk, ["run", os.path.join(ASSETS_PATH, "not_pointed.yaml")])
        assert result.exit_code == 2
        assert "line 6, column 5" in result.output
        assert "NotPointed" in result.output

    def test_strict_undetermined(self, kernel_config):
        runner = CliRunner()
        result = runner.invoke(gradk, ["run", os.path.join(ASSETS_PATH, "groups.yaml"), "--strict-undetermined"])
        assert result.exit_code == 1

    def test_machine_report_to_file(self, kernel_config, tmp_path):
        task_file = os.path.join(ASSETS_PATH, "groups.yaml")
        outputs = []
        for index in range(2):
            output = os.path.join(tmp_path, f"report_{index}.jsonl")
            runner = CliRunner()
            result = runner.invoke(gradk, ["run", task_file, "--format", "machine", "--output", output])
            assert result.exit_code == 0, result.output
            assert "wrote report" in result.output
            with open(output, mode="r") as file:
                outputs.append(file.read())

        assert outputs[0] == outputs[1]
        lines = outputs[0].splitlines()
        summary = json.loads(lines[-1])
        assert summary["exit_code"] == 0
        assert summary["summary"]["UNDETERMINED"] == 1
        assert [json.loads(line)["status"] for line in lines[:-1]] == ["PASS", "PASS", "PASS", "UNDETERMINED"]

    def test_window_override(self, kernel_config):
        runner = CliRunner()
        result = runner.invoke(gradk, [
            "run", os.path.join(ASSETS_PATH, "zx_xadic.yaml"), "--window", "0..2", "-f", "machine",
        ])
        # deg 3 and deg 8 are outside the window, so their expectations fail
        assert result.exit_code == 1
        assert '"deg 2"' in result.output

    def test_invalid_window_is_a_usage_error(self, kernel_config):
        runner = CliRunner()
        result = runner.invoke(gradk, ["run", os.path.join(ASSETS_PATH, "zx_xadic.yaml"), "--window", "3..1"])
        assert result.exit_code == 2

    def test_missing_task_file(self, kernel_config):
        runner = CliRunner()
        result = runner.invoke(gradk, ["run", os.path.join(ASSETS_PATH, "does_not_exist.yaml")])
        assert result.exit_code == 2
