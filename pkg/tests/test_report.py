"""
Unittests for the "graded_kernel/report.py" module
"""
import json

from graded_kernel.report import REPORT_VERSION, Report, Row, Status, TaskResult


def example_report(strict_undetermined: bool = False) -> Report:
    return Report(
        source="tasks.yaml",
        strict_undetermined=strict_undetermined,
        results=[
            TaskResult(task="pieces", op="ring_piece", status=Status.PASS,
                       rows=[Row(key="deg 2", value="Z^3")], data={"pieces": {"2": "Z^3"}}),
            TaskResult(task="tower", op="tower_limits", status=Status.UNDETERMINED,
                       rows=[Row(key="limit", value="Undetermined")]),
        ],
    )


class TestTaskResult:

    def test_is_failure(self):
        result = TaskResult(task="t", op="cokernel", status=Status.UNDETERMINED)
        assert not result.is_failure()
        assert result.is_failure(strict_undetermined=True)

        for status in (Status.FAIL, Status.ERROR):
            assert TaskResult(task="t", op="cokernel", status=status).is_failure()


class TestReport:

    def test_counts_basically_work(self):
        report = example_report()
        assert report.counts == {"PASS": 1, "FAIL": 0, "UNDETERMINED": 1, "ERROR": 0}

    def test_exit_code(self):
        assert example_report().exit_code == 0
        assert example_report(strict_undetermined=True).exit_code == 1
        assert Report(source="empty.yaml").exit_code == 0

    def test_render_machine(self):
        report = example_report()
        lines = report.render_machine().splitlines()

        assert len(lines) == 3
        records = [json.loads(line) for line in lines]
        assert all(record["report_version"] == REPORT_VERSION for record in records)
        assert records[0]["task"] == "pieces"
        assert records[0]["status"] == "PASS"
        assert records[0]["rows"] == [{"key": "deg 2", "value": "Z^3", "verdict": ""}]
        assert records[-1]["summary"]["UNDETERMINED"] == 1
        assert records[-1]["exit_code"] == 0
        assert records[-1]["source"] == "tasks.yaml"

    def test_render_machine_is_deterministic(self):
        assert example_report().render_machine() == example_report().render_machine()

    def test_render_human(self):
        text = example_report().render("human", width=80)

        assert "tasks.yaml" in text
        assert "[PASS] pieces (ring_piece)" in text
        assert "[UNDETERMINED] tower (tower_limits)" in text
        assert "Z^3" in text
        assert "1 passed, 0 failed, 1 undetermined, 0 errors" in text

    def test_render_shows_errors(self):
        report = Report(source="tasks.yaml", results=[
            TaskResult(task="broken", op="koszul_complex", status=Status.ERROR,
                       error="task 'broken' failed: NotHomogeneous: x + x^2"),
        ])
        assert "NotHomogeneous" in report.render("human")
        assert report.exit_code == 1
