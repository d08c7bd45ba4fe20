"""
Report records and their two renderings: the human readable table (a jinja2 template) and the
machine readable form with one JSON object per line.
"""
import enum
import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict

from graded_kernel.helpers import TEMPLATE_ENV

REPORT_VERSION = 1


class Status(str, enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNDETERMINED = "UNDETERMINED"
    ERROR = "ERROR"


class Row(BaseModel):
    model_config = ConfigDict(extra="forbid")

    key: str
    value: str
    verdict: str = ""


class TaskResult(BaseModel):
    model_config = ConfigDict(extra="forbid")

    task: str
    op: str
    status: Status
    rows: List[Row] = []
    data: Dict[str, Any] = {}
    error: Optional[str] = None

    def is_failure(self, strict_undetermined: bool = False) -> bool:
        if self.status in (Status.FAIL, Status.ERROR):
            return True
        return strict_undetermined and self.status == Status.UNDETERMINED


class Report(BaseModel):
    model_config = ConfigDict(extra="forbid")

    source: str
    results: List[TaskResult] = []
    strict_undetermined: bool = False

    @property
    def counts(self) -> Dict[str, int]:
        counts = {status.value: 0 for status in Status}
        for result in self.results:
            counts[result.status.value] += 1
        return counts

    @property
    def passed(self) -> bool:
        return not any(result.is_failure(self.strict_undetermined) for result in self.results)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    # ~ rendering

    def render_human(self, width: int = 100) -> str:
        template = TEMPLATE_ENV.get_template("report.txt.j2")
        key_width = max([len(row.key) for result in self.results for row in result.rows] + [8])
        value_width = max(min(width - key_width - 20, 60), 10)
        return template.render(
            report=self,
            key_width=key_width,
            value_width=value_width,
            counts=self.counts,
        )

    def render_machine(self) -> str:
        lines = []
        for result in self.results:
            record = {"report_version": REPORT_VERSION, **result.model_dump(mode="json")}
            lines.append(json.dumps(record, sort_keys=False, ensure_ascii=False))
        summary = {
            "report_version": REPORT_VERSION,
            "summary": self.counts,
            "source": self.source,
            "exit_code": self.exit_code,
        }
        lines.append(json.dumps(summary, ensure_ascii=False))
        return "\n".join(lines) + "\n"

    def render(self, format: str, width: int = 100) -> str:
        if format == "machine":
            return self.render_machine()
        return self.render_human(width)
