"""
Unittests for the "graded_kernel/helpers.py" module
"""
import os

from .utils import ARTIFACTS_PATH
from graded_kernel.helpers import PATH, TEMPLATE_ENV, get_thread_count, get_version, map_degrees
from graded_kernel.helpers import set_thread_count


def test_saving_artifacts():
    file_path = os.path.join(ARTIFACTS_PATH, "test_artifact.txt")
    with open(file_path, "w") as f:
        f.write("This is a test artifact.")

    assert os.path.exists(file_path), "Artifact file was not created."


def test_get_version():
    with open(os.path.join(PATH, "VERSION")) as file:
        assert get_version() == file.read().strip()


def test_report_template_exists():
    template = TEMPLATE_ENV.get_template("report.txt.j2")
    assert template is not None


def test_set_thread_count_clamps():
    set_thread_count(0)
    assert get_thread_count() == 1
    set_thread_count(5)
    assert get_thread_count() == 5
    set_thread_count(1)


def test_map_degrees_keeps_the_order():
    items = list(range(50))
    expected = [item * item for item in items]
    try:
        set_thread_count(4)
        assert map_degrees(lambda item: item * item, items) == expected
    finally:
        set_thread_count(1)
    assert map_degrees(lambda item: item * item, items) == expected
    assert map_degrees(lambda item: item, []) == []
