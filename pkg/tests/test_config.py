"""
Unittests for the "graded_kernel/config.py" module
"""
import os
import tempfile

import pydantic
import pytest

from graded_kernel.config import GeneralConfig, KernelConfig


class TestKernelConfig:

    def test_setup_basically_works(self):

        with tempfile.TemporaryDirectory() as path:

            config_path = os.path.join(path, "graded_kernel")
            config = KernelConfig(folder_path=config_path)
            config.setup_if_necessary()

            # Check if the folder was created
            assert os.path.exists(config.folder_path)

            # Check if the general_config.yaml file was copied
            assert os.path.exists(config.general_config_path)

    def test_load_general_config_defaults(self):

        with tempfile.TemporaryDirectory() as path:

            config = KernelConfig(folder_path=os.path.join(path, "graded_kernel"))
            general_config = config.load_general_config()

            assert general_config == GeneralConfig()
            assert general_config.window == "0..6"
            assert general_config.depth == 8
            assert general_config.threads == 1

    def test_threads_from_environment(self, monkeypatch):
        monkeypatch.setenv("GRADED_KERNEL_THREADS", "3")

        with tempfile.TemporaryDirectory() as path:

            config = KernelConfig(folder_path=os.path.join(path, "graded_kernel"))
            assert config.load_general_config().threads == 3


class TestGeneralConfig:

    @pytest.mark.parametrize("kwargs", [
        {"window": "3..1"},
        {"window": "zero..six"},
        {"depth": 1},
        {"format": "xml"},
        {"colour": "blue"},
    ])
    def test_invalid_values_raise(self, kwargs):
        with pytest.raises(pydantic.ValidationError):
            GeneralConfig(**kwargs)
