import os
import pathlib
import shutil
from typing import Literal, Optional

import hydra
import omegaconf
from appdirs import user_config_dir
from pydantic import BaseModel, ConfigDict, NonNegativeInt, PositiveInt, model_validator
from typing_extensions import Self

from graded_kernel.grading import Window

# This is the absolute string path to the graded_kernel PACKAGE folder which has been
# installed in the Python environment. It contains the base version of the
# general_config.yaml file.
PATH: str = pathlib.Path(__file__).parent.absolute()


class GeneralConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    window: str = "0..6"
    depth: NonNegativeInt = 8
    precision: NonNegativeInt = 4
    strict_undetermined: bool = False
    format: Literal["human", "machine"] = "human"
    threads: PositiveInt = 1
    console_width: PositiveInt = 100

    @model_validator(mode="after")
    def check(self) -> Self:
        try:
            Window.parse(self.window)
        except ValueError as exc:
            raise AssertionError(f"invalid default window: {exc}") from exc

        assert self.depth >= 2, "the default depth has to be at least 2 for tower verdicts"

        return self


class KernelConfig:
    """
    KernelConfig handles the per-user configuration folder of the graded kernel. On first use
    the folder is created and the general_config.yaml file of the package is copied into it,
    so that users can change their defaults there.
    """

    app_name: str = "graded_kernel"
    app_author: str = "graded_kernel"

    def __init__(self, folder_path: Optional[str] = None):
        # ~/.config/graded_kernel on Linux, the platform equivalent elsewhere
        self.folder_path: str = user_config_dir(self.app_name, self.app_author)

        # Optional overwrite for unittesting purposes
        if folder_path is not None:
            self.folder_path = folder_path

        self.general_config_path: str = os.path.join(self.folder_path, "general_config.yaml")

    def setup_if_necessary(self) -> None:
        """
        Creates the config folder and copies the general_config.yaml file into it if the folder
        does not exist yet.
        """
        if not os.path.exists(self.folder_path):
            os.makedirs(self.folder_path)
            self.setup()

    def setup(self) -> None:
        shutil.copy(
            os.path.join(PATH, "general_config.yaml"),
            self.general_config_path,
        )

    def load_general_config(self) -> GeneralConfig:
        """
        Composes the user's general_config.yaml with hydra, resolving the environment variable
        interpolations, and validates the result.

        Returns:
            GeneralConfig: The validated defaults.
        """
        self.setup_if_necessary()
        with hydra.initialize_config_dir(config_dir=os.path.abspath(self.folder_path), version_base=None):
            cfg = hydra.compose(config_name="general_config")
            cfg_dict = omegaconf.OmegaConf.to_container(cfg, resolve=True, throw_on_missing=True)

        return GeneralConfig(**cfg_dict)
