import os
import pathlib
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import jinja2 as j2

PATH: str = pathlib.Path(__file__).parent.resolve()

TEMPLATE_PATH: str = os.path.join(PATH, "templates")

TEMPLATE_ENV = j2.Environment(
    loader=j2.FileSystemLoader(TEMPLATE_PATH),
    autoescape=False,
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
)

T = TypeVar("T")
R = TypeVar("R")

# Number of worker threads used for degreewise computations. The command line interface sets
# this from the "threads" entry of the general config (GRADED_KERNEL_THREADS).
_THREADS: int = 1


def get_version() -> str:
    """
    Returns the current version of the package as it is written in the ``VERSION`` file.

    Returns:
        str: The version of the package.
    """
    version_path: str = os.path.join(PATH, "VERSION")
    with open(version_path, "r") as file:
        version: str = file.read().strip()

    return version


def set_thread_count(threads: int) -> None:
    """
    Sets the number of worker threads that ``map_degrees`` may use.

    Args:
        threads (int): The number of threads, values below 1 are treated as 1.
    """
    global _THREADS
    _THREADS = max(1, int(threads))


def get_thread_count() -> int:
    return _THREADS


def map_degrees(function: Callable[[T], R], degrees: Sequence[T]) -> List[R]:
    """
    Applies ``function`` to every element of ``degrees`` and returns the results in input order.

    Degreewise computations are independent pure functions, so they may run on a thread pool.
    Since the results are always collected in the order of ``degrees``, the output does not
    depend on the number of threads.

    Args:
        function: The per-degree computation.
        degrees: The degrees (or any other work items) to process.

    Returns:
        list: ``[function(g) for g in degrees]``
    """
    degrees = list(degrees)
    if _THREADS <= 1 or len(degrees) < 2:
        return [function(degree) for degree in degrees]

    with ThreadPoolExecutor(max_workers=_THREADS) as executor:
        return list(executor.map(function, degrees))
