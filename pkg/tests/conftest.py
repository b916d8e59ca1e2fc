import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acceptance_log import LINES as ACCEPTANCE_LINES  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--run-extended", action="store_true", default=False,
                     help="run long experiments marked 'extended'")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-extended") or os.environ.get("MRCLAB_EXTENDED") == "1":
        return
    skip = pytest.mark.skip(reason="extended experiment; enable with --run-extended or MRCLAB_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
