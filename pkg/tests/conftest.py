import logging
import sys
from pathlib import Path

import hypothesis
import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from gyrolab_lite.catalog import cyclic_table, klein_table, symmetric_table  # noqa: E402
from gyrolab_lite.gyrotable import load_table_file  # noqa: E402
from gyrolab_lite.logsetup import ColoredFormatter  # noqa: E402

hypothesis.settings.register_profile("fast", max_examples=25, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=100, deadline=None)
hypothesis.settings.load_profile("fast")

FIXTURES = ROOT / "tests" / "fixtures"
CATALOG = ROOT / "catalog"


@pytest.fixture(autouse=True)
def restore_root_logger():
    level = logging.root.level
    yield
    for handler in [h for h in logging.root.handlers if isinstance(h.formatter, ColoredFormatter)]:
        logging.root.removeHandler(handler)
    logging.root.setLevel(level)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def catalog_dir():
    return CATALOG


@pytest.fixture
def z4():
    return cyclic_table(4)


@pytest.fixture
def k4():
    return klein_table()


@pytest.fixture
def s3():
    return symmetric_table(3)


@pytest.fixture
def g8():
    return load_table_file(CATALOG / "g8.json")


@pytest.fixture
def loop5():
    return load_table_file(FIXTURES / "loop5_rejected.json")
