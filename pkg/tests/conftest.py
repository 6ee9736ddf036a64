import os

import pytest


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    os.environ["ISINGX_CACHE_DIR"] = str(tmp_path_factory.mktemp("isingx-cache"))
    yield
