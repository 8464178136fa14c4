import os

import pytest


@pytest.fixture(autouse=True, scope="session")
def isolated_cache(tmp_path_factory):
    """Point the disk cache at a session-local directory."""
    path = tmp_path_factory.mktemp("wzcache")
    os.environ["WZ_CACHE_DIR"] = str(path)
    from wzcert import cache
    cache.reset_cache()
    yield path
