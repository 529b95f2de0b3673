import pytest


@pytest.fixture(autouse=True, scope="session")
def isolated_cache(tmp_path_factory):
    """Route the on-disk result cache to a session-scoped temp directory."""
    import os

    path = tmp_path_factory.mktemp("floordiag-cache")
    old = os.environ.get("FLOORDIAG_CACHE_DIR")
    os.environ["FLOORDIAG_CACHE_DIR"] = str(path)
    yield
    if old is None:
        os.environ.pop("FLOORDIAG_CACHE_DIR", None)
    else:
        os.environ["FLOORDIAG_CACHE_DIR"] = old
