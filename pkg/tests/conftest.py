import pytest

from dtpt import kernels


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    """Each test gets its own cache directory."""
    monkeypatch.setenv("DTPT_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.delenv("DTPT_NO_CACHE", raising=False)


@pytest.fixture(params=sorted(kernels.BACKENDS))
def backend(request):
    return request.param
