import pytest

from bohrad import _kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # pay any jit compilation cost once, before timed tests run
    _kernels.warmup()
