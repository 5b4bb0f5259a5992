import numpy as np
import pytest

from qcldpc import kernels
from qcldpc.construction import construct


@pytest.fixture(scope="session")
def code_1020():
    return construct(dv=3, L=12, z=85)


@pytest.fixture(scope="session")
def code_26():
    return construct(dv=3, L=2, z=13)


@pytest.fixture(scope="session")
def code_1640():
    return construct(dv=4, L=10, z=164)


BACKENDS = [pytest.param(kernels.python_backend, id="python")]
if kernels.compiled_backend is not None:
    BACKENDS.append(pytest.param(kernels.compiled_backend, id="cython"))


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    from tests.acceptance_report import RESULTS
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
