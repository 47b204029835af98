import numpy as np
import pytest

from zernike_derham.geometry import default_seed, sample_disk


@pytest.fixture
def rng():
    return np.random.default_rng(default_seed())


@pytest.fixture
def disk_points(rng):
    return sample_disk(60, rng, radius=0.95)


def poly_partial(f, axis: int, x, y, degree: int, radius: float = 0.25):
    """Exact partial derivative of a polynomial field by contour sampling.

    f(x + h, y) is a polynomial in h of degree <= ``degree``; sampling h on
    a small complex circle and taking the FFT gives its Taylor coefficients,
    the linear one being the derivative.
    """
    K = degree + 2
    h = radius * np.exp(2j * np.pi * np.arange(K) / K)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    vals = []
    for hk in h:
        xx, yy = (x + hk, y) if axis == 0 else (x, y + hk)
        vals.append(np.asarray(f(xx, yy)))
    vals = np.array(vals)
    return np.tensordot(np.conj(h), vals, axes=(0, 0)) / (K * radius**2)


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[2])):
        terminalreporter.write_line(line)
