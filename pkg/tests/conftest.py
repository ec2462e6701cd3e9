import numpy as np
import pytest

from qbrush import CanvasImage


def pytest_runtest_logreport(report):
    """One visible pass/fail line per acceptance criterion."""
    if report.when == "call" and "test_acceptance" in report.nodeid:
        status = "PASS" if report.passed else "FAIL"
        name = report.nodeid.split("::")[-1]
        print(f"\n[acceptance] {status} {name}", flush=True)


@pytest.fixture
def random_canvas():
    def make(width=64, height=64, seed=0):
        rng = np.random.default_rng(seed)
        px = rng.integers(0, 256, size=(height, width, 4), dtype=np.uint8)
        px[:, :, 3] = 255
        return CanvasImage(px)

    return make


@pytest.fixture
def flat_canvas():
    def make(width=64, height=64, rgb=(120, 80, 200)):
        return CanvasImage.blank(width, height, fill=(*rgb, 255))

    return make
