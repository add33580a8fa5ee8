import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from heisenkit.cubes import build_cubes
from heisenkit.measure import horizontal_segment_set, lifted_circle_set, lifted_zigzag_set

settings.register_profile(
    "heisenkit",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("heisenkit")

_CRITERIA: dict[int, tuple[str, str, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    detail = dict(item.user_properties).get("detail", "")
    _CRITERIA[mark.args[0]] = ("PASS" if rep.passed else "FAIL", detail, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, detail, secs = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {status} ({secs:.1f} s) {detail}".rstrip())


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)


@pytest.fixture(scope="session")
def segment512():
    return horizontal_segment_set(512)


@pytest.fixture(scope="session")
def circle256():
    return lifted_circle_set(256)


@pytest.fixture(scope="session")
def circle512():
    return lifted_circle_set(512)


@pytest.fixture(scope="session")
def zigzag512():
    return lifted_zigzag_set(512, 2)


@pytest.fixture(scope="session")
def circle512_tree(circle512):
    return build_cubes(circle512)


@pytest.fixture(scope="session")
def circle256_tree(circle256):
    return build_cubes(circle256)


@pytest.fixture(scope="session")
def segment512_tree(segment512):
    return build_cubes(segment512)


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


@pytest.fixture
def timer():
    return Timer
