import functools

import numpy as np
import pytest

from tspectral import build_grid, make_geometry

SCALES = {
    "identity": {"kind": "identity"},
    "affine": {"kind": "affine", "params": {"a": 2.0, "b": 0.0}},
    "hadamard": {"kind": "hadamard", "params": {"t_shift": 0.0}},
}
WEIGHTS = {
    "w1": {"kind": "constant", "c": 1.0},
    "w2": {"kind": "constant", "c": 2.0},
    "wpoly": {"kind": "poly", "p": 1.0},
}
PRESETS = {
    f"{s}-{w}": make_geometry({**sd, "weight": wd})
    for s, sd in SCALES.items()
    for w, wd in WEIGHTS.items()
}
PRESET_IDS = sorted(PRESETS)


@functools.lru_cache(maxsize=None)
def grid_for(name_or_geometry, L=20.0, N=4096):
    g = PRESETS[name_or_geometry] if isinstance(name_or_geometry, str) else name_or_geometry
    return build_grid(g, L, N)


@pytest.fixture(params=PRESET_IDS)
def preset(request):
    return PRESETS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def rel_max(a, b):
    """max|a - b| / max|b|."""
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


# one pass/fail line per acceptance criterion

_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance") and rep.when == "call":
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        detail = "; ".join(str(v) for k, v in rep.user_properties if k == "detail")
        _ACCEPTANCE.append((doc, "PASS" if rep.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for doc, status, detail in _ACCEPTANCE:
        line = f"{status}  {doc}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
