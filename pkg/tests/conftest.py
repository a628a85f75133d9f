import numpy as np
import pytest

from polyrespace.curve import PolygonalCurve


def random_equilateral(rng, m, dim=2, step=1.0, repeat_prob=0.0):
    """Equilateral curve from random unit directions; a direction is reused
    with probability ``repeat_prob`` to create collinear runs."""
    dirs = []
    for _ in range(m):
        if dirs and rng.random() < repeat_prob:
            dirs.append(dirs[-1])
            continue
        d = rng.normal(size=dim)
        dirs.append(d / np.linalg.norm(d))
    pts = np.vstack([np.zeros(dim), np.cumsum(step * np.array(dirs), axis=0)])
    return PolygonalCurve(pts)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def ell():
    return PolygonalCurve([(0, 0), (0, 2), (4, 2)])


_ACCEPTANCE = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion for the summary."""
    entry = {"name": request.node.name, "status": "FAIL", "detail": ""}
    _ACCEPTANCE.append(entry)

    def done(detail):
        entry["status"] = "PASS"
        entry["detail"] = detail

    return done


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for e in _ACCEPTANCE:
        terminalreporter.write_line(f"{e['status']}  {e['name']}  {e['detail']}")
