import os
import time
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from medianlab.graphs import (
    ExplicitGraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    explicit_product,
    grid_graph,
    hypercube_graph,
    path_graph,
    random_tree,
)

FIXTURES = Path(__file__).parent / "fixtures"
os.environ.setdefault("MEDIANLAB_FIXTURES", str(FIXTURES))

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("default")

SESSION_START = pytest.StashKey[float]()


def pytest_configure(config):
    config.addinivalue_line("markers", "suite_budget: times the whole session, so it runs last")


def pytest_sessionstart(session):
    session.config.stash[SESSION_START] = time.perf_counter()


def pytest_collection_modifyitems(config, items):
    items.sort(key=lambda item: item.get_closest_marker("suite_budget") is not None)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when == "call":
                lines += [v for k, v in rep.user_properties if k == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


def c4():
    return ExplicitGraph("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])


def median_fixtures() -> dict:
    """Graphs known to be median, keyed by a readable name."""
    rng = np.random.default_rng(7)
    out = {f"tree{n}": random_tree(n, rng) for n in (1, 2, 5, 12, 30, 50)}
    out.update({f"grid{r}x{c}": grid_graph(r, c) for r, c in ((1, 4), (2, 2), (3, 4), (6, 6))})
    out["Q3"] = hypercube_graph(3)
    out["Q4"] = hypercube_graph(4)
    out["C4"] = c4()
    out["path5"] = path_graph(5)
    out["tree_x_edge"] = explicit_product(random_tree(6, np.random.default_rng(3)), path_graph(2))
    out["grid_x_path"] = explicit_product(grid_graph(2, 3), path_graph(3))
    out["K1,4"] = complete_bipartite(1, 4)
    return out


def non_median_fixtures() -> dict:
    return {"K3": complete_graph(3), "C5": cycle_graph(5), "C6": cycle_graph(6), "K2,3": complete_bipartite(2, 3)}


# small fixtures for the more expensive checks
SMALL_MEDIAN = ["tree12", "grid3x4", "Q3", "C4", "tree_x_edge", "grid_x_path", "K1,4"]


@pytest.fixture(scope="session")
def medians():
    return median_fixtures()


@pytest.fixture
def fixtures_dir():
    return FIXTURES
