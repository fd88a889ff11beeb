import functools

import pytest

from ricci_arg import graph as gc

# name -> (family, params); every entry is amply regular
CORPUS = {
    "Q2": ("hypercube", (2,)),
    "Q3": ("hypercube", (3,)),
    "Q4": ("hypercube", (4,)),
    "Q5": ("hypercube", (5,)),
    "Q6": ("hypercube", (6,)),
    "H23": ("hamming", (2, 3)),
    "shrikhande": ("shrikhande", ()),
    "rook4": ("rook", (4,)),
    "icosahedron": ("icosahedron", ()),
    "petersen": ("petersen", ()),
    "C5": ("cycle", (5,)),
    "C6": ("cycle", (6,)),
    "K33": ("complete-bipartite", (3, 3)),
    "J84": ("johnson", (8, 4)),
}

SMALL = [k for k in CORPUS if k not in ("J84", "Q6", "Q5")]


@functools.lru_cache(maxsize=None)
def corpus_graph(name: str) -> gc.Graph:
    family, params = CORPUS[name]
    return gc.generate(family, *params)


@functools.lru_cache(maxsize=None)
def corpus_params(name: str) -> gc.ArgParams:
    return gc.require_arg(corpus_graph(name))


@functools.lru_cache(maxsize=None)
def corpus_kappa(name: str):
    from ricci_arg.transport import edge_curvatures

    return edge_curvatures(corpus_graph(name))


# --- acceptance summary -------------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _CRITERIA[number] = ("PASS" if rep.outcome == "passed" else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        verdict, title = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}")
