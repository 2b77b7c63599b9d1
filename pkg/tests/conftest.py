from __future__ import annotations

import random
from collections import deque

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from dyntc.instances import Instance, Operation, OpKind

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


# ---- oracles: plain edge-list searches, independent of dyntc ----------------


def successors_map(n: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
    return adj


def reach_from(n: int, edges, root: int, reverse: bool = False) -> dict[int, int]:
    """Vertex -> BFS distance for everything reachable from (or reaching) root."""
    adj = successors_map(n, [(v, u) for u, v in edges] if reverse else edges)
    dist = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for w in adj[x]:
            if w not in dist:
                dist[w] = dist[x] + 1
                queue.append(w)
    return dist


def closure(n: int, edges) -> list[set[int]]:
    return [set(reach_from(n, edges, s)) for s in range(n)]


def live_edges(g) -> list[tuple[int, int]]:
    return [(u, v) for _, u, v in g.edges()]


def random_instance(rng: random.Random, n: int, m0: int, ops: int, mix=(0.35, 0.3, 0.35)) -> Instance:
    """Fuzzed instance built without dyntc's generator: loops, parallels, any mix."""
    live = [(rng.randrange(n), rng.randrange(n)) for _ in range(m0)]
    initial = list(live)
    seq = []
    for _ in range(ops):
        r = rng.random()
        if r < mix[1] and live:
            u, v = live.pop(rng.randrange(len(live)))
            seq.append(Operation(OpKind.DELETE, u, v))
        elif r < mix[0] + mix[1]:
            u, v = rng.randrange(n), rng.randrange(n)
            if rng.random() < 0.1 and live:
                u, v = rng.choice(live)  # parallel edge
            live.append((u, v))
            seq.append(Operation(OpKind.ADD, u, v))
        else:
            seq.append(Operation(OpKind.QUERY, rng.randrange(n), rng.randrange(n)))
    return Instance(n, initial, seq, {"name": f"fuzz-{n}-{m0}"})


@st.composite
def edge_lists(draw, max_n: int = 12, max_m: int = 40):
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_m))
    return n, edges


# ---- acceptance reporting ---------------------------------------------------

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance_record():
    def record(criterion: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE_RESULTS.append((criterion, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}")
