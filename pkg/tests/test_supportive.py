from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyntc.graph import DiGraph
from dyntc.ssr import SsrKind
from dyntc.supportive import SV, SVA, SVC, QueryStage, SupportiveVertices, SvConfig, Variant

from conftest import closure, live_edges

DECIDING_TRUE = {QueryStage.O1}
DECIDING_FALSE = {QueryStage.O2, QueryStage.O3}


def build(n, edges):
    g = DiGraph(n)
    for u, v in edges:
        g.insert_edge(u, v)
    return g


class Driver:
    """Keeps a graph and an algorithm in step, mutating first and notifying after."""

    def __init__(self, g, alg):
        self.g = g
        self.alg = alg
        alg.initialize(g)

    def insert(self, u, v):
        self.alg.on_insert(self.g.insert_edge(u, v), u, v)

    def delete(self, u, v):
        self.alg.on_delete(self.g.delete_edge(u, v), u, v)


def test_config_validation():
    with pytest.raises(ValueError):
        SvConfig(k=0)
    with pytest.raises(ValueError):
        SvConfig(c=0)
    with pytest.raises(ValueError):
        SvConfig(z=0)
    with pytest.raises(ValueError):
        SvConfig(fallback="astar")
    assert SvConfig(variant="svc", ssr_kind="si").variant is Variant.SVC


def test_sv_picks_the_only_non_isolated_vertices():
    g = build(10, [(3, 7), (7, 3)])
    for seed in range(10):
        alg = SV(2, seed=seed)
        alg.initialize(g)
        assert {p.v for p in alg.supports} == {3, 7}


def test_sv_never_picks_isolated_vertices():
    g = build(50, [(v, v + 1) for v in range(0, 20, 2)])
    for seed in range(20):
        alg = SV(3, seed=seed)
        alg.initialize(g)
        assert all(not g.is_isolated(p.v) for p in alg.supports)
        assert len({p.v for p in alg.supports}) == 3


def test_svc_two_cycles_joined():
    g = build(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    alg = SVC(z=2)
    alg.initialize(g)
    assert [p.v for p in alg.supports] == [0, 3]
    assert sum(r >= 0 for r in alg.rep) == 6
    assert alg.rep == [0, 0, 0, 3, 3, 3]


def test_svc_dag_falls_back_to_inner_vertex():
    g = build(10, [(0, 4), (4, 9), (1, 2)])
    # oracle: vertices that are neither source nor sink
    inner = [v for v in range(10) if any(u == v for u, _ in live_edges(g)) and any(w == v for _, w in live_edges(g))]
    assert inner == [4]
    alg = SVC(z=25)
    alg.initialize(g)
    assert [p.v for p in alg.supports] == inner
    assert all(r < 0 for r in alg.rep)


def test_svc_without_inner_vertex_draws_like_sv():
    g = build(5, [(0, 1), (2, 3)])
    alg = SVC(z=3)
    alg.initialize(g)
    assert len(alg.supports) == 1 and not g.is_isolated(alg.supports[0].v)


def test_update_passes_to_every_engine_once():
    g = build(4, [(0, 1), (1, 2)])
    alg = SV(1)
    d = Driver(g, alg)
    d.insert(2, 3)
    assert alg.engine_notifications == 2
    pair = alg.supports[0]
    assert pair.fwd.notifications == 1 and pair.bwd.notifications == 1


def test_sv_two_supports_four_notifications_per_delete():
    g = build(4, [(0, 1), (1, 2), (2, 3)])
    alg = SV(2)
    d = Driver(g, alg)
    d.delete(1, 2)
    assert alg.engine_notifications == 4


def test_deficit_is_repaired_on_insert():
    g = build(6, [(0, 1)])
    alg = SV(3, seed=1)
    d = Driver(g, alg)
    assert len(alg.supports) == 2 and alg.deficit == 1
    d.insert(1, 4)
    assert {p.v for p in alg.supports} == {0, 1, 4}
    assert alg.deficit == 0


def test_deficit_repair_from_empty_graph():
    g = DiGraph(5)
    alg = SV(2)
    d = Driver(g, alg)
    assert alg.supports == []
    d.insert(3, 3)
    assert [p.v for p in alg.supports] == [3]
    d.insert(0, 1)
    assert len(alg.supports) == 2


def test_sva_period_triggers_reselection():
    rng = random.Random(0)
    n = 30
    g = build(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(60)])
    alg = SVA(1, c=5, seed=3)
    d = Driver(g, alg)
    first = alg.supports[0]
    for i in range(4):
        d.insert(i, i + 1)
    assert alg.supports[0] is first and alg.adjustments == 0
    d.insert(10, 11)
    assert alg.adjustments == 1
    assert len(alg.supports) == 1 and alg.supports[0] is not first
    assert alg.supports[0].fwd.recomputes == 1


def test_svc_period_triggers_scc_recomputation():
    g = build(6, [(0, 1), (1, 0)])
    alg = SVC(z=2, c=10)
    d = Driver(g, alg)
    assert [p.v for p in alg.supports] == [0]
    for i in range(9):
        d.insert(2 + i % 2, 3 - i % 2)
    assert alg.adjustments == 0
    d.insert(4, 5)
    assert alg.adjustments == 1
    assert [p.v for p in alg.supports] == [0, 2]


def test_deleting_last_edge_keeps_supports():
    g = build(2, [(0, 1)])
    alg = SV(2)
    d = Driver(g, alg)
    d.delete(0, 1)
    assert {p.v for p in alg.supports} == {0, 1}


def test_svc_split_scc_gains_a_support():
    # one 6-cycle, split into two 3-cycles by swapping two edges
    g = build(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    alg = SVC(z=3, c=4)
    d = Driver(g, alg)
    assert [p.v for p in alg.supports] == [0]
    d.delete(2, 3)
    d.delete(5, 0)
    d.insert(2, 0)
    d.insert(5, 3)
    assert alg.adjustments == 1
    assert [p.v for p in alg.supports] == [0, 3]
    assert alg.rep == [0, 0, 0, 3, 3, 3]


def test_svc_shrunken_scc_keeps_support_but_loses_map():
    g = build(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    alg = SVC(z=3, c=1)
    d = Driver(g, alg)
    assert [p.v for p in alg.supports] == [0] and alg.rep[:3] == [0, 0, 0]
    d.delete(2, 0)
    assert [p.v for p in alg.supports] == [0]
    assert alg.rep == [-1, -1, -1, -1]


def test_query_on_supportive_vertex_itself():
    g = build(3, [(0, 1), (1, 2)])
    alg = SV(1)
    alg.initialize(g)
    v = alg.supports[0].v
    assert alg.query_stage(v, v) == (True, QueryStage.SOURCE_SUPPORTIVE)


def test_ladder_on_path_with_middle_support():
    # hand-executed: support 1 has out-reach {1,2} and in-reach {0,1}
    g = build(3, [(0, 1), (1, 2)])
    alg = SupportiveVertices(SvConfig(k=1))
    alg.initialize(g)
    alg._clear_supports()
    alg.add_support(1)
    assert alg.query_stage(0, 2) == (True, QueryStage.O1)
    # 1 reaches 2 but not 0, so 2 cannot reach 0
    assert alg.query_stage(2, 0) == (False, QueryStage.O2)
    assert alg.query_stage(1, 0) == (False, QueryStage.SOURCE_SUPPORTIVE)
    assert alg.query_stage(2, 1) == (False, QueryStage.TARGET_SUPPORTIVE)


def test_ladder_o3():
    # support 1: 2 reaches 1, 0 does not; so 0 cannot reach 2
    g = build(3, [(2, 1)])
    alg = SupportiveVertices(SvConfig(k=1))
    alg.initialize(g)
    alg._clear_supports()
    alg.add_support(1)
    assert alg.query_stage(0, 2) == (False, QueryStage.O3)


def test_strongly_connected_never_falls_back():
    g = build(3, [(0, 1), (1, 2), (2, 0)])
    for seed in range(5):
        alg = SV(1, seed=seed)
        alg.initialize(g)
        for s in range(3):
            for t in range(3):
                answer, stage = alg.query_stage(s, t)
                assert answer
                assert stage in {QueryStage.SOURCE_SUPPORTIVE, QueryStage.TARGET_SUPPORTIVE, QueryStage.O1}


def test_stage_stats_snapshot():
    g = build(4, [(0, 1), (1, 2), (2, 3)])
    alg = SV(1)
    alg.initialize(g)
    assert sum(alg.stage_stats().values()) == 0
    for i in range(10):
        alg.query(i % 4, (i * 3) % 4)
    stats = alg.stage_stats()
    assert sum(stats.values()) == 10
    stats[QueryStage.O1] += 100
    assert sum(alg.stage_stats().values()) == 10


def test_svc_stale_representative_is_dropped():
    g = build(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    alg = SVC(z=3)
    d = Driver(g, alg)
    assert alg.rep[:3] == [0, 0, 0]
    d.delete(2, 0)
    answer, stage = alg.query_stage(1, 3)
    assert answer and stage is not QueryStage.SCC_REPRESENTATIVE
    assert alg.rep[1] == -1
    # second time round the same later branch answers
    assert alg.query_stage(1, 3) == (answer, stage)


def test_svc_uses_representative():
    g = build(5, [(0, 1), (1, 2), (2, 0), (2, 3)])
    alg = SVC(z=3)
    alg.initialize(g)
    assert alg.query_stage(1, 3) == (True, QueryStage.SCC_REPRESENTATIVE)
    assert alg.query_stage(3, 2) == (False, QueryStage.SCC_REPRESENTATIVE)
    assert alg.query_stage(1, 4) == (False, QueryStage.SCC_REPRESENTATIVE)


VARIANTS = [
    dict(variant=Variant.SV, k=1),
    dict(variant=Variant.SV, k=3),
    dict(variant=Variant.SVA, k=1, c=3),
    dict(variant=Variant.SVA, k=2, c=17),
    dict(variant=Variant.SVC, z=1, c=None),
    dict(variant=Variant.SVC, z=2, c=4),
    dict(variant=Variant.SVC, z=3, c=25),
]


@pytest.mark.parametrize("params", VARIANTS, ids=lambda p: "-".join(f"{k}={getattr(v, 'value', v)}" for k, v in p.items()))
@given(seed=st.integers(0, 2**32), n=st.integers(1, 40), kind=st.sampled_from(list(SsrKind)))
def test_soundness_against_closure(params, seed, n, kind):
    rng = random.Random(seed)
    g = build(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randrange(2 * n + 1))])
    alg = SupportiveVertices(SvConfig(ssr_kind=kind, seed=seed, fallback=rng.choice(["bfs", "dfs", "dbfs", "bibfs"]), **params))
    d = Driver(g, alg)
    for _ in range(60):
        r = rng.random()
        if r < 0.3 and g.m:
            _, u, v = rng.choice(list(g.edges()))
            d.delete(u, v)
        elif r < 0.6:
            d.insert(rng.randrange(n), rng.randrange(n))
        else:
            reach = closure(n, live_edges(g))
            s, t = rng.randrange(n), rng.randrange(n)
            answer, stage = alg.query_stage(s, t)
            assert answer == (t in reach[s]), (s, t, stage)
            if stage in DECIDING_TRUE:
                assert answer
            if stage in DECIDING_FALSE:
                assert not answer
        supports = [p.v for p in alg.supports]
        assert len(supports) == len(set(supports))
        if params["variant"] is not Variant.SVC:
            assert len(supports) <= params["k"]
        else:
            assert all(r < 0 or r in alg.by_vertex for r in alg.rep)


def test_determinism_of_choices_and_answers():
    rng = random.Random(4)
    n = 40
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(70)]
    script = [(rng.random(), rng.randrange(n), rng.randrange(n)) for _ in range(200)]

    def run():
        g = build(n, edges)
        alg = SVA(2, c=13, seed=99)
        d = Driver(g, alg)
        log = []
        for r, a, b in script:
            if r < 0.3 and g.m:
                _, u, v = sorted(g.edges())[a % g.m]
                d.delete(u, v)
            elif r < 0.6:
                d.insert(a, b)
            else:
                log.append(alg.query_stage(a, b))
            log.append(tuple(p.v for p in alg.supports))
        return log

    assert run() == run()


def test_replace_supports_resets_representatives():
    g = DiGraph(30)
    for v in range(30):
        g.insert_edge(v, (v + 1) % 30)
    svc = SVC(z=5)
    svc.initialize(g)
    assert svc.query_stage(3, 20)[1] is QueryStage.SCC_REPRESENTATIVE
    before = svc.engine_notifications
    svc.replace_supports([7])
    assert [p.v for p in svc.supports] == [7]
    assert svc.query_stage(3, 20) == (True, QueryStage.O1)
    assert svc.engine_notifications == before
