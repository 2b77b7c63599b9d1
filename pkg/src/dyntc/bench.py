"""Run one algorithm over an instance with separate update and query timing.

The graph mutation for every update happens outside the timed region; only
the algorithm's notification (for updates) or its query call is measured.
Initialization is timed on its own and kept out of both totals.
"""
from __future__ import annotations

import csv
import hashlib
import io
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Protocol, TextIO

from dyntc.graph import DiGraph, MissingEdgeError
from dyntc.instances import ConfigError, Instance, OpKind, ReplayError
from dyntc.ssr import SsrKind, SsrParams
from dyntc.supportive import QueryStage, SupportiveVertices, SvConfig, Variant
from dyntc.traversal import QUERIES, SearchScratch, StaticAlgorithm, bfs_query

STATIC = ("bfs", "dfs", "dbfs", "bibfs")
DYNAMIC = ("sv", "sva", "svc")


class Algorithm(Protocol):
    def initialize(self, g: DiGraph) -> None: ...

    def on_insert(self, eid: int, u: int, v: int) -> None: ...

    def on_delete(self, eid: int, u: int, v: int) -> None: ...

    def query(self, s: int, t: int) -> bool: ...


@dataclass(frozen=True)
class AlgoChoice:
    name: str
    k: int = 1
    c: int | None = None
    z: int | None = None
    ssr: str = "ses"
    ratio: float = 0.25
    beta: int = 5
    fallback: str = "bibfs"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.name not in STATIC + DYNAMIC:
            raise ConfigError(f"unknown algorithm {self.name!r}")
        try:
            self.sv_config()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @property
    def label(self) -> str:
        if self.name in STATIC:
            return self.name
        c = "inf" if self.c is None else str(self.c)
        if self.name == "sv":
            args = f"{self.k}"
        elif self.name == "sva":
            args = f"{self.k},{c}"
        else:
            args = f"{'auto' if self.z is None else self.z},{c}"
        return f"{self.name}({args};{self.ssr})"

    def sv_config(self) -> SvConfig | None:
        if self.name in STATIC:
            return None
        return SvConfig(
            variant=Variant(self.name),
            k=self.k,
            c=None if self.name == "sv" else self.c,
            z=self.z,
            ssr_kind=SsrKind(self.ssr),
            ssr_params=SsrParams(self.ratio, self.beta),
            seed=self.seed,
            fallback=self.fallback,
        )


def make_algorithm(choice: AlgoChoice) -> Algorithm:
    config = choice.sv_config()
    if config is None:
        return StaticAlgorithm(choice.name)
    return SupportiveVertices(config)


@dataclass
class RunMetrics:
    instance: str
    n: int
    density: float
    algo: str
    seed: int
    init_ns: int = 0
    update_ns: int = 0
    query_ns: int = 0
    inserts: int = 0
    deletes: int = 0
    queries: int = 0
    stages: dict[QueryStage, int] = field(default_factory=dict)
    recomputes: int = 0
    notifications: int = 0
    peak_supports: int = 0
    timed_out: bool = False
    digest: str = ""
    answers: bytearray = field(default_factory=bytearray, repr=False)

    @property
    def ops_ns(self) -> int:
        return self.update_ns + self.query_ns

    @property
    def non_fallback_share(self) -> float:
        if not self.queries or not self.stages:
            return 0.0
        return 1.0 - self.stages.get(QueryStage.FALLBACK, 0) / self.queries


def answers_digest(answers: bytes | bytearray) -> str:
    """64-bit order-sensitive hash of a query-answer stream."""
    return hashlib.blake2b(bytes(answers), digest_size=8).hexdigest()


def _build_graph(inst: Instance) -> DiGraph:
    g = DiGraph(inst.n)
    for u, v in inst.initial_edges:
        g.insert_edge(u, v)
    return g


def run_benchmark(
    inst: Instance,
    choice: AlgoChoice,
    timeout: float | None = None,
    trace: TextIO | None = None,
    algorithm: Algorithm | None = None,
) -> RunMetrics:
    """Drive one algorithm through ``inst`` one operation at a time.

    ``timeout`` is in seconds of wall time over the operation phase; the run
    stops after the operation during which it expired. Algorithms that mark
    themselves ``stateless_updates`` are not notified of updates at all, so
    their update time is exactly zero. With ``trace`` set,
    one ``index kind a b ns [answer]`` line is written per operation.
    """
    alg = algorithm if algorithm is not None else make_algorithm(choice)
    g = _build_graph(inst)
    metrics = RunMetrics(inst.name, inst.n, inst.density, choice.label, choice.seed)

    clock = time.perf_counter_ns
    t0 = clock()
    alg.initialize(g)
    metrics.init_ns = clock() - t0

    deadline = None if timeout is None else clock() + int(timeout * 1e9)
    answers = metrics.answers
    update_ns = query_ns = 0
    n_ins = n_del = n_q = 0
    insert_edge, delete_edge = g.insert_edge, g.delete_edge
    on_insert, on_delete, query = alg.on_insert, alg.on_delete, alg.query
    ADD, DELETE = OpKind.ADD, OpKind.DELETE
    free_updates = getattr(alg, "stateless_updates", False)
    for pos, op in enumerate(inst.ops):
        kind = op.kind
        if kind is ADD:
            eid = insert_edge(op.a, op.b)
            if free_updates:
                dt = 0
            else:
                t0 = clock()
                on_insert(eid, op.a, op.b)
                dt = clock() - t0
                update_ns += dt
            n_ins += 1
        elif kind is DELETE:
            try:
                eid = delete_edge(op.a, op.b)
            except MissingEdgeError:
                raise ReplayError(pos, op) from None
            if free_updates:
                dt = 0
            else:
                t0 = clock()
                on_delete(eid, op.a, op.b)
                dt = clock() - t0
                update_ns += dt
            n_del += 1
        else:
            t0 = clock()
            ans = query(op.a, op.b)
            dt = clock() - t0
            query_ns += dt
            answers.append(ans)
            n_q += 1
        if trace is not None:
            extra = f" {int(ans)}" if kind is OpKind.QUERY else ""
            trace.write(f"{pos} {kind.value} {op.a} {op.b} {dt}{extra}\n")
        if deadline is not None and clock() > deadline:
            metrics.timed_out = True
            break

    metrics.update_ns, metrics.query_ns = update_ns, query_ns
    metrics.inserts, metrics.deletes, metrics.queries = n_ins, n_del, n_q
    metrics.digest = answers_digest(answers)
    if isinstance(alg, SupportiveVertices):
        metrics.stages = alg.stage_stats()
        metrics.recomputes = alg.recomputes
        metrics.notifications = alg.engine_notifications
        metrics.peak_supports = alg.peak_supports
    return metrics


# ---- verification --------------------------------------------------------


@dataclass
class Divergence:
    position: int
    s: int
    t: int
    expected: bool
    got: bool
    stage: QueryStage | None

    def __str__(self) -> str:
        stage = self.stage.name if self.stage is not None else "-"
        return (
            f"divergence at op {self.position}: query {self.s} -> {self.t} "
            f"expected {self.expected}, got {self.got} (stage {stage})"
        )


@dataclass
class VerifyReport:
    algo: str
    queries: int
    divergence: Divergence | None = None

    @property
    def ok(self) -> bool:
        return self.divergence is None

    def __str__(self) -> str:
        if self.ok:
            return f"{self.algo}: {self.queries} queries agree with the BFS oracle"
        return f"{self.algo}: {self.divergence}"


def oracle_answers(inst: Instance) -> list[bool]:
    """Answer every query of ``inst`` with a plain BFS on the replayed graph."""
    g = _build_graph(inst)
    scratch = SearchScratch(inst.n)
    out = []
    for pos, op in enumerate(inst.ops):
        if op.kind is OpKind.ADD:
            g.insert_edge(op.a, op.b)
        elif op.kind is OpKind.DELETE:
            try:
                g.delete_edge(op.a, op.b)
            except MissingEdgeError:
                raise ReplayError(pos, op) from None
        else:
            out.append(bfs_query(g, op.a, op.b, scratch))
    return out


def verify_run(
    inst: Instance,
    choice: AlgoChoice,
    expected: Sequence[bool] | None = None,
    factory: Callable[[AlgoChoice], Algorithm] = make_algorithm,
) -> VerifyReport:
    """Check every answer of ``choice`` against BFS and report the first mismatch.

    The oracle runs on its own graph copy; pass ``expected`` (from
    :func:`oracle_answers`) to reuse it across many algorithms.
    """
    if expected is None:
        expected = oracle_answers(inst)
    alg = factory(choice)
    g = _build_graph(inst)
    alg.initialize(g)
    staged = getattr(alg, "query_stage", None)
    qi = 0
    for pos, op in enumerate(inst.ops):
        if op.kind is OpKind.ADD:
            eid = g.insert_edge(op.a, op.b)
            alg.on_insert(eid, op.a, op.b)
        elif op.kind is OpKind.DELETE:
            try:
                eid = g.delete_edge(op.a, op.b)
            except MissingEdgeError:
                raise ReplayError(pos, op) from None
            alg.on_delete(eid, op.a, op.b)
        else:
            if staged is not None:
                got, stage = staged(op.a, op.b)
            else:
                got, stage = alg.query(op.a, op.b), None
            if bool(got) != expected[qi]:
                div = Divergence(pos, op.a, op.b, expected[qi], bool(got), stage)
                return VerifyReport(choice.label, qi + 1, div)
            qi += 1
    return VerifyReport(choice.label, qi)


def verify_grid(seed: int = 0) -> list[AlgoChoice]:
    """Every static algorithm plus the dynamic parameter grid used for verification."""
    grid = [AlgoChoice(name) for name in STATIC]
    fallbacks = list(QUERIES)
    i = 0
    for ssr in ("si", "ses"):
        for k in (1, 2, 3):
            grid.append(AlgoChoice("sv", k=k, ssr=ssr, seed=seed, fallback=fallbacks[i % 4]))
            i += 1
            for c in (5, 50, None):
                grid.append(AlgoChoice("sva", k=k, c=c, ssr=ssr, seed=seed, fallback=fallbacks[i % 4]))
                i += 1
        for z in (1, 2, 25):
            for c in (5, 50, None):
                grid.append(AlgoChoice("svc", z=z, c=c, ssr=ssr, seed=seed, fallback=fallbacks[i % 4]))
                i += 1
    return grid


# ---- output --------------------------------------------------------------

CSV_COLUMNS = [
    "instance",
    "n",
    "density",
    "algo",
    "seed",
    "init_ns",
    "update_ns",
    "query_ns",
    "ops_ns",
    "inserts",
    "deletes",
    "queries",
    *(f"stage_{stage.name.lower()}" for stage in QueryStage),
    "non_fallback_share",
    "recomputes",
    "notifications",
    "peak_supports",
    "timeout",
    "digest",
]


def emit_csv(metrics: Sequence[RunMetrics], stream: TextIO | None = None, header: bool = True) -> str | None:
    out = stream if stream is not None else io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if header:
        writer.writerow(CSV_COLUMNS)
    for m in metrics:
        writer.writerow(
            [
                m.instance,
                m.n,
                f"{m.density:g}",
                m.algo,
                m.seed,
                m.init_ns,
                m.update_ns,
                m.query_ns,
                m.ops_ns,
                m.inserts,
                m.deletes,
                m.queries,
                *(m.stages.get(stage, 0) for stage in QueryStage),
                f"{m.non_fallback_share:.6f}" if m.stages else "",
                m.recomputes,
                m.notifications,
                m.peak_supports,
                int(m.timed_out),
                m.digest,
            ]
        )
    if stream is None:
        return out.getvalue()  # type: ignore[union-attr]
    return None
