"""Supportive-vertices transitive closure: SV(k), SVA(k, c) and SVC(z, c).

A supportive vertex ``v`` carries two dynamic reachability engines, one for
the vertices ``v`` reaches and one for the vertices reaching ``v``. With
those two sets a query ``s -> t`` can often be settled without a search:

* ``s`` reaches ``v`` and ``v`` reaches ``t``: yes;
* ``v`` reaches ``s`` but not ``t``: no (anything ``s`` reaches, ``v`` reaches);
* ``t`` reaches ``v`` but ``s`` does not: no.

Queries that no supportive vertex decides go to a static fallback search.

SV draws ``k`` non-isolated vertices once. SVA redraws them every ``c``
updates. SVC picks one vertex in each strongly connected component of at
least ``z`` vertices and maps every member to it, re-running the cover every
``c`` updates without ever dropping a supportive vertex.
"""
from __future__ import annotations

import enum
import random
from collections.abc import Iterable
from dataclasses import dataclass, field

from dyntc.graph import FORWARD, REVERSE, DiGraph, tarjan_scc
from dyntc.ssr import SsrEngine, SsrKind, SsrParams, make_engine
from dyntc.traversal import QUERIES, SearchScratch


class Variant(enum.Enum):
    SV = "sv"
    SVA = "sva"
    SVC = "svc"


class QueryStage(enum.IntEnum):
    SOURCE_SUPPORTIVE = 0
    TARGET_SUPPORTIVE = 1
    SCC_REPRESENTATIVE = 2
    O1 = 3
    O2 = 4
    O3 = 5
    FALLBACK = 6


def default_min_scc_size(n: int) -> int:
    return 25 if n < 1_000_000 else 50


@dataclass(frozen=True)
class SvConfig:
    variant: Variant = Variant.SV
    k: int = 1
    c: int | None = None  # adjustment period in updates; None means never
    z: int | None = None  # minimum SCC size; None picks by graph size
    ssr_kind: SsrKind = SsrKind.SES
    ssr_params: SsrParams = field(default_factory=SsrParams)
    seed: int = 0
    fallback: str = "bibfs"

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "ssr_kind", SsrKind(self.ssr_kind))
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.c is not None and self.c < 1:
            raise ValueError(f"c must be at least 1 or None, got {self.c}")
        if self.z is not None and self.z < 1:
            raise ValueError(f"z must be at least 1, got {self.z}")
        if self.fallback not in QUERIES:
            raise ValueError(f"unknown fallback {self.fallback!r}")


class SupportPair:
    """A supportive vertex with its out-reach and in-reach engines."""

    __slots__ = ("v", "fwd", "bwd")

    def __init__(self, g: DiGraph, v: int, kind: SsrKind, params: SsrParams) -> None:
        self.v = v
        self.fwd: SsrEngine = make_engine(kind, g, v, FORWARD, params)
        self.bwd: SsrEngine = make_engine(kind, g, v, REVERSE, params)

    def __repr__(self) -> str:
        return f"SupportPair({self.v})"


class SupportiveVertices:
    """Dynamic transitive closure through a set of supportive vertices.

    Drive it like any other algorithm: :meth:`initialize` once with the
    initial graph, then :meth:`on_insert` / :meth:`on_delete` after each
    graph mutation and :meth:`query` for reachability.
    """

    def __init__(self, config: SvConfig | None = None) -> None:
        self.config = config or SvConfig()
        self.rng = random.Random(self.config.seed)
        self.g: DiGraph | None = None
        self.supports: list[SupportPair] = []
        self.by_vertex: dict[int, SupportPair] = {}
        self.rep: list[int] = []
        self.target = self.config.k
        self.z = self.config.z
        self.updates_since_adjust = 0
        self.stage_counts = [0] * len(QueryStage)
        self.adjustments = 0
        self.peak_supports = 0
        self._scratch = SearchScratch()
        self._fallback = QUERIES[self.config.fallback]
        # counters of engines already destroyed by adjustments
        self._retired_notifications = 0
        self._retired_recomputes = 0

    def __repr__(self) -> str:
        return (
            f"SupportiveVertices({self.config.variant.value}, "
            f"supports={[p.v for p in self.supports]})"
        )

    # ---- setup -----------------------------------------------------------

    @property
    def deficit(self) -> int:
        return max(0, self.target - len(self.supports))

    def initialize(self, g: DiGraph) -> None:
        self.g = g
        self.rep = [-1] * g.n
        self._scratch.begin(g.n)
        if self.z is None:
            self.z = default_min_scc_size(g.n)
        if self.config.variant is Variant.SVC:
            self.target = 0
            self._cover()
        else:
            self._draw()

    def add_support(self, v: int) -> None:
        """Make ``v`` supportive; a no-op when it already is."""
        if v in self.by_vertex:
            return
        cfg = self.config
        pair = SupportPair(self.g, v, cfg.ssr_kind, cfg.ssr_params)
        self.supports.append(pair)
        self.by_vertex[v] = pair
        self.peak_supports = max(self.peak_supports, len(self.supports))

    def replace_supports(self, vertices: Iterable[int]) -> None:
        """Swap the current supportive vertices for ``vertices``.

        SCC representatives are dropped as well, so until the next adjustment
        queries go through the per-vertex stages only.
        """
        self._clear_supports()
        self.rep = [-1] * self.g.n
        for v in vertices:
            self.add_support(v)

    def _clear_supports(self) -> None:
        for pair in self.supports:
            for eng in (pair.fwd, pair.bwd):
                self._retired_notifications += eng.notifications
                self._retired_recomputes += eng.recomputes
        self.supports = []
        self.by_vertex = {}

    def _draw(self) -> None:
        g = self.g
        eligible = [v for v in range(g.n) if not g.is_isolated(v) and v not in self.by_vertex]
        need = self.target - len(self.supports)
        for v in self.rng.sample(eligible, min(need, len(eligible))):
            self.add_support(v)

    def _cover(self) -> None:
        """Select SCC representatives and rebuild the representative map."""
        g = self.g
        z = self.z
        comp, sizes = tarjan_scc(g)
        holder = [-1] * len(sizes)
        for pair in self.supports:
            c = comp[pair.v]
            if holder[c] < 0 or pair.v < holder[c]:
                holder[c] = pair.v
        big = [size >= z for size in sizes]
        # vertices are scanned in id order, so a new holder is the lowest member
        for v in range(g.n):
            c = comp[v]
            if big[c] and holder[c] < 0:
                holder[c] = v
                self.add_support(v)
        rep = self.rep
        for v in range(g.n):
            c = comp[v]
            rep[v] = holder[c] if big[c] else -1
        if not self.supports:
            self._seed_without_cover()

    def _seed_without_cover(self) -> None:
        g = self.g
        for v in range(g.n):
            if g.out_degree(v) and g.in_degree(v):
                self.add_support(v)
                return
        self.target = 1
        self._draw()

    def adjust(self) -> None:
        """Periodic re-selection: full redraw for SVA, cover refresh for SVC."""
        self.adjustments += 1
        if self.config.variant is Variant.SVA:
            self._clear_supports()
            self._draw()
        elif self.config.variant is Variant.SVC:
            self._cover()

    # ---- updates ---------------------------------------------------------

    def on_insert(self, eid: int, u: int, v: int) -> None:
        for pair in self.supports:
            pair.fwd.on_insert(eid, u, v)
            pair.bwd.on_insert(eid, u, v)
        if len(self.supports) < self.target:
            # every non-isolated vertex is already supportive while in deficit
            fresh = [x for x in dict.fromkeys((u, v)) if x not in self.by_vertex]
            need = self.target - len(self.supports)
            for x in self.rng.sample(fresh, min(need, len(fresh))):
                self.add_support(x)
        self._tick()

    def on_delete(self, eid: int, u: int, v: int) -> None:
        for pair in self.supports:
            pair.fwd.on_delete(eid, u, v)
            pair.bwd.on_delete(eid, u, v)
        self._tick()

    def _tick(self) -> None:
        c = self.config.c
        if c is None or self.config.variant is Variant.SV:
            return
        self.updates_since_adjust += 1
        if self.updates_since_adjust >= c:
            self.updates_since_adjust = 0
            self.adjust()

    # ---- queries ---------------------------------------------------------

    def query(self, s: int, t: int) -> bool:
        return self.query_stage(s, t)[0]

    def query_stage(self, s: int, t: int) -> tuple[bool, QueryStage]:
        answer, stage = self._decide(s, t)
        self.stage_counts[stage] += 1
        return answer, stage

    def _decide(self, s: int, t: int) -> tuple[bool, QueryStage]:
        if self.config.variant is Variant.SVC:
            rep = self.rep
            r = rep[s]
            if r >= 0:
                pair = self.by_vertex[r]
                if pair.fwd.query(s) and pair.bwd.query(s):
                    return pair.fwd.query(t), QueryStage.SCC_REPRESENTATIVE
                rep[s] = -1
            r = rep[t]
            if r >= 0:
                pair = self.by_vertex[r]
                if pair.fwd.query(t) and pair.bwd.query(t):
                    return pair.bwd.query(s), QueryStage.SCC_REPRESENTATIVE
                rep[t] = -1

        pair = self.by_vertex.get(s)
        if pair is not None:
            return pair.fwd.query(t), QueryStage.SOURCE_SUPPORTIVE
        pair = self.by_vertex.get(t)
        if pair is not None:
            return pair.bwd.query(s), QueryStage.TARGET_SUPPORTIVE

        for pair in self.supports:
            fwd, bwd = pair.fwd, pair.bwd
            s_in = bwd.query(s)
            t_out = fwd.query(t)
            if s_in and t_out:
                return True, QueryStage.O1
            if not t_out and fwd.query(s):
                return False, QueryStage.O2
            if not s_in and bwd.query(t):
                return False, QueryStage.O3
        return self._fallback(self.g, s, t, self._scratch), QueryStage.FALLBACK

    # ---- instrumentation -------------------------------------------------

    def stage_stats(self) -> dict[QueryStage, int]:
        return {stage: self.stage_counts[stage] for stage in QueryStage}

    @property
    def engine_notifications(self) -> int:
        live = sum(p.fwd.notifications + p.bwd.notifications for p in self.supports)
        return self._retired_notifications + live

    @property
    def recomputes(self) -> int:
        live = sum(p.fwd.recomputes + p.bwd.recomputes for p in self.supports)
        return self._retired_recomputes + live


def SV(k: int = 1, **kwargs) -> SupportiveVertices:
    return SupportiveVertices(SvConfig(Variant.SV, k=k, **kwargs))


def SVA(k: int = 1, c: int | None = 1000, **kwargs) -> SupportiveVertices:
    return SupportiveVertices(SvConfig(Variant.SVA, k=k, c=c, **kwargs))


def SVC(z: int | None = None, c: int | None = None, **kwargs) -> SupportiveVertices:
    return SupportiveVertices(SvConfig(Variant.SVC, z=z, c=c, **kwargs))
