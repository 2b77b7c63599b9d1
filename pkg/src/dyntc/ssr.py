"""Fully dynamic single-source and single-sink reachability.

Two engines are provided, both rooted at one vertex and oriented either
along the edges (``FORWARD``: which vertices does the root reach) or against
them (``REVERSE``: which vertices reach the root). A reverse engine walks the
graph's in-adjacency; no mirrored graph is built.

``SIEngine``
    Keeps an arbitrary reachability tree. Insertions extend it by BFS only
    when they make something new reachable. Deleting a tree edge detaches a
    subtree, which is re-hung by scanning its vertices' incoming edges for
    a still-reachable parent and then searching forward from every
    re-hung vertex.

``SESEngine``
    Keeps an exact BFS level tree (a simplified Even-Shiloach tree). After a
    tree-edge deletion, orphaned vertices look for a parent one level up and
    otherwise move down a level, pulling their tree children along.

Both give up on incremental repair and rebuild from scratch when a deletion
looks expensive: SI when the detached subtree holds more than ``ratio * n``
vertices, SES when more than ``ratio * n`` vertices were queued or one vertex
dropped more than ``beta`` levels during the same deletion.

Engines are driven with post-mutation notifications: ``on_insert`` after the
edge is in the graph, ``on_delete`` after it is gone.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from dyntc.graph import FORWARD, DiGraph, Direction


class SsrKind(enum.Enum):
    SI = "si"
    SES = "ses"


@dataclass(frozen=True)
class SsrParams:
    ratio: float = 0.25
    beta: int = 5

    def __post_init__(self) -> None:
        if not 0.0 <= self.ratio <= 1.0:
            raise ValueError(f"ratio must lie in [0, 1], got {self.ratio}")
        if self.beta < 1:
            raise ValueError(f"beta must be at least 1, got {self.beta}")


class SsrEngine:
    """State shared by both engines: the tree, orientation and counters."""

    kind: SsrKind

    def __init__(
        self,
        g: DiGraph,
        root: int,
        direction: Direction = FORWARD,
        params: SsrParams | None = None,
    ) -> None:
        if not 0 <= root < g.n:
            raise IndexError(f"root {root} out of range [0, {g.n})")
        self.g = g
        self.root = root
        self.direction = direction
        self.params = params or SsrParams()
        # "down" follows the tree direction, "up" looks for parents
        self._down_nbr, self._down_eid = g.adjacency(direction)
        self._up_nbr, self._up_eid = g.adjacency(direction.flipped)
        self.parent_vertex: list[int] = []
        self.parent_edge: list[int] = []
        self.recomputes = 0
        self.notifications = 0
        self.vertices_touched = 0
        self.last_delete_work = 0
        self.last_abort: str | None = None
        self.recompute()

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(root={self.root}, "
            f"direction={self.direction.value}, reachable={self.count_reachable()})"
        )

    def _orient(self, u: int, v: int) -> tuple[int, int]:
        return (u, v) if self.direction is FORWARD else (v, u)

    def recompute(self) -> None:
        raise NotImplementedError

    def query(self, v: int) -> bool:
        raise NotImplementedError

    def on_insert(self, eid: int, u: int, v: int) -> None:
        raise NotImplementedError

    def on_delete(self, eid: int, u: int, v: int) -> None:
        raise NotImplementedError

    def reachable_set(self) -> set[int]:
        return {v for v in range(self.g.n) if self.query(v)}

    def count_reachable(self) -> int:
        return sum(1 for v in range(self.g.n) if self.query(v))


class SIEngine(SsrEngine):
    kind = SsrKind.SI

    def recompute(self) -> None:
        n = self.g.n
        self.reach = reach = bytearray(n)
        self.parent_vertex = parent_v = [-1] * n
        self.parent_edge = parent_e = [-1] * n
        reach[self.root] = 1
        self._grow([self.root], reach, parent_v, parent_e)
        self.recomputes += 1

    def _grow(
        self, frontier: list[int], reach: bytearray, parent_v: list[int], parent_e: list[int]
    ) -> None:
        down_nbr, down_eid = self._down_nbr, self._down_eid
        touched = 0
        for x in frontier:
            touched += 1
            for w, e in zip(down_nbr[x], down_eid[x]):
                if not reach[w]:
                    reach[w] = 1
                    parent_v[w] = x
                    parent_e[w] = e
                    frontier.append(w)
        self.vertices_touched += touched

    def query(self, v: int) -> bool:
        return bool(self.reach[v])

    def on_insert(self, eid: int, u: int, v: int) -> None:
        self.notifications += 1
        tail, tip = self._orient(u, v)
        reach = self.reach
        if reach[tip] or not reach[tail]:
            return
        reach[tip] = 1
        self.parent_vertex[tip] = tail
        self.parent_edge[tip] = eid
        self._grow([tip], reach, self.parent_vertex, self.parent_edge)

    def on_delete(self, eid: int, u: int, v: int) -> None:
        self.notifications += 1
        self.last_abort = None
        self.last_delete_work = 0
        _, tip = self._orient(u, v)
        parent_e = self.parent_edge
        if parent_e[tip] != eid:
            return
        parent_v = self.parent_vertex
        reach = self.reach
        limit = self.params.ratio * self.g.n

        detached = [tip]
        if len(detached) > limit:
            self._abort("ratio")
            return
        down_nbr, down_eid = self._down_nbr, self._down_eid
        for x in detached:
            for w, e in zip(down_nbr[x], down_eid[x]):
                if parent_e[w] == e:
                    detached.append(w)
            if len(detached) > limit:
                self.last_delete_work = len(detached)
                self._abort("ratio")
                return
        for x in detached:
            reach[x] = 0
            parent_v[x] = -1
            parent_e[x] = -1

        up_nbr, up_eid = self._up_nbr, self._up_eid
        rehung = []
        for x in detached:
            for y, e in zip(up_nbr[x], up_eid[x]):
                if reach[y]:
                    reach[x] = 1
                    parent_v[x] = y
                    parent_e[x] = e
                    rehung.append(x)
                    break
        self._grow(rehung, reach, parent_v, parent_e)
        self.last_delete_work = len(detached)
        self.vertices_touched += len(detached)

    def _abort(self, reason: str) -> None:
        self.last_abort = reason
        self.recompute()


class SESEngine(SsrEngine):
    kind = SsrKind.SES

    def recompute(self) -> None:
        n = self.g.n
        self.level = level = [n] * n
        self.parent_vertex = parent_v = [-1] * n
        self.parent_edge = parent_e = [-1] * n
        level[self.root] = 0
        down_nbr, down_eid = self._down_nbr, self._down_eid
        frontier = [self.root]
        for x in frontier:
            nxt = level[x] + 1
            for w, e in zip(down_nbr[x], down_eid[x]):
                if level[w] == n:
                    level[w] = nxt
                    parent_v[w] = x
                    parent_e[w] = e
                    frontier.append(w)
        self.vertices_touched += len(frontier)
        self.recomputes += 1

    def query(self, v: int) -> bool:
        return self.level[v] < self.g.n

    def distance(self, v: int) -> int | None:
        """BFS distance from (or to) the root, ``None`` when unreachable."""
        lv = self.level[v]
        return lv if lv < self.g.n else None

    def on_insert(self, eid: int, u: int, v: int) -> None:
        self.notifications += 1
        tail, tip = self._orient(u, v)
        level = self.level
        if level[tail] + 1 >= level[tip]:
            return
        parent_v, parent_e = self.parent_vertex, self.parent_edge
        level[tip] = level[tail] + 1
        parent_v[tip] = tail
        parent_e[tip] = eid
        down_nbr, down_eid = self._down_nbr, self._down_eid
        queue = [tip]
        for x in queue:
            nxt = level[x] + 1
            for w, e in zip(down_nbr[x], down_eid[x]):
                if nxt < level[w]:
                    level[w] = nxt
                    parent_v[w] = x
                    parent_e[w] = e
                    queue.append(w)
        self.vertices_touched += len(queue)

    def on_delete(self, eid: int, u: int, v: int) -> None:
        self.notifications += 1
        self.last_abort = None
        self.last_delete_work = 0
        _, tip = self._orient(u, v)
        parent_v, parent_e = self.parent_vertex, self.parent_edge
        if parent_e[tip] != eid:
            return
        parent_v[tip] = -1
        parent_e[tip] = -1

        n = self.g.n
        level = self.level
        beta = self.params.beta
        limit = self.params.ratio * n
        up_nbr, up_eid = self._up_nbr, self._up_eid
        down_nbr, down_eid = self._down_nbr, self._down_eid

        queue = deque([tip])
        queued = {tip}
        seen = {tip}
        drops: dict[int, int] = {}
        work = 0
        if len(seen) > limit:
            self._abort("ratio", work)
            return
        while queue:
            w = queue.popleft()
            queued.discard(w)
            work += 1
            lw = level[w]
            if lw >= n:
                continue
            want = lw - 1
            found = False
            fed = False
            for y, e in zip(up_nbr[w], up_eid[w]):
                ly = level[y]
                if ly == want:
                    parent_v[w] = y
                    parent_e[w] = e
                    found = True
                    break
                if ly < n:
                    fed = True
            if found:
                continue
            # no up-neighbour with a finite level: unreachable, no need to creep
            if fed:
                dropped = drops.get(w, 0) + 1
                if dropped > beta:
                    self._abort("beta", work)
                    return
                drops[w] = dropped
            parent_v[w] = -1
            parent_e[w] = -1
            retry = [c for c, e in zip(down_nbr[w], down_eid[w]) if parent_e[c] == e]
            if not fed or lw + 1 >= n:
                level[w] = n
            else:
                level[w] = lw + 1
                retry.append(w)
            for c in retry:
                if c in queued:
                    continue
                if c not in seen:
                    seen.add(c)
                    if len(seen) > limit:
                        self._abort("ratio", work)
                        return
                queued.add(c)
                queue.append(c)
        self.last_delete_work = work
        self.vertices_touched += work

    def _abort(self, reason: str, work: int) -> None:
        self.last_abort = reason
        self.last_delete_work = work
        self.vertices_touched += work
        self.recompute()


def make_engine(
    kind: SsrKind | str,
    g: DiGraph,
    root: int,
    direction: Direction = FORWARD,
    params: SsrParams | None = None,
) -> SsrEngine:
    kind = SsrKind(kind)
    cls = SIEngine if kind is SsrKind.SI else SESEngine
    return cls(g, root, direction, params)
