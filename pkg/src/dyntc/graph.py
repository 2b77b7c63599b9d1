"""Dynamic directed multigraph with constant-time edge updates.

Vertices are dense integers ``0..n-1`` fixed at construction. Edges carry
fresh integer ids, so parallel edges and loops are ordinary edges. Each
vertex keeps two parallel lists per direction (neighbour ids and edge ids)
and every edge remembers its slot in both, which makes removal a
swap-with-last.

The adjacency lists are exposed read-only through :meth:`DiGraph.adjacency`
so that traversal code can iterate them without per-call allocation. Callers
must not mutate them.
"""
from __future__ import annotations

import enum
from collections.abc import Iterator
from typing import Protocol


class Direction(enum.Enum):
    FORWARD = "forward"
    REVERSE = "reverse"

    @property
    def flipped(self) -> Direction:
        return Direction.REVERSE if self is Direction.FORWARD else Direction.FORWARD


FORWARD = Direction.FORWARD
REVERSE = Direction.REVERSE


class MissingEdgeError(KeyError):
    """Raised when deleting an edge that is not in the graph."""

    def __init__(self, u: int, v: int) -> None:
        super().__init__(f"no edge {u} -> {v}")
        self.u = u
        self.v = v

    def __str__(self) -> str:
        return self.args[0]


class GraphObserver(Protocol):
    def on_insert(self, eid: int, u: int, v: int) -> None: ...

    def on_delete(self, eid: int, u: int, v: int) -> None: ...


class DiGraph:
    """Directed multigraph on a fixed vertex set.

    Observers registered with :meth:`subscribe` are notified after the
    adjacency structure has been updated, for insertions and deletions alike.
    """

    def __init__(self, n: int) -> None:
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.m = 0
        # per-vertex parallel lists: neighbour vertex, edge id
        self._out_nbr: list[list[int]] = [[] for _ in range(n)]
        self._out_eid: list[list[int]] = [[] for _ in range(n)]
        self._in_nbr: list[list[int]] = [[] for _ in range(n)]
        self._in_eid: list[list[int]] = [[] for _ in range(n)]
        # per-edge records, indexed by edge id; tail == -1 marks a dead id
        self._tail: list[int] = []
        self._head: list[int] = []
        self._out_pos: list[int] = []
        self._in_pos: list[int] = []
        # (u, v) -> live edge ids, most recent last
        self._parallel: dict[tuple[int, int], list[int]] = {}
        self._observers: list[GraphObserver] = []
        # adjacency slots written or moved; stays O(1) per update
        self.adjacency_touches = 0

    def __repr__(self) -> str:
        return f"DiGraph(n={self.n}, m={self.m})"

    @property
    def density(self) -> float:
        return self.m / self.n if self.n else 0.0

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range [0, {self.n})")

    # ---- mutation --------------------------------------------------------

    def insert_edge(self, u: int, v: int) -> int:
        """Add edge ``u -> v`` and return its id."""
        self._check_vertex(u)
        self._check_vertex(v)
        eid = len(self._tail)
        self._tail.append(u)
        self._head.append(v)
        out_nbr = self._out_nbr[u]
        self._out_pos.append(len(out_nbr))
        out_nbr.append(v)
        self._out_eid[u].append(eid)
        in_nbr = self._in_nbr[v]
        self._in_pos.append(len(in_nbr))
        in_nbr.append(u)
        self._in_eid[v].append(eid)
        self._parallel.setdefault((u, v), []).append(eid)
        self.m += 1
        self.adjacency_touches += 2
        for obs in self._observers:
            obs.on_insert(eid, u, v)
        return eid

    def delete_edge(self, u: int, v: int) -> int:
        """Remove the most recently inserted live edge ``u -> v``; return its id."""
        ids = self._parallel.get((u, v))
        if not ids:
            raise MissingEdgeError(u, v)
        eid = ids.pop()
        if not ids:
            del self._parallel[(u, v)]
        self._unlink(eid, u, v)
        for obs in self._observers:
            obs.on_delete(eid, u, v)
        return eid

    def _unlink(self, eid: int, u: int, v: int) -> None:
        self.adjacency_touches += _swap_remove(
            self._out_nbr[u], self._out_eid[u], self._out_pos, self._out_pos[eid]
        )
        self.adjacency_touches += _swap_remove(
            self._in_nbr[v], self._in_eid[v], self._in_pos, self._in_pos[eid]
        )
        self._tail[eid] = -1
        self._head[eid] = -1
        self.m -= 1

    def subscribe(self, observer: GraphObserver) -> None:
        self._observers.append(observer)

    def unsubscribe(self, observer: GraphObserver) -> None:
        self._observers.remove(observer)

    # ---- queries ---------------------------------------------------------

    def out_degree(self, v: int) -> int:
        return len(self._out_nbr[v])

    def in_degree(self, v: int) -> int:
        return len(self._in_nbr[v])

    def degree(self, v: int) -> int:
        return len(self._out_nbr[v]) + len(self._in_nbr[v])

    def is_isolated(self, v: int) -> bool:
        return not self._out_nbr[v] and not self._in_nbr[v]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self._parallel

    def edge(self, eid: int) -> tuple[int, int]:
        u = self._tail[eid] if 0 <= eid < len(self._tail) else -1
        if u < 0:
            raise KeyError(f"edge id {eid} is not live")
        return u, self._head[eid]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(eid, u, v)`` for every live edge in id order."""
        for eid, u in enumerate(self._tail):
            if u >= 0:
                yield eid, u, self._head[eid]

    def neighbors(self, v: int, direction: Direction = FORWARD) -> Iterator[tuple[int, int]]:
        """Yield ``(edge id, opposite endpoint)`` over out-edges or in-edges of ``v``."""
        self._check_vertex(v)
        nbrs, eids = self.adjacency(direction)
        return zip(eids[v], nbrs[v])

    def successors(self, v: int) -> list[int]:
        return list(self._out_nbr[v])

    def predecessors(self, v: int) -> list[int]:
        return list(self._in_nbr[v])

    def adjacency(self, direction: Direction = FORWARD) -> tuple[list[list[int]], list[list[int]]]:
        """Return the internal ``(neighbour lists, edge-id lists)`` for one direction."""
        if direction is FORWARD:
            return self._out_nbr, self._out_eid
        return self._in_nbr, self._in_eid

    def audit(self) -> None:
        """Check every structural invariant; raise AssertionError on violation."""
        live = [eid for eid, u in enumerate(self._tail) if u >= 0]
        assert len(live) == self.m, (len(live), self.m)
        assert sum(map(len, self._out_nbr)) == self.m
        assert sum(map(len, self._in_nbr)) == self.m
        for v in range(self.n):
            assert len(self._out_nbr[v]) == len(self._out_eid[v])
            assert len(self._in_nbr[v]) == len(self._in_eid[v])
            for pos, (w, eid) in enumerate(zip(self._out_nbr[v], self._out_eid[v])):
                assert self._tail[eid] == v and self._head[eid] == w
                assert self._out_pos[eid] == pos
            for pos, (w, eid) in enumerate(zip(self._in_nbr[v], self._in_eid[v])):
                assert self._head[eid] == v and self._tail[eid] == w
                assert self._in_pos[eid] == pos
        indexed = sorted(e for ids in self._parallel.values() for e in ids)
        assert indexed == live
        for (u, v), ids in self._parallel.items():
            assert ids and all(self._tail[e] == u and self._head[e] == v for e in ids)


def _swap_remove(nbrs: list[int], eids: list[int], positions: list[int], pos: int) -> int:
    last_eid = eids[-1]
    last_nbr = nbrs.pop()
    eids.pop()
    if pos == len(eids):
        return 1
    nbrs[pos] = last_nbr
    eids[pos] = last_eid
    positions[last_eid] = pos
    return 2


def tarjan_scc(g: DiGraph) -> tuple[list[int], list[int]]:
    """Strongly connected components, iteratively.

    Returns ``(comp, sizes)`` where ``comp[v]`` is the component id of ``v``
    and ``sizes[c]`` the number of vertices in component ``c``. Components are
    numbered in the order Tarjan's algorithm completes them, which is a
    reverse topological order of the condensation.
    """
    n = g.n
    out_nbr = g._out_nbr
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    comp = [-1] * n
    sizes: list[int] = []
    stack: list[int] = []
    counter = 0

    for root in range(n):
        if index[root] >= 0:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = 1
        # call stack of (vertex, next neighbour position)
        work = [(root, 0)]
        while work:
            v, i = work[-1]
            nbrs = out_nbr[v]
            descended = False
            while i < len(nbrs):
                w = nbrs[i]
                i += 1
                if index[w] < 0:
                    work[-1] = (v, i)
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = 1
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                c = len(sizes)
                size = 0
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp[w] = c
                    size += 1
                    if w == v:
                        break
                sizes.append(size)
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
    return comp, sizes
