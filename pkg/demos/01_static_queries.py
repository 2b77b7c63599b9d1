"""
Static reachability queries
===========================

Four ways to answer "can s reach t?" on a graph that holds still.
"""

from dyntc import DiGraph, SearchScratch, bfs_query, bibfs_query, dbfs_query, dfs_query

# a small graph: a path 0 -> 1 -> 2 -> 3 -> 4 with a fan of dead ends at 0
g = DiGraph(40)
for u, v in [(0, 1), (1, 2), (2, 3), (3, 4)]:
    g.insert_edge(u, v)
for v in range(5, 40):
    g.insert_edge(0, v)

# every query agrees on the answer, they differ in how much they explore
scratch = SearchScratch()
for name, query in [("bfs", bfs_query), ("dfs", dfs_query), ("dbfs", dbfs_query), ("bibfs", bibfs_query)]:
    answer = query(g, 0, 4, scratch)
    print(f"{name:>5}: 0 -> 4 is {answer}, scanned {scratch.last_visited} vertices")

# the backward half of BiBFS runs dry fast when the target is hard to reach
print("bibfs 4 -> 0:", bibfs_query(g, 4, 0, scratch), "after", scratch.last_visited, "vertices")

# parallel edges are allowed; a deletion removes the most recently added copy
a = g.insert_edge(2, 3)
assert g.delete_edge(2, 3) == a
print("still 0 -> 4 after removing the duplicate:", bfs_query(g, 0, 4))
