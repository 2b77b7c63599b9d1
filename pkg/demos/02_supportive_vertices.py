"""
Answering queries through supportive vertices
=============================================

A supportive vertex keeps everything it reaches and everything reaching it
up to date. Most queries can then be decided by looking at those two sets.
"""

import random
from collections import Counter

from dyntc import SV, DiGraph, QueryStage

g = DiGraph(6)
for u, v in [(0, 1), (1, 2), (2, 3), (3, 4)]:
    g.insert_edge(u, v)

# pick vertex 2 by hand so the ladder is easy to follow
sv = SV(k=1)
sv.initialize(g)
sv.replace_supports([2])

for s, t in [(0, 4), (4, 0), (5, 1), (2, 4)]:
    answer, stage = sv.query_stage(s, t)
    print(f"{s} -> {t}: {answer!s:5} decided by {stage.name}")

# the structure is told about every update after the graph changes
eid = g.delete_edge(1, 2)
sv.on_delete(eid, 1, 2)
print("after deleting 1 -> 2, 0 -> 4 is", sv.query_stage(0, 4))

eid = g.insert_edge(0, 2)
sv.on_insert(eid, 0, 2)
print("after inserting 0 -> 2, 0 -> 4 is", sv.query_stage(0, 4))

# on a larger random graph, count which rung of the ladder answers
rng = random.Random(1)
n = 500
big = DiGraph(n)
for _ in range(2 * n):
    big.insert_edge(rng.randrange(n), rng.randrange(n))
sv = SV(k=2, seed=3)
sv.initialize(big)
stages = Counter(sv.query_stage(rng.randrange(n), rng.randrange(n))[1] for _ in range(2000))
for stage in QueryStage:
    print(f"{stage.name:>18}: {stages.get(stage, 0)}")
