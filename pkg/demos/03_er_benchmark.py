"""
A small benchmark on a random instance
======================================

Generate a seeded instance, run a few algorithms over it, and compare the
time spent on operations. All runs must produce the same answer digest.
"""

import sys

from dyntc import AlgoChoice, emit_csv, generate_er, run_benchmark

# 3000 vertices, 5 edges per vertex, 6000 operations in batches of 10
inst = generate_er(3000, 5, 6000, mix=(33, 33, 34), batch=10, seed=7)
print(inst.name, inst.counts())

choices = [AlgoChoice("bfs"), AlgoChoice("bibfs"), AlgoChoice("sv"), AlgoChoice("sv", k=2), AlgoChoice("svc")]
rows = [run_benchmark(inst, choice) for choice in choices]

base = rows[0].ops_ns
for m in rows:
    print(f"{m.algo:>16}  ops {m.ops_ns / 1e6:8.1f} ms  {base / m.ops_ns:6.1f}x vs bfs  digest {m.digest}")

assert len({m.digest for m in rows}) == 1

# the same rows as CSV, ready for a spreadsheet
emit_csv(rows, sys.stdout)
