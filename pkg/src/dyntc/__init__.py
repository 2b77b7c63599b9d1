"""Fully dynamic transitive closure via supportive vertices."""
from dyntc.bench import AlgoChoice, RunMetrics, emit_csv, oracle_answers, run_benchmark, verify_run
from dyntc.graph import FORWARD, REVERSE, DiGraph, Direction, MissingEdgeError, tarjan_scc
from dyntc.instances import (
    Instance,
    Operation,
    OpKind,
    generate_er,
    parse_instance,
    read_instance,
    save_instance,
    shuffle_updates,
    write_instance,
)
from dyntc.ssr import SESEngine, SIEngine, SsrKind, SsrParams, make_engine
from dyntc.supportive import SV, SVA, SVC, QueryStage, SupportiveVertices, SvConfig, Variant
from dyntc.traversal import SearchScratch, bfs_query, bibfs_query, dbfs_query, dfs_query

__version__ = "0.1.0"

__all__ = [
    "AlgoChoice",
    "DiGraph",
    "Direction",
    "FORWARD",
    "Instance",
    "MissingEdgeError",
    "Operation",
    "OpKind",
    "QueryStage",
    "REVERSE",
    "RunMetrics",
    "SESEngine",
    "SIEngine",
    "SV",
    "SVA",
    "SVC",
    "SearchScratch",
    "SsrKind",
    "SsrParams",
    "SupportiveVertices",
    "SvConfig",
    "Variant",
    "bfs_query",
    "bibfs_query",
    "dbfs_query",
    "dfs_query",
    "emit_csv",
    "generate_er",
    "make_engine",
    "oracle_answers",
    "parse_instance",
    "read_instance",
    "run_benchmark",
    "save_instance",
    "shuffle_updates",
    "tarjan_scc",
    "verify_run",
    "write_instance",
]
