"""Dynamic instances: random generation, the event-list text format, shuffling.

Text format (UTF-8, LF line endings, whitespace separated)::

    # name=er-n100-d2        optional metadata, one key=value per line
    n 100                    vertex count
    e 0 1                    initial edges, zero or more
                             blank separator
    a 3 4                    insert edge 3 -> 4
    d 0 1                    delete one edge 0 -> 1
    q 5 7                    does 5 reach 7?

Files ending in ``.gz`` (or starting with the gzip magic) are decompressed
transparently.
"""
from __future__ import annotations

import enum
import gzip
import io
import math
import os
import random
from collections import Counter, deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import NamedTuple, TextIO


class OpKind(str, enum.Enum):
    ADD = "a"
    DELETE = "d"
    QUERY = "q"


class Operation(NamedTuple):
    kind: OpKind
    a: int
    b: int

    def __str__(self) -> str:
        return f"{self.kind.value} {self.a} {self.b}"


@dataclass
class Instance:
    n: int
    initial_edges: list[tuple[int, int]] = field(default_factory=list)
    ops: list[Operation] = field(default_factory=list)
    meta: dict[str, str] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.meta.get("name", "")

    @property
    def density(self) -> float:
        return len(self.initial_edges) / self.n if self.n else 0.0

    def counts(self) -> Counter[OpKind]:
        return Counter(op.kind for op in self.ops)


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ReplayError(ValueError):
    """A deletion names an edge that is not live at its position."""

    def __init__(self, position: int, op: Operation) -> None:
        super().__init__(f"operation {position} ({op}) deletes a missing edge")
        self.position = position
        self.op = op


class ConfigError(ValueError):
    pass


# ---- generation ----------------------------------------------------------


def parse_mix(text: str) -> tuple[float, float, float]:
    """Parse ``"ins:del:query"`` percentages, e.g. ``"33:33:34"``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"mix must look like a:d:q, got {text!r}")
    try:
        mix = tuple(float(p) for p in parts)
    except ValueError:
        raise ConfigError(f"mix must be numeric, got {text!r}") from None
    _check_mix(mix)
    return mix  # type: ignore[return-value]


def _check_mix(mix: tuple[float, float, float]) -> None:
    if len(mix) != 3 or any(p < 0 for p in mix) or not math.isclose(sum(mix), 100.0):
        raise ConfigError(f"mix must be three non-negative percentages summing to 100, got {mix}")


def _batch_plan(num_batches: int, mix: tuple[float, float, float], rng: random.Random) -> list[OpKind]:
    # largest-remainder rounding keeps realized proportions within one batch per tag
    quotas = [p * num_batches / 100.0 for p in mix]
    counts = [int(q) for q in quotas]
    order = sorted(range(3), key=lambda i: quotas[i] - counts[i], reverse=True)
    for i in order[: num_batches - sum(counts)]:
        counts[i] += 1
    kinds = (OpKind.ADD, OpKind.DELETE, OpKind.QUERY)
    plan = [kind for kind, cnt in zip(kinds, counts) for _ in range(cnt)]
    rng.shuffle(plan)
    return plan


def generate_er(
    n: int,
    density: float,
    sigma: int,
    mix: tuple[float, float, float] = (100 / 3, 100 / 3, 100 / 3),
    batch: int = 10,
    seed: int = 0,
) -> Instance:
    """Random G(n, m) instance with ``m = floor(density * n)`` and ``sigma`` operations.

    Operations come in batches of ``batch`` operations of the same kind.
    The batch kinds are fixed up front in the proportions of ``mix`` (insert,
    delete, query percentages) and shuffled. Insertions and queries use
    uniform ordered vertex pairs; a deletion removes a uniformly chosen edge
    of the current multigraph. A deletion batch that would find fewer live
    edges than it needs trades places with a later non-deletion batch.
    """
    if n < 1:
        raise ConfigError(f"n must be at least 1, got {n}")
    if batch < 1:
        raise ConfigError(f"batch must be at least 1, got {batch}")
    if density < 0 or sigma < 0:
        raise ConfigError("density and sigma must be non-negative")
    mix = tuple(float(p) for p in mix)  # type: ignore[assignment]
    _check_mix(mix)
    rng = random.Random(seed)
    randrange = rng.randrange

    m0 = int(math.floor(density * n))
    live = [(randrange(n), randrange(n)) for _ in range(m0)]
    initial = list(live)

    plan = _batch_plan(-(-sigma // batch), mix, rng)
    ops: list[Operation] = []
    for i in range(len(plan)):
        size = min(batch, sigma - len(ops))
        kind = plan[i]
        if kind is OpKind.DELETE and len(live) < size:
            j = next((j for j in range(i + 1, len(plan)) if plan[j] is not OpKind.DELETE), None)
            if j is None:
                plan[i] = OpKind.ADD if mix[0] > 0 or mix[2] == 0 else OpKind.QUERY
            else:
                plan[i], plan[j] = plan[j], plan[i]
            kind = plan[i]
        for _ in range(size):
            if kind is OpKind.DELETE:
                idx = randrange(len(live))
                u, v = live[idx]
                live[idx] = live[-1]
                live.pop()
                ops.append(Operation(kind, u, v))
            else:
                u, v = randrange(n), randrange(n)
                if kind is OpKind.ADD:
                    live.append((u, v))
                ops.append(Operation(kind, u, v))

    meta = {
        "name": f"er-n{n}-d{density:g}-s{seed}",
        "model": "er",
        "n": str(n),
        "density": f"{density:g}",
        "ops": str(sigma),
        "mix": ":".join(f"{p:g}" for p in mix),
        "batch": str(batch),
        "seed": str(seed),
    }
    return Instance(n, initial, ops, meta)


# ---- validation ----------------------------------------------------------


def replay_errors(
    n: int, initial_edges: Iterable[tuple[int, int]], ops: Iterable[Operation]
) -> Iterator[ReplayError]:
    """Yield a ReplayError for every deletion of a non-live edge (streaming)."""
    live: Counter[tuple[int, int]] = Counter(initial_edges)
    for pos, op in enumerate(ops):
        if op.kind is OpKind.ADD:
            live[(op.a, op.b)] += 1
        elif op.kind is OpKind.DELETE:
            key = (op.a, op.b)
            if live[key] <= 0:
                yield ReplayError(pos, op)
            else:
                live[key] -= 1


def validate(inst: Instance) -> None:
    """Raise the first ReplayError of ``inst``, if any."""
    for err in replay_errors(inst.n, inst.initial_edges, inst.ops):
        raise err


# ---- text format ---------------------------------------------------------

_TAGS = {"a": OpKind.ADD, "d": OpKind.DELETE, "q": OpKind.QUERY}


def _records(lines: Iterable[str]) -> Iterator[tuple[int, str, object]]:
    """Tokenize lines into ``(line number, tag, payload)`` records.

    Tags are ``meta`` (key, value), ``n`` (count), ``e`` (u, v) and ``op``
    (Operation). Range and ordering errors raise InstanceFormatError.
    """
    n: int | None = None
    in_ops = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            key, sep, value = body.partition("=")
            if sep and n is None:
                yield lineno, "meta", (key.strip(), value.strip())
            continue
        fields = line.split()
        tag = fields[0]
        col = line.index(tag) + 1
        if tag == "n":
            if n is not None:
                raise InstanceFormatError("duplicate header", lineno, col)
            if len(fields) != 2:
                raise InstanceFormatError("header must be 'n <count>'", lineno, col)
            n = _int_field(line, fields[1], lineno)
            yield lineno, "n", n
            continue
        if n is None:
            raise InstanceFormatError("expected header 'n <count>' first", lineno, col)
        if tag == "e":
            if in_ops:
                raise InstanceFormatError("initial edge after operations began", lineno, col)
            u, v = _pair(line, fields, n, lineno)
            yield lineno, "e", (u, v)
        elif tag in _TAGS:
            in_ops = True
            u, v = _pair(line, fields, n, lineno)
            yield lineno, "op", Operation(_TAGS[tag], u, v)
        else:
            raise InstanceFormatError(f"unknown record type {tag!r}", lineno, col)
    if n is None:
        raise InstanceFormatError("missing header 'n <count>'", 1)


def _int_field(line: str, token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise InstanceFormatError(f"expected an integer, got {token!r}", lineno, line.find(token) + 1) from None
    if value < 0:
        raise InstanceFormatError(f"negative value {value}", lineno, line.find(token) + 1)
    return value


def _pair(line: str, fields: list[str], n: int, lineno: int) -> tuple[int, int]:
    if len(fields) != 3:
        raise InstanceFormatError(f"'{fields[0]}' needs exactly two vertex ids", lineno, 1)
    out = []
    start = line.index(fields[0]) + len(fields[0])
    for token in fields[1:]:
        col = line.index(token, start) + 1
        start = col - 1 + len(token)
        value = _int_field(line, token, lineno)
        if value >= n:
            raise InstanceFormatError(f"vertex {value} out of range [0, {n})", lineno, col)
        out.append(value)
    return out[0], out[1]


def parse_instance(stream: TextIO | Iterable[str], check: bool = False) -> Instance:
    """Read an instance; with ``check`` also replay it for missing-edge deletions."""
    meta: dict[str, str] = {}
    edges: list[tuple[int, int]] = []
    ops: list[Operation] = []
    n = 0
    for _, tag, payload in _records(stream):
        if tag == "op":
            ops.append(payload)  # type: ignore[arg-type]
        elif tag == "e":
            edges.append(payload)  # type: ignore[arg-type]
        elif tag == "n":
            n = payload  # type: ignore[assignment]
        else:
            key, value = payload  # type: ignore[misc]
            meta[key] = value
    inst = Instance(n, edges, ops, meta)
    if check:
        validate(inst)
    return inst


def parse_string(text: str, check: bool = False) -> Instance:
    return parse_instance(io.StringIO(text), check=check)


def write_instance(inst: Instance, stream: TextIO | None = None) -> str | None:
    """Serialize ``inst``; returns the text when no stream is given."""
    out = stream if stream is not None else io.StringIO()
    for key, value in inst.meta.items():
        out.write(f"# {key}={value}\n")
    out.write(f"n {inst.n}\n")
    for u, v in inst.initial_edges:
        out.write(f"e {u} {v}\n")
    if inst.ops:
        out.write("\n")
        out.writelines(f"{op.kind.value} {op.a} {op.b}\n" for op in inst.ops)
    if stream is None:
        return out.getvalue()  # type: ignore[union-attr]
    return None


def _open_text(path: str | os.PathLike[str]) -> TextIO:
    """Open for reading, decompressing when the file starts with the gzip magic."""
    with open(path, "rb") as fh:
        gz = fh.read(2) == b"\x1f\x8b"
    if gz:
        return gzip.open(path, "rt", encoding="utf-8", newline="\n")  # type: ignore[return-value]
    return open(path, encoding="utf-8", newline="\n")


def read_instance(path: str | os.PathLike[str], check: bool = False) -> Instance:
    with _open_text(path) as fh:
        return parse_instance(fh, check=check)


def save_instance(inst: Instance, path: str | os.PathLike[str]) -> None:
    """Write ``inst`` to ``path``, gzipped when the name ends in ``.gz``.

    Compressed output carries no timestamp, so equal instances give equal bytes.
    """
    if os.fspath(path).endswith(".gz"):
        text = write_instance(inst)
        with open(path, "wb") as fh:
            fh.write(gzip.compress(text.encode("utf-8"), mtime=0))  # type: ignore[union-attr]
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_instance(inst, fh)


def validate_file(path: str | os.PathLike[str]) -> list[ReplayError]:
    """Replay a file without materializing its operation list."""
    header: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def ops() -> Iterator[Operation]:
        with _open_text(path) as fh:
            for _, tag, payload in _records(fh):
                if tag == "op":
                    yield payload  # type: ignore[misc]
                elif tag == "e":
                    edges.append(payload)  # type: ignore[arg-type]
                elif tag == "n":
                    header["n"] = payload  # type: ignore[assignment]

    # initial edges precede every op, so they are all collected by the time
    # the first op is replayed; the counter is seeded lazily for that reason
    live: Counter[tuple[int, int]] = Counter()
    seeded = False
    errors = []
    for pos, op in enumerate(ops()):
        if not seeded:
            live.update(edges)
            seeded = True
        key = (op.a, op.b)
        if op.kind is OpKind.ADD:
            live[key] += 1
        elif op.kind is OpKind.DELETE:
            if live[key] <= 0:
                errors.append(ReplayError(pos, op))
            else:
                live[key] -= 1
    return errors


# ---- shuffling -----------------------------------------------------------


def shuffle_updates(inst: Instance, seed: int = 0) -> tuple[Instance, int]:
    """Randomly permute insertions and deletions; queries stay in place.

    A deletion that lands before the insertion it needs swaps places with
    the next pending insertion of the same edge. Returns the shuffled
    instance and the number of such repairs.
    """
    rng = random.Random(seed)
    ops = list(inst.ops)
    slots = [i for i, op in enumerate(ops) if op.kind is not OpKind.QUERY]
    updates = [ops[i] for i in slots]
    rng.shuffle(updates)
    for i, op in zip(slots, updates):
        ops[i] = op

    pending: dict[tuple[int, int], deque[int]] = {}
    for i in slots:
        op = ops[i]
        if op.kind is OpKind.ADD:
            pending.setdefault((op.a, op.b), deque()).append(i)
    live: Counter[tuple[int, int]] = Counter(inst.initial_edges)
    repairs = 0
    for i in slots:
        op = ops[i]
        key = (op.a, op.b)
        if op.kind is OpKind.ADD:
            queue = pending[key]
            if queue and queue[0] == i:
                queue.popleft()
            live[key] += 1
        elif live[key] > 0:
            live[key] -= 1
        else:
            queue = pending.get(key)
            if not queue:
                raise ReplayError(i, op)
            j = queue.popleft()
            ops[i], ops[j] = ops[j], ops[i]
            repairs += 1
            live[key] += 1
    meta = dict(inst.meta)
    meta["shuffle_seed"] = str(seed)
    return Instance(inst.n, list(inst.initial_edges), ops, meta), repairs
