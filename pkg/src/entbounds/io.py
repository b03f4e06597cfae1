"""YAML measurement files.

Example::

    version: 1
    state:
      family: graph        # or: ghz
      qubits: 4
      edges: [[1, 2], [2, 3], [3, 4], [4, 1]]   # 1-based labels, graph only
    outcomes: [0.9048, 0.9048, 0.9048, 0.9048]  # <K_1> ... <K_n>
    extra_observables:                          # optional
      - {pauli: ZIII, value: 0.1}               # qubit 1 leftmost
    metadata: {label: run-17, timestamp: 2026-10-16T09:00:00}

Qubit labels are 1-based in files and 0-based in the Python API.
"""
from __future__ import annotations

import math
from pathlib import Path

import yaml

from .bounds import MeasurementRecord
from .pauli import PauliString, StabilizerSpec

FORMAT_VERSION = 1
_TOP_KEYS = {"version", "state", "outcomes", "extra_observables", "metadata"}


class MeasurementFileError(ValueError):
    """Malformed measurement file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = source or "<input>"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}")


def _line_map(node, path=(), out=None):
    out = {} if out is None else out
    out[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        for k, v in node.value:
            _line_map(v, path + (k.value,), out)
    elif isinstance(node, yaml.SequenceNode):
        for i, v in enumerate(node.value):
            _line_map(v, path + (i,), out)
    return out


class _Reader:
    def __init__(self, text: str, source: str | None):
        self.source = source
        try:
            node = yaml.compose(text, Loader=yaml.SafeLoader)
            self.data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            raise MeasurementFileError(f"YAML syntax error: {getattr(e, 'problem', e)}",
                                       mark.line + 1 if mark else None, source) from None
        self.lines = _line_map(node) if node is not None else {}

    def fail(self, msg, path=()):
        while path and path not in self.lines:
            path = path[:-1]
        raise MeasurementFileError(msg, self.lines.get(path), self.source)

    def number(self, v, path, what):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            self.fail(f"{what} must be a finite number, got {v!r}", path)
        return float(v)


def parse_measurement(text: str, source: str | None = None) -> tuple[MeasurementRecord, dict]:
    """Parse file contents into a record and its metadata mapping."""
    r = _Reader(text, source)
    d = r.data
    if not isinstance(d, dict):
        r.fail("top level must be a mapping")
    unknown = set(d) - _TOP_KEYS
    if unknown:
        r.fail(f"unknown key(s): {', '.join(sorted(map(str, unknown)))}", (sorted(map(str, unknown))[0],))
    if d.get("version") != FORMAT_VERSION:
        r.fail(f"unsupported or missing version (expected {FORMAT_VERSION})", ("version",))

    st = d.get("state")
    if not isinstance(st, dict):
        r.fail("'state' must be a mapping", ("state",))
    family = st.get("family")
    n = st.get("qubits")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        r.fail("state.qubits must be a positive integer", ("state", "qubits"))
    try:
        if family == "ghz":
            if "edges" in st:
                r.fail("GHZ states take no edge list", ("state", "edges"))
            spec = StabilizerSpec.ghz(n)
        elif family == "graph":
            edges = st.get("edges", [])
            if not isinstance(edges, list):
                r.fail("state.edges must be a list of [u, v] pairs", ("state", "edges"))
            pairs = []
            for i, e in enumerate(edges):
                ok = isinstance(e, list) and len(e) == 2 and all(
                    isinstance(v, int) and not isinstance(v, bool) for v in e)
                if not ok:
                    r.fail(f"edge {e!r} must be a pair of qubit labels", ("state", "edges", i))
                if not all(1 <= v <= n for v in e) or e[0] == e[1]:
                    r.fail(f"edge {e!r} invalid for qubits 1..{n}", ("state", "edges", i))
                pairs.append((e[0] - 1, e[1] - 1))
            spec = StabilizerSpec.from_edges(n, pairs)
        else:
            r.fail(f"state.family must be 'graph' or 'ghz', got {family!r}", ("state", "family"))
    except MeasurementFileError:
        raise
    except ValueError as e:
        r.fail(str(e), ("state",))

    outs = d.get("outcomes")
    if not isinstance(outs, list):
        r.fail("'outcomes' must be a list of generator expectation values", ("outcomes",))
    if len(outs) != n:
        r.fail(f"expected {n} outcomes, got {len(outs)}", ("outcomes",))
    a = []
    for k, v in enumerate(outs):
        v = r.number(v, ("outcomes", k), f"outcome {k + 1}")
        if abs(v) > 1.0:
            r.fail(f"outcome out of physical range: a[{k + 1}] = {v}", ("outcomes", k))
        a.append(v)

    extras = []
    ex = d.get("extra_observables") or []
    if not isinstance(ex, list):
        r.fail("'extra_observables' must be a list", ("extra_observables",))
    for i, item in enumerate(ex):
        path = ("extra_observables", i)
        if not isinstance(item, dict) or set(item) != {"pauli", "value"}:
            r.fail("each extra observable needs exactly 'pauli' and 'value'", path)
        label = item["pauli"]
        if not isinstance(label, str) or len(label.strip().lstrip("+-")) != n:
            r.fail(f"Pauli label must be a string of {n} characters", path + ("pauli",))
        try:
            p = PauliString.from_label(label)
        except ValueError as e:
            r.fail(str(e), path + ("pauli",))
        v = r.number(item["value"], path + ("value",), f"value of {label}")
        if abs(v) > 1.0:
            r.fail(f"outcome out of physical range: <{label}> = {v}", path + ("value",))
        extras.append((p, v))

    meta = d.get("metadata") or {}
    if not isinstance(meta, dict):
        r.fail("'metadata' must be a mapping", ("metadata",))
    meta = {str(k): (v.isoformat() if hasattr(v, "isoformat") else v) for k, v in meta.items()}
    return MeasurementRecord(spec, tuple(a), tuple(extras)), meta


def load_measurement(path) -> tuple[MeasurementRecord, dict]:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise MeasurementFileError(f"cannot read file ({e.strerror})", None, str(p)) from None
    return parse_measurement(text, str(p))


def spec_to_dict(spec: StabilizerSpec) -> dict:
    if spec.family == "ghz":
        return {"family": "ghz", "qubits": spec.n}
    return {"family": "graph", "qubits": spec.n, "edges": [[u + 1, v + 1] for u, v in spec.edges]}


def dump_measurement(record: MeasurementRecord, metadata: dict | None = None) -> str:
    doc = {
        "version": FORMAT_VERSION,
        "state": spec_to_dict(record.spec),
        # repr-exact floats so a reload reproduces the record bit for bit
        "outcomes": [float(v) for v in record.outcomes],
    }
    if record.extra_observables:
        doc["extra_observables"] = [{"pauli": p.label, "value": float(v)} for p, v in record.extra_observables]
    if metadata:
        doc["metadata"] = dict(metadata)
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)
