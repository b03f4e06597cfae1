import numpy as np
import pytest
from hypothesis import given, strategies as st

from entbounds.bounds import MeasurementRecord
from entbounds.io import MeasurementFileError, dump_measurement, load_measurement, parse_measurement
from entbounds.pauli import PauliString, StabilizerSpec

BOX = """\
version: 1
state:
  family: graph
  qubits: 4
  edges: [[1, 2], [2, 3], [3, 4], [4, 1]]
outcomes: [0.9048, 0.9048, 0.9048, 0.9048]
extra_observables:
  - {pauli: ZIII, value: 0.1}
metadata: {label: run-17, timestamp: 2026-10-16T09:00:00}
"""


def test_parse_box_file():
    rec, meta = parse_measurement(BOX)
    assert rec.spec == StabilizerSpec.ring(4)
    assert rec.outcomes == (0.9048,) * 4
    p, v = rec.extra_observables[0]
    # qubit 1 is leftmost in the label and bit 0 in the API
    assert (p.x, p.z, v) == (0, 1, 0.1)
    assert meta["label"] == "run-17" and meta["timestamp"].startswith("2026-10-16")


def test_parse_ghz_file():
    rec, _ = parse_measurement("version: 1\nstate: {family: ghz, qubits: 3}\noutcomes: [1, 0.5, -0.5]\n")
    assert rec.spec == StabilizerSpec.ghz(3) and rec.outcomes == (1.0, 0.5, -0.5)


@pytest.mark.parametrize("text, line, msg", [
    ("version: 1\nstate: {family: ghz, qubits: 2}\noutcomes: [1.2, 0.5]\n", 3, "outcome out of physical range"),
    ("version: 2\nstate: {family: ghz, qubits: 2}\noutcomes: [1, 1]\n", 1, "version"),
    ("version: 1\nstate:\n  family: ring\n  qubits: 2\noutcomes: [1, 1]\n", 3, "family"),
    ("version: 1\nstate:\n  family: graph\n  qubits: 2\n  edges: [[1, 3]]\noutcomes: [1, 1]\n", 5, "invalid"),
    ("version: 1\nstate: {family: ghz, qubits: 2}\noutcomes: [1]\n", 3, "expected 2"),
    ("version: 1\nstate: {family: ghz, qubits: 2}\noutcomes: [1, x]\n", 3, "finite number"),
    ("version: 1\nstate: {family: ghz, qubits: 2}\noutcomes: [1, 1]\nextra_observables:\n  - {pauli: XQ, value: 0}\n", 5, "invalid Pauli"),
    ("version: 1\nstate: {family: ghz, qubits: 2}\noutcomes: [1, 1]\nextra: 3\n", 4, "unknown key"),
    ("version: 1\nstate: {family: ghz, qubits: 2\noutcomes: [1, 1]\n", 3, "YAML syntax"),
])
def test_malformed_files_report_lines(text, line, msg):
    with pytest.raises(MeasurementFileError, match=msg) as e:
        parse_measurement(text, "f.yaml")
    assert e.value.line == line
    assert f"f.yaml:{line}:" in str(e.value)


def test_missing_file(tmp_path):
    with pytest.raises(MeasurementFileError, match="cannot read"):
        load_measurement(tmp_path / "nope.yaml")


@given(st.sampled_from([StabilizerSpec.ring(3), StabilizerSpec.ghz(4), StabilizerSpec.line(2)]), st.data())
def test_round_trip_is_exact(spec, data):
    a = data.draw(st.lists(st.floats(-1, 1), min_size=spec.n, max_size=spec.n))
    label = data.draw(st.text("IXYZ", min_size=spec.n, max_size=spec.n))
    sign = data.draw(st.sampled_from(["", "-"]))
    rec = MeasurementRecord(spec, tuple(a), ((PauliString.from_label(sign + label), 0.25),))
    back, meta = parse_measurement(dump_measurement(rec, {"label": "x"}))
    assert back.spec == spec and back.outcomes == rec.outcomes
    assert back.extra_observables == rec.extra_observables and meta == {"label": "x"}
