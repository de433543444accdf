"""Plain-text system files and reference-fixture verification.

A system file is newline-delimited ASCII: `key: value` header lines followed
by one `row:` line per inequality in the same block layout the inequalities
print themselves with.  Fixture files under fixtures/ are transcriptions of
the published reference tables; their conventions are recorded in the header
and a sha256 manifest guards against silent drift.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .engine import InequalitySystem, MarginalInequality
from .polytope import subsystem_symmetries
from .spectra import SystemFormat

FIXTURE_DIR = Path(__file__).parent / "fixtures"

FORMAT_FIXTURES = {
    (2, 2): "qubits2",
    (2, 2, 2): "qubits3",
    (2, 2, 2, 2): "qubits4",
    (3, 3): "format3x3",
    (2, 3): "format2x3",
    (2, 4): "format2x4",
    (2, 2, 3): "format2x2x3",
}


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _parse_format(text: str) -> SystemFormat:
    try:
        dims = tuple(int(p) for p in text.strip().split("x"))
    except ValueError:
        raise ValueError(f"bad format string {text!r}")
    return SystemFormat(dims)


def _parse_row(line: int, text: str, format: SystemFormat) -> MarginalInequality:
    body = text
    if body.rstrip().endswith(">= 0"):
        body = body.rstrip()[:-len(">= 0")]
    parts = [p.strip() for p in body.split("|")]
    if len(parts) != format.rank + 1:
        raise ParseError(line, f"expected {format.rank + 1} blocks, got {len(parts)}")
    try:
        composite = tuple(int(v) for v in parts[0].split())
        blocks = tuple(tuple(int(v) for v in p.split()) for p in parts[1:])
    except ValueError:
        raise ParseError(line, "non-integer coefficient")
    if len(composite) != format.composite_dim:
        raise ParseError(line, "composite width does not match the format")
    for blk, d in zip(blocks, format.dims):
        if len(blk) != d:
            raise ParseError(line, "component width does not match the format")
    return MarginalInequality(format, composite, blocks)


def serialize_system(system: InequalitySystem,
                     generator: Optional[dict] = None) -> str:
    """Stable text form; rows in canonical sort order."""
    lines = ["format: " + "x".join(str(d) for d in system.format.dims),
             f"normalization: {system.normalization}",
             f"count: {len(system.inequalities)}"]
    for key, value in (generator or {}).items():
        lines.append(f"generator-{key}: {value}")
    for iq in sorted(system.inequalities, key=MarginalInequality.sort_key):
        lines.append("row: " + iq.serialize())
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> InequalitySystem:
    format = None
    normalization = "one"
    count = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(lineno, "expected 'key: value'")
        key, value = line.split(":", 1)
        key, value = key.strip(), value.strip()
        if key == "format":
            format = _parse_format(value)
        elif key == "normalization":
            normalization = value
        elif key == "count":
            count = int(value)
        elif key == "row":
            if format is None:
                raise ParseError(lineno, "row before format header")
            rows.append(_parse_row(lineno, value, format))
        # unknown keys (generator metadata, notes) are preserved-by-ignoring
    if format is None:
        raise ParseError(0, "missing format header")
    system = InequalitySystem(format, normalization)
    for iq in rows:
        system.add(iq)
    if count is not None and count != len(rows):
        raise ParseError(0, f"header count {count} != {len(rows)} rows")
    return system


def write_system(system: InequalitySystem, path,
                 generator: Optional[dict] = None) -> None:
    Path(path).write_text(serialize_system(system, generator))


def read_system(path) -> InequalitySystem:
    return parse_system(Path(path).read_text())


@dataclass
class Fixture:
    name: str
    format: SystemFormat
    convention: str
    listed: int
    expanded: int
    symmetry: str
    header: dict
    raw_rows: list[str]
    annotations: list[str]

    def inequalities(self) -> list[MarginalInequality]:
        """Canonical inequalities of the non-garbled rows."""
        out = []
        for i, row in enumerate(self.raw_rows):
            if row == "garbled":
                continue
            out.append(_convert_row(i + 1, row, self.format, self.convention))
        return out

    def expand(self) -> set[MarginalInequality]:
        """The listed rows closed under the recorded symmetry."""
        base = self.inequalities()
        if self.symmetry != "subsystem-permutations":
            return set(base)
        perms = subsystem_symmetries(self.format)
        out = set()
        for iq in base:
            for perm in perms:
                out.add(iq.permute_subsystems(perm).canonical())
        return out


def _convert_row(index: int, row: str, format: SystemFormat,
                 convention: str) -> MarginalInequality:
    if convention == "trace-zero-scalar":
        parts = [p.strip() for p in row.split("|")]
        composite = tuple(int(v) for v in parts[0].split())
        scalars = [int(p) for p in parts[1:]]
        if len(scalars) != format.rank:
            raise ValueError(f"fixture row {index}: wrong scalar count")
        # margins (a,-a): coefficient k on the scalar reads k(x1-x2)/2 in
        # unit-trace variables, so double the composite side instead
        ineq = MarginalInequality(
            format,
            tuple(2 * v for v in composite),
            tuple((k, -k) for k in scalars))
    else:
        ineq = _parse_row(index, row, format)
    return ineq.canonical()


def load_fixture(name: str) -> Fixture:
    path = FIXTURE_DIR / f"{name}.txt"
    header: dict = {}
    rows: list[str] = []
    annotations: list[str] = []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, value = line.split(":", 1)
        key, value = key.strip(), value.strip()
        if key == "row":
            rows.append(value)
        elif key == "annotation":
            annotations.append(value)
        else:
            header[key] = value
    return Fixture(
        name=name,
        format=_parse_format(header["format"]) if "format" in header else None,
        convention=header.get("convention", "zero-sum"),
        listed=int(header.get("listed", len(rows))),
        expanded=int(header.get("expanded", len(rows))),
        symmetry=header.get("symmetry", "none"),
        header=header,
        raw_rows=rows,
        annotations=annotations)


def fixture_for_format(format: SystemFormat) -> Fixture:
    name = FORMAT_FIXTURES.get(format.dims)
    if name is None:
        raise ValueError(f"no reference fixture for format {format.dims}")
    return load_fixture(name)


@dataclass
class FixtureDiff:
    matched: list[MarginalInequality]
    missing_from_generated: list[MarginalInequality]
    extra_in_generated: list[MarginalInequality]
    annotations: list[str] = field(default_factory=list)

    @property
    def exact_match(self) -> bool:
        return not self.missing_from_generated and not self.extra_in_generated

    @property
    def contained(self) -> bool:
        return not self.missing_from_generated


def verify_fixture(system: InequalitySystem, fixture: Fixture) -> FixtureDiff:
    """Set comparison after canonicalization and symmetry expansion."""
    if fixture.format != system.format:
        raise ValueError(
            f"fixture format {fixture.format} != system {system.format}")
    expanded = fixture.expand()
    generated = {iq.canonical() for iq in system.inequalities}
    key = MarginalInequality.sort_key
    return FixtureDiff(
        matched=sorted(expanded & generated, key=key),
        missing_from_generated=sorted(expanded - generated, key=key),
        extra_in_generated=sorted(generated - expanded, key=key),
        annotations=list(fixture.annotations))


def stats_table() -> list[dict]:
    fx = load_fixture("stats_table")
    out = []
    for row in fx.raw_rows:
        fields = row.split()
        out.append({
            "format": fields[0],
            "rank": int(fields[1]),
            "inequalities": int(fields[2]),
            "orbits": int(fields[3]),
            "edges": int(fields[4]),
            "permutations": int(fields[5]),
        })
    return out


def qubit_edge_table() -> dict[int, list[tuple[int, ...]]]:
    """Reference qubit edges up to permutation, as integer scalar spectra."""
    fx = load_fixture("qubit_edges")
    out = {}
    for row in fx.raw_rows:
        head, body = row.split("|")
        out[int(head)] = [tuple(int(v) for v in item.split(","))
                          for item in body.split()]
    return out


def verify_checksums() -> list[str]:
    """Names of fixture files whose sha256 drifted from the manifest."""
    manifest = {}
    for line in (FIXTURE_DIR / "MANIFEST.txt").read_text().splitlines():
        if line.strip():
            name, digest = line.split()
            manifest[name] = digest
    bad = []
    for name, digest in manifest.items():
        data = (FIXTURE_DIR / name).read_bytes()
        if hashlib.sha256(data).hexdigest() != digest:
            bad.append(name)
    for path in FIXTURE_DIR.glob("*.txt"):
        if path.name != "MANIFEST.txt" and path.name not in manifest:
            bad.append(path.name)
    return sorted(bad)
