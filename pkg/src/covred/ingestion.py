"""Cover-family documents and derivation of covers from tabular data.

Document format (UTF-8 JSON):

    {"universe": ["x1", ...],
     "covers": [{"name": "C1", "blocks": [["x1", "x2"], ...]}, ...]}

Serialization is canonical — covers and blocks in appearance order, block
members in universe order, two-space indent, trailing newline — so a
parse/serialize round trip is byte-stable.

Tables become one cover per attribute. Categorical columns yield equality
partitions; numeric columns can instead use a tolerance relation (one
block per object: everything within epsilon of its value) or interval
bins with optional fractional overlap. Tolerance and overlapping bins are
what make the result a genuine cover rather than a partition.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .errors import (
    ConfigError,
    DocumentError,
    MissingValueError,
    NonNumericValueError,
)
from .model import Cover, CoverFamily, Universe, validate_cover


def parse_cover_file(text: str) -> CoverFamily:
    """Parse and validate a cover-family document.

    Syntax errors carry the line/column position; schema errors carry a
    JSON-path-style location; cover validation errors carry the cover name.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return family_from_document(doc)


def family_from_document(doc) -> CoverFamily:
    if not isinstance(doc, dict):
        raise DocumentError("document root must be an object")
    if "universe" not in doc:
        raise DocumentError("missing 'universe'")
    if "covers" not in doc:
        raise DocumentError("missing 'covers'")
    labels = doc["universe"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise DocumentError("'universe' must be an array of strings")
    universe = Universe(tuple(labels))
    raw_covers = doc["covers"]
    if not isinstance(raw_covers, list) or not raw_covers:
        raise DocumentError("'covers' must be a nonempty array")
    covers = []
    for k, entry in enumerate(raw_covers):
        where = f"covers[{k}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: must be an object")
        name = entry.get("name")
        if not isinstance(name, str) or not name:
            raise DocumentError(f"{where}: missing or invalid 'name'")
        blocks = entry.get("blocks")
        if not isinstance(blocks, list):
            raise DocumentError(f"{where}: 'blocks' must be an array")
        for b, block in enumerate(blocks):
            if not isinstance(block, list) or not all(isinstance(x, str) for x in block):
                raise DocumentError(f"{where}.blocks[{b}]: must be an array of labels")
        covers.append(validate_cover(universe, blocks, name))
    return CoverFamily(universe, tuple(covers))


def family_to_document(family: CoverFamily) -> dict:
    return {
        "universe": list(family.universe.labels),
        "covers": [
            {"name": c.name, "blocks": c.block_labels()} for c in family.covers
        ],
    }


def serialize_family(family: CoverFamily) -> str:
    """Canonical document text; parse(serialize(f)) equals f."""
    return json.dumps(family_to_document(family), indent=2) + "\n"


# --- tabular derivation -------------------------------------------------


@dataclass(frozen=True)
class Categorical:
    """Equality partition: one block per distinct value."""


@dataclass(frozen=True)
class NumericTolerance:
    """One block per object: all objects within epsilon of its value.

    mode="absolute" uses epsilon as is; mode="fraction" scales it by the
    column range (max - min). A zero range under "fraction" degenerates to
    the single all-objects block.
    """

    epsilon: float
    mode: str = "absolute"

    def __post_init__(self):
        if self.epsilon < 0:
            raise ConfigError("epsilon must be nonnegative")
        if self.mode not in ("absolute", "fraction"):
            raise ConfigError(f"unknown tolerance mode {self.mode!r}")


@dataclass(frozen=True)
class IntervalBins:
    """Blocks from consecutive intervals between the edges.

    overlap in [0, 1) widens every bin by that fraction of its width on
    both sides, so neighbouring blocks share objects. The last bin is
    right-closed. Bins that capture no object are dropped with a warning.
    """

    edges: tuple[float, ...]
    overlap: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(float(e) for e in self.edges))
        if len(self.edges) < 2:
            raise ConfigError("need at least two bin edges")
        if any(a >= b for a, b in zip(self.edges, self.edges[1:])):
            raise ConfigError("bin edges must be strictly increasing")
        if not 0.0 <= self.overlap < 1.0:
            raise ConfigError("overlap fraction must be in [0, 1)")


Strategy = Categorical | NumericTolerance | IntervalBins


@dataclass(frozen=True)
class TableDerivationConfig:
    """Per-attribute derivation strategies with a default."""

    default: Strategy = field(default_factory=Categorical)
    per_attribute: Mapping[str, Strategy] = field(default_factory=dict)

    def strategy_for(self, attribute: str) -> Strategy:
        return self.per_attribute.get(attribute, self.default)


def config_from_document(doc) -> TableDerivationConfig:
    """Build a config from its JSON form:

    {"default": {"strategy": "categorical"},
     "attributes": {"price": {"strategy": "tolerance", "epsilon": 0.2,
                              "mode": "absolute"}}}
    """
    if not isinstance(doc, dict):
        raise ConfigError("config root must be an object")
    default = _strategy_from(doc.get("default", {"strategy": "categorical"}))
    per = {}
    for attr, entry in (doc.get("attributes") or {}).items():
        per[attr] = _strategy_from(entry)
    return TableDerivationConfig(default, per)


def _strategy_from(entry) -> Strategy:
    if not isinstance(entry, dict) or "strategy" not in entry:
        raise ConfigError("strategy entry must be an object with a 'strategy' key")
    kind = entry["strategy"]
    if kind == "categorical":
        return Categorical()
    if kind == "tolerance":
        return NumericTolerance(
            epsilon=float(entry.get("epsilon", 0.0)),
            mode=entry.get("mode", "absolute"),
        )
    if kind == "bins":
        return IntervalBins(
            edges=tuple(entry.get("edges", ())),
            overlap=float(entry.get("overlap", 0.0)),
        )
    raise ConfigError(f"unknown strategy {kind!r}")


@dataclass(frozen=True)
class Table:
    """Rectangular attribute-value table with labelled rows."""

    object_labels: tuple[str, ...]
    attributes: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def column(self, attribute: str) -> list[str]:
        k = self.attributes.index(attribute)
        return [row[k] for row in self.rows]


def read_csv_table(text: str) -> Table:
    """CSV dialect: comma-separated, first row attribute names, first
    column object labels. Every cell must be present and nonempty."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MissingValueError("empty table") from None
    if len(header) < 2:
        raise MissingValueError("table needs a label column and at least one attribute")
    attributes = tuple(h.strip() for h in header[1:])
    labels = []
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise MissingValueError(f"line {lineno}: expected {len(header)} cells, got {len(row)}")
        values = tuple(v.strip() for v in row[1:])
        if any(v == "" for v in values) or row[0].strip() == "":
            raise MissingValueError(f"line {lineno}: empty cell")
        labels.append(row[0].strip())
        rows.append(values)
    if not rows:
        raise MissingValueError("table has no data rows")
    return Table(tuple(labels), attributes, tuple(rows))


def _as_floats(attribute: str, values: Sequence[str]) -> list[float]:
    out = []
    for k, v in enumerate(values):
        try:
            out.append(float(v))
        except ValueError:
            raise NonNumericValueError(
                f"attribute {attribute!r}, row {k}: {v!r} is not numeric"
            ) from None
    return out


def _dedup(blocks: list[int]) -> list[int]:
    seen: set[int] = set()
    out = []
    for b in blocks:
        if b not in seen:
            seen.add(b)
            out.append(b)
    return out


def covers_from_table(table: Table, config: TableDerivationConfig) -> CoverFamily:
    """One cover per attribute, named after it (see module docstring)."""
    universe = Universe(table.object_labels)
    n = universe.n
    covers = []
    for attr in table.attributes:
        values = table.column(attr)
        strategy = config.strategy_for(attr)
        if isinstance(strategy, Categorical):
            groups: dict[str, int] = {}
            for i, v in enumerate(values):
                groups[v] = groups.get(v, 0) | (1 << i)
            blocks = list(groups.values())
        elif isinstance(strategy, NumericTolerance):
            nums = _as_floats(attr, values)
            eps = strategy.epsilon
            if strategy.mode == "fraction":
                spread = max(nums) - min(nums)
                if spread == 0.0:
                    covers.append(Cover(universe, attr, ((1 << n) - 1,)))
                    continue
                eps = eps * spread
            blocks = _dedup([
                sum(1 << i for i, v in enumerate(nums) if abs(v - center) <= eps)
                for center in nums
            ])
        else:
            nums = _as_floats(attr, values)
            blocks = []
            edges = strategy.edges
            for k in range(len(edges) - 1):
                lo, hi = edges[k], edges[k + 1]
                pad = strategy.overlap * (hi - lo)
                lo, hi = lo - pad, hi + pad
                last = k == len(edges) - 2
                block = sum(
                    1 << i
                    for i, v in enumerate(nums)
                    if lo <= v < hi or (last and lo <= v <= hi)
                )
                if block == 0:
                    warnings.warn(f"attribute {attr!r}: bin {k} captures no object", stacklevel=2)
                    continue
                blocks.append(block)
            blocks = _dedup(blocks)
        covers.append(Cover(universe, attr, tuple(blocks)))
    return CoverFamily(universe, tuple(covers))
