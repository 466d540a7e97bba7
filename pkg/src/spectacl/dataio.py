"""CSV and edge-list I/O for point clouds, graphs, and clustering results."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# 17 significant digits round-trip any float64 exactly.
FLOAT_FORMAT = "%.17g"


class DataIOError(ValueError):
    """Unreadable, malformed, or unwritable data file."""


@dataclass(frozen=True)
class DataMatrix:
    """Dense m x n real feature matrix; point j is row j."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 2:
            raise DataIOError(f"expected a 2-d matrix, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DataIOError("matrix needs at least one row and one column")
        if not np.all(np.isfinite(arr)):
            raise DataIOError("matrix contains non-finite entries")
        object.__setattr__(self, "values", arr)

    @property
    def m(self) -> int:
        return self.values.shape[0]

    @property
    def n(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class EdgeList:
    """Undirected weighted edges over nodes 0..node_count-1, stored as (j, l, w) with j < l."""

    node_count: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        for j, l, w in self.edges:
            if j == l:
                raise DataIOError(f"self-loop on node {j}")
            if not (0 <= j < self.node_count and 0 <= l < self.node_count):
                raise DataIOError(f"edge ({j},{l}) outside [0,{self.node_count})")
            if not np.isfinite(w) or w < 0:
                raise DataIOError(f"edge ({j},{l}) has bad weight {w}")


def _data_lines(path, has_header):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        raise DataIOError(f"missing file: {path}") from None
    if has_header and lines:
        lines = lines[1:]
    return [ln for ln in lines if ln.strip()]


def _parse_rows(lines, delimiter):
    rows = []
    width = None
    for i, line in enumerate(lines, start=1):
        fields = line.split(delimiter)
        if width is None:
            width = len(fields)
        elif len(fields) != width:
            raise DataIOError(f"ragged row {i}: expected {width} fields, got {len(fields)}")
        rows.append(fields)
    return rows


def _parse_float(field, row, col):
    try:
        return float(field)
    except ValueError:
        raise DataIOError(f"parse error at row {row}, col {col}: {field!r}") from None


def load_points(path, delimiter: str = ",", has_header: bool = False) -> DataMatrix:
    """Load an m x n point matrix from a delimited text file."""
    lines = _data_lines(path, has_header)
    if not lines:
        raise DataIOError(f"no rows in {path}")
    rows = _parse_rows(lines, delimiter)
    out = np.empty((len(rows), len(rows[0])), dtype=np.float64)
    for i, fields in enumerate(rows):
        for j, field in enumerate(fields):
            out[i, j] = _parse_float(field, i + 1, j + 1)
    return DataMatrix(out)


def load_labeled_points(path, delimiter: str = ",", has_header: bool = False):
    """Like load_points, but the trailing column holds integer class labels.

    Returns (DataMatrix, labels ndarray).
    """
    lines = _data_lines(path, has_header)
    if not lines:
        raise DataIOError(f"no rows in {path}")
    rows = _parse_rows(lines, delimiter)
    if len(rows[0]) < 2:
        raise DataIOError("labeled file needs at least one feature column plus the label column")
    out = np.empty((len(rows), len(rows[0]) - 1), dtype=np.float64)
    labels = np.empty(len(rows), dtype=np.int64)
    for i, fields in enumerate(rows):
        for j, field in enumerate(fields[:-1]):
            out[i, j] = _parse_float(field, i + 1, j + 1)
        try:
            labels[i] = int(float(fields[-1]))
        except ValueError:
            raise DataIOError(
                f"parse error at row {i + 1}, col {len(fields)}: {fields[-1]!r}"
            ) from None
    return DataMatrix(out), labels


def load_edge_list(path) -> EdgeList:
    """Load a whitespace-separated "j l [w]" edge list; '#' lines are comments.

    Duplicate mentions of the same node pair (either orientation) sum their
    weights; a missing weight counts as 1.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        raise DataIOError(f"missing file: {path}") from None
    acc: dict[tuple[int, int], float] = {}
    max_node = -1
    for i, line in enumerate(lines, start=1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) not in (2, 3):
            raise DataIOError(f"line {i}: expected 'j l [w]', got {line!r}")
        try:
            j, l = int(parts[0]), int(parts[1])
        except ValueError:
            raise DataIOError(f"line {i}: non-integer node index in {line!r}") from None
        if j == l:
            raise DataIOError(f"line {i}: self-loop on node {j}")
        if j < 0 or l < 0:
            raise DataIOError(f"line {i}: negative node index in {line!r}")
        w = 1.0
        if len(parts) == 3:
            try:
                w = float(parts[2])
            except ValueError:
                raise DataIOError(f"line {i}: bad weight in {line!r}") from None
        if not np.isfinite(w) or w < 0:
            raise DataIOError(f"line {i}: negative or non-finite weight {w}")
        key = (min(j, l), max(j, l))
        acc[key] = acc.get(key, 0.0) + w
        max_node = max(max_node, j, l)
    edges = tuple((j, l, w) for (j, l), w in sorted(acc.items()))
    return EdgeList(node_count=max_node + 1, edges=edges)


def write_clustering(path, clustering) -> None:
    """Write one "index,label" line per point after a header; noise is -1."""
    lines = ["point,label"]
    for i, lab in enumerate(clustering.labels):
        lines.append(f"{i},{int(lab)}")
    _write_lines(path, lines)


def write_points(path, data: DataMatrix, labels=None) -> None:
    """Write points as CSV (17 significant digits), optionally with a label column."""
    header = ",".join(f"x{j}" for j in range(data.n))
    if labels is not None:
        header += ",label"
    lines = [header]
    for i in range(data.m):
        fields = [FLOAT_FORMAT % v for v in data.values[i]]
        if labels is not None:
            fields.append(str(int(labels[i])))
        lines.append(",".join(fields))
    _write_lines(path, lines)


def write_csv_table(path, header, rows) -> None:
    """Write a generic CSV table; floats get 17 significant digits."""
    lines = [",".join(header)]
    for row in rows:
        fields = []
        for v in row:
            if isinstance(v, float) or isinstance(v, np.floating):
                fields.append(FLOAT_FORMAT % v)
            else:
                fields.append(str(v))
        lines.append(",".join(fields))
    _write_lines(path, lines)


def _write_lines(path, lines):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise DataIOError(f"cannot write {path}: {exc}") from None
