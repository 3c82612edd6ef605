"""Boolean incidence matrix of measurement paths over network nodes.

Rows are paths, columns are nodes; ``bits[p, u]`` is true when path ``p``
touches node ``u``.  Alongside the dense array every matrix keeps one
Python-int bitmask per column (bit ``p`` set when path ``p`` touches the
node) and one per row, which makes set unions over nodes a handful of
integer ORs.

Indices are 0-based throughout.
"""

from __future__ import annotations

import io
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateColumn, EmptyMatrix, EmptyPath, ParseError, ZeroColumn

NodeSet = tuple  # sorted tuple of node indices
PathSet = tuple  # sorted tuple of path indices


def bits_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def tuple_to_bits(items: Iterable[int]) -> int:
    mask = 0
    for i in items:
        mask |= 1 << int(i)
    return mask


class PathMatrix:
    """Immutable m x n path/node incidence matrix.

    Build instances with :func:`validate` (or :func:`read_matrix`); the
    constructor itself assumes the array has already been checked.
    """

    __slots__ = ("_bits", "_cols", "_rows", "relaxed")

    def __init__(self, bits: np.ndarray, relaxed: bool = False):
        arr = np.array(bits, dtype=bool, copy=True)
        arr.setflags(write=False)
        self._bits = arr
        m, n = arr.shape
        self._cols = tuple(tuple_to_bits(np.flatnonzero(arr[:, u])) for u in range(n))
        self._rows = tuple(tuple_to_bits(np.flatnonzero(arr[p, :])) for p in range(m))
        self.relaxed = relaxed

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def m(self) -> int:
        return self._bits.shape[0]

    @property
    def n(self) -> int:
        return self._bits.shape[1]

    @property
    def column_masks(self) -> tuple[int, ...]:
        """Per-node path bitmasks (bit p set iff path p touches the node)."""
        return self._cols

    @property
    def row_masks(self) -> tuple[int, ...]:
        """Per-path node bitmasks (bit u set iff the path touches node u)."""
        return self._rows

    def mask_of(self, nodes: Iterable[int]) -> int:
        mask = 0
        cols = self._cols
        for u in nodes:
            mask |= cols[u]
        return mask

    def paths(self, u: int) -> PathSet:
        return bits_to_tuple(self._cols[u])

    def nodes_on(self, p: int) -> NodeSet:
        return bits_to_tuple(self._rows[p])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathMatrix):
            return NotImplemented
        return self._bits.shape == other._bits.shape and bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self._bits.shape, self._bits.tobytes()))

    def __repr__(self) -> str:
        rows = ["".join("1" if b else "0" for b in row) for row in self._bits]
        return f"PathMatrix(m={self.m}, n={self.n}, rows={rows})"


def validate(
    raw_bits: Sequence[Sequence[int]] | np.ndarray,
    *,
    allow_empty_paths: bool = False,
    allow_duplicate_columns: bool = False,
    allow_zero_columns: bool = False,
) -> PathMatrix:
    """Check a 0/1 grid and wrap it as a :class:`PathMatrix`.

    By default every node must lie on some path, no two nodes may share a
    column and every path must touch a node.  The ``allow_*`` switches relax
    these checks for synthetic matrices (random draws, reductions, graphs
    whose nodes share all their paths).
    """
    try:
        arr = np.asarray(raw_bits)
    except ValueError as exc:  # ragged input
        raise ParseError(f"grid is not rectangular: {exc}") from None
    if arr.ndim != 2 or arr.size == 0:
        raise EmptyMatrix("path matrix needs m >= 1 rows and n >= 1 columns")
    if arr.dtype != bool:
        if not np.isin(arr, (0, 1)).all():
            raise ParseError("path matrix entries must be 0 or 1")
        arr = arr.astype(bool)
    if not allow_zero_columns:
        zero = np.flatnonzero(~arr.any(axis=0))
        if zero.size:
            raise ZeroColumn(int(zero[0]))
    if not allow_empty_paths:
        empty = np.flatnonzero(~arr.any(axis=1))
        if empty.size:
            raise EmptyPath(int(empty[0]))
    if not allow_duplicate_columns:
        seen: dict[bytes, int] = {}
        packed = np.packbits(arr, axis=0)
        for u in range(arr.shape[1]):
            key = packed[:, u].tobytes()
            if key in seen:
                raise DuplicateColumn(seen[key], u)
            seen[key] = u
    relaxed = allow_empty_paths or allow_duplicate_columns or allow_zero_columns
    return PathMatrix(arr, relaxed=relaxed)


def node_set(P: PathMatrix, nodes: Iterable[int]) -> NodeSet:
    """Normalise an iterable of node indices into a sorted, duplicate-free tuple."""
    out = tuple(sorted(set(int(u) for u in nodes)))
    for u in out:
        if not 0 <= u < P.n:
            raise IndexError(f"node {u} out of range for n={P.n}")
    return out


def paths_of(P: PathMatrix, U: Iterable[int]) -> PathSet:
    """Paths touching at least one node of ``U`` (empty for empty ``U``)."""
    return bits_to_tuple(P.mask_of(U))


def read_matrix(text: str | bytes, **relax) -> PathMatrix:
    """Parse the comma-separated 0/1 format, one path per line."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    rows: list[list[int]] = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        fields = line.split(",")
        row = []
        for col, field in enumerate(fields, start=1):
            field = field.strip()
            if field not in ("0", "1"):
                raise ParseError(f"expected 0 or 1, got {field!r}", lineno, col)
            row.append(int(field))
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError(f"expected {width} fields, got {len(row)}", lineno)
        rows.append(row)
    if not rows:
        raise EmptyMatrix("no rows in matrix text")
    return validate(rows, **relax)


def write_matrix(P: PathMatrix) -> str:
    buf = io.StringIO()
    for row in P.bits:
        buf.write(",".join("1" if b else "0" for b in row))
        buf.write("\n")
    return buf.getvalue()


def read_measurement(text: str, m: int | None = None) -> tuple[bool, ...]:
    """Parse one line of ``m`` comma-separated 0/1 path outcomes."""
    fields = [f.strip() for f in text.strip().split(",")]
    out = []
    for col, field in enumerate(fields, start=1):
        if field not in ("0", "1"):
            raise ParseError(f"expected 0 or 1, got {field!r}", 1, col)
        out.append(field == "1")
    if m is not None and len(out) != m:
        raise ParseError(f"measurement has {len(out)} outcomes, matrix has {m} paths")
    return tuple(out)


def indicator(P: PathMatrix, failed: Iterable[int]) -> tuple[bool, ...]:
    """Measurement produced when exactly the nodes in ``failed`` are down."""
    mask = P.mask_of(failed)
    return tuple(bool(mask >> p & 1) for p in range(P.m))
