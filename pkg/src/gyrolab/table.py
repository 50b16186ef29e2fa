"""Cayley tables of finite magmas with identity at index 0, and the `.gyt` format.

A `.gyt` file holds the order ``n`` on the first line, then ``n`` rows of
``n`` space-separated indices; row ``i``, column ``j`` is ``i + j``. Lines
starting with ``#`` are allowed before the header only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CayleyTable",
    "LoopCheckResult",
    "LoopViolation",
    "TableFormatError",
    "parse_table",
    "read_table",
    "serialize_table",
    "validate_loop",
    "write_table",
]


class TableFormatError(ValueError):
    """A `.gyt` text that cannot be parsed; carries 1-based line/column."""

    def __init__(self, message: str, line: int, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}" + (f", column {column}" if column else "")
        super().__init__(f"{where}: {message}")


@dataclass(frozen=True, eq=False)
class CayleyTable:
    """An ``n x n`` operation table, ``entries[a, b] = a + b``.

    The array is stored read-only so tables can be shared freely. Equality
    and hashing are by content.
    """

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ValueError(f"table must be a non-empty square, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def __len__(self) -> int:
        return self.order

    def op(self, a: int, b: int) -> int:
        return int(self.entries[a, b])

    def rows(self) -> list[list[int]]:
        return self.entries.tolist()

    def key(self) -> bytes:
        """Row-major content key; lexicographic order on keys is table order."""
        return self.entries.astype(np.int16).byteswap().tobytes()

    def relabel(self, perm: Sequence[int]) -> "CayleyTable":
        """Table of the isomorphic copy where element ``a`` is renamed ``perm[a]``."""
        p = np.asarray(perm, dtype=np.int64)
        inv = np.argsort(p)
        return CayleyTable(p[self.entries[np.ix_(inv, inv)]])

    def __eq__(self, other):
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        return f"CayleyTable(order={self.order}, rows={self.rows()})"

    @classmethod
    def from_function(cls, n: int, op) -> "CayleyTable":
        return cls([[op(a, b) for b in range(n)] for a in range(n)])


def parse_table(text: str) -> CayleyTable:
    """Parse `.gyt` text. Loop or gyrogroup validity is *not* checked here."""
    lines = text.split("\n")
    i = 0
    while i < len(lines) and lines[i].startswith("#"):
        i += 1
    if i >= len(lines) or not lines[i].strip():
        raise TableFormatError("missing header with table order", i + 1)
    header = lines[i].strip()
    try:
        n = int(header)
    except ValueError:
        raise TableFormatError(f"malformed header {header!r}", i + 1, 1) from None
    if n < 1:
        raise TableFormatError(f"order must be positive, got {n}", i + 1, 1)

    body = lines[i + 1 :]
    while body and not body[-1].strip():
        body.pop()
    if len(body) != n:
        raise TableFormatError(f"expected {n} rows, found {len(body)}", i + 2 + min(len(body), n))

    rows = []
    for r, line in enumerate(body):
        lineno = i + 2 + r
        tokens = _tokens(line)
        if len(tokens) != n:
            raise TableFormatError(f"expected {n} entries, found {len(tokens)}", lineno)
        row = []
        for col, tok in tokens:
            if not tok.isdigit():
                raise TableFormatError(f"non-integer token {tok!r}", lineno, col)
            v = int(tok)
            if v >= n:
                raise TableFormatError(f"index {v} out of range 0..{n - 1}", lineno, col)
            row.append(v)
        rows.append(row)
    return CayleyTable(rows)


def _tokens(line: str) -> list[tuple[int, str]]:
    out = []
    col = 0
    for part in line.split(" "):
        if part:
            out.append((col + 1, part))
        col += len(part) + 1
    return out


def serialize_table(t: CayleyTable) -> str:
    lines = [str(t.order)]
    lines.extend(" ".join(str(v) for v in row) for row in t.rows())
    return "\n".join(lines) + "\n"


def read_table(path) -> CayleyTable:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read())


def write_table(path, t: CayleyTable) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_table(t))


@dataclass(frozen=True)
class LoopViolation:
    kind: str  # no-identity | row-not-permutation | column-not-permutation | out-of-range
    cells: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class LoopCheckResult:
    violations: tuple[LoopViolation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.valid


def _repeat_cells(values: Iterable[int]) -> list[int]:
    """Positions holding a value that occurs more than once."""
    seen: dict[int, list[int]] = {}
    for pos, v in enumerate(values):
        seen.setdefault(v, []).append(pos)
    return sorted(p for ps in seen.values() if len(ps) > 1 for p in ps)


def validate_loop(t: CayleyTable) -> LoopCheckResult:
    """Check two-sided identity 0 and the Latin-square property by direct scan."""
    e = t.entries
    n = t.order
    violations = []

    bad = [(int(a), int(b)) for a, b in zip(*np.nonzero((e < 0) | (e >= n)))]
    if bad:
        violations.append(LoopViolation("out-of-range", tuple(bad)))
        return LoopCheckResult(tuple(violations))

    ident = [(0, b) for b in range(n) if e[0, b] != b]
    ident += [(a, 0) for a in range(1, n) if e[a, 0] != a]
    if ident:
        violations.append(LoopViolation("no-identity", tuple(ident)))
    for a in range(n):
        cols = _repeat_cells(e[a].tolist())
        if cols:
            violations.append(LoopViolation("row-not-permutation", tuple((a, c) for c in cols)))
    for b in range(n):
        rows = _repeat_cells(e[:, b].tolist())
        if rows:
            violations.append(LoopViolation("column-not-permutation", tuple((r, b) for r in rows)))
    return LoopCheckResult(tuple(violations))
