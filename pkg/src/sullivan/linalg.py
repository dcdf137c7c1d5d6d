"""Exact rational linear algebra on sparse matrices.

Vectors are plain dicts ``{index: Fraction}`` holding only nonzero entries.
Elimination is carried out on primitive integer rows (fraction-free) and the
result is normalized to reduced row echelon form at the end.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

DENSE_COLUMN_LIMIT = 64


class RationalMatrix:
    """Sparse matrix with a fixed shape; rows are stored as ``{col: Fraction}``."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        data: dict[int, dict[int, Fraction]] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = Fraction(v)
                if v:
                    data.setdefault(r, {})[c] = v
        self._data = data

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        nrows = len(rows)
        ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {(i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v}
        return cls(nrows, ncols, entries)

    @classmethod
    def from_row_vectors(cls, vectors: Sequence[dict], cols: int) -> "RationalMatrix":
        return cls(len(vectors), cols, {(i, j): v for i, vec in enumerate(vectors) for j, v in vec.items()})

    @classmethod
    def from_column_vectors(cls, vectors: Sequence[dict], rows: int) -> "RationalMatrix":
        return cls(rows, len(vectors), {(i, j): v for j, vec in enumerate(vectors) for i, v in vec.items()})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def __getitem__(self, rc) -> Fraction:
        r, c = rc
        return self._data.get(r, {}).get(c, Fraction(0))

    def entries(self) -> dict:
        return {(r, c): v for r, row in self._data.items() for c, v in row.items()}

    def row(self, r: int) -> dict:
        return dict(self._data.get(r, {}))

    def row_vectors(self) -> list[dict]:
        return [self.row(r) for r in range(self.rows)]

    def column_vectors(self) -> list[dict]:
        out: list[dict] = [{} for _ in range(self.cols)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[c][r] = v
        return out

    def to_dense(self) -> list[list[Fraction]]:
        return [[self[r, c] for c in range(self.cols)] for r in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries().items()})

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out: dict = {}
        for r, row in self._data.items():
            for k, a in row.items():
                for c, b in other._data.get(k, {}).items():
                    out[r, c] = out.get((r, c), 0) + a * b
        return RationalMatrix(self.rows, other.cols, out)

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for r, row in self._data.items():
            s = sum((v * vec[c] for c, v in row.items() if c in vec), Fraction(0))
            if s:
                out[r] = s
        return out

    def is_zero(self) -> bool:
        return not self._data

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def rank(self) -> int:
        return rref(self)[2]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self):
        return f"RationalMatrix({self.rows}, {self.cols}, {self.entries()!r})"


def _primitive(row: dict) -> dict:
    den = 1
    for v in row.values():
        den = lcm(den, Fraction(v).denominator)
    ints = {c: int(Fraction(v) * den) for c, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _forward_sparse(rows: list[dict]) -> tuple[list[dict], list[int]]:
    # rows: primitive integer rows, tagged by position = original row index
    live = [(i, r) for i, r in enumerate(rows) if r]
    echelon, pivots = [], []
    while live:
        col = min(min(r) for _, r in live)
        k = next(k for k, (_, r) in enumerate(live) if col in r)
        _, prow = live.pop(k)
        p = prow[col]
        nxt = []
        for idx, r in live:
            a = r.get(col)
            if a:
                new = {c: p * v for c, v in r.items()}
                for c, v in prow.items():
                    w = new.get(c, 0) - a * v
                    if w:
                        new[c] = w
                    else:
                        new.pop(c, None)
                r = _primitive(new) if new else new
            if r:
                nxt.append((idx, r))
        live = nxt
        echelon.append(prow)
        pivots.append(col)
    return echelon, pivots


def _forward_dense(rows: list[dict], ncols: int) -> tuple[list[dict], list[int]]:
    live = []
    for r in rows:
        if r:
            dense = [0] * ncols
            for c, v in r.items():
                dense[c] = v
            live.append(dense)
    echelon, pivots = [], []
    col = 0
    while live and col < ncols:
        k = next((k for k, r in enumerate(live) if r[col]), None)
        if k is None:
            col += 1
            continue
        prow = live.pop(k)
        p = prow[col]
        nxt = []
        for r in live:
            a = r[col]
            if a:
                r = [p * x - a * y for x, y in zip(r, prow)]
                g = 0
                for x in r:
                    g = gcd(g, x)
                if g > 1:
                    r = [x // g for x in r]
                if not g:
                    continue
            nxt.append(r)
        live = nxt
        echelon.append({c: v for c, v in enumerate(prow) if v})
        pivots.append(col)
        col += 1
    return echelon, pivots


def _echelon(vectors: Iterable[dict], ncols: int) -> tuple[list[dict], list[int]]:
    rows = [_primitive(v) if v else {} for v in vectors]
    if ncols < DENSE_COLUMN_LIMIT:
        echelon, pivots = _forward_dense(rows, ncols)
    else:
        echelon, pivots = _forward_sparse(rows)
    # normalize pivots to 1, then clear entries above each pivot
    reduced = []
    for row, p in zip(echelon, pivots):
        lead = row[p]
        reduced.append({c: Fraction(v, lead) for c, v in row.items()})
    for i in range(len(reduced) - 1, -1, -1):
        p = pivots[i]
        prow = reduced[i]
        for j in range(i):
            a = reduced[j].get(p)
            if a:
                row = reduced[j]
                for c, v in prow.items():
                    w = row.get(c, 0) - a * v
                    if w:
                        row[c] = w
                    else:
                        row.pop(c, None)
    return reduced, pivots


def rref(m: RationalMatrix) -> tuple[RationalMatrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank.

    Pivots are chosen at the leftmost remaining column, taking the lowest
    original row index that has a nonzero entry there.
    """
    reduced, pivots = _echelon(m.row_vectors(), m.cols)
    return RationalMatrix.from_row_vectors(reduced + [{}] * (m.rows - len(reduced)), m.cols), pivots, len(pivots)


def nullspace(m: RationalMatrix) -> list[dict]:
    """Basis of ``{x : m x = 0}``, one vector per free column in increasing order."""
    reduced, pivots = _echelon(m.row_vectors(), m.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = {f: Fraction(1)}
        for row, p in zip(reduced, pivots):
            a = row.get(f)
            if a:
                v[p] = -a
        basis.append(v)
    return basis


def solve(m: RationalMatrix, b: dict) -> dict | None:
    """A particular solution of ``m x = b`` (free variables set to zero), or None."""
    if not b:
        return {}
    aug = m.row_vectors()
    for r, v in b.items():
        aug[r] = dict(aug[r])
        aug[r][m.cols] = Fraction(v)
    reduced, pivots = _echelon(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = {}
    for row, p in zip(reduced, pivots):
        v = row.get(m.cols)
        if v:
            x[p] = v
    return x


class Subspace:
    """Span of a set of vectors, kept as RREF rows for reduction and membership."""

    def __init__(self, vectors: Iterable[dict], ncols: int):
        self.ncols = ncols
        self.rows, self.pivots = _echelon(list(vectors), ncols)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` after clearing every pivot coordinate."""
        out = dict(vec)
        for row, p in zip(self.rows, self.pivots):
            a = out.get(p)
            if a:
                for c, v in row.items():
                    w = out.get(c, 0) - a * v
                    if w:
                        out[c] = w
                    else:
                        out.pop(c, None)
        return out

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: dict) -> list[Fraction] | None:
        """Coefficients of ``vec`` in the RREF basis, or None if it is not in the span."""
        if self.reduce(vec):
            return None
        return [Fraction(vec.get(p, 0)) for p in self.pivots]

    def complement_units(self) -> list[int]:
        pivot_set = set(self.pivots)
        return [c for c in range(self.ncols) if c not in pivot_set]


def add_vectors(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for c, v in b.items():
        w = out.get(c, 0) + scale * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out
