"""Exact sparse linear algebra over any of the coefficient fields.

Vectors are dicts ``{index: scalar}`` with no stored zeros.  Indices are
integers and their natural order is the elimination order, so a caller picks
the echelon convention by choosing how it numbers coordinates.

The environment variable ``ZIGZAG_HH_MAX_WORKSET`` caps the number of stored
nonzeros in a single elimination; exceeding it raises :class:`WorkingSetExceeded`.
"""

from __future__ import annotations

import heapq
import os

from .resolution import acc


class WorkingSetExceeded(RuntimeError):
    pass


def _workset_cap() -> int | None:
    raw = os.environ.get("ZIGZAG_HH_MAX_WORKSET")
    return int(raw) if raw else None


def axpy(y: dict, a, x: dict) -> None:
    """y += a*x in place."""
    for k, v in x.items():
        acc(y, k, a * v)


def scale(a, x: dict) -> dict:
    return {k: a * v for k, v in x.items()} if a else {}


class Echelon:
    """Incrementally built echelon basis of a subspace.

    Every stored row is normalised to have coefficient 1 at its pivot, which
    is its smallest index.  ``reduce`` removes all pivot coordinates from a
    vector, giving the canonical representative of its coset.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, dict] = {}
        self.combos: dict[int, dict] = {}
        self.track = track
        self._nnz = 0
        self._cap = _workset_cap()

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict, combo: dict | None = None) -> dict:
        v = dict(v)
        heap = list(v)
        heapq.heapify(heap)
        seen = set()
        rows = self.rows
        while heap:
            k = heapq.heappop(heap)
            if k in seen:
                continue
            seen.add(k)
            c = v.get(k)
            if not c or k not in rows:
                continue
            row = rows[k]
            for kk, vv in row.items():
                acc(v, kk, -c * vv)
                if kk not in seen:
                    heapq.heappush(heap, kk)
            if combo is not None:
                axpy(combo, -c, self.combos[k])
        return v

    def add(self, v: dict, combo: dict | None = None):
        """Insert ``v``; returns the pivot, or ``None`` if ``v`` was dependent."""
        r = self.reduce(v, combo)
        if not r:
            return None
        p = min(r)
        inv = 1 / r[p] if r[p] != 1 else None
        if inv is not None:
            r = {k: x * inv for k, x in r.items()}
            if combo is not None:
                combo = {k: x * inv for k, x in combo.items()}
        self.rows[p] = r
        if combo is not None:
            self.combos[p] = combo
        self._nnz += len(r)
        if self._cap is not None and self._nnz > self._cap:
            raise WorkingSetExceeded(f"elimination exceeded {self._cap} stored nonzeros")
        return p

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def pivots(self):
        return sorted(self.rows)

    def rref(self) -> dict[int, dict]:
        """Fully reduced basis: row p has 1 at p and 0 at every other pivot."""
        out: dict[int, dict] = {}
        for p in sorted(self.rows, reverse=True):
            row = dict(self.rows[p])
            for k in [k for k in row if k != p and k in out]:
                c = row.get(k)
                if c:
                    axpy(row, -c, out[k])
            out[p] = row
        return dict(sorted(out.items()))


def components(columns: dict[int, dict]) -> list[list[int]]:
    """Group column keys into connected components of the row/column incidence graph."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c, vec in columns.items():
        rc = find(("c", c))
        for r in vec:
            rr = find(("r", r))
            if rr != rc:
                parent[rr] = rc
    groups: dict = {}
    for c in columns:
        groups.setdefault(find(("c", c)), []).append(c)
    return list(groups.values())


def rank(columns: dict[int, dict]) -> int:
    """Rank of the matrix whose columns are given, block by block."""
    total = 0
    for block in components(columns):
        ech = Echelon()
        for c in block:
            if ech.add(columns[c]) is not None:
                total += 1
    return total


def kernel(columns: dict[int, dict]) -> list[dict]:
    """Basis of the kernel of the map sending basis vector c to ``columns[c]``."""
    out = []
    for block in components(columns):
        ech = Echelon(track=True)
        for c in sorted(block):
            combo = {c: 1}
            r = ech.reduce(columns[c], combo)
            if r:
                ech.add(r, combo)
            else:
                out.append(combo)
    return out


def image_echelon(columns: dict[int, dict]) -> Echelon:
    ech = Echelon()
    for c in sorted(columns):
        ech.add(columns[c])
    return ech
