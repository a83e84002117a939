"""Exact sparse linear algebra over Q.

Vectors are dictionaries from column labels to nonzero scalars.  Column labels
are arbitrary hashables ordered by a key function; the pivot of a row is its
largest column under that key.

Stored rows use gmpy2 rationals when gmpy2 is available, since elimination is
the hot loop of every growth computation; rows handed back to callers are
always Fractions.  ColumnBasis hands whole batches to python-flint's exact
integer rref when that package is installed.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

try:
    from gmpy2 import mpq as _rational
except ImportError:  # pragma: no cover
    _rational = Fraction

try:
    import flint
except ImportError:  # pragma: no cover
    flint = None

Vector = Dict[Hashable, object]


def _identity_key(c):
    return c


class _Desc:
    """Wrapper that reverses the order of a key, for max-heaps via heapq."""

    __slots__ = ("k",)

    def __init__(self, k):
        self.k = k

    def __lt__(self, other):
        return other.k < self.k


class Echelon:
    """Incrementally maintained semi-echelon basis.

    Each stored row is monic at its pivot and no two rows share a pivot, so a
    vector lies in the span exactly when reducing its pivots leaves nothing.
    """

    def __init__(self, key: Callable = _identity_key):
        self.key = key
        self.pivots: Dict[Hashable, Vector] = {}
        self._order: Dict[Hashable, _Desc] = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _desc(self, c) -> _Desc:
        d = self._order.get(c)
        if d is None:
            d = self._order[c] = _Desc(self.key(c))
        return d

    def reduce(self, vec: Vector) -> Vector:
        """Residual of vec after clearing all pivot columns that become leading.

        Columns are visited from the largest down with a heap; subtracting a
        pivot row only touches columns below its pivot, so the order is stable.
        """
        row = {c: _rational(v) for c, v in vec.items() if v}
        pivots = self.pivots
        desc = self._desc
        heap = [(desc(c), c) for c in row]
        heapq.heapify(heap)
        while heap:
            _, lead = heapq.heappop(heap)
            f = row.get(lead)
            if f is None:
                continue
            prow = pivots.get(lead)
            if prow is None:
                return row
            for c, v in prow.items():
                old = row.get(c)
                if old is None:
                    row[c] = -f * v
                    heapq.heappush(heap, (desc(c), c))
                else:
                    nv = old - f * v
                    if nv:
                        row[c] = nv
                    else:
                        del row[c]
        return row

    def add(self, vec: Vector) -> bool:
        """Insert vec; True if it was independent of the stored rows."""
        row = self.reduce(vec)
        if not row:
            return False
        lead = max(row, key=self.key)
        f = row[lead]
        self.pivots[lead] = {c: v / f for c, v in row.items()}
        return True

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def reduced_rows(self) -> List[Vector]:
        """Rows in reduced row echelon form, sorted by decreasing pivot."""
        key = self.key
        order = sorted(self.pivots, key=key)
        done: Dict[Hashable, Vector] = {}
        # process pivots from smallest upwards, clearing every pivot column
        for p in order:
            row = dict(self.pivots[p])
            for q in [c for c in row if c != p and c in done]:
                f = row[q]
                for c, v in done[q].items():
                    nv = row.get(c, 0) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            done[p] = row
        return [{c: Fraction(int(v.numerator), int(v.denominator)) for c, v in done[p].items()}
                for p in reversed(order)]


class Subspace:
    """A finite-dimensional subspace, stored as reduced row echelon rows."""

    def __init__(self, vectors: Iterable[Vector] = (), key: Callable = _identity_key):
        ech = Echelon(key)
        for v in vectors:
            ech.add(v)
        self.key = key
        self._rows = tuple(ech.reduced_rows())
        self._ech = ech

    @classmethod
    def from_echelon(cls, ech: Echelon) -> "Subspace":
        obj = cls.__new__(cls)
        obj.key = ech.key
        obj._rows = tuple(ech.reduced_rows())
        obj._ech = ech
        return obj

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def rows(self) -> Tuple[Vector, ...]:
        return self._rows

    def basis(self) -> Tuple[Vector, ...]:
        return self._rows

    def pivots(self) -> List[Hashable]:
        return [max(r, key=self.key) for r in self._rows]

    def columns(self) -> List[Hashable]:
        """Ambient index: every column used by some row, in decreasing order."""
        cols = {c for r in self._rows for c in r}
        return sorted(cols, key=self.key, reverse=True)

    def __contains__(self, vec: Vector) -> bool:
        return self._ech.contains(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self._ech.contains(r) for r in other._rows)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self.contains_subspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(list(self._rows) + list(other._rows), self.key)

    def __repr__(self):
        return f"Subspace(dim={self.dim})"


def _integral(vec: Vector) -> Dict[Hashable, int]:
    """A primitive integer multiple of a rational vector."""
    vec = {c: v for c, v in vec.items() if v}
    if not vec:
        return {}
    den = math.lcm(*(int(v.denominator) for v in vec.values()))
    out = {c: int(v.numerator) * (den // int(v.denominator)) for c, v in vec.items()}
    g = math.gcd(*out.values())
    return {c: x // g for c, x in out.items()}


class ColumnBasis:
    """A basis grown in batches, keeping the greedy choice of each batch.

    extend() keeps a vector exactly when it is independent of the basis and of
    the kept vectors before it.  Dense batches go through one exact rref of the
    integer matrix [basis | batch] with python-flint: its pivot columns are the
    greedy choice.  Sparse batches, or all batches without python-flint, go
    through an Echelon, which is brought up to date lazily.
    """

    DENSE = 0.05

    def __init__(self, key: Callable = _identity_key, use_flint: bool = True):
        self._flint = flint is not None and use_flint
        self._ech = Echelon(key)
        self._synced = 0
        self._cols: Dict[Hashable, int] = {}
        self._basis: List[Dict[Hashable, int]] = []
        self._nnz = 0

    @property
    def rank(self) -> int:
        return len(self._basis)

    def extend(self, batch: Sequence[Vector]) -> List[bool]:
        ints = [_integral(v) for v in batch]
        cols = self._cols
        for v in ints:
            for c in v:
                if c not in cols:
                    cols[c] = len(cols)
        nr, nc = len(cols), len(self._basis) + len(ints)
        nnz = self._nnz + sum(len(v) for v in ints)
        if self._flint and nr and nnz >= self.DENSE * nr * nc:
            keep = self._extend_dense(ints)
        else:
            keep = self._extend_sparse(ints)
        for v, k in zip(ints, keep):
            if k:
                self._basis.append(v)
                self._nnz += len(v)
        return keep

    def _extend_sparse(self, ints) -> List[bool]:
        for v in self._basis[self._synced:]:
            self._ech.add(v)
        keep = [self._ech.add(v) for v in ints]
        self._synced = len(self._basis) + sum(keep)
        return keep

    def _extend_dense(self, ints) -> List[bool]:
        cols = self._cols
        old = len(self._basis)
        vecs = self._basis + ints
        nr, nc = len(cols), len(vecs)
        flat = [0] * (nr * nc)
        for j, v in enumerate(vecs):
            for c, x in v.items():
                flat[cols[c] * nc + j] = x
        rr, _, rank = flint.fmpz_mat(nr, nc, flat).rref()
        # rows of an rref start at strictly increasing pivot columns
        pivots = set()
        j = 0
        for k in range(rank):
            while not rr[k, j]:
                j += 1
            pivots.add(j)
            j += 1
        return [old + i in pivots for i in range(len(ints))]


def span_dimension(vectors: Iterable[Vector], key: Callable = _identity_key) -> int:
    ech = Echelon(key)
    for v in vectors:
        ech.add(v)
    return ech.rank
