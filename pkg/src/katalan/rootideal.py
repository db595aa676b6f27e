"""Root ideals of the type-A positive roots and their bounce graphs.

A root ideal on [ell] is stored by its per-row start columns: row i holds
the roots (i, c_i), ..., (i, ell), or nothing when ``c_i`` is None.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from .combinatorics import DomainError, Multiset

Root = tuple[int, int]


class RootIdeal:
    def __init__(self, ell: int, start_col: Sequence[Optional[int]]):
        start_col = tuple(None if c is None else int(c) for c in start_col)
        if len(start_col) != ell:
            raise DomainError(f"need {ell} start columns, got {len(start_col)}")
        seen_absent = False
        prev = 0
        for i, c in enumerate(start_col, 1):
            if c is None:
                seen_absent = True
                continue
            if seen_absent:
                raise DomainError(f"row {i} present below an absent row")
            if not i + 1 <= c <= ell:
                raise DomainError(f"row {i} start column {c} outside [{i + 1}, {ell}]")
            if c < prev:
                raise DomainError("start columns must weakly increase")
            prev = c
        self.ell = ell
        self.start_col = start_col

    # construction -------------------------------------------------------
    @classmethod
    def empty(cls, ell: int) -> "RootIdeal":
        return cls(ell, [None] * ell)

    @classmethod
    def full(cls, ell: int) -> "RootIdeal":
        return cls(ell, [i + 1 if i < ell else None for i in range(1, ell + 1)])

    @classmethod
    def from_roots(cls, ell: int, roots: Iterable[Root]) -> "RootIdeal":
        """Build from an explicit root set; it must already be an upper ideal."""
        roots = set(roots)
        cols: list[Optional[int]] = []
        for i in range(1, ell + 1):
            row = [j for (r, j) in roots if r == i]
            cols.append(min(row) if row else None)
        psi = cls(ell, cols)
        if psi.roots() != roots:
            raise DomainError("root set is not an upper order ideal")
        return psi

    # basic queries ------------------------------------------------------
    def __contains__(self, root: Root) -> bool:
        i, j = root
        if not 1 <= i <= self.ell:
            return False
        c = self.start_col[i - 1]
        return c is not None and c <= j <= self.ell

    def __eq__(self, other) -> bool:
        return isinstance(other, RootIdeal) and (self.ell, self.start_col) == (other.ell, other.start_col)

    def __hash__(self) -> int:
        return hash((self.ell, self.start_col))

    def __repr__(self) -> str:
        return f"RootIdeal({self.ell}, {list(self.start_col)})"

    def __len__(self) -> int:
        return sum(self.row_length(i) for i in range(1, self.ell + 1))

    def roots(self) -> set[Root]:
        return {(i, j) for i, c in enumerate(self.start_col, 1) if c is not None
                for j in range(c, self.ell + 1)}

    def complement(self) -> set[Root]:
        """Positive roots not in the ideal."""
        return {(i, j) for i in range(1, self.ell + 1) for j in range(i + 1, self.ell + 1)
                if (i, j) not in self}

    def row_length(self, i: int) -> int:
        c = self.start_col[i - 1]
        return 0 if c is None else self.ell - c + 1

    def col_length(self, c: int) -> int:
        return sum(1 for s in self.start_col if s is not None and s <= c)

    # corners ------------------------------------------------------------
    def _removable_at(self, i: int) -> bool:
        c = self.start_col[i - 1]
        if c is None:
            return False
        nxt = self.start_col[i] if i < self.ell else None
        return nxt is None or nxt > c

    @cached_property
    def _removable(self) -> frozenset:
        return frozenset((i, self.start_col[i - 1]) for i in range(1, self.ell + 1)
                         if self._removable_at(i))

    def removable_roots(self) -> set[Root]:
        return set(self._removable)

    def addable_roots(self) -> set[Root]:
        out = set()
        for i in range(1, self.ell + 1):
            c = self.start_col[i - 1]
            j = self.ell if c is None else c - 1
            if j < i + 1:
                continue
            prev = self.start_col[i - 2] if i > 1 else None
            if i == 1 or (prev is not None and prev <= j):
                out.add((i, j))
        return out

    def remove(self, root: Root) -> "RootIdeal":
        if root not in self._removable:
            raise DomainError(f"{root} is not removable")
        i, j = root
        cols = list(self.start_col)
        cols[i - 1] = j + 1 if j < self.ell else None
        return RootIdeal(self.ell, cols)

    def add(self, root: Root) -> "RootIdeal":
        if root not in self.addable_roots():
            raise DomainError(f"{root} is not addable")
        i, j = root
        cols = list(self.start_col)
        cols[i - 1] = j
        return RootIdeal(self.ell, cols)

    # bounce graph -------------------------------------------------------
    @cached_property
    def _down(self) -> dict:
        return {i: j for (i, j) in self._removable}

    @cached_property
    def _up(self) -> dict:
        return {j: i for (i, j) in self._removable}

    def down(self, x: int) -> Optional[int]:
        return self._down.get(x)

    def up(self, x: int) -> Optional[int]:
        return self._up.get(x)

    def up_power(self, x: int, t: int) -> Optional[int]:
        for _ in range(t):
            if x is None:
                return None
            x = self.up(x)
        return x

    @cached_property
    def _paths(self) -> tuple:
        out = []
        for x in range(1, self.ell + 1):
            if self.up(x) is None:
                p = [x]
                while self.down(p[-1]) is not None:
                    p.append(self.down(p[-1]))
                out.append(tuple(p))
        return tuple(out)

    def bounce_paths(self) -> list[tuple[int, ...]]:
        return list(self._paths)

    def _path_of(self, x: int) -> tuple[int, ...]:
        for p in self._paths:
            if x in p:
                return p
        raise IndexError(f"vertex {x} outside [1, {self.ell}]")

    def top(self, x: int) -> int:
        return self._path_of(x)[0]

    def bot(self, x: int) -> int:
        return self._path_of(x)[-1]

    def path(self, a: int, b: int) -> tuple[int, ...]:
        """Vertices of the bounce path from a down to b; empty when a > b."""
        if a > b:
            return ()
        p = self._path_of(a)
        if b not in p:
            raise DomainError(f"{a} and {b} lie on different bounce paths")
        return p[p.index(a):p.index(b) + 1]

    def uppath(self, x: int) -> tuple[int, ...]:
        return self.path(self.top(x), x)

    # walls, ceilings, mirrors -------------------------------------------
    def has_wall(self, r: int) -> bool:
        return self.row_length(r) == self.row_length(r + 1)

    def has_ceiling(self, c: int) -> bool:
        return self.col_length(c) == self.col_length(c + 1)

    def has_mirror(self, r: int) -> bool:
        return any((r, c) in self._removable and (r + 1, c + 1) in self._removable
                   for c in range(r + 2, self.ell))

    def bottom(self) -> int:
        rows = [i for i, c in enumerate(self.start_col, 1) if c is not None]
        return max(rows) if rows else 0

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"ell": self.ell, "start_col": list(self.start_col)}

    @classmethod
    def from_json(cls, data: dict) -> "RootIdeal":
        return cls(int(data["ell"]), data["start_col"])


def delta_k(lam: Sequence[int], k: int) -> RootIdeal:
    """The ideal {(i, j) : k - lam_i + i < j} for lam in the extended bounded set."""
    ell = len(lam)
    if any(p > k for p in lam):
        raise DomainError(f"entry larger than k={k} in {tuple(lam)}")
    cols = []
    for i, p in enumerate(lam, 1):
        c = k - p + i + 1
        cols.append(c if c <= ell else None)
    try:
        return RootIdeal(ell, cols)
    except DomainError as exc:
        raise DomainError(f"{tuple(lam)} does not give a root ideal for k={k}: {exc}") from None


def second_components(roots: Iterable[Root]) -> Multiset:
    return Multiset(j for (_, j) in roots)


def delta_k_plus_one_relation(lam: Sequence[int], k: int) -> tuple[RootIdeal, set[Root]]:
    """Check that raising k by one strips the leftmost root of each row up to the bottom.

    Returns the two sides (the larger-k ideal and the stripped root set).
    """
    psi = delta_k(lam, k)
    b = psi.bottom()
    stripped = psi.roots() - {(z, psi.down(z)) for z in range(1, b + 1)}
    big = delta_k(lam, k + 1)
    if big.roots() != stripped:
        raise AssertionError(f"k+1 relation failed for {tuple(lam)}, k={k}")
    return big, stripped


def all_root_ideals(ell: int) -> Iterator[RootIdeal]:
    """Every root ideal on [ell]."""
    def rec(i: int, prev: int, cols: list):
        if i > ell:
            yield RootIdeal(ell, cols)
            return
        yield RootIdeal(ell, cols + [None] * (ell - i + 1))
        for c in range(max(prev, i + 1), ell + 1):
            yield from rec(i + 1, c, cols + [c])

    yield from rec(1, 0, [])
