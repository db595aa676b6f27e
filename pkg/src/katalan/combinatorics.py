"""Partitions, integer vectors and index multisets.

Vectors are plain tuples of ints, indexed from 1 in every public function
(position ``z`` lives at ``v[z - 1]``).  Multisets are :class:`Multiset`
instances; both are immutable and hashable.
"""
from __future__ import annotations

from collections import Counter
from itertools import product
from typing import Iterable, Iterator, Mapping


class DomainError(ValueError):
    """An input lies outside the set an operation is defined on."""


class ResourceError(RuntimeError):
    """A configured size cap was exceeded."""


def as_partition(parts: Iterable[int]) -> tuple[int, ...]:
    """Canonical partition: drop zeros, sort weakly decreasing."""
    out = tuple(sorted((p for p in parts if p != 0), reverse=True))
    if out and out[-1] < 0:
        raise DomainError(f"negative part in {out}")
    return out


def is_partition(v: Iterable[int]) -> bool:
    v = tuple(v)
    return all(p >= 0 for p in v) and all(v[i] >= v[i + 1] for i in range(len(v) - 1))


def is_bounded_partition(v: Iterable[int], k: int) -> bool:
    """Member of P_ell^k: weakly decreasing, entries in [0, k], trailing zeros allowed."""
    v = tuple(v)
    return is_partition(v) and all(p <= k for p in v)


def is_extended_member(v: Iterable[int], k: int) -> bool:
    """Every entry <= k and v_i + ell - i weakly decreasing."""
    v = tuple(v)
    if any(p > k for p in v):
        return False
    return all(v[i] + 1 >= v[i + 1] for i in range(len(v) - 1))


def degree(v: Iterable[int]) -> int:
    return sum(v)


def _check_index(v: tuple[int, ...], z: int) -> None:
    if not 1 <= z <= len(v):
        raise IndexError(f"index {z} outside [1, {len(v)}]")


def add_epsilon(v: tuple[int, ...], z: int, sign: int = 1) -> tuple[int, ...]:
    _check_index(v, z)
    out = list(v)
    out[z - 1] += sign
    return tuple(out)


def add_epsilon_interval(v: tuple[int, ...], a: int, b: int, sign: int = 1) -> tuple[int, ...]:
    """Shift entries a..b (inclusive) by ``sign``; an empty interval (a > b) is a no-op."""
    if a > b:
        return tuple(v)
    _check_index(v, a)
    _check_index(v, b)
    out = list(v)
    for i in range(a - 1, b):
        out[i] += sign
    return tuple(out)


def add_epsilon_set(v: tuple[int, ...], indices: Iterable[int], sign: int = 1) -> tuple[int, ...]:
    out = list(v)
    for z in indices:
        _check_index(v, z)
        out[z - 1] += sign
    return tuple(out)


def add_root(v: tuple[int, ...], root: tuple[int, int], times: int = 1) -> tuple[int, ...]:
    """v + times * (e_i - e_j) for root (i, j)."""
    i, j = root
    out = list(v)
    out[i - 1] += times
    out[j - 1] -= times
    return tuple(out)


class Multiset:
    """Finite multiset of indices; zero counts are never stored."""

    __slots__ = ("_counts", "_hash")

    def __init__(self, items: Iterable[int] | Mapping[int, int] = ()):
        if isinstance(items, Mapping):
            counts = {int(a): int(n) for a, n in items.items()}
        else:
            counts = Counter(int(a) for a in items)
        if any(n < 0 for n in counts.values()):
            raise DomainError("negative multiplicity")
        self._counts = {a: n for a, n in sorted(counts.items()) if n}
        self._hash = hash(tuple(self._counts.items()))

    @classmethod
    def power(cls, z: int, n: int) -> "Multiset":
        return cls({z: n})

    def count(self, a: int) -> int:
        return self._counts.get(a, 0)

    def add(self, a: int, n: int = 1) -> "Multiset":
        c = dict(self._counts)
        c[a] = c.get(a, 0) + n
        return Multiset(c)

    def remove(self, a: int) -> "Multiset":
        if self.count(a) < 1:
            raise DomainError(f"{a} is not in the multiset")
        c = dict(self._counts)
        c[a] -= 1
        return Multiset(c)

    def union(self, other: "Multiset") -> "Multiset":
        c = Counter(self._counts)
        c.update(other._counts)
        return Multiset(c)

    def support(self) -> tuple[int, ...]:
        return tuple(self._counts)

    def items(self):
        return self._counts.items()

    def elements(self) -> tuple[int, ...]:
        return tuple(a for a, n in self._counts.items() for _ in range(n))

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __eq__(self, other) -> bool:
        return isinstance(other, Multiset) and self._counts == other._counts

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Multiset({list(self.elements())})"

    def to_json(self) -> dict[str, int]:
        return {str(a): n for a, n in self._counts.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "Multiset":
        return cls({int(a): int(n) for a, n in data.items()})


def bounded_partitions(ell: int, k: int, max_degree: int | None = None) -> Iterator[tuple[int, ...]]:
    """All of P_ell^k (zero-padded to length ell), in lexicographic order."""
    def rec(prefix: list[int], cap: int, left: int | None):
        if len(prefix) == ell:
            yield tuple(prefix)
            return
        for p in range(0, cap + 1):
            if left is not None and p > left:
                break
            prefix.append(p)
            yield from rec(prefix, p, None if left is None else left - p)
            prefix.pop()

    yield from rec([], k, max_degree)


def extended_vectors(ell: int, k: int, low: int = 0) -> Iterator[tuple[int, ...]]:
    """Members of the extended set with every entry in [low, k]."""
    for v in product(range(low, k + 1), repeat=ell):
        if is_extended_member(v, k):
            yield v


def single_ascent_vectors(ell: int, k: int, low: int = 0) -> Iterator[tuple[tuple[int, ...], int]]:
    """Pairs (mu, z) with mu_z + 1 = mu_{z+1} and mu weakly decreasing elsewhere."""
    for v in extended_vectors(ell, k, low):
        ascents = [i + 1 for i in range(ell - 1) if v[i] < v[i + 1]]
        if len(ascents) == 1:
            yield v, ascents[0]


def multisets_of_size(ell: int, n: int) -> Iterator[Multiset]:
    def rec(start: int, left: int, acc: list[int]):
        if left == 0:
            yield Multiset(acc)
            return
        for a in range(start, ell + 1):
            acc.append(a)
            yield from rec(a, left - 1, acc)
            acc.pop()

    yield from rec(1, n, [])
