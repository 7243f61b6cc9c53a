"""Partitions, conjugation, regularity, and residue-labelled nodes."""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))`` and the empty tuple is the empty partition.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for i, p in enumerate(parts):
            if p < 0:
                raise ValueError(f"negative part in {parts}")
            if p == 0:
                raise ValueError(f"zero part before a positive part in {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    def __getitem__(self, i):
        # parts beyond the stored length are zero
        if isinstance(i, int) and i >= len(self):
            return 0
        return super().__getitem__(i)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        return format_partition(self)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        """Number of positive parts, i.e. the first part of the conjugate."""
        return len(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def cells(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield (i, j)


EMPTY = Partition()


class Node(NamedTuple):
    row: int
    col: int
    residue: int


def _check_e(e: int) -> None:
    if e < 2:
        raise ValueError(f"e must be at least 2, got {e}")


def conjugate(la: Iterable[int]) -> Partition:
    la = Partition(la)
    if not la:
        return EMPTY
    return Partition(sum(1 for p in la if p >= i) for i in range(1, la[0] + 1))


def is_e_regular(la: Iterable[int], e: int) -> bool:
    _check_e(e)
    la = Partition(la)
    return all(la[i] != la[i + e - 1] for i in range(len(la) - e + 1))


def is_e_restricted(la: Iterable[int], e: int) -> bool:
    _check_e(e)
    la = Partition(la)
    return all(la[i] - la[i + 1] < e for i in range(len(la)))


def addable_nodes(la: Partition) -> list[tuple[int, int]]:
    """Addable (row, col) pairs ordered top to bottom."""
    out = []
    for i in range(len(la) + 1):
        if i == 0 or la[i - 1] > la[i]:
            out.append((i + 1, la[i] + 1))
    return out


def removable_nodes(la: Partition) -> list[tuple[int, int]]:
    """Removable (row, col) pairs ordered top to bottom."""
    return [(i + 1, la[i]) for i in range(len(la)) if la[i] > la[i + 1]]


def residue(row: int, col: int, e: int) -> int:
    return (col - row) % e


def nodes_by_residue(la: Iterable[int], e: int, k: int, kind: str = "addable") -> list[Node]:
    """Addable or removable nodes of residue ``k``, top to bottom."""
    _check_e(e)
    if not 0 <= k < e:
        raise ValueError(f"residue {k} out of range for e={e}")
    la = Partition(la)
    if kind == "addable":
        cand = addable_nodes(la)
    elif kind == "removable":
        cand = removable_nodes(la)
    else:
        raise ValueError(f"kind must be 'addable' or 'removable', not {kind!r}")
    return [Node(i, j, k) for i, j in cand if (j - i) % e == k]


def add_nodes(la: Iterable[int], nodes: Iterable) -> Partition:
    """Add a set of cells to ``la``; the result must be a Young diagram."""
    la = Partition(la)
    rows = list(la)
    cells = sorted({(n[0], n[1]) for n in nodes})
    addable = set(addable_nodes(la))
    for i, j in cells:
        if (i, j) in set(la.cells()):
            raise ValueError(f"node {(i, j)} already lies in {la}")
    for i, j in cells:
        if (i, j) not in addable:
            raise ValueError(f"node {(i, j)} is not addable to {la}")
        while len(rows) < i:
            rows.append(0)
        rows[i - 1] += 1
    try:
        return Partition(rows)
    except ValueError as exc:
        raise ValueError(f"adding {cells} to {la} does not give a partition") from exc


def remove_nodes(la: Iterable[int], nodes: Iterable) -> Partition:
    la = Partition(la)
    rows = list(la)
    removable = set(removable_nodes(la))
    for n in nodes:
        i, j = n[0], n[1]
        if (i, j) not in removable:
            raise ValueError(f"node {(i, j)} is not removable from {la}")
        rows[i - 1] -= 1
    return Partition(rows)


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield EMPTY
        return

    def rec(rem, cap):
        if rem == 0:
            yield ()
            return
        for p in range(min(rem, cap), 0, -1):
            for rest in rec(rem - p, p):
                yield (p,) + rest

    for parts in rec(n, max_part):
        yield Partition(parts)


def parse_partition(text: str) -> Partition:
    """Parse ``"4,2,1"``; the single token ``0`` means the empty partition."""
    text = text.strip()
    if text in ("0", ""):
        return EMPTY
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise ValueError(
            f"bad partition {text!r}: expected comma-separated integers, '0' for the empty partition"
        ) from exc
    if any(p <= 0 for p in parts):
        raise ValueError(f"bad partition {text!r}: parts must be positive ('0' alone means empty)")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"bad partition {text!r}: parts must be weakly decreasing")
    return Partition(parts)


def format_partition(la: Iterable[int]) -> str:
    la = tuple(la)
    return ",".join(map(str, la)) if la else "0"
