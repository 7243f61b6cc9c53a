"""Canonical basis vectors G(mu) and the q-decomposition numbers d_{la,mu}(q)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .abacus import core_and_weight, dominance_key, dominates
from .blocks import BlockId, enumerate_block
from .laurent import ONE, ZERO, LaurentPoly, is_bar_antisymmetric
from .partitions import Partition
from .wedge import Straightener, bar_standard

log = logging.getLogger(__name__)


@dataclass
class BlockTable:
    e: int
    core: Partition
    weight: int
    r: int
    members: list[Partition]
    bar_matrix: dict[tuple[Partition, Partition], LaurentPoly]
    index: dict[Partition, int] = field(init=False)
    _columns: dict[Partition, dict[Partition, LaurentPoly]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {la: i for i, la in enumerate(self.members)}

    def a(self, la: Partition, xi: Partition) -> LaurentPoly:
        return self.bar_matrix.get((la, xi), ZERO)

    def __contains__(self, la) -> bool:
        return Partition(la) in self.index


@dataclass
class CanonicalVector:
    mu: Partition
    coeffs: dict[Partition, LaurentPoly]

    def __getitem__(self, la) -> LaurentPoly:
        return self.coeffs.get(Partition(la), ZERO)


@dataclass
class DecompositionMatrix:
    e: int
    core: Partition
    weight: int
    members: list[Partition]
    entries: list[list[LaurentPoly]]  # entries[row lambda][column mu]

    def entry(self, la, mu) -> LaurentPoly:
        i, j = self.members.index(Partition(la)), self.members.index(Partition(mu))
        return self.entries[i][j]


def sort_by_dominance(members: Iterable[Partition], e: int, r: int) -> list[Partition]:
    return sorted(members, key=lambda la: dominance_key(la, e, r), reverse=True)


class CanonicalEngine:
    """Block tables and canonical vectors for one modulus.

    Each engine owns its own straightener, so two engines never share
    intermediate results.
    """

    def __init__(self, e: int, straightener: Straightener | None = None):
        if e < 2:
            raise ValueError("e must be at least 2")
        self.e = e
        self.straightener = straightener if straightener is not None else Straightener(e)
        self._tables: dict[tuple[Partition, int], BlockTable] = {}

    def _bar_row(self, mu: Partition, r: int, members: set[Partition]) -> dict:
        col = bar_standard(mu, self.e, r, engine=self.straightener)
        stray = [la for la in col if la not in members]
        if stray:
            raise ArithmeticError(f"bar(|{mu}>) has support outside its block: {stray[:3]}")
        return col

    def block_table(self, core: Iterable[int], w: int) -> BlockTable:
        core = Partition(core)
        key = (core, w)
        tab = self._tables.get(key)
        if tab is not None:
            return tab
        blk = BlockId(self.e, core, w)  # validates that core is an e-core
        members = enumerate_block(blk)
        r = blk.size + self.e
        members = sort_by_dominance(members, self.e, r)
        memberset = set(members)
        bar = {}
        for mu in members:
            for la, c in self._bar_row(mu, r, memberset).items():
                bar[(la, mu)] = c
        tab = BlockTable(self.e, core, w, r, members, bar)
        self._tables[key] = tab
        return tab

    def table_for(self, mu: Iterable[int]) -> BlockTable:
        core, w = core_and_weight(mu, self.e)
        return self.block_table(core, w)

    def column(self, tab: BlockTable, mu: Partition) -> dict[Partition, LaurentPoly]:
        hit = tab._columns.get(mu)
        if hit is not None:
            return hit
        j = tab.index[mu]
        d: dict[Partition, LaurentPoly] = {mu: ONE}
        above = [(mu, ONE.bar())]
        for la in tab.members[j + 1:]:
            g = ZERO
            for xi, dbar in above:
                a = tab.bar_matrix.get((la, xi))
                if a is not None:
                    g = g + dbar * a
            if not g:
                continue
            if not is_bar_antisymmetric(g):
                raise ArithmeticError(
                    f"bar-invariance equation for d[{la},{mu}] (e={self.e}) is not antisymmetric: {g}"
                )
            val = g.positive_part()
            if val:
                d[la] = val
                above.append((la, val.bar()))
        tab._columns[mu] = d
        return d

    def canonical_vector(self, mu: Iterable[int]) -> CanonicalVector:
        mu = Partition(mu)
        tab = self.table_for(mu)
        return CanonicalVector(mu, dict(self.column(tab, mu)))

    def q_decomp(self, la: Iterable[int], mu: Iterable[int], interval: bool = False) -> LaurentPoly:
        """d_{la,mu}(q).

        By default the whole block table is built and cached.  With
        ``interval=True`` and no cached table, only partitions between la
        and mu are used, which is cheaper for a single query in a big block.
        """
        la, mu = Partition(la), Partition(mu)
        if sum(la) != sum(mu):
            return ZERO
        cw = core_and_weight(mu, self.e)
        if core_and_weight(la, self.e) != cw:
            return ZERO
        if la == mu:
            return ONE
        if not dominates(mu, la, self.e):
            return ZERO
        tab = self._tables.get(cw)
        if tab is None and interval:
            return self._interval_entry(la, mu, *cw)
        tab = tab or self.block_table(*cw)
        return self.column(tab, mu).get(la, ZERO)

    def _interval_entry(self, la, mu, core, w) -> LaurentPoly:
        # only xi with mu >= xi >= la enter the recursion for this entry
        blk = BlockId(self.e, core, w)
        r = blk.size + self.e
        interval = [xi for xi in enumerate_block(blk)
                    if dominates(mu, xi, self.e) and dominates(xi, la, self.e)]
        interval = sort_by_dominance(interval, self.e, r)
        members = set(enumerate_block(blk))
        bar = {}
        for xi in interval:
            for rho, c in self._bar_row(xi, r, members).items():
                bar[(rho, xi)] = c
        tab = BlockTable(self.e, core, w, r, interval, bar)
        return self.column(tab, mu).get(la, ZERO)

    def decomposition_matrix(self, core: Iterable[int], w: int) -> DecompositionMatrix:
        tab = self.block_table(core, w)
        cols = [self.column(tab, mu) for mu in tab.members]
        entries = [[cols[j].get(la, ZERO) for j in range(len(tab.members))] for la in tab.members]
        return DecompositionMatrix(self.e, tab.core, w, list(tab.members), entries)


@lru_cache(maxsize=None)
def engine(e: int) -> CanonicalEngine:
    """The shared engine for modulus ``e``."""
    return CanonicalEngine(e)


def block_bar_matrix(core: Iterable[int], w: int, e: int) -> BlockTable:
    return engine(e).block_table(core, w)


def canonical_vector(mu: Iterable[int], e: int) -> CanonicalVector:
    return engine(e).canonical_vector(mu)


def q_decomp(la: Iterable[int], mu: Iterable[int], e: int, interval: bool = False) -> LaurentPoly:
    return engine(e).q_decomp(la, mu, interval)


def decomposition_matrix(core: Iterable[int], w: int, e: int) -> DecompositionMatrix:
    return engine(e).decomposition_matrix(core, w)
