"""Blocks, Scopes moves, and fixed-weight value sets."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .abacus import beta_set, e_core, e_weight, partition_from_beta_set, BetaSet
from .laurent import LaurentPoly, ZERO
from .partitions import (
    Partition,
    add_nodes,
    nodes_by_residue,
    partitions_of,
    remove_nodes,
)

log = logging.getLogger(__name__)


class ScopesError(ValueError):
    pass


@dataclass(frozen=True)
class BlockId:
    e: int
    core: Partition
    weight: int

    def __post_init__(self):
        object.__setattr__(self, "core", Partition(self.core))
        if self.e < 2:
            raise ValueError("e must be at least 2")
        if self.weight < 0:
            raise ValueError("weight must be non-negative")
        if e_weight(self.core, self.e) != 0:
            raise ValueError(f"{self.core} is not a core for e={self.e}")

    @property
    def size(self) -> int:
        return sum(self.core) + self.e * self.weight

    def __str__(self) -> str:
        core = ",".join(map(str, self.core)) or "0"
        return f"B(e={self.e}, core={core}, w={self.weight})"


@dataclass(frozen=True)
class ScopesMove:
    k: int
    a: int


def _runner_configs(levels: int, w: int) -> Iterable[tuple[int, ...]]:
    """Partitions of w with at most ``levels`` parts, as displacement tuples."""
    for p in partitions_of(w):
        if len(p) <= levels:
            yield tuple(p)


def enumerate_block(block: BlockId | None = None, *, e: int | None = None,
                    core: Iterable[int] | None = None, weight: int | None = None) -> list[Partition]:
    """All partitions with the given e-core and e-weight (unsorted order is deterministic)."""
    if block is None:
        block = BlockId(e, Partition(core or ()), weight)
    e, core, w = block.e, block.core, block.weight
    r = len(core) + e * w
    counts = [0] * e
    for b in beta_set(core, r):
        counts[b % e] += 1
    out = []
    for split in _compositions(w, e):
        per_runner = [list(_runner_configs(counts[j], split[j])) for j in range(e)]
        for choice in product(*per_runner):
            positions = []
            for j, disp in enumerate(choice):
                c = counts[j]
                for lvl in range(c):
                    # the t-th bead from the bottom moves down by disp[t]
                    t = c - 1 - lvl
                    shift = disp[t] if t < len(disp) else 0
                    positions.append(j + (lvl + shift) * e)
            out.append(partition_from_beta_set(BetaSet.from_positions(positions)))
    return out


def _compositions(w: int, parts: int) -> Iterable[tuple[int, ...]]:
    if parts == 1:
        yield (w,)
        return
    for first in range(w + 1):
        for rest in _compositions(w - first, parts - 1):
            yield (first,) + rest


def enumerate_block_brute(block: BlockId) -> list[Partition]:
    """Filter every partition of the block size by core and weight."""
    return [
        la for la in partitions_of(block.size)
        if e_core(la, block.e) == block.core and e_weight(la, block.e) == block.weight
    ]


def e_cores(e: int, max_size: int) -> list[Partition]:
    return [
        la for n in range(max_size + 1) for la in partitions_of(n) if e_weight(la, e) == 0
    ]


# -- Scopes moves ------------------------------------------------------------


def scopes_phi(la: Iterable[int], e: int, k: int) -> Partition:
    """Add every addable node of residue k; no removable k-nodes may exist."""
    la = Partition(la)
    if nodes_by_residue(la, e, k, "removable"):
        raise ScopesError(f"{la} has removable nodes of residue {k} (e={e})")
    return add_nodes(la, nodes_by_residue(la, e, k, "addable"))


def scopes_phi_inverse(la: Iterable[int], e: int, k: int) -> Partition:
    la = Partition(la)
    if nodes_by_residue(la, e, k, "addable"):
        raise ScopesError(f"{la} has addable nodes of residue {k} (e={e})")
    return remove_nodes(la, nodes_by_residue(la, e, k, "removable"))


def scopes_adjacent(block: BlockId, k: int) -> tuple[BlockId, dict[Partition, Partition]]:
    """The block reached by a Scopes move at residue k, and the member bijection."""
    a = len(nodes_by_residue(block.core, block.e, k, "addable"))
    if a < block.weight or a == 0:
        raise ScopesError(
            f"{block} has {a} addable {k}-nodes on its core; need at least max(1, w={block.weight})"
        )
    target = BlockId(block.e, scopes_phi(block.core, block.e, k), block.weight)
    phi = {}
    for la in enumerate_block(block):
        if len(nodes_by_residue(la, block.e, k, "addable")) != a:
            raise ScopesError(f"{la} does not have exactly {a} addable {k}-nodes")
        img = scopes_phi(la, block.e, k)
        phi[la] = img
    return target, phi


def available_moves(block: BlockId, inverse: bool = False) -> list[ScopesMove]:
    kind = "removable" if inverse else "addable"
    moves = []
    for k in range(block.e):
        a = len(nodes_by_residue(block.core, block.e, k, kind))
        if a and a >= block.weight:
            moves.append(ScopesMove(k, a))
    return moves


@dataclass
class ScopesTrace:
    start: BlockId
    steps: list[tuple[ScopesMove, BlockId]] = field(default_factory=list)
    strategy: str = "remove all removable k-nodes of the core while their count is >= w; smallest k first"

    @property
    def result(self) -> BlockId:
        return self.steps[-1][1] if self.steps else self.start


def scopes_reduce(block: BlockId, trace: bool = False):
    """Apply inverse Scopes moves (smallest residue first) until none applies."""
    tr = ScopesTrace(block)
    cur = block
    while True:
        moves = available_moves(cur, inverse=True)
        if not moves:
            break
        mv = moves[0]
        nxt = BlockId(cur.e, scopes_phi_inverse(cur.core, cur.e, mv.k), cur.weight)
        tr.steps.append((mv, nxt))
        cur = nxt
    return tr if trace else cur


# -- value sets ----------------------------------------------------------------


@dataclass
class DSetResult:
    e: int
    weight: int
    max_core_size: int
    representatives: list[BlockId]
    values: set[LaurentPoly]
    strategy: str = ScopesTrace.strategy


def representative_blocks(e: int, w: int, max_core_size: int, max_classes: int | None = None) -> list[BlockId]:
    reps: dict[Partition, BlockId] = {}
    for core in e_cores(e, max_core_size):
        rep = scopes_reduce(BlockId(e, core, w))
        reps.setdefault(rep.core, rep)
        if max_classes is not None and len(reps) >= max_classes:
            break
    return sorted(reps.values(), key=lambda b: (sum(b.core), tuple(b.core)))


def d_set(e: int, w: int, max_core_size: int, max_classes: int | None = None,
          engine=None) -> DSetResult:
    """Distinct q-decomposition numbers over one block per Scopes class found."""
    from .canonical import CanonicalEngine

    eng = engine if engine is not None else CanonicalEngine(e)
    reps = representative_blocks(e, w, max_core_size, max_classes)
    values: set[LaurentPoly] = {ZERO}
    for blk in reps:
        mat = eng.decomposition_matrix(blk.core, blk.weight)
        for row in mat.entries:
            values.update(row)
        log.info("d_set e=%d w=%d: %s -> %d values so far", e, w, blk, len(values))
    return DSetResult(e, w, max_core_size, reps, values)
