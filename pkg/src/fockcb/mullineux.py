"""The Mullineux map, e-rim stripping, and two independent oracles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .abacus import BetaSet, beta_set, e_weight, partition_from_beta_set
from .laurent import LaurentPoly
from .partitions import (
    EMPTY,
    Partition,
    conjugate,
    is_e_regular,
    is_e_restricted,
    nodes_by_residue,
    partitions_of,
)


class MullineuxError(ValueError):
    pass


@dataclass(frozen=True)
class RimStrip:
    r: int
    pairs: tuple[tuple[int, int], ...]
    rim_length: int
    result: Partition


def _display_r(la: Partition, e: int) -> int:
    return len(la) + sum(la) + e


# -- rim strips ------------------------------------------------------------------


def strip_rim(mu: Iterable[int], e: int, r: int | None = None) -> RimStrip:
    """The e-rim strip of a nonempty e-regular partition, read off an abacus with r beads."""
    mu = Partition(mu)
    if not mu:
        raise MullineuxError("the empty partition has no e-rim")
    if not is_e_regular(mu, e):
        raise MullineuxError(f"{mu} is not {e}-regular")
    if r is None:
        r = _display_r(mu, e)
    B = beta_set(mu, r)
    occ = set(B)
    beta = B.entries[0]
    gamma = r - len(mu)
    pairs = []
    b = beta
    while True:
        c = b - e
        while c >= 0 and c in occ:
            c -= e
        if c < 0:
            # every position b-e, b-2e, ... holds a bead
            pairs.append((b, gamma))
            break
        pairs.append((b, c))
        nxt = next((p for p in range(c - 1, gamma - 1, -1) if p in occ), None)
        if nxt is None:
            break
        b = nxt
    new = (occ - {p for p, _ in pairs}) | {q for _, q in pairs}
    res = partition_from_beta_set(BetaSet.from_positions(new))
    return RimStrip(r, tuple(pairs), sum(p - q for p, q in pairs), res)


def strip_rim_conj(nu: Iterable[int], e: int, r: int | None = None) -> RimStrip:
    """The conjugate e-rim strip of a nonempty e-restricted partition."""
    nu = Partition(nu)
    if not nu:
        raise MullineuxError("the empty partition has no conjugate e-rim")
    if not is_e_restricted(nu, e):
        raise MullineuxError(f"{nu} is not {e}-restricted")
    if r is None:
        r = _display_r(nu, e)
    B = beta_set(nu, r)
    occ = set(B)
    delta = B.entries[0]
    eps = r - len(nu)
    pairs = []
    g = eps
    while True:
        f = g + e
        while f <= delta and f not in occ:
            f += e
        if f > delta:
            pairs.append((delta, g))
            break
        pairs.append((f, g))
        if all(p in occ for p in range(f + 1, delta + 1)):
            break
        g = next(p for p in range(f + 1, delta) if p not in occ)
    pairs.reverse()
    new = (occ - {p for p, _ in pairs}) | {q for _, q in pairs}
    res = partition_from_beta_set(BetaSet.from_positions(new))
    return RimStrip(r, tuple(pairs), sum(p - q for p, q in pairs), res)


def rim(mu: Iterable[int], e: int) -> int:
    return strip_rim(mu, e).rim_length


def rim_conj(nu: Iterable[int], e: int) -> int:
    return strip_rim_conj(nu, e).rim_length


def first_column_target(mu: Partition, e: int, rim_len: int) -> int:
    """The value l prescribed for the first part of m(mu)' (first column of m(mu))."""
    l = rim_len - len(mu)
    return l if rim_len % e == 0 else l + 1


# -- good nodes ----------------------------------------------------------------


def _signature(la: Partition, e: int, i: int):
    """Uncancelled i-nodes, top to bottom, after cancelling (addable above removable) pairs.

    Returns (addable, removable) lists of rows.
    """
    nodes = [(n.row, "A") for n in nodes_by_residue(la, e, i, "addable")]
    nodes += [(n.row, "R") for n in nodes_by_residue(la, e, i, "removable")]
    nodes.sort()
    stack: list[tuple[int, str]] = []
    for row, kind in nodes:
        if kind == "R" and stack and stack[-1][1] == "A":
            stack.pop()
        else:
            stack.append((row, kind))
    # surviving word reads R...R A...A from top to bottom
    return [r for r, k in stack if k == "A"], [r for r, k in stack if k == "R"]


def good_removable(la: Partition, e: int, i: int) -> int | None:
    """Row of the good removable i-node (the lowest uncancelled one), if any."""
    _, rem = _signature(la, e, i)
    return rem[-1] if rem else None


def good_addable(la: Partition, e: int, i: int) -> int | None:
    """Row of the good addable i-node (the highest uncancelled one), if any."""
    add, _ = _signature(la, e, i)
    return add[0] if add else None


def _bump(la: Partition, row: int, delta: int) -> Partition:
    rows = list(la) + [0]
    rows[row - 1] += delta
    return Partition(rows)


def good_path(mu: Iterable[int], e: int) -> list[int]:
    """Residues of a sequence of good nodes building mu up from the empty partition."""
    la = Partition(mu)
    path = []
    while la:
        for i in range(e):
            row = good_removable(la, e, i)
            if row is not None:
                path.append(i)
                la = _bump(la, row, -1)
                break
        else:
            raise MullineuxError(f"{Partition(mu)} has no good node (e={e}); is it {e}-regular?")
    path.reverse()
    return path


def _mullineux_by_crystal(mu: Partition, e: int) -> Partition:
    la = EMPTY
    for i in good_path(mu, e):
        row = good_addable(la, e, (-i) % e)
        if row is None:
            raise MullineuxError(f"no good addable {(-i) % e}-node on {la} (e={e})")
        la = _bump(la, row, +1)
    return la


# -- the map itself ---------------------------------------------------------------


def check_mull_characterization(mu: Iterable[int], rho: Iterable[int], e: int) -> bool:
    """Whether rho satisfies the three conditions pinning down m(mu)' (checked forwards)."""
    mu, rho = Partition(mu), Partition(rho)
    if not is_e_regular(mu, e):
        return False
    if not mu:
        return not rho
    if not rho or not is_e_restricted(rho, e):
        return False
    s = strip_rim(mu, e)
    if rho[0] != first_column_target(mu, e, s.rim_length):
        return False
    sc = strip_rim_conj(rho, e)
    if sc.rim_length != s.rim_length:
        return False
    return sc.result == mullineux_conjugate(s.result, e)


@lru_cache(maxsize=200_000)
def _mullineux(mu: Partition, e: int) -> Partition:
    m = _mullineux_by_crystal(mu, e)
    if not check_mull_characterization(mu, conjugate(m), e):
        raise MullineuxError(f"crystal image {m} of {mu} (e={e}) fails the rim-strip characterization")
    return m


def mullineux(mu: Iterable[int], e: int) -> Partition:
    """m(mu) for an e-regular partition mu."""
    mu = Partition(mu)
    if e < 2:
        raise ValueError("e must be at least 2")
    if not is_e_regular(mu, e):
        raise MullineuxError(f"{mu} is not {e}-regular")
    return _mullineux(mu, e)


def mullineux_conjugate(mu: Iterable[int], e: int) -> Partition:
    """m(mu)', which is e-restricted."""
    return conjugate(mullineux(mu, e))


# -- oracles ------------------------------------------------------------------------


@lru_cache(maxsize=None)
def mullineux_conjugate_by_search(mu: Partition, e: int) -> Partition:
    """m(mu)' found by searching all partitions of |mu| against the characterization.

    Uses only rim stripping and recursion, never the crystal.
    """
    mu = Partition(mu)
    if not is_e_regular(mu, e):
        raise MullineuxError(f"{mu} is not {e}-regular")
    if not mu:
        return EMPTY
    s = strip_rim(mu, e)
    l = first_column_target(mu, e, s.rim_length)
    target = mullineux_conjugate_by_search(s.result, e)
    n = sum(mu)
    hits = []
    if 1 <= l <= n:
        for rest in partitions_of(n - l, l):
            rho = Partition((l,) + tuple(rest))
            if not is_e_restricted(rho, e):
                continue
            sc = strip_rim_conj(rho, e)
            if sc.rim_length == s.rim_length and sc.result == target:
                hits.append(rho)
    if len(hits) != 1:
        raise MullineuxError(f"{len(hits)} partitions satisfy the characterization for {mu} (e={e})")
    return hits[0]


def welk_oracle(mu: Iterable[int], e: int, engine=None) -> Partition:
    """The unique la in mu's block with d_{la,mu}(q) = q^w."""
    from .canonical import engine as shared_engine

    mu = Partition(mu)
    if not is_e_regular(mu, e):
        raise MullineuxError(f"{mu} is not {e}-regular")
    eng = engine if engine is not None else shared_engine(e)
    w = e_weight(mu, e)
    top = LaurentPoly.monomial(w)
    hits = [la for la, c in eng.canonical_vector(mu).coeffs.items() if c == top]
    if len(hits) != 1:
        raise ArithmeticError(f"column {mu} (e={e}) has {len(hits)} entries equal to q^{w}")
    return hits[0]
