from collections import defaultdict

import pytest

from fockcb.abacus import core_and_weight, e_weight
from fockcb.blocks import (
    BlockId,
    ScopesError,
    available_moves,
    d_set,
    e_cores,
    enumerate_block,
    enumerate_block_brute,
    representative_blocks,
    scopes_adjacent,
    scopes_phi,
    scopes_phi_inverse,
    scopes_reduce,
)
from fockcb.canonical import CanonicalEngine
from fockcb.laurent import ONE, ZERO, q
from fockcb.partitions import nodes_by_residue, partitions_of
from fockcb.wedge import apply_f_divided


def test_block_id_validation():
    assert BlockId(3, (1,), 2).size == 7
    with pytest.raises(ValueError):
        BlockId(3, (4,), 1)
    with pytest.raises(ValueError):
        BlockId(3, (), -1)


def test_enumerate_block_examples():
    assert sorted(enumerate_block(e=3, core=(1,), weight=1)) == sorted([(4,), (2, 2), (1, 1, 1, 1)])
    assert enumerate_block(e=4, core=(2,), weight=0) == [(2,)]
    assert sorted(enumerate_block(e=2, core=(), weight=1)) == [(1, 1), (2,)]


def test_enumerate_block_matches_filtering_all_partitions():
    for e in (2, 3, 4, 5):
        by_block = defaultdict(set)
        for n in range(31):
            for la in partitions_of(n):
                by_block[core_and_weight(la, e)].add(la)
        for (core, w), members in by_block.items():
            got = enumerate_block(BlockId(e, core, w))
            assert len(got) == len(set(got))
            assert set(got) == members


def test_brute_enumeration_agrees():
    blk = BlockId(3, (2,), 3)
    assert sorted(enumerate_block(blk)) == sorted(enumerate_block_brute(blk))


def test_scopes_phi_examples():
    assert scopes_phi((), 2, 0) == (1,)
    assert scopes_phi((1,), 2, 1) == (2, 1)
    assert scopes_phi((2, 1), 3, 0) == (2, 2)
    # (2,1) has the removable 2-node (2,1), so no move at residue 2 applies
    with pytest.raises(ScopesError):
        scopes_phi((2, 1), 3, 2)
    assert scopes_phi_inverse((2, 1), 2, 1) == (1,)
    assert scopes_phi_inverse((1,), 2, 0) == ()
    with pytest.raises(ScopesError):
        scopes_phi_inverse((1,), 2, 1)


def test_scopes_adjacent_example():
    target, phi = scopes_adjacent(BlockId(2, (), 1), 0)
    assert target == BlockId(2, (1,), 1)
    assert phi == {(2,): (3,), (1, 1): (1, 1, 1)}
    target, phi = scopes_adjacent(BlockId(3, (1,), 0), 1)
    assert phi == {(1,): target.core}
    with pytest.raises(ScopesError):
        scopes_adjacent(BlockId(2, (), 2), 0)  # one addable 0-node but weight 2


def _adjacent_pairs(e_values, core_max, w_max):
    for e in e_values:
        for core in e_cores(e, core_max):
            for w in range(w_max + 1):
                blk = BlockId(e, core, w)
                for mv in available_moves(blk):
                    yield blk, mv


def test_scopes_moves_are_weight_preserving_bijections():
    eng = {}
    for blk, mv in _adjacent_pairs((2, 3, 4), 4, 2):
        e = blk.e
        target, phi = scopes_adjacent(blk, mv.k)
        assert sorted(phi.values()) == sorted(enumerate_block(target))
        for la, img in phi.items():
            assert len(nodes_by_residue(la, e, mv.k, "addable")) == mv.a
            assert not nodes_by_residue(la, e, mv.k, "removable")
            assert e_weight(img, e) == blk.weight
            assert apply_f_divided({la: ONE}, e, mv.k, mv.a) == {img: ONE}
            assert scopes_phi_inverse(img, e, mv.k) == la
        E = eng.setdefault(e, CanonicalEngine(e))
        for la in phi:
            for mu in phi:
                assert E.q_decomp(la, mu) == E.q_decomp(phi[la], phi[mu])


def _terminal_cores(blk, seen=None):
    """Cores reachable by every maximal sequence of inverse moves, any order."""
    moves = available_moves(blk, inverse=True)
    if not moves:
        return {blk.core}
    out = set()
    for mv in moves:
        nxt = BlockId(blk.e, scopes_phi_inverse(blk.core, blk.e, mv.k), blk.weight)
        out |= _terminal_cores(nxt)
    return out


def test_scopes_reduction_is_confluent_and_idempotent():
    for e in (2, 3, 4):
        for core in e_cores(e, 10):
            for w in range(4):
                blk = BlockId(e, core, w)
                red = scopes_reduce(blk)
                assert _terminal_cores(blk) == {red.core}
                assert scopes_reduce(red) == red
                assert sum(red.core) <= sum(core)
                tr = scopes_reduce(blk, trace=True)
                assert tr.result == red and "smallest k" in tr.strategy


def test_scopes_reduce_examples():
    assert scopes_reduce(BlockId(2, (1,), 1)).core == ()
    assert sum(scopes_reduce(BlockId(3, (1,), 1)).core) <= 1
    assert scopes_reduce(BlockId(2, (1,), 2)).core == (1,)


def test_d_set_small_weights():
    assert d_set(3, 1, 6).values == {ZERO, ONE, q(1)}
    assert d_set(4, 0, 5).values == {ZERO, ONE}
    res = d_set(2, 2, 6)
    assert res.values == {ZERO, ONE, q(1), q(2)}
    assert all(scopes_reduce(b) == b for b in res.representatives)


def test_d_set_does_not_depend_on_the_representative():
    e, w = 3, 2
    for rep in representative_blocks(e, w, 6):
        want = set(v for row in CanonicalEngine(e).decomposition_matrix(rep.core, w).entries for v in row)
        for mv in available_moves(rep):
            other, _ = scopes_adjacent(rep, mv.k)
            got = set(v for row in CanonicalEngine(e).decomposition_matrix(other.core, w).entries for v in row)
            assert got == want
