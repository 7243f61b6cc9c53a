import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import partitions, moduli

from fockcb.abacus import (
    AbacusError,
    BetaSet,
    IntMultiset,
    add_empty_runner,
    beta_set,
    bruhat_geq,
    core_and_weight,
    dominates,
    e_core,
    e_weight,
    extended_beta_set,
    is_k_empty,
    n_rk,
    partition_from_beta_set,
    phi_d,
    remove_runner,
    runner_params,
    ux,
    ux_alt,
    weight_multiset,
)
from fockcb.blocks import BlockId, e_cores, enumerate_block
from fockcb.partitions import conjugate

LAM = (7, 4, 2, 1, 1)
MU = (11, 2, 1, 1)
BIG = (14, 11, 9, 5, 4, 1, 1, 1, 1, 1)


@pytest.mark.parametrize("la, r, expected", [
    (BIG, 14, (27, 23, 20, 15, 13, 9, 8, 7, 6, 5, 3, 2, 1, 0)),
    ((), 3, (2, 1, 0)),
    (LAM, 9, (15, 11, 8, 6, 5, 3, 2, 1, 0)),
])
def test_beta_set_examples(la, r, expected):
    assert beta_set(la, r).entries == expected


def test_beta_set_needs_enough_beads():
    with pytest.raises(AbacusError):
        beta_set((2, 1, 1), 2)
    with pytest.raises(ValueError):
        BetaSet(3, (2, 2, 0))


@pytest.mark.parametrize("positions, expected", [
    ({2, 1, 0}, ()),
    ({11, 8, 6, 4, 2, 1, 0}, (5, 3, 2, 1)),
    ({4, 2, 1, 0}, (1,)),
])
def test_partition_from_beta_set_examples(positions, expected):
    assert partition_from_beta_set(positions) == expected


@given(partitions(), st.integers(0, 5))
def test_beta_round_trip_and_shift(la, extra):
    r = len(la) + extra
    B = beta_set(la, r)
    assert partition_from_beta_set(B) == la
    assert set(beta_set(la, r + 1)) == {b + 1 for b in B} | {0}
    assert BetaSet.from_json(B.to_json()) == B


@pytest.mark.parametrize("la, e, core, w", [
    ((3, 3, 3), 2, (1,), 4),
    ((4,), 3, (1,), 1),
    ((), 5, (), 0),
])
def test_core_and_weight_examples(la, e, core, w):
    assert core_and_weight(la, e) == (core, w)


@given(partitions(), moduli)
def test_core_agrees_with_hook_removal(la, e):
    core, w = core_and_weight(la, e)
    assert core == oracles.core_by_hooks(la, e)
    assert w == oracles.weight_by_hooks(la, e)
    assert sum(la) == sum(core) + e * w
    assert e_core(core, e) == core and e_weight(core, e) == 0
    assert e_core(conjugate(la), e) == conjugate(core)


def test_k_empty_examples():
    assert is_k_empty(BIG, 4, 0, 14) and runner_params(BIG, 4, 0, 14)[2:] == (2, 2)
    assert is_k_empty(BIG, 4, 3, 14) and runner_params(BIG, 4, 3, 14)[2:] == (1, 4)
    assert not is_k_empty((4,), 3, 0)


@given(partitions(), moduli, st.integers(0, 4), st.data())
def test_k_empty_does_not_depend_on_r(la, e, extra, data):
    k = data.draw(st.integers(0, e - 1))
    assert is_k_empty(la, e, k) == is_k_empty(la, e, k, len(la) + extra)


def test_phi_d_examples():
    assert phi_d(15, 4, 2) == 11
    assert phi_d(0, 4, 2) == 0
    assert phi_d(1, 4, 2) == 1
    with pytest.raises(AbacusError):
        phi_d(6, 4, 2)


def test_remove_runner_examples():
    assert remove_runner(LAM, 4, 1) == (5, 3, 2, 1)
    assert remove_runner(MU, 4, 1) == (8, 2, 1)
    assert remove_runner((), 3, 0) == ()
    with pytest.raises(AbacusError):
        remove_runner((4,), 3, 0)
    with pytest.raises(AbacusError):
        remove_runner((1,), 2, 0)


@given(partitions(), st.integers(3, 6), st.integers(0, 4), st.data())
def test_remove_runner_is_r_independent(la, e, extra, data):
    k = data.draw(st.integers(0, e - 1))
    if is_k_empty(la, e, k):
        assert remove_runner(la, e, k) == remove_runner(la, e, k, len(la) + extra)


@given(partitions(), st.integers(2, 5), st.integers(0, 3))
def test_add_empty_runner_inverts_removal(la, e, extra):
    r = len(la) + extra
    big = add_empty_runner(la, e, r)
    # the new runner 0 has no beads; in the (e+1)-display with r beads it is runner (r+k) mod (e+1)
    k = (-r) % (e + 1)
    assert is_k_empty(big, e + 1, k, r)
    assert remove_runner(big, e + 1, k, r) == la


def test_extended_beta_set_examples():
    assert extended_beta_set(LAM, 4, 9) == IntMultiset([0, 0, 1, 1, 2, 2, 3, 3, 3, 4, 5, 6, 7, 7, 8, 11, 11, 15])
    assert extended_beta_set(MU, 4, 9) == IntMultiset([0, 0, 1, 1, 2, 2, 3, 3, 3, 4, 5, 6, 7, 7, 9, 11, 15, 19])
    assert extended_beta_set((3, 3, 3), 2, 5) == IntMultiset([0, 0, 1, 1, 1, 2, 3, 3, 4, 5, 5, 6, 7])


def test_weight_multiset_examples():
    assert weight_multiset((3, 3, 3), 2, 5) == IntMultiset([4, 5, 6, 7])
    assert weight_multiset((2, 1), 2) == IntMultiset()
    assert weight_multiset((4,), 3, 4) == IntMultiset([7])


@given(partitions(), moduli, st.integers(0, 3))
def test_extended_set_splits_as_core_plus_weight(la, e, extra):
    r = len(la) + extra
    core = e_core(la, e)
    assert extended_beta_set(la, e, r) == extended_beta_set(core, e, r) + weight_multiset(la, e, r)
    assert len(weight_multiset(la, e, r)) == e_weight(la, e)


def test_multiset_json_round_trip():
    m = IntMultiset([3, 1, 1, 0])
    assert IntMultiset.from_json(m.to_json()) == m
    assert m.multiplicity(1) == 2 and m.count_above(0) == 3


def test_bruhat_examples():
    assert bruhat_geq([3, 1], [2, 1])
    assert not bruhat_geq([2, 2], [3, 1])
    assert bruhat_geq([5], [5])
    assert not bruhat_geq([5], [5, 0])


def test_dominance_examples():
    assert not dominates((9, 5, 5, 2, 2, 2, 2), (7, 7, 3, 3, 3, 1, 1, 1, 1), 9)
    assert dominates(LAM, LAM, 4)
    assert dominates((4,), (2, 2), 3)
    assert not dominates((2, 2), (4,), 3)
    assert not dominates((3,), (2,), 3)


def _small_blocks(e_values=(2, 3, 4), core_max=3, w_max=3):
    for e in e_values:
        for core in e_cores(e, core_max):
            for w in range(w_max + 1):
                yield e, enumerate_block(BlockId(e, core, w))


def test_dominance_is_partial_order_and_r_independent():
    for e, members in _small_blocks(w_max=2):
        for a in members:
            for b in members:
                ab = dominates(a, b, e)
                assert ab == dominates(a, b, e, max(len(a), len(b)) + 1)
                if ab and a != b:
                    assert not dominates(b, a, e)
                if ab:
                    # usual dominance is implied by the coarse one
                    assert all(sum(a[:i]) >= sum(b[:i]) for i in range(1, len(b) + 1))
                    assert dominates(conjugate(b), conjugate(a), e)
                    r = max(len(a), len(b))
                    assert bruhat_geq(weight_multiset(a, e, r), weight_multiset(b, e, r))


@pytest.mark.parametrize("la, e, k, expected", [
    (LAM, 4, 1, 3),
    (MU, 4, 1, 3),
    ((9, 5, 5, 2, 2, 2, 2), 9, 4, 1),
    ((7, 7, 3, 3, 3, 1, 1, 1, 1), 9, 4, 2),
    ((), 3, 0, 0),
])
def test_ux_examples(la, e, k, expected):
    assert ux(la, e, k) == expected == ux_alt(la, e, k)


def test_ux_requires_k_empty():
    with pytest.raises(AbacusError):
        ux((4,), 3, 0)


@pytest.mark.parametrize("la, e, k, r, expected", [(LAM, 4, 1, 9, 8), (MU, 4, 1, 9, 8), ((), 3, 0, 3, 2)])
def test_n_rk_examples(la, e, k, r, expected):
    assert n_rk(la, e, k, r) == expected


@given(partitions(), moduli, st.integers(0, 4), st.data())
def test_ux_formulas_agree_and_ignore_r(la, e, extra, data):
    k = data.draw(st.integers(0, e - 1))
    if not is_k_empty(la, e, k):
        return
    r = len(la) + extra
    assert ux(la, e, k) == ux(la, e, k, r) == ux_alt(la, e, k, r)


@given(partitions(), moduli, st.data())
def test_conjugate_emptiness_and_ux_identity(la, e, data):
    k = data.draw(st.integers(0, e - 1))
    lc = conjugate(la)
    assert is_k_empty(la, e, k) == is_k_empty(lc, e, e - 1 - k)
    if is_k_empty(la, e, k):
        core, w = core_and_weight(la, e)
        lhs = ux(la, e, k) + ux(lc, e, e - 1 - k)
        assert lhs == ux(core, e, k) + ux(conjugate(core), e, e - 1 - k) + w


@given(partitions(), moduli, st.data())
def test_ux_plus_pair_count_identity(la, e, data):
    k = data.draw(st.integers(0, e - 1))
    if not is_k_empty(la, e, k):
        return
    core, w = core_and_weight(la, e)
    r = len(la) + e
    assert ux(la, e, k, r) + n_rk(la, e, k, r) == ux(core, e, k, r) + n_rk(core, e, k, r) + w


def test_runner_removal_is_a_dominance_preserving_bijection():
    for e, members in _small_blocks(e_values=(3, 4, 5), core_max=2, w_max=2):
        for k in range(e):
            empty = [la for la in members if is_k_empty(la, e, k)]
            if not empty:
                continue
            images = {la: remove_runner(la, e, k) for la in empty}
            assert len(set(images.values())) == len(empty)
            cw = {core_and_weight(x, e - 1) for x in images.values()}
            assert len(cw) == 1
            (core, w), = cw
            target = set(enumerate_block(BlockId(e - 1, core, w)))
            assert set(images.values()) <= target
            for a in empty:
                for b in empty:
                    assert dominates(a, b, e) == dominates(images[a], images[b], e - 1)
                    if dominates(a, b, e):
                        assert ux(a, e, k) >= ux(b, e, k)
