"""Finite wedges modulo the level-1 commutation relations.

Wedge vectors are plain dicts mapping a strictly decreasing letter tuple to
a nonzero :class:`LaurentPoly`.  A :class:`Straightener` owns the memo
tables for one modulus ``e``; the module-level helpers share one
straightener per ``e``.
"""

from __future__ import annotations

import logging
import threading
from functools import lru_cache
from typing import Iterable, Mapping

from .abacus import beta_set
from .laurent import ONE, LaurentPoly, exact_div, quantum_factorial
from .partitions import Partition, nodes_by_residue, removable_nodes

log = logging.getLogger(__name__)

Word = tuple[int, ...]
WedgeVector = dict[Word, LaurentPoly]

_MINUS_QINV = LaurentPoly.monomial(-1, -1)
_MINUS_ONE = LaurentPoly(-1)


def _accumulate(acc: dict, key, coeff: LaurentPoly) -> None:
    old = acc.get(key)
    if old is None:
        acc[key] = coeff
    else:
        new = old + coeff
        if new:
            acc[key] = new
        else:
            del acc[key]


class Straightener:
    """Normal forms of wedges for a fixed modulus, with memoisation.

    ``max_cache`` bounds the insertion memo; when exceeded the memo is
    cleared, which only costs time.
    """

    def __init__(self, e: int, max_cache: int = 4_000_000):
        if e < 1:
            raise ValueError("e must be positive")
        self.e = e
        self.max_cache = max_cache
        self._pairs: dict[tuple[int, int], list[tuple[int, int, LaurentPoly]]] = {}
        self._memo: dict[tuple[int, Word], WedgeVector] = {}
        self._lock = threading.Lock()

    def clear(self) -> None:
        with self._lock:
            self._pairs.clear()
            self._memo.clear()

    # -- two letters ------------------------------------------------------

    def pair(self, l: int, m: int) -> list[tuple[int, int, LaurentPoly]]:
        """``u_l ^ u_m`` (l <= m) as ordered terms ``(x, y, coeff)`` with x > y."""
        key = (l, m)
        hit = self._pairs.get(key)
        if hit is not None:
            return hit
        e = self.e
        if l > m:
            raise ValueError("pair expects l <= m")
        if l == m:
            out: list = []
        elif (m - l) % e == 0:
            out = [(m, l, _MINUS_ONE)]
        else:
            i = (m - l) % e
            out = [(m, l, _MINUS_QINV)]
            # shifts i, e, e+i, 2e, 2e+i, ... with coefficients (-q^-1)^j (q^-2 - 1)
            j = 0
            while True:
                s = (j // 2) * e + i if j % 2 == 0 else ((j + 1) // 2) * e
                x, y = m - s, l + s
                if not x > y:
                    break
                sign = -1 if j % 2 else 1
                out.append((x, y, LaurentPoly({-j - 2: sign, -j: -sign})))
                j += 1
        self._pairs[key] = out
        return out

    # -- insertion of one letter in front of an ordered word ---------------

    def insert(self, a: int, tail: Word) -> WedgeVector:
        """Normal form of ``u_a ^ tail`` where ``tail`` is already ordered."""
        if not tail or a > tail[0]:
            return {(a,) + tail: ONE}
        if a == tail[0]:
            return {}
        key = (a, tail)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        out: WedgeVector = {}
        rest = tail[1:]
        for x, y, c in self.pair(a, tail[0]):
            for w, c2 in self.insert(y, rest).items():
                cc = c * c2
                for w2, c3 in self.insert(x, w).items():
                    _accumulate(out, w2, cc * c3)
        if len(self._memo) >= self.max_cache:
            log.debug("straightening memo for e=%d reset at %d entries", self.e, len(self._memo))
            self._memo.clear()
        self._memo[key] = out
        return out

    def straighten(self, word: Iterable[int]) -> WedgeVector:
        word = tuple(word)
        if any(x < 0 for x in word):
            raise ValueError("wedge letters must be non-negative")
        vec: WedgeVector = {(): ONE}
        for a in reversed(word):
            nxt: WedgeVector = {}
            for w, c in vec.items():
                for w2, c2 in self.insert(a, w).items():
                    _accumulate(nxt, w2, c * c2)
            vec = nxt
            if not vec:
                break
        return vec

    def straighten_vector(self, vec: Mapping[Word, LaurentPoly]) -> WedgeVector:
        out: WedgeVector = {}
        for w, c in vec.items():
            for w2, c2 in self.straighten(w).items():
                _accumulate(out, w2, c * c2)
        return out


@lru_cache(maxsize=None)
def straightener(e: int) -> Straightener:
    """The shared straightener for modulus ``e``."""
    return Straightener(e)


def straighten_pair(l: int, m: int, e: int) -> WedgeVector:
    return {(x, y): c for x, y, c in straightener(e).pair(l, m)}


def straighten(word: Iterable[int], e: int) -> WedgeVector:
    return straightener(e).straighten(word)


def straighten_by_rewriting(word: Iterable[int], e: int) -> WedgeVector:
    """Reference normal form: rewrite the leftmost non-descent until none remain.

    Deliberately unmemoised and independent of :meth:`Straightener.insert`.
    """
    pending: dict[Word, LaurentPoly] = {tuple(word): ONE}
    done: WedgeVector = {}
    st = Straightener(e)
    while pending:
        w, c = pending.popitem()
        pos = next((i for i in range(len(w) - 1) if w[i] <= w[i + 1]), None)
        if pos is None:
            _accumulate(done, w, c)
            continue
        for x, y, c2 in st.pair(w[pos], w[pos + 1]):
            _accumulate(pending, w[:pos] + (x, y) + w[pos + 2:], c * c2)
    return done


# -- the bar involution on standard basis vectors --------------------------


def word_to_partition(w: Word) -> Partition:
    r = len(w)
    return Partition(b - r + i for i, b in enumerate(w, start=1))


def partition_to_word(la: Iterable[int], r: int) -> Word:
    return beta_set(la, r).entries


def bar_standard(
    mu: Iterable[int], e: int, r: int | None = None, engine: Straightener | None = None
) -> dict[Partition, LaurentPoly]:
    """Coefficients a_{la,mu}(q) of bar(|mu>), normalised so a_{mu,mu} = 1."""
    mu = Partition(mu)
    if r is None:
        r = sum(mu) + e
    if r < sum(mu) or r < len(mu):
        raise ValueError(f"r={r} is below the stability bound |mu|={sum(mu)}")
    st = engine if engine is not None else straightener(e)
    word = partition_to_word(mu, r)
    vec = st.straighten(reversed(word))
    lead = vec.get(word)
    if lead is None:
        raise ArithmeticError(f"reversed wedge of {mu} has no |mu> term; straightening is broken")
    if not lead.is_monomial():
        log.warning("b_mu,mu = %s for mu=%s e=%d is not a signed monomial", lead, mu, e)
    return {word_to_partition(w): exact_div(c, lead) for w, c in vec.items()}


# -- the f_k action --------------------------------------------------------


def apply_f(v: Mapping[Partition, LaurentPoly], e: int, k: int) -> dict[Partition, LaurentPoly]:
    """f_k on a vector given as ``{partition: coefficient}``."""
    if not 0 <= k < e:
        raise ValueError(f"k={k} out of range for e={e}")
    out: dict[Partition, LaurentPoly] = {}
    for la, c in v.items():
        la = Partition(la)
        addable = nodes_by_residue(la, e, k, "addable")
        removable = [n for n in removable_nodes(la) if (n[1] - n[0]) % e == k]
        for node in addable:
            above_add = sum(1 for n in addable if n.row < node.row)
            above_rem = sum(1 for n in removable if n[0] < node.row)
            rows = list(la) + [0]
            rows[node.row - 1] += 1
            _accumulate(out, Partition(rows), c.shift(above_add - above_rem))
    return out


def apply_f_divided(
    v: Mapping[Partition, LaurentPoly], e: int, k: int, a: int
) -> dict[Partition, LaurentPoly]:
    """The divided power f_k^a / [a]!."""
    if a < 1:
        raise ValueError("a must be at least 1")
    out = dict(v)
    for _ in range(a):
        out = apply_f(out, e, k)
    fact = quantum_factorial(a)
    return {la: exact_div(c, fact) for la, c in out.items()}
