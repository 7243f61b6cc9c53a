"""Exhaustive checks of the main identities over declared ranges.

Each suite returns a :class:`SuiteReport`.  Work is split by block; when
``threads`` (or the ``FOCKCB_THREADS`` environment variable) is above 1 the
blocks are farmed out to a process pool and the results merged in block
order, so reports do not depend on scheduling.
"""

from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

from .abacus import (
    add_empty_runner,
    dominates,
    e_weight,
    is_k_empty,
    remove_runner,
    ux,
)
from .blocks import (
    BlockId,
    ScopesError,
    e_cores,
    enumerate_block,
    scopes_adjacent,
    scopes_reduce,
)
from .canonical import CanonicalEngine
from .laurent import ONE, ZERO, LaurentPoly
from .mullineux import (
    check_mull_characterization,
    mullineux,
    mullineux_conjugate,
    mullineux_conjugate_by_search,
    welk_oracle,
)
from .partitions import Partition, conjugate, is_e_regular, nodes_by_residue, partitions_of
from .wedge import Straightener, apply_f_divided, bar_standard

log = logging.getLogger(__name__)


@dataclass
class SuiteReport:
    name: str
    params: dict
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {status} ({self.cases} cases, {len(self.failures)} failures, {self.seconds:.1f}s)"

    def to_json(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def worker_count(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("FOCKCB_THREADS", "1") or 1)
    return max(1, threads)


def _run(name: str, params: dict, fn: Callable, items: Sequence, threads: int | None,
         sample: int | None = None, seed: int = 0) -> SuiteReport:
    """Apply ``fn`` to every item and merge (cases, failures) in item order.

    ``sample`` switches to the randomized smoke mode: only that many items,
    drawn with ``seed``, are checked (still in their original order).
    """
    t0 = time.perf_counter()
    if sample is not None and sample < len(items):
        keep = sorted(random.Random(seed).sample(range(len(items)), sample))
        items = [items[i] for i in keep]
        params = dict(params, sample=sample, seed=seed)
    rep = SuiteReport(name, params)
    n = worker_count(threads)
    if n > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(fn, items))
    else:
        results = [fn(it) for it in items]
    for cases, fails in results:
        rep.cases += cases
        rep.failures.extend(fails)
    rep.seconds = time.perf_counter() - t0
    log.info(rep.summary())
    return rep


# engines are per process and per tag, so the two sides of a comparison never share state
_ENGINES: dict[tuple[str, int], CanonicalEngine] = {}


def _engine(tag: str, e: int) -> CanonicalEngine:
    eng = _ENGINES.get((tag, e))
    if eng is None:
        eng = _ENGINES[(tag, e)] = CanonicalEngine(e)
    return eng


def reset_engines() -> None:
    _ENGINES.clear()


def blocks_in_range(e_values: Iterable[int], core_size_max: int, weight_max: int,
                    weight_min: int = 0) -> list[BlockId]:
    """Blocks ordered by size, then core, so earlier failures are the smaller ones."""
    out = []
    for e in e_values:
        for core in e_cores(e, core_size_max):
            for w in range(weight_min, weight_max + 1):
                out.append(BlockId(e, core, w))
    out.sort(key=lambda b: (b.size, b.e, tuple(b.core), b.weight))
    return out


def _fmt(la) -> str:
    return ",".join(map(str, la)) or "0"


# -- runner removal -------------------------------------------------------------


def _runner_removal_block(blk: BlockId):
    e = blk.e
    lhs, rhs = _engine("rr-lhs", e), _engine("rr-rhs", e - 1)
    members = enumerate_block(blk)
    r = max(len(la) for la in members)
    cases, fails = 0, []
    for k in range(e):
        empt = [la for la in members if is_k_empty(la, e, k)]
        if not empt:
            continue
        U = {la: ux(la, e, k, r) for la in empt}
        image = {la: remove_runner(la, e, k) for la in empt}
        for mu in empt:
            for la in empt:
                if U[la] != U[mu]:
                    continue
                cases += 1
                a = lhs.q_decomp(la, mu)
                b = rhs.q_decomp(image[la], image[mu])
                if a != b:
                    fails.append(
                        f"runner removal e={e} k={k}: d({_fmt(la)},{_fmt(mu)}) = {a} but "
                        f"d_{e-1}({_fmt(image[la])},{_fmt(image[mu])}) = {b}"
                    )
    return cases, fails


def verify_runner_removal(e_range=(3, 4, 5), weight_max: int = 3, core_size_max: int = 4,
                          threads: int | None = None,
                          sample: int | None = None, seed: int = 0) -> SuiteReport:
    if min(e_range) < 3:
        raise ValueError("runner removal needs e >= 3")
    blocks = blocks_in_range(e_range, core_size_max, weight_max)
    params = dict(e_range=list(e_range), weight_max=weight_max, core_size_max=core_size_max)
    return _run("runner-removal", params, _runner_removal_block, blocks, threads, sample, seed)


def _bar_removal_block(blk: BlockId):
    # the bar matrix entries themselves survive runner removal
    e = blk.e
    lhs, rhs = Straightener(e), Straightener(e - 1)
    members = enumerate_block(blk)
    r = max(len(la) for la in members)
    cases, fails = 0, []
    cols: dict = {}
    for k in range(e):
        empt = [la for la in members if is_k_empty(la, e, k)]
        U = {la: ux(la, e, k, r) for la in empt}
        image = {la: remove_runner(la, e, k) for la in empt}
        for mu in empt:
            A = cols.setdefault(mu, bar_standard(mu, e, engine=lhs))
            B = bar_standard(image[mu], e - 1, engine=rhs)
            for la in empt:
                if U[la] != U[mu]:
                    continue
                cases += 1
                a, b = A.get(la, ZERO), B.get(image[la], ZERO)
                if a != b:
                    fails.append(f"bar runner removal e={e} k={k}: a({_fmt(la)},{_fmt(mu)}) = {a} vs {b}")
    return cases, fails


def verify_bar_runner_removal(e_range=(3, 4, 5), weight_max: int = 2, core_size_max: int = 3,
                   threads: int | None = None,
                   sample: int | None = None, seed: int = 0) -> SuiteReport:
    blocks = blocks_in_range(e_range, core_size_max, weight_max)
    params = dict(e_range=list(e_range), weight_max=weight_max, core_size_max=core_size_max)
    return _run("bar-runner-removal", params, _bar_removal_block, blocks, threads, sample, seed)


# -- Mullineux ----------------------------------------------------------------------


def _mullineux_size(job):
    e, n = job
    cases, fails = 0, []
    for mu in partitions_of(n):
        if not is_e_regular(mu, e):
            continue
        try:
            m = mullineux(mu, e)
        except Exception as exc:  # reported, not raised
            fails.append(f"Mullineux e={e} mu={_fmt(mu)}: {exc}")
            continue
        mc = conjugate(m)
        if mullineux(m, e) != mu:
            fails.append(f"Mullineux involution e={e}: m(m({_fmt(mu)})) != mu")
        if not dominates(mu, mc, e):
            fails.append(f"Mullineux dominance e={e}: {_fmt(mu)} does not dominate {_fmt(mc)}")
        if not check_mull_characterization(mu, mc, e):
            fails.append(f"Mullineux characterization e={e}: fails for {_fmt(mu)}")
        r = max(len(mu), len(mc))
        for k in range(e):
            if not (is_k_empty(mu, e, k) and is_k_empty(mc, e, k)):
                continue
            cases += 1
            a, b = ux(mu, e, k, r), ux(mc, e, k, r)
            if a != b:
                fails.append(f"U_k under Mullineux e={e} k={k}: U({_fmt(mu)})={a}, U({_fmt(mc)})={b}")
            if e >= 3:
                lo, hi = remove_runner(mu, e, k), remove_runner(mc, e, k)
                if not is_e_regular(lo, e - 1):
                    fails.append(f"runner removal regularity e={e} k={k}: {_fmt(lo)} is {e-1}-singular")
                elif mullineux_conjugate(lo, e - 1) != hi:
                    fails.append(
                        f"Mullineux after runner removal e={e} k={k} mu={_fmt(mu)}: "
                        f"{_fmt(mullineux_conjugate(lo, e - 1))} != {_fmt(hi)}"
                    )
    return cases, fails


def verify_mullineux(e_range=(2, 3, 4), size_max: int = 20, threads: int | None = None,
                     sample: int | None = None, seed: int = 0) -> SuiteReport:
    jobs = [(e, n) for e in e_range for n in range(size_max + 1)]
    params = dict(e_range=list(e_range), size_max=size_max)
    return _run("mullineux", params, _mullineux_size, jobs, threads, sample, seed)


def _mull_oracle_block(blk: BlockId):
    e = blk.e
    eng = _engine("top", e)
    cases, fails = 0, []
    for mu in enumerate_block(blk):
        if not is_e_regular(mu, e):
            continue
        cases += 1
        a = mullineux_conjugate(mu, e)
        try:
            b = welk_oracle(mu, e, engine=eng)
        except ArithmeticError as exc:
            fails.append(f"top-degree oracle e={e} mu={_fmt(mu)}: {exc}")
            continue
        c = mullineux_conjugate_by_search(mu, e)
        if not a == b == c:
            fails.append(
                f"Mullineux oracles e={e} mu={_fmt(mu)}: crystal {_fmt(a)}, top-degree {_fmt(b)}, search {_fmt(c)}"
            )
    return cases, fails


def verify_mullineux_oracles(e_range=(2, 3, 4), weight_max: int = 2, core_size_max: int = 4,
                             threads: int | None = None,
                             sample: int | None = None, seed: int = 0) -> SuiteReport:
    blocks = blocks_in_range(e_range, core_size_max, weight_max)
    params = dict(e_range=list(e_range), weight_max=weight_max, core_size_max=core_size_max)
    return _run("mullineux-oracles", params, _mull_oracle_block, blocks, threads, sample, seed)


# -- identities inside one block ------------------------------------------------------


def _llt_symmetry_block(blk: BlockId):
    e, w = blk.e, blk.weight
    eng, eng_c = _engine("llt", e), _engine("llt-conj", e)
    members = enumerate_block(blk)
    qw = LaurentPoly.monomial(w)
    cases, fails = 0, []
    for mu in members:
        if not is_e_regular(mu, e):
            continue
        m = mullineux(mu, e)
        for la in members:
            cases += 1
            lhs = eng_c.q_decomp(conjugate(la), m)
            rhs = qw * eng.q_decomp(la, mu).bar()
            if lhs != rhs:
                fails.append(
                    f"LLT symmetry e={e}: d({_fmt(conjugate(la))},{_fmt(m)}) = {lhs}, "
                    f"q^{w} d({_fmt(la)},{_fmt(mu)})(q^-1) = {rhs}"
                )
    return cases, fails


def verify_lltthm(e_range=(3, 4, 5), weight_max: int = 3, core_size_max: int = 4,
                  threads: int | None = None,
                  sample: int | None = None, seed: int = 0) -> SuiteReport:
    blocks = blocks_in_range(e_range, core_size_max, weight_max)
    params = dict(e_range=list(e_range), weight_max=weight_max, core_size_max=core_size_max)
    return _run("llt-symmetry", params, _llt_symmetry_block, blocks, threads, sample, seed)


def _top_degree_block(blk: BlockId):
    e, w = blk.e, blk.weight
    eng = _engine("top-profile", e)
    mat = eng.decomposition_matrix(blk.core, w)
    qw = LaurentPoly.monomial(w)
    cases, fails = 0, []
    for j, mu in enumerate(mat.members):
        top = mullineux_conjugate(mu, e) if is_e_regular(mu, e) else None
        for i, la in enumerate(mat.members):
            d = mat.entries[i][j]
            cases += 1
            if la == top:
                if d != qw:
                    fails.append(f"top degree e={e}: d({_fmt(la)},{_fmt(mu)}) = {d}, expected q^{w}")
            elif d and d.degree() > w - 1:
                fails.append(f"degree bound e={e}: d({_fmt(la)},{_fmt(mu)}) = {d} has degree >= {w}")
    return cases, fails


def verify_top_degree(e_range=(3, 4, 5), weight_max: int = 3, core_size_max: int = 4,
                threads: int | None = None,
                sample: int | None = None, seed: int = 0) -> SuiteReport:
    blocks = blocks_in_range(e_range, core_size_max, weight_max)
    params = dict(e_range=list(e_range), weight_max=weight_max, core_size_max=core_size_max)
    return _run("top-degree", params, _top_degree_block, blocks, threads, sample, seed)


def _triangularity_block(blk: BlockId):
    e, w = blk.e, blk.weight
    eng = _engine("tri", e)
    tab = eng.block_table(blk.core, w)
    mat = eng.decomposition_matrix(blk.core, w)
    cases, fails = 0, []
    for (la, mu), a in tab.bar_matrix.items():
        if not dominates(mu, la, e):
            fails.append(f"bar support e={e}: a({_fmt(la)},{_fmt(mu)}) = {a} without dominance")
    for mu in mat.members:
        if tab.a(mu, mu) != ONE:
            fails.append(f"bar diagonal e={e}: a({_fmt(mu)},{_fmt(mu)}) = {tab.a(mu, mu)}")
    for j, mu in enumerate(mat.members):
        low = mullineux_conjugate(mu, e) if is_e_regular(mu, e) else None
        for i, la in enumerate(mat.members):
            d = mat.entries[i][j]
            cases += 1
            if la == mu:
                if d != ONE:
                    fails.append(f"unitriangularity e={e}: d({_fmt(mu)},{_fmt(mu)}) = {d}")
                continue
            if not d:
                continue
            if d.low_degree() < 1:
                fails.append(f"q-divisibility e={e}: d({_fmt(la)},{_fmt(mu)}) = {d}")
            if any(c < 0 for _, c in d.items()):
                log.warning("negative coefficient e=%d: d(%s,%s) = %s", e, _fmt(la), _fmt(mu), d)
            if not dominates(mu, la, e):
                fails.append(f"dominance support e={e}: d({_fmt(la)},{_fmt(mu)}) = {d} but mu does not dominate")
            if low is not None and not dominates(la, low, e):
                fails.append(f"lower support e={e}: d({_fmt(la)},{_fmt(mu)}) = {d} but la does not dominate {_fmt(low)}")
    return cases, fails


def verify_triangularity(e_range=(3, 4, 5), weight_max: int = 3, core_size_max: int = 4,
                         threads: int | None = None,
                         sample: int | None = None, seed: int = 0) -> SuiteReport:
    blocks = blocks_in_range(e_range, core_size_max, weight_max)
    params = dict(e_range=list(e_range), weight_max=weight_max, core_size_max=core_size_max)
    return _run("triangularity", params, _triangularity_block, blocks, threads, sample, seed)


def _bar_block(blk: BlockId):
    e, w = blk.e, blk.weight
    eng = _engine("bar", e)
    tab = eng.block_table(blk.core, w)
    members = tab.members
    cols: dict = {}
    for (la, xi), a in tab.bar_matrix.items():
        cols.setdefault(xi, {})[la] = a
    cases, fails = 0, []
    # A(q) A(q^-1) = I: sum over xi of a(la,xi) * bar(a(xi,mu))
    for mu in members:
        acc: dict = {}
        for xi, a in cols[mu].items():
            ab = a.bar()
            for la, a2 in cols[xi].items():
                acc[la] = acc.get(la, ZERO) + a2 * ab
        for la in members:
            cases += 1
            want = ONE if la == mu else ZERO
            if acc.get(la, ZERO) != want:
                fails.append(f"bar involutivity e={e}: entry ({_fmt(la)},{_fmt(mu)}) = {acc.get(la, ZERO)}")
    # canonical vectors are bar-invariant
    for mu in members:
        d = eng.column(tab, mu)
        acc = {}
        for xi, c in d.items():
            cb = c.bar()
            for la, a in cols[xi].items():
                acc[la] = acc.get(la, ZERO) + a * cb
        acc = {la: v for la, v in acc.items() if v}
        cases += 1
        if acc != d:
            fails.append(f"bar invariance e={e}: G({_fmt(mu)}) is not fixed")
    return cases, fails


def verify_bar_involution(e_range=(3, 4, 5), weight_max: int = 3, core_size_max: int = 4,
                          threads: int | None = None,
                          sample: int | None = None, seed: int = 0) -> SuiteReport:
    blocks = blocks_in_range(e_range, core_size_max, weight_max)
    params = dict(e_range=list(e_range), weight_max=weight_max, core_size_max=core_size_max)
    return _run("bar-involution", params, _bar_block, blocks, threads, sample, seed)


# -- Scopes ----------------------------------------------------------------------------


def _scopes_block(blk: BlockId):
    e, w = blk.e, blk.weight
    cases, fails = 0, []
    for k in range(e):
        a = len(nodes_by_residue(blk.core, e, k, "addable"))
        if a == 0 or a < w:
            continue
        try:
            target, phi = scopes_adjacent(blk, k)
        except ScopesError as exc:
            fails.append(f"Scopes hypothesis e={e} {blk} k={k}: {exc}")
            continue
        images = set(phi.values())
        tgt_members = set(enumerate_block(target))
        if images != tgt_members or len(images) != len(phi):
            fails.append(f"Scopes bijection e={e} {blk} k={k}: image is not the whole of {target}")
            continue
        if scopes_reduce(blk) != scopes_reduce(target):
            fails.append(f"Scopes reduction e={e}: {blk} and {target} reduce differently")
        src, dst = _engine("scopes-src", e), _engine("scopes-dst", e)
        for la in phi:
            if e_weight(phi[la], e) != w:
                fails.append(f"Scopes weight e={e}: {_fmt(phi[la])}")
            f = apply_f_divided({la: ONE}, e, k, a)
            if f != {phi[la]: ONE}:
                fails.append(f"divided power e={e} k={k}: f^({a}) |{_fmt(la)}> != |{_fmt(phi[la])}>")
        for mu in phi:
            for la in phi:
                cases += 1
                x, y = src.q_decomp(la, mu), dst.q_decomp(phi[la], phi[mu])
                if x != y:
                    fails.append(
                        f"Scopes equivalence e={e} k={k}: d({_fmt(la)},{_fmt(mu)}) = {x}, "
                        f"d({_fmt(phi[la])},{_fmt(phi[mu])}) = {y}"
                    )
    return cases, fails


def verify_scopes(e_range=(3, 4, 5), weight_max: int = 3, core_size_max: int = 4,
                  threads: int | None = None,
                  sample: int | None = None, seed: int = 0) -> SuiteReport:
    blocks = blocks_in_range(e_range, core_size_max, weight_max)
    params = dict(e_range=list(e_range), weight_max=weight_max, core_size_max=core_size_max)
    return _run("scopes", params, _scopes_block, blocks, threads, sample, seed)


# -- descent to e = 2w ---------------------------------------------------------------


def _descend(la: Partition, mu: Partition, e: int, w: int, value: LaurentPoly, fails: list):
    """Walk (la, mu) down to modulus 2w, checking the value at every step."""
    while e > 2 * w:
        mc = mullineux_conjugate(mu, e)
        ks = [k for k in range(e) if is_k_empty(mu, e, k) and is_k_empty(mc, e, k)]
        if not ks:
            fails.append(f"descent e={e}: no k with {_fmt(mu)} and {_fmt(mc)} both k-empty")
            return
        k = ks[0]
        la, mu, e = remove_runner(la, e, k), remove_runner(mu, e, k), e - 1
        got = _engine(f"descent-{e}", e).q_decomp(la, mu)
        if got != value:
            fails.append(f"descent to e={e} k={k}: d({_fmt(la)},{_fmt(mu)}) = {got}, expected {value}")
            return


def _descent_block(blk: BlockId):
    e, w = blk.e, blk.weight
    eng = _engine("descent-top", e)
    mat = eng.decomposition_matrix(blk.core, w)
    cases, fails = 0, []
    for j, mu in enumerate(mat.members):
        for i, la in enumerate(mat.members):
            d = mat.entries[i][j]
            if not d:
                continue
            cases += 1
            if is_e_regular(mu, e):
                _descend(la, mu, e, w, d, fails)
                continue
            r = max(len(la), len(mu))
            lp, mp = add_empty_runner(la, e, r), add_empty_runner(mu, e, r)
            got = _engine(f"descent-{e + 1}", e + 1).q_decomp(lp, mp)
            if got != d:
                fails.append(f"empty runner e={e}: d({_fmt(la)},{_fmt(mu)}) = {d} but {got} after adding a runner")
                continue
            if not is_e_regular(mp, e + 1):
                fails.append(f"empty runner e={e}: {_fmt(mp)} is not {e + 1}-regular")
                continue
            _descend(lp, mp, e + 1, w, d, fails)
    return cases, fails


def verify_descent(ew_pairs=((3, 1), (4, 1), (5, 1), (5, 2), (6, 2)), core_size_max: int = 3,
                  threads: int | None = None,
                  sample: int | None = None, seed: int = 0) -> SuiteReport:
    blocks = []
    for e, w in ew_pairs:
        if not e > 2 * w > 0:
            raise ValueError(f"descent needs e > 2w > 0, got e={e} w={w}")
        blocks += blocks_in_range([e], core_size_max, w, weight_min=w)
    blocks.sort(key=lambda b: (b.size, b.e, tuple(b.core)))
    params = dict(ew_pairs=[list(p) for p in ew_pairs], core_size_max=core_size_max)
    return _run("descent", params, _descent_block, blocks, threads, sample, seed)


SUITES = {
    "runner-removal": verify_runner_removal,
    "bar-runner-removal": verify_bar_runner_removal,
    "mullineux": verify_mullineux,
    "mullineux-oracles": verify_mullineux_oracles,
    "llt-symmetry": verify_lltthm,
    "top-degree": verify_top_degree,
    "triangularity": verify_triangularity,
    "bar-involution": verify_bar_involution,
    "scopes": verify_scopes,
    "descent": verify_descent,
}
