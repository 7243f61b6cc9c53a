"""Beta-sets and abacus statistics.

Everything here works on plain beta-sets (strictly decreasing tuples of
bead positions) and is independent of the bead count ``r`` whenever the
underlying notion is; ``r`` defaults to something safely large.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .partitions import Partition


class AbacusError(ValueError):
    """A precondition on an abacus display failed (e.g. not k-empty)."""


@dataclass(frozen=True)
class BetaSet:
    r: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.r:
            raise ValueError(f"beta-set with r={self.r} has {len(self.entries)} entries")
        if any(b < 0 for b in self.entries):
            raise ValueError("beta numbers must be non-negative")
        if any(a <= b for a, b in zip(self.entries, self.entries[1:])):
            raise ValueError("beta numbers must be strictly decreasing")

    @classmethod
    def from_positions(cls, positions: Iterable[int]) -> "BetaSet":
        entries = tuple(sorted(positions, reverse=True))
        return cls(len(entries), entries)

    def __contains__(self, b: int) -> bool:
        return b in self.entries

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return self.r

    def to_json(self) -> dict:
        return {"r": self.r, "entries": list(self.entries)}

    @classmethod
    def from_json(cls, data: dict) -> "BetaSet":
        return cls(int(data["r"]), tuple(int(b) for b in data["entries"]))


class RunnerParams(NamedTuple):
    e: int
    k: int
    d: int
    c: int


class IntMultiset:
    """A finite multiset of integers, kept as sorted ``(value, multiplicity)`` pairs."""

    __slots__ = ("pairs",)

    def __init__(self, values: Iterable[int] | Counter = ()):
        cnt = values if isinstance(values, Counter) else Counter(values)
        self.pairs = tuple(sorted((v, m) for v, m in cnt.items() if m > 0))

    def __len__(self) -> int:
        return sum(m for _, m in self.pairs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntMultiset):
            return self.pairs == other.pairs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self) -> str:
        return f"IntMultiset({self.elements()})"

    def elements(self) -> list[int]:
        """All elements with multiplicity, ascending."""
        return [v for v, m in self.pairs for _ in range(m)]

    def descending(self) -> list[int]:
        return self.elements()[::-1]

    def counter(self) -> Counter:
        return Counter(dict(self.pairs))

    def multiplicity(self, v: int) -> int:
        return dict(self.pairs).get(v, 0)

    def count_above(self, bound: int) -> int:
        return sum(m for v, m in self.pairs if v > bound)

    def __add__(self, other: "IntMultiset") -> "IntMultiset":
        return IntMultiset(self.counter() + other.counter())

    def __sub__(self, other: "IntMultiset") -> "IntMultiset":
        a, b = self.counter(), other.counter()
        if any(a[v] < m for v, m in b.items()):
            raise ValueError("multiset difference is not contained")
        a.subtract(b)
        return IntMultiset(a)

    def to_json(self) -> list[list[int]]:
        return [[v, m] for v, m in self.pairs]

    @classmethod
    def from_json(cls, data) -> "IntMultiset":
        return cls(Counter({int(v): int(m) for v, m in data}))


# -- beta-sets ---------------------------------------------------------------


def default_r(la: Iterable[int], e: int = 0) -> int:
    la = Partition(la)
    return max(len(la), sum(la)) + e


def beta_set(la: Iterable[int], r: int | None = None) -> BetaSet:
    la = Partition(la)
    if r is None:
        r = len(la)
    if r < len(la):
        raise AbacusError(f"r={r} is smaller than the number of parts of {la}")
    return BetaSet(r, tuple(la[i - 1] + r - i for i in range(1, r + 1)))


def partition_from_beta_set(B: BetaSet | Iterable[int]) -> Partition:
    if not isinstance(B, BetaSet):
        B = BetaSet.from_positions(B)
    return Partition(b - B.r + i for i, b in enumerate(B.entries, start=1))


def _runner_counts(B: Iterable[int], e: int) -> list[int]:
    counts = [0] * e
    for b in B:
        counts[b % e] += 1
    return counts


def core_beta(B: Iterable[int], e: int) -> list[int]:
    counts = _runner_counts(B, e)
    return [j + i * e for j in range(e) for i in range(counts[j])]


def e_core(la: Iterable[int], e: int) -> Partition:
    B = beta_set(la)
    return partition_from_beta_set(core_beta(B, e))


def e_weight(la: Iterable[int], e: int) -> int:
    # per runner: bead at level t with i beads above it slides t - i
    B = sorted(beta_set(la))
    seen = [0] * e
    w = 0
    for b in B:
        j = b % e
        w += b // e - seen[j]
        seen[j] += 1
    return w


def core_and_weight(la: Iterable[int], e: int) -> tuple[Partition, int]:
    return e_core(la, e), e_weight(la, e)


# -- runners, k-emptiness ----------------------------------------------------


def runner_params(la: Iterable[int], e: int, k: int, r: int | None = None) -> RunnerParams:
    if not 0 <= k < e:
        raise AbacusError(f"k={k} out of range for e={e}")
    B = beta_set(la, r)
    d = (B.r + k) % e
    c = sum(1 for b in B if b % e == d)
    return RunnerParams(e, k, d, c)


def _is_runner_packed(B: BetaSet, e: int, d: int) -> bool:
    levels = sorted(b // e for b in B if b % e == d)
    return levels == list(range(len(levels)))


def is_k_empty(la: Iterable[int], e: int, k: int, r: int | None = None) -> bool:
    B = beta_set(la, r)
    d = (B.r + k) % e
    return _is_runner_packed(B, e, d)


def phi_d(z: int, e: int, d: int) -> int:
    """Renumber position ``z`` after deleting runner ``d``."""
    if z < 0:
        raise ValueError("positions are non-negative")
    if (z - d) % e == 0:
        raise AbacusError(f"position {z} lies on the deleted runner {d} (e={e})")
    return z - (z + e - d) // e


def remove_runner(la: Iterable[int], e: int, k: int, r: int | None = None) -> Partition:
    """The partition read off after deleting the (packed) runner of a k-empty display."""
    if e < 3:
        raise AbacusError("runner removal needs e >= 3")
    if not 0 <= k < e:
        raise AbacusError(f"k={k} out of range for e={e}")
    B = beta_set(la, r)
    d = (B.r + k) % e
    if not _is_runner_packed(B, e, d):
        raise AbacusError(f"{Partition(la)} is not {k}-empty for e={e}")
    rest = [phi_d(b, e, d) for b in B if b % e != d]
    return partition_from_beta_set(BetaSet.from_positions(rest))


def add_empty_runner(la: Iterable[int], e: int, r: int | None = None) -> Partition:
    """Insert a bead-free runner at the left of the e-runner display."""
    B = beta_set(la, r)
    return partition_from_beta_set(
        BetaSet.from_positions((b // e) * (e + 1) + (b % e) + 1 for b in B)
    )


# -- multisets ---------------------------------------------------------------


def extension(B: Iterable[int], e: int) -> IntMultiset:
    """The e-extension: z occurs once for each bead at z, z+e, z+2e, ..."""
    cnt: Counter = Counter()
    for b in B:
        for z in range(b, -1, -e):
            cnt[z] += 1
    return IntMultiset(cnt)


def extended_beta_set(la: Iterable[int], e: int, r: int | None = None) -> IntMultiset:
    return extension(beta_set(la, r), e)


def weight_multiset(la: Iterable[int], e: int, r: int | None = None) -> IntMultiset:
    """Positions vacated one step at a time while sliding every bead up to the core."""
    B = sorted(beta_set(la, r))
    seen = [0] * e
    out = []
    for b in B:
        j, t = b % e, b // e
        i = seen[j]
        out.extend(j + s * e for s in range(i + 1, t + 1))
        seen[j] += 1
    return IntMultiset(out)


def bruhat_geq(I: IntMultiset | Iterable[int], J: IntMultiset | Iterable[int]) -> bool:
    """True iff |I| = |J| and some matching has every i >= its partner j."""
    a = I.descending() if isinstance(I, IntMultiset) else sorted(I, reverse=True)
    b = J.descending() if isinstance(J, IntMultiset) else sorted(J, reverse=True)
    return len(a) == len(b) and all(x >= y for x, y in zip(a, b))


def dominates(mu: Iterable[int], la: Iterable[int], e: int, r: int | None = None) -> bool:
    """The coarse dominance order: mu dominates la."""
    mu, la = Partition(mu), Partition(la)
    if sum(mu) != sum(la):
        return False
    if r is None:
        r = max(len(mu), len(la))
    Bm, Bl = beta_set(mu, r), beta_set(la, r)
    if sorted(core_beta(Bm, e)) != sorted(core_beta(Bl, e)):
        return False
    return bruhat_geq(extension(Bm, e), extension(Bl, e))


def dominance_key(la: Iterable[int], e: int, r: int) -> tuple[int, ...]:
    """Sort key whose descending order is a linear extension of dominance."""
    return tuple(extended_beta_set(la, e, r).descending())


# -- the U_k statistic and friends -------------------------------------------


def _require_k_empty(la, e, k, r):
    B = beta_set(la, r)
    d = (B.r + k) % e
    if not _is_runner_packed(B, e, d):
        raise AbacusError(f"{Partition(la)} is not {k}-empty for e={e}")
    c = sum(1 for b in B if b % e == d)
    return B, d, c


def ux(la: Iterable[int], e: int, k: int, r: int | None = None) -> int:
    """Number of extended beta-set entries beyond the last bead slot of runner d."""
    B, d, c = _require_k_empty(la, e, k, r)
    return extension(B, e).count_above(d + c * e)


def ux_alt(la: Iterable[int], e: int, k: int, r: int | None = None) -> int:
    """The same statistic as a sum over beads of runner-level excesses."""
    B, d, c = _require_k_empty(la, e, k, r)
    base = d + (c - 1) * e
    return sum((b - base) // e for b in B if b >= base)


def n_rk(la: Iterable[int], e: int, k: int, r: int | None = None) -> int:
    """Pairs a < b of beads with a on runner d and b off it."""
    B = beta_set(la, r)
    d = (B.r + k) % e
    on = sorted(b for b in B if b % e == d)
    off = sorted(b for b in B if b % e != d)
    total, j = 0, 0
    # count off-runner beads above each on-runner bead
    for a in on:
        while j < len(off) and off[j] < a:
            j += 1
        total += len(off) - j
    return total
