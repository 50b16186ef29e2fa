"""Subgyrogroups: membership criterion, generated and cyclic subgyrogroups,
the full lattice, subgroup detection and left cosets."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Optional

import numpy as np

from .gyro import Gyrogroup, order_of, scalar
from .table import CayleyTable

__all__ = [
    "DEFAULT_ENUMERATION_BOUND",
    "CosetDecomposition",
    "EnumerationBoundError",
    "SubSet",
    "all_subgyrogroups",
    "cyclic",
    "generate",
    "is_subgroup_subset",
    "is_subgyrogroup",
    "left_cosets",
    "restrict",
    "subset",
]

DEFAULT_ENUMERATION_BOUND = 16


class EnumerationBoundError(ValueError):
    """Refusal to enumerate a structure larger than the configured bound."""


@dataclass(frozen=True, eq=False)
class SubSet:
    """A subset of a gyrogroup's elements with its known roles.

    ``is_subgroup`` and ``is_normal`` are tri-state: ``None`` means not yet
    decided.
    """

    parent: Gyrogroup
    members: tuple[int, ...]
    is_subgyrogroup: bool = False
    is_subgroup: Optional[bool] = None
    is_normal: Optional[bool] = None

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, SubSet):
            return NotImplemented
        return self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"SubSet({list(self.members)})"

    def sort_key(self):
        return (len(self.members), self.members)


def _members(G: Gyrogroup, S: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(set(int(x) for x in S)))
    if not out:
        raise ValueError("subset must be nonempty")
    n = G.order
    if out[0] < 0 or out[-1] >= n:
        raise IndexError(f"subset has elements outside 0..{n - 1}")
    return out


def is_subgyrogroup(G: Gyrogroup, S: Iterable[int]) -> bool:
    """Closure under addition and negation (the subgyrogroup criterion)."""
    m = _members(G, S)
    mask = np.zeros(G.order, dtype=bool)
    mask[list(m)] = True
    idx = np.asarray(m)
    if not mask[G.inv[idx]].all():
        return False
    return bool(mask[G.entries[np.ix_(idx, idx)]].all())


def subset(G: Gyrogroup, S: Iterable[int]) -> SubSet:
    """Wrap ``S`` as a :class:`SubSet` with the subgyrogroup flag decided."""
    m = _members(G, S)
    return SubSet(G, m, is_subgyrogroup=is_subgyrogroup(G, m))


def _close(G: Gyrogroup, seed: set[int]) -> set[int]:
    e = G.entries
    inv = G.inv
    members = set(seed) | {0}
    work = list(members)
    done: list[int] = []
    while work:
        x = work.pop()
        new = [int(inv[x])]
        for y in done:
            new.append(int(e[x, y]))
            new.append(int(e[y, x]))
        new.append(int(e[x, x]))
        done.append(x)
        for z in new:
            if z not in members:
                members.add(z)
                work.append(z)
    return members


def generate(G: Gyrogroup, A: Iterable[int]) -> SubSet:
    """Smallest subgyrogroup containing ``A``, by worklist closure."""
    m = _members(G, A)
    return SubSet(G, tuple(sorted(_close(G, set(m)))), is_subgyrogroup=True)


def cyclic(G: Gyrogroup, a: int) -> SubSet:
    """``<a> = {m.a : 0 <= m < |a|}`` built from the scalar recursion."""
    k = order_of(G, a)
    members = tuple(sorted({scalar(G, m, a) for m in range(k)}))
    return SubSet(G, members, is_subgyrogroup=True, is_subgroup=True)


def is_subgroup_subset(G: Gyrogroup, S: SubSet | Iterable[int]) -> bool:
    """True iff every gyr[a, b] with a, b in S fixes S pointwise."""
    if isinstance(S, SubSet):
        if not S.is_subgyrogroup:
            raise ValueError("subgroup test needs a subgyrogroup")
        m = S.members
    else:
        m = _members(G, S)
        if not is_subgyrogroup(G, m):
            raise ValueError("subgroup test needs a subgyrogroup")
    idx = np.asarray(m)
    block = G.gyrs[np.ix_(idx, idx, idx)]
    return bool((block == idx[None, None, :]).all())


def all_subgyrogroups(G: Gyrogroup, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[SubSet]:
    """Every subgyrogroup exactly once, sorted by (size, members).

    Starts from the cyclic subgyrogroups and repeatedly adjoins one element
    to a known subgyrogroup and re-closes, until nothing new appears. No
    assumption about which sizes can occur is made.
    """
    n = G.order
    if n > bound:
        raise EnumerationBoundError(f"order {n} exceeds enumeration bound {bound}")
    found: dict[frozenset, None] = {frozenset({0}): None}
    frontier = []
    for a in range(n):
        s = frozenset(cyclic(G, a).members)
        if s not in found:
            found[s] = None
            frontier.append(s)
    while frontier:
        nxt = []
        for h in frontier:
            for x in range(n):
                if x in h:
                    continue
                s = frozenset(_close(G, set(h) | {x}))
                if s not in found:
                    found[s] = None
                    nxt.append(s)
        frontier = nxt
    subs = [SubSet(G, tuple(sorted(s)), is_subgyrogroup=True) for s in found]
    subs = [replace(s, is_subgroup=is_subgroup_subset(G, s)) for s in subs]
    return sorted(subs, key=SubSet.sort_key)


def restrict(G: Gyrogroup, S: SubSet | Iterable[int]) -> tuple[CayleyTable, tuple[int, ...]]:
    """Operation table of a subgyrogroup, relabeled by rank in sorted order.

    Returns the table and the sorted member tuple (new label ``i`` is the
    parent element ``members[i]``). ``0`` stays the identity.
    """
    m = S.members if isinstance(S, SubSet) else _members(G, S)
    if 0 not in m or not is_subgyrogroup(G, m):
        raise ValueError("restriction needs a subgyrogroup")
    pos = np.full(G.order, -1)
    pos[list(m)] = np.arange(len(m))
    idx = np.asarray(m)
    return CayleyTable(pos[G.entries[np.ix_(idx, idx)]]), m


@dataclass(frozen=True)
class CosetDecomposition:
    subgroup_set: SubSet
    cosets: tuple[tuple[int, ...], ...]
    is_partition: bool
    index: Optional[int]


def left_cosets(G: Gyrogroup, H: SubSet) -> CosetDecomposition:
    """Distinct sets ``a + H``, listed by smallest element."""
    if not H.is_subgyrogroup:
        raise ValueError("left cosets need a subgyrogroup")
    idx = np.asarray(H.members)
    sets = {tuple(sorted(set(G.entries[a, idx].tolist()))) for a in range(G.order)}
    cosets = tuple(sorted(sets))
    covered = sum(len(c) for c in cosets)
    is_partition = covered == G.order
    return CosetDecomposition(H, cosets, is_partition, len(cosets) if is_partition else None)
