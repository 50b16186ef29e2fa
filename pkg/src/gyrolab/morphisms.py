"""Gyrogroup homomorphisms, normal subgyrogroups, quotients, isomorphism
search and canonical forms.

Normality is decided intrinsically. ``N`` is normal in ``G`` iff its left
cosets partition ``G``, the coset rule ``(a + N) + (b + N) = (a + b) + N``
is independent of representatives, and the resulting coset table is a
gyrogroup. Then the projection ``a -> a + N`` is a homomorphism with kernel
``N``. Conversely, if ``N = ker(f)``, the coset ``a + N`` is the fibre
``f^-1(f(a))``, so all three conditions hold. This argument belongs to this
library; it is not quoted from elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import prod
from typing import Iterator, Optional, Sequence

import numpy as np

from .gyro import Gyrogroup, NotAGyrogroupError, validate_gyrogroup
from .subgyro import SubSet, left_cosets, restrict, subset
from .table import CayleyTable, validate_loop

__all__ = [
    "Morphism",
    "NotNormalError",
    "QuotientGyrogroup",
    "all_homomorphisms",
    "canonical_form",
    "check_homomorphism",
    "find_isomorphism",
    "image",
    "image_gyrogroup",
    "is_normal",
    "isomorphism_obstruction",
    "normal_quotient",
    "order_profile",
    "quotient",
    "set_sum",
]


class NotNormalError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Morphism:
    source: Gyrogroup
    target: Gyrogroup
    map: tuple[int, ...]
    is_homomorphism: bool
    kernel: Optional[SubSet] = None

    def __call__(self, a: int) -> int:
        return self.map[a]

    def to_json(self) -> list[int]:
        return list(self.map)

    def is_bijective(self) -> bool:
        return sorted(self.map) == list(range(self.target.order)) and self.source.order == self.target.order


def check_homomorphism(src: Gyrogroup, dst: Gyrogroup, mapping: Sequence[int]) -> Morphism:
    """Exhaustively test ``f(a + b) = f(a) + f(b)``; attach the kernel when it holds."""
    f = np.asarray(list(mapping), dtype=np.int64)
    if f.shape != (src.order,):
        raise ValueError(f"map must have one image per source element ({src.order}), got {f.shape}")
    if (f < 0).any() or (f >= dst.order).any():
        raise ValueError("map has images outside the target")
    ok = bool((f[src.entries] == dst.entries[np.ix_(f, f)]).all())
    kernel = None
    if ok:
        kernel = SubSet(src, tuple(int(a) for a in np.nonzero(f == 0)[0]), is_subgyrogroup=True)
    return Morphism(src, dst, tuple(int(v) for v in f), ok, kernel)


def image(m: Morphism) -> SubSet:
    return subset(m.target, m.map)


def image_gyrogroup(m: Morphism) -> Gyrogroup:
    """The image ``f(G)`` as a gyrogroup in its own right (labels by rank)."""
    table, _ = restrict(m.target, image(m))
    return validate_gyrogroup(table)


@dataclass(frozen=True, eq=False)
class QuotientGyrogroup:
    base: Gyrogroup
    normal_set: SubSet
    cosets: tuple[tuple[int, ...], ...]
    quotient: Gyrogroup
    projection: Morphism


def normal_quotient(G: Gyrogroup, N: SubSet) -> Optional[QuotientGyrogroup]:
    """The quotient ``G/N`` if ``N`` is normal, else ``None``."""
    if not N.is_subgyrogroup:
        raise ValueError("normality is defined for subgyrogroups")
    dec = left_cosets(G, N)
    if not dec.is_partition:
        return None
    coset_of = np.empty(G.order, dtype=np.int64)
    for i, c in enumerate(dec.cosets):
        coset_of[list(c)] = i
    k = len(dec.cosets)
    q = np.full((k, k), -1, dtype=np.int64)
    prod_cosets = coset_of[G.entries]
    rows = coset_of[:, None].repeat(G.order, 1)
    cols = coset_of[None, :].repeat(G.order, 0)
    q[rows, cols] = prod_cosets
    # well-defined iff every representative pair lands where q says
    if not (q[rows, cols] == prod_cosets).all():
        return None
    qt = CayleyTable(q)
    if not validate_loop(qt).valid:
        return None
    try:
        Q = validate_gyrogroup(qt)
    except NotAGyrogroupError:
        return None
    proj = check_homomorphism(G, Q, coset_of)
    assert proj.is_homomorphism and proj.kernel.members == N.members
    return QuotientGyrogroup(G, N, dec.cosets, Q, proj)


def is_normal(G: Gyrogroup, N: SubSet) -> bool:
    return normal_quotient(G, N) is not None


def quotient(G: Gyrogroup, N: SubSet) -> QuotientGyrogroup:
    q = normal_quotient(G, N)
    if q is None:
        raise NotNormalError(f"{list(N.members)} is not a normal subgyrogroup")
    return q


def set_sum(G: Gyrogroup, A: SubSet, B: SubSet) -> tuple[int, ...]:
    """The element set ``{a + b : a in A, b in B}``."""
    vals = G.entries[np.ix_(np.asarray(A.members), np.asarray(B.members))]
    return tuple(sorted(set(vals.ravel().tolist())))


def order_profile(G: Gyrogroup) -> tuple[int, ...]:
    return tuple(sorted(G.element_orders()))


def _extend(src, dst, f, used, a, b, injective, ok_image):
    """Set f(a) = b and propagate through products and negation. Returns success."""
    se, de = src.entries, dst.entries
    sinv, dinv = src.inv, dst.inv
    queue = [(a, b)]
    while queue:
        x, y = queue.pop()
        if f[x] >= 0:
            if f[x] != y:
                return False
            continue
        if not ok_image(x, y) or (injective and used[y]):
            return False
        f[x] = y
        used[y] = True
        queue.append((int(sinv[x]), int(dinv[y])))
        for z in np.nonzero(f >= 0)[0]:
            z = int(z)
            fz = int(f[z])
            queue.append((int(se[x, z]), int(de[y, fz])))
            queue.append((int(se[z, x]), int(de[fz, y])))
    return True


def _search_maps(src: Gyrogroup, dst: Gyrogroup, injective: bool, ok_image) -> Iterator[tuple[int, ...]]:
    n = src.order
    f0 = np.full(n, -1, dtype=np.int64)
    used0 = np.zeros(dst.order, dtype=bool)
    if not _extend(src, dst, f0, used0, 0, 0, injective, ok_image):
        return

    def rec(f, used):
        free = np.nonzero(f < 0)[0]
        if len(free) == 0:
            yield tuple(int(v) for v in f)
            return
        x = int(free[0])
        for y in range(dst.order):
            if injective and used[y]:
                continue
            f2, used2 = f.copy(), used.copy()
            if _extend(src, dst, f2, used2, x, y, injective, ok_image):
                yield from rec(f2, used2)

    yield from rec(f0, used0)


def all_homomorphisms(src: Gyrogroup, dst: Gyrogroup) -> list[Morphism]:
    """Every homomorphism ``src -> dst`` (images must have order dividing the source order)."""
    so = src.element_orders()
    do = dst.element_orders()
    maps = _search_maps(src, dst, False, lambda x, y: so[x] % do[y] == 0)
    out = []
    for m in maps:
        h = check_homomorphism(src, dst, m)
        assert h.is_homomorphism
        out.append(h)
    return out


def isomorphism_obstruction(G: Gyrogroup, H: Gyrogroup) -> Optional[str]:
    """A cheap reason ``G`` and ``H`` cannot be isomorphic, if one exists."""
    if G.order != H.order:
        return "orders differ"
    if order_profile(G) != order_profile(H):
        return "order profiles differ"
    return None


def find_isomorphism(G: Gyrogroup, H: Gyrogroup) -> Optional[Morphism]:
    """Backtracking search for an isomorphism; element orders must match."""
    if isomorphism_obstruction(G, H) is not None:
        return None
    go = G.element_orders()
    ho = H.element_orders()
    for m in _search_maps(G, H, True, lambda x, y: go[x] == ho[y]):
        h = check_homomorphism(G, H, m)
        if h.is_homomorphism and h.is_bijective():
            return h
    return None


_CHUNK = 40320


def _refined_relabelings(orders: Sequence[int]) -> Iterator[np.ndarray]:
    """Blocks of inverse relabelings ``q`` (new label -> old element).

    Only labelings listing elements by nondecreasing order are produced.
    """
    n = len(orders)
    classes: dict[int, list[int]] = {}
    for x in range(n):
        classes.setdefault(orders[x], []).append(x)
    blocks = [classes[k] for k in sorted(classes)]
    choices = product(*(permutations(b) for b in blocks))
    buf = []
    for combo in choices:
        buf.append([x for part in combo for x in part])
        if len(buf) == _CHUNK:
            yield np.asarray(buf, dtype=np.int64)
            buf = []
    if buf:
        yield np.asarray(buf, dtype=np.int64)


def _lexmin_rows(arr: np.ndarray) -> np.ndarray:
    keep = np.arange(arr.shape[0])
    for col in range(arr.shape[1]):
        vals = arr[keep, col]
        keep = keep[vals == vals.min()]
        if len(keep) == 1:
            break
    return arr[keep[0]]


def canonical_form(G: Gyrogroup) -> CayleyTable:
    """Lexicographically least relabeled table among order-sorted labelings.

    Labels are assigned so that element orders are nondecreasing; among all
    such relabelings (each fixes 0) the least row-major table is returned.
    Equal results iff isomorphic.
    """
    e = G.entries
    n = G.order
    best = None
    for q in _refined_relabelings(G.element_orders()):
        sigma = np.argsort(q, axis=1)
        vals = e[q[:, :, None], q[:, None, :]].reshape(len(q), n * n)
        relabeled = np.take_along_axis(sigma, vals, axis=1)
        cand = _lexmin_rows(relabeled)
        if best is None or tuple(cand) < tuple(best):
            best = cand
    return CayleyTable(best.reshape(n, n))


def relabeling_count(G: Gyrogroup) -> int:
    from collections import Counter
    from math import factorial

    return prod(factorial(c) for c in Counter(G.element_orders()).values())
