"""Gyrogroup axioms on loop tables and element-level gyrogroup arithmetic.

All gyrations are materialized up front: ``gyrs[a, b, c]`` is
``gyr[a, b]c = -(a + b) + (a + (b + c))``. Every later check is a lookup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .table import CayleyTable, validate_loop

__all__ = [
    "AxiomViolation",
    "Gyrogroup",
    "NotALoopError",
    "NotAGyrogroupError",
    "check_axioms",
    "coadd",
    "gyr",
    "neg",
    "order_of",
    "scalar",
    "scalar_right",
    "solve_left",
    "solve_right",
    "validate_gyrogroup",
]


class NotALoopError(ValueError):
    """Raised when gyrogroup axioms are requested on a table that is not a loop."""


class NotAGyrogroupError(ValueError):
    def __init__(self, violations: Sequence["AxiomViolation"]):
        self.violations = list(violations)
        first = self.violations[0]
        super().__init__(
            f"{len(self.violations)} axiom violation(s); first: {first.axiom} at {first.witnesses}"
        )


@dataclass(frozen=True)
class AxiomViolation:
    """A failed axiom with the element tuple that exhibits it.

    Witness layouts: G2 ``(a,)``; G3-automorphism ``(a, b, x, y)``;
    G3-gyroassociativity, right-gyroassoc, G4, right-loop ``(a, b, c)``.
    """

    axiom: str
    witnesses: tuple[int, ...]


def _inverses(e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = e.shape[0]
    right = np.argmax(e == 0, axis=1)  # a + right[a] = 0
    left = np.argmax(e == 0, axis=0)  # left[a] + a = 0
    return right[:n], left[:n]


def _gyrations(e: np.ndarray, inv: np.ndarray) -> np.ndarray:
    n = e.shape[0]
    a = np.arange(n)[:, None, None]
    a_bc = e[a, e[None, :, :]]  # a + (b + c)
    ab = e[:, :, None]  # a + b
    return e[inv[ab], a_bc]


def _first(mask: np.ndarray) -> tuple[int, ...] | None:
    idx = np.argwhere(mask)
    if len(idx) == 0:
        return None
    return tuple(int(v) for v in idx[0])


def check_axioms(t: CayleyTable) -> list[AxiomViolation]:
    """Exhaustively test every gyrogroup axiom on a loop table.

    Returns one violation (with the first witness found) per failing axiom;
    an empty list means ``t`` is a gyrogroup.
    """
    if not validate_loop(t).valid:
        raise NotALoopError("table is not a loop with identity 0")
    e = t.entries
    n = t.order
    out: list[AxiomViolation] = []

    inv, linv = _inverses(e)
    w = _first(inv != linv)
    if w is not None:
        out.append(AxiomViolation("G2", w))
    g = _gyrations(e, inv)

    # gyr[a,b](x + y) == gyr[a,b]x + gyr[a,b]y
    lhs = np.take_along_axis(g, np.broadcast_to(e.reshape(1, 1, n * n), (n, n, n * n)), axis=2)
    rhs = e[g[:, :, :, None], g[:, :, None, :]].reshape(n, n, n * n)
    bad = lhs != rhs
    w = _first(bad)
    if w is not None:
        a, b, k = w
        out.append(AxiomViolation("G3-automorphism", (a, b, k // n, k % n)))

    idx = np.arange(n)
    A = idx[:, None, None]
    B = idx[None, :, None]
    C = idx[None, None, :]
    left = e[A, e[B, C]]
    w = _first(left != e[e[A, B], g])
    if w is not None:
        out.append(AxiomViolation("G3-gyroassociativity", w))

    g_ba = g.transpose(1, 0, 2)  # g_ba[a, b, c] = gyr[b, a]c
    w = _first(e[e[A, B], C] != e[A, e[B, g_ba]])
    if w is not None:
        out.append(AxiomViolation("right-gyroassoc", w))

    w = _first(g != g[e, idx[None, :]])  # gyr[a+b, b]
    if w is not None:
        out.append(AxiomViolation("G4", w))

    w = _first(g != g[idx[:, None], e.T])  # gyr[a, b+a]
    if w is not None:
        out.append(AxiomViolation("right-loop", w))
    return out


@dataclass(frozen=True, eq=False)
class Gyrogroup:
    """A table that passed every gyrogroup axiom, with inverses and gyrations."""

    table: CayleyTable
    inv: np.ndarray = field(repr=False)
    gyrs: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.table.order

    def __len__(self) -> int:
        return self.table.order

    @property
    def entries(self) -> np.ndarray:
        return self.table.entries

    def add(self, a: int, b: int) -> int:
        return int(self.table.entries[a, b])

    def neg(self, a: int) -> int:
        return int(self.inv[a])

    def is_group(self) -> bool:
        return bool((self.gyrs == np.arange(self.order)).all())

    def element_orders(self) -> list[int]:
        return [order_of(self, a) for a in range(self.order)]

    def __eq__(self, other):
        if not isinstance(other, Gyrogroup):
            return NotImplemented
        return self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"Gyrogroup(order={self.order})"


def validate_gyrogroup(t: CayleyTable) -> Gyrogroup:
    """Return the validated gyrogroup or raise :class:`NotAGyrogroupError`.

    A non-loop input raises :class:`NotALoopError` instead.
    """
    violations = check_axioms(t)
    if violations:
        raise NotAGyrogroupError(violations)
    inv, _ = _inverses(t.entries)
    g = _gyrations(t.entries, inv)
    inv.setflags(write=False)
    g.setflags(write=False)
    return Gyrogroup(t, inv, g)


def _check(G: Gyrogroup, *elements: int) -> None:
    n = G.order
    for x in elements:
        if not 0 <= x < n:
            raise IndexError(f"element {x} out of range 0..{n - 1}")


def gyr(G: Gyrogroup, a: int, b: int) -> tuple[int, ...]:
    """gyr[a, b] as a permutation tuple."""
    _check(G, a, b)
    return tuple(int(v) for v in G.gyrs[a, b])


def neg(G: Gyrogroup, a: int) -> int:
    _check(G, a)
    return int(G.inv[a])


def coadd(G: Gyrogroup, a: int, b: int) -> int:
    """Cooperation ``a [+] b = a + gyr[a, -b]b``."""
    _check(G, a, b)
    return G.add(a, int(G.gyrs[a, G.inv[b], b]))


def solve_left(G: Gyrogroup, a: int, b: int) -> int:
    """The unique ``x`` with ``a + x = b``, namely ``-a + b``."""
    _check(G, a, b)
    return G.add(int(G.inv[a]), b)


def solve_right(G: Gyrogroup, a: int, b: int) -> int:
    """The unique ``x`` with ``x + a = b``, namely ``b [+] (-a)``."""
    _check(G, a, b)
    return coadd(G, b, int(G.inv[a]))


def scalar(G: Gyrogroup, m: int, a: int) -> int:
    """``m.a`` by the left recursion ``m.a = a + (m-1).a``; negative ``m`` via ``-a``."""
    _check(G, a)
    if m < 0:
        m, a = -m, int(G.inv[a])
    x = 0
    for _ in range(m):
        x = G.add(a, x)
    return x


def scalar_right(G: Gyrogroup, a: int, m: int) -> int:
    """``a.m`` by the right recursion ``a.m = a.(m-1) + a``."""
    _check(G, a)
    if m < 0:
        m, a = -m, int(G.inv[a])
    x = 0
    for _ in range(m):
        x = G.add(x, a)
    return x


def order_of(G: Gyrogroup, a: int) -> int:
    """Least ``k > 0`` with ``k.a = 0``, found by iterating the recursion."""
    _check(G, a)
    x = a
    k = 1
    while x != 0:
        x = G.add(a, x)
        k += 1
        if k > G.order:
            raise AssertionError(f"element {a} has no finite order within |G| steps")
    return k
