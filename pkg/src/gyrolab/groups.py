"""Small group tables used as degenerate gyrogroups (all gyrations trivial)."""

from __future__ import annotations

from itertools import permutations, product

from .table import CayleyTable

__all__ = [
    "builtin_groups",
    "cyclic_group",
    "dihedral_group",
    "direct_product",
    "klein_group",
    "quaternion_group",
    "symmetric3",
    "table_from_elements",
]


def table_from_elements(elements, mul) -> CayleyTable:
    """Cayley table of ``mul`` on ``elements``; ``elements[0]`` must be the identity."""
    index = {x: i for i, x in enumerate(elements)}
    return CayleyTable([[index[mul(x, y)] for y in elements] for x in elements])


def cyclic_group(n: int) -> CayleyTable:
    return CayleyTable.from_function(n, lambda a, b: (a + b) % n)


def klein_group() -> CayleyTable:
    return CayleyTable.from_function(4, lambda a, b: a ^ b)


def _compose(p, q):
    # (p*q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def symmetric3() -> CayleyTable:
    return table_from_elements(sorted(permutations(range(3))), _compose)


def dihedral_group(k: int) -> CayleyTable:
    """Dihedral group of order ``2k``; ``(s, r)`` encodes reflection^s * rotation^r."""

    def mul(x, y):
        s1, r1 = x
        s2, r2 = y
        return ((s1 + s2) % 2, ((-r1 if s2 else r1) + r2) % k)

    return table_from_elements(list(product(range(2), range(k))), mul)


def quaternion_group() -> CayleyTable:
    # Units of the quaternions as (sign, axis), axis 0 = 1, 1 = i, 2 = j, 3 = k.
    prod_table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def mul(x, y):
        s, a = prod_table[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    elements = [(1, 0), (-1, 0), (1, 1), (-1, 1), (1, 2), (-1, 2), (1, 3), (-1, 3)]
    return table_from_elements(elements, mul)


def direct_product(t1: CayleyTable, t2: CayleyTable) -> CayleyTable:
    n2 = t2.order
    e1, e2 = t1.entries, t2.entries
    return CayleyTable.from_function(
        t1.order * n2,
        lambda a, b: int(e1[a // n2, b // n2]) * n2 + int(e2[a % n2, b % n2]),
    )


def builtin_groups() -> dict[str, CayleyTable]:
    """Named group tables: Z1..Z8, K4, S3, D4, Q8 and the remaining order-8 abelian groups."""
    out = {f"Z{n}": cyclic_group(n) for n in range(1, 9)}
    out["K4"] = klein_group()
    out["S3"] = symmetric3()
    out["D4"] = dihedral_group(4)
    out["Q8"] = quaternion_group()
    out["Z4xZ2"] = direct_product(cyclic_group(4), cyclic_group(2))
    out["Z2^3"] = direct_product(klein_group(), cyclic_group(2))
    return out
