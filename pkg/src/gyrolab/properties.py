"""Theorem-level checks on finite gyrogroups.

Every check is extensional: conclusions are recomputed on the instance,
never assumed. :func:`analyze` raises :class:`TheoremCheckFailed` (carrying
the offending table) when a conclusion that must hold does not.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .gyro import Gyrogroup, scalar
from .morphisms import normal_quotient
from .subgyro import DEFAULT_ENUMERATION_BOUND, SubSet, all_subgyrogroups
from .table import CayleyTable, serialize_table, validate_loop

__all__ = [
    "AnalysisReport",
    "LagrangeReport",
    "STRUCTURE_LAWS",
    "StructureReport",
    "TheoremCheckFailed",
    "analyze",
    "check_lagrange",
    "check_structure",
    "foguel_ungar_witness",
    "has_scp",
    "has_wcp",
    "is_gyrocommutative",
    "left_bol_violation",
    "prime_factors",
]

STRUCTURE_LAWS = ("composition-law", "left-bol", "left-power-alternative", "power-associative")


class TheoremCheckFailed(AssertionError):
    """A conclusion that must hold failed: a counterexample or a bug."""

    def __init__(self, tag: str, table: CayleyTable, detail: str = ""):
        self.tag = tag
        self.table = table
        self.detail = detail
        super().__init__(
            f"counterexample or bug: {tag} failed{': ' + detail if detail else ''}\n"
            + serialize_table(table)
        )


def prime_factors(n: int) -> list[int]:
    """Prime factors with multiplicity, ascending."""
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_gyrocommutative(G: Gyrogroup) -> bool:
    e = G.entries
    n = G.order
    idx = np.arange(n)
    return bool((e == G.gyrs[idx[:, None], idx[None, :], e.T]).all())


def left_bol_violation(t: CayleyTable) -> Optional[tuple[int, int, int]]:
    """First ``(a, b, c)`` with ``a + (b + (a + c)) != (a + (b + a)) + c``."""
    e = t.entries
    n = t.order
    idx = np.arange(n)
    A = idx[:, None, None]
    B = idx[None, :, None]
    C = idx[None, None, :]
    lhs = e[A, e[B, e[A, C]]]
    rhs = e[e[A, e[B, A]], C]
    bad = np.argwhere(lhs != rhs)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


@dataclass
class StructureReport:
    holds: list[str]
    failures: dict[str, tuple[int, ...]]
    validated: bool

    @property
    def internal_error(self) -> bool:
        """A validated gyrogroup failing any law means a bug in this library."""
        return self.validated and bool(self.failures)


def _raw_parts(t: CayleyTable) -> tuple[np.ndarray, np.ndarray]:
    e = t.entries
    inv = np.argmax(e == 0, axis=1)
    n = t.order
    a = np.arange(n)[:, None, None]
    g = e[inv[e[:, :, None]], e[a, e[None, :, :]]]
    return inv, g


def check_structure(G: Union[Gyrogroup, CayleyTable]) -> StructureReport:
    """Verify the composition law, left Bol identity, left power alternative
    and power associativity.

    Accepts a raw loop table too, in which case gyrations come from the
    gyrator identity with right inverses and failures are plain findings.
    """
    validated = isinstance(G, Gyrogroup)
    if validated:
        t, g = G.table, G.gyrs
    else:
        t = G
        if not validate_loop(t).valid:
            raise ValueError("structure checks need a loop table")
        _, g = _raw_parts(t)
    e = t.entries
    n = t.order
    idx = np.arange(n)
    failures: dict[str, tuple[int, ...]] = {}

    # L_a L_b c == L_{a+b} gyr[a,b] c
    lhs = e[idx[:, None, None], e[None, :, :]]
    rhs = e[e[:, :, None], g]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        failures["composition-law"] = tuple(int(v) for v in bad[0])

    w = left_bol_violation(t)
    if w is not None:
        failures["left-bol"] = w

    # powers[m, a] = m.a by the left recursion, 0 <= m <= n
    powers = np.zeros((n + 1, n), dtype=np.int64)
    for m in range(1, n + 1):
        powers[m] = e[idx, powers[m - 1]]
    # L_a^m as permutations, compared to L_{m.a}
    lp = np.broadcast_to(idx, (n, n)).copy()  # lp[a] = L_a^m
    for m in range(0, n + 1):
        bad = np.argwhere(lp != e[powers[m]])
        if len(bad):
            a, c = bad[0]
            failures.setdefault("left-power-alternative", (int(m), int(a), int(c)))
            break
        lp = e[idx[:, None], lp]

    for m in range(n + 1):
        for k in range(n + 1 - m):
            bad = np.nonzero(e[powers[m], powers[k]] != powers[m + k])[0]
            if len(bad):
                failures.setdefault("power-associative", (int(bad[0]), m, k))
                break
        if "power-associative" in failures:
            break

    holds = [law for law in STRUCTURE_LAWS if law not in failures]
    return StructureReport(holds, failures, validated)


@dataclass
class LagrangeReport:
    ok: bool
    order: int
    evidence: list[dict]

    def to_dict(self) -> dict:
        return {"ok": self.ok, "order": self.order, "evidence": self.evidence}


def check_lagrange(
    G: Gyrogroup,
    bound: int = DEFAULT_ENUMERATION_BOUND,
    subs: Optional[list[SubSet]] = None,
) -> LagrangeReport:
    """Does every subgyrogroup order divide ``|G|``? Evidence lists each one."""
    n = G.order
    subs = all_subgyrogroups(G, bound) if subs is None else subs
    evidence = []
    for H in subs:
        k = len(H)
        evidence.append(
            {
                "members": list(H.members),
                "size": k,
                "divides": n % k == 0,
                "cofactor": n // k if n % k == 0 else None,
            }
        )
    return LagrangeReport(all(ev["divides"] for ev in evidence), n, evidence)


def _wcp(size: int, member_orders) -> bool:
    present = set(member_orders)
    return all(p in present for p in set(prime_factors(size)))


def has_wcp(G: Gyrogroup) -> bool:
    """Each prime dividing ``|G|`` is the order of some element (vacuous at 1)."""
    return _wcp(G.order, G.element_orders())


def has_scp(
    G: Gyrogroup,
    bound: int = DEFAULT_ENUMERATION_BOUND,
    subs: Optional[list[SubSet]] = None,
) -> bool:
    """Weak Cauchy property for every subgyrogroup.

    Element orders are read in ``G``; the order of ``a`` in ``H`` is the same
    because ``<a>`` lies inside ``H``.
    """
    orders = G.element_orders()
    subs = all_subgyrogroups(G, bound) if subs is None else subs
    return all(_wcp(len(H), (orders[a] for a in H.members)) for H in subs)


def foguel_ungar_witness(G: Gyrogroup, subs: Optional[list[SubSet]] = None):
    """Smallest normal subgroup ``N`` with gyrocommutative ``G/N``, with its quotient."""
    subs = all_subgyrogroups(G, max(G.order, DEFAULT_ENUMERATION_BOUND)) if subs is None else subs
    for N in subs:
        if not N.is_subgroup:
            continue
        q = normal_quotient(G, N)
        if q is not None and is_gyrocommutative(q.quotient):
            return N, q
    return None


@dataclass
class AnalysisReport:
    order: int
    element_orders: list[int]
    subgyrogroups: list[dict]
    is_group: bool
    is_gyrocommutative: bool
    lagrange_ok: bool
    wcp: bool
    scp: bool
    normal_subgroup_witness: Optional[list[int]] = None
    generator_pair: Optional[tuple[int, int]] = None
    classification_notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "element_orders": self.element_orders,
            "subgyrogroups": self.subgyrogroups,
            "flags": {
                "is_group": self.is_group,
                "is_gyrocommutative": self.is_gyrocommutative,
                "lagrange_ok": self.lagrange_ok,
                "wcp": self.wcp,
                "scp": self.scp,
            },
            "classification_notes": self.classification_notes,
            "normal_subgroup_witness": self.normal_subgroup_witness,
            "generator_pair": list(self.generator_pair) if self.generator_pair else None,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _two_generator_cover(G: Gyrogroup, a: int, b: int, p: int, q: int) -> int:
    elems = {G.add(scalar(G, m, a), scalar(G, k, b)) for m in range(p) for k in range(q)}
    return len(elems)


def analyze(G: Gyrogroup, bound: int = DEFAULT_ENUMERATION_BOUND, strict: bool = True) -> AnalysisReport:
    """Full report, re-verifying every theorem whose hypothesis matches ``|G|``.

    With ``strict`` a failed conclusion raises :class:`TheoremCheckFailed`;
    otherwise it is recorded as a ``FAILED:`` note.
    """
    n = G.order
    orders = G.element_orders()
    subs = all_subgyrogroups(G, bound)
    quotients = {H.members: normal_quotient(G, H) for H in subs}
    group = G.is_group()
    gyrocomm = is_gyrocommutative(G)
    lag = check_lagrange(G, bound, subs)
    wcp = has_wcp(G)
    scp = has_scp(G, bound, subs)
    notes: list[str] = []

    def verify(tag: str, ok: bool, detail: str = ""):
        if ok:
            notes.append(tag)
        elif strict:
            raise TheoremCheckFailed(tag, G.table, detail)
        else:
            notes.append(f"FAILED:{tag}")

    verify("lagrange", lag.ok)
    verify(
        "element-order-divides",
        all(n % k == 0 and scalar(G, n, a) == 0 for a, k in enumerate(orders)),
    )

    factors = prime_factors(n)
    pair = None
    if len(factors) == 1:
        verify("prime-order-cyclic", group and n in orders)
    elif len(factors) == 2:
        p, q = factors
        verify("pq-strong-cauchy", scp)
        if p == q:
            verify("p2-group", group)
        else:
            a = orders.index(p) if p in orders else None
            b = orders.index(q) if q in orders else None
            ok = a is not None and b is not None and _two_generator_cover(G, a, b, p, q) == n
            if a is not None and b is not None:
                pair = (a, b)
            verify("pq-two-generators", ok, f"elements of order {p} and {q}: {pair}")
    elif len(factors) == 3 and not gyrocomm:
        if len(set(factors)) == 1:
            verify("p3-nongyrocommutative-strong-cauchy", scp)
        verify("pqr-nongyrocommutative-strong-cauchy", scp)

    fu = None
    for H in subs:
        q = quotients[H.members]
        if H.is_subgroup and q is not None and is_gyrocommutative(q.quotient):
            fu = (H, q)
            break
    verify("normal-subgroup-gyrocommutative-quotient", fu is not None)
    if fu is not None and len(factors) == 3 and len(set(factors)) == 1 and not gyrocomm:
        # the witness and its quotient have prime or prime-square order, hence are groups
        N, q = fu
        verify("p3-witness-and-quotient-are-groups", len(N) > 1 and q.quotient.is_group())

    return AnalysisReport(
        order=n,
        element_orders=orders,
        subgyrogroups=[
            {
                "members": list(H.members),
                "size": len(H),
                "is_subgroup": bool(H.is_subgroup),
                "is_normal": quotients[H.members] is not None,
            }
            for H in subs
        ],
        is_group=group,
        is_gyrocommutative=gyrocomm,
        lagrange_ok=lag.ok,
        wcp=wcp,
        scp=scp,
        normal_subgroup_witness=list(fu[0].members) if fu else None,
        generator_pair=pair,
        classification_notes=notes,
    )
