"""Exhaustive enumeration of gyrogroups of small order up to isomorphism.

The table is filled one row (left translation) at a time with identity
fixed at 0. Each fixed row is checked against the Latin constraints and
pushed through the left Bol and left inverse identities, which force
further rows; conflicting forced rows prune the branch. Complete tables are
validated against every gyrogroup axiom and deduplicated by canonical form.

Symmetry breaking: any gyrogroup of order ``n > 1`` has an isomorphic copy in
which element 1 has some order ``m > 1`` and the left translation by 1 is the
standard permutation whose cycles are ``(0 1 .. m-1)(m .. 2m-1)...``. So only
those candidates for row 1 are tried; ones that cannot close (for instance a
short last cycle) die in the forcing step.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .gyro import Gyrogroup, NotAGyrogroupError, validate_gyrogroup
from .kernel import DEFAULT_KERNEL, expand_prefix, get_kernel
from .morphisms import canonical_form
from .properties import is_gyrocommutative
from .table import CayleyTable, validate_loop, write_table

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_ORDER_BOUND",
    "NotAGroupError",
    "SearchIncompleteError",
    "SearchResult",
    "SearchTask",
    "enumerate_gyrogroups",
    "from_group",
    "manifest",
    "naive_gyrogroup_classes",
    "run_search",
    "write_corpus",
]

DEFAULT_ORDER_BOUND = 8
DEFAULT_BUDGET = 10**8


class SearchIncompleteError(RuntimeError):
    """The node budget ran out before the search space was exhausted."""


class NotAGroupError(ValueError):
    pass


Row = Optional[tuple[int, ...]]


@dataclass(frozen=True)
class SearchTask:
    order: int
    prefix: tuple[Row, ...]
    budget: Optional[int] = None


@dataclass
class SearchResult:
    order: int
    classes: list[CayleyTable]
    complete: bool
    nodes: int
    leaves: int
    rejected: int
    budget: int
    kernel: str = DEFAULT_KERNEL
    groups: list[bool] = field(default_factory=list)


def standard_row(n: int, m: int) -> tuple[int, ...]:
    """Left translation by 1 with consecutive cycles of length ``m``."""
    return tuple(i + 1 if (i + 1) % m and i + 1 < n else (i // m) * m for i in range(n))


def root_prefixes(n: int) -> list[tuple[Row, ...]]:
    ident = tuple(range(n))
    if n == 1:
        return [(ident,)]
    return [(ident, standard_row(n, m)) + (None,) * (n - 2) for m in range(2, n + 1)]


def split_tasks(n: int, budget: int) -> tuple[list[SearchTask], int]:
    """Root prefixes branched one level, giving independent subtrees."""
    tasks = []
    tried = 0
    for prefix in root_prefixes(n):
        children, k = expand_prefix(n, prefix)
        tried += k
        tasks.extend(SearchTask(n, child, budget) for child in children)
    return tasks, tried


def _run_task(args):
    task, kernel = args
    return get_kernel(kernel)(task.order, task.prefix, task.budget)


def run_search(
    n: int,
    *,
    bound: int = DEFAULT_ORDER_BOUND,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    kernel: Optional[str] = None,
) -> SearchResult:
    """Enumerate gyrogroup classes of order ``n``; never truncates silently."""
    if not 1 <= n <= bound:
        raise ValueError(f"order {n} outside 1..{bound}")
    kernel = kernel or DEFAULT_KERNEL
    get_kernel(kernel)
    tasks, nodes = split_tasks(n, budget)
    work = [(t, kernel) for t in tasks]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(_run_task, work, chunksize=max(1, len(work) // (4 * jobs))))
    else:
        outputs = [_run_task(w) for w in work]

    complete = True
    leaves: list[bytes] = []
    for out_leaves, k, exhausted in outputs:
        nodes += k
        complete &= not exhausted
        leaves.extend(out_leaves)
    complete &= nodes <= budget

    seen: set[bytes] = set()
    classes: dict[bytes, CayleyTable] = {}
    rejected = 0
    for leaf in leaves:
        if leaf in seen:
            continue
        seen.add(leaf)
        t = CayleyTable(np.frombuffer(leaf, dtype=np.uint8).reshape(n, n))
        try:
            G = validate_gyrogroup(t)
        except NotAGyrogroupError:
            rejected += 1
            continue
        c = canonical_form(G)
        classes.setdefault(c.key(), c)
    ordered = [classes[k] for k in sorted(classes)]
    return SearchResult(
        order=n,
        classes=ordered,
        complete=complete,
        nodes=nodes,
        leaves=len(leaves),
        rejected=rejected,
        budget=budget,
        kernel=kernel,
        groups=[validate_gyrogroup(c).is_group() for c in ordered],
    )


def enumerate_gyrogroups(n: int, **kw) -> list[CayleyTable]:
    """Canonical tables of all gyrogroup classes of order ``n``, sorted."""
    res = run_search(n, **kw)
    if not res.complete:
        raise SearchIncompleteError(
            f"order {n}: node budget {res.budget} exhausted after {res.nodes} nodes"
        )
    return res.classes


def from_group(t: CayleyTable) -> Gyrogroup:
    """Validate an associative loop table as a gyrogroup with trivial gyrations."""
    if not validate_loop(t).valid:
        raise NotAGroupError("not a loop with identity 0")
    e = t.entries
    idx = np.arange(t.order)
    bad = np.argwhere(e[e[:, :, None], idx[None, None, :]] != e[idx[:, None, None], e[None, :, :]])
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise NotAGroupError(f"not associative: ({a}+{b})+{c} != {a}+({b}+{c})")
    G = validate_gyrogroup(t)
    assert G.is_group()
    return G


def manifest(res: SearchResult) -> dict:
    """Deterministic summary of a search (no timings, no worker counts)."""
    entries = []
    for i, t in enumerate(res.classes):
        G = validate_gyrogroup(t)
        entries.append(
            {
                "index": i,
                "file": f"g{res.order}_{i}.gyt",
                "is_group": G.is_group(),
                "is_gyrocommutative": is_gyrocommutative(G),
                "element_orders": sorted(G.element_orders()),
            }
        )
    return {
        "order": res.order,
        "complete": res.complete,
        "class_count": len(res.classes),
        "group_count": sum(e["is_group"] for e in entries),
        "proper_count": sum(not e["is_group"] for e in entries),
        "census_source": "derived by this exhaustive search; not a published census",
        "nodes": res.nodes,
        "budget": res.budget,
        "classes": entries,
    }


def write_corpus(res: SearchResult, out_dir) -> Path:
    """Write ``g{n}_{i}.gyt`` per class and ``manifest.json`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, t in enumerate(res.classes):
        write_table(out / f"g{res.order}_{i}.gyt", t)
    path = out / "manifest.json"
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest(res), fh, indent=2)
        fh.write("\n")
    return path


def _all_loops(n: int):
    """Every loop table on 0..n-1 with identity 0 (normalized Latin squares)."""
    t = [[-1] * n for _ in range(n)]
    for i in range(n):
        t[0][i] = i
        t[i][0] = i
    cells = [(r, c) for r in range(1, n) for c in range(1, n)]

    def rec(k):
        if k == len(cells):
            yield CayleyTable(t)
            return
        r, c = cells[k]
        row = set(t[r][:c])
        col = {t[i][c] for i in range(r)}
        for v in range(n):
            if v not in row and v not in col:
                t[r][c] = v
                yield from rec(k + 1)
        t[r][c] = -1

    yield from rec(0)


def naive_gyrogroup_classes(n: int) -> list[CayleyTable]:
    """Independent oracle: all loops, filtered by the axioms, deduplicated."""
    classes = {}
    for t in _all_loops(n):
        try:
            G = validate_gyrogroup(t)
        except NotAGyrogroupError:
            continue
        c = canonical_form(G)
        classes.setdefault(c.key(), c)
    return [classes[k] for k in sorted(classes)]
