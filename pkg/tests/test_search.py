import json

import numpy as np
import pytest

from gyrolab.gyro import NotAGyrogroupError, validate_gyrogroup
from gyrolab.kernel import DEFAULT_KERNEL, KERNELS, get_kernel
from gyrolab.morphisms import canonical_form
from gyrolab.properties import analyze, is_gyrocommutative
from gyrolab.search import (
    NotAGroupError,
    SearchIncompleteError,
    enumerate_gyrogroups,
    from_group,
    manifest,
    naive_gyrogroup_classes,
    run_search,
    split_tasks,
    standard_row,
    write_corpus,
)
from gyrolab.table import CayleyTable, parse_table, read_table

needs_cython = pytest.mark.skipif("cython" not in KERNELS, reason="compiled kernel not built")

# number of groups of order n, a standard group-theory fact
GROUP_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5}


def classes_without_symmetry_breaking(n):
    """Search with only the identity row fixed, then dedupe the leaves."""
    leaves, _, exhausted = get_kernel()(n, (tuple(range(n)),) + (None,) * (n - 1), 10**9)
    assert not exhausted
    keys = set()
    for leaf in set(leaves):
        t = CayleyTable(np.frombuffer(leaf, dtype=np.uint8).reshape(n, n))
        try:
            keys.add(canonical_form(validate_gyrogroup(t)).key())
        except NotAGyrogroupError:
            pass
    return keys


def test_standard_row():
    assert standard_row(4, 4) == (1, 2, 3, 0)
    assert standard_row(4, 2) == (1, 0, 3, 2)
    assert standard_row(5, 2) == (1, 0, 3, 2, 4)


def test_search_counts_and_groups(searches):
    for n, res in searches.items():
        assert res.complete
        assert sum(res.groups) == GROUP_COUNTS[n]
    # regression pin for the census this search derives
    assert [len(searches[n].classes) for n in range(1, 9)] == [1, 1, 1, 2, 1, 2, 1, 11]


def test_search_output_is_canonical_and_sorted(searches):
    for res in searches.values():
        keys = [t.key() for t in res.classes]
        assert keys == sorted(set(keys))
        for t in res.classes:
            assert canonical_form(validate_gyrogroup(t)) == t


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_matches_naive_oracle(searches, n):
    assert [t.key() for t in naive_gyrogroup_classes(n)] == [t.key() for t in searches[n].classes]


@pytest.mark.slow
def test_matches_naive_oracle_order_6(searches):
    assert [t.key() for t in naive_gyrogroup_classes(6)] == [t.key() for t in searches[6].classes]


@pytest.mark.parametrize("n", [4, 6, 7])
def test_symmetry_breaking_loses_nothing(searches, n):
    assert classes_without_symmetry_breaking(n) == {t.key() for t in searches[n].classes}


@pytest.mark.slow
@needs_cython
def test_symmetry_breaking_loses_nothing_order_8(searches):
    assert classes_without_symmetry_breaking(8) == {t.key() for t in searches[8].classes}


@needs_cython
@pytest.mark.parametrize("n", [1, 2, 4, 6, 8, 9])
def test_kernels_agree(n):
    tasks, _ = split_tasks(n, 10**8)
    for task in tasks:
        py = KERNELS["python"](n, task.prefix, task.budget)
        cy = KERNELS["cython"](n, task.prefix, task.budget)
        assert py == cy


@needs_cython
def test_kernels_agree_under_budget():
    prefix = (tuple(range(10)),) + (None,) * 9
    assert KERNELS["python"](10, prefix, 3000) == KERNELS["cython"](10, prefix, 3000)
    assert KERNELS["python"](10, prefix, 3000)[2]


def test_budget_exhaustion_is_reported():
    res = run_search(8, budget=50)
    assert not res.complete
    with pytest.raises(SearchIncompleteError):
        enumerate_gyrogroups(8, budget=50)


def test_python_kernel_gives_same_result(searches):
    res = run_search(8, kernel="python")
    assert [t.key() for t in res.classes] == [t.key() for t in searches[8].classes]
    assert res.nodes == searches[8].nodes


def test_order_bound():
    with pytest.raises(ValueError):
        run_search(9)
    with pytest.raises(ValueError):
        run_search(0)
    with pytest.raises(ValueError):
        get_kernel("fortran")


def test_order_9_and_10_above_default_bound(searches):
    nine = enumerate_gyrogroups(9, bound=10)
    assert len(nine) == 2
    # orders 4 and 9 are squares of primes: only groups appear
    assert all(validate_gyrogroup(t).is_group() for t in nine + searches[4].classes)
    assert len(enumerate_gyrogroups(10, bound=10)) == 2


def test_no_leaf_fails_validation(searches):
    # the forcing rules are sound: every surviving full table is a gyrogroup
    assert all(res.rejected == 0 for res in searches.values())


def test_from_group(groups, G8):
    assert from_group(groups["Q8"].table).is_group()
    S3 = from_group(groups["S3"].table)
    assert (S3.gyrs == np.arange(6)).all() and not is_gyrocommutative(S3)
    assert "prime-order-cyclic" in analyze(from_group(groups["Z7"].table)).classification_notes
    with pytest.raises(NotAGroupError):
        from_group(G8.table)
    with pytest.raises(NotAGroupError):
        from_group(parse_table("2\n0 1\n1 1\n"))


def test_parallel_run_is_identical(searches):
    res = run_search(8, jobs=2)
    assert manifest(res) == manifest(searches[8])


def test_write_corpus(tmp_path, searches):
    res = searches[8]
    path = write_corpus(res, tmp_path / "out")
    m = json.loads(path.read_text())
    assert m["order"] == 8 and m["complete"]
    assert m["class_count"] == 11 and m["group_count"] == 5 and m["proper_count"] == 6
    assert "not a published census" in m["census_source"]
    for entry, t in zip(m["classes"], res.classes):
        assert read_table(tmp_path / "out" / entry["file"]) == t
        G = validate_gyrogroup(t)
        assert entry["is_group"] == G.is_group()
        assert entry["element_orders"] == sorted(G.element_orders())


def test_default_kernel_is_known():
    assert DEFAULT_KERNEL in KERNELS
