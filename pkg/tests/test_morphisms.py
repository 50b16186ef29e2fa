from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gyrolab.gyro import validate_gyrogroup
from gyrolab.morphisms import (
    NotNormalError,
    all_homomorphisms,
    canonical_form,
    check_homomorphism,
    find_isomorphism,
    image_gyrogroup,
    is_normal,
    normal_quotient,
    quotient,
    set_sum,
)
from gyrolab.search import _all_loops
from gyrolab.subgyro import all_subgyrogroups, restrict, subset
from gyrolab.table import parse_table


def brute_homomorphism_count(G, H):
    n, m = G.order, H.order
    ge, he = G.entries, H.entries
    count = 0
    for f in product(range(m), repeat=n):
        f = np.asarray(f)
        if (f[ge] == he[np.ix_(f, f)]).all():
            count += 1
    return count


def sub_gyrogroup(G, members):
    """(gyrogroup, label map) for a subgyrogroup given by parent labels."""
    table, m = restrict(G, members)
    return validate_gyrogroup(table), {x: i for i, x in enumerate(m)}


def first_isomorphism_holds(h):
    q = quotient(h.source, h.kernel)
    return find_isomorphism(q.quotient, image_gyrogroup(h)) is not None


def test_z4_to_z2(groups):
    h = check_homomorphism(groups["Z4"], groups["Z2"], [0, 1, 0, 1])
    assert h.is_homomorphism
    assert h.kernel.members == (0, 2)
    assert h.to_json() == [0, 1, 0, 1]
    assert not check_homomorphism(groups["Z4"], groups["Z2"], [0, 1, 1, 0]).is_homomorphism


def test_identity_and_constant_maps(corpus):
    for G in corpus.values():
        n = G.order
        ident = check_homomorphism(G, G, range(n))
        assert ident.is_homomorphism and ident.kernel.members == (0,)
        assert ident.is_bijective()
        const = check_homomorphism(G, G, [0] * n)
        assert const.is_homomorphism and const.kernel.members == tuple(range(n))


def test_non_total_map_is_rejected(groups):
    with pytest.raises(ValueError):
        check_homomorphism(groups["Z4"], groups["Z2"], [0, 1, 0])
    with pytest.raises(ValueError):
        check_homomorphism(groups["Z4"], groups["Z2"], [0, 1, 0, 2])


def test_kernels_are_gyration_invariant(corpus):
    small = [G for G in corpus.values() if G.order <= 6]
    for G in small:
        for H in small:
            for h in all_homomorphisms(G, H):
                k = np.asarray(h.kernel.members)
                assert h.kernel.is_subgyrogroup
                assert set(G.gyrs[:, :, k].ravel().tolist()) <= set(k.tolist())


def test_homomorphism_counts_match_brute_force(corpus):
    small = [G for G in corpus.values() if G.order <= 5]
    for G in small:
        for H in small:
            assert len(all_homomorphisms(G, H)) == brute_homomorphism_count(G, H)


def test_known_homomorphism_counts(groups):
    assert len(all_homomorphisms(groups["S3"], groups["Z6"])) == 2
    assert len(all_homomorphisms(groups["Z6"], groups["S3"])) == 6
    assert len(all_homomorphisms(groups["K4"], groups["K4"])) == 16


def test_quotient_examples(groups, corpus):
    Z4 = groups["Z4"]
    assert is_normal(Z4, subset(Z4, [0, 2]))
    q = quotient(Z4, subset(Z4, [0, 2]))
    assert q.cosets == ((0, 2), (1, 3))
    assert q.quotient.table == groups["Z2"].table
    assert q.projection.kernel.members == (0, 2)
    for G in corpus.values():
        n = G.order
        trivial = quotient(G, subset(G, [0]))
        assert find_isomorphism(trivial.quotient, G) is not None
        assert quotient(G, subset(G, range(n))).quotient.order == 1


def test_non_normal_subgroup_of_s3(groups):
    S3 = groups["S3"]
    involutions = [s for s in all_subgyrogroups(S3) if len(s) == 2]
    assert len(involutions) == 3
    for s in involutions:
        assert not is_normal(S3, s)
        with pytest.raises(NotNormalError):
            quotient(S3, s)
    x = S3.element_orders().index(3)
    with pytest.raises(ValueError):
        normal_quotient(S3, subset(S3, [0, x]))


def test_normality_agrees_with_kernels(corpus):
    """A subgyrogroup is normal exactly when it is the kernel of some homomorphism."""
    small = [G for G in corpus.values() if G.order <= 6]
    for G in small:
        kernels = {h.kernel.members for H in small for h in all_homomorphisms(G, H)}
        for s in all_subgyrogroups(G):
            if is_normal(G, s):
                q = quotient(G, s)
                assert q.projection.is_homomorphism
                assert q.projection.kernel.members == s.members
            else:
                assert s.members not in kernels


def test_quotient_operation_is_representative_independent(corpus):
    for G in corpus.values():
        for s in all_subgyrogroups(G):
            q = normal_quotient(G, s)
            if q is None:
                continue
            index = {x: i for i, c in enumerate(q.cosets) for x in c}
            for a in range(G.order):
                for b in range(G.order):
                    assert q.quotient.add(index[a], index[b]) == index[G.add(a, b)]


def test_z4_not_isomorphic_to_k4(groups):
    assert find_isomorphism(groups["Z4"], groups["K4"]) is None
    assert find_isomorphism(groups["D4"], groups["Q8"]) is None


def test_self_isomorphism(corpus):
    for G in corpus.values():
        m = find_isomorphism(G, G)
        assert m is not None and m.is_bijective()
        assert [G.element_orders()[a] for a in range(G.order)] == [G.element_orders()[m(a)] for a in range(G.order)]


def test_first_isomorphism_theorem_small_pool(corpus):
    small = [G for G in corpus.values() if G.order <= 6]
    count = 0
    for G in small:
        for H in small:
            for h in all_homomorphisms(G, H):
                assert first_isomorphism_holds(h)
                count += 1
    assert count > 0


def test_first_isomorphism_theorem_for_projections_at_order_8(corpus):
    for (n, _), G in corpus.items():
        if n != 8:
            continue
        for s in all_subgyrogroups(G):
            q = normal_quotient(G, s)
            if q is not None:
                assert q.projection.is_homomorphism
                assert first_isomorphism_holds(q.projection)


def second_isomorphism_holds(G, A, B):
    AB = set_sum(G, A, B)
    if not subset(G, AB).is_subgyrogroup:
        return False
    meet = tuple(sorted(set(A.members) & set(B.members)))
    GA, la = sub_gyrogroup(G, A.members)
    q1 = normal_quotient(GA, subset(GA, [la[x] for x in meet]))
    GAB, lab = sub_gyrogroup(G, AB)
    q2 = normal_quotient(GAB, subset(GAB, [lab[x] for x in B.members]))
    if q1 is None or q2 is None:
        return False
    return find_isomorphism(q2.quotient, q1.quotient) is not None


def test_second_isomorphism_theorem(corpus):
    checked = 0
    for G in corpus.values():
        subs = all_subgyrogroups(G)
        normals = [B for B in subs if is_normal(G, B)]
        for A in subs:
            for B in normals:
                assert second_isomorphism_holds(G, A, B), (A, B)
                checked += 1
    assert checked > 0


def test_canonical_form_of_z2(groups):
    z2 = parse_table("2\n0 1\n1 0\n")
    assert canonical_form(groups["Z2"]) == z2


def test_canonical_form_of_relabeled_z4(groups):
    Z4 = groups["Z4"]
    forms = {canonical_form(validate_gyrogroup(Z4.table.relabel((0,) + p))).key() for p in permutations((1, 2, 3))}
    assert forms == {canonical_form(Z4).key()}


def test_order_4_has_two_canonical_forms():
    forms = set()
    for t in _all_loops(4):
        try:
            G = validate_gyrogroup(t)
        except ValueError:
            continue
        forms.add(canonical_form(G).key())
    assert len(forms) == 2


def test_canonical_form_is_idempotent_and_separates_classes(corpus):
    keys = {}
    for (n, i), G in corpus.items():
        c = canonical_form(G)
        assert canonical_form(validate_gyrogroup(c)) == c
        assert find_isomorphism(G, validate_gyrogroup(c)) is not None
        keys.setdefault(n, set()).add(c.key())
    counts = {n: sum(1 for (m, _) in corpus if m == n) for n in keys}
    assert all(len(keys[n]) == counts[n] for n in keys)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_canonical_form_is_relabeling_invariant(corpus, data):
    key = data.draw(st.sampled_from(sorted(corpus)))
    G = corpus[key]
    p = data.draw(st.permutations(list(range(1, G.order))))
    H = validate_gyrogroup(G.table.relabel([0] + list(p)))
    assert canonical_form(H) == canonical_form(G)
    iso = find_isomorphism(G, H)
    assert iso is not None
    assert iso.is_bijective() and check_homomorphism(G, H, iso.map).is_homomorphism
