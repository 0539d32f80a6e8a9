from fractions import Fraction

import pytest

from sliceburnside.constants import (
    classical_deflation_constant,
    complement_count,
    complement_count_formula_check,
    deflation_constant,
    deflation_constant_is_nonzero,
    deflation_idempotent_scalar,
    deflation_vanishes_predicted,
    elementary_abelian_classical_value,
    elementary_abelian_supplement_value,
    is_b_group,
    is_t_slice,
    is_t_slice_of,
    minimal_normal_subgroups,
    nontrivial_normal_subgroups,
    supplement_moebius_sum,
)
from sliceburnside.groups import (
    GroupError,
    all_subgroups,
    cyclic_group,
    elementary_abelian,
    frattini,
    group_from_spec,
    normalizer,
    quaternion_group,
)

P_GROUP_SPECS = ["cyclic:2", "cyclic:4", "cyclic:8", "elab:2^2", "elab:2^3",
                 "abelian:4x2", "dihedral:8", "cyclic:9", "elab:3^2",
                 "cyclic:27", "abelian:9x3", "mod:3", "heis:3"]


def _subgroup_of_size(g, size):
    return next(s for s in all_subgroups(g).subgroups if len(s) == size)


def test_deflation_by_trivial_subgroup_is_one():
    for spec in ["cyclic:6", "dihedral:8", "heis:3"]:
        g = group_from_spec(spec)
        for s in all_subgroups(g).subgroups:
            assert deflation_constant(g, s.members, (g.identity,)) == 1


def test_prime_cyclic_constant_vanishes():
    for p in (2, 3, 5):
        cp = cyclic_group(p)
        assert deflation_constant(cp, (0,), tuple(range(p))) == 0


def test_supplement_sum_examples():
    d8 = group_from_spec("dihedral:8")
    full = tuple(range(8))
    for n in nontrivial_normal_subgroups(d8):
        assert supplement_moebius_sum(d8, full, n.members) == 1
    # only the whole group survives when the normal part is the Frattini
    phi = frattini(d8)
    for s in all_subgroups(d8).subgroups:
        assert supplement_moebius_sum(d8, s.members, phi.members) == 1
    e23 = elementary_abelian(2, 3)
    n2 = _subgroup_of_size(e23, 4)
    assert supplement_moebius_sum(e23, (0,), n2.members) == 3


def test_classical_constant_examples():
    e23 = elementary_abelian(2, 3)
    n1 = _subgroup_of_size(e23, 2)
    assert classical_deflation_constant(e23, n1.members) == -1
    assert elementary_abelian_classical_value(2, 3, 1) == -1
    v4 = elementary_abelian(2, 2)
    for n in nontrivial_normal_subgroups(v4):
        assert classical_deflation_constant(v4, n.members) == 0
    for g in [cyclic_group(6), group_from_spec("dihedral:8")]:
        assert classical_deflation_constant(g, (g.identity,)) == 1


def test_classical_equals_top_slice_constant():
    for spec in ["cyclic:8", "dihedral:8", "elab:3^2", "abelian:9x3"]:
        g = group_from_spec(spec)
        full = tuple(range(g.order))
        for n in nontrivial_normal_subgroups(g):
            assert deflation_constant(g, full, n.members) == (
                classical_deflation_constant(g, n.members)
            )


def test_two_prefactor_forms_agree():
    # the boxed normalizer-index prefactor equals the quotient-side form
    for spec in P_GROUP_SPECS:
        g = group_from_spec(spec)
        lat = all_subgroups(g)
        for s_idx in lat.class_reps:
            s = lat.subgroups[s_idx].members
            for n in nontrivial_normal_subgroups(g):
                from sliceburnside.constants import _product_members
                from sliceburnside.groups import quotient

                sn = _product_members(g, s, n.members)
                boxed = Fraction(
                    len(normalizer(g, sn)), len(sn) * len(normalizer(g, s))
                )
                q = quotient(g, n.members)
                sn_q = q.image_members(sn)
                other = Fraction(
                    len(normalizer(q.group, sn_q)) * len(n.members),
                    len(normalizer(g, s)) * len(sn),
                )
                assert boxed == other


def test_factorization_on_samples():
    from sliceburnside.constants import _product_members
    from sliceburnside.groups import Subgroup, subgroup_as_group

    for spec in ["dihedral:8", "abelian:9x3", "heis:3"]:
        g = group_from_spec(spec)
        lat = all_subgroups(g)
        for s_idx in lat.class_reps:
            s = lat.subgroups[s_idx].members
            emb = subgroup_as_group(Subgroup.from_members(g, s))
            back = {y: i for i, y in enumerate(emb.images)}
            for n in nontrivial_normal_subgroups(g):
                sn = _product_members(g, s, n.members)
                ratio = Fraction(
                    len(normalizer(g, sn)) // len(sn),
                    len(normalizer(g, s)) // len(s),
                )
                s_cap_n = tuple(sorted(back[x] for x in s if x in set(n.members)))
                assert deflation_constant(g, s, n.members) == ratio * (
                    classical_deflation_constant(emb.source, s_cap_n)
                    * supplement_moebius_sum(g, s, n.members)
                )


def test_transitivity_along_normal_chains():
    from sliceburnside.groups import quotient

    for spec in ["cyclic:8", "abelian:4x2", "mod:3"]:
        g = group_from_spec(spec)
        lat = all_subgroups(g)
        for n_idx in lat.normal:
            q = quotient(g, lat.subgroups[n_idx].members)
            for m_idx in lat.normal:
                if not lat.contains_pair(n_idx, m_idx):
                    continue
                for s_idx in lat.class_reps:
                    s = lat.subgroups[s_idx].members
                    from sliceburnside.constants import _product_members

                    sn_img = q.image_members(
                        _product_members(g, s, lat.subgroups[n_idx].members)
                    )
                    lhs = deflation_constant(g, s, lat.subgroups[m_idx].members)
                    rhs = deflation_constant(
                        g, s, lat.subgroups[n_idx].members
                    ) * deflation_constant(
                        q.group, sn_img, q.image_members(lat.subgroups[m_idx].members)
                    )
                    assert lhs == rhs


def test_complement_count_examples():
    c3 = cyclic_group(3)
    assert complement_count_formula_check(c3, (0, 1, 2)) == (0, 0)
    v4 = elementary_abelian(2, 2)
    n = _subgroup_of_size(v4, 2)
    assert complement_count_formula_check(v4, n.members) == (
        Fraction(-1, 2),
        Fraction(-1, 2),
    )
    e32 = elementary_abelian(3, 2)
    n3 = _subgroup_of_size(e32, 3)
    assert complement_count(e32, n3.members) == 3
    assert complement_count_formula_check(e32, n3.members) == (
        Fraction(-2, 3),
        Fraction(-2, 3),
    )
    c4 = cyclic_group(4)
    n2 = _subgroup_of_size(c4, 2)
    assert complement_count(c4, n2.members) == 0
    assert complement_count_formula_check(c4, n2.members) == (
        Fraction(1, 2),
        Fraction(1, 2),
    )


def test_complement_check_preconditions():
    d8 = group_from_spec("dihedral:8")
    with pytest.raises(GroupError):
        complement_count_formula_check(d8, tuple(range(8)))  # not minimal
    lat = all_subgroups(d8)
    non_normal = next(
        s for i, s in enumerate(lat.subgroups) if i not in lat.normal
    )
    with pytest.raises(GroupError):
        complement_count_formula_check(d8, non_normal.members)


def test_minimal_normal_subgroups():
    d8 = group_from_spec("dihedral:8")
    mins = minimal_normal_subgroups(d8)
    assert len(mins) == 1 and len(mins[0]) == 2  # the center
    v4 = elementary_abelian(2, 2)
    assert len(minimal_normal_subgroups(v4)) == 3


def test_b_group_classification_examples():
    assert is_b_group(cyclic_group(1))
    assert is_b_group(elementary_abelian(2, 2))
    assert is_b_group(elementary_abelian(3, 2))
    for spec in ["cyclic:2", "cyclic:4", "cyclic:9", "cyclic:27", "elab:2^3",
                 "mod:3", "heis:3", "dihedral:8"]:
        assert not is_b_group(group_from_spec(spec)), spec
    assert not is_b_group(quaternion_group())


def test_t_slice_examples():
    assert is_t_slice(cyclic_group(1), (0,))
    assert is_t_slice(cyclic_group(3), (0,))
    e32 = elementary_abelian(3, 2)
    assert is_t_slice(e32, tuple(range(9)))
    assert not is_t_slice(e32, _subgroup_of_size(e32, 3).members)
    e33 = elementary_abelian(3, 3)
    assert is_t_slice(e33, _subgroup_of_size(e33, 9).members)
    assert not is_t_slice(e33, _subgroup_of_size(e33, 3).members)


def test_t_slice_of_ambient_group():
    e33 = elementary_abelian(3, 3)
    nine = _subgroup_of_size(e33, 9)
    three = next(
        s for s in all_subgroups(e33).subgroups
        if len(s) == 3 and set(s.members) <= set(nine.members)
    )
    # (rank-2, rank-1) inside the ambient rank-3 group is not a T-slice
    assert not is_t_slice_of(e33, nine.members, three.members)
    assert is_t_slice_of(e33, nine.members, nine.members)


def test_vanishing_criterion_matches_constant():
    for spec in ["dihedral:8", "abelian:4x2", "heis:3", "mod:3"]:
        g = group_from_spec(spec)
        lat = all_subgroups(g)
        for s_idx in lat.class_reps:
            s = lat.subgroups[s_idx].members
            for n in nontrivial_normal_subgroups(g):
                predicted = deflation_vanishes_predicted(g, s, n.members)
                assert predicted == (deflation_constant(g, s, n.members) == 0)


def test_vanishing_criterion_rejects_non_p_groups():
    with pytest.raises(GroupError):
        deflation_vanishes_predicted(cyclic_group(6), (0,), (0, 3))


def test_fast_zero_test_matches_constant():
    for spec in ["dihedral:8", "abelian:9x3", "heis:3"]:
        g = group_from_spec(spec)
        lat = all_subgroups(g)
        for s_idx in lat.class_reps:
            s = lat.subgroups[s_idx].members
            for n in nontrivial_normal_subgroups(g):
                assert deflation_constant_is_nonzero(g, s, n.members) == (
                    deflation_constant(g, s, n.members) != 0
                )


def test_frattini_shortcut_matches_direct_path():
    for spec in ["cyclic:8", "elab:2^3", "dihedral:8", "mod:3", "heis:3"]:
        g = group_from_spec(spec)
        lat = all_subgroups(g)
        for s in lat.subgroups:
            for n in nontrivial_normal_subgroups(g):
                assert deflation_constant(g, s.members, n.members) == (
                    deflation_constant(
                        g, s.members, n.members, frattini_shortcut=True
                    )
                )


def test_supplement_closed_form_small_ranks():
    for p in (2, 3):
        for rank in (1, 2, 3):
            e = elementary_abelian(p, rank)
            lat = all_subgroups(e)
            for sub in lat.subgroups:
                if len(sub) == 1:
                    continue
                k = 0
                size = len(sub)
                while size > 1:
                    size //= p
                    k += 1
                assert supplement_moebius_sum(e, (0,), sub.members) == (
                    elementary_abelian_supplement_value(p, rank, k)
                )


def test_deflation_requires_normal_subgroup():
    d8 = group_from_spec("dihedral:8")
    lat = all_subgroups(d8)
    non_normal = next(
        s for i, s in enumerate(lat.subgroups) if i not in lat.normal
    )
    with pytest.raises(GroupError):
        deflation_constant(d8, (0,), non_normal.members)
    with pytest.raises(GroupError):
        deflation_idempotent_scalar(d8, tuple(range(8)), (0,), non_normal.members)
