from fractions import Fraction

import pytest

from sliceburnside import bisetops
from sliceburnside.constants import deflation_idempotent_scalar
from sliceburnside.groups import (
    GroupError,
    GroupIsomorphism,
    all_subgroups,
    automorphisms,
    cyclic_group,
    group_from_spec,
    quotient,
    slice_normalizer,
    subgroup_as_group,
)
from sliceburnside.ring import morphism_to_ring, slice_classes


def _full_embedding(g):
    lat = all_subgroups(g)
    return subgroup_as_group(lat.subgroups[lat.index_of(range(g.order))])


def test_induction_and_restriction_by_whole_group_are_identity():
    d8 = group_from_spec("dihedral:8")
    t = slice_classes(d8)
    emb = _full_embedding(d8)
    th = slice_classes(emb.source)
    for cls in range(th.size):
        xi = th.idempotent(cls)
        up = bisetops.induce(xi, emb, check=True)
        back = bisetops.restrict(up, emb, check=True)
        assert back == xi


def test_induction_basis_rule_example():
    c4 = cyclic_group(4)
    lat = all_subgroups(c4)
    two = next(s for s in lat.subgroups if len(s) == 2)
    emb = subgroup_as_group(two)
    th = slice_classes(emb.source)
    t = slice_classes(c4)
    elem = th.basis_element(th.class_index((0, 1), (0,)))
    out = bisetops.induce(elem, emb, check=True)
    assert out == t.basis_element(t.class_index(two.members, (0,)))


def test_restriction_of_regular_projection_to_trivial_subgroup():
    c2 = cyclic_group(2)
    lat = all_subgroups(c2)
    triv = lat.subgroups[lat.index_of([0])]
    emb = subgroup_as_group(triv)
    t = slice_classes(c2)
    th = slice_classes(emb.source)
    elem = t.basis_element(t.class_index((0, 1), (0,)))
    out = bisetops.restrict(elem, emb, check=True)
    # the two-point source falls into two orbits over the trivial group
    assert out == th.basis_element(0).scaled(2)


def test_inflation_basis_rule_example():
    c4 = cyclic_group(4)
    lat = all_subgroups(c4)
    two = next(s for s in lat.subgroups if len(s) == 2)
    q = quotient(c4, two.members)
    tq = slice_classes(q.group)
    t = slice_classes(c4)
    elem = tq.basis_element(tq.class_index((0, 1), (0, 1)))
    out = bisetops.inflate(elem, q, check=True)
    assert out == t.one()


def test_deflation_of_proper_slice_idempotent_vanishes():
    c2 = cyclic_group(2)
    t = slice_classes(c2)
    q = quotient(c2, (0, 1))
    xi = t.idempotent(t.class_index((0, 1), (0,)))
    assert bisetops.deflate(xi, q, check=True).is_zero()
    scalar = deflation_idempotent_scalar(c2, (0, 1), (0,), (0, 1))
    assert scalar == 0


def test_deflation_of_top_idempotent_scalar_agrees_both_ways():
    c2 = cyclic_group(2)
    t = slice_classes(c2)
    q = quotient(c2, (0, 1))
    tq = slice_classes(q.group)
    xi = t.idempotent(t.class_index((0, 1), (0, 1)))
    out = bisetops.deflate(xi, q, check=True)
    scalar = deflation_idempotent_scalar(c2, (0, 1), (0, 1), (0, 1))
    assert out == tq.idempotent(0).scaled(scalar)
    assert scalar == Fraction(1, 2)


def test_transport_by_inner_automorphism_fixes_every_class():
    d8 = group_from_spec("dihedral:8")
    t = slice_classes(d8)
    g = 1
    images = tuple(d8.conj(g, x) for x in d8.elements())
    iso = GroupIsomorphism(d8, d8, images)
    iso.check()
    for cls in range(t.size):
        assert bisetops.transport(t.basis_element(cls), iso, check=True) == t.basis_element(cls)


def test_transport_permutes_mark_matrix_consistently():
    v4 = group_from_spec("elab:2^2")
    t = slice_classes(v4)
    swap = next(
        a for a in automorphisms(v4) if a != tuple(range(4))
    )
    iso = GroupIsomorphism(v4, v4, swap)
    matrix = t.mark_matrix()
    perm = {}
    for cls in range(t.size):
        big, small = t.rep_subgroups(cls)
        perm[cls] = t.class_index(iso.image_members(big.members), iso.image_members(small.members))
    for r in range(t.size):
        for c in range(t.size):
            assert matrix[perm[r]][perm[c]] == matrix[r][c]


def test_idempotent_factors_through_induction_from_top():
    # the slice idempotent is a normalizer-index multiple of the induced
    # idempotent of the same slice inside its own top group
    for spec in ["dihedral:8", "abelian:9x3"]:
        g = group_from_spec(spec)
        t = slice_classes(g)
        for cls in range(t.size):
            big, small = t.rep_subgroups(cls)
            emb = subgroup_as_group(big)
            th = slice_classes(emb.source)
            back = {y: i for i, y in enumerate(emb.images)}
            inner = th.idempotent(
                th.class_index(
                    tuple(range(emb.source.order)),
                    tuple(sorted(back[x] for x in small.members)),
                )
            )
            nt_s = sum(
                1
                for x in big.members
                if {g.conj(x, y) for y in small.members} == set(small.members)
            )
            ratio = Fraction(nt_s, len(slice_normalizer(g, big.members, small.members)))
            assert bisetops.induce(inner, emb).scaled(ratio) == t.idempotent(cls)


def test_mackey_commutation_at_ring_level():
    g = group_from_spec("dihedral:8")
    lat = all_subgroups(g)
    t = slice_classes(g)
    subs = [s for s in lat.subgroups if 1 < len(s) < 8]
    for h in subs[:3]:
        for k in subs[3:6]:
            emb_h, emb_k = subgroup_as_group(h), subgroup_as_group(k)
            tk = slice_classes(emb_k.source)
            for cls in range(tk.size):
                elem = tk.idempotent(cls)
                lhs = bisetops.restrict(bisetops.induce(elem, emb_k), emb_h)
                rhs = slice_classes(emb_h.source).zero()
                from sliceburnside.groups import double_cosets

                for x in double_cosets(g, h.members, k.members):
                    inter = tuple(
                        sorted(set(h.members) & {g.conj(x, y) for y in k.members})
                    )
                    emb_hx = subgroup_as_group(
                        type(h)(g, inter)
                    )
                    # transport K-side data to the intersection subgroup
                    kx_members = tuple(
                        sorted(set(k.members) & {g.conj(g.inv(x), y) for y in h.members})
                    )
                    emb_kx = subgroup_as_group(type(h)(g, kx_members))
                    res = bisetops.restrict(elem, _relative_embedding(emb_kx, emb_k, g))
                    images = tuple(
                        _position(emb_hx.images, g.conj(x, emb_kx.images[i]))
                        for i in range(emb_kx.source.order)
                    )
                    iso = GroupIsomorphism(emb_kx.source, emb_hx.source, images)
                    moved = bisetops.transport(res, iso)
                    rhs = rhs + bisetops.induce(moved, _relative_embedding(emb_hx, emb_h, g))
                assert lhs == rhs


def _position(seq, value):
    return seq.index(value)


def _relative_embedding(small_emb, big_emb, parent):
    # inclusion of one subgroup-as-group inside another, through the parent
    back = {y: i for i, y in enumerate(big_emb.images)}
    images = tuple(back[small_emb.images[i]] for i in range(small_emb.source.order))
    from sliceburnside.groups import GroupEmbedding

    return GroupEmbedding(small_emb.source, big_emb.source, images)


def test_deflation_commutes_with_induction_at_ring_level():
    g = group_from_spec("dihedral:8")
    lat = all_subgroups(g)
    t = slice_classes(g)
    normals = [lat.subgroups[i] for i in lat.normal if 1 < len(lat.subgroups[i]) < 8]
    subs = [s for s in lat.subgroups if 1 < len(s) < 8]
    for n in normals[:2]:
        q = quotient(g, n.members)
        for h in subs[:4]:
            emb_h = subgroup_as_group(h)
            th = slice_classes(emb_h.source)
            # left side: induce to the parent, then deflate
            # right side: deflate inside the subgroup, transport, induce
            back_h = {y: i for i, y in enumerate(emb_h.images)}
            h_cap_n = tuple(sorted(back_h[x] for x in h.members if x in set(n.members)))
            q_h = quotient(emb_h.source, h_cap_n)
            hn_members = tuple(sorted({q.projection[x] for x in h.members}))
            lat_q = all_subgroups(q.group)
            emb_hn = subgroup_as_group(lat_q.subgroups[lat_q.index_of(hn_members)])
            images = []
            for i in range(q_h.group.order):
                rep_in_h = q_h.section()[i]
                parent_elt = emb_h.images[rep_in_h]
                images.append(_position(emb_hn.images, q.projection[parent_elt]))
            iso = GroupIsomorphism(q_h.group, emb_hn.source, tuple(images))
            iso.check()
            for cls in range(th.size):
                elem = th.idempotent(cls)
                lhs = bisetops.deflate(bisetops.induce(elem, emb_h), q)
                rhs = bisetops.induce(
                    bisetops.transport(bisetops.deflate(elem, q_h), iso), emb_hn
                )
                assert lhs == rhs


def test_operations_reject_foreign_elements():
    c4 = cyclic_group(4)
    c6 = cyclic_group(6)
    t6 = slice_classes(c6)
    emb = _full_embedding(c4)
    with pytest.raises(GroupError):
        bisetops.induce(t6.one(), emb)
    q = quotient(c4, (0, 2))
    with pytest.raises(GroupError):
        bisetops.deflate(t6.one(), q)


def test_elementary_apply_dispatch():
    c4 = cyclic_group(4)
    t = slice_classes(c4)
    emb = _full_embedding(c4)
    th = slice_classes(emb.source)
    out = bisetops.elementary_apply("ind", th.one(), emb)
    assert out == t.one()
    with pytest.raises(GroupError):
        bisetops.elementary_apply("nope", th.one(), emb)


def test_oracle_checking_flag_roundtrip():
    assert not bisetops.oracle_checking()
    bisetops.set_oracle_checking(True)
    try:
        assert bisetops.oracle_checking()
        c4 = cyclic_group(4)
        emb = _full_embedding(c4)
        th = slice_classes(emb.source)
        bisetops.induce(th.one(), emb)
    finally:
        bisetops.set_oracle_checking(False)
    assert not bisetops.oracle_checking()
