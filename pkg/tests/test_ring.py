import csv
import io
import json
import random
from fractions import Fraction

import pytest

from sliceburnside import gsets
from sliceburnside.groups import GroupError, cyclic_group, group_from_spec
from sliceburnside.ring import (
    SliceRingElement,
    element_to_json,
    fraction_str,
    mark_matrix_csv,
    morphism_to_ring,
    slice_classes,
    table_to_json,
)


@pytest.mark.parametrize("spec,count", [("cyclic:1", 1), ("cyclic:2", 3), ("cyclic:3", 3), ("cyclic:5", 3)])
def test_class_counts(spec, count):
    assert slice_classes(group_from_spec(spec)).size == count


def test_class_table_is_cached_and_deterministic():
    g = group_from_spec("dihedral:8")
    assert slice_classes(g) is slice_classes(g)
    h = group_from_spec("dihedral:8")
    assert slice_classes(g).reps == slice_classes(h).reps


def test_hand_computed_idempotents_of_c2():
    c2 = cyclic_group(2)
    t = slice_classes(c2)
    c11 = t.class_index((0,), (0,))
    c21 = t.class_index((0, 1), (0,))
    c22 = t.class_index((0, 1), (0, 1))
    assert t.idempotent(c22).coeffs == {c22: Fraction(1), c21: Fraction(-1, 2)}
    assert t.idempotent(c21).coeffs == {c21: Fraction(1, 2), c11: Fraction(-1, 2)}
    assert t.idempotent(c11).coeffs == {c11: Fraction(1, 2)}


def test_basis_multiplication_examples():
    c2 = cyclic_group(2)
    t = slice_classes(c2)
    c21 = t.class_index((0, 1), (0,))
    assert t.basis_mul(c21, c21) == {c21: 2}
    one = t.one()
    for cls in range(t.size):
        assert one * t.basis_element(cls) == t.basis_element(cls)


@pytest.mark.parametrize("spec", ["cyclic:6", "dihedral:8", "elab:3^2"])
def test_basis_multiplication_matches_oracle(spec):
    g = group_from_spec(spec)
    t = slice_classes(g)
    for a in range(t.size):
        for b in range(t.size):
            oracle = morphism_to_ring(
                gsets.morphism_product(t.projection(a), t.projection(b)), t
            )
            assert t.basis_element(a) * t.basis_element(b) == oracle


@pytest.mark.parametrize("spec", ["cyclic:12", "dihedral:8", "abelian:4x2", "elab:2^3"])
def test_ring_axioms_exhaustive(spec):
    g = group_from_spec(spec)
    t = slice_classes(g)
    basis = [t.basis_element(c) for c in range(t.size)]
    for a in basis:
        for b in basis:
            assert a * b == b * a
    rng = random.Random(7)
    triples = (
        [(a, b, c) for a in basis for b in basis for c in basis]
        if t.size <= 20
        else [
            (rng.choice(basis), rng.choice(basis), rng.choice(basis))
            for _ in range(400)
        ]
    )
    for a, b, c in triples:
        assert (a * b) * c == a * (b * c)


def test_mark_examples():
    d8 = group_from_spec("dihedral:8")
    t = slice_classes(d8)
    full = tuple(range(8))
    top = t.class_index(full, full)
    bottom = t.class_index((0,), (0,))
    for cls in range(t.size):
        assert t.basis_element(top).mark(cls) == 1
        assert t.basis_element(cls).mark(top) == (1 if cls == top else 0)
        big, small = t.rep_subgroups(cls)
        assert t.basis_element(cls).mark(bottom) == 8 // len(small)


def test_mark_is_multiplicative_on_samples():
    g = group_from_spec("elab:3^2")
    t = slice_classes(g)
    rng = random.Random(11)
    elems = []
    for _ in range(6):
        coeffs = {
            rng.randrange(t.size): Fraction(rng.randint(-4, 4), rng.randint(1, 5))
            for _ in range(3)
        }
        elems.append(SliceRingElement(t, coeffs))
    for a in elems:
        for b in elems:
            prod = a * b
            for cls in range(t.size):
                assert prod.mark(cls) == a.mark(cls) * b.mark(cls)


def test_eigenvector_property():
    g = group_from_spec("dihedral:8")
    t = slice_classes(g)
    for cls in range(t.size):
        xi = t.idempotent(cls)
        for b in range(t.size):
            v = t.basis_element(b)
            assert v * xi == xi.scaled(v.mark(cls))


def test_idempotents_conjugation_invariant():
    d8 = group_from_spec("dihedral:8")
    t = slice_classes(d8)
    lat = t.lattice
    # evaluating the defining sum at a conjugate slice gives the same element
    for cls in range(t.size):
        big, small = t.rep_subgroups(cls)
        for g in d8.elements():
            tc = tuple(sorted(d8.conj(g, x) for x in big.members))
            sc = tuple(sorted(d8.conj(g, x) for x in small.members))
            assert t.class_index(tc, sc) == cls


def test_ghost_round_trip():
    g = group_from_spec("cyclic:6")
    t = slice_classes(g)
    rng = random.Random(3)
    for _ in range(5):
        coeffs = {
            rng.randrange(t.size): Fraction(rng.randint(-9, 9), rng.randint(1, 7))
            for _ in range(4)
        }
        elem = SliceRingElement(t, coeffs)
        assert t.from_mark_vector(elem.mark_vector()) == elem
    ones = t.one().mark_vector()
    assert all(v == 1 for v in ones)
    with pytest.raises(GroupError):
        t.from_mark_vector([1])


def test_elements_of_different_tables_do_not_mix():
    a = slice_classes(group_from_spec("cyclic:2"))
    b = slice_classes(group_from_spec("cyclic:3"))
    with pytest.raises(GroupError):
        a.one() + b.one()
    with pytest.raises(GroupError):
        a.one() * b.one()


def test_fraction_serialisation():
    assert fraction_str(Fraction(3)) == "3/1"
    assert fraction_str(Fraction(-1, 2)) == "-1/2"


def test_json_and_csv_exports():
    g = group_from_spec("cyclic:4")
    t = slice_classes(g)
    payload = table_to_json(t)
    assert payload["order"] == 4
    assert len(payload["classes"]) == t.size
    for entry in payload["classes"]:
        assert set(entry) == {"T", "S"}
        assert set(entry["S"]) <= set(entry["T"])
    elem = t.idempotent(0)
    as_json = element_to_json(elem)
    json.dumps(as_json)
    for value in as_json.values():
        num, den = value.split("/")
        assert int(den) > 0
    rows = list(csv.reader(io.StringIO(mark_matrix_csv(t))))
    assert len(rows) == t.size + 1
    assert rows[0][1:] == [t.label(c) for c in range(t.size)]
    for r, row in enumerate(rows[1:]):
        assert [int(x) for x in row[1:]] == t.mark_matrix()[r]


def test_not_a_slice_rejected():
    g = group_from_spec("elab:2^2")
    t = slice_classes(g)
    with pytest.raises(GroupError):
        t.class_index((0, 1), (0, 2))


def test_decomposition_rejects_non_equivariant_maps():
    c4 = cyclic_group(4)
    t = slice_classes(c4)
    reg = gsets.coset_space(c4, [0])
    bad = gsets.GSetMorphism(reg, reg, [0, 1, 3, 2])
    with pytest.raises(GroupError):
        morphism_to_ring(bad, t)
