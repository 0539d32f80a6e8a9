"""The slice Burnside ring of a finite group, over exact rationals.

The ring is free on conjugacy classes of slices (T, S) with S <= T <= G;
the class of (T, S) is realised by the coset projection G/S -> G/T.  All
coefficients are `fractions.Fraction`; nothing here ever touches floats.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .groups import (
    FiniteGroup,
    GroupError,
    all_subgroups,
    double_cosets,
    slice_normalizer,
)
from . import gsets


class SliceClassTable:
    """Conjugacy classes of slices of one group, with frozen class indexing.

    Ring elements are only combinable when they share a table object,
    which pins down class indices, labels and caches.
    """

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.lattice = all_subgroups(group)
        lat = self.lattice
        nsub = len(lat.subgroups)
        pairs = [
            (t, s)
            for t in range(nsub)
            for s in lat.below[t]
        ]
        class_of: dict[tuple[int, int], int] = {}
        reps: list[tuple[int, int]] = []
        for pair in sorted(pairs):
            if pair in class_of:
                continue
            orbit = set()
            for g in range(group.order):
                row = lat.conj_table[g]
                orbit.add((row[pair[0]], row[pair[1]]))
            rep = min(orbit)
            cls = len(reps)
            reps.append(rep)
            for q in orbit:
                class_of[q] = cls
        self.reps = tuple(reps)
        self.class_of = class_of
        self.size = len(reps)
        self._coset_spaces: dict[int, gsets.GSet] = {}
        self._projections: dict[int, gsets.GSetMorphism] = {}
        self._mark_matrix: list[list[int]] | None = None
        self._basis_products: dict[tuple[int, int], dict[int, int]] = {}
        self._idempotents: list[SliceRingElement | None] = [None] * len(reps)

    # -- naming ------------------------------------------------------------

    def rep_subgroups(self, cls: int):
        t, s = self.reps[cls]
        return self.lattice.subgroups[t], self.lattice.subgroups[s]

    def label(self, cls: int) -> str:
        big, small = self.rep_subgroups(cls)
        t = ".".join(str(x) for x in big.members)
        s = ".".join(str(x) for x in small.members)
        return f"(T={t}|S={s})"

    def class_index(self, t_members, s_members) -> int:
        lat = self.lattice
        t = lat.index_of(t_members)
        s = lat.index_of(s_members)
        try:
            return self.class_of[t, s]
        except KeyError:
            raise GroupError("not a slice: the pair is not nested") from None

    # -- elements ------------------------------------------------------------

    def zero(self) -> "SliceRingElement":
        return SliceRingElement(self, {})

    def basis_element(self, cls: int) -> "SliceRingElement":
        return SliceRingElement(self, {cls: Fraction(1)})

    def one(self) -> "SliceRingElement":
        full = tuple(range(self.group.order))
        return self.basis_element(self.class_index(full, full))

    def element_from_pairs(self, pairs) -> "SliceRingElement":
        """Sum of basis classes for (t_members, s_members) pairs."""
        coeffs: dict[int, Fraction] = {}
        for t_members, s_members in pairs:
            cls = self.class_index(t_members, s_members)
            coeffs[cls] = coeffs.get(cls, Fraction(0)) + 1
        return SliceRingElement(self, coeffs)

    # -- coset machinery -----------------------------------------------------

    def coset_space(self, sub_idx: int) -> gsets.GSet:
        gs = self._coset_spaces.get(sub_idx)
        if gs is None:
            gs = gsets.coset_space(
                self.group, self.lattice.subgroups[sub_idx].members
            )
            self._coset_spaces[sub_idx] = gs
        return gs

    def projection(self, cls: int) -> gsets.GSetMorphism:
        """The canonical projection realising the class representative."""
        f = self._projections.get(cls)
        if f is None:
            t, s = self.reps[cls]
            src = self.coset_space(s)
            tgt = self.coset_space(t)
            mapping = [tgt._point_of[rep] for rep in src.point_reps]
            f = gsets.GSetMorphism(src, tgt, mapping)
            self._projections[cls] = f
        return f

    # -- marks ----------------------------------------------------------------

    def mark_matrix(self) -> list[list[int]]:
        """Integer matrix of marks: row (T,S), column (V,U)."""
        if self._mark_matrix is None:
            projs = [self.projection(c) for c in range(self.size)]
            self._mark_matrix = [
                [gsets.hom_count(projs[r], projs[c]) for c in range(self.size)]
                for r in range(self.size)
            ]
        return self._mark_matrix

    # -- multiplication --------------------------------------------------------

    def basis_mul(self, i: int, j: int) -> dict[int, int]:
        """Product of two basis classes as a class -> multiplicity map."""
        hit = self._basis_products.get((i, j))
        if hit is not None:
            return hit
        lat = self.lattice
        ti, si = self.reps[i]
        tj, sj = self.reps[j]
        s_members = lat.subgroups[si].members
        x_members = lat.subgroups[sj].members
        out: dict[int, int] = {}
        for g in double_cosets(self.group, s_members, x_members):
            row = lat.conj_table[g]
            t_mask = lat.masks[ti] & lat.masks[row[tj]]
            s_mask = lat.masks[si] & lat.masks[row[sj]]
            cls = self.class_of[lat._index[t_mask], lat._index[s_mask]]
            out[cls] = out.get(cls, 0) + 1
        self._basis_products[(i, j)] = out
        return out

    # -- idempotents -------------------------------------------------------------

    def idempotent(self, cls: int) -> "SliceRingElement":
        """The primitive idempotent whose mark vector is the class indicator."""
        hit = self._idempotents[cls]
        if hit is not None:
            return hit
        lat = self.lattice
        t, s = self.reps[cls]
        t_mask = lat.masks[t]
        norm = slice_normalizer(
            self.group, lat.subgroups[t].members, lat.subgroups[s].members
        )
        scale = Fraction(1, len(norm))
        coeffs: dict[int, Fraction] = {}
        for u in lat.below[s]:
            wu = len(lat.subgroups[u]) * lat.moebius(u, s)
            if wu == 0:
                continue
            for v in lat.above[s]:
                if lat.masks[v] & t_mask != lat.masks[v]:
                    continue
                wv = lat.moebius(v, t)
                if wv == 0:
                    continue
                key = self.class_of[v, u]
                coeffs[key] = coeffs.get(key, Fraction(0)) + scale * wu * wv
        out = SliceRingElement(
            self, {c: q for c, q in coeffs.items() if q != 0}
        )
        self._idempotents[cls] = out
        return out

    def idempotents(self) -> list["SliceRingElement"]:
        return [self.idempotent(c) for c in range(self.size)]

    # -- ghost map ----------------------------------------------------------------

    def from_mark_vector(self, vector) -> "SliceRingElement":
        """Inverse of the ghost map, via the idempotent basis; verified by
        round-trip (a failure means the class enumeration is broken)."""
        vector = [Fraction(v) for v in vector]
        if len(vector) != self.size:
            raise GroupError("mark vector has the wrong length")
        out = self.zero()
        for cls, v in enumerate(vector):
            if v:
                out = out + self.idempotent(cls).scaled(v)
        if list(out.mark_vector()) != vector:
            raise GroupError("mark matrix failed to invert; enumeration bug")
        return out


def slice_classes(group: FiniteGroup) -> SliceClassTable:
    """The (cached) slice class table of a group."""
    if group._slice_table is None:
        group._slice_table = SliceClassTable(group)
    return group._slice_table


class SliceRingElement:
    """An exact rational combination of slice classes of one group."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: SliceClassTable, coeffs: dict[int, Fraction]):
        self.table = table
        self.coeffs = {c: Fraction(q) for c, q in coeffs.items() if q != 0}

    def _require_same_table(self, other: "SliceRingElement") -> None:
        if self.table is not other.table:
            raise GroupError("elements live over different slice tables")

    def __add__(self, other: "SliceRingElement") -> "SliceRingElement":
        self._require_same_table(other)
        out = dict(self.coeffs)
        for c, q in other.coeffs.items():
            out[c] = out.get(c, Fraction(0)) + q
        return SliceRingElement(self.table, out)

    def __sub__(self, other: "SliceRingElement") -> "SliceRingElement":
        self._require_same_table(other)
        out = dict(self.coeffs)
        for c, q in other.coeffs.items():
            out[c] = out.get(c, Fraction(0)) - q
        return SliceRingElement(self.table, out)

    def __neg__(self) -> "SliceRingElement":
        return SliceRingElement(self.table, {c: -q for c, q in self.coeffs.items()})

    def scaled(self, scalar) -> "SliceRingElement":
        s = Fraction(scalar)
        return SliceRingElement(self.table, {c: q * s for c, q in self.coeffs.items()})

    def __mul__(self, other: "SliceRingElement") -> "SliceRingElement":
        self._require_same_table(other)
        # scale both sides to integers so accumulation stays in int arithmetic
        da = 1
        for q in self.coeffs.values():
            da = da * q.denominator // _gcd(da, q.denominator)
        db = 1
        for q in other.coeffs.values():
            db = db * q.denominator // _gcd(db, q.denominator)
        a_int = {c: int(q * da) for c, q in self.coeffs.items()}
        b_int = {c: int(q * db) for c, q in other.coeffs.items()}
        acc: dict[int, int] = {}
        mul = self.table.basis_mul
        for ca, na in a_int.items():
            for cb, nb in b_int.items():
                w = na * nb
                for c, m in mul(ca, cb).items():
                    acc[c] = acc.get(c, 0) + w * m
        den = da * db
        return SliceRingElement(
            self.table, {c: Fraction(v, den) for c, v in acc.items() if v}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SliceRingElement)
            and self.table is other.table
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.table), tuple(sorted(self.coeffs.items()))))

    def is_zero(self) -> bool:
        return not self.coeffs

    def mark(self, cls: int) -> Fraction:
        row = self.table.mark_matrix()[cls]
        total = Fraction(0)
        for c, q in self.coeffs.items():
            total += q * row[c]
        return total

    def mark_vector(self) -> tuple[Fraction, ...]:
        matrix = self.table.mark_matrix()
        return tuple(
            sum((q * matrix[r][c] for c, q in self.coeffs.items()), Fraction(0))
            for r in range(self.table.size)
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = []
        for c in sorted(self.coeffs):
            bits.append(f"{self.coeffs[c]}*{self.table.label(c)}")
        return " + ".join(bits)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def morphism_to_ring(f: gsets.GSetMorphism, table: SliceClassTable) -> SliceRingElement:
    """Orbitwise decomposition of an equivariant map into slice classes."""
    if f.group is not table.group:
        raise GroupError("morphism and table have different groups")
    f.check_on_generators()
    return table.element_from_pairs(gsets.stabilizer_pairs(f))


# ---------------------------------------------------------------------------
# Serialisation


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def slice_class_json(table: SliceClassTable, cls: int) -> dict:
    big, small = table.rep_subgroups(cls)
    return {"T": list(big.members), "S": list(small.members)}


def table_to_json(table: SliceClassTable) -> dict:
    return {
        "group": table.group.label,
        "order": table.group.order,
        "classes": [slice_class_json(table, c) for c in range(table.size)],
        "labels": [table.label(c) for c in range(table.size)],
    }


def element_to_json(elem: SliceRingElement) -> dict:
    return {
        elem.table.label(c): fraction_str(q)
        for c, q in sorted(elem.coeffs.items())
    }


def mark_matrix_csv(table: SliceClassTable) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    labels = [table.label(c) for c in range(table.size)]
    writer.writerow([""] + labels)
    matrix = table.mark_matrix()
    for r in range(table.size):
        writer.writerow([labels[r]] + [str(v) for v in matrix[r]])
    return out.getvalue()


def element_to_text(elem: SliceRingElement) -> str:
    if elem.is_zero():
        return "0"
    return json.dumps(element_to_json(elem), indent=2, sort_keys=True)
