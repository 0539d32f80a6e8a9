"""Slice families and the ideals they span: membership, closure conditions
over a bounded universe of p-groups, generated-ideal closures, dimensions,
minimal groups, and the embedding of the ordinary Burnside ring.

Everything quantified "for all finite groups" in the theory is checked here
over an explicit finite universe; reports and results are universe-bounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .groups import (
    FiniteGroup,
    GroupError,
    all_subgroups,
    automorphisms,
    cyclic_group,
    dihedral_group,
    direct_product,
    find_isomorphism,
    heisenberg_group_p3,
    modular_group_p3,
    quaternion_group,
    quotient,
)
from .constants import (
    deflation_constant,
    deflation_constant_is_nonzero,
    is_cyclic_members,
)
from .linalg import rational_rank
from .ring import SliceClassTable, SliceRingElement, slice_classes


# ---------------------------------------------------------------------------
# Families


@dataclass(frozen=True)
class SliceFamily:
    """An isomorphism-invariant family of abstract slices (T, S).

    The predicate receives (parent_group, t_members, s_members); it must
    only depend on the isomorphism class of the pair.
    """

    id: str
    membership: object

    def __call__(self, group: FiniteGroup, t_members, s_members) -> bool:
        return bool(self.membership(group, t_members, s_members))


def _j1(group, t_members, s_members):
    return len(tuple(s_members)) != len(tuple(t_members))


def _j2(group, t_members, s_members):
    return not is_cyclic_members(group, tuple(sorted(set(s_members))))


FAMILIES: dict[str, SliceFamily] = {
    "ZERO": SliceFamily("ZERO", lambda g, t, s: False),
    "J1": SliceFamily("J1", _j1),
    "J2": SliceFamily("J2", _j2),
    "J3": SliceFamily("J3", lambda g, t, s: _j1(g, t, s) and _j2(g, t, s)),
    "J4": SliceFamily("J4", lambda g, t, s: _j1(g, t, s) or _j2(g, t, s)),
    "FULL": SliceFamily("FULL", lambda g, t, s: True),
}

#: deliberately not an ideal family: closure under preimages fails
BROKEN_CYCLIC_FAMILY = SliceFamily(
    "S_CYCLIC", lambda g, t, s: is_cyclic_members(g, tuple(sorted(set(s))))
)


def family_by_id(fid: str) -> SliceFamily:
    if fid == BROKEN_CYCLIC_FAMILY.id:
        return BROKEN_CYCLIC_FAMILY
    try:
        return FAMILIES[fid]
    except KeyError:
        raise GroupError(f"unknown family {fid!r}") from None


# ---------------------------------------------------------------------------
# Per-group traces


def member_classes(table: SliceClassTable, family: SliceFamily) -> list[int]:
    """Slice classes of the table's group that belong to the family."""
    out = []
    for cls in range(table.size):
        big, small = table.rep_subgroups(cls)
        if family(table.group, big.members, small.members):
            out.append(cls)
    return out


def ideal_dimension(group: FiniteGroup, family: SliceFamily) -> int:
    return len(member_classes(slice_classes(group), family))


def ideal_basis(group: FiniteGroup, family: SliceFamily) -> list[SliceRingElement]:
    table = slice_classes(group)
    return [table.idempotent(c) for c in member_classes(table, family)]


# ---------------------------------------------------------------------------
# The bounded universe


def _partitions(total: int):
    if total == 0:
        yield ()
        return
    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for part in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - part, part):
                yield (part,) + rest
    yield from rec(total, total)


def constructor_known_p_groups(p: int, bound: int) -> list[FiniteGroup]:
    """One group per constructor-reachable isomorphism class of p-power
    order up to the bound: all abelian types, the two extraspecial-type
    order-p^3 constructions, dihedral 2-groups, the quaternion group, and
    direct products of these with abelian groups."""
    nonabelian_seeds: list[FiniteGroup] = []
    if p**3 <= bound:
        nonabelian_seeds.append(modular_group_p3(p))
        nonabelian_seeds.append(heisenberg_group_p3(p))
        if p == 2:
            nonabelian_seeds.append(quaternion_group())
    if p == 2:
        order = 8
        while order <= bound:
            nonabelian_seeds.append(dihedral_group(order))
            order *= 2

    candidates: list[FiniteGroup] = []
    order = 1
    exp = 0
    while order <= bound:
        for part in _partitions(exp):
            g = (
                cyclic_group(1)
                if not part
                else _abelian_of_type(p, part)
            )
            candidates.append(g)
        order *= p
        exp += 1
    for seed in nonabelian_seeds:
        candidates.append(seed)
        cof = bound // seed.order
        exp = 1
        order = p
        while order <= cof:
            for part in _partitions(exp):
                g = direct_product(_abelian_of_type(p, part), seed)
                g.label = f"{_abelian_of_type(p, part).label}x{seed.label}"
                candidates.append(g)
            order *= p
            exp += 1

    by_order: dict[int, list[FiniteGroup]] = {}
    for g in candidates:
        bucket = by_order.setdefault(g.order, [])
        if not any(find_isomorphism(g, h) for h in bucket):
            bucket.append(g)
    out: list[FiniteGroup] = []
    for order in sorted(by_order):
        out.extend(sorted(by_order[order], key=lambda g: g.label))
    return out


def _abelian_of_type(p: int, partition) -> FiniteGroup:
    from .groups import abelian_group

    return abelian_group([p**e for e in partition])


class GroupUniverse:
    """A finite stand-in for the category of p-groups up to an order bound."""

    def __init__(self, prime: int, bound: int, canon_bound: int | None = None):
        self.prime = prime
        self.bound = bound
        # membership tests during closure happen at or below this order
        self.canon_bound = canon_bound if canon_bound is not None else prime**3
        self.groups = constructor_known_p_groups(prime, bound)
        self.lattices = [all_subgroups(g) for g in self.groups]
        self._canon: list[tuple[int, ...]] = [
            self._canonical_map(i) for i in range(len(self.groups))
        ]
        self._orbit: list[dict[int, tuple[int, ...]]] = []
        for gi, canon in enumerate(self._canon):
            orbit: dict[int, list[int]] = {}
            for cls, rep in enumerate(canon):
                orbit.setdefault(rep, []).append(cls)
            self._orbit.append({k: tuple(v) for k, v in orbit.items()})
        self._quotient_maps: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
        self._quotient_slices: dict[tuple[int, int, int], tuple[int, int]] = {}
        self._product_maps: dict[tuple[int, int], tuple[int, tuple[int, ...]]] = {}
        self._product_slices: dict[tuple[int, int, int, int], tuple[int, int]] = {}
        self._deflation_cache: dict[tuple[int, int, int], Fraction] = {}

    # -- canonicalization ----------------------------------------------------

    def _canonical_map(self, gi: int) -> tuple[int, ...]:
        g = self.groups[gi]
        lat = self.lattices[gi]
        nclasses = len(lat.class_reps)
        if g.order > self.canon_bound:
            return tuple(range(nclasses))
        if g.is_abelian() and g.exponent() in (1, self.prime):
            # subgroups of an elementary abelian group of equal order are
            # equivalent under automorphisms
            canon = []
            for cls in range(nclasses):
                size = len(lat.subgroups[lat.class_reps[cls]])
                canon.append(
                    min(
                        c
                        for c in range(nclasses)
                        if len(lat.subgroups[lat.class_reps[c]]) == size
                    )
                )
            return tuple(canon)
        canon = list(range(nclasses))
        for aut in automorphisms(g):
            for cls in range(nclasses):
                sub = lat.subgroups[lat.class_reps[cls]]
                image = lat.index_of(tuple(sorted(aut[x] for x in sub.members)))
                icls = lat.class_of[image]
                if canon[icls] > canon[cls]:
                    canon[icls] = canon[cls]
        # propagate minima to closure (orbits may be discovered out of order)
        changed = True
        while changed:
            changed = False
            for cls in range(nclasses):
                root = canon[canon[cls]]
                if canon[cls] != root:
                    canon[cls] = root
                    changed = True
        return tuple(canon)

    def canonical_class(self, gi: int, cls: int) -> int:
        return self._canon[gi][cls]

    def class_orbit(self, gi: int, canon_cls: int) -> tuple[int, ...]:
        return self._orbit[gi][canon_cls]

    # -- locating foreign groups ----------------------------------------------

    def find_group(self, group: FiniteGroup):
        """Universe index and isomorphism for an external group, or None."""
        for gi, h in enumerate(self.groups):
            if h.order != group.order:
                continue
            iso = find_isomorphism(group, h)
            if iso is not None:
                return gi, iso
        return None

    def locate_slice(self, group: FiniteGroup, s_members) -> tuple[int, int]:
        """Canonical (group index, subgroup class) of an abstract slice
        (group, S) given by an external group object."""
        hit = self.find_group(group)
        if hit is None:
            raise GroupError(
                f"group of order {group.order} is outside the universe"
            )
        gi, iso = hit
        lat = self.lattices[gi]
        idx = lat.index_of(iso.image_members(s_members))
        return gi, self.canonical_class(gi, lat.class_of[idx])

    # -- cached quotient / product slice maps -----------------------------------

    def quotient_map(self, gi: int, n_idx: int) -> tuple[int, tuple[int, ...]]:
        """(target group index, composed element map) for G_gi / N."""
        key = (gi, n_idx)
        hit = self._quotient_maps.get(key)
        if hit is None:
            g = self.groups[gi]
            n_members = self.lattices[gi].subgroups[n_idx].members
            q = quotient(g, n_members)
            found = self.find_group(q.group)
            if found is None:
                raise GroupError("quotient group is outside the universe")
            qi, iso = found
            comp = tuple(iso.images[q.projection[x]] for x in range(g.order))
            hit = (qi, comp)
            self._quotient_maps[key] = hit
        return hit

    def quotient_slice(self, gi: int, s_cls: int, n_idx: int) -> tuple[int, int]:
        """Canonical class of the image slice of (G, S) under G -> G/N."""
        key = (gi, s_cls, n_idx)
        hit = self._quotient_slices.get(key)
        if hit is None:
            qi, comp = self.quotient_map(gi, n_idx)
            lat = self.lattices[gi]
            s_members = lat.subgroups[lat.class_reps[s_cls]].members
            image = tuple(sorted({comp[x] for x in s_members}))
            qlat = self.lattices[qi]
            cls = qlat.class_of[qlat.index_of(image)]
            hit = (qi, self.canonical_class(qi, cls))
            self._quotient_slices[key] = hit
        return hit

    def product_map(self, bi: int, ti: int) -> tuple[int, tuple[int, ...]]:
        """(target group index, composed element map) for G_bi x G_ti."""
        key = (bi, ti)
        hit = self._product_maps.get(key)
        if hit is None:
            prod = direct_product(self.groups[bi], self.groups[ti])
            found = self.find_group(prod)
            if found is None:
                raise GroupError("product group is outside the universe")
            pi, iso = found
            hit = (pi, iso.images)
            self._product_maps[key] = hit
        return hit

    def product_slice(self, bi: int, a_cls: int, ti: int, s_cls: int) -> tuple[int, int]:
        """Canonical class of (B x T, A x S) inside the universe."""
        key = (bi, a_cls, ti, s_cls)
        hit = self._product_slices.get(key)
        if hit is None:
            pi, images = self.product_map(bi, ti)
            t_order = self.groups[ti].order
            lat_b, lat_t = self.lattices[bi], self.lattices[ti]
            a_members = lat_b.subgroups[lat_b.class_reps[a_cls]].members
            s_members = lat_t.subgroups[lat_t.class_reps[s_cls]].members
            members = tuple(
                sorted(images[a * t_order + s] for a in a_members for s in s_members)
            )
            plat = self.lattices[pi]
            cls = plat.class_of[plat.index_of(members)]
            hit = (pi, self.canonical_class(pi, cls))
            self._product_slices[key] = hit
        return hit

    # -- cached deflation constants ----------------------------------------------

    def deflation(self, gi: int, s_cls: int, n_idx: int) -> Fraction:
        key = (gi, s_cls, n_idx)
        hit = self._deflation_cache.get(key)
        if hit is None:
            lat = self.lattices[gi]
            hit = deflation_constant(
                self.groups[gi],
                lat.subgroups[lat.class_reps[s_cls]].members,
                lat.subgroups[n_idx].members,
            )
            self._deflation_cache[key] = hit
        return hit

    def deflation_nonzero(self, gi: int, s_cls: int, n_idx: int) -> bool:
        key = (gi, s_cls, n_idx)
        hit = self._deflation_cache.get(key)
        if hit is not None:
            return hit != 0
        lat = self.lattices[gi]
        return deflation_constant_is_nonzero(
            self.groups[gi],
            lat.subgroups[lat.class_reps[s_cls]].members,
            lat.subgroups[n_idx].members,
        )

    # -- inventory -----------------------------------------------------------------

    def all_abstract_classes(self, max_order: int | None = None) -> set[tuple[int, int]]:
        out = set()
        for gi, g in enumerate(self.groups):
            if max_order is not None and g.order > max_order:
                continue
            for cls in range(len(self.lattices[gi].class_reps)):
                out.add((gi, self.canonical_class(gi, cls)))
        return out

    def family_trace(
        self, family: SliceFamily, max_order: int | None = None
    ) -> set[tuple[int, int]]:
        """Canonical abstract member classes (whole-group slices) in the
        universe, optionally restricted by group order."""
        out = set()
        for gi, g in enumerate(self.groups):
            if max_order is not None and g.order > max_order:
                continue
            lat = self.lattices[gi]
            full = tuple(range(g.order))
            for cls in range(len(lat.class_reps)):
                s = lat.subgroups[lat.class_reps[cls]]
                if family(g, full, s.members):
                    out.add((gi, self.canonical_class(gi, cls)))
        return out

    def describe_class(self, gi: int, cls: int) -> str:
        lat = self.lattices[gi]
        sub = lat.subgroups[lat.class_reps[cls]]
        return f"{self.groups[gi].label}:S={'.'.join(map(str, sub.members))}"


# ---------------------------------------------------------------------------
# Condition checking


@dataclass
class ConditionReport:
    family_id: str
    prime: int
    bound: int
    slices_checked: int = 0
    preimage_violations: list = field(default_factory=list)
    deflation_violations: list = field(default_factory=list)
    product_violations: list = field(default_factory=list)
    iso_violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not (
            self.preimage_violations
            or self.deflation_violations
            or self.product_violations
            or self.iso_violations
        )

    def to_json(self) -> dict:
        return {
            "family": self.family_id,
            "prime": self.prime,
            "bound": self.bound,
            "universe_bounded": True,
            "slices_checked": self.slices_checked,
            "passed": self.passed,
            "preimage_violations": self.preimage_violations,
            "deflation_violations": self.deflation_violations,
            "product_violations": self.product_violations,
            "iso_violations": self.iso_violations,
        }


def check_conditions(family: SliceFamily, universe: GroupUniverse) -> ConditionReport:
    """Exhaustively check the ideal-family closure conditions on the universe.

    Checked: invariance of membership under automorphisms (sampled per
    group), closure under surjection preimages (via quotients by every
    normal subgroup), closure under deflations with nonzero constant, and
    closure of products of a member with an arbitrary slice when the
    product order stays within the bound.  Violations carry witnesses.
    """
    report = ConditionReport(family.id, universe.prime, universe.bound)
    member_cache: dict[tuple[int, int], bool] = {}

    def is_member(gi: int, cls: int) -> bool:
        key = (gi, cls)
        hit = member_cache.get(key)
        if hit is None:
            g = universe.groups[gi]
            lat = universe.lattices[gi]
            s = lat.subgroups[lat.class_reps[cls]]
            hit = family(g, tuple(range(g.order)), s.members)
            member_cache[key] = hit
        return hit

    # isomorphism invariance: classes merged by automorphisms must agree
    for gi, g in enumerate(universe.groups):
        lat = universe.lattices[gi]
        for canon_cls, orbit in universe._orbit[gi].items():
            values = {is_member(gi, c) for c in orbit}
            if len(values) > 1:
                report.iso_violations.append(
                    {
                        "group": g.label,
                        "classes": [universe.describe_class(gi, c) for c in orbit],
                    }
                )

    for gi, g in enumerate(universe.groups):
        lat = universe.lattices[gi]
        full = tuple(range(g.order))
        triv = lat.index_of([g.identity])
        nontrivial_normals = [n for n in lat.normal if n != triv]
        for cls in range(len(lat.class_reps)):
            report.slices_checked += 1
            s_members = lat.subgroups[lat.class_reps[cls]].members
            member_here = is_member(gi, cls)
            for n_idx in nontrivial_normals:
                qi, qcls = universe.quotient_slice(gi, cls, n_idx)
                quotient_member = is_member(qi, qcls)
                # preimage closure: member quotient forces member source
                if quotient_member and not member_here:
                    report.preimage_violations.append(
                        {
                            "source": universe.describe_class(gi, cls),
                            "via_normal": list(lat.subgroups[n_idx].members),
                            "quotient": universe.describe_class(qi, qcls),
                        }
                    )
                # deflation closure: member source with nonzero constant
                if member_here and not quotient_member:
                    if universe.deflation_nonzero(gi, cls, n_idx):
                        m = universe.deflation(gi, cls, n_idx)
                        report.deflation_violations.append(
                            {
                                "source": universe.describe_class(gi, cls),
                                "via_normal": list(lat.subgroups[n_idx].members),
                                "constant": str(m),
                                "quotient": universe.describe_class(qi, qcls),
                            }
                        )

    # product closure for members, within the bound
    for ti, t_group in enumerate(universe.groups):
        lat_t = universe.lattices[ti]
        for s_cls in range(len(lat_t.class_reps)):
            if not is_member(ti, s_cls):
                continue
            for bi, b_group in enumerate(universe.groups):
                if b_group.order * t_group.order > universe.bound:
                    continue
                lat_b = universe.lattices[bi]
                for a_cls in range(len(lat_b.class_reps)):
                    pi, pcls = universe.product_slice(bi, a_cls, ti, s_cls)
                    if not is_member(pi, pcls):
                        report.product_violations.append(
                            {
                                "member": universe.describe_class(ti, s_cls),
                                "factor": universe.describe_class(bi, a_cls),
                                "product": universe.describe_class(pi, pcls),
                            }
                        )
    return report


# ---------------------------------------------------------------------------
# Bounded closure of a generated ideal


def bounded_closure(
    universe: GroupUniverse, seed_group: FiniteGroup, seed_s_members
) -> set[tuple[int, int]]:
    """Least fixpoint within the universe of the closure moves: add sources
    of surjections onto members, add deflation images with nonzero constant,
    and add in-bound products of a member with any slice.

    The result is a lower bound for the trace of the generated ideal on the
    universe (derivations may leave any finite bound).
    """
    seed = universe.locate_slice(seed_group, seed_s_members)

    # surjection edges indexed by quotient target: member target forces source
    sources_of: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for gi, g in enumerate(universe.groups):
        lat = universe.lattices[gi]
        triv = lat.index_of([g.identity])
        for cls in range(len(lat.class_reps)):
            src = (gi, universe.canonical_class(gi, cls))
            for n_idx in lat.normal:
                if n_idx == triv:
                    continue
                tgt = universe.quotient_slice(gi, cls, n_idx)
                if tgt != src:
                    sources_of.setdefault(tgt, []).append(src)

    inventory = universe.all_abstract_classes()
    members: set[tuple[int, int]] = set()
    queue: list[tuple[int, int]] = []

    def add(pair: tuple[int, int]) -> None:
        if pair not in members:
            members.add(pair)
            queue.append(pair)

    add(seed)
    while queue:
        if len(members) == len(inventory):
            break
        gi, canon_cls = queue.pop()
        # sources of surjections onto the new member
        for src in sources_of.get((gi, canon_cls), ()):
            add(src)
        # deflations with nonzero constant (evaluated only when the target
        # is still missing)
        lat = universe.lattices[gi]
        triv = lat.index_of([universe.groups[gi].identity])
        for cls in universe.class_orbit(gi, canon_cls):
            for n_idx in lat.normal:
                if n_idx == triv:
                    continue
                tgt = universe.quotient_slice(gi, cls, n_idx)
                if tgt in members:
                    continue
                if universe.deflation_nonzero(gi, cls, n_idx):
                    add(tgt)
        # products with arbitrary slices, inside the bound
        t_order = universe.groups[gi].order
        for bi, b_group in enumerate(universe.groups):
            if b_group.order * t_order > universe.bound:
                continue
            lat_b = universe.lattices[bi]
            for s_cls in universe.class_orbit(gi, canon_cls):
                for a_cls in range(len(lat_b.class_reps)):
                    add(universe.product_slice(bi, a_cls, gi, s_cls))
    return members


def closure_trace(
    universe: GroupUniverse, members: set[tuple[int, int]], max_order: int
) -> set[tuple[int, int]]:
    """Restrict a closure result to groups of order at most `max_order`."""
    return {
        (gi, cls)
        for gi, cls in members
        if universe.groups[gi].order <= max_order
    }


# ---------------------------------------------------------------------------
# Minimal groups


def minimal_groups(family: SliceFamily, universe: GroupUniverse) -> list[FiniteGroup]:
    """Groups in the universe with nonzero ideal dimension, all strictly
    smaller universe groups having dimension zero."""
    dims = [
        (g, ideal_dimension(g, family)) for g in universe.groups
    ]
    out = []
    for g, d in dims:
        if d == 0:
            continue
        if all(d2 == 0 for h, d2 in dims if h.order < g.order):
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# Burnside-ring embedding


def burnside_embedding(group: FiniteGroup) -> list[SliceRingElement]:
    """Images of the Burnside-ring basis: the class of G/S maps to the
    class of its identity morphism, the diagonal slice (S, S)."""
    table = slice_classes(group)
    lat = table.lattice
    out = []
    for rep in lat.class_reps:
        members = lat.subgroups[rep].members
        out.append(table.basis_element(table.class_index(members, members)))
    return out


def burnside_image_rank(group: FiniteGroup) -> int:
    table = slice_classes(group)
    matrix = table.mark_matrix()
    rows = []
    for elem in burnside_embedding(group):
        (cls,) = elem.coeffs
        rows.append([matrix[r][cls] for r in range(table.size)])
    return rational_rank(rows)


def intersection_dimension(group: FiniteGroup, family: SliceFamily) -> int:
    """Dimension of the intersection of the embedded Burnside algebra with
    the family's ideal, computed in ghost coordinates: the ideal is the
    span of the member coordinate axes, so the intersection dimension is
    the rank drop of the embedded basis restricted to non-member axes."""
    table = slice_classes(group)
    matrix = table.mark_matrix()
    members = set(member_classes(table, family))
    non_member_rows = [r for r in range(table.size) if r not in members]
    full_rows = []
    restricted_rows = []
    for elem in burnside_embedding(group):
        (cls,) = elem.coeffs
        full_rows.append([matrix[r][cls] for r in range(table.size)])
        restricted_rows.append([matrix[r][cls] for r in non_member_rows])
    return rational_rank(full_rows) - rational_rank(restricted_rows)
