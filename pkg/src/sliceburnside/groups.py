"""Small finite groups as explicit multiplication tables over element indices.

Groups are immutable after construction and safe to share between threads.
All derived structure (generators, subgroup lattice, automorphisms) is cached
on the group object; caches are filled before sharing in normal use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

DEFAULT_ORDER_CAP = 256


class GroupError(ValueError):
    """Invalid group-theoretic input (bad table, bad subgroup, bad parameter)."""


class SpecParseError(GroupError):
    """A group-spec string does not parse."""


class OrderCapError(GroupError):
    """A construction would exceed the configured order cap."""


class FiniteGroup:
    """Finite group on element indices 0..order-1 with a full multiplication table.

    The identity and inverse tables are derived from the multiplication table
    at construction time; `validate()` checks the group axioms exhaustively.
    """

    def __init__(self, mul_table, label: str = "G"):
        table = tuple(tuple(int(x) for x in row) for row in mul_table)
        n = len(table)
        if n == 0:
            raise GroupError("group must have at least one element")
        for row in table:
            if len(row) != n or any(x < 0 or x >= n for x in row):
                raise GroupError("multiplication table is not square over 0..n-1")
        self.order = n
        self.label = label
        self._mul = table
        self.identity = self._find_identity()
        self._inv = self._find_inverses()
        # lazy caches
        self._gens: tuple[int, ...] | None = None
        self._orders: tuple[int, ...] | None = None
        self._lattice = None
        self._slice_table = None
        self._automorphisms: list[tuple[int, ...]] | None = None

    def _find_identity(self) -> int:
        n = self.order
        for e in range(n):
            row = self._mul[e]
            if all(row[x] == x for x in range(n)) and all(
                self._mul[x][e] == x for x in range(n)
            ):
                return e
        raise GroupError("table has no two-sided identity")

    def _find_inverses(self) -> tuple[int, ...]:
        n, e = self.order, self.identity
        inv = [None] * n
        for x in range(n):
            for y in range(n):
                if self._mul[x][y] == e and self._mul[y][x] == e:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise GroupError(f"element {x} has no two-sided inverse")
        return tuple(inv)

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, x: int) -> int:
        """Left conjugate g*x*g^-1."""
        return self._mul[self._mul[g][x]][self._inv[g]]

    def elements(self) -> range:
        return range(self.order)

    def validate(self) -> None:
        """Exhaustively check associativity; identity/inverses hold by construction."""
        n, m = self.order, self._mul
        for a in range(n):
            ma = m[a]
            for b in range(n):
                mab = m[ma[b]]
                mb = m[b]
                for c in range(n):
                    if mab[c] != ma[mb[c]]:
                        raise GroupError(f"associativity fails at ({a},{b},{c})")

    def element_order(self, x: int) -> int:
        orders = self._element_orders()
        return orders[x]

    def _element_orders(self) -> tuple[int, ...]:
        if self._orders is None:
            out = []
            for x in range(self.order):
                k, y = 1, x
                while y != self.identity:
                    y = self._mul[y][x]
                    k += 1
                out.append(k)
            self._orders = tuple(out)
        return self._orders

    def exponent(self) -> int:
        ex = 1
        for k in self._element_orders():
            ex = _lcm(ex, k)
        return ex

    def is_abelian(self) -> bool:
        m = self._mul
        return all(
            m[a][b] == m[b][a] for a in range(self.order) for b in range(a)
        )

    def center_members(self) -> tuple[int, ...]:
        m = self._mul
        return tuple(
            z
            for z in range(self.order)
            if all(m[z][x] == m[x][z] for x in range(self.order))
        )

    def generators(self) -> tuple[int, ...]:
        """A small deterministic generating sequence (greedy by element index)."""
        if self._gens is None:
            gens: list[int] = []
            closed = {self.identity}
            while len(closed) < self.order:
                x = min(i for i in range(self.order) if i not in closed)
                gens.append(x)
                closed = set(close_under_product(self, gens))
            self._gens = tuple(gens)
        return self._gens

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a * b // gcd(a, b)


def close_under_product(group: FiniteGroup, gens) -> tuple[int, ...]:
    """Members of the subgroup generated by `gens`, by breadth-first products."""
    seen = {group.identity}
    queue = [group.identity]
    gens = [g for g in gens]
    while queue:
        x = queue.pop()
        for g in gens:
            y = group.mul(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return tuple(sorted(seen))


# ---------------------------------------------------------------------------
# Subgroups


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted member indices inside a parent group."""

    parent: FiniteGroup
    members: tuple[int, ...]

    @staticmethod
    def from_members(parent: FiniteGroup, members) -> "Subgroup":
        ms = tuple(sorted(set(int(x) for x in members)))
        return Subgroup(parent, ms)

    @property
    def mask(self) -> int:
        m = 0
        for x in self.members:
            m |= 1 << x
        return m

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in set(self.members)

    def check(self) -> None:
        """Verify identity, closure under product and inverse, and Lagrange."""
        g = self.parent
        mem = set(self.members)
        if g.identity not in mem:
            raise GroupError("subgroup misses the identity")
        for a in self.members:
            if g.inv(a) not in mem:
                raise GroupError("subgroup not closed under inverse")
            for b in self.members:
                if g.mul(a, b) not in mem:
                    raise GroupError("subgroup not closed under product")
        if g.order % len(mem) != 0:
            raise GroupError("subgroup size does not divide the group order")

    def conjugate(self, g: int) -> "Subgroup":
        """The conjugate g*H*g^-1."""
        p = self.parent
        return Subgroup(p, tuple(sorted(p.conj(g, x) for x in self.members)))

    def is_cyclic(self) -> bool:
        n = len(self.members)
        return any(self.parent.element_order(x) == n for x in self.members)


def subgroup_generated(group: FiniteGroup, elems) -> Subgroup:
    return Subgroup(group, close_under_product(group, list(elems)))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (group.identity,))


def full_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


def set_product(group: FiniteGroup, a_members, b_members) -> tuple[int, ...]:
    """The product set A*B = {a*b}; a subgroup when one factor is normal."""
    out = set()
    for a in a_members:
        row = group._mul[a]
        for b in b_members:
            out.add(row[b])
    return tuple(sorted(out))


def normalizer(group: FiniteGroup, members) -> Subgroup:
    mask = _mask_of(members)
    keep = []
    for g in range(group.order):
        m = 0
        for x in members:
            m |= 1 << group.conj(g, x)
        if m == mask:
            keep.append(g)
    return Subgroup(group, tuple(keep))


def slice_normalizer(group: FiniteGroup, t_members, s_members) -> tuple[int, ...]:
    """Elements normalizing both members sets simultaneously."""
    tm, sm = _mask_of(t_members), _mask_of(s_members)
    keep = []
    for g in range(group.order):
        a = 0
        for x in t_members:
            a |= 1 << group.conj(g, x)
        if a != tm:
            continue
        b = 0
        for x in s_members:
            b |= 1 << group.conj(g, x)
        if b == sm:
            keep.append(g)
    return tuple(keep)


def is_normal(group: FiniteGroup, members) -> bool:
    mask = _mask_of(members)
    for g in group.generators():
        m = 0
        for x in members:
            m |= 1 << group.conj(g, x)
        if m != mask:
            return False
    return True


def double_cosets(group: FiniteGroup, a_members, b_members) -> tuple[int, ...]:
    """Representatives of the double cosets A\\G/B, smallest element first."""
    n = group.order
    seen = bytearray(n)
    reps = []
    for g in range(n):
        if seen[g]:
            continue
        reps.append(g)
        for a in a_members:
            ag = group.mul(a, g)
            row = group._mul[ag]
            for b in b_members:
                seen[row[b]] = 1
    return tuple(reps)


def _mask_of(members) -> int:
    m = 0
    for x in members:
        m |= 1 << x
    return m


def _members_of(mask: int) -> tuple[int, ...]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# Morphism witnesses between groups


@dataclass(frozen=True)
class GroupEmbedding:
    """An injective homomorphism, recorded as the image of each source element."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def image_members(self, members) -> tuple[int, ...]:
        return tuple(sorted(self.images[x] for x in members))

    def check(self) -> None:
        if len(set(self.images)) != self.source.order:
            raise GroupError("embedding is not injective")
        for a in range(self.source.order):
            for b in range(self.source.order):
                if self.images[self.source.mul(a, b)] != self.target.mul(
                    self.images[a], self.images[b]
                ):
                    raise GroupError("embedding is not a homomorphism")


@dataclass(frozen=True)
class GroupQuotient:
    """A surjection G -> G/N, with the quotient group and coset projection."""

    source: FiniteGroup
    group: FiniteGroup
    projection: tuple[int, ...]
    kernel: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.projection[x]

    def image_members(self, members) -> tuple[int, ...]:
        return tuple(sorted(set(self.projection[x] for x in members)))

    def preimage_members(self, members) -> tuple[int, ...]:
        wanted = set(members)
        return tuple(
            x for x in range(self.source.order) if self.projection[x] in wanted
        )

    def section(self) -> tuple[int, ...]:
        """One preimage element per coset (the smallest)."""
        out = [None] * self.group.order
        for x in range(self.source.order):
            q = self.projection[x]
            if out[q] is None:
                out[q] = x
        return tuple(out)


@dataclass(frozen=True)
class GroupIsomorphism:
    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def image_members(self, members) -> tuple[int, ...]:
        return tuple(sorted(self.images[x] for x in members))

    def inverse(self) -> "GroupIsomorphism":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return GroupIsomorphism(self.target, self.source, tuple(inv))

    def check(self) -> None:
        if sorted(self.images) != list(range(self.source.order)):
            raise GroupError("isomorphism images are not a bijection")
        GroupEmbedding(self.source, self.target, self.images).check()


def quotient(group: FiniteGroup, n_members) -> GroupQuotient:
    """Quotient by a normal subgroup; cosets indexed by order of first member."""
    if not is_normal(group, n_members):
        raise GroupError("cannot form the quotient by a non-normal subgroup")
    n = group.order
    proj = [-1] * n
    count = 0
    for g in range(n):
        if proj[g] >= 0:
            continue
        for x in n_members:
            proj[group.mul(g, x)] = count
        count += 1
    reps = [None] * count
    for g in range(n):
        if reps[proj[g]] is None:
            reps[proj[g]] = g
    table = [
        [proj[group.mul(reps[a], reps[b])] for b in range(count)]
        for a in range(count)
    ]
    q = FiniteGroup(table, label=f"{group.label}/N{len(tuple(n_members))}")
    return GroupQuotient(group, q, tuple(proj), tuple(sorted(n_members)))


_SUBGROUP_GROUP_CACHE: dict[tuple[int, int], GroupEmbedding] = {}


def subgroup_as_group(sub: Subgroup) -> GroupEmbedding:
    """The subgroup as a standalone group, with its inclusion embedding."""
    key = (id(sub.parent), sub.mask)
    hit = _SUBGROUP_GROUP_CACHE.get(key)
    if hit is not None:
        return hit
    mem = sub.members
    pos = {x: i for i, x in enumerate(mem)}
    table = [[pos[sub.parent.mul(a, b)] for b in mem] for a in mem]
    h = FiniteGroup(table, label=f"{sub.parent.label}|{len(mem)}")
    emb = GroupEmbedding(h, sub.parent, mem)
    _SUBGROUP_GROUP_CACHE[key] = emb
    return emb


# ---------------------------------------------------------------------------
# Subgroup lattice


class SubgroupLattice:
    """All subgroups of a group, with containment, Moebius function and
    conjugacy classes.  Built once per group and cached on it."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.subgroups: list[Subgroup] = _enumerate_subgroups(group)
        self.masks = [s.mask for s in self.subgroups]
        self._index = {m: i for i, m in enumerate(self.masks)}
        n = len(self.subgroups)
        self.above = [
            tuple(
                j
                for j in range(n)
                if self.masks[i] & self.masks[j] == self.masks[i]
            )
            for i in range(n)
        ]
        self.below = [
            tuple(
                j
                for j in range(n)
                if self.masks[j] & self.masks[i] == self.masks[j]
            )
            for i in range(n)
        ]
        self._moebius = self._build_moebius()
        self.conj_table = self._build_conj_table()
        self.class_reps, self.class_of = self._build_classes()
        self.normal = tuple(
            i for i in range(n) if all(row[i] == i for row in self.conj_table)
        )
        self._normalizers: dict[int, int] = {}

    # -- construction ------------------------------------------------------

    def _build_moebius(self) -> dict[tuple[int, int], int]:
        # moebius(U,V) over the containment poset, all comparable pairs
        mu: dict[tuple[int, int], int] = {}
        order_by_size = sorted(
            range(len(self.subgroups)), key=lambda i: len(self.subgroups[i])
        )
        for u in range(len(self.subgroups)):
            above_u = set(self.above[u])
            interval = [k for k in order_by_size if k in above_u]
            for v in interval:
                if v == u:
                    mu[u, u] = 1
                    continue
                vm = self.masks[v]
                acc = 0
                for k in interval:
                    if k == v:
                        break
                    if self.masks[k] & vm == self.masks[k]:
                        acc += mu[u, k]
                mu[u, v] = -acc
        return mu

    def _build_conj_table(self) -> list[list[int]]:
        g = self.group
        table = []
        for e in range(g.order):
            row = []
            for s in self.subgroups:
                m = 0
                for x in s.members:
                    m |= 1 << g.conj(e, x)
                row.append(self._index[m])
            table.append(row)
        return table

    def _build_classes(self):
        n = len(self.subgroups)
        class_of = [-1] * n
        reps = []
        for i in range(n):
            if class_of[i] >= 0:
                continue
            orbit = {row[i] for row in self.conj_table}
            rep = min(orbit)
            cls = len(reps)
            reps.append(rep)
            for j in orbit:
                class_of[j] = cls
        return tuple(reps), tuple(class_of)

    # -- queries -----------------------------------------------------------

    def index_of(self, members) -> int:
        m = _mask_of(members)
        try:
            return self._index[m]
        except KeyError:
            raise GroupError("not a subgroup of this group") from None

    def contains_pair(self, i: int, j: int) -> bool:
        """True when subgroup i is contained in subgroup j."""
        return self.masks[i] & self.masks[j] == self.masks[i]

    def moebius(self, u: int, v: int) -> int:
        try:
            return self._moebius[u, v]
        except KeyError:
            raise GroupError("moebius requires contained subgroup pair") from None

    def conjugate_index(self, g: int, i: int) -> int:
        return self.conj_table[g][i]

    def normalizer_index(self, i: int) -> int:
        hit = self._normalizers.get(i)
        if hit is None:
            sub = normalizer(self.group, self.subgroups[i].members)
            hit = self._index[sub.mask]
            self._normalizers[i] = hit
        return hit

    def is_normal_index(self, i: int) -> bool:
        return i in set(self.normal)

    def join(self, i: int, j: int) -> int:
        mi, mj = self.masks[i], self.masks[j]
        if mi & mj == mi:
            return j
        if mi & mj == mj:
            return i
        gen = close_under_product(
            self.group,
            self.subgroups[i].members + self.subgroups[j].members,
        )
        return self._index[_mask_of(gen)]

    def meet(self, i: int, j: int) -> int:
        return self._index[self.masks[i] & self.masks[j]]

    def product_index(self, i: int, j: int) -> int:
        """Index of the product set subgroup H*N (one factor must be normal)."""
        prod = set_product(
            self.group, self.subgroups[i].members, self.subgroups[j].members
        )
        return self.index_of(prod)

    def maximal_indices(self) -> tuple[int, ...]:
        full = self._index[_mask_of(range(self.group.order))]
        out = []
        for i in range(len(self.subgroups)):
            if i == full:
                continue
            strictly_above = [j for j in self.above[i] if j not in (i, full)]
            if not strictly_above:
                out.append(i)
        return tuple(out)

    def frattini_index(self) -> int:
        mask = _mask_of(range(self.group.order))
        for i in self.maximal_indices():
            mask &= self.masks[i]
        return self._index[mask]


def _enumerate_subgroups(group: FiniteGroup) -> list[Subgroup]:
    # cyclic subgroups, then close under pairwise join until stable
    found: dict[int, tuple[int, ...]] = {}  # mask -> small generating set
    triv = (group.identity,)
    found[_mask_of(triv)] = ()
    for x in range(group.order):
        mem = close_under_product(group, [x])
        m = _mask_of(mem)
        if m not in found:
            found[m] = (x,)
    new_masks = list(found)
    while new_masks:
        batch = []
        all_masks = list(found)
        for ma in new_masks:
            for mb in all_masks:
                if ma & mb == ma or ma & mb == mb:
                    continue
                gens = found[ma] + found[mb]
                mem = close_under_product(group, gens)
                m = _mask_of(mem)
                if m not in found:
                    found[m] = gens
                    batch.append(m)
        new_masks = batch
    subs = [Subgroup(group, _members_of(m)) for m in found]
    subs.sort(key=lambda s: (len(s.members), s.members))
    return subs


def all_subgroups(group: FiniteGroup) -> SubgroupLattice:
    if group._lattice is None:
        group._lattice = SubgroupLattice(group)
    return group._lattice


def frattini(group: FiniteGroup) -> Subgroup:
    lat = all_subgroups(group)
    return lat.subgroups[lat.frattini_index()]


def brute_force_subgroups(group: FiniteGroup) -> list[tuple[int, ...]]:
    """Independent subgroup enumeration by subset filtering; exponential, so
    only for very small groups."""
    n = group.order
    if n > 16:
        raise GroupError("subset filtering is limited to order <= 16")
    out = []
    e = group.identity
    for mask in range(1 << n):
        if not (mask >> e) & 1:
            continue
        mem = _members_of(mask)
        if n % len(mem) != 0:
            continue
        ok = True
        for a in mem:
            if not (mask >> group.inv(a)) & 1:
                ok = False
                break
            row = group._mul[a]
            for b in mem:
                if not (mask >> row[b]) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(mem)
    return out


# ---------------------------------------------------------------------------
# Isomorphism testing


def _invariant_profile(group: FiniteGroup):
    return (
        group.order,
        tuple(sorted(group._element_orders())),
        group.is_abelian(),
        len(group.center_members()),
    )


def _hom_from_generator_images(
    g: FiniteGroup, h: FiniteGroup, gens: tuple[int, ...], images: list[int]
) -> tuple[int, ...] | None:
    """Extend generator images to a homomorphism on <gens>, or None if the
    assignment is inconsistent.  Returns the image of every element of g
    that lies in the generated subgroup (others map to -1)."""
    img = [-1] * g.order
    img[g.identity] = h.identity
    for x, y in zip(gens, images):
        if img[x] not in (-1, y):
            return None
        img[x] = y
    frontier = [g.identity]
    seen = {g.identity}
    while frontier:
        nxt = []
        for a in frontier:
            ia = img[a]
            for x, y in zip(gens, images):
                b = g.mul(a, x)
                ib = h.mul(ia, y)
                if img[b] == -1:
                    img[b] = ib
                elif img[b] != ib:
                    return None
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return tuple(img)


def _iso_search(
    g: FiniteGroup,
    h: FiniteGroup,
    collect_all: bool,
    constraint=None,
) -> list[tuple[int, ...]]:
    gens = g.generators()
    if not gens:
        if g.order == h.order == 1:
            candidate = (h.identity,)
            if constraint is None or constraint(candidate):
                return [candidate]
        return []
    g_orders = g._element_orders()
    h_orders = h._element_orders()
    by_order: dict[int, list[int]] = {}
    for y in range(h.order):
        by_order.setdefault(h_orders[y], []).append(y)
    results: list[tuple[int, ...]] = []

    def extend(level: int, images: list[int]):
        if level == len(gens):
            full = _hom_from_generator_images(g, h, gens, images)
            if full is None or -1 in full:
                return
            if len(set(full)) != g.order:
                return
            if constraint is not None and not constraint(full):
                return
            results.append(full)
            return
        for y in by_order.get(g_orders[gens[level]], []):
            partial = _hom_from_generator_images(
                g, h, gens[: level + 1], images + [y]
            )
            if partial is None:
                continue
            # partial map must stay injective on its domain
            vals = [v for v in partial if v != -1]
            if len(vals) != len(set(vals)):
                continue
            extend(level + 1, images + [y])
            if results and not collect_all:
                return

    extend(0, [])
    return results


def find_isomorphism(g: FiniteGroup, h: FiniteGroup) -> GroupIsomorphism | None:
    """An explicit isomorphism g -> h, or None."""
    if _invariant_profile(g) != _invariant_profile(h):
        return None
    found = _iso_search(g, h, collect_all=False)
    if not found:
        return None
    return GroupIsomorphism(g, h, found[0])


def is_isomorphic(g: FiniteGroup, h: FiniteGroup) -> bool:
    return find_isomorphism(g, h) is not None


def automorphisms(group: FiniteGroup) -> list[tuple[int, ...]]:
    """Every automorphism, as an image tuple.  Cached; intended for small
    groups (the search is exhaustive)."""
    if group._automorphisms is None:
        group._automorphisms = _iso_search(group, group, collect_all=True)
    return group._automorphisms


# ---------------------------------------------------------------------------
# Constructors


def cyclic_group(n: int, label: str | None = None) -> FiniteGroup:
    if n <= 0:
        raise GroupError("cyclic group needs a positive order")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, label or f"C{n}")


def direct_product(a: FiniteGroup, b: FiniteGroup, label: str | None = None) -> FiniteGroup:
    n, m = a.order, b.order
    table = [
        [
            a.mul(x // m, y // m) * m + b.mul(x % m, y % m)
            for y in range(n * m)
        ]
        for x in range(n * m)
    ]
    return FiniteGroup(table, label or f"{a.label}x{b.label}")


def abelian_group(factors, label: str | None = None) -> FiniteGroup:
    factors = [int(f) for f in factors]
    if not factors or any(f <= 0 for f in factors):
        raise GroupError("abelian factors must be positive")
    g = cyclic_group(factors[0])
    for f in factors[1:]:
        g = direct_product(g, cyclic_group(f))
    g.label = label or "x".join(f"C{f}" for f in factors)
    return g


def elementary_abelian(p: int, k: int, label: str | None = None) -> FiniteGroup:
    if not _is_prime(p):
        raise GroupError("elementary abelian base must be prime")
    if k < 0:
        raise GroupError("elementary abelian rank must be nonnegative")
    if k == 0:
        return cyclic_group(1, label or "C1")
    return abelian_group([p] * k, label or f"E{p}^{k}")


def dihedral_group(total_order: int, label: str | None = None) -> FiniteGroup:
    """Dihedral group of the given total order 2n (n >= 1)."""
    if total_order <= 0 or total_order % 2 != 0:
        raise GroupError("dihedral total order must be a positive even number")
    n = total_order // 2
    # element i + n*j  <->  r^i s^j with s r s = r^-1
    def mul(x, y):
        i1, j1 = x % n, x // n
        i2, j2 = y % n, y // n
        if j1 == 0:
            return (i1 + i2) % n + n * j2
        return (i1 - i2) % n + n * (1 - j2)

    table = [[mul(x, y) for y in range(total_order)] for x in range(total_order)]
    return FiniteGroup(table, label or f"D{total_order}")


def modular_group_p3(p: int, label: str | None = None) -> FiniteGroup:
    """The order p^3 group <a,b | a^(p^2)=b^p=1, b a b^-1 = a^(1+p)>."""
    if not _is_prime(p):
        raise GroupError("parameter must be prime")
    p2 = p * p
    # element i + p^2*j <-> a^i b^j ;  b^j a^i = a^(i*(1+p)^j) b^j
    def mul(x, y):
        i1, j1 = x % p2, x // p2
        i2, j2 = y % p2, y // p2
        twist = pow(1 + p, j1, p2)
        return (i1 + i2 * twist) % p2 + p2 * ((j1 + j2) % p)

    n = p2 * p
    table = [[mul(x, y) for y in range(n)] for x in range(n)]
    return FiniteGroup(table, label or f"M{p**3}")


def heisenberg_group_p3(p: int, label: str | None = None) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over the p-element field."""
    if not _is_prime(p):
        raise GroupError("parameter must be prime")
    # element (a, b, c) -> a + p*b + p^2*c : matrix with upper entries a, c, b
    def mul(x, y):
        a1, b1, c1 = x % p, (x // p) % p, x // (p * p)
        a2, b2, c2 = y % p, (y // p) % p, y // (p * p)
        return (
            (a1 + a2) % p
            + p * ((b1 + b2 + a1 * c2) % p)
            + p * p * ((c1 + c2) % p)
        )

    n = p**3
    table = [[mul(x, y) for y in range(n)] for x in range(n)]
    return FiniteGroup(table, label or f"H{p**3}")


def quaternion_group(label: str = "Q8") -> FiniteGroup:
    """The quaternion group of order 8, from its regular permutation action."""
    g = from_permutation_generators(
        [
            [(0, 1, 2, 3), (4, 5, 6, 7)],
            [(0, 4, 2, 6), (1, 7, 3, 5)],
        ]
    )
    g.label = label
    return g


def from_permutation_generators(gens, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Close a list of permutations under composition.

    Each generator is a list of disjoint cycles (tuples of point indices);
    a bare tuple of ints is accepted as a one-cycle generator.  Element
    indices follow breadth-first discovery from the identity, generators
    applied in the given order.
    """
    cycle_lists = [_normalize_cycles(g) for g in gens]
    points = set()
    for cycles in cycle_lists:
        for cyc in cycles:
            points.update(cyc)
    npts = max(points) + 1 if points else 1
    perms = []
    for cycles in cycle_lists:
        perm = list(range(npts))
        for cyc in cycles:
            if len(set(cyc)) != len(cyc):
                raise GroupError(f"cycle {cyc} repeats a point")
            for i, x in enumerate(cyc):
                perm[x] = cyc[(i + 1) % len(cyc)]
        if sorted(perm) != list(range(npts)):
            raise GroupError("generator cycles are not disjoint")
        perms.append(tuple(perm))
    ident = tuple(range(npts))
    elems = [ident]
    index = {ident: 0}
    queue = [ident]
    while queue:
        cur = queue.pop(0)
        for perm in perms:
            new = tuple(perm[cur[i]] for i in range(npts))
            if new not in index:
                if len(elems) >= order_cap:
                    raise OrderCapError("permutation closure exceeds the order cap")
                index[new] = len(elems)
                elems.append(new)
                queue.append(new)
    table = []
    for a in elems:
        row = []
        for b in elems:
            row.append(index[tuple(a[b[i]] for i in range(npts))])
        table.append(row)
    return FiniteGroup(table, label=f"Perm{len(elems)}")


def _normalize_cycles(cycles):
    if not cycles:
        return []
    if isinstance(cycles[0], int):
        return [tuple(cycles)]
    return [tuple(c) for c in cycles]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Group-spec mini-grammar
#
#   cyclic:N | elab:P^K | abelian:N1xN2x... | dihedral:N | mod:P | heis:P |
#   perm:<cycles> | A * B   (direct product, left associative)

_PERM_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def group_from_spec(spec: str, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build a named group from a spec string; see the module grammar."""
    parts = [p.strip() for p in spec.split("*")]
    if any(not p for p in parts):
        raise SpecParseError(f"empty factor in spec {spec!r}")
    groups = [_atom_from_spec(p, order_cap) for p in parts]
    g = groups[0]
    for h in groups[1:]:
        if g.order * h.order > order_cap:
            raise OrderCapError(f"product order {g.order * h.order} exceeds cap {order_cap}")
        g = direct_product(g, h)
    if len(groups) > 1:
        g.label = " * ".join(h.label for h in groups)
    return g


def _atom_from_spec(spec: str, order_cap: int) -> FiniteGroup:
    if ":" not in spec:
        raise SpecParseError(f"missing ':' in group spec {spec!r}")
    kind, _, arg = spec.partition(":")
    if kind == "cyclic":
        n = _parse_int(arg, spec)
        _check_cap(n, order_cap)
        return cyclic_group(n)
    if kind == "elab":
        m = re.fullmatch(r"(\d+)\^(\d+)", arg.strip())
        if not m:
            raise SpecParseError(f"elab expects P^K, got {arg!r}")
        p, k = int(m.group(1)), int(m.group(2))
        _check_cap(p**k, order_cap)
        return elementary_abelian(p, k)
    if kind == "abelian":
        factors = [_parse_int(f, spec) for f in arg.split("x")]
        total = 1
        for f in factors:
            total *= f
        _check_cap(total, order_cap)
        return abelian_group(factors)
    if kind == "dihedral":
        n = _parse_int(arg, spec)
        _check_cap(n, order_cap)
        return dihedral_group(n)
    if kind == "mod":
        p = _parse_int(arg, spec)
        _check_cap(p**3, order_cap)
        return modular_group_p3(p)
    if kind == "heis":
        p = _parse_int(arg, spec)
        _check_cap(p**3, order_cap)
        return heisenberg_group_p3(p)
    if kind == "perm":
        gens = _parse_perm_arg(arg, spec)
        return from_permutation_generators(gens, order_cap=order_cap)
    raise SpecParseError(f"unknown group constructor {kind!r}")


def _parse_perm_arg(arg: str, spec: str):
    if not arg.strip():
        return []
    gens = []
    for gen_text in arg.split(","):
        gen_text = gen_text.strip()
        if not gen_text:
            raise SpecParseError(f"empty permutation generator in {spec!r}")
        if _PERM_CYCLE_RE.sub("", gen_text).strip():
            raise SpecParseError(f"bad cycle notation {gen_text!r} in {spec!r}")
        cycles = []
        for m in _PERM_CYCLE_RE.finditer(gen_text):
            body = m.group(1).split()
            if body:
                cycles.append(tuple(_parse_int(x, spec) for x in body))
        gens.append(cycles)
    return gens


def _parse_int(text: str, spec: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise SpecParseError(f"expected an integer in {spec!r}, got {text!r}") from None


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise OrderCapError(f"order {n} exceeds cap {cap}")
