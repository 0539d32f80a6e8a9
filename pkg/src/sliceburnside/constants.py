"""Deflation constants of the slice ring, B-groups and T-slices.

The ground-truth computation always runs over the full subgroup lattice;
a Frattini-quotient shortcut is available behind a flag and is cross-checked
against the direct path in the test suite.
"""

from __future__ import annotations

from fractions import Fraction

from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    all_subgroups,
    close_under_product,
    frattini,
    is_normal,
    normalizer,
    quotient,
    slice_normalizer,
    subgroup_as_group,
)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _joins_to_full(lat, v: int, n: int, full_size: int) -> bool:
    # V*N = G  <=>  |V||N| == |G| * |V & N|   (N normal, so V*N is a subgroup)
    inter = _popcount(lat.masks[v] & lat.masks[n])
    return len(lat.subgroups[v]) * len(lat.subgroups[n]) == full_size * inter


def supplement_moebius_sum(group: FiniteGroup, s_members, n_members) -> int:
    """Sum of moebius(V, G) over subgroups V containing S with V*N = G."""
    lat = all_subgroups(group)
    s = lat.index_of(s_members)
    n = lat.index_of(n_members)
    full = lat.index_of(range(group.order))
    total = 0
    for v in lat.above[s]:
        if _joins_to_full(lat, v, n, group.order):
            total += lat.moebius(v, full)
    return total


def classical_deflation_constant(group: FiniteGroup, n_members) -> Fraction:
    """The scalar by which deflation mod N acts on the top idempotent of the
    ordinary Burnside ring: (1/|G|) * sum of |U| moebius(U, G) over U*N = G."""
    if not is_normal(group, n_members):
        raise GroupError("deflation constant needs a normal subgroup")
    lat = all_subgroups(group)
    n = lat.index_of(n_members)
    full = lat.index_of(range(group.order))
    total = 0
    for u in range(len(lat.subgroups)):
        if _joins_to_full(lat, u, n, group.order):
            total += len(lat.subgroups[u]) * lat.moebius(u, full)
    return Fraction(total, group.order)


def deflation_constant(
    group: FiniteGroup, s_members, n_members, frattini_shortcut: bool = False
) -> Fraction:
    """The scalar by which deflation mod N acts on the idempotent of the
    slice (G, S).

    Direct evaluation: a prefactor of normalizer indices times the double
    Moebius sum over U <= S <= V <= G with U*N = S*N and V*N = G; the two
    constraints are independent, so the sum factors.
    """
    if not is_normal(group, n_members):
        raise GroupError("deflation constant needs a normal subgroup")
    lat = all_subgroups(group)
    s = lat.index_of(s_members)
    n = lat.index_of(n_members)
    sn_members = _product_members(group, s_members, n_members)
    norm_sn = len(normalizer(group, sn_members))
    norm_s = len(normalizer(group, s_members))
    prefactor = Fraction(norm_sn, len(sn_members) * norm_s)

    if frattini_shortcut:
        s_in = subgroup_as_group(Subgroup.from_members(group, s_members))
        s_cap_n = [
            i for i, x in enumerate(s_in.images) if x in set(n_members)
        ]
        inner = (
            len(s_members)
            * classical_deflation_constant_frattini(s_in.source, s_cap_n)
            * supplement_moebius_sum_frattini(group, s_members, n_members)
        )
        return prefactor * inner

    # factored double sum, entirely inside this group's lattice
    s_size, n_mask = len(s_members), lat.masks[n]
    n_size = len(lat.subgroups[n])
    s_ratio = s_size // _popcount(lat.masks[s] & n_mask)
    lower = 0
    for u in lat.below[s]:
        # U*N = S*N  <=>  |U| / |U & N| == |S| / |S & N|   (U <= S)
        u_size = len(lat.subgroups[u])
        if u_size == s_ratio * _popcount(lat.masks[u] & n_mask):
            lower += u_size * lat.moebius(u, s)
    upper = supplement_moebius_sum(group, s_members, n_members)
    return prefactor * lower * upper


def deflation_constant_is_nonzero(group: FiniteGroup, s_members, n_members) -> bool:
    """Fast zero test: the prefactor of normalizer indices is positive, so
    the constant vanishes exactly when one of the two Moebius sums does."""
    lat = all_subgroups(group)
    s = lat.index_of(s_members)
    n = lat.index_of(n_members)
    n_mask = lat.masks[n]
    s_ratio = len(lat.subgroups[s]) // _popcount(lat.masks[s] & n_mask)
    lower = 0
    for u in lat.below[s]:
        u_size = len(lat.subgroups[u])
        if u_size == s_ratio * _popcount(lat.masks[u] & n_mask):
            lower += u_size * lat.moebius(u, s)
    if lower == 0:
        return False
    return supplement_moebius_sum(group, s_members, n_members) != 0


def classical_deflation_constant_frattini(group: FiniteGroup, n_members) -> Fraction:
    """Classical constant computed in the Frattini quotient."""
    phi = frattini(group)
    q = quotient(group, phi.members)
    n_img = q.image_members(_product_members(group, n_members, phi.members))
    return classical_deflation_constant(q.group, n_img)


def supplement_moebius_sum_frattini(group: FiniteGroup, s_members, n_members) -> int:
    """Supplement sum computed in the Frattini quotient (equal to the direct
    value because moebius(V, G) vanishes unless V contains the Frattini)."""
    phi = frattini(group)
    q = quotient(group, phi.members)
    s_img = q.image_members(_product_members(group, s_members, phi.members))
    n_img = q.image_members(_product_members(group, n_members, phi.members))
    return supplement_moebius_sum(q.group, s_img, n_img)


def _product_members(group: FiniteGroup, a_members, b_members) -> tuple[int, ...]:
    out = set()
    for a in a_members:
        row = group._mul[a]
        for b in b_members:
            out.add(row[b])
    return tuple(sorted(out))


def deflation_idempotent_scalar(
    group: FiniteGroup, t_members, s_members, n_members
) -> Fraction:
    """Predicted scalar for deflating the idempotent of a slice (T, S) mod N.

    Combines the constant of (T, S) inside T with a ratio of slice-normalizer
    sizes.  Derived by factoring the idempotent through induction from T and
    commuting deflation past it; the |T n N| / |N| factor comes from reading
    the normalizer of the image slice inside TN/N.
    """
    if not is_normal(group, n_members):
        raise GroupError("deflation scalar needs a normal subgroup")
    t_members = tuple(sorted(set(t_members)))
    s_members = tuple(sorted(set(s_members)))
    n_set = set(n_members)
    emb = subgroup_as_group(Subgroup.from_members(group, t_members))
    back = {y: i for i, y in enumerate(emb.images)}
    s_in_t = tuple(sorted(back[x] for x in s_members))
    t_cap_n = tuple(sorted(back[x] for x in t_members if x in n_set))
    m_inner = deflation_constant(emb.source, s_in_t, t_cap_n)
    tn = _product_members(group, t_members, n_members)
    sn = _product_members(group, s_members, n_members)
    s_set, sn_set = set(s_members), set(sn)
    nt_s = sum(
        1 for t in t_members if {group.conj(t, x) for x in s_members} == s_set
    )
    nt_sn = sum(1 for t in t_members if {group.conj(t, x) for x in sn} == sn_set)
    ng_ts = len(slice_normalizer(group, t_members, s_members))
    ng_tnsn = len(slice_normalizer(group, tn, sn))
    ratio = Fraction(nt_s * ng_tnsn * len(t_cap_n), ng_ts * nt_sn * len(n_set))
    return ratio * m_inner


# ---------------------------------------------------------------------------
# Complements of a minimal abelian normal subgroup


def is_abelian_members(group: FiniteGroup, members) -> bool:
    return all(
        group.mul(a, b) == group.mul(b, a) for a in members for b in members
    )


def minimal_normal_subgroups(group: FiniteGroup) -> list[Subgroup]:
    lat = all_subgroups(group)
    triv = lat.index_of([group.identity])
    normals = [i for i in lat.normal if i != triv]
    out = []
    for i in normals:
        if not any(
            j for j in normals if j != i and lat.contains_pair(j, i)
        ):
            out.append(lat.subgroups[i])
    return out


def complement_count(group: FiniteGroup, n_members) -> int:
    """Subgroups X with X*N = G and trivial intersection with N."""
    lat = all_subgroups(group)
    n = lat.index_of(n_members)
    count = 0
    for x in range(len(lat.subgroups)):
        if _popcount(lat.masks[x] & lat.masks[n]) != 1:
            continue
        if _joins_to_full(lat, x, n, group.order):
            count += 1
    return count


def complement_count_formula_check(
    group: FiniteGroup, n_members
) -> tuple[Fraction, Fraction]:
    """For a minimal abelian normal N: the deflation constant of the trivial
    slice both directly and as (1 - number of complements) / |N|."""
    if not is_normal(group, n_members):
        raise GroupError("needs a normal subgroup")
    if not is_abelian_members(group, n_members):
        raise GroupError("needs an abelian normal subgroup")
    mins = {s.mask for s in minimal_normal_subgroups(group)}
    sub = Subgroup.from_members(group, n_members)
    if sub.mask not in mins:
        raise GroupError("needs a minimal normal subgroup")
    direct = deflation_constant(group, (group.identity,), n_members)
    counted = Fraction(1 - complement_count(group, n_members), len(sub))
    return direct, counted


# ---------------------------------------------------------------------------
# B-groups and T-slices


def nontrivial_normal_subgroups(group: FiniteGroup) -> list[Subgroup]:
    lat = all_subgroups(group)
    triv = lat.index_of([group.identity])
    return [lat.subgroups[i] for i in lat.normal if i != triv]


def is_b_group(group: FiniteGroup) -> bool:
    """Every deflation constant mod a nontrivial normal subgroup vanishes."""
    return all(
        classical_deflation_constant(group, n.members) == 0
        for n in nontrivial_normal_subgroups(group)
    )


def is_t_slice(t_group: FiniteGroup, s_members) -> bool:
    """The slice (T, S) kills every deflation mod a nontrivial normal
    subgroup of T.  `s_members` live in `t_group`'s element indexing."""
    s_set = set(s_members)
    if not s_set <= set(t_group.elements()):
        raise GroupError("slice bottom must live inside the top group")
    return all(
        deflation_constant(t_group, tuple(sorted(s_set)), n.members) == 0
        for n in nontrivial_normal_subgroups(t_group)
    )


def is_t_slice_of(group: FiniteGroup, t_members, s_members) -> bool:
    """T-slice test for a slice (T, S) of an ambient group."""
    emb = subgroup_as_group(Subgroup.from_members(group, t_members))
    back = {y: i for i, y in enumerate(emb.images)}
    return is_t_slice(emb.source, tuple(sorted(back[x] for x in s_members)))


# ---------------------------------------------------------------------------
# p-group vanishing criterion and elementary abelian closed forms


def is_p_group(group: FiniteGroup) -> tuple[bool, int]:
    n = group.order
    if n == 1:
        return True, 0
    p = min(d for d in range(2, n + 1) if n % d == 0)
    m = n
    while m % p == 0:
        m //= p
    return m == 1, p


def is_cyclic_members(group: FiniteGroup, members) -> bool:
    k = len(tuple(members))
    return any(group.element_order(x) == k for x in members)


def quotient_is_cyclic(group: FiniteGroup, s_members, k_members) -> bool:
    """Whether S / K is cyclic, for K normal in S (tested via generation)."""
    s_set = set(s_members)
    k_list = list(k_members)
    return any(
        set(close_under_product(group, [x] + k_list)) == s_set
        for x in s_members
    )


def deflation_vanishes_predicted(group: FiniteGroup, s_members, n_members) -> bool:
    """Vanishing prediction for p-groups: the constant for (G, S) mod N is
    zero exactly when S is noncyclic with cyclic image mod N, or the slice
    is proper with S*N = G."""
    ok, _ = is_p_group(group)
    if not ok:
        raise GroupError("the vanishing criterion is stated for p-groups")
    s_members = tuple(sorted(set(s_members)))
    s_cap_n = tuple(sorted(set(s_members) & set(n_members)))
    s_noncyclic = not is_cyclic_members(group, s_members)
    first = s_noncyclic and quotient_is_cyclic(group, s_members, s_cap_n)
    sn = _product_members(group, s_members, n_members)
    second = len(s_members) != group.order and len(sn) == group.order
    return first or second


def elementary_abelian_classical_value(p: int, n: int, k: int) -> int:
    """Closed form for the classical constant on an elementary abelian group
    of rank n deflated by a rank-k subgroup."""
    out = 1
    for i in range(1, k + 1):
        out *= 1 - p ** (n - 1 - i)
    return out


def elementary_abelian_supplement_value(p: int, n: int, k: int) -> int:
    """Closed form for the supplement sum on an elementary abelian group of
    rank n with a rank-k subgroup."""
    out = 1
    for i in range(1, k + 1):
        out *= 1 - p ** (n - i)
    return out
