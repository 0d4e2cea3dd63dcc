"""Projective classes of sections, isolated pairs, singular classes, the
extension construction, automorphism subgroups built from a transitive
group on a section, the canonical generalized wreath product of
permutation groups, and the singularity-resolution recursion."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetError, DomainError
from .perm import (
    INDUCED_TABLE_LIMIT,
    Perm,
    PermGroup,
    groups_equal,
    holomorph,
    induced_action_table,
    induced_on_section,
    kernel_on_blocks,
    two_equivalent,
)
from .scheme import DEFAULT_AUT_MAX_N, DEFAULT_NODE_BUDGET, aut_group
from .sring import (
    SRing,
    group_ring,
    internal_product_partition,
    s_condition_holds,
    section_ring,
    subgroup_lattice,
    validate,
    generalized_wreath,
)
from .zn import Section, is_multiple, is_prime


@dataclass(frozen=True)
class ProjClass:
    """A class of projectively equivalent sections of an S-ring, with its
    smallest and greatest members and structural flags."""

    sections: tuple[Section, ...]
    s_min: Section
    s_max: Section
    order: int
    rank: int
    primitive: bool
    isolated: bool
    singular: bool
    normal: bool | None = None

    def sort_key(self):
        return (self.order, self.s_min.u, self.s_min.l)


def _all_sections(ring: SRing) -> list[Section]:
    lattice = subgroup_lattice(ring)
    out = []
    for u in lattice:
        for l in lattice:
            if u % l == 0:
                out.append(Section(ring.n, u, l))
    return out


def _pair_is_isolated(ring: SRing, s_min: Section, s_max: Section) -> bool:
    """Decomposition conditions for the extremal pair: the ring satisfies
    both section conditions, and the ring induced on U1/L0 is the product
    of the rings induced on L1/L0 and U0/L0."""
    l1, l0 = s_min.u, s_min.l
    u1, u0 = s_max.u, s_max.l
    if not (s_condition_holds(ring, u0, l0) and s_condition_holds(ring, u1, l1)):
        return False
    mid = section_ring(ring, Section(ring.n, u1, l0))
    left = section_ring(ring, s_min)
    right = section_ring(ring, Section(ring.n, u0, l0))
    return mid.cells == internal_product_partition(u1 // l0, left, right)


def proj_classes(ring: SRing) -> list[ProjClass]:
    """All A-sections grouped by the transitive closure of the multiple
    relation, with verified extremal members, sorted by (order, s_min)."""
    sections = _all_sections(ring)
    k = len(sections)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if is_multiple(sections[i], sections[j]) or is_multiple(sections[j], sections[i]):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri

    groups: dict[int, list[Section]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(sections[i])

    out = []
    for members in groups.values():
        orders = {sec.order for sec in members}
        if len(orders) != 1:
            raise AssertionError("projectively equivalent sections with unequal orders")
        order = orders.pop()
        s_min = next((m for m in members if all(is_multiple(x, m) for x in members)), None)
        s_max = next((m for m in members if all(is_multiple(m, x) for x in members)), None)
        if s_min is None or s_max is None:
            raise AssertionError(
                f"class without extremal elements: {[(m.u, m.l) for m in members]}")
        ring_s = section_ring(ring, s_min)
        lattice_s = subgroup_lattice(ring_s)
        primitive = order > 1 and lattice_s == (1, order)
        isolated = order > 1 and _pair_is_isolated(ring, s_min, s_max)
        singular = ring_s.rank == 2 and order > 2 and isolated
        out.append(ProjClass(
            sections=tuple(sorted(members, key=lambda s: (s.u, s.l))),
            s_min=s_min, s_max=s_max, order=order,
            rank=ring_s.rank, primitive=primitive,
            isolated=isolated, singular=singular,
        ))
    out.sort(key=ProjClass.sort_key)
    return out


def isolated_pair(ring: SRing, cl: ProjClass, *, exhaustive: bool = False):
    """The isolated pair of the class, or None.  When it exists it is
    (s_min, s_max); with ``exhaustive`` every other multiple pair in the
    class is additionally checked to NOT satisfy the conditions."""
    if cl.order <= 1:
        return None
    found = _pair_is_isolated(ring, cl.s_min, cl.s_max)
    if exhaustive:
        for s in cl.sections:
            for t in cl.sections:
                if (s, t) == (cl.s_min, cl.s_max):
                    continue
                if is_multiple(t, s) and _pair_is_isolated(ring, s, t):
                    raise AssertionError(
                        f"unexpected second isolated pair ({(s.u, s.l)}, {(t.u, t.l)})")
    return (cl.s_min, cl.s_max) if found else None


def singular_classes(ring: SRing) -> list[ProjClass]:
    """Classes of rank 2 and order > 2 containing an isolated pair."""
    return [cl for cl in proj_classes(ring) if cl.singular]


def ext(ring: SRing, cl: ProjClass, finer: SRing) -> SRing:
    """Extension of the ring over an isolated class: the rank-2 section
    ring on S = s_min is replaced by the finer ring ``finer``.

    Built as A1 wr_{U1/L0} A2 with
    A1 = A_{U0} wr_{U0/L0} (B (x) A_{U0/L0}) over U1 and
    A2 = (B (x) A_{U0/L0}) wr_{U1/L1} A_{G/L1} over G/L0.
    """
    if not cl.isolated:
        raise DomainError("extension requires an isolated class")
    n = ring.n
    l1, l0 = cl.s_min.u, cl.s_min.l
    u1, u0 = cl.s_max.u, cl.s_max.l
    s = l1 // l0
    ring_s = section_ring(ring, cl.s_min)
    if finer.n != s:
        raise DomainError(f"replacement ring must live over Z_{s}, got Z_{finer.n}")
    if not finer.refines(ring_s):
        raise DomainError("replacement ring does not refine the section ring")

    ring_u0 = section_ring(ring, Section(n, u0, 1))
    ring_u0_l0 = section_ring(ring, Section(n, u0, l0))
    ring_g_l1 = section_ring(ring, Section(n, n, l1))
    mixed = validate(u1 // l0, internal_product_partition(u1 // l0, finer, ring_u0_l0))

    a1 = generalized_wreath(ring_u0, mixed, Section(u1, u0, l0))
    a2 = generalized_wreath(mixed, ring_g_l1, Section(n // l0, u1 // l0, l1 // l0))
    result = generalized_wreath(a1, a2, Section(n, u1, l0))
    if not result.refines(ring):
        raise AssertionError("extension does not refine the original ring")
    return result


@dataclass(frozen=True)
class GwrSpec:
    """Data for the automorphism subgroup supported on U1: the extremal
    sections of an isolated class and a transitive group on S."""

    s_min: Section
    s_max: Section
    m_group: PermGroup

    def __post_init__(self):
        if not is_multiple(self.s_max, self.s_min):
            raise DomainError("s_max must be a multiple of s_min")
        if self.m_group.degree != self.s_min.order:
            raise DomainError(
                f"group degree {self.m_group.degree} != section order {self.s_min.order}")
        if not self.m_group.is_transitive():
            raise DomainError("the section group must be transitive")


def gwr_group(n: int, spec: GwrSpec) -> PermGroup:
    """The subgroup of Sym(Z_n) fixing G minus U1 pointwise whose action on
    U1 moves U0-cosets by class-preserving translations according to M.

    Generators: (i) per generator of M, the permutation translating each
    U0-coset a+U0 of U1 to a'+U0 by the least representative of a'-a+L0;
    (ii) per U0-coset of U1, translation by the generator of L0 on that
    coset alone.  The order is |M| * l0^{|S|}.
    """
    l1, l0 = spec.s_min.u, spec.s_min.l
    u1 = spec.s_max.u
    if spec.s_min.n != n:
        raise DomainError("section modulus does not match n")
    s = l1 // l0
    r = u1 // l1  # index of L1 in U1 = index of L0 in U0, coprime to s
    rinv = pow(r, -1, s) if s > 1 else 0
    nu1 = n // u1
    gens = []

    def coset_class(x: int) -> int:
        # S-label of the U0-coset of x within U1 (via the natural
        # isomorphism L1/L0 -> U1/U0, aL0 -> aU0)
        return ((x // nu1) % s) * rinv % s if s > 1 else 0

    for m in spec.m_group.generators:
        img = list(range(n))
        for x in range(n):
            if x % nu1:
                continue
            c = coset_class(x)
            shift = ((m[c] - c) * (n // l1)) % n % (n // l0)
            img[x] = (x + shift) % n
        gens.append(tuple(img))

    if l0 > 1:
        step = n // l0
        for cp in range(s):
            img = list(range(n))
            for x in range(n):
                if x % nu1 == 0 and coset_class(x) == cp:
                    img[x] = (x + step) % n
            gens.append(tuple(img))
    return PermGroup(n, gens)


def gwr_for_class(ring: SRing, cl: ProjClass, m_group: PermGroup) -> PermGroup:
    return gwr_group(ring.n, GwrSpec(cl.s_min, cl.s_max, m_group))


def canonical_gwp(d_u: PermGroup, d_0: PermGroup, sec: Section, *,
                  table_limit: int = INDUCED_TABLE_LIMIT) -> PermGroup:
    """Canonical generalized wreath product of d_u (on Z_u, containing its
    translations) by d_0 (on Z_{n/l}, containing its translations), for the
    section U/L of Z_n.  Requires the two induced actions on S = U/L to
    agree exactly.

    The result projects onto d_0 mod L, restricts to d_u on U, and has
    order |d_0| * |kernel|^{n/u} where kernel is the subgroup of d_u fixing
    every L-coset setwise.
    """
    n, u, l = sec.n, sec.u, sec.l
    if d_u.degree != u:
        raise DomainError(f"top factor must act on Z_{u}, got degree {d_u.degree}")
    if d_0.degree != n // l:
        raise DomainError(f"bottom factor must act on Z_{n // l}, got degree {d_0.degree}")
    s = u // l
    nu = n // u
    ind_u = induced_on_section(d_u, Section(u, u, l))
    ind_0 = induced_on_section(d_0, Section(n // l, u // l, 1))
    if not groups_equal(ind_u, ind_0):
        raise DomainError(
            "induced section actions differ: orders "
            f"{ind_u.order()} vs {ind_0.order()}")

    table = induced_action_table(d_u, Section(u, u, l), table_limit)
    gens: list[Perm] = []

    # kernel part: the L-coset kernel of d_u, copied onto every U-coset
    kernel = kernel_on_blocks(d_u, [[y for y in range(u) if y % s == c] for c in range(s)])
    for k in kernel.generators:
        for j in range(nu):
            img = list(range(n))
            for y in range(u):
                img[j + nu * y] = j + nu * k[y]
            gens.append(tuple(img))

    # lifts: one permutation per generator of d_0, acting blockwise through
    # translation identifications of each U-coset with U
    for g0 in d_0.generators:
        img = [0] * n
        for j in range(nu):
            jp = g0[j] % nu
            sigma = tuple((((g0[(j + c * nu) % (n // l)] - jp) % (n // l)) // nu) % s
                          for c in range(s))
            d = table.get(sigma)
            if d is None:
                raise DomainError("lifting failure: block action not in the top factor")
            for y in range(u):
                img[j + nu * y] = jp + nu * d[y]
        gens.append(tuple(img))
    return PermGroup(n, gens)


@dataclass(frozen=True)
class ResolveResult:
    group: PermGroup
    verified: bool | None  # None = comparison out of budget ("post unverified")


def resolve(ring: SRing, *, aut_max_n: int = DEFAULT_AUT_MAX_N,
            node_budget: int = DEFAULT_NODE_BUDGET,
            verify_max_n: int = DEFAULT_AUT_MAX_N) -> ResolveResult:
    """A subgroup of Sym(Z_n) that is 2-equivalent to Aut(ring) for
    schurian rings, built by resolving prime-order singular classes.

    With no prime-order singular class this is Aut(ring) itself; otherwise
    the class with least (order, s_min) is extended with the full group
    ring on S, the extension is resolved recursively, and the result is
    joined with the Gwr group of the class for M = Hol(S).
    """
    group = _resolve_group(ring, aut_max_n, node_budget)
    verified = None
    if ring.n <= verify_max_n:
        try:
            verified = two_equivalent(group, aut_group(
                ring, max_n=aut_max_n, node_budget=node_budget))
        except BudgetError:
            verified = None
    return ResolveResult(group=group, verified=verified)


def _resolve_group(ring: SRing, aut_max_n: int, node_budget: int) -> PermGroup:
    prime_classes = [cl for cl in singular_classes(ring) if is_prime(cl.order)]
    if not prime_classes:
        return aut_group(ring, max_n=aut_max_n, node_budget=node_budget)
    cl = min(prime_classes, key=ProjClass.sort_key)
    extended = ext(ring, cl, group_ring(cl.order))
    sub = _resolve_group(extended, aut_max_n, node_budget)
    delta = gwr_for_class(ring, cl, holomorph(cl.order))
    return PermGroup(ring.n, sub.generators + delta.generators)
