"""Permutation groups on {0..m-1} given by generators.

Permutations are dense image tuples.  Composition is left-to-right:
mult(p, q) applies p first, then q.  Groups carry a lazily built
deterministic Schreier-Sims stabilizer chain that certifies the order and
supports membership sifting; a base prefix can be prescribed, which is
how block-kernel and prefix-stabilizer computations are realized.
"""

from __future__ import annotations

import numpy as np

from .errors import BudgetError, DomainError
from .zn import Section, multiplicative_closure, unit_group

Perm = tuple

INTERSECT_ENUM_THRESHOLD = 10 ** 6
INDUCED_TABLE_LIMIT = 10 ** 4


_IDENTITY_CACHE: dict[int, Perm] = {}


def identity(m: int) -> Perm:
    cached = _IDENTITY_CACHE.get(m)
    if cached is None:
        cached = _IDENTITY_CACHE[m] = tuple(range(m))
    return cached


def mult(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(map(q.__getitem__, p))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def check_perm(p, m: int | None = None) -> Perm:
    p = tuple(p)
    if m is not None and len(p) != m:
        raise DomainError(f"permutation degree {len(p)} != {m}")
    if set(p) != set(range(len(p))):
        raise DomainError("not a permutation")
    return p


def is_identity(p: Perm) -> bool:
    return p == identity(len(p))


def translation(n: int, k: int) -> Perm:
    return tuple((x + k) % n for x in range(n))


class StabChain:
    """Deterministic incremental Schreier-Sims chain.

    ``base`` may be prescribed up front (levels are created eagerly), in
    which case the pointwise stabilizer of any base prefix is generated by
    the strong generators fixing that prefix.
    """

    def __init__(self, degree: int, base: tuple[int, ...] = ()):
        self.degree = degree
        self.base: list[int] = []
        self.gen_lists: list[list[Perm]] = []
        # transversals[i][pt] = (u, u^-1) with u[base[i]] = pt
        self.transversals: list[dict[int, tuple[Perm, Perm]]] = []
        # per level: generators seen by the closure scan and the pair queue
        self._known: list[list[Perm]] = []
        self._orbit_order: list[list[int]] = []
        self._pending: list[list[tuple[int, int]]] = []
        self._dirty: set[int] = set()
        for b in base:
            self._new_level(b)

    @classmethod
    def from_levels(cls, degree: int, levels) -> "StabChain":
        """Assemble a chain from (basepoint, transversal, generators)
        triples that are known (by construction) to form a valid chain."""
        chain = cls(degree)
        for b, trans, gens in levels:
            chain.base.append(b)
            chain.transversals.append(
                {pt: (u, inverse(u)) for pt, u in trans.items()})
            chain.gen_lists.append(list(gens))
            chain._known.append([])
            chain._orbit_order.append([])
            chain._pending.append([])
        return chain

    def _new_level(self, b: int) -> None:
        self.base.append(b)
        self.gen_lists.append([])
        self.transversals.append({b: (identity(self.degree),) * 2})
        self._known.append([])
        self._orbit_order.append([b])
        self._pending.append([])

    def level_generators(self, level: int) -> list[Perm]:
        """Generators of the stabilizer of base[:level] (strong generators
        added at this level or deeper)."""
        out = []
        for lst in self.gen_lists[level:]:
            out.extend(lst)
        return out

    def strong_generators(self) -> list[Perm]:
        return self.level_generators(0)

    def order(self) -> int:
        total = 1
        for t in self.transversals:
            total *= len(t)
        return total

    def strip(self, g: Perm, level: int = 0) -> tuple[Perm, int]:
        """Sift g from the given level; returns (residue, level reached)."""
        h = g
        for lev in range(level, len(self.base)):
            b = self.base[lev]
            img = h[b]
            if img == b:
                continue
            pair = self.transversals[lev].get(img)
            if pair is None:
                return h, lev
            h = mult(h, pair[1])
        return h, len(self.base)

    def contains(self, g: Perm) -> bool:
        residue, _ = self.strip(g)
        return is_identity(residue)

    def insert(self, g: Perm) -> bool:
        """Add g to the group if not already a member.  Returns True if the
        group grew."""
        residue, lev = self.strip(g)
        if is_identity(residue):
            return False
        self._append_gen(lev, residue)
        self._close_all()
        return True

    def _append_gen(self, lev: int, g: Perm) -> None:
        if lev == len(self.base):
            b = next(p for p in range(self.degree) if g[p] != p)
            self._new_level(b)
        self.gen_lists[lev].append(g)
        self._dirty.update(range(lev + 1))

    def _close_all(self) -> None:
        # Deepest-first: closing a level may dirty it and everything above.
        while self._dirty:
            lev = max(self._dirty)
            self._dirty.discard(lev)
            self._close_level(lev)

    def _sync_level(self, lev: int) -> None:
        """Queue Schreier pairs for new generators and new orbit points."""
        known = self._known[lev]
        known_set = set(known)
        trans = self.transversals[lev]
        order = self._orbit_order[lev]
        pending = self._pending[lev]
        for g in self.level_generators(lev):
            if g not in known_set:
                known_set.add(g)
                known.append(g)
                gi = len(known) - 1
                for pt_idx in range(len(order)):
                    pending.append((pt_idx, gi))
        # extend orbit with all known generators
        i = 0
        scan = order
        while i < len(scan):
            pt = scan[i]
            i += 1
            u = trans[pt][0]
            for gi, g in enumerate(known):
                img = g[pt]
                if img not in trans:
                    v = mult(u, g)
                    trans[img] = (v, inverse(v))
                    order.append(img)
                    for gj in range(len(known)):
                        pending.append((len(order) - 1, gj))

    def _close_level(self, lev: int) -> None:
        self._sync_level(lev)
        trans = self.transversals[lev]
        order = self._orbit_order[lev]
        known = self._known[lev]
        pending = self._pending[lev]
        while pending:
            pt_idx, gi = pending.pop()
            pt = order[pt_idx]
            g = known[gi]
            u = trans[pt][0]
            schreier = mult(mult(u, g), trans[g[pt]][1])
            if is_identity(schreier):
                continue
            residue, sublev = self.strip(schreier, lev + 1)
            if not is_identity(residue):
                self._append_gen(sublev, residue)
                self._dirty.add(lev)
                return

    def elements(self):
        """Iterate all group elements (use only when the order is small)."""

        def rec(level):
            if level == len(self.base):
                yield identity(self.degree)
                return
            for sub in rec(level + 1):
                for u, _ in self.transversals[level].values():
                    yield mult(sub, u)

        yield from rec(0)


class PermGroup:
    """A permutation group of the given degree with a generator list."""

    def __init__(self, degree: int, generators, chain: StabChain | None = None,
                 base_hint: tuple[int, ...] = ()):
        self.degree = degree
        gens = []
        seen = set()
        for g in generators:
            g = check_perm(g, degree)
            if not is_identity(g) and g not in seen:
                seen.add(g)
                gens.append(g)
        self.generators: tuple[Perm, ...] = tuple(gens)
        self._chain = chain
        self._base_hint = tuple(base_hint)
        self._two_orbit_labels: np.ndarray | None = None

    @property
    def chain(self) -> StabChain:
        if self._chain is None:
            ch = StabChain(self.degree, base=self._base_hint)
            for g in self.generators:
                ch.insert(g)
            self._chain = ch
        return self._chain

    def order(self) -> int:
        return self.chain.order()

    def contains(self, g) -> bool:
        g = check_perm(g, self.degree)
        return self.chain.contains(g)

    def elements(self):
        return self.chain.elements()

    def orbits(self) -> list[list[int]]:
        """Point orbits, each sorted, ordered by minimum element."""
        seen = [False] * self.degree
        out = []
        for x in range(self.degree):
            if seen[x]:
                continue
            orbit = {x}
            stack = [x]
            while stack:
                y = stack.pop()
                for g in self.generators:
                    z = g[y]
                    if z not in orbit:
                        orbit.add(z)
                        stack.append(z)
            for y in orbit:
                seen[y] = True
            out.append(sorted(orbit))
        return out

    def is_transitive(self) -> bool:
        return self.degree == 1 or len(self.orbits()) == 1

    def to_json_dict(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}

    @staticmethod
    def from_json_dict(data: dict) -> "PermGroup":
        return PermGroup(data["degree"], [tuple(g) for g in data["generators"]])

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def trivial_group(n: int) -> PermGroup:
    return PermGroup(n, [])


def translations(n: int) -> PermGroup:
    """The regular group of translations of Z_n."""
    if n == 1:
        return trivial_group(1)
    return PermGroup(n, [translation(n, 1)])


def symmetric(n: int) -> PermGroup:
    if n <= 1:
        return trivial_group(max(n, 1))
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return PermGroup(n, gens)


def unit_generators(m: int) -> tuple[int, ...]:
    """A small generating set of (Z/m)*, chosen greedily by least element."""
    if m <= 2:
        return ()
    gens: list[int] = []
    closure = {1}
    for u in unit_group(m):
        if u not in closure:
            gens.append(u)
            closure = set(multiplicative_closure(m, tuple(gens)))
    return tuple(gens)


def holomorph(m: int) -> PermGroup:
    """Hol(Z_m): generated by x -> x+1 and x -> g*x for unit generators g."""
    if m == 1:
        return trivial_group(1)
    gens = [translation(m, 1)]
    for g in unit_generators(m):
        gens.append(tuple((g * x) % m for x in range(m)))
    return PermGroup(m, gens)


def groups_equal(g1: PermGroup, g2: PermGroup) -> bool:
    """Exact equality as permutation groups (same degree, same element set)."""
    if g1.degree != g2.degree:
        return False
    if g1.order() != g2.order():
        return False
    return all(g2.contains(g) for g in g1.generators)


def two_orbits(group: PermGroup) -> np.ndarray:
    """Orbit labels of the coordinatewise action on ordered pairs.

    Returns an m x m int32 matrix; labels are assigned in row-major order
    of first encounter, so equal partitions yield identical matrices.
    """
    if group._two_orbit_labels is not None:
        return group._two_orbit_labels
    m = group.degree
    labels = np.full((m, m), -1, dtype=np.int32)
    gens = group.generators
    next_label = 0
    for x in range(m):
        for y in range(m):
            if labels[x, y] != -1:
                continue
            stack = [(x, y)]
            labels[x, y] = next_label
            while stack:
                a, b = stack.pop()
                for g in gens:
                    c, d = g[a], g[b]
                    if labels[c, d] == -1:
                        labels[c, d] = next_label
                        stack.append((c, d))
            next_label += 1
    group._two_orbit_labels = labels
    return labels


def two_equivalent(g1: PermGroup, g2: PermGroup) -> bool:
    """Whether the two groups have identical orbits on ordered pairs."""
    if g1.degree != g2.degree:
        raise DomainError(f"degree mismatch: {g1.degree} != {g2.degree}")
    return bool(np.array_equal(two_orbits(g1), two_orbits(g2)))


def _coset_invariant(g: Perm, n: int, modulus: int) -> bool:
    """Whether g permutes the residue classes mod ``modulus`` of Z_n."""
    image = [-1] * modulus
    for x in range(n):
        c = x % modulus
        d = g[x] % modulus
        if image[c] == -1:
            image[c] = d
        elif image[c] != d:
            return False
    return True


def _check_section_invariant(group: PermGroup, sec: Section) -> None:
    n = sec.n
    if group.degree != n:
        raise DomainError(f"group degree {group.degree} does not match section modulus {n}")
    for g in group.generators:
        if not (_coset_invariant(g, n, n // sec.u) and _coset_invariant(g, n, n // sec.l)):
            raise DomainError(f"section not invariant under generator {g}")


def _section_stabilizer_gens(group: PermGroup, sec: Section) -> list[Perm]:
    """Schreier generators of the setwise stabilizer of U, using the
    translations t_j as coset representatives (the group is assumed to
    contain them)."""
    n, u = sec.n, sec.u
    nu = n // u
    if u == n:
        return list(group.generators)
    gens = []
    for g in group.generators:
        for j in range(nu):
            k = g[j] % nu
            gens.append(tuple((g[(x + j) % n] - k) % n for x in range(n)))
    return gens


def _induced_perm(h: Perm, sec: Section) -> Perm:
    """Action of a U-stabilizing permutation on L-classes within U, as a
    permutation of Z_{u/l} under the canonical identification."""
    nu = sec.n // sec.u
    s = sec.order
    return tuple((h[c * nu] // nu) % s for c in range(s))


def induced_on_section(group: PermGroup, sec: Section) -> PermGroup:
    """The action induced on the section U/L of Z_n by the setwise
    stabilizer of U, under the canonical identification with Z_{u/l}.

    Requires the U-coset and L-coset partitions to be invariant; the group
    is assumed to contain the translations of Z_n (so the setwise
    stabilizer is reached by translation coset representatives).
    """
    _check_section_invariant(group, sec)
    if sec.u == sec.n and sec.l == 1:
        return group
    induced = {_induced_perm(h, sec) for h in _section_stabilizer_gens(group, sec)}
    return PermGroup(sec.order, induced)


def kernel_on_blocks(group: PermGroup, blocks,
                     set_orbit_limit: int = 100_000) -> PermGroup:
    """The subgroup fixing every block setwise.

    The group is made to act on the orbit of the block sets; a stabilizer
    chain on the extended domain with those set labels as base prefix then
    yields the pointwise stabilizer of the labels, i.e. the kernel.  For a
    G-invariant partition the orbit is the partition itself.
    """
    m = group.degree
    blocks = [frozenset(b) for b in blocks]
    covered: set[int] = set()
    for b in blocks:
        if b & covered:
            raise DomainError("blocks are not disjoint")
        covered |= b
    if covered != set(range(m)):
        raise DomainError("blocks do not cover the domain")

    sets: list[frozenset] = list(dict.fromkeys(blocks))
    index = {b: i for i, b in enumerate(sets)}
    frontier = list(sets)
    while frontier:
        b = frontier.pop()
        for g in group.generators:
            img = frozenset(g[x] for x in b)
            if img not in index:
                if len(sets) >= set_orbit_limit:
                    raise BudgetError(
                        f"block-set orbit exceeds limit {set_orbit_limit}")
                index[img] = len(sets)
                sets.append(img)
                frontier.append(img)

    nb = len(sets)
    ext_gens = []
    for g in group.generators:
        images = [index[frozenset(g[x] for x in b)] for b in sets]
        ext_gens.append(tuple(g) + tuple(m + j for j in images))

    base = tuple(m + index[b] for b in blocks)
    chain = StabChain(m + nb, base=base)
    for g in ext_gens:
        chain.insert(g)
    kernel_gens = [g[:m] for g in chain.strong_generators()
                   if all(g[m + index[b]] == m + index[b] for b in blocks)]
    return PermGroup(m, kernel_gens)


def intersect(g1: PermGroup, g2: PermGroup,
              threshold: int = INTERSECT_ENUM_THRESHOLD) -> PermGroup:
    """Intersection by enumerating the smaller group and sifting through
    the larger group's chain.  Hard error above the enumeration threshold."""
    if g1.degree != g2.degree:
        raise DomainError(f"degree mismatch: {g1.degree} != {g2.degree}")
    small, big = (g1, g2) if g1.order() <= g2.order() else (g2, g1)
    if small.order() > threshold:
        raise BudgetError(
            f"both groups exceed enumeration threshold {threshold} "
            f"(orders {g1.order()}, {g2.order()})")
    result = StabChain(small.degree)
    gens = []
    for el in small.elements():
        if big.contains(el) and result.insert(el):
            gens.append(el)
    return PermGroup(small.degree, gens, chain=result)


def induced_action_table(group: PermGroup, sec: Section,
                         limit: int = INDUCED_TABLE_LIMIT) -> dict[Perm, Perm]:
    """Map each element of the induced section action to one preimage, by
    breadth-first search over products of the stabilizer generators."""
    _check_section_invariant(group, sec)
    s = sec.order
    base_gens = _section_stabilizer_gens(group, sec)
    pairs = []
    seen = set()
    for h in base_gens:
        sigma = _induced_perm(h, sec)
        if sigma not in seen:
            seen.add(sigma)
            pairs.append((h, sigma))

    table: dict[Perm, Perm] = {identity(s): identity(group.degree)}
    frontier = [(identity(s), identity(group.degree))]
    while frontier:
        sigma, elem = frontier.pop(0)
        for h, hs in pairs:
            new_sigma = mult(sigma, hs)
            if new_sigma not in table:
                if len(table) >= limit:
                    raise BudgetError(f"induced image exceeds table limit {limit}")
                new_elem = mult(elem, h)
                table[new_sigma] = new_elem
                frontier.append((new_sigma, new_elem))
    return table


def preimage_with_induced(group: PermGroup, sec: Section, target,
                          limit: int = INDUCED_TABLE_LIMIT) -> Perm:
    """Some group element whose induced action on the section equals
    ``target`` (BFS over generator products; identity maps to identity)."""
    table = induced_action_table(group, sec, limit)
    target = check_perm(target, sec.order)
    found = table.get(tuple(target))
    if found is None:
        raise DomainError("target is not in the induced image of the group")
    return found
