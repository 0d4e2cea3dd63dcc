"""Cayley schemes of S-rings and their automorphism groups.

The automorphism group is found by computing the stabilizer of 0 with an
individualization-refinement backtracking search over vertex colorings
(the edge-color table is fixed; refinement is one-dimensional).  Since the
translations are always automorphisms and act regularly, the full group
is the product of the translations with that stabilizer, which also gives
the exact order without a separate chain construction.  Discovered
automorphisms extend the known group immediately and prune sibling
branches through prefix-stabilizer orbits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import BudgetError, DomainError
from .perm import (
    PermGroup,
    StabChain,
    induced_on_section,
    intersect,
    inverse,
    mult,
    translation,
    two_equivalent,
)
from .sring import SRing, classify, section_ring
from .zn import Section

DEFAULT_AUT_MAX_N = 5000
DEFAULT_SCHURITY_MAX_N = 1000
DEFAULT_NODE_BUDGET = 500_000


@dataclass(frozen=True)
class CayleyScheme:
    """Edge coloring of Z_n x Z_n induced by an S-ring: the color of (g, h)
    is the index of the basic set containing h - g."""

    ring: SRing

    @property
    def n(self) -> int:
        return self.ring.n

    @property
    def ncolors(self) -> int:
        return self.ring.rank

    def color_of_pair(self, g: int, h: int) -> int:
        return self.ring.cell_of[(h - g) % self.n]

    @cached_property
    def color_matrix(self) -> np.ndarray:
        n = self.n
        cell_of = np.fromiter(self.ring.cell_of, dtype=np.uint16, count=n)
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        return cell_of[idx]


def cayley_scheme(ring: SRing) -> CayleyScheme:
    return CayleyScheme(ring)


class _StabilizerSearch:
    """Backtracking search for the full group of color-preserving
    permutations fixing 0 (equivalently, preserving every basic set)."""

    def __init__(self, scheme: CayleyScheme, node_budget: int):
        self.n = scheme.n
        self.D = scheme.color_matrix.astype(np.int64)
        self.ncolors = scheme.ncolors
        self.node_budget = node_budget
        self.nodes = 0
        initial = [np.array(cell, dtype=np.int64) for cell in scheme.ring.cells]
        self.p_seq = [self._refine(initial)]
        self.base: list[int] = []
        self.target_cells: list[int] = []
        while True:
            cells = self.p_seq[-1]
            ci = self._target_cell(cells)
            if ci is None:
                break
            b = int(cells[ci].min())
            self.base.append(b)
            self.target_cells.append(ci)
            self.p_seq.append(self._refine(self._individualize(cells, ci, b)))
        self.p_shapes = [tuple(len(c) for c in p) for p in self.p_seq]
        self.p_leaf = np.concatenate(self.p_seq[-1]) if self.n else np.array([], dtype=np.int64)
        self.known = StabChain(self.n, base=tuple(self.base))
        self._orbit_cache: dict[int, tuple[int, list[int]]] = {}
        self._version = 0

    @staticmethod
    def _target_cell(cells) -> int | None:
        """Smallest non-singleton cell, ties by minimum vertex."""
        best = None
        for i, c in enumerate(cells):
            if len(c) == 1:
                continue
            key = (len(c), int(c.min()))
            if best is None or key < best[0]:
                best = (key, i)
        return None if best is None else best[1]

    @staticmethod
    def _individualize(cells, ci: int, v: int):
        out = list(cells)
        cell = cells[ci]
        rest = cell[cell != v]
        out[ci: ci + 1] = [np.array([v], dtype=np.int64), rest]
        return out

    def _refine(self, cells):
        """One-dimensional refinement against the edge-color table, stable
        under color-automorphisms cell-index-wise.

        The signature of a vertex v is the multiset of (edge color to u,
        cell of u) over all u, realized as the sorted row of combined
        keys; cells split into the lexicographic order of signatures.
        """
        n, D = self.n, self.D
        while True:
            C = len(cells)
            if C == n:
                return cells
            cell_id = np.empty(n, dtype=np.int64)
            for i, c in enumerate(cells):
                cell_id[c] = i
            active = np.concatenate([c for c in cells if len(c) > 1])
            keys = D[active] * C + cell_id[None, :]
            keys.sort(axis=1)
            row_of = {int(v): i for i, v in enumerate(active)}
            new_cells = []
            changed = False
            for c in cells:
                if len(c) == 1:
                    new_cells.append(c)
                    continue
                buckets: dict[bytes, list[int]] = {}
                for v in c.tolist():
                    buckets.setdefault(keys[row_of[v]].tobytes(), []).append(v)
                if len(buckets) == 1:
                    new_cells.append(c)
                    continue
                changed = True
                for key in sorted(buckets):
                    new_cells.append(np.array(buckets[key], dtype=np.int64))
            if not changed:
                return new_cells
            cells = new_cells

    def _prefix_orbits(self, level: int) -> list[int]:
        """orbit_id[v] under the pointwise stabilizer of base[:level] in the
        known group; cached until the known group grows."""
        cached = self._orbit_cache.get(level)
        if cached is not None and cached[0] == self._version:
            return cached[1]
        gens = self.known.level_generators(level)
        orbit_id = [-1] * self.n
        for x in range(self.n):
            if orbit_id[x] != -1:
                continue
            orbit_id[x] = x
            stack = [x]
            while stack:
                y = stack.pop()
                for g in gens:
                    z = g[y]
                    if orbit_id[z] == -1:
                        orbit_id[z] = x
                        stack.append(z)
        self._orbit_cache[level] = (self._version, orbit_id)
        return orbit_id

    def run(self) -> StabChain:
        self._descend_on_path(0, self.p_seq[0])
        return self.known

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetError(
                f"automorphism search budget exhausted after {self.nodes} nodes")

    def _descend_on_path(self, level: int, cells) -> None:
        if level == len(self.base):
            return
        ci = self.target_cells[level]
        b = self.base[level]
        self._descend_on_path(level + 1, self.p_seq[level + 1])

        candidates = sorted(int(v) for v in cells[ci] if v != b)
        processed = {b}
        for v in candidates:
            orbit = self._prefix_orbits(level)
            if any(orbit[v] == orbit[w] for w in processed):
                processed.add(v)
                continue
            self._tick()
            q2 = self._refine(self._individualize(cells, ci, v))
            f = None
            if tuple(len(c) for c in q2) == self.p_shapes[level + 1]:
                f = self._descend_off_path(level + 1, q2)
            if f is not None:
                self.known.insert(f)
                self._version += 1
            processed.add(v)

    def _descend_off_path(self, level: int, cells):
        if level == len(self.base):
            q_leaf = np.concatenate(cells)
            f = np.empty(self.n, dtype=np.int64)
            f[self.p_leaf] = q_leaf
            if np.array_equal(self.D[f][:, f], self.D):
                return tuple(int(x) for x in f)
            return None
        ci = self.target_cells[level]
        for v in sorted(cells[ci].tolist()):
            self._tick()
            q2 = self._refine(self._individualize(cells, ci, v))
            if tuple(len(c) for c in q2) != self.p_shapes[level + 1]:
                continue
            f = self._descend_off_path(level + 1, q2)
            if f is not None:
                return f
        return None


def _aut_from_stabilizer(n: int, stab: StabChain) -> PermGroup:
    """Assemble Aut = <translations, stabilizer of 0> with an exact chain:
    the translations form a regular transversal of the stabilizer."""
    t1 = translation(n, 1)
    level0 = (0, {v: translation(n, v) for v in range(n)}, [t1])
    levels = [level0] + [
        (stab.base[i], {pt: pair[0] for pt, pair in stab.transversals[i].items()},
         stab.gen_lists[i])
        for i in range(len(stab.base))
    ]
    chain = StabChain.from_levels(n, levels)
    gens = [t1] + stab.strong_generators()
    return PermGroup(n, gens, chain=chain)


def _transposition(n: int, a: int, b: int) -> tuple:
    img = list(range(n))
    img[a], img[b] = b, a
    return tuple(img)


def symmetric_stabilizer0_gens(n: int) -> list:
    """Generators of the stabilizer of 0 in Sym(n)."""
    if n <= 2:
        return []
    gens = [tuple([0, 2, 1] + list(range(3, n)))]
    if n > 3:
        gens.append(tuple([0] + list(range(2, n)) + [1]))
    return gens


def _symmetric_aut(n: int) -> PermGroup:
    """Sym(n) with an explicit chain (translations, then transposition
    transversals), avoiding a Schreier-Sims run on a huge group."""
    if n == 1:
        return PermGroup(1, [])
    t1 = translation(n, 1)
    levels = [(0, {v: translation(n, v) for v in range(n)}, [t1])]
    for b in range(1, n - 1):
        trans = {pt: _transposition(n, b, pt) for pt in range(b, n)}
        levels.append((b, trans, []))
    chain = StabChain.from_levels(n, levels)
    return PermGroup(n, [t1] + symmetric_stabilizer0_gens(n), chain=chain)


@lru_cache(maxsize=4096)
def _aut_group_cached(ring: SRing, node_budget: int) -> tuple[PermGroup, tuple]:
    n = ring.n
    if ring.rank <= 2:
        # A scheme with at most one off-diagonal color is preserved by every
        # permutation, so Aut = Sym(n) exactly.
        return _symmetric_aut(n), tuple(symmetric_stabilizer0_gens(n))
    scheme = cayley_scheme(ring)
    search = _StabilizerSearch(scheme, node_budget)
    stab = search.run()
    group = _aut_from_stabilizer(n, stab)
    _verify_color_preserving(scheme, group.generators)
    return group, tuple(stab.strong_generators())


def _verify_color_preserving(scheme: CayleyScheme, gens) -> None:
    D = scheme.color_matrix
    for g in gens:
        f = np.fromiter(g, dtype=np.int64, count=scheme.n)
        if not np.array_equal(D[f][:, f], D):
            raise AssertionError("search returned a non-automorphism; internal error")


def aut_group(ring: SRing, *, max_n: int = DEFAULT_AUT_MAX_N,
              node_budget: int = DEFAULT_NODE_BUDGET) -> PermGroup:
    """The full automorphism group of the Cayley scheme of the ring.

    Always contains the translations.  Every returned generator is
    verified against the full color table.  Raises BudgetError when n or
    the search budget is exceeded (never returns a wrong answer).
    """
    if ring.n > max_n:
        raise BudgetError(
            f"automorphism search bound exceeded: n={ring.n} > {max_n}")
    return _aut_group_cached(ring, node_budget)[0]


def stabilizer0_generators(ring: SRing, *, max_n: int = DEFAULT_AUT_MAX_N,
                           node_budget: int = DEFAULT_NODE_BUDGET) -> tuple:
    """Generators of the stabilizer of 0 in Aut(ring)."""
    if ring.n > max_n:
        raise BudgetError(
            f"automorphism search bound exceeded: n={ring.n} > {max_n}")
    return _aut_group_cached(ring, node_budget)[1]


def stabilizer0_orbits(ring: SRing, **kwargs) -> tuple[tuple[int, ...], ...]:
    """Orbits on Z_n of the stabilizer of 0 in Aut(ring), canonical form."""
    gens = stabilizer0_generators(ring, **kwargs)
    n = ring.n
    seen = [False] * n
    cells = []
    for x in range(n):
        if seen[x]:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in gens:
                z = g[y]
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        for y in orbit:
            seen[y] = True
        cells.append(tuple(sorted(orbit)))
    return tuple(cells)


def is_schurian(ring: SRing, *, max_n: int = DEFAULT_SCHURITY_MAX_N,
                node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """Whether the orbits of the stabilizer of 0 in Aut(ring) are exactly
    the basic sets.  Large n errors by default; raise max_n to override
    (the section criterion is the designated route for large n)."""
    if ring.n > max_n:
        raise BudgetError(
            f"schurity test bound exceeded: n={ring.n} > {max_n}; "
            "raise the bound or use the non-schurity section criterion")
    return stabilizer0_orbits(ring, max_n=max_n, node_budget=node_budget) == ring.cells


def is_normal(ring: SRing, *, max_n: int = DEFAULT_AUT_MAX_N,
              node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """Whether the translations are normal in Aut(ring): conjugation of the
    unit translation by every generator is again a translation."""
    group = aut_group(ring, max_n=max_n, node_budget=node_budget)
    n = ring.n
    t1 = translation(n, 1)
    for a in group.generators:
        conj = mult(mult(inverse(a), t1), a)
        k = conj[0]
        if any(conj[x] != (x + k) % n for x in range(n)):
            return False
    return True


@dataclass(frozen=True)
class NonSchurityReport:
    holds: bool
    section: Section
    intersection_order: int
    section_aut_order: int
    induced_orders: tuple[int, int]


def nonschurity_criterion(ring: SRing, sec: Section, *,
                          max_n: int = DEFAULT_AUT_MAX_N,
                          node_budget: int = DEFAULT_NODE_BUDGET) -> NonSchurityReport:
    """One-sided non-schurity certificate for a ring satisfying the
    U/L-condition: the ring is non-schurian whenever the intersection of
    the two induced automorphism groups on S = U/L is not 2-equivalent to
    the automorphism group of the section ring.  holds=False is
    inconclusive."""
    n, u, l = sec.n, sec.u, sec.l
    if ring.n != n:
        raise DomainError("section does not match the ring modulus")
    if l > 1 and u < n:
        flags = classify(ring)
        if (u, l) not in flags.proper_gwp_sections:
            raise DomainError(
                f"ring does not satisfy the U/L-condition for (u={u}, l={l})")

    ring_u = section_ring(ring, Section(n, u, 1))
    ring_gl = section_ring(ring, Section(n, n, l))
    aut_u = aut_group(ring_u, max_n=max_n, node_budget=node_budget)
    aut_gl = aut_group(ring_gl, max_n=max_n, node_budget=node_budget)
    ind_u = induced_on_section(aut_u, Section(u, u, l))
    ind_gl = induced_on_section(aut_gl, Section(n // l, u // l, 1))
    inter = intersect(ind_u, ind_gl)
    ring_s = section_ring(ring, sec)
    aut_s = aut_group(ring_s, max_n=max_n, node_budget=node_budget)
    holds = not two_equivalent(inter, aut_s)
    return NonSchurityReport(
        holds=holds,
        section=sec,
        intersection_order=inter.order(),
        section_aut_order=aut_s.order(),
        induced_orders=(ind_u.order(), ind_gl.order()),
    )
