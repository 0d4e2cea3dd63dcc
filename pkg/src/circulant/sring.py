"""S-rings over Z_n and the constructions on them.

An S-ring is stored as its basic-set partition in canonical form: each
cell sorted ascending, cells ordered by minimum element.  Canonical form
defines equality and hashing, and every constructor canonicalizes on
output.  The structure-constant axiom is checked by direct convolution
counting, which is exact and adequate for the moduli handled here
(n up to a few thousand).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd

import numpy as np

from .errors import DomainError
from .zn import (
    Section,
    check_modulus,
    crt_idempotents,
    divisors,
    is_unit,
    subgroup_elements,
    unit_orbits,
)


def canonical_partition(partition) -> tuple[tuple[int, ...], ...]:
    cells = [tuple(sorted(cell)) for cell in partition]
    cells.sort(key=lambda c: c[0])
    return tuple(cells)


@dataclass(frozen=True)
class SRing:
    """An S-ring over Z_n given by its basic sets in canonical form.

    Construct via :func:`validate` (or one of the constructors below),
    which enforce the axioms; the raw constructor trusts its input.
    """

    n: int
    cells: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.cells)

    @cached_property
    def cell_of(self) -> tuple[int, ...]:
        """cell_of[x] = index of the basic set containing x."""
        idx = [-1] * self.n
        for i, cell in enumerate(self.cells):
            for x in cell:
                idx[x] = i
        return tuple(idx)

    @cached_property
    def cell_masks(self) -> tuple[int, ...]:
        """Each cell as a bitmask, for fast set arithmetic."""
        return tuple(sum(1 << x for x in cell) for cell in self.cells)

    def cell_containing(self, x: int) -> tuple[int, ...]:
        return self.cells[self.cell_of[x % self.n]]

    def refines(self, other: "SRing") -> bool:
        """True if every cell of self lies inside a cell of other (self >= other)."""
        if self.n != other.n:
            return False
        return all(len({other.cell_of[x] for x in cell}) == 1 for cell in self.cells)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "basic_sets": [list(c) for c in self.cells]})

    @staticmethod
    def from_json(text: str, n: int | None = None) -> "SRing":
        data = json.loads(text)
        modulus = data.get("n", n)
        if modulus is None:
            raise DomainError("ring JSON carries no modulus and none was supplied")
        if n is not None and "n" in data and data["n"] != n:
            raise DomainError(f"modulus mismatch: JSON says {data['n']}, flag says {n}")
        return validate(modulus, data["basic_sets"])

    def __repr__(self) -> str:
        return f"SRing(n={self.n}, rank={self.rank})"


def validate(n: int, partition) -> SRing:
    """Check the S-ring axioms and return the canonicalized ring.

    Raises DomainError naming a witness if the identity cell is not {0},
    some cell's negation is not a cell, or the convolution of two cells is
    not constant on some cell.
    """
    check_modulus(n)
    cells = canonical_partition(partition)
    seen = [False] * n
    for cell in cells:
        if not cell:
            raise DomainError("empty cell")
        for x in cell:
            if not 0 <= x < n:
                raise DomainError(f"element {x} out of range for Z_{n}")
            if seen[x]:
                raise DomainError(f"element {x} covered twice")
            seen[x] = True
    if not all(seen):
        missing = seen.index(False)
        raise DomainError(f"element {missing} not covered")
    if cells[0] != (0,):
        raise DomainError("identity not singleton: the cell of 0 must be {0}")

    cell_set = set(cells)
    for cell in cells:
        neg = tuple(sorted((-x) % n for x in cell))
        if neg not in cell_set:
            raise DomainError(f"not inverse-closed: -{set(cell)} is not a cell")

    ring = SRing(n, cells)
    _check_structure_constants(ring)
    return ring


def _check_structure_constants(ring: SRing) -> None:
    """For all cells X, Y the count of (x, y) in X x Y with x + y = z must
    be constant as z ranges over any one cell."""
    n = ring.n
    cell_id = np.fromiter(ring.cell_of, dtype=np.int64, count=n)
    first = np.array([cell[0] for cell in ring.cells], dtype=np.int64)
    arrays = [np.array(cell, dtype=np.int64) for cell in ring.cells]
    for i, X in enumerate(arrays):
        for j in range(i, len(arrays)):
            Y = arrays[j]
            counts = np.bincount((X[:, None] + Y[None, :]).ravel() % n, minlength=n)
            expected = counts[first][cell_id]
            if not np.array_equal(counts, expected):
                z = int(np.nonzero(counts != expected)[0][0])
                k = ring.cell_of[z]
                raise DomainError(
                    "structure constants not constant on cell "
                    f"(X=cell{i}, Y=cell{j}, cell{k}): z={z} gets {int(counts[z])}, "
                    f"z={int(first[k])} gets {int(counts[first[k]])}"
                )


def group_ring(n: int) -> SRing:
    """The full group ring ZZ_n (all singletons)."""
    check_modulus(n)
    return SRing(n, tuple((x,) for x in range(n)))


def rank2(n: int) -> SRing:
    """The rank-2 ring {0} | Z_n \\ {0} (equals ZZ_1, ZZ_2 for n <= 2)."""
    check_modulus(n)
    if n == 1:
        return SRing(1, ((0,),))
    return SRing(n, ((0,), tuple(range(1, n))))


def cyclotomic(n: int, gens) -> SRing:
    """Cyc(K, n): basic sets are the orbits of K = <gens> <= (Z/n)* on Z_n."""
    return validate(n, unit_orbits(n, gens))


def multiplier_image(ring: SRing, m: int) -> SRing:
    """The image of the ring under x -> m*x for a unit m (a Cayley isomorphism)."""
    if not is_unit(ring.n, m):
        raise DomainError(f"{m} is not a unit mod {ring.n}")
    return SRing(ring.n, canonical_partition(
        tuple((x * m) % ring.n for x in cell) for cell in ring.cells))


def tensor(a1: SRing, a2: SRing) -> SRing:
    """Tensor product over Z_{n1*n2} via the CRT isomorphism fixed by the
    canonical idempotents e1 = (1,0), e2 = (0,1)."""
    n1, n2 = a1.n, a2.n
    if gcd(n1, n2) != 1:
        raise DomainError(f"tensor factors must have coprime moduli, got {n1}, {n2}")
    n = n1 * n2
    e1, e2 = crt_idempotents(n1, n2)
    cells = []
    for X1 in a1.cells:
        for X2 in a2.cells:
            cells.append(tuple(sorted((x1 * e1 + x2 * e2) % n for x1 in X1 for x2 in X2)))
    return validate(n, cells)


def section_ring(ring: SRing, sec: Section) -> SRing:
    """The induced ring on the section U/L, as an S-ring over Z_{u/l}.

    Requires U and L to be A-groups; cells are the projections of the
    basic sets contained in U.
    """
    if sec.n != ring.n:
        raise DomainError(f"section over Z_{sec.n} does not match ring over Z_{ring.n}")
    if sec.u == ring.n and sec.l == 1:
        return ring
    return _section_ring_cached(ring, sec)


@lru_cache(maxsize=65536)
def _section_ring_cached(ring: SRing, sec: Section) -> SRing:
    lattice = subgroup_lattice(ring)
    if sec.u not in lattice or sec.l not in lattice:
        raise DomainError(
            f"not an A-section: orders ({sec.u}, {sec.l}) not both in the lattice {lattice}")
    images = set()
    covered = [0] * sec.order
    for cell in ring.cells:
        if not sec.contains(cell[0]):
            continue
        img = tuple(sorted({sec.project(x) for x in cell}))
        if img not in images:
            images.add(img)
            for x in img:
                covered[x] += 1
    if any(c != 1 for c in covered):
        raise DomainError("section images of basic sets do not form a partition")
    return SRing(sec.order, canonical_partition(images))


def generalized_wreath(a1: SRing, a2: SRing, sec: Section) -> SRing:
    """The generalized wreath product A1 wr_{U/L} A2 over Z_n.

    a1 lives over Z_u = U, a2 over Z_{n/l} = G/L, and the two induced
    rings on S = U/L must coincide under the canonical identifications.
    The result restricts to a1 on U, projects to a2 mod L, and every
    basic set outside U is a union of L-cosets.
    """
    n, u, l = sec.n, sec.u, sec.l
    if a1.n != u:
        raise DomainError(f"left factor must live over Z_{u}, got Z_{a1.n}")
    if a2.n != n // l:
        raise DomainError(f"right factor must live over Z_{n // l}, got Z_{a2.n}")
    if u == n and l == 1:
        if a1 != a2:
            raise DomainError("degenerate section G/1 requires equal factors")
        return a1

    s1 = section_ring(a1, Section(u, u, l))
    s2 = section_ring(a2, Section(n // l, u // l, 1))
    if s1 != s2:
        raise DomainError(
            "section rings differ on U/L: "
            f"restriction of left factor gives {s1.cells}, of right factor {s2.cells}")

    scale = n // u
    cells = [tuple(sorted(x * scale % n for x in cell)) for cell in a1.cells]
    step = n // l  # generator of L inside Z_n
    for cell in a2.cells:
        if cell[0] % (n // u) == 0 and all(x % (n // u) == 0 for x in cell):
            continue  # inside the image of U; covered by a1
        preimage = sorted((x + k * (n // l)) % n for x in cell for k in range(l))
        cells.append(tuple(preimage))
    return validate(n, cells)


def wreath(a1: SRing, a2: SRing, n: int) -> SRing:
    """Ordinary wreath product over Z_n: the generalized product with U = L."""
    u = a1.n
    if n % u != 0 or a2.n != n // u:
        raise DomainError(f"wreath factors Z_{a1.n}, Z_{a2.n} do not fit modulus {n}")
    return generalized_wreath(a1, a2, Section(n, u, u))


def internal_product_partition(m: int, left: SRing, right: SRing) -> tuple[tuple[int, ...], ...]:
    """Partition of Z_m by cellwise sums of the canonical embeddings of the
    factors (orders |left| * |right| = m, necessarily coprime)."""
    s, t = left.n, right.n
    if s * t != m or gcd(s, t) != 1:
        raise DomainError(f"factors Z_{s}, Z_{t} do not decompose Z_{m}")
    cells = []
    for X1 in left.cells:
        for X2 in right.cells:
            cells.append(tuple(sorted((x1 * (m // s) + x2 * (m // t)) % m
                                      for x1 in X1 for x2 in X2)))
    return canonical_partition(cells)


def radical_of_set(n: int, xs) -> int:
    """Order of the largest subgroup H with H + X = X (the radical of X)."""
    check_modulus(n)
    xs = set(x % n for x in xs)
    if not xs:
        raise DomainError("radical of the empty set is undefined")
    mask = 0
    for x in xs:
        mask |= 1 << x
    full = (1 << n) - 1
    stab = 0
    for g in range(n):
        rotated = ((mask << g) & full) | (mask >> (n - g)) if g else mask
        if rotated == mask:
            stab += 1
    return stab


def radical(ring: SRing) -> int:
    """Order of rad(A): the radical of any basic set containing a generator
    of Z_n.  Independence across such basic sets is verified."""
    orders = {radical_of_set(ring.n, cell)
              for cell in ring.cells if any(is_unit(ring.n, x) for x in cell)}
    if len(orders) != 1:
        raise AssertionError(
            f"radical disagrees across generator cells ({sorted(orders)}); invalid S-ring")
    return orders.pop()


def subgroup_lattice(ring: SRing) -> tuple[int, ...]:
    """Orders d | n whose subgroup is a union of basic sets, sorted ascending."""
    return _lattice_cached(ring)


@lru_cache(maxsize=65536)
def _lattice_cached(ring: SRing) -> tuple[int, ...]:
    n = ring.n
    out = []
    for d in divisors(n):
        sub = subgroup_elements(n, d)
        if all(set(ring.cells[i]) <= sub
               for i in {ring.cell_of[x] for x in sub}):
            out.append(d)
    return tuple(out)


def s_condition_holds(ring: SRing, u: int, l: int) -> bool:
    """Whether every basic set outside U is a union of L-cosets
    (the U/L-condition; U and L are assumed to be A-groups)."""
    n = ring.n
    if l == 1:
        return True
    step = n // l
    for cell in ring.cells:
        if cell[0] % (n // u) == 0 and all(x % (n // u) == 0 for x in cell):
            continue
        members = set(cell)
        if any((x + step) % n not in members for x in cell):
            return False
    return True


@dataclass(frozen=True)
class Classification:
    rank: int
    dense: bool
    primitive: bool
    trivial_radical: bool
    proper_gwp_sections: tuple[tuple[int, int], ...]  # (u, l) order pairs


def classify(ring: SRing) -> Classification:
    """Rank, density, primitivity, radical triviality, and the sections
    U/L (with L > 1, U < G) for which the ring satisfies the S-condition."""
    n = ring.n
    lattice = subgroup_lattice(ring)
    sections = []
    for u in lattice:
        if u == n:
            continue
        for l in lattice:
            if l == 1 or u % l != 0:
                continue
            if s_condition_holds(ring, u, l):
                sections.append((u, l))
    return Classification(
        rank=ring.rank,
        dense=(lattice == divisors(n)),
        primitive=(n > 1 and lattice == (1, n)),
        trivial_radical=(radical(ring) == 1),
        proper_gwp_sections=tuple(sorted(sections)),
    )
