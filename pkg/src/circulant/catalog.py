"""Enumeration of circulant S-rings at desk scale, a brute-force oracle,
schurity sweeps, and the generator of the non-schurian family over
Z_{p*p*p3*p4}.

The enumeration builds, per divisor m of n: all cyclotomic rings and the
rank-2 ring as seeds, then closes under tensor products over coprime
splittings and generalized wreath products over proper sections (1 < l,
u < n).  Both closure operations consume only catalogs of smaller moduli,
so one pass per modulus reaches the fixpoint; completeness rests on the
radical dichotomy (a ring is either a proper generalized wreath product
or a tensor product of a normal ring and rank-2 rings, and normal rings
are cyclotomic) and is certified against the brute-force oracle for
n <= 13.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import BudgetError, DomainError
from .scheme import is_normal, is_schurian
from .sring import (
    SRing,
    classify,
    cyclotomic,
    generalized_wreath,
    group_ring,
    rank2,
    section_ring,
    subgroup_lattice,
    tensor,
    validate,
)
from .zn import (
    Section,
    big_omega,
    check_modulus,
    crt_idempotents,
    divisors,
    is_prime,
    multiplicative_closure,
    multiplicative_order,
    unit_group,
)

BRUTE_FORCE_MAX_N = 13
ENUMERATE_MAX_N = 200


@dataclass(frozen=True)
class Catalog:
    n: int
    entries: tuple[SRing, ...]
    provenance: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, ring: SRing) -> bool:
        return ring in set(self.entries)


def _unit_subgroups(n: int) -> list[frozenset[int]]:
    """All subgroups of (Z/n)*, by closing the cyclic subgroups under
    joins."""
    units = unit_group(n)
    if n <= 2:
        return [frozenset({1 % n})]
    cyclic = {multiplicative_closure(n, (u,)) for u in units}
    subgroups = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for a in frontier:
            for b in cyclic:
                joined = multiplicative_closure(n, tuple(a | b))
                if joined not in subgroups:
                    subgroups.add(joined)
                    new.add(joined)
        frontier = new
    return sorted(subgroups, key=lambda s: (len(s), sorted(s)))


def enumerate_srings(n: int, limit: int = ENUMERATE_MAX_N) -> Catalog:
    """All S-rings over Z_n (seeds plus tensor/gwp closure, memoized per
    divisor)."""
    check_modulus(n)
    if n > limit:
        raise BudgetError(f"enumeration budget exceeded: n={n} > {limit}")
    return _enumerate_cached(n)


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> Catalog:
    found: dict[SRing, str] = {}

    def add(ring: SRing, how: str) -> None:
        if ring not in found:
            found[ring] = how

    for K in _unit_subgroups(n):
        add(cyclotomic(n, tuple(sorted(K))), f"seed:cyc({sorted(K)})")
    add(rank2(n), "seed:rank2")

    for a in divisors(n):
        b = n // a
        if a <= 1 or b <= 1 or a > b or gcd(a, b) != 1:
            continue
        for i, left in enumerate(_enumerate_cached(a).entries):
            for j, right in enumerate(_enumerate_cached(b).entries):
                add(tensor(left, right), f"tensor({a}#{i},{b}#{j})")

    for u in divisors(n):
        if u == n:
            continue
        for l in divisors(u):
            if l == 1:
                continue
            sec = Section(n, u, l)
            cat_u = _enumerate_cached(u)
            cat_q = _enumerate_cached(n // l)
            # bucket by the induced ring on U/L to pair only matching factors
            buckets: dict[SRing, list[tuple[int, SRing]]] = {}
            for j, right in enumerate(cat_q.entries):
                lat = subgroup_lattice(right)
                if u // l not in lat:
                    continue
                key = section_ring(right, Section(n // l, u // l, 1))
                buckets.setdefault(key, []).append((j, right))
            for i, left in enumerate(cat_u.entries):
                lat = subgroup_lattice(left)
                if l not in lat:
                    continue
                key = section_ring(left, Section(u, u, l))
                for j, right in buckets.get(key, ()):
                    add(generalized_wreath(left, right, sec),
                        f"gwp(u={u},l={l},{u}#{i},{n // l}#{j})")

    entries = sorted(found, key=lambda r: (r.rank, r.cells))
    return Catalog(n, tuple(entries), tuple(found[r] for r in entries))


def brute_force_srings(n: int) -> Catalog:
    """Oracle: enumerate all partitions of Z_n with {0} a cell and cells
    built in least-uncovered order, pruning on inverse-closure and on
    partial structure-constant consistency, validating at the leaves."""
    check_modulus(n)
    if n > BRUTE_FORCE_MAX_N:
        raise BudgetError(f"brute force bounded to n <= {BRUTE_FORCE_MAX_N}, got {n}")
    if n == 1:
        return Catalog(1, (group_ring(1),), ("brute",))

    results: list[SRing] = []

    def counts_of(cx: tuple[int, ...], cy: tuple[int, ...]) -> list[int]:
        counts = [0] * n
        for x in cx:
            for y in cy:
                counts[(x + y) % n] += 1
        return counts

    def place(cells: list[tuple[int, ...]], pair_counts: list[list[int]],
              new: list[tuple[int, ...]]) -> list[list[int]] | None:
        """Extend the verified pair-count list by the pairs involving the
        new cells; None if some count is non-constant on some cell."""
        before = len(cells) - len(new)
        for counts in pair_counts:
            for cell in new:
                base = counts[cell[0]]
                if any(counts[z] != base for z in cell):
                    return None
        added = []
        for j in range(before, len(cells)):
            for i in range(j + 1):
                counts = counts_of(cells[i], cells[j])
                for cell in cells:
                    base = counts[cell[0]]
                    if any(counts[z] != base for z in cell):
                        return None
                added.append(counts)
        return pair_counts + added

    def extend(cells: list[tuple[int, ...]], uncovered: set[int],
               pair_counts: list[list[int]]) -> None:
        if not uncovered:
            try:
                results.append(validate(n, cells))
            except DomainError:
                pass
            return
        x = min(uncovered)
        sig_x = tuple(c[x] for c in pair_counts)
        pool = sorted(y for y in uncovered
                      if y != x and tuple(c[y] for c in pair_counts) == sig_x)
        # choose the cell of x among subsets of its signature class
        for mask in range(1 << len(pool)):
            cell = (x,) + tuple(pool[i] for i in range(len(pool)) if mask >> i & 1)
            cset = set(cell)
            neg = {(-y) % n for y in cell}
            if neg & cset:
                if neg != cset:
                    continue
                new = [cell]
                rest = uncovered - cset
            else:
                if not neg <= uncovered - cset:
                    continue
                new = [cell, tuple(sorted(neg))]
                rest = uncovered - cset - neg
            new_cells = cells + new
            extended = place(new_cells, pair_counts, new)
            if extended is not None:
                extend(new_cells, rest, extended)

    extend([(0,)], set(range(1, n)), [counts_of((0,), (0,))])
    entries = sorted(set(results), key=lambda r: (r.rank, r.cells))
    return Catalog(n, tuple(entries), tuple("brute" for _ in entries))


@dataclass(frozen=True)
class SweepEntryReport:
    ring: SRing
    schurian: bool
    trivial_radical: bool
    gwp_sections: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SweepReport:
    n: int
    total: int
    schurian: int
    nonschurian_entries: tuple[SweepEntryReport, ...]
    structural_checks: tuple[str, ...]


def _nonschurian_structure_checks(ring: SRing) -> list[str]:
    """Facts that must hold for a non-schurian ring over Z_n with four
    prime factors: for every section U/L satisfied non-trivially, |L| and
    |G/U| are prime, |U/L| != 4, the section ring is a proper wreath
    product, and the two factors are not both normal."""
    n = ring.n
    notes = []
    flags = classify(ring)
    if not flags.proper_gwp_sections:
        notes.append("FAIL: non-schurian ring without a proper gwp section")
    for (u, l) in flags.proper_gwp_sections:
        ok_primes = is_prime(l) and is_prime(n // u)
        s = u // l
        sec_ring = section_ring(ring, Section(n, u, l))
        sec_flags = classify(sec_ring)
        proper_wreath = any(uu == ll for (uu, ll) in sec_flags.proper_gwp_sections)
        factors_not_wreath = True
        for sub in (section_ring(ring, Section(n, u, 1)), section_ring(ring, Section(n, n, l))):
            sub_flags = classify(sub)
            if any(uu == ll for (uu, ll) in sub_flags.proper_gwp_sections):
                factors_not_wreath = False
        both_normal = (is_normal(section_ring(ring, Section(n, u, 1)))
                       and is_normal(section_ring(ring, Section(n, n, l))))
        status = "ok" if (ok_primes and s != 4 and proper_wreath
                          and factors_not_wreath and not both_normal) else "FAIL"
        notes.append(
            f"{status}: section (u={u},l={l}): primes={ok_primes}, |S|={s}, "
            f"section wreath={proper_wreath}, factors not wreath={factors_not_wreath}, "
            f"both normal={both_normal}")
    return notes


def schurity_sweep(n_values, *, schurity_max_n: int = 1000,
                   node_budget: int | None = None) -> list[SweepReport]:
    """Per modulus: entry count, schurian count, and for each non-schurian
    entry its proper gwp sections plus the structural facts for four-prime
    moduli."""
    reports = []
    kwargs = {} if node_budget is None else {"node_budget": node_budget}
    for n in n_values:
        catalog = enumerate_srings(n)
        bad = []
        schurian_count = 0
        for ring in catalog:
            ok = is_schurian(ring, max_n=schurity_max_n, **kwargs)
            if ok:
                schurian_count += 1
            else:
                flags = classify(ring)
                bad.append(SweepEntryReport(
                    ring=ring, schurian=False,
                    trivial_radical=flags.trivial_radical,
                    gwp_sections=flags.proper_gwp_sections))
        checks: list[str] = []
        if bad and big_omega(n) == 4:
            for entry in bad:
                checks.extend(_nonschurian_structure_checks(entry.ring))
        reports.append(SweepReport(
            n=n, total=len(catalog), schurian=schurian_count,
            nonschurian_entries=tuple(bad), structural_checks=tuple(checks)))
    return reports


@dataclass(frozen=True)
class Example12Params:
    """Parameters of the four-prime family: p = p1 = p2, p3, p4 primes with
    p | p3 - 1, d | p - 1, d | p4 - 1; phi_choice picks the two order-d
    images mod p4 defining M1 and M2 (equal choices give the negative
    control)."""

    p: int = 5
    p3: int = 11
    p4: int = 13
    d: int = 4
    phi_choice: tuple[int, int] | None = None

    def __post_init__(self):
        for q in (self.p, self.p3, self.p4):
            if not is_prime(q):
                raise DomainError(f"{q} is not prime")
        if self.p == self.p3 or self.p == self.p4 or self.p3 == self.p4:
            raise DomainError("p, p3, p4 must be distinct")
        if (self.p3 - 1) % self.p != 0:
            raise DomainError(f"p={self.p} must divide p3-1={self.p3 - 1}")
        if (self.p - 1) % self.d != 0 or (self.p4 - 1) % self.d != 0:
            raise DomainError(f"d={self.d} must divide p-1 and p4-1")

    @property
    def n(self) -> int:
        return self.p * self.p * self.p3 * self.p4


def _element_of_order(modulus: int, order: int) -> int:
    for x in unit_group(modulus):
        if x > 1 and multiplicative_order(modulus, x) == order:
            return x
    raise DomainError(f"no unit of order {order} mod {modulus}")


def _elements_of_order(modulus: int, order: int) -> list[int]:
    return [x for x in unit_group(modulus)
            if x > 1 and multiplicative_order(modulus, x) == order]


def _crt(a: int, n1: int, b: int, n2: int) -> int:
    e1, e2 = crt_idempotents(n1, n2)
    return (a * e1 + b * e2) % (n1 * n2)


@dataclass(frozen=True)
class Example12Result:
    params: Example12Params
    ring: SRing
    left: SRing                # cyclotomic ring over Z_{p^2 p3}
    right: SRing               # wreath-type ring over Z_{p^2 p4}
    m_generator: int
    m1_generator: int
    m2_generator: int
    certificate_section: Section


def example12(params: Example12Params) -> Example12Result:
    """The family ring A = Cyc(M, p^2 p3) wr_{p^2} (Cyc(M1, p p4) wr_{p4}
    Cyc(M2, p p4)) over Z_{p^2 p3 p4}.

    M is the graph of the epimorphism from the order-pd subgroup of
    Aut(Z_{p^2}) onto the order-p subgroup of Aut(Z_{p3}); M1 and M2 are
    graphs of isomorphisms between the order-d subgroups of Aut(Z_p) and
    Aut(Z_{p4}).  Both small quotients of the factors are verified to be
    the double wreath of Cyc(d, p) before combining.
    """
    p, p3, p4, d = params.p, params.p3, params.p4, params.d
    n = params.n

    a = _element_of_order(p * p, p * d)
    b = _element_of_order(p3, p)
    m_gen = _crt(a, p * p, b, p3)
    left = cyclotomic(p * p * p3, (m_gen,))

    c = _element_of_order(p, d)
    if params.phi_choice is not None:
        e1, e2 = params.phi_choice
        for e in (e1, e2):
            if multiplicative_order(p4, e) != d:
                raise DomainError(f"{e} does not have order {d} mod {p4}")
    else:
        images = _elements_of_order(p4, d)
        if len(images) < 2:
            raise DomainError(f"d={d} < 3 leaves no two distinct isomorphism images")
        e1, e2 = images[0], images[1]
    m1_gen = _crt(c, p, e1, p4)
    m2_gen = _crt(c, p, e2, p4)
    cyc1 = cyclotomic(p * p4, (m1_gen,))
    cyc2 = cyclotomic(p * p4, (m2_gen,))

    # A2 = Cyc(M1, p p4) wr_{p4} Cyc(M2, p p4) over Z_{p^2 p4}
    right = generalized_wreath(cyc1, cyc2, Section(p * p * p4, p * p4, p))

    # quotient/restriction on Z_{p^2} must equal Cyc(d,p) wr Cyc(d,p)
    cyc_dp = cyclotomic(p, (c,))
    double = generalized_wreath(cyc_dp, cyc_dp, Section(p * p, p, p))
    left_q = section_ring(left, Section(p * p * p3, p * p * p3, p3))
    right_r = section_ring(right, Section(p * p * p4, p * p, 1))
    if left_q != double or right_r != double:
        raise AssertionError("factor sections do not match the double wreath of Cyc(d,p)")

    ring = generalized_wreath(left, right, Section(n, p * p * p3, p3))
    return Example12Result(
        params=params, ring=ring, left=left, right=right,
        m_generator=m_gen, m1_generator=m1_gen, m2_generator=m2_gen,
        certificate_section=Section(n, p * p * p3, p3),
    )
