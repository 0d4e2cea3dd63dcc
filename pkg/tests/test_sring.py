import random

import pytest
from hypothesis import given, settings, strategies as st

from circulant import (
    DomainError,
    Section,
    classify,
    cyclotomic,
    generalized_wreath,
    group_ring,
    multiplier_image,
    radical,
    radical_of_set,
    rank2,
    section_ring,
    subgroup_lattice,
    tensor,
    validate,
    wreath,
)
from circulant.zn import divisors, multiplicative_closure, unit_group
from circulant.sring import internal_product_partition


def test_validate_examples():
    ring = validate(4, [[0], [1, 3], [2]])
    assert ring.cells == ((0,), (1, 3), (2,))
    with pytest.raises(DomainError, match="inverse-closed"):
        validate(4, [[0], [1], [2, 3]])
    assert validate(5, [[x] for x in range(5)]).rank == 5
    with pytest.raises(DomainError, match="identity not singleton"):
        validate(4, [[0, 2], [1, 3]])
    with pytest.raises(DomainError, match="structure constants"):
        validate(8, [[0], [1, 7], [2, 3, 5, 6], [4]])


def test_validate_canonicalizes():
    a = validate(4, [[2], [3, 1], [0]])
    b = validate(4, [[0], [1, 3], [2]])
    assert a == b and hash(a) == hash(b)


@given(st.integers(min_value=2, max_value=30), st.randoms())
@settings(max_examples=40)
def test_canonical_form_order_insensitive(n, rng):
    base = cyclotomic(n, tuple(unit_group(n)))
    cells = [list(c) for c in base.cells]
    for c in cells:
        rng.shuffle(c)
    rng.shuffle(cells)
    assert validate(n, cells) == base


def test_cyclotomic_examples():
    assert cyclotomic(8, (3,)).cells == ((0,), (1, 3), (2, 6), (4,), (5, 7))
    assert cyclotomic(7, (1,)) == group_ring(7)
    assert cyclotomic(11, tuple(unit_group(11))) == rank2(11)


def test_tensor_examples():
    assert tensor(group_ring(2), group_ring(3)) == group_ring(6)
    t = tensor(rank2(3), rank2(5))
    assert t.rank == 4 and sorted(len(c) for c in t.cells) == [1, 2, 4, 8]
    a = cyclotomic(8, (3,))
    assert tensor(a, group_ring(1)) == a
    with pytest.raises(DomainError):
        tensor(rank2(4), rank2(6))


def test_tensor_rank_multiplicative():
    for a, b in [(cyclotomic(8, (3,)), rank2(3)), (group_ring(4), rank2(9))]:
        assert tensor(a, b).rank == a.rank * b.rank


def test_generalized_wreath_examples(z9_fixture):
    w = wreath(group_ring(2), group_ring(2), 4)
    assert w.cells == ((0,), (1, 3), (2,))
    assert z9_fixture.cells == ((0,), (1, 2, 4, 5, 7, 8), (3, 6))
    # degenerate G/1 section
    a = cyclotomic(8, (3,))
    assert generalized_wreath(a, a, Section(8, 8, 1)) == a
    # section mismatch errors: ZZ_3 quotient vs rank-2 restriction on U/L
    with pytest.raises(DomainError, match="section rings differ"):
        generalized_wreath(group_ring(9), cyclotomic(9, (2,)), Section(27, 9, 3))


def test_generalized_wreath_round_trip(z9_fixture):
    a1, a2 = rank2(3), rank2(3)
    assert section_ring(z9_fixture, Section(9, 3, 1)) == a1
    assert section_ring(z9_fixture, Section(9, 9, 3)) == a2
    left = cyclotomic(9, (2,))
    right = cyclotomic(3, (2,))
    ring = generalized_wreath(left, right, Section(27, 9, 9))
    assert section_ring(ring, Section(27, 9, 1)) == left
    assert section_ring(ring, Section(27, 27, 9)) == right


def test_section_ring_examples(z9_fixture):
    a = cyclotomic(8, (3,))
    assert section_ring(a, Section(8, 8, 2)).cells == ((0,), (1, 3), (2,))
    assert section_ring(z9_fixture, Section(9, 3, 1)) == rank2(3)
    assert section_ring(a, Section(8, 8, 1)) == a
    with pytest.raises(DomainError, match="not an A-section"):
        section_ring(rank2(9), Section(9, 3, 1))


def test_tensor_section_compatibility():
    a1, a2 = cyclotomic(5, (2,)), cyclotomic(8, (3,))
    t = tensor(a1, a2)
    assert section_ring(t, Section(40, 5, 1)) == a1
    assert section_ring(t, Section(40, 8, 1)) == a2
    assert section_ring(t, Section(40, 40, 8)) == a1
    assert section_ring(t, Section(40, 40, 5)) == a2


def test_cyclotomic_sections_are_cyclotomic():
    # section of Cyc(K, n) is Cyc(image of K, u/l)
    for n, gens in [(16, (3,)), (24, (5, 7)), (45, (2,))]:
        ring = cyclotomic(n, gens)
        for u in subgroup_lattice(ring):
            for l in divisors(u):
                if l not in subgroup_lattice(ring):
                    continue
                sec = Section(n, u, l)
                image = tuple(sorted({g % sec.order for g in
                                      multiplicative_closure(n, gens)}))
                assert section_ring(ring, sec) == cyclotomic(sec.order, image)


def test_radical_examples(z9_fixture):
    assert radical_of_set(6, {1, 3, 5}) == 3
    assert radical_of_set(6, {0}) == 1
    assert radical_of_set(6, set(range(6))) == 6
    assert radical(z9_fixture) == 3
    assert radical(cyclotomic(8, (3,))) == 1
    assert radical(group_ring(12)) == 1


def test_radical_of_set_oracle():
    # brute force: largest divisor d whose subgroup stabilizes X
    from circulant import subgroup_elements

    rng = random.Random(7)
    for _ in range(40):
        n = rng.randrange(2, 40)
        xs = set(rng.sample(range(n), rng.randrange(1, n)))
        best = 1
        for d in divisors(n):
            sub = subgroup_elements(n, d)
            if all({(x + g) % n for g in sub} <= xs for x in xs):
                best = max(best, d)
        assert radical_of_set(n, xs) == best


def test_subgroup_lattice_examples(z9_fixture):
    assert subgroup_lattice(group_ring(12)) == divisors(12)
    assert subgroup_lattice(rank2(7)) == (1, 7)
    assert subgroup_lattice(z9_fixture) == (1, 3, 9)


def test_lattice_closed_under_gcd_lcm():
    from math import gcd

    for ring in [cyclotomic(24, (7,)), cyclotomic(36, (5,)), rank2(30)]:
        lat = subgroup_lattice(ring)
        assert 1 in lat and ring.n in lat
        for a in lat:
            for b in lat:
                assert gcd(a, b) in lat and a * b // gcd(a, b) in lat


def test_classify_examples(z9_fixture):
    assert classify(rank2(9)).primitive
    flags = classify(z9_fixture)
    assert (3, 3) in flags.proper_gwp_sections
    full = classify(group_ring(10))
    assert full.trivial_radical and full.dense


def test_radical_iff_proper_gwp():
    # nontrivial radical exactly when some proper section condition holds
    from circulant import brute_force_srings

    for n in range(2, 13):
        for ring in brute_force_srings(n):
            flags = classify(ring)
            has_proper = bool(flags.proper_gwp_sections)
            assert (radical(ring) > 1) == has_proper, ring.cells


def test_monotonicity_of_lattice():
    from circulant import brute_force_srings

    entries = list(brute_force_srings(12))
    for a in entries:
        for b in entries:
            if b.refines(a):
                assert set(subgroup_lattice(a)) <= set(subgroup_lattice(b))


def test_multiplier_image_is_cayley_isomorphism():
    ring = cyclotomic(16, (7,))
    for m in unit_group(16):
        image = multiplier_image(ring, m)
        assert image.rank == ring.rank
        validate(16, image.cells)


def test_internal_product_partition_matches_tensor():
    # partition-level agreement of the two embedding conventions
    for a, b in [(rank2(3), rank2(5)), (cyclotomic(5, (4,)), cyclotomic(8, (3,)))]:
        m = a.n * b.n
        assert internal_product_partition(m, a, b) == tensor(a, b).cells


def test_json_round_trip(z9_fixture):
    from circulant.sring import SRing

    text = z9_fixture.to_json()
    assert SRing.from_json(text) == z9_fixture
