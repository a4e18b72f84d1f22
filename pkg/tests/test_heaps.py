import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trusskit import (
    FiniteHeap,
    heap_from_group,
    is_abelian_heap,
    is_valid_heap,
    make_group,
    retract_at,
    retract_iso,
    validate_heap,
)

SMALL_GROUPS = [[2], [3], [4], [2, 2], [5], [6], [8], [2, 4]]


def test_ternary_from_group_examples():
    z5 = make_group([5])
    h = heap_from_group(z5)
    assert h.ternary(1, 2, 3) == 2  # 1 - 2 + 3
    k4 = make_group([2, 2])
    hk = heap_from_group(k4)
    i = k4.index
    assert hk.ternary(i((1, 0)), i((1, 1)), i((0, 1))) == i((0, 0))


@pytest.mark.parametrize("orders", SMALL_GROUPS)
def test_group_heaps_validate(orders):
    h = heap_from_group(make_group(orders))
    report = validate_heap(h)
    assert report.passed
    assert report.exhaustive
    assert is_abelian_heap(h)


def test_malcev_forced():
    h = heap_from_group(make_group([6]))
    for a in range(6):
        for b in range(6):
            assert h.ternary(a, a, b) == b
            assert h.ternary(b, a, a) == b


def test_validator_flags_malcev_violation():
    # [a,b,c] := a on a 2-element carrier breaks [a,a,b] = b
    table = tuple(a for a in range(2) for _ in range(2) for _ in range(2))
    report = validate_heap(FiniteHeap(2, table))
    check = report.check("malcev")
    assert not check.passed
    assert check.counterexample is not None


def test_validator_rejects_every_single_mutation_z4():
    h = heap_from_group(make_group([4]))
    base = list(h.ternary_table)
    for pos in range(len(base)):
        for wrong in range(4):
            if wrong == base[pos]:
                continue
            mutated = base.copy()
            mutated[pos] = wrong
            assert not validate_heap(FiniteHeap(4, tuple(mutated))).passed


def test_sampled_mode_above_cap():
    h = heap_from_group(make_group([33]))
    report = validate_heap(h)
    assoc = report.check("associativity")
    assert assoc.passed and not assoc.exhaustive
    assert report.check("malcev").exhaustive
    assert report.passed


def test_retract_at_zero_reproduces_group_table():
    g = make_group([4])
    h = heap_from_group(g)
    r = retract_at(h, 0)
    assert r.identity == 0
    for a in g.elements():
        for b in g.elements():
            assert r.add(g.index(a), g.index(b)) == g.index(g.add(a, b))


def test_retract_at_two_is_isomorphic_group():
    h = heap_from_group(make_group([4]))
    r = retract_at(h, 2)
    assert r.identity == 2
    assert r.is_abelian()
    # a -> [a, 2, 0] carries (carrier, +_2) to (carrier, +_0) additively
    iso = retract_iso(h, 2, 0)
    r0 = retract_at(h, 0)
    assert sorted(iso) == list(range(4))
    for a in range(4):
        for b in range(4):
            assert iso[r.add(a, b)] == r0.add(iso[a], iso[b])


@pytest.mark.parametrize("orders", [[4], [6], [2, 2]])
def test_retract_roundtrip_every_base_point(orders):
    h = heap_from_group(make_group(orders))
    for b in range(h.size):
        assert retract_at(h, b).to_heap() == h


def test_retract_iso_identity_and_swap():
    h2 = heap_from_group(make_group([2]))
    assert retract_iso(h2, 0, 0) == (0, 1)
    assert retract_iso(h2, 0, 1) == (1, 0)


def test_retract_iso_z4_exhaustive_additivity():
    h = heap_from_group(make_group([4]))
    iso = retract_iso(h, 0, 2)
    assert iso == (2, 3, 0, 1)  # a -> a + 2
    r0, r2 = retract_at(h, 0), retract_at(h, 2)
    for a in range(4):
        for b in range(4):
            assert iso[r0.add(a, b)] == r2.add(iso[a], iso[b])


@pytest.mark.parametrize("orders", [[2], [3], [4], [2, 2], [5], [6]])
def test_retract_iso_additive_for_every_base_pair(orders):
    h = heap_from_group(make_group(orders))
    n = h.size
    for b in range(n):
        rb = retract_at(h, b, validate=False)
        for b2 in range(n):
            iso = retract_iso(h, b, b2, validate=False)
            assert sorted(iso) == list(range(n))
            rb2 = retract_at(h, b2, validate=False)
            for x in range(n):
                for y in range(n):
                    assert iso[rb.add(x, y)] == rb2.add(iso[x], iso[y])


def test_validator_rejects_every_single_mutation_order_eight():
    h = heap_from_group(make_group([8]))
    base = list(h.ternary_table)
    for pos in range(len(base)):
        for wrong in range(8):
            if wrong == base[pos]:
                continue
            mutated = base.copy()
            mutated[pos] = wrong
            assert not validate_heap(FiniteHeap(8, tuple(mutated))).passed


def test_retract_rejects_invalid_heap():
    table = tuple(a for a in range(2) for _ in range(2) for _ in range(2))
    bad = FiniteHeap(2, table)
    assert not is_valid_heap(bad)
    with pytest.raises(ValueError):
        retract_at(bad, 0)


def test_heap_json_roundtrip():
    h = heap_from_group(make_group([3]))
    assert FiniteHeap.from_json_dict(h.to_json_dict()) == h
    with pytest.raises(ValueError):
        FiniteHeap.from_json_dict({"size": 2})
    with pytest.raises(ValueError):
        FiniteHeap(2, (0,) * 7)
    with pytest.raises(ValueError):
        FiniteHeap(2, (0, 0, 0, 0, 0, 0, 0, 9))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(min_value=1, max_value=4), min_size=1, max_size=2))
def test_heaps_from_groups_always_validate(orders):
    report = validate_heap(heap_from_group(make_group(orders)))
    assert report.passed
