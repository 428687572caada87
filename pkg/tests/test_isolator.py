import itertools
import random

import pytest
from hypothesis import given, strategies as st

from fixmodal.formula import System
from fixmodal.isolator import (
    AlphabetError,
    ArityError,
    Condition,
    IsolatorPair,
    SymbolicCount,
    Tensor,
    admissible,
    all_cells,
    count_admissible,
    count_definable,
    count_formula_classes,
    count_isolator_pairs,
    corner,
    enumerate_admissible,
    layer,
    prime_check,
)

MISSING_CORNER = Tensor.from_cells({(1, 1), (1, 3), (2, 3), (3, 1)})


def literal_prime(cells: frozenset, n: int) -> bool:
    """The three prime conditions read straight off their quantifiers."""
    if not cells:
        return False
    for j in range(1, n + 1):
        meets = [bool(cells & layer(j, k, n)) for k in (1, 2, 3)]
        if meets[0] and meets[1] and not meets[2]:
            return False
    slices = range(1, n + 1)
    for size in range(1, n + 1):
        for group in itertools.combinations(slices, size):
            if all(cells & layer(j, 3, n) for j in group):
                common = frozenset.intersection(*(layer(j, 3, n) for j in group))
                if not cells & common:
                    return False
    return True


def subsets(n):
    cells = all_cells(n, 3)
    for mask in range(1 << len(cells)):
        yield mask, frozenset(c for i, c in enumerate(cells) if mask >> i & 1)


def test_layer_examples():
    assert layer(1, 1, 2) == {(1, 1), (1, 2), (1, 3)}
    assert layer(2, 3, 2) == {(1, 3), (2, 3), (3, 3)}
    assert layer(1, 2, 1) == {(2,)}
    assert len(layer(2, 4, 3, v=4)) == 16
    with pytest.raises(IndexError):
        layer(3, 1, 2)
    with pytest.raises(IndexError):
        layer(1, 4, 2)


def test_prime_examples():
    empty = prime_check(Tensor(2, 3, 0))
    assert empty.violation.condition is Condition.EMPTY
    no_neither = prime_check(Tensor.from_cells({(1, 1), (1, 2)}))
    assert no_neither.violation.condition is Condition.GROUND and no_neither.violation.slices == (2,)
    assert prime_check(Tensor.from_cells({(1, 1), (2, 2), (3, 3)})).ok
    missing_corner = prime_check(MISSING_CORNER)
    assert missing_corner.violation.condition is Condition.MIN
    one_d = prime_check(Tensor.from_cells({(1,), (2,)}))
    assert one_d.violation.condition is Condition.GROUND and one_d.violation.slices == (1,)


def test_one_dimensional_primes():
    primes = {frozenset(c[0] for c in t.cells()) for t in enumerate_admissible(System.S5ConGroundMin, 1)}
    assert primes == {frozenset(s) for s in ({1}, {2}, {3}, {1, 3}, {2, 3}, {1, 2, 3})}


@pytest.mark.parametrize("n", [1, 2])
def test_prime_check_matches_literal_reading(n):
    for mask, cells in subsets(n):
        assert prime_check(Tensor(n, 3, mask)).ok == literal_prime(cells, n), sorted(cells)


def test_prime_check_matches_literal_reading_sampled_n3():
    rng = random.Random(7)
    cells = all_cells(3, 3)
    for _ in range(3000):
        mask = rng.getrandbits(27) & rng.getrandbits(27)
        chosen = frozenset(c for i, c in enumerate(cells) if mask >> i & 1)
        assert prime_check(Tensor(3, 3, mask)).ok == literal_prime(chosen, 3)


def test_prime_check_rejects_quaternary():
    with pytest.raises(AlphabetError):
        prime_check(Tensor.from_cells({(4,)}, v=4))


def test_admissible_examples():
    assert admissible(MISSING_CORNER, System.S5ConGround)
    assert not admissible(MISSING_CORNER, System.S5ConGroundMin)
    assert admissible(Tensor.from_cells({(1, 1), (1, 2)}), System.S5Con)
    with pytest.raises(AlphabetError):
        admissible(MISSING_CORNER, System.S5)


@pytest.mark.parametrize("n", [1, 2])
def test_admissibility_refines(n):
    for mask, _ in subsets(n):
        t = Tensor(n, 3, mask)
        if admissible(t, System.S5ConGroundMin):
            assert admissible(t, System.S5ConGround)
        if admissible(t, System.S5ConGround):
            assert admissible(t, System.S5Con)


@pytest.mark.parametrize("n", [1, 2])
def test_corner_supersets_are_prime(n):
    # Only conditions 1 and 3 are needed for the lower bound; all three in fact hold.
    c = corner(n)
    count = 0
    for mask, cells in subsets(n):
        if c in cells:
            count += 1
            assert prime_check(Tensor(n, 3, mask)).ok
    assert count == 2 ** (3 ** n - 1)


@pytest.mark.parametrize(
    "system,n,expected",
    [
        (System.S5ConGroundMin, 1, 6),
        (System.S5ConGroundMin, 2, 276),
        (System.S5ConGround, 1, 6),
        (System.S5Con, 1, 7),
        (System.S5, 1, 15),
    ],
)
def test_enumeration_counts(system, n, expected):
    ts = list(enumerate_admissible(system, n))
    assert len(ts) == expected == count_admissible(system, n)
    masks = [t.mask for t in ts]
    assert masks == sorted(set(masks))


@pytest.mark.parametrize(
    "system,n,expected",
    [(System.S5, 1, 32), (System.S5Con, 1, 12), (System.S5ConGround, 1, 10), (System.S5Con, 2, 2304)],
)
def test_pair_counts(system, n, expected):
    assert count_isolator_pairs(system, n) == expected
    assert count_isolator_pairs(system, n, closed_form=False) == expected


def test_formula_class_counts():
    assert count_formula_classes(System.S5, 1).value == 4_294_967_296
    assert count_formula_classes(System.S5Con, 1).value == 4096
    assert str(count_formula_classes(System.S5ConGround, 1)) == "2^10 = 1024"


@pytest.mark.parametrize("v,system", [(4, System.S5), (3, System.S5Con)])
@pytest.mark.parametrize("n", [1, 2])
def test_closed_forms(v, system, n):
    enumerated = count_isolator_pairs(system, n, closed_form=False)
    assert enumerated == v ** n * 2 ** (v ** n - 1)
    assert count_formula_classes(system, n).exponent == enumerated


def test_symbolic_count_is_not_expanded_when_huge():
    c = count_formula_classes(System.S5, 2)
    assert c.exponent == 16 * 2 ** 15
    assert c.value is None and str(c) == f"2^{16 * 2 ** 15}"
    assert SymbolicCount(64).value == 2 ** 64


def test_definable_counts():
    one = count_definable(1)
    assert one.count.value == 64 and (one.lower, one.upper) == (4, 8)
    two = count_definable(2)
    assert two.count.exponent == 276 and (two.lower, two.upper) == (256, 512)


def test_inclusion_exclusion_pieces():
    ground_1 = ground_2 = both = min_only = 0
    for mask, cells in subsets(2):
        t = Tensor(2, 3, mask)
        bad = [
            bool(cells & layer(j, 1, 2)) and bool(cells & layer(j, 2, 2)) and not cells & layer(j, 3, 2)
            for j in (1, 2)
        ]
        ground_1 += bad[0]
        ground_2 += bad[1]
        both += bad[0] and bad[1]
        if cells and not any(bad) and not prime_check(t).ok:
            min_only += 1
    assert (ground_1, ground_2, both, min_only) == (49, 49, 7, 144)
    assert 2 ** 9 - 1 - (ground_1 + ground_2) + both - min_only == 276


def test_cap():
    with pytest.raises(ArityError):
        list(enumerate_admissible(System.S5ConGroundMin, 3))
    with pytest.raises(ArityError):
        count_admissible(System.S5ConGround, 3)


def test_tensor_text_formats():
    t = Tensor.parse("2,2;1,1; 3,3")
    assert t == Tensor.parse("[[1,1],[2,2],[3,3]]")
    assert t.format() == "1,1;2,2;3,3" and str(t) == "{1,1;2,2;3,3}"
    with pytest.raises(ValueError):
        Tensor.parse("1,4")
    with pytest.raises(ValueError):
        Tensor.parse("1,1;2")
    with pytest.raises(ValueError):
        Tensor.parse("1,x")


def test_isolator_pair_membership():
    with pytest.raises(ValueError):
        IsolatorPair((2, 2), MISSING_CORNER)
    assert IsolatorPair((1, 1), MISSING_CORNER).world == (1, 1)


@given(st.integers(min_value=1, max_value=2 ** 9 - 1))
def test_drop_keeps_projection(mask):
    t = Tensor(2, 3, mask)
    assert set(t.drop(1).cells()) == {(c[1],) for c in t.cells()}


def test_27_cell_count_matches_layer_enumeration():
    # corner-free prime tensors live inside a T or F layer; the rest contain the corner
    n = 3
    corner_free = set()
    for j in range(1, n + 1):
        for k in (1, 2):
            cells = sorted(layer(j, k, n))
            for m in range(1, 1 << len(cells)):
                corner_free.add(frozenset(c for i, c in enumerate(cells) if m >> i & 1))
    primes = sum(prime_check(Tensor.from_cells(s, n=n)).ok for s in corner_free)
    total = count_admissible(System.S5ConGroundMin, n, allow_large=True)
    assert total == 2 ** 26 + primes == 67_110_456
    lo, hi = 2 ** 26, 2 ** 27
    assert lo < total < hi
