from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from freegen.errors import (
    IncompatiblePartitionsError,
    InvalidPartitionError,
    ParityError,
    SizeLimitError,
    TypeSizeMismatchError,
)
from freegen.nc import (
    BlockTypeMultiset,
    NoncrossingPartition,
    catalan,
    enumerate_by_block_type,
    enumerate_even_nc,
    enumerate_nc,
    even_block_types,
    is_noncrossing,
    kreweras_complement,
    leq,
    mobius_recursive,
    mobius_to_top,
)

NCP = NoncrossingPartition


def set_partitions(elems):
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for p in set_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def crossing_brute(blocks):
    label = {x: i for i, b in enumerate(blocks) for x in b}
    pts = sorted(label)
    for a, b, c, d in combinations(pts, 4):
        if label[a] == label[c] and label[b] == label[d] and label[a] != label[b]:
            return True
    return False


def brute_nc(n):
    return sorted(
        tuple(sorted(tuple(sorted(b)) for b in p))
        for p in set_partitions(list(range(1, n + 1)))
        if not crossing_brute(p)
    )


def kreweras_brute(pi):
    """Coarsest partition of primed points keeping pi + K noncrossing.

    Point i sits at 2i-1 and i' at 2i on a line of 2n points.
    """
    n = pi.n
    base = [[2 * x - 1 for x in b] for b in pi.blocks]
    good = []
    for q in set_partitions(list(range(1, n + 1))):
        if not crossing_brute(base + [[2 * x for x in b] for b in q]):
            good.append(tuple(sorted(tuple(sorted(b)) for b in q)))
    coarsest = min(good, key=len)
    top = NCP(n, coarsest)
    # it must be the maximum, not merely a maximal element
    assert all(leq(NCP(n, g), top) for g in good)
    return top


class TestIsNoncrossing:
    def test_examples(self):
        assert is_noncrossing([[1, 2], [3, 4]], 4)
        assert not is_noncrossing([[1, 3], [2, 4]], 4)
        assert is_noncrossing([[1, 4], [2, 3]], 4)

    @pytest.mark.parametrize("blocks", [[[1, 2], [2, 3]], [[1], [3]], [[0, 1]], [[]]])
    def test_invalid(self, blocks):
        with pytest.raises(InvalidPartitionError):
            is_noncrossing(blocks, 3 if blocks != [[0, 1]] else 2)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_matches_brute_force(self, n):
        for p in set_partitions(list(range(1, n + 1))):
            assert is_noncrossing(p, n) == (not crossing_brute(p))

    def test_constructor_rejects_crossing(self):
        with pytest.raises(InvalidPartitionError):
            NCP(4, ((1, 3), (2, 4)))

    def test_canonical_form(self):
        assert NCP(4, ((4, 1), (3, 2))).blocks == ((1, 4), (2, 3))


class TestEnumeration:
    def test_small(self):
        assert [str(p) for p in enumerate_nc(1)] == ["{1}"]
        assert len(enumerate_nc(3)) == 5
        nc4 = enumerate_nc(4)
        assert len(nc4) == 14
        assert ((1, 3), (2, 4)) not in [p.blocks for p in nc4]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_matches_brute_force_in_order(self, n):
        assert [p.blocks for p in enumerate_nc(n)] == brute_nc(n)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_catalan_count(self, n):
        parts = enumerate_nc(n)
        assert len(parts) == catalan(n)
        assert parts == sorted(parts)

    def test_twelve_within_default_limit(self):
        assert len(enumerate_nc(12)) == 208012

    def test_limit(self):
        with pytest.raises(SizeLimitError):
            enumerate_nc(13)
        with pytest.raises(SizeLimitError):
            enumerate_nc(5, limit=4)

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("FREEGEN_LATTICE_LIMIT", "3")
        with pytest.raises(SizeLimitError):
            enumerate_nc(4)

    def test_even(self):
        assert [str(p) for p in enumerate_even_nc(2)] == ["{1,2}"]
        assert {str(p) for p in enumerate_even_nc(4)} == {"{1,2,3,4}", "{1,2}{3,4}", "{1,4}{2,3}"}
        assert len(enumerate_even_nc(6)) == 12

    def test_even_parity_error(self):
        with pytest.raises(ParityError):
            enumerate_even_nc(5)

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
    def test_even_is_filter(self, n):
        full = [p for p in enumerate_nc(n) if all(s % 2 == 0 for s in p.block_sizes())]
        assert enumerate_even_nc(n) == full

    def test_block_type_examples(self):
        assert len(enumerate_by_block_type(4, [2, 2])) == 2
        assert len(enumerate_by_block_type(6, [2, 4])) == 6
        assert [str(p) for p in enumerate_by_block_type(6, [6])] == ["{1,2,3,4,5,6}"]

    def test_block_type_mismatch(self):
        with pytest.raises(TypeSizeMismatchError):
            enumerate_by_block_type(6, [2, 2])
        with pytest.raises(ParityError):
            BlockTypeMultiset((3, 3))

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
    def test_block_types_partition_even(self, n):
        union = []
        for t in even_block_types(n):
            chunk = enumerate_by_block_type(n, t)
            assert all(tuple(sorted(p.block_sizes())) == t.parts for p in chunk)
            union.extend(chunk)
        assert len(union) == len(set(union))
        assert sorted(union) == enumerate_even_nc(n)


class TestOrder:
    def test_examples(self):
        a = NCP(4, ((1, 2), (3, 4)))
        b = NCP(4, ((1, 4), (2, 3)))
        assert leq(NCP.bottom(4), b)
        assert leq(a, NCP.top(4))
        assert not leq(a, b) and not leq(b, a)

    def test_size_mismatch(self):
        with pytest.raises(IncompatiblePartitionsError):
            leq(NCP.bottom(3), NCP.top(4))


class TestKreweras:
    def test_examples(self):
        assert kreweras_complement(NCP.bottom(5)) == NCP.top(5)
        assert kreweras_complement(NCP.top(5)) == NCP.bottom(5)
        assert str(kreweras_complement(NCP(4, ((1, 2), (3, 4))))) == "{1}{2,4}{3}"

    @pytest.mark.parametrize("n", range(1, 6))
    def test_matches_coarsest_search(self, n):
        for pi in enumerate_nc(n):
            assert kreweras_complement(pi) == kreweras_brute(pi)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_block_count(self, n):
        for pi in enumerate_nc(n):
            assert len(pi) + len(kreweras_complement(pi)) == n + 1

    @pytest.mark.parametrize("n", range(1, 8))
    def test_order_reversing(self, n):
        lattice = enumerate_nc(n)
        K = {p: kreweras_complement(p) for p in lattice}
        for p in lattice:
            for s in lattice:
                if leq(p, s):
                    assert leq(K[s], K[p])


class TestMobius:
    def test_examples(self):
        assert mobius_to_top(NCP.top(6)) == 1
        assert mobius_to_top(NCP.bottom(4)) == -5
        assert mobius_to_top(NCP(4, ((1, 2), (3, 4)))) == -1

    def test_recursive_examples(self):
        assert mobius_recursive(NCP.top(3)) == 1
        assert mobius_recursive(NCP.bottom(3)) == 2
        assert mobius_recursive(NCP(3, ((1,), (2, 3)))) == -1

    def test_recursive_limit(self):
        with pytest.raises(SizeLimitError):
            mobius_recursive(NCP.bottom(9))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_two_algorithms_agree(self, n):
        for pi in enumerate_nc(n):
            assert mobius_to_top(pi) == mobius_recursive(pi)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_defining_sum(self, n):
        lattice = enumerate_nc(n)
        mu = {p: mobius_to_top(p) for p in lattice}
        for p in lattice:
            total = sum(mu[s] for s in lattice if leq(p, s))
            assert total == (1 if len(p) == 1 else 0)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_bottom_closed_form(self, n):
        assert mobius_to_top(NCP.bottom(n)) == (-1) ** (n - 1) * catalan(n - 1)


@pytest.mark.parametrize("n,expected", [(0, 1), (3, 5), (6, 132)])
def test_catalan(n, expected):
    assert catalan(n) == expected


def test_catalan_matches_enumeration():
    assert catalan(6) == len(brute_nc(6))


@given(st.integers(1, 8).flatmap(lambda n: st.sampled_from(enumerate_nc(n))))
def test_text_round_trip(pi):
    assert NCP.parse(str(pi)) == pi


def test_parse_rejects_garbage():
    with pytest.raises(InvalidPartitionError):
        NCP.parse("{1,2} junk")
