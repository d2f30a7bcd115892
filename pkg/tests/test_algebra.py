import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from azcount.algebra import (
    AlgebraElement,
    algebra_mul,
    connected_sum_count,
    fibonacci_element,
    interior_multiply,
    permute_slots,
    tensor,
    transfer,
    undistinguish,
    words,
)
from azcount.errors import ContractViolation
from azcount.formal import FormalSum, tensor_concat
from azcount.oracle import count_matchings, mc_graph, one_factor_addition, path_graph, state_sum

from helpers import random_split

y = AlgebraElement(1, 0)
n = AlgebraElement(0, 1)


def test_relations():
    assert y * y == y
    assert n * n == AlgebraElement(0, 0)
    assert y * n == n
    assert n * y == n


elements = st.builds(AlgebraElement, st.integers(-20, 20), st.integers(-20, 20))


@given(elements, elements, elements)
def test_commutative_associative(a, b, c):
    assert algebra_mul(a, b) == algebra_mul(b, a)
    assert algebra_mul(algebra_mul(a, b), c) == algebra_mul(a, algebra_mul(b, c))
    assert a * (b + c) == a * b + a * c


def test_tensor_words_roundtrip():
    t = tensor("yyn", "nny", "yyn")
    assert words(t) == {"yyn": 2, "nny": 1}
    with pytest.raises(ContractViolation):
        tensor("yy", "n")
    with pytest.raises(ContractViolation):
        tensor("ya")


def test_edge_glued_to_edge():
    f2 = tensor("yy", "nn")
    assert interior_multiply(f2, f2, [1], [0]) == tensor("yyy", "ynn", "nny")


def test_worked_rearrangement():
    # one simple tensor per slot value so the positions can be read back
    for a_word in map("".join, itertools.product("yn", repeat=3)):
        for b_word in map("".join, itertools.product("yn", repeat=4)):
            got = interior_multiply(tensor(a_word), tensor(b_word), [1, 2], [0, 3])
            e, h = a_word, b_word
            if (e[1], h[0]) == ("n", "n") or (e[2], h[3]) == ("n", "n"):
                assert len(got) == 0
                continue

            def prod(p, q):
                return "y" if p == q == "y" else "n"

            want = e[0] + prod(e[1], h[0]) + prod(e[2], h[3]) + h[1] + h[2]
            assert words(got) == {want: 1}


def test_dead_terms_drop():
    assert len(interior_multiply(tensor("n"), tensor("n"), [0], [0])) == 0


def test_empty_index_sets_concatenate():
    rng = random.Random(5)
    for _ in range(20):
        a = FormalSum(3, {rng.randrange(8): rng.randint(-3, 3) for _ in range(4)})
        b = FormalSum(2, {rng.randrange(4): rng.randint(-3, 3) for _ in range(3)})
        assert interior_multiply(a, b, [], []) == tensor_concat(a, b)


def test_interior_multiply_rejects_bad_indices():
    f2 = tensor("yy", "nn")
    with pytest.raises(ContractViolation):
        interior_multiply(f2, f2, [0, 1], [0])
    with pytest.raises(ContractViolation):
        interior_multiply(f2, f2, [2], [0])
    with pytest.raises(ContractViolation):
        interior_multiply(f2, f2, [1, 0], [0, 1])


def test_fibonacci_small():
    assert fibonacci_element(1) == tensor("y")
    assert fibonacci_element(2) == tensor("yy", "nn")
    assert fibonacci_element(3) == tensor("yyy", "ynn", "nny")
    assert fibonacci_element(4) == tensor("yyyy", "yynn", "ynny", "nnyy", "nnnn")
    assert len(fibonacci_element(6)) == 13


@pytest.mark.parametrize("k", range(1, 9))
def test_fibonacci_is_path_state_sum(k):
    assert fibonacci_element(k) == state_sum(path_graph(k))


@pytest.mark.parametrize("k", range(1, 11))
def test_fibonacci_grows_by_gluing_an_edge(k):
    assert interior_multiply(fibonacci_element(k), fibonacci_element(2), [k - 1], [0]) == fibonacci_element(k + 1)


def test_fibonacci_rejects_zero():
    with pytest.raises(ContractViolation):
        fibonacci_element(0)


def test_transfer():
    f2 = tensor("yy", "nn")
    assert transfer(f2) == f2
    f3 = fibonacci_element(3)
    assert transfer(transfer(f3)) == f3
    assert transfer(f3) == tensor("nnn", "nyy", "yyn")


@pytest.mark.parametrize("k", [1, 2, 3])
def test_transfer_matches_one_factor_addition(k):
    g = mc_graph(k)
    assert transfer(state_sum(g)) == state_sum(one_factor_addition(g))


def test_connected_sum_examples():
    f2 = tensor("yy", "nn")
    assert connected_sum_count(f2, f2) == 2
    f3 = fibonacci_element(3)
    assert connected_sum_count(f3, f3) == _multigraph_matchings(3, [(0, 1), (1, 2), (0, 1), (1, 2)])
    assert connected_sum_count(f3, FormalSum.zero(3)) == 0
    with pytest.raises(ContractViolation):
        connected_sum_count(f2, f3)


def _multigraph_matchings(n_vertices, edges):
    count = 0
    for subset in itertools.combinations(range(len(edges)), n_vertices // 2):
        used = [v for e in subset for v in edges[e]]
        if len(set(used)) == n_vertices:
            count += 1
    return count if n_vertices % 2 == 0 else 0


def test_connected_sum_on_random_graphs():
    rng = random.Random(11)
    for _ in range(15):
        g1, g2, _, _, glued = random_split(rng, glue_all=True)
        assert connected_sum_count(state_sum(g1), state_sum(g2)) == count_matchings(glued)


def test_patching_on_random_graphs():
    rng = random.Random(12)
    for _ in range(10):
        g1, g2, I, J, glued = random_split(rng, glue_all=False)
        assert interior_multiply(state_sum(g1), state_sum(g2), I, J) == state_sum(glued)


def test_all_n_coefficient_is_matching_count():
    for g in (path_graph(4), mc_graph(3), one_factor_addition(mc_graph(2))):
        assert state_sum(g)[0] == count_matchings(g)


def test_undistinguish_and_permute():
    f3 = fibonacci_element(3)
    # matching the middle vertex inside the path leaves either end free
    assert undistinguish(f3, 1) == tensor("yn", "ny")
    assert permute_slots(tensor("yyn"), [2, 0, 1]) == tensor("nyy")
    with pytest.raises(ContractViolation):
        permute_slots(f3, [0, 0, 1])
    with pytest.raises(ContractViolation):
        undistinguish(tensor("y"), 0)
