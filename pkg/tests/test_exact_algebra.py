import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_skew
from oracles import leibniz_determinant, pfaffian_by_matchings
from pfholant.errors import CapExceeded
from pfholant.exact_algebra import (
    Permutation,
    SkewMatrix,
    as_rational,
    block_diagonal,
    conjugate_by_permutation,
    determinant,
    format_rational,
    pfaffian,
    pfaffian_sum_expansion,
    sign_of_set,
    spf_vector,
    sub_pfaffian,
    subsets_by_size,
    tilde,
)


def skew_strategy(max_n=6, n=None):
    @st.composite
    def build(draw):
        size = draw(st.integers(0, max_n)) if n is None else n
        vals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
        entries = {(i, j): draw(vals) for i in range(size) for j in range(i + 1, size)}
        return SkewMatrix.from_upper(size, entries)

    return build()


def test_rejects_non_skew():
    with pytest.raises(ValueError):
        SkewMatrix([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        SkewMatrix([[1, 0], [0, -1]])


def test_rationals_parse_and_print():
    assert as_rational("-1/3") == Fraction(-1, 3)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


def test_small_pfaffians():
    a, b = Fraction(3, 2), Fraction(-2)
    assert pfaffian(SkewMatrix.zeros(0)) == 1
    assert pfaffian(SkewMatrix.from_upper(2, {(0, 1): a})) == a
    assert pfaffian(SkewMatrix.from_upper(3, {(0, 1): a, (1, 2): b})) == 0
    ones = SkewMatrix.from_upper(4, {(i, j): 1 for i, j in combinations(range(4), 2)})
    assert pfaffian(ones) == 1


def test_pfaffian_four_by_four_formula():
    z = random_skew(random.Random(1), 4)
    want = z[0, 1] * z[2, 3] - z[0, 2] * z[1, 3] + z[0, 3] * z[1, 2]
    assert pfaffian(z) == want


@settings(max_examples=60, deadline=None)
@given(skew_strategy())
def test_pfaffian_matches_matching_expansion(z):
    assert pfaffian(z) == pfaffian_by_matchings(z)


def test_determinant_goldens():
    assert determinant([[1, 0], [0, 1]]) == 1
    assert determinant([[2, 1], [1, 2]]) == 3
    assert determinant([]) == 1
    with pytest.raises(ValueError):
        determinant([[1, 2]])


def test_determinant_against_leibniz(rng):
    for _ in range(30):
        n = rng.randint(1, 5)
        m = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        assert determinant(m) == leibniz_determinant(m)


def test_pfaffian_squared_is_determinant(rng):
    for n in range(0, 9):
        z = random_skew(rng, n)
        assert pfaffian(z) ** 2 == determinant(z.rows)


def test_sub_pfaffian_and_subset_order():
    assert subsets_by_size(3) == [(), (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    z = random_skew(random.Random(3), 5)
    assert sub_pfaffian(z, ()) == 1
    assert sub_pfaffian(z, (1,)) == 0
    assert sub_pfaffian(z, (1, 3)) == z[1, 3]
    vec = spf_vector(z)
    assert len(vec) == 32
    with pytest.raises(CapExceeded):
        spf_vector(SkewMatrix.zeros(5), cap=4)


def test_sign_of_set():
    assert sign_of_set(()) == 1
    assert sign_of_set((0, 1)) == 1
    assert sign_of_set((0, 2)) == -1
    with pytest.raises(ValueError):
        sign_of_set((0,))


def test_tilde_flips_the_right_entries():
    z = SkewMatrix.from_upper(3, {(0, 1): 1, (0, 2): 1, (1, 2): 1})
    t = tilde(z)
    assert (t[0, 1], t[0, 2], t[1, 2]) == (1, -1, 1)
    assert tilde(t) == z


def test_tilde_sub_pfaffian_sign(rng):
    z = random_skew(rng, 6)
    t = tilde(z)
    for k in range(0, 7, 2):
        for idx in combinations(range(6), k):
            assert sub_pfaffian(t, idx) == sign_of_set(idx) * sub_pfaffian(z, idx)


def test_block_stack_is_outer_product(rng):
    a, b = random_skew(rng, 3), random_skew(rng, 2)
    big = block_diagonal([a, b])
    for k in range(6):
        for idx in combinations(range(5), k):
            left = tuple(i for i in idx if i < 3)
            right = tuple(i - 3 for i in idx if i >= 3)
            assert sub_pfaffian(big, idx) == sub_pfaffian(a, left) * sub_pfaffian(b, right)


def test_conjugation_goldens():
    z = SkewMatrix.from_upper(2, {(0, 1): 5})
    assert conjugate_by_permutation(z, Permutation.identity(2)) == z
    assert conjugate_by_permutation(z, Permutation((1, 0))) == -z


def test_conjugation_composes(rng):
    z = random_skew(rng, 6)
    for _ in range(10):
        p = list(range(6))
        q = list(range(6))
        rng.shuffle(p)
        rng.shuffle(q)
        p, q = Permutation(tuple(p)), Permutation(tuple(q))
        lhs = conjugate_by_permutation(conjugate_by_permutation(z, p), q)
        assert lhs == conjugate_by_permutation(z, q.compose(p))


def test_conjugation_sub_pfaffian_sign(rng):
    z = random_skew(rng, 6)
    images = list(range(6))
    rng.shuffle(images)
    p = Permutation(tuple(images))
    c = conjugate_by_permutation(z, p)
    for k in range(0, 7, 2):
        for idx in combinations(range(6), k):
            mapped = sorted(p(i) for i in idx)
            assert sub_pfaffian(c, mapped) == p.restricted_sign(idx) * sub_pfaffian(z, idx)


def test_permutation_algebra():
    p = Permutation((2, 0, 1))
    assert p.compose(p.inverse()) == Permutation.identity(3)
    assert p.sign() == 1
    assert Permutation((1, 0, 2)).sign() == -1
    with pytest.raises(ValueError):
        Permutation((0, 0))


def test_sum_expansion_goldens():
    a, b = Fraction(2, 3), Fraction(-5)
    z = SkewMatrix.from_upper(2, {(0, 1): a})
    y = SkewMatrix.from_upper(2, {(0, 1): b})
    assert pfaffian_sum_expansion(z, y) == a + b == pfaffian(z + y)
    w = random_skew(random.Random(9), 6)
    assert pfaffian_sum_expansion(w, SkewMatrix.zeros(6)) == pfaffian(w)
    with pytest.raises(ValueError):
        pfaffian_sum_expansion(w, SkewMatrix.zeros(4))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_lemma_and_pairing_identities(data):
    z = data.draw(skew_strategy(6))
    y = data.draw(skew_strategy(n=z.n))
    assert pfaffian(z + y) == pfaffian_sum_expansion(z, y)
    n = z.n
    pairing = sum(
        (sub_pfaffian(z, idx) * sub_pfaffian(y, sorted(set(range(n)) - set(idx)))
         for k in range(0, n + 1) for idx in combinations(range(n), k)),
        Fraction(0),
    )
    assert pairing == pfaffian(tilde(z) + y)
