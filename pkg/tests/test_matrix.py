import random
from fractions import Fraction
from itertools import combinations, product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from qprseq.exactfield import GF, QQ
from qprseq.matrix import (
    IndexPair,
    MatrixError,
    SingularError,
    border,
    complement,
    count_quasi_principal_pairs,
    det,
    direct_sum,
    identity,
    quasi_principal_pairs,
    random_symmetric,
    rank,
    schur_complement,
    submatrix,
    zeros,
)

from corpora import all_symmetric, leibniz_det, mat, random_corpus


def test_symmetry_enforced():
    with pytest.raises(MatrixError, match=r"\(1,2\)"):
        mat([[1, 2], [3, 4]])
    with pytest.raises(MatrixError):
        mat([[1, 2]])


def test_submatrix_examples():
    B = mat([[1, 1], [1, 0]])
    assert submatrix(B, [1], [2]) == ((1,),)
    I3 = identity(3)
    assert submatrix(I3, [1, 2], [1, 3]) == ((1, 0), (0, 0))
    C = random_symmetric(4, seed=5)
    assert submatrix(C, [1, 2, 3, 4], [1, 2, 3, 4]) == C.entries
    with pytest.raises(MatrixError):
        submatrix(C, [0], [1])
    with pytest.raises(MatrixError):
        submatrix(C, [5], [1])


def test_principal_submatrix_is_symmetric():
    B = random_symmetric(6, seed=2)
    S = submatrix(B, [1, 3, 4], [1, 3, 4])
    assert all(S[i][j] == S[j][i] for i in range(3) for j in range(3))


def test_det_examples():
    assert det(mat([[1, 1], [1, 0]])) == -1
    for n in range(6):
        assert det(identity(n)) == 1
    assert det([[1, 1, 0], [1, 2, 1], [0, 1, 1]]) == 0
    assert leibniz_det([[1, 1, 0], [1, 2, 1], [0, 1, 1]], 0, 1) == 0
    assert det([]) == 1
    with pytest.raises(MatrixError):
        det([[1, 2, 3], [4, 5, 6]])


def test_det_fractions_and_prime_fields():
    M = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 3), Fraction(1, 4)]]
    assert det(M) == Fraction(1, 8) - Fraction(1, 9)
    F = GF(7)
    M = [[F(3), F(5)], [F(5), F(1)]]
    assert det(M) == F(3 - 25)


def test_det_matches_leibniz_on_corpus():
    rng = random.Random(4)
    for B in random_corpus(200, nmax=5, seed=3):
        F = B.field
        assert det(B) == leibniz_det(B.entries, F.zero(), F.one())
        # non-symmetric submatrices too
        k = rng.randint(1, B.n)
        a = rng.sample(range(1, B.n + 1), k)
        b = rng.sample(range(1, B.n + 1), k)
        S = submatrix(B, a, b)
        assert det(S, F) == leibniz_det(S, F.zero(), F.one())


def test_det_rational_entries_match_leibniz():
    rng = random.Random(9)
    for _ in range(50):
        n = rng.randint(1, 5)
        M = [[Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(n)] for _ in range(n)]
        assert det(M) == leibniz_det(M, Fraction(0), Fraction(1))


def test_det_no_overflow_20x20():
    B = random_symmetric(20, seed=1, bound=10**6)
    d = det(B)
    assert d.denominator == 1
    # determinant of a triangular-free check: scaling by 3 multiplies det by 3^20
    B3 = mat([[3 * x for x in r] for r in B.entries])
    assert det(B3) == 3**20 * d


def test_rank_examples():
    assert rank(mat([[1, 1], [1, 1]])) == 1
    assert rank(zeros(3)) == 0
    assert rank(mat([[1, 1], [1, 0]])) == 2
    assert rank(zeros(0)) == 0
    assert rank([[1, 2, 3], [2, 4, 6]]) == 1
    assert rank(mat([[1, 1], [1, 1]], GF(2))) == 1
    assert rank(mat([[0, 1], [1, 0]], GF(2))) == 2


def _max_nonzero_principal(B):
    best = 0
    for k in range(1, B.n + 1):
        for g in combinations(range(1, B.n + 1), k):
            if det(submatrix(B, g, g), B.field) != 0:
                best = k
    return best


def test_rank_is_largest_nonzero_principal_minor():
    corpus = random_corpus(150, nmax=6, seed=21, bounds=(1, 2))
    corpus += list(all_symmetric(2, 3)) + list(all_symmetric(3, 2))
    for B in corpus:
        assert rank(B) == _max_nonzero_principal(B)


def test_bordered_rank_bounds():
    for B in random_corpus(150, nmax=6, seed=5, bounds=(1, 2)):
        r = rank(B)
        for alpha in combinations(range(1, B.n + 1), B.n - 1):
            ra = rank(submatrix(B, alpha, alpha), B.field)
            assert ra <= r <= ra + 2


def test_nonsingular_deleted_rank():
    """(n-1)x(n-1) submatrices of a nonsingular symmetric matrix have rank >= n-2."""
    seen = 0
    for B in list(all_symmetric(2, 3)) + list(all_symmetric(3, 3)) + random_corpus(80, nmax=5, seed=8, bounds=(1,)):
        if B.n < 2 or det(B) == 0:
            continue
        seen += 1
        idx = range(1, B.n + 1)
        for a in combinations(idx, B.n - 1):
            for b in combinations(idx, B.n - 1):
                assert rank(submatrix(B, a, b), B.field) >= B.n - 2
    assert seen > 50


def _brute_pairs(n, k):
    out = set()
    for a in combinations(range(1, n + 1), k):
        for b in combinations(range(1, n + 1), k):
            if len(set(a) & set(b)) >= k - 1:
                out.add((a, b))
    return out


def test_quasi_principal_pairs_examples():
    assert list(quasi_principal_pairs(2, 1)) == [
        ((1,), (1,)), ((2,), (2,)), ((1,), (2,)), ((2,), (1,))]
    assert list(quasi_principal_pairs(2, 2)) == [((1, 2), (1, 2))]
    assert len(list(quasi_principal_pairs(4, 2))) == 30
    assert len(_brute_pairs(4, 2)) == 30


@pytest.mark.parametrize("n", range(1, 8))
def test_quasi_principal_pairs_exact_cover(n):
    for k in range(1, n + 1):
        pairs = list(quasi_principal_pairs(n, k))
        assert len(pairs) == len(set(pairs)) == count_quasi_principal_pairs(n, k)
        assert set(pairs) == _brute_pairs(n, k)
        assert count_quasi_principal_pairs(n, k) == comb(n, k) * (1 + k * (n - k))


def test_quasi_principal_pairs_order():
    pairs = list(quasi_principal_pairs(4, 2))
    principal = [p for p in pairs if p.is_principal]
    assert pairs[:len(principal)] == principal
    assert [p.alpha for p in principal] == sorted(p.alpha for p in principal)
    rest = pairs[len(principal):]
    keys = [(tuple(sorted(set(p.alpha) & set(p.beta))),
             (set(p.alpha) - set(p.beta)).pop(), (set(p.beta) - set(p.alpha)).pop()) for p in rest]
    assert keys == sorted(keys)


@pytest.mark.parametrize("k", [0, 3])
def test_quasi_principal_pairs_range(k):
    with pytest.raises(MatrixError):
        list(quasi_principal_pairs(2, k))


def test_schur_examples():
    assert schur_complement(mat([[1, 1], [1, 0]]), [1]) == mat([[-1]])
    for n in range(2, 6):
        assert schur_complement(identity(n), [1]) == identity(n - 1)
    with pytest.raises(SingularError):
        schur_complement(mat([[0, 1], [1, 0]]), [1])
    with pytest.raises(SingularError):
        schur_complement(mat([[1, 1], [1, 1]]), [1, 2])


def _perm_sign(seq):
    seq = list(seq)
    s = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def _check_schur_minors(B, gamma, max_order=3):
    C = schur_complement(B, gamma)
    delta = complement(B.n, gamma)
    pos = {v: i + 1 for i, v in enumerate(delta)}
    dg = det(submatrix(B, gamma, gamma))
    for k in range(1, min(max_order, len(delta)) + 1):
        for a in combinations(delta, k):
            for b in combinations(delta, k):
                lhs = det(submatrix(C, [pos[i] for i in a], [pos[j] for j in b])) * dg
                # block order (alpha then gamma): exact identity
                assert lhs == det(submatrix(B, a + tuple(gamma), b + tuple(gamma)))
                # sorted order differs by the sign of the two sorting permutations
                ra, rb = a + tuple(gamma), b + tuple(gamma)
                sgn = _perm_sign(ra) * _perm_sign(rb)
                assert sgn * lhs == det(submatrix(B, sorted(ra), sorted(rb)))
    assert rank(C) == rank(B) - len(gamma)
    assert C.n == B.n - len(gamma)


def test_schur_minor_identity_random_5x5():
    rng = random.Random(0)
    done = 0
    while done < 10:
        B = random_symmetric(5, seed=rng.getrandbits(32), bound=5)
        if det(submatrix(B, [2, 4], [2, 4])) == 0:
            continue
        _check_schur_minors(B, (2, 4), max_order=2)
        done += 1


def test_schur_minor_identity_corpus():
    rng = random.Random(1)
    checked = 0
    for B in random_corpus(60, fields=(QQ, GF(5)), nmax=6, seed=17, bounds=(2, 5)):
        gs = [g for k in range(1, B.n) for g in combinations(range(1, B.n + 1), k)
              if det(submatrix(B, g, g)) != 0]
        if not gs:
            continue
        _check_schur_minors(B, rng.choice(gs))
        checked += 1
    assert checked > 30


def test_border_examples():
    assert border(mat([[1]]), [1], 0) == mat([[1, 1], [1, 0]])
    assert border(zeros(2), [0, 0], 0) == zeros(3)
    assert border(mat([[1, 1], [1, 2]]), [1, 1], 1) == mat([[1, 1, 1], [1, 2, 1], [1, 1, 1]])
    with pytest.raises(MatrixError):
        border(zeros(2), [1], 0)


def test_direct_sum_examples():
    assert direct_sum(mat([[1]]), mat([[1, 1], [1, 0]])) == mat([[1, 0, 0], [0, 1, 1], [0, 1, 0]])
    B = random_symmetric(3, seed=4)
    assert direct_sum(B, zeros(0)) == B
    assert direct_sum(zeros(0), B) == B
    assert direct_sum(identity(2), identity(3)) == identity(5)
    with pytest.raises(MatrixError):
        direct_sum(identity(1), identity(1, GF(2)))


def test_random_symmetric_contract():
    assert random_symmetric(0, seed=3).n == 0
    assert random_symmetric(4, GF(3), seed=9, bound=2) == random_symmetric(4, GF(3), seed=9, bound=2)
    assert random_symmetric(3, seed=1) != random_symmetric(3, seed=2)
    B = random_symmetric(6, seed=5, bound=3)
    assert all(-3 <= x <= 3 for r in B.entries for x in r)
    with pytest.raises(MatrixError):
        random_symmetric(2, bound=0)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32), st.sampled_from([None, 2, 3, 5]))
def test_rank_equals_nonzero_principal_property(n, seed, p):
    F = QQ if p is None else GF(p)
    B = random_symmetric(n, F, seed, 1)
    assert rank(B) == _max_nonzero_principal(B)
