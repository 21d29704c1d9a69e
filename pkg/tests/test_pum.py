import math
from fractions import Fraction

import numpy as np
import pytest

from rankpum.finite_field import GF, moore_matrix
from rankpum.linalg import ext_rank
from rankpum.pum import UNBOUNDED, PumCode, minimal_basic, pum_construct, pum_encode
from rankpum.rank_metric import rank_weight

F8 = GF(2, 8)


def explicit_generators(F, g, n, k, k1, phi):
    """G0 and G1 assembled directly from Moore rows, (A; Phi; G01) and (Phi; B; 0)."""
    p = k1 - phi
    M = moore_matrix(F, list(g), k + p)
    G0 = [list(r) for r in M[:k]]
    G1 = [list(r) for r in M[p:k1]] + [list(r) for r in M[k:k + p]] + [[0] * n] * (k - k1)
    return G0, G1


def reference_encode(F, G0, G1, info):
    k = len(G0)
    prev = [0] * k
    out = []
    for u in list(info) + [[0] * k]:
        out.append(F.vadd(F.vec_mat(list(u), G0), F.vec_mat(prev, G1)))
        prev = list(u)
    return out


def test_profile_of_worked_example():
    code = pum_construct(8, 4, 2, 0, F8.basis, F8)
    pr = code.profile
    assert (pr.d0, pr.d1, pr.d01, pr.d_sigma) == (5, 5, 7, 3)
    assert pr.d_free == 7 == 8 - 4 + 2 + 1
    assert code.designed_distances(2) == {"row": 10, "column": 8, "reverse_column": 8}
    assert code.designed_distances(1)["row"] == 7
    assert pr.row(3) == 13 and pr.column(3) == 11 and pr.reverse_column(3) == 11
    with pytest.raises(ValueError):
        code.designed_distances(0)


def test_unit_memory_profile():
    code = PumCode(F8, 8, 4, 4)
    pr = code.profile
    assert code.is_unit_memory
    assert pr.d01 == UNBOUNDED and pr.row(1) == math.inf
    assert pr.d_free == pr.d0 + pr.d1 == 2 * (8 - 4 + 1)
    assert code.c01 is None


def test_arbitrary_rate_profile():
    code = PumCode(F8, 8, 4, 3, 2)
    pr = code.profile
    assert code.p == 1 and code.ell == 2 == code.max_zero_run()
    assert pr.d_sigma == 8 - 4 - 3 + 2 + 1
    assert pr.slope == Fraction(pr.d_sigma, 3)
    assert pr.row(3) == pr.d0 + pr.slope + pr.d1
    assert PumCode(F8, 8, 4, 4, 1).ell == 1
    assert PumCode(F8, 8, 4, 2).ell == 0


def test_phi_zero_distances_reduce_to_low_rate_formulas():
    rng = np.random.default_rng(0)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, n))
        k1 = int(rng.integers(1, k + 1))
        if k + k1 > n:
            continue
        pr = PumCode(F8, n, k, k1).profile
        ds = n - k - k1 + 1
        for j in range(1, 5):
            assert pr.column(j) == (n - k + 1) + (j - 1) * ds
            assert pr.reverse_column(j) == (j - 1) * ds + (n - k + 1)
            if j >= 2:
                assert pr.row(j) == 2 * (n - k + 1) + (j - 2) * ds


def test_upper_bounds_on_free_distance_and_slope():
    for n in range(2, 9):
        for k in range(1, n):
            for k1 in range(1, k + 1):
                for phi in range(k1):
                    if k + k1 - phi > n:
                        continue
                    code = PumCode(F8, n, k, k1, phi)
                    pr = code.profile
                    if k1 == k:
                        assert pr.d_free <= 2 * n - k + 1
                    else:
                        assert pr.d_free <= n - k + code.nu + 1
                    assert pr.slope <= n - k


@pytest.mark.parametrize("args,msg", [
    ((8, 4, 5, 0), "k1"),
    ((8, 4, 2, 2), "phi"),
    ((8, 5, 4, 0), "k + k1 - phi"),
    ((9, 4, 2, 0), "n <= m"),
])
def test_parameter_violations_name_the_constraint(args, msg):
    with pytest.raises(ValueError, match=msg.replace("+", r"\+")):
        PumCode(F8, *args)


@pytest.mark.parametrize("params", [(8, 4, 2, 0), (8, 4, 4, 0), (8, 4, 3, 2), (6, 4, 2, 1), (8, 3, 3, 2)])
def test_encoding_matches_explicit_generators(params):
    n, k, k1, phi = params
    code = PumCode(F8, n, k, k1, phi)
    G0, G1 = explicit_generators(F8, code.g, n, k, k1, phi)
    assert code.G0 == G0 and code.G1 == G1
    rng = np.random.default_rng(sum(params))
    info = [F8.random_vector(rng, k) for _ in range(4)]
    cs = pum_encode(code, info)
    assert len(cs) == 5
    assert cs == reference_encode(F8, G0, G1, info)
    assert code.c0.code.is_codeword(cs[0])
    assert all(code.sigma.code.is_codeword(c) for c in cs[1:-1])
    assert code.unencode_tail(cs[-1]) == list(info[-1][:k1])


def test_encoder_is_linear_and_zero_maps_to_zero():
    code = PumCode(F8, 8, 4, 2)
    rng = np.random.default_rng(1)
    a = [F8.random_vector(rng, 4) for _ in range(3)]
    b = [F8.random_vector(rng, 4) for _ in range(3)]
    ab = [F8.vadd(x, y) for x, y in zip(a, b)]
    assert code.encode(ab) == [F8.vadd(x, y) for x, y in zip(code.encode(a), code.encode(b))]
    assert code.encode([[0] * 4] * 3) == [[0] * 8] * 4
    with pytest.raises(ValueError):
        code.encode([[1, 2, 3]])


def test_single_block_sequence():
    code = PumCode(F8, 8, 4, 2)
    G0, G1 = explicit_generators(F8, code.g, 8, 4, 2, 0)
    u = [3, 5, 7, 9]
    c = code.encode([u])
    assert c[0] == F8.vec_mat(u, G0) and c[1] == F8.vec_mat(u, G1)


@pytest.mark.parametrize("params", [(8, 4, 2, 0), (8, 4, 4, 0), (8, 4, 3, 2), (6, 4, 2, 1), (8, 3, 3, 2)])
def test_reconstruct_info_roundtrip(params):
    code = PumCode(F8, *params)
    rng = np.random.default_rng(7)
    N, w = 5, code.ell + 1
    for _ in range(20):
        info = [F8.random_vector(rng, code.k) for _ in range(N)]
        cs = code.encode(info)
        for i in range(N):
            window = {j: cs[j] for j in range(i, min(i + w, N + 1))}
            got, states = code.reconstruct_info(window, N)
            assert got[i] == list(info[i])
            if i > 0:
                assert states[i - 1] == list(info[i - 1][:code.k1])


def test_first_block_unencodes_directly():
    code = PumCode(F8, 8, 4, 2)
    u = [1, 2, 3, 4]
    assert code.c0.code.unencode(code.encode([u, [0] * 4])[0]) == u


def test_three_block_window_recovers_middle_block():
    # k1 = 3, phi = 2 so ell = 2: u^(1) needs c^(0), c^(1), c^(2)
    code = PumCode(F8, 8, 4, 3, 2)
    rng = np.random.default_rng(3)
    info = [F8.random_vector(rng, 4) for _ in range(4)]
    cs = code.encode(info)
    got, _ = code.reconstruct_info({0: cs[0], 1: cs[1], 2: cs[2]}, 4)
    assert got[1] == list(info[1])
    partial, _ = code.reconstruct_info({1: cs[1]}, 4)
    assert 1 not in partial


def test_reconstruct_rejects_non_codeword():
    code = PumCode(F8, 8, 4, 2)
    cs = code.encode([[1, 2, 3, 4], [5, 6, 7, 8]])
    bad = list(cs[1])
    bad[0] ^= 1
    with pytest.raises(ValueError):
        code.reconstruct_info({1: bad}, 2)


def test_zero_code_block_between_nonzero_info_blocks():
    code = PumCode(F8, 8, 4, 3, 2)
    # uhat = (u0 | u1 + s0, u2 + s1 | u3 | s2) vanishes for these blocks
    a, b = 7, 11
    info = [[a, b, 0, 0], [0, a, b, 0], [5, 0, 0, 1]]
    cs = code.encode(info)
    assert any(cs[0]) and not any(cs[1]) and any(cs[2])


def random_locators(F, rng, n):
    while True:
        g = F.random_vector(rng, n)
        if rank_weight(F, g) == n:
            return g


def test_minimality():
    rng = np.random.default_rng(11)
    for params in [(8, 4, 2, 0), (8, 4, 4, 0), (8, 4, 3, 2), (6, 4, 2, 1), (8, 3, 3, 2)]:
        g = random_locators(F8, rng, params[0])
        assert PumCode(F8, *params, g=g).is_minimal_basic()
    code = PumCode(F8, 8, 4, 2)
    G1 = [list(r) for r in code.G1]
    G1[1] = list(G1[0])
    assert not minimal_basic(F8, code.G0, G1)
