import math

import numpy as np
import pytest

from gainwalk import (
    GainGraph,
    HermitianMatrix,
    adjacency_matrix,
    charpoly,
    charpoly_faddeev,
    chebyshev_T,
    chebyshev_T_coefficients,
    chebyshev_U,
    chebyshev_U_coefficients,
    complete_family,
    cycle_charpoly_closed_form,
    cycle_det_laplace,
    cycle_family,
    eigendecompose,
    path_charpoly,
    random_tree,
    tridiag_det_sequence,
    underlying_undirected,
    zero_transfer_certificate,
)
from gainwalk.spectral import Polynomial, _faddeev_leverrier


def _random_cycle(n, seed, potentials=False):
    rng = np.random.default_rng(seed)
    phases = rng.uniform(0, 2 * math.pi, n)
    pots = tuple(rng.uniform(-1, 1, n)) if potentials else None
    return GainGraph(n, tuple((j, (j + 1) % n, float(phases[j])) for j in range(n)), pots)


class TestPolynomial:
    def test_trims_trailing_zeros(self):
        p = Polynomial((1, 2, 0, 0))
        assert p.coefficients == (1, 2)
        assert p.degree == 1
        assert Polynomial((0, 0)).coefficients == (0,)

    def test_evaluation_and_arithmetic(self):
        p = Polynomial((1, 0, 1))  # 1 + x^2
        assert p(2.0) == 5.0
        assert np.allclose(p(np.array([0.0, 3.0])), [1.0, 10.0])
        q = Polynomial((0, 1))
        assert (p - q).coefficients == (1, -1, 1)
        assert (p + q).coefficients == (1, 1, 1)
        assert p.max_coefficient_gap(q) == 1


class TestCharpoly:
    def test_undirected_square(self):
        # oracle: eigenvalues 2 cos(2 pi j / 4) = {2, 0, 0, -2},
        # expand (x-2) x^2 (x+2) = x^4 - 4 x^2
        p = charpoly(adjacency_matrix(cycle_family(4, 4, 0.0)))
        assert p.max_coefficient_gap(Polynomial((0, 0, -4, 0, 1))) <= 1e-12

    def test_signed_square(self):
        p = charpoly(adjacency_matrix(cycle_family(4, 1, math.pi)))
        assert p.max_coefficient_gap(Polynomial((4, 0, -4, 0, 1))) <= 1e-12

    def test_zero_matrix(self):
        p = charpoly(HermitianMatrix(np.zeros((3, 3))))
        assert p.coefficients == (0.0, 0.0, 0.0, 1.0)

    def test_monic(self):
        p = charpoly(adjacency_matrix(random_tree(9, 4, "uniform")))
        assert p.degree == 9
        assert p.coefficients[-1] == pytest.approx(1.0, abs=1e-12)

    def test_dimension_cap(self):
        with pytest.raises(ValueError, match="capped"):
            charpoly(HermitianMatrix(np.zeros((65, 65))))

    @pytest.mark.parametrize("seed", range(6))
    def test_both_paths_agree(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 17))
        m = rng.uniform(-1, 1, (n, n)) + 1j * rng.uniform(-1, 1, (n, n))
        h = HermitianMatrix((m + m.conj().T) / 2)
        p = charpoly(h)
        q = charpoly_faddeev(h)
        scale = max(abs(c) for c in p.coefficients)
        assert p.max_coefficient_gap(q) <= 1e-7 * scale

    def test_faddeev_rejects_non_hermitian_input(self):
        # imaginary eigenvalue => imaginary coefficient residue
        with pytest.raises(ValueError, match="residue"):
            _faddeev_leverrier(np.array([[1j, 0.0], [0.0, 0.0]]), 1e-8)


class TestTridiagDetSequence:
    def test_zero_diagonal_pattern(self):
        seq = tridiag_det_sequence([0] * 5, [1] * 4, [1] * 4)
        assert seq == [1, 0, -1, 0, 1, 0]
        assert seq[4] == 1  # f_4 = (-1)^2
        assert seq[5] == 0  # f_5 = 0

    def test_two_by_two(self):
        assert tridiag_det_sequence([2, 2], [1], [1])[-1] == 3

    def test_exact_integers_up_to_64(self):
        seq = tridiag_det_sequence([0] * 65, [1] * 64, [1] * 64)
        for k in range(33):
            assert seq[2 * k] == (-1) ** k
            assert isinstance(seq[2 * k], int)
            if 2 * k + 1 <= 65:
                assert seq[2 * k + 1] == 0

    def test_matches_brute_force_determinants(self):
        rng = np.random.default_rng(7)
        a = rng.integers(-3, 4, 6).tolist()
        b = rng.integers(-3, 4, 5).tolist()
        c = rng.integers(-3, 4, 5).tolist()
        seq = tridiag_det_sequence(a, b, c)
        for k in range(1, 7):
            m = np.zeros((k, k))
            for i in range(k):
                m[i, i] = a[i]
                if i + 1 < k:
                    m[i, i + 1] = b[i]
                    m[i + 1, i] = c[i]
            assert seq[k] == pytest.approx(np.linalg.det(m), abs=1e-9)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError, match="length"):
            tridiag_det_sequence([1, 2, 3], [1], [1, 1])


class TestChebyshev:
    def test_point_values(self):
        assert chebyshev_T(3, 0.5) == pytest.approx(-1.0, abs=1e-15)
        assert chebyshev_U(2, 1.0) == pytest.approx(3.0, abs=1e-15)
        assert chebyshev_T(0, 0.3) == 1.0

    def test_coefficient_vectors(self):
        assert chebyshev_T_coefficients(2).coefficients == (-1, 0, 2)
        assert chebyshev_T_coefficients(3).coefficients == (0, -3, 0, 4)
        assert chebyshev_U_coefficients(2).coefficients == (-1, 0, 4)
        assert chebyshev_U_coefficients(0).coefficients == (1,)

    def test_rejects_negative_degree(self):
        with pytest.raises(ValueError):
            chebyshev_T(-1, 0.0)
        with pytest.raises(ValueError):
            chebyshev_U_coefficients(-2)

    @pytest.mark.parametrize("n", [2, 5, 11, 20, 32])
    def test_kind_relation_on_grid(self, n):
        x = np.linspace(-1.0, 1.0, 101)
        lhs = chebyshev_T(n, x)
        rhs = (chebyshev_U(n, x) - chebyshev_U(n - 2, x)) / 2
        assert np.max(np.abs(lhs - rhs)) <= 1e-10

    @pytest.mark.parametrize("n", [1, 3, 8, 16, 32])
    def test_doubling_identity_on_grid(self, n):
        x = np.linspace(-1.0, 1.0, 101)
        lhs = chebyshev_T(2 * n, x)
        rhs = 2 * chebyshev_T(n, x) ** 2 - 1
        assert np.max(np.abs(lhs - rhs)) <= 1e-10

    def test_coefficients_match_point_evaluation(self):
        x = np.linspace(-1, 1, 11)
        for n in range(8):
            assert np.allclose(chebyshev_T_coefficients(n)(x), chebyshev_T(n, x), atol=1e-12)
            assert np.allclose(chebyshev_U_coefficients(n)(x), chebyshev_U(n, x), atol=1e-12)


class TestCycleCharpolyClosedForm:
    def test_small_cases(self):
        assert cycle_charpoly_closed_form(2).coefficients == (4, 0, -4, 0, 1)
        assert cycle_charpoly_closed_form(3).coefficients == (0, 0, 9, 0, -6, 0, 1)

    def test_monic_integer_up_to_16(self):
        for m in range(2, 17):
            p = cycle_charpoly_closed_form(m)
            assert p.degree == 2 * m
            assert p.coefficients[-1] == 1
            assert all(isinstance(c, int) for c in p.coefficients)

    def test_rejects_small_m(self):
        with pytest.raises(ValueError):
            cycle_charpoly_closed_form(1)

    @pytest.mark.parametrize("m", range(2, 9))
    def test_index_confirmed_by_brute_force(self, m):
        # brute-force oracle: the numerically computed characteristic
        # polynomial of the signed cycle pins the closed-form index to m
        p = charpoly(adjacency_matrix(cycle_family(2 * m, 1, math.pi)))
        assert p.max_coefficient_gap(cycle_charpoly_closed_form(m)) <= 1e-8


class TestCycleDetLaplace:
    def test_paper_det_table_values(self):
        assert cycle_det_laplace(cycle_family(4, 4, 0.0)) == pytest.approx(0.0, abs=1e-12)
        assert cycle_det_laplace(cycle_family(6, 6, 0.0)) == pytest.approx(-4.0, abs=1e-12)

    def test_signed_square(self):
        # oracle: brute-force determinant of the explicit 4x4 matrix
        g = cycle_family(4, 1, math.pi)
        brute = np.linalg.det(adjacency_matrix(g).entries)
        assert brute.real == pytest.approx(4.0, abs=1e-12)
        assert cycle_det_laplace(g) == pytest.approx(4.0, abs=1e-12)

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_lu_determinant(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 14))
        g = _random_cycle(n, seed, potentials=bool(seed % 2))
        lap = cycle_det_laplace(g)
        brute = np.linalg.det(adjacency_matrix(g).entries)
        assert lap == pytest.approx(brute.real, abs=1e-9)

    def test_rejects_non_cycle(self):
        with pytest.raises(ValueError, match="cycle"):
            cycle_det_laplace(random_tree(6, 1))
        with pytest.raises(ValueError, match="cycle"):
            cycle_det_laplace(complete_family(4, 0.0))


class TestPathCharpoly:
    def test_small_paths(self):
        assert path_charpoly(2).coefficients == (-1, 0, 1)
        assert path_charpoly(3).coefficients == (0, -2, 0, 1)
        assert path_charpoly(1).coefficients == (0, 1)

    @pytest.mark.parametrize("n", range(1, 11))
    def test_matches_brute_force(self, n):
        g = GainGraph(n, tuple((j, j + 1, 0.0) for j in range(n - 1))) if n > 1 else GainGraph(1, ())
        p = charpoly(adjacency_matrix(g))
        assert p.max_coefficient_gap(path_charpoly(n)) <= 1e-9

    def test_odd_paths_have_zero_constant_term(self):
        for n in range(1, 17, 2):
            assert path_charpoly(n).coefficients[0] == 0


class TestZeroTransferCertificate:
    def test_certifies_signed_sixteen_cycle(self):
        g = cycle_family(16, 8, math.pi / 8)
        h = adjacency_matrix(g)
        spec = eigendecompose(h)
        cert = zero_transfer_certificate(spec, h, 0, 8)
        assert cert.verdict == "certified_zero"
        assert cert.certified
        assert cert.max_idempotent_entry <= 1e-10
        assert cert.krylov_max <= 1e-10

    def test_detuned_cycle_is_not_zero(self):
        g = cycle_family(16, 8, math.pi / 16)
        h = adjacency_matrix(g)
        cert = zero_transfer_certificate(eigendecompose(h), h, 0, 8)
        assert cert.verdict == "not_zero"
        assert cert.max_idempotent_entry > 1e-10

    def test_same_vertex_is_never_zero(self):
        g = cycle_family(6, 1, 1.0)
        h = adjacency_matrix(g)
        cert = zero_transfer_certificate(eigendecompose(h), h, 3, 3)
        assert cert.verdict == "not_zero"
        assert cert.krylov_max == pytest.approx(1.0)

    def test_certified_cycles_have_few_eigenvalues(self):
        for m in (2, 4, 7):
            spec = eigendecompose(adjacency_matrix(cycle_family(2 * m, m, math.pi / m)))
            assert len(spec.eigenvalues) <= m

    def test_rejects_dimension_mismatch(self):
        g4, g6 = cycle_family(4, 1, 0.5), cycle_family(6, 1, 0.5)
        spec = eigendecompose(adjacency_matrix(g4))
        with pytest.raises(ValueError, match="dimension"):
            zero_transfer_certificate(spec, adjacency_matrix(g6), 0, 2)
        with pytest.raises(ValueError, match="range"):
            zero_transfer_certificate(spec, adjacency_matrix(g4), 0, 9)


class TestPhaseSumPiIdentities:
    @pytest.mark.parametrize("m", range(2, 9))
    def test_charpoly_shift_for_all_arc_counts(self, m):
        for k in sorted({1, 2, m, 2 * m}):
            g = cycle_family(2 * m, k, math.pi / k)
            p_alpha = charpoly(adjacency_matrix(g))
            p_plain = charpoly(adjacency_matrix(underlying_undirected(g)))
            shift = p_alpha - p_plain
            expected = Polynomial((4,))
            assert shift.max_coefficient_gap(expected) <= 1e-8
            assert p_alpha.max_coefficient_gap(cycle_charpoly_closed_form(m)) <= 1e-8
