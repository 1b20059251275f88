"""Partial-transpose spectra, witnesses, realignment, and the Bloch test."""

import numpy as np
import pytest

from scstates import (
    SizeGuardError,
    bloch_decomposition,
    build_witness,
    check_corollary2,
    ghz,
    is_fully_separable,
    new_sc_state,
    pt_spectrum,
    pure_to_mixed,
    random_sc_state,
    realignment_norm,
    witness_expectation,
)
from scstates.oracle import dense_from_sc, hermitian_eigen, partial_transpose
from scstates.verify import random_product_mixture

THREE_QUBIT_MIXED = [[2 / 3, 1 / 3], [1 / 3, 1 / 3]]


def test_pt_spectrum_fields():
    st = new_sc_state(3, 2, THREE_QUBIT_MIXED)
    pt = pt_spectrum(st)
    assert np.allclose(np.sort(pt.diagonal), [1 / 3, 2 / 3])
    assert np.allclose(pt.pair_magnitudes, [1 / 3])
    assert pt.zero_multiplicity == 8 - 4
    assert pt.total_size == 8
    vals = pt.eigenvalues()
    assert np.allclose(vals, np.sort([2 / 3, 1 / 3, 1 / 3, -1 / 3, 0, 0, 0, 0]))
    assert pt.min_eigenvalue() == pytest.approx(-1 / 3)


def test_pt_spectrum_ghz22():
    pt = pt_spectrum(pure_to_mixed(ghz(2, 2)))
    assert pt.zero_multiplicity == 0
    assert np.allclose(pt.eigenvalues(), [-0.5, 0.5, 0.5, 0.5])


def test_pt_spectrum_refuses_huge_materialization():
    st = pure_to_mixed(ghz(40, 2))  # 2^40 eigenvalues, fields stay cheap
    pt = pt_spectrum(st)
    assert pt.zero_multiplicity == 2**40 - 4
    with pytest.raises(ValueError):
        pt.eigenvalues()


def test_pt_spectrum_subset_independent():
    rng = np.random.default_rng(100)
    st = random_sc_state(3, 2, rng)
    rho = dense_from_sc(st)
    expected = pt_spectrum(st).eigenvalues()
    for subset in ([1], [2], [3], [1, 2], [1, 3], [2, 3]):
        vals, _ = hermitian_eigen(partial_transpose(rho, subset, [2, 2, 2]))
        assert np.abs(vals - expected).max() <= 1e-9


def test_is_fully_separable():
    assert is_fully_separable(new_sc_state(2, 3, np.diag([0.2, 0.3, 0.5])))
    assert not is_fully_separable(new_sc_state(3, 2, THREE_QUBIT_MIXED))
    # tolerance knob
    a = np.diag([0.5, 0.5]).astype(complex)
    a[0, 1] = a[1, 0] = 1e-6
    st = new_sc_state(2, 2, a)
    assert not is_fully_separable(st)
    assert is_fully_separable(st, tol=1e-5)


def test_witness_ghz22_dense_form():
    st = pure_to_mixed(ghz(2, 2))
    w = build_witness(st)
    assert w.source_pairs == ((0, 1),)
    dense = w.to_dense()
    expected = np.zeros((4, 4), dtype=complex)
    expected[1, 1] = expected[2, 2] = 0.5
    expected[0, 3] = expected[3, 0] = -0.5
    assert np.abs(dense - expected).max() <= 1e-15
    assert witness_expectation(w, st) == pytest.approx(-0.5, abs=1e-12)


def test_witness_three_qubit_flat_indices():
    st = new_sc_state(3, 2, THREE_QUBIT_MIXED)
    w = build_witness(st)
    positions = sorted((r, c) for r, c, _ in w.terms)
    assert positions == [(0, 7), (3, 3), (4, 4), (7, 0)]
    assert witness_expectation(w, st) == pytest.approx(-1 / 3, abs=1e-12)


def test_witness_terms_hermitian_closed():
    rng = np.random.default_rng(101)
    st = random_sc_state(2, 4, rng)
    w = build_witness(st)
    terms = {(r, c): v for r, c, v in w.terms}
    for (r, c), v in terms.items():
        assert terms[(c, r)] == pytest.approx(np.conj(v))
    dense = w.to_dense()
    assert np.abs(dense - dense.conj().T).max() <= 1e-15


def test_witness_expectation_routes_agree():
    rng = np.random.default_rng(102)
    for _ in range(10):
        st = random_sc_state(3, 3, rng)
        w = build_witness(st)
        target = -sum(abs(st.a[m, n]) for m in range(3) for n in range(m + 1, 3))
        assert witness_expectation(w, st) == pytest.approx(target, abs=1e-12)
        dense_val = np.trace(w.to_dense() @ dense_from_sc(st)).real
        assert dense_val == pytest.approx(target, abs=1e-12)


def test_witness_nonnegative_on_separable_samples():
    rng = np.random.default_rng(103)
    st = random_sc_state(3, 2, rng)
    w = build_witness(st)
    for _ in range(200):
        weights, vectors = random_product_mixture(3, 2, rng)
        total = 0.0 + 0.0j
        for r, c, v in w.terms:
            entry = sum(
                wt * vec[c] * np.conj(vec[r]) for wt, vec in zip(weights, vectors)
            )
            total += v * entry
        assert total.real >= -1e-9


def test_witness_empty_for_separable_source():
    st = new_sc_state(2, 2, np.diag([0.4, 0.6]))
    w = build_witness(st)
    assert w.terms == ()
    assert witness_expectation(w, st) == 0.0


def test_witness_dimension_mismatch():
    w = build_witness(pure_to_mixed(ghz(2, 2)))
    with pytest.raises(ValueError):
        witness_expectation(w, pure_to_mixed(ghz(3, 2)))
    with pytest.raises(ValueError):
        witness_expectation(w, np.eye(8) / 8)


def test_realignment_norm_values():
    assert realignment_norm(new_sc_state(3, 2, THREE_QUBIT_MIXED)) == pytest.approx(
        5 / 3, abs=1e-12
    )
    assert realignment_norm(new_sc_state(2, 3, np.eye(3) / 3)) == pytest.approx(1.0)
    for n in (2, 3, 4):
        g = pure_to_mixed(ghz(2, n))
        assert realignment_norm(g) == pytest.approx(n, abs=1e-12)
    rng = np.random.default_rng(104)
    for _ in range(20):
        st = random_sc_state(2, 3, rng)
        assert 1.0 - 1e-12 <= realignment_norm(st) <= 3.0 + 1e-12


def test_bloch_split_validation():
    st = pure_to_mixed(ghz(3, 2))
    for bad in (0, 3, -1):
        with pytest.raises(ValueError):
            bloch_decomposition(st, bad)
    with pytest.raises(SizeGuardError):
        bloch_decomposition(pure_to_mixed(ghz(13, 2)), 1)


def test_bloch_shapes_and_reality():
    st = random_sc_state(3, 2, 105)
    b = bloch_decomposition(st, 1)
    assert b.split == 1
    assert b.r.shape == (3,)
    assert b.s.shape == (15,)
    assert b.t.shape == (3, 15)
    assert b.dim_first == 2 and b.dim_rest == 4
    assert b.r.dtype == float and b.t.dtype == float


def test_bloch_structural_zero_blocks():
    rng = np.random.default_rng(106)
    for split in (1, 2):
        st = random_sc_state(4, 2, rng)
        b = bloch_decomposition(st, split)
        m = 2**split
        r_dim = 2 ** (4 - split)
        assert np.abs(b.r[m - 1 :]).max() <= 1e-12
        assert np.abs(b.s[r_dim - 1 :]).max() <= 1e-12
        assert np.abs(b.t[: m - 1, r_dim - 1 :]).max() <= 1e-12
        assert np.abs(b.t[m - 1 :, : r_dim - 1]).max() <= 1e-12


def test_corollary2_matches_off_diagonal_test():
    rng = np.random.default_rng(107)
    for _ in range(10):
        st = random_sc_state(3, 2, rng)
        b = bloch_decomposition(st, 1)
        assert check_corollary2(b) == is_fully_separable(st)
    diag = new_sc_state(3, 3, np.diag([0.1, 0.2, 0.7]))
    for split in (1, 2):
        assert check_corollary2(bloch_decomposition(diag, split))


def test_bloch_reconstructs_density_matrix():
    from scstates.oracle import su_generators

    rng = np.random.default_rng(108)
    for parties, dim, split in ((2, 2, 1), (3, 2, 1), (3, 2, 2), (2, 3, 1)):
        st = random_sc_state(parties, dim, rng)
        b = bloch_decomposition(st, split)
        m, r_dim = b.dim_first, b.dim_rest
        gm = su_generators(m)
        gr = su_generators(r_dim)
        rec = np.einsum("ac,bd->abcd", np.eye(m, dtype=complex), np.eye(r_dim))
        rec += np.einsum("i,iac,bd->abcd", b.r, gm, np.eye(r_dim))
        rec += np.einsum("j,ac,jbd->abcd", b.s, np.eye(m), gr)
        rec += np.einsum("ij,iac,jbd->abcd", b.t, gm, gr)
        rec = rec.reshape(m * r_dim, m * r_dim) / (m * r_dim)
        assert np.abs(rec - dense_from_sc(st)).max() <= 1e-12


def test_corollary2_tolerance_knob():
    a = np.diag([0.5, 0.5]).astype(complex)
    a[0, 1] = a[1, 0] = 1e-6
    st = new_sc_state(2, 2, a)
    b = bloch_decomposition(st, 1)
    assert not check_corollary2(b)
    assert check_corollary2(b, tol=1e-3)
