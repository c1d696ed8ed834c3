import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vilwav.mask import MaskTable, mask_from_tree
from vilwav.refinable import all_shifts, gram_matrix, inner_product
from vilwav.tree import RootedTree, enumerate_trees
from vilwav.wavelet import (
    assemble_refinement_sum,
    beta_residual,
    beta_shifted,
    build_system,
    psi_freq,
    psi_time,
    shifted_mask_checks,
    solve_beta,
    solve_beta_dense,
    verify_wavelet_system,
)

OMEGA3 = np.exp(2j * np.pi / 3)


def tree_and_phases(p):
    trees = st.sampled_from(list(enumerate_trees(p)))
    return trees.flatmap(
        lambda t: st.lists(
            st.floats(0.0, 1.0, exclude_max=True), min_size=p - 1, max_size=p - 1
        ).map(lambda turns: (t, dict(zip(t.edges(), turns))))
    )


def test_star_beta():
    for p in (2, 3, 5, 7):
        beta = solve_beta(mask_from_tree(RootedTree.validate([0] * p, p)))
        expected = np.zeros(p * p, dtype=complex)
        expected[:p] = 1.0  # the a_-2 = 0 block
        assert np.abs(beta - expected).max() < 1e-14


def test_chain_beta_closed_form():
    beta = solve_beta(mask_from_tree(RootedTree.validate([0, 0, 1], 3)))
    for j in range(9):
        a_m1, a_m2 = j % 3, j // 3
        expected = (1 + OMEGA3**a_m2 + OMEGA3 ** (2 * a_m2 + a_m1)) / 3
        assert beta[j] == pytest.approx(expected, abs=1e-14)
    assert beta[0] == pytest.approx(1.0)
    assert beta[3] == 0.0
    assert beta[1] == pytest.approx((2 + OMEGA3) / 3)


@given(st.sampled_from([2, 3, 5]).flatmap(tree_and_phases))
def test_solve_beta_matches_dense_solve(tp):
    tree, phases = tp
    mask = mask_from_tree(tree, phases)
    assert np.abs(solve_beta(mask) - solve_beta_dense(mask)).max() < 1e-12


@given(st.sampled_from([2, 3, 5]).flatmap(tree_and_phases))
def test_beta_residual_and_energy(tp):
    tree, phases = tp
    mask = mask_from_tree(tree, phases)
    beta = solve_beta(mask)
    assert beta_residual(mask, beta) < 1e-12
    assert (np.abs(beta) ** 2).sum() == pytest.approx(tree.p, abs=1e-12)


def test_beta_shifted_star():
    beta = solve_beta(mask_from_tree(RootedTree.validate([0, 0, 0], 3)))
    b1 = beta_shifted(beta, 1, 3)
    expected = np.zeros(9, dtype=complex)
    expected[:3] = [1.0, OMEGA3, OMEGA3**2]
    assert np.abs(b1 - expected).max() < 1e-14


def test_beta_shifted_fixes_zero_residue():
    beta = solve_beta(mask_from_tree(RootedTree.validate([0, 0, 1], 3)))
    for l in (1, 2):
        bl = beta_shifted(beta, l, 3)
        assert np.array_equal(bl[::3], beta[::3])  # a_-1 = 0 entries unchanged
        assert (np.abs(bl) ** 2).sum() == pytest.approx((np.abs(beta) ** 2).sum())


def test_beta_shifted_range():
    beta = np.ones(9, dtype=complex)
    with pytest.raises(ValueError, match="out of range"):
        beta_shifted(beta, 0, 3)
    with pytest.raises(ValueError, match="out of range"):
        beta_shifted(beta, 3, 3)


def test_refinement_identity_chain(chain3):
    from vilwav.refinable import embed

    refined = assemble_refinement_sum(chain3.phi, chain3.beta)
    assert np.abs(refined.values - embed(chain3.phi, -1, chain3.M + 1)).max() < 1e-13


def test_corrupted_beta_breaks_refinement(chain3):
    from vilwav.refinable import embed

    bad = chain3.beta.copy()
    nz = int(np.flatnonzero(np.abs(bad) > 0.1)[1])
    bad[nz] = 0.0
    refined = assemble_refinement_sum(chain3.phi, bad)
    dev = np.abs(refined.values - embed(chain3.phi, -1, chain3.M + 1)).max()
    assert dev >= 1.0 / chain3.p


def test_star_psi_is_character_bump():
    system = build_system(RootedTree.validate([0, 0, 0], 3))
    psi1 = system.psi[0]
    assert psi1.support_level == -1 and psi1.resolution_level == 1
    # on G_0 (digit a_-1 = 0): omega^{a_0}; zero elsewhere
    from vilwav.group import unit_roots

    for a0 in range(3):
        for am1 in range(3):
            expected = unit_roots(3)[a0] if am1 == 0 else 0.0
            assert abs(psi1.values[am1 + 3 * a0] - expected) < 1e-14


def test_psi_norm_and_orthogonality_to_phi(chain3):
    for psi in chain3.psi:
        assert psi.norm2() == pytest.approx(1.0, abs=1e-12)
        assert abs(inner_product(psi, chain3.phi)) < 1e-13


def test_two_route_psi_star_and_chain(star3, chain3):
    for system in (star3, chain3):
        for l in range(1, system.p):
            freq = psi_freq(system.phi_hat, system.mask, l)
            time = system.psi[l - 1]
            assert freq.support_level == time.support_level
            assert freq.resolution_level == time.resolution_level
            assert np.abs(freq.values - time.values).max() < 1e-13


def test_psi_freq_support_disjoint_from_phi_hat(chain3):
    from vilwav.wavelet import psi_hat

    phi_support = np.flatnonzero(np.abs(chain3.phi_hat.values) > 1e-12)
    for l in range(1, 3):
        spec = psi_hat(chain3.phi_hat, chain3.mask, l)
        # the shifted mask vanishes on the refinable support, so the two
        # spectra occupy disjoint cosets of the common window
        assert np.abs(spec.values[phi_support]).max() < 1e-13


def test_psi_hat_l0_reproduces_phi_hat(chain3):
    from vilwav.wavelet import psi_hat

    spec = psi_hat(chain3.phi_hat, chain3.mask, 0)
    width = 3**(chain3.M + 1)
    # refinement in frequency: entries above the old band must vanish
    assert np.abs(spec.values[width:].reshape(-1, width)).max() == pytest.approx(0.0, abs=1e-13)
    from vilwav.refinable import inverse_transform

    phi_again = inverse_transform(spec)
    from vilwav.refinable import embed

    assert np.abs(phi_again.values - embed(chain3.phi, -1, chain3.M + 1)).max() < 1e-13


def test_shifted_mask_structure(chain3):
    assert shifted_mask_checks(chain3.mask) == 0.0


def test_wavelet_gram_is_identity(chain3):
    shifts = all_shifts(3, 2)
    for l in range(2):
        gram = gram_matrix(chain3.psi[l], chain3.psi[l], shifts)
        assert np.abs(gram - np.eye(9)).max() < 1e-12
    cross = gram_matrix(chain3.psi[0], chain3.psi[1], shifts)
    assert np.abs(cross).max() < 1e-12
    cross_phi = gram_matrix(chain3.phi, chain3.psi[0], shifts)
    assert np.abs(cross_phi).max() < 1e-12


def test_verify_haar_p2_exact():
    system = build_system(RootedTree.validate([0, 0], 2))
    checks = verify_wavelet_system(system)
    assert all(c.passed for c in checks)
    assert max(c.max_deviation for c in checks) == 0.0


def test_verify_chain_full(chain3):
    checks = verify_wavelet_system(chain3)
    names = [c.name for c in checks]
    assert "gram-orthonormal-family" in names and "psi-two-route" in names
    assert all(c.passed for c in checks)


def test_verify_spectral_subset(chain3):
    spectral = verify_wavelet_system(chain3, spectral_only=True)
    assert "gram-orthonormal-family" not in [c.name for c in spectral]
    assert all(c.passed for c in spectral)


def test_verify_catches_corrupted_mask():
    lam = mask_from_tree(RootedTree.validate([0, 0, 1], 3)).lam.copy()
    lam[4] = 1.0  # extra unimodular entry in row i=1
    mask = MaskTable(3, lam)
    from vilwav.mask import check_row_condition

    assert not check_row_condition(mask).ok


@given(st.sampled_from([2, 3]).flatmap(tree_and_phases))
def test_full_verification_random_phases(tp):
    tree, phases = tp
    checks = verify_wavelet_system(build_system(tree, phases))
    assert all(c.passed for c in checks)


def test_psi_defining_sum_matches(chain3):
    for l, bl in enumerate(chain3.beta_l):
        direct = psi_time(chain3.phi, bl)
        assert np.array_equal(direct.values, chain3.psi[l].values)
