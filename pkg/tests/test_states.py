import dataclasses
import math

import numpy as np
import pytest

import entloc as el
from entloc.errors import InvalidArgumentError
from entloc.oracle import oracle_pt_log_negativity, oracle_symplectic_spectrum


def test_thermal_cm_vacuum():
    assert np.array_equal(el.thermal_cm([1.0]).matrix, np.eye(2))


def test_thermal_cm_layout():
    cm = el.thermal_cm([2.0, 3.0])
    assert np.array_equal(cm.matrix, np.diag([2.0, 2.0, 3.0, 3.0]))


def test_thermal_cm_purity():
    assert el.purity(el.thermal_cm([2.5])) == pytest.approx(1.0 / 2.5)


def test_thermal_cm_rejects_sub_vacuum():
    with pytest.raises(InvalidArgumentError):
        el.thermal_cm([0.9])


def test_two_mode_squeezed_zero_is_vacuum():
    assert np.array_equal(el.two_mode_squeezed(0.0).matrix, np.eye(4))


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0])
def test_two_mode_squeezed_is_pure(r):
    assert el.purity(el.two_mode_squeezed(r)) == pytest.approx(1.0, abs=1e-10)


def test_two_mode_squeezed_pt_eigenvalue():
    # brute-force PT spectrum of the r=1 state has smallest value e^{-2}
    cm = el.two_mode_squeezed(1.0)
    pt = el.partial_transpose(cm, el.ModeBipartition((0,), (1,)))
    smallest = el.symplectic_eigenvalues(pt).min
    assert smallest == pytest.approx(0.13533528323661269, abs=1e-12)


def test_two_mode_squeezed_rejects_negative():
    with pytest.raises(InvalidArgumentError):
        el.two_mode_squeezed(-0.1)


def test_fully_symmetric_thermal_limit():
    cm = el.fully_symmetric_cm(el.FullySymmetricSpec(3, 1.7))
    assert np.array_equal(cm.matrix, np.diag([1.7] * 6))


def test_fully_symmetric_permutation_invariance():
    spec = el.FullySymmetricSpec(4, 1.5, 0.3, -0.2)
    matrix = el.fully_symmetric_cm(spec).matrix
    for i in range(4):
        for j in range(4):
            perm = list(range(4))
            perm[i], perm[j] = perm[j], perm[i]
            idx = np.array([[2 * k, 2 * k + 1] for k in perm]).ravel()
            assert np.array_equal(matrix[np.ix_(idx, idx)], matrix)


def test_fully_symmetric_spectrum_closed_form():
    # (n=3, b=1.5, z1=0.4, z2=-0.3): {sqrt(2.07), sqrt(1.98) x2}
    spec = el.FullySymmetricSpec(3, 1.5, 0.4, -0.3)
    values = oracle_symplectic_spectrum(el.fully_symmetric_cm(spec))
    assert values == pytest.approx(
        [1.4387494569938159, 1.4071247279470289, 1.4071247279470289], abs=1e-12
    )


def test_fully_symmetric_rejects_unphysical():
    with pytest.raises(InvalidArgumentError) as excinfo:
        el.FullySymmetricSpec(3, 1.0, 0.9, 0.9)
    assert excinfo.value.offending_value is not None


def test_fs_params_round_trip():
    # build a state, measure the invariants on a two-mode reduction, map back
    spec = el.FullySymmetricSpec(5, 1.6, -0.2, 0.35)  # z2 >= z1 branch
    cm = el.fully_symmetric_cm(spec)
    pair = el.partial_trace(cm, [0, 1])
    mu_beta = 1.0 / spec.b
    mu_beta2 = el.purity(pair)
    delta2 = el.delta_invariant(pair)
    b, z1, z2 = el.fs_params_from_invariants(mu_beta, mu_beta2, delta2)
    assert (b, z1, z2) == pytest.approx((spec.b, spec.z1, spec.z2), abs=1e-8)


def test_fs_params_pure_uncorrelated_limit():
    assert el.fs_params_from_invariants(1.0, 1.0, 2.0) == pytest.approx((1.0, 0.0, 0.0), abs=1e-8)


def test_fs_params_physical_forward_evaluation():
    # delta2 inside the physical window for these purities
    b, z1, z2 = el.fs_params_from_invariants(0.8, 0.72, 2.85)
    spec = el.FullySymmetricSpec(2, b, z1, z2)
    assert el.is_bona_fide(el.fully_symmetric_cm(spec))


def test_fs_params_rejects_inconsistent():
    with pytest.raises(InvalidArgumentError):
        el.fs_params_from_invariants(0.9, 0.9, 0.1)


def test_ghz_vacuum_limit():
    spec = el.ghz_type_spec(6, 1.0)
    assert spec.z1 == pytest.approx(0.0, abs=1e-15)
    assert spec.z2 == pytest.approx(0.0, abs=1e-15)
    assert np.allclose(el.ghz_type_pure(6, 1.0).matrix, np.eye(12))


def test_ghz_m4_frozen_covariances():
    spec = el.ghz_type_spec(4, 1.5)
    assert spec.z1 == pytest.approx(0.980506146704084, abs=1e-12)
    assert spec.z2 == pytest.approx(-0.424950591148529, abs=1e-12)


def test_ghz_purity():
    assert el.purity(el.ghz_type_pure(4, 1.5)) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("modes", [2, 3, 7, 12, 21, 40])
@pytest.mark.parametrize("b", [1.2, 2.0, 5.0])
def test_ghz_all_eigenvalues_one(modes, b):
    spectrum = el.symplectic_eigenvalues(el.ghz_type_pure(modes, b))
    assert np.max(np.abs(spectrum.values - 1.0)) <= 1e-8


def test_ghz_two_modes_is_entangled_pure_symmetric():
    cm = el.ghz_type_pure(2, 1.8)
    report = el.log_negativity(cm, el.ModeBipartition((0,), (1,)))
    assert report.log_negativity > 0.0
    assert el.purity(cm) == pytest.approx(1.0, abs=1e-10)
    # identical to the two-mode squeezed vacuum at cosh(2r) = b
    r = 0.5 * math.acosh(1.8)
    assert np.allclose(cm.matrix, el.two_mode_squeezed(r).matrix, atol=1e-12)


def test_ghz_rejects_bad_args():
    with pytest.raises(InvalidArgumentError):
        el.ghz_type_spec(1, 1.5)
    with pytest.raises(InvalidArgumentError):
        el.ghz_type_spec(4, 0.99)


def test_bisymmetric_uncorrelated_is_block_diagonal():
    spec = el.BisymmetricSpec(2, 3, 1.4, 0.1, -0.1, 1.6, 0.2, -0.15, 0.0, 0.0)
    cm = el.bisymmetric_cm(spec)
    top = el.fully_symmetric_cm(el.FullySymmetricSpec(2, 1.4, 0.1, -0.1))
    bottom = el.fully_symmetric_cm(el.FullySymmetricSpec(3, 1.6, 0.2, -0.15))
    assert np.array_equal(cm.matrix[:4, :4], top.matrix)
    assert np.array_equal(cm.matrix[4:, 4:], bottom.matrix)
    assert np.all(cm.matrix[:4, 4:] == 0.0)


def test_bisymmetric_from_fully_symmetric_split():
    # a fully symmetric state is bisymmetric under every bipartition
    spec = el.ghz_type_spec(6, 1.3)
    bspec = el.BisymmetricSpec(
        2, 4, spec.b, spec.z1, spec.z2, spec.b, spec.z1, spec.z2, spec.z1, spec.z2
    )
    assert np.array_equal(el.bisymmetric_cm(bspec).matrix, el.fully_symmetric_cm(spec).matrix)


def test_bisymmetric_recovers_fully_symmetric_on_equal_blocks():
    spec = el.FullySymmetricSpec(3, 1.5, 0.25, -0.2)
    bspec = el.BisymmetricSpec(
        3, 3, spec.b, spec.z1, spec.z2, spec.b, spec.z1, spec.z2, spec.z1, spec.z2
    )
    full = el.fully_symmetric_cm(el.FullySymmetricSpec(6, spec.b, spec.z1, spec.z2))
    assert np.array_equal(el.bisymmetric_cm(bspec).matrix, full.matrix)


def test_bisymmetric_degenerate_spectrum_multiplicities():
    spec = el.BisymmetricSpec(3, 4, 1.5, 0.2, -0.1, 1.7, 0.25, -0.12, 0.3, -0.25)
    clusters = el.symplectic_eigenvalues(el.bisymmetric_cm(spec)).clustered()
    multiplicities = sorted(m for _, m in clusters)
    nu_a = el.FullySymmetricSpec(3, 1.5, 0.2, -0.1).nu_minus()
    nu_b = el.FullySymmetricSpec(4, 1.7, 0.25, -0.12).nu_minus()
    by_value = {round(v, 6): m for v, m in clusters}
    assert by_value.get(round(nu_a, 6), 0) >= 2
    assert by_value.get(round(nu_b, 6), 0) >= 3
    assert sum(m for _, m in clusters) == 7
    assert multiplicities[-1] >= 3


def test_bisymmetric_rejects_unphysical_with_eigenvalue():
    with pytest.raises(InvalidArgumentError) as excinfo:
        el.BisymmetricSpec(2, 2, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.9, -0.9)
    assert excinfo.value.offending_value is not None
    assert excinfo.value.offending_value < 1.0


def test_bisymmetric_single_mode_blocks():
    spec = el.BisymmetricSpec(1, 1, 1.5, 0.0, 0.0, 1.5, 0.0, 0.0, 0.5, -0.5)
    assert el.bisymmetric_cm(spec).modes == 2


def test_traced_ghz_stays_physical_and_mixed():
    parent = el.ghz_type_spec(10, 1.5)
    traced = dataclasses.replace(parent, modes=6)
    cm = el.fully_symmetric_cm(traced)
    assert el.is_bona_fide(cm)
    assert el.purity(cm) < 1.0
    # entanglement survives tracing
    part = el.ModeBipartition(tuple(range(3)), tuple(range(3, 6)))
    assert oracle_pt_log_negativity(cm, part) > 0.0
