"""Concentration of block entanglement onto a single pair of modes.

A two-block (m+n)-mode state whose covariance matrix is invariant under
mode permutations inside each block is equivalent, under symplectic
operations local to the blocks, to one correlated two-mode state plus
m+n-2 uncorrelated single-mode states. This module provides both routes
to that two-mode state:

* the invariant route, which reads the equivalent state off a handful of
  local and global invariants in O(1) per input and is the default for
  parameter sweeps;
* the constructive route (:func:`localize`), which builds the local
  transformation explicitly and returns the transformed matrix, so the
  structure claim itself can be checked numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import (
    EntanglementReport,
    report_from_pt_values,
)
from .errors import (
    InconsistentInvariantsError,
    InvalidArgumentError,
    LocalizationError,
)
from .states import BisymmetricSpec, FullySymmetricSpec
from .symplectic import (
    CovarianceMatrix,
    _minus_plus_pair,
    clipped_sqrt,
    delta_invariant,
    purity,
)


@dataclass(frozen=True)
class BlockSpectrum:
    """Symplectic spectrum of a permutation-invariant block.

    ``nu_minus`` is shared by n-1 normal modes and does not depend on the
    block size; ``nu_plus`` belongs to the single symmetric mode, the one
    that carries all correlations with the rest of the system.
    """

    nu_minus: float
    nu_plus: float
    multiplicity_minus: int


@dataclass(frozen=True)
class EquivalentTwoMode:
    """The two-mode state carrying all cross-block correlations.

    ``cm_eq`` is in standard form: diagonal blocks nu_plus_a * I2 and
    nu_plus_b * I2, cross block diag(c_plus, c_minus) with
    c_plus >= |c_minus| and c_plus >= 0.
    """

    cm_eq: CovarianceMatrix
    mu_eq: float
    delta_eq: float

    def nu_tilde_pair(self) -> tuple[float, float]:
        """PT symplectic eigenvalues from the invariants alone.

        2 nu~^2 = Delta~ -/+ sqrt(Delta~^2 - 4/mu_eq^2), with
        Delta~ = 2 det A + 2 det B - Delta_eq.
        """
        m = self.cm_eq.matrix
        det_a = float(np.linalg.det(m[0:2, 0:2]))
        det_b = float(np.linalg.det(m[2:4, 2:4]))
        delta_tilde = 2.0 * det_a + 2.0 * det_b - self.delta_eq
        return _minus_plus_pair(delta_tilde, 1.0 / self.mu_eq**2)

    def to_json_dict(self) -> dict:
        from .symplectic import cm_to_json_dict

        return {
            "cm_eq": cm_to_json_dict(self.cm_eq),
            "mu_eq": self.mu_eq,
            "delta_eq": self.delta_eq,
        }


@dataclass(frozen=True)
class LocalizationResult:
    """Outcome of the constructive reduction.

    ``local_symplectic`` is block-diagonal over the declared bipartition
    and maps the input by congruence onto ``cm_final``, whose only
    cross-block coupling sits between modes m-1 and m (zero-based);
    ``residual`` is the largest entry outside that target pattern.
    """

    local_symplectic: np.ndarray
    cm_final: CovarianceMatrix
    equivalent: EquivalentTwoMode
    residual: float

    def to_json_dict(self) -> dict:
        from .symplectic import cm_to_json_dict

        return {
            "local_symplectic": {
                "modes": self.local_symplectic.shape[0] // 2,
                "entries": [float(x) for x in self.local_symplectic.ravel()],
            },
            "cm_final": cm_to_json_dict(self.cm_final),
            "equivalent": self.equivalent.to_json_dict(),
            "residual": self.residual,
        }


# ---------------------------------------------------------------------------
# Closed-form block spectra.
# ---------------------------------------------------------------------------


def fs_block_spectrum(spec: FullySymmetricSpec) -> BlockSpectrum:
    """(nu_minus, nu_plus) of a permutation-invariant block in standard form.

    nu_minus = sqrt((b - z1)(b - z2)), with multiplicity n - 1;
    nu_plus  = sqrt((b + (n-1) z1)(b + (n-1) z2)).
    """
    n = spec.modes
    nu_minus = clipped_sqrt((spec.b - spec.z1) * (spec.b - spec.z2), scale=spec.b**2)
    nu_plus = clipped_sqrt(
        (spec.b + (n - 1) * spec.z1) * (spec.b + (n - 1) * spec.z2), scale=(n * spec.b) ** 2
    )
    return BlockSpectrum(nu_minus, nu_plus, n - 1)


def nu_plus_from_two_mode(n: int, mu_beta: float, nu_minus: float, nu_plus_2: float) -> float:
    """Symmetric-mode eigenvalue of an n-mode block from two-mode data.

    nu_plus^2 = -n(n-2)/mu_beta^2 + (n-1)/2 * (n nu_plus_2^2 + (n-2) nu_minus^2)

    where mu_beta is the single-mode purity and (nu_minus, nu_plus_2) the
    spectrum of the two-mode reduction. Collapses to nu_plus_2 at n = 2.
    """
    if n < 2:
        raise InvalidArgumentError(f"block must have at least two modes, got {n}")
    if mu_beta <= 0.0:
        raise InvalidArgumentError(f"single-mode purity must be positive, got {mu_beta}")
    value = -n * (n - 2) / mu_beta**2 + 0.5 * (n - 1) * (
        n * nu_plus_2**2 + (n - 2) * nu_minus**2
    )
    return clipped_sqrt(value, scale=(n / mu_beta) ** 2)


def fs_global_purity(spec: FullySymmetricSpec) -> float:
    """Purity of the full n-mode state: (nu_minus^{n-1} nu_plus)^{-1}."""
    block = fs_block_spectrum(spec)
    return 1.0 / (block.nu_minus ** (spec.modes - 1) * block.nu_plus)


def global_delta_bisym(spec: BisymmetricSpec) -> float:
    """Block-determinant invariant of the assembled two-block state.

    Delta = m det alpha + m(m-1) det eps + n det beta + n(n-1) det zeta
            + 2 m n det gamma, all blocks in standard (diagonal) form.
    """
    m, n = spec.m, spec.n
    return (
        m * spec.a**2
        + m * (m - 1) * spec.e1 * spec.e2
        + n * spec.b**2
        + n * (n - 1) * spec.z1 * spec.z2
        + 2.0 * m * n * spec.g1 * spec.g2
    )


# ---------------------------------------------------------------------------
# Invariant route to the equivalent two-mode state.
# ---------------------------------------------------------------------------


def _block_nu_pair(diag2: np.ndarray, off2: np.ndarray, count: int) -> tuple[float, float]:
    """(nu_minus, nu_plus) of a permutation-invariant block from raw 2x2 blocks.

    Valid in any local basis, not just standard form, because both values
    are determinants of combinations fixed by the pattern.
    """
    scale = float(np.max(np.abs(diag2))) ** 2 * max(1, count) ** 2
    nu_minus = clipped_sqrt(float(np.linalg.det(diag2 - off2)), scale=scale)
    nu_plus = clipped_sqrt(float(np.linalg.det(diag2 + (count - 1) * off2)), scale=scale)
    return nu_minus, nu_plus


def _equivalent_from_blocks(
    m: int,
    n: int,
    alpha: np.ndarray,
    eps: np.ndarray,
    beta: np.ndarray,
    zeta: np.ndarray,
    gamma: np.ndarray,
) -> EquivalentTwoMode:
    """Reconstruct the equivalent two-mode state from pattern blocks.

    Uses only invariants: the block spectra, the global block-determinant
    sum, and the determinant of the still-coupled two-mode core. The cross
    block of the result is fixed by det gamma'' = (Delta_eq - nu_plus_a^2
    - nu_plus_b^2)/2 together with det sigma_eq = 1/mu_eq^2, taking the
    root pair with c_plus >= |c_minus|, c_plus >= 0.
    """
    na_minus, na_plus = _block_nu_pair(alpha, eps, m)
    nb_minus, nb_plus = _block_nu_pair(beta, zeta, n)

    core_a = alpha + (m - 1) * eps
    core_b = beta + (n - 1) * zeta
    cross = math.sqrt(m * n) * gamma
    core = np.block([[core_a, cross], [cross.T, core_b]])
    det_core = float(np.linalg.det(core))
    if det_core <= 0.0:
        raise InconsistentInvariantsError(
            f"coupled two-mode core has non-positive determinant {det_core:.6e}"
        )
    mu_eq = 1.0 / math.sqrt(det_core)

    delta = (
        m * float(np.linalg.det(alpha))
        + m * (m - 1) * float(np.linalg.det(eps))
        + n * float(np.linalg.det(beta))
        + n * (n - 1) * float(np.linalg.det(zeta))
        + 2.0 * m * n * float(np.linalg.det(gamma))
    )
    delta_eq = delta - (m - 1) * na_minus**2 - (n - 1) * nb_minus**2

    det_cross = 0.5 * (delta_eq - na_plus**2 - nb_plus**2)
    k = na_plus * nb_plus
    q = det_core
    scale = max(k * k, q, 1.0)
    sum_sq = (k * k + det_cross**2 - q) / k
    if sum_sq < -1e-10 * scale:
        raise InconsistentInvariantsError(
            f"invariants give negative c_plus^2 + c_minus^2 = {sum_sq:.6e}"
        )
    sum_sq = max(sum_sq, 0.0)
    root = clipped_sqrt(sum_sq**2 - 4.0 * det_cross**2, scale=scale**2)
    t_plus = 0.5 * (sum_sq + root)
    c_plus = math.sqrt(t_plus)
    c_minus = det_cross / c_plus if c_plus > 0.0 else 0.0

    cm_eq = CovarianceMatrix(
        np.array(
            [
                [na_plus, 0.0, c_plus, 0.0],
                [0.0, na_plus, 0.0, c_minus],
                [c_plus, 0.0, nb_plus, 0.0],
                [0.0, c_minus, 0.0, nb_plus],
            ]
        )
    )
    return EquivalentTwoMode(cm_eq, mu_eq, delta_eq)


def equivalent_two_mode_invariants(spec: BisymmetricSpec) -> EquivalentTwoMode:
    """Equivalent two-mode state of a two-block spec, from invariants alone.

    O(1) in the number of modes; the workhorse of the parameter sweeps.
    """
    return _equivalent_from_blocks(
        spec.m,
        spec.n,
        np.diag([spec.a, spec.a]),
        np.diag([spec.e1, spec.e2]),
        np.diag([spec.b, spec.b]),
        np.diag([spec.z1, spec.z2]),
        np.diag([spec.g1, spec.g2]),
    )


def equivalent_from_cm(
    cm: CovarianceMatrix, m: int, n: int, tol_pattern: float | None = None
) -> EquivalentTwoMode:
    """Invariant route applied to an assembled covariance matrix.

    The pattern blocks need not be in standard form; they are verified
    against the two-block permutation symmetry and rejected otherwise.
    """
    if m < 1 or n < 1 or m + n != cm.modes:
        raise InvalidArgumentError(
            f"split ({m}, {n}) does not cover the {cm.modes}-mode input"
        )
    matrix = np.array(cm.matrix)
    if tol_pattern is None:
        tol_pattern = 1e-8 * max(1.0, float(np.max(np.abs(matrix))))
    blocks = _extract_pattern_blocks(matrix, m, n, tol_pattern)
    return _equivalent_from_blocks(m, n, *blocks)


def _symmetric_equivalent(na_plus: float, nb_plus: float, tol: float = 1e-8) -> bool:
    return abs(na_plus**2 - nb_plus**2) <= tol * max(1.0, na_plus**2, nb_plus**2)


def _report_from_equivalent(eq: EquivalentTwoMode, tol: float) -> EntanglementReport:
    nu_pair = eq.nu_tilde_pair()
    m = eq.cm_eq.matrix
    return report_from_pt_values(
        np.array(nu_pair),
        decidable=True,
        symmetric=_symmetric_equivalent(m[0, 0], m[2, 2], tol),
    )


def equivalent_report(spec: BisymmetricSpec, tol: float = 1e-8) -> EntanglementReport:
    """Entanglement report of the m x n split via the equivalent state.

    Positivity of the partial transpose is decisive for this state class,
    so the separable flag is always populated; the entanglement of
    formation is included when the equivalent state is symmetric.
    """
    return _report_from_equivalent(equivalent_two_mode_invariants(spec), tol)


def equivalent_report_from_cm(
    cm: CovarianceMatrix, m: int, n: int, tol: float = 1e-8
) -> EntanglementReport:
    """Entanglement report of an assembled two-block covariance matrix."""
    return _report_from_equivalent(equivalent_from_cm(cm, m, n), tol)


# ---------------------------------------------------------------------------
# Constructive route.
# ---------------------------------------------------------------------------


def _extract_pattern_blocks(matrix: np.ndarray, m: int, n: int, tol: float):
    """Read (alpha, eps, beta, zeta, gamma) and verify the two-block pattern."""

    def block(i, j):
        return matrix[2 * i : 2 * i + 2, 2 * j : 2 * j + 2]

    alpha = block(0, 0)
    eps = block(0, 1) if m > 1 else np.zeros((2, 2))
    beta = block(m, m)
    zeta = block(m, m + 1) if n > 1 else np.zeros((2, 2))
    gamma = block(0, m)

    worst = 0.0
    for i in range(m):
        for j in range(m):
            target = alpha if i == j else eps
            worst = max(worst, float(np.max(np.abs(block(i, j) - target))))
    for i in range(n):
        for j in range(n):
            target = beta if i == j else zeta
            worst = max(worst, float(np.max(np.abs(block(m + i, m + j) - target))))
    for i in range(m):
        for j in range(n):
            worst = max(worst, float(np.max(np.abs(block(i, m + j) - gamma))))
    if worst > tol:
        raise LocalizationError(
            f"input is not block-permutation invariant: pattern deviation {worst:.3e} "
            f"exceeds tolerance {tol:.3e}"
        )
    return alpha, eps, beta, zeta, gamma


def _householder_mixing(count: int, position: int) -> np.ndarray:
    """Orthogonal matrix whose ``position``-th row is the uniform vector.

    Symmetric Householder reflection exchanging e_position with
    (1, ..., 1)/sqrt(count); the remaining rows span the complement of the
    uniform vector, so they average out identical block patterns.
    """
    if count == 1:
        return np.eye(1)
    v = np.full(count, 1.0 / math.sqrt(count))
    w = v - np.eye(count)[position]
    norm_sq = float(w @ w)
    if norm_sq < 1e-30:
        return np.eye(count)
    return np.eye(count) - 2.0 * np.outer(w, w) / norm_sq


def _mode_mixing_symplectic(o: np.ndarray) -> np.ndarray:
    """Symplectic acting as the orthogonal mode mixing O on (x, p) jointly.

    Under sigma -> T^T sigma T the 2x2 mode blocks transform as
    sigma'_ij = sum_kl O_ik O_jl sigma_kl.
    """
    return np.kron(o.T, np.eye(2))


def _spd2_sqrt(m: np.ndarray) -> np.ndarray:
    """Closed-form square root of a symmetric positive definite 2x2 matrix."""
    det = float(np.linalg.det(m))
    if det <= 0.0 or m[0, 0] <= 0.0:
        raise LocalizationError("single-mode covariance block is not positive definite")
    s = math.sqrt(det)
    return (m + s * np.eye(2)) / math.sqrt(float(np.trace(m)) + 2.0 * s)


def _single_mode_normalizer(c: np.ndarray) -> np.ndarray:
    """2x2 symplectic s with s^T c s = sqrt(det c) * I2.

    s = (c / nu)^{-1/2}: symmetric with unit determinant, hence symplectic.
    """
    det = float(np.linalg.det(c))
    if det <= 0.0:
        raise LocalizationError("single-mode covariance block is not positive definite")
    w = _spd2_sqrt(c / math.sqrt(det))
    return np.array([[w[1, 1], -w[0, 1]], [-w[1, 0], w[0, 0]]]) / float(np.linalg.det(w))


def _rotation_pair(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rotations (r1, r2) with r1^T x r2 = diag(d1, d2), d1 >= |d2|, d1 >= 0."""
    u, svals, vt = np.linalg.svd(x)
    v = vt.T
    if np.linalg.det(u) < 0.0:
        u[:, 1] *= -1.0
    if np.linalg.det(v) < 0.0:
        v[:, 1] *= -1.0
    return u, v


def localize(cm: CovarianceMatrix, m: int, n: int, tol_pattern: float | None = None) -> LocalizationResult:
    """Concentrate all cross-block correlations onto one pair of modes.

    The input must be an (m+n)-mode state invariant under mode permutations
    inside the first m and the last n modes (verified by pattern inspection
    within ``tol_pattern``, default 1e-8 scaled by the largest entry;
    failing inputs are rejected, never projected).

    The transformation is assembled in three local stages:

    1. an orthogonal mode mixing on each block sending the symmetric
       combination to the block boundary (modes m-1 and m), which decouples
       the remaining modes exactly by the pattern's permutation symmetry;
    2. a single-mode squeezer on every mode bringing each decoupled 2x2
       covariance block to its normal form nu * I2;
    3. a phase rotation on each boundary mode diagonalizing the remaining
       cross block.

    Stage 1 works even when a block's spectrum is fully degenerate, where
    an eigenvalue-ordered normal-form computation could not identify the
    correlation-carrying mode.
    """
    if m < 1 or n < 1:
        raise InvalidArgumentError(f"block sizes must be >= 1, got ({m}, {n})")
    if m + n != cm.modes:
        raise InvalidArgumentError(
            f"split ({m}, {n}) does not cover the {cm.modes}-mode input"
        )
    matrix = np.array(cm.matrix)
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if tol_pattern is None:
        tol_pattern = 1e-8 * scale
    _extract_pattern_blocks(matrix, m, n, tol_pattern)

    total = m + n
    mixing = np.zeros((2 * total, 2 * total))
    mixing[: 2 * m, : 2 * m] = _mode_mixing_symplectic(_householder_mixing(m, m - 1))
    mixing[2 * m :, 2 * m :] = _mode_mixing_symplectic(_householder_mixing(n, 0))
    stage1 = mixing.T @ matrix @ mixing

    squeezers = np.zeros_like(mixing)
    for mode in range(total):
        r = 2 * mode
        squeezers[r : r + 2, r : r + 2] = _single_mode_normalizer(
            0.5 * (stage1[r : r + 2, r : r + 2] + stage1[r : r + 2, r : r + 2].T)
        )
    stage2 = squeezers.T @ stage1 @ squeezers

    rotations = np.eye(2 * total)
    ra, rb = _rotation_pair(stage2[2 * (m - 1) : 2 * m, 2 * m : 2 * m + 2])
    rotations[2 * (m - 1) : 2 * m, 2 * (m - 1) : 2 * m] = ra
    rotations[2 * m : 2 * m + 2, 2 * m : 2 * m + 2] = rb
    final = rotations.T @ stage2 @ rotations

    local = mixing @ squeezers @ rotations

    # target skeleton: scalar 2x2 diagonal blocks everywhere plus a
    # diagonal cross block between the two boundary modes
    pattern = np.zeros_like(final, dtype=bool)
    idx = np.arange(2 * total)
    pattern[idx, idx] = True
    row, col = 2 * (m - 1), 2 * m
    for offset in (0, 1):
        pattern[row + offset, col + offset] = True
        pattern[col + offset, row + offset] = True
    residual = float(np.max(np.abs(np.where(pattern, 0.0, final))))
    if residual > tol_pattern:
        raise LocalizationError(
            f"off-pattern residual {residual:.3e} exceeds tolerance {tol_pattern:.3e}"
        )

    boundary = slice(2 * (m - 1), 2 * m + 2)
    cm_eq = CovarianceMatrix(final[boundary, boundary])
    equivalent = EquivalentTwoMode(cm_eq, purity(cm_eq), delta_invariant(cm_eq))
    return LocalizationResult(local, CovarianceMatrix(final), equivalent, residual)


# ---------------------------------------------------------------------------
# Block entanglement of permutation-invariant states.
# ---------------------------------------------------------------------------


def _fs_split_spec(spec: FullySymmetricSpec, k: int) -> BisymmetricSpec:
    total = spec.modes
    if not 1 <= k <= total - 1:
        raise InvalidArgumentError(f"split size k = {k} out of range for {total} modes")
    rest = total - k
    return BisymmetricSpec(
        m=k,
        n=rest,
        a=spec.b,
        e1=spec.z1 if k > 1 else 0.0,
        e2=spec.z2 if k > 1 else 0.0,
        b=spec.b,
        z1=spec.z1 if rest > 1 else 0.0,
        z2=spec.z2 if rest > 1 else 0.0,
        g1=spec.z1,
        g2=spec.z2,
    )


def block_log_negativity(spec: FullySymmetricSpec, k: int) -> EntanglementReport:
    """Entanglement between the first k modes and the rest.

    Every k-subset of a permutation-invariant state is equivalent, so the
    contiguous split is canonical. Runs through the equivalent-state
    invariants; the k = total/2 split is symmetric, so the entanglement of
    formation is reported there (and wherever the symmetric condition
    happens to hold).
    """
    return equivalent_report(_fs_split_spec(spec, k))


def optimal_localizable_entanglement(state) -> tuple[int, EntanglementReport]:
    """Best split size of a permutation-invariant state, and its report.

    ``state`` is a spec or an assembled covariance matrix (any local
    basis). Ties resolve to the smallest k; the maximum is expected at the
    balanced split, k = floor(M/2).
    """
    if not isinstance(state, (FullySymmetricSpec, CovarianceMatrix)):
        raise InvalidArgumentError(
            f"expected a symmetric spec or covariance matrix, got {type(state)!r}"
        )
    total = state.modes
    if total < 2:
        raise InvalidArgumentError("need at least two modes to form a bipartition")
    best_k, best_report = None, None
    for k in range(1, total // 2 + 1):
        if isinstance(state, FullySymmetricSpec):
            report = block_log_negativity(state, k)
        else:
            report = equivalent_report_from_cm(state, k, total - k)
        if best_report is None or report.log_negativity > best_report.log_negativity:
            best_k, best_report = k, report
    return best_k, best_report
