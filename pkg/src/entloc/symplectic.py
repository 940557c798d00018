"""Symplectic linear algebra on Gaussian covariance matrices.

Conventions used throughout the package:

* quadratures are interleaved as (x1, p1, ..., xN, pN);
* the covariance matrix is dimensionless and the vacuum state is the
  identity, so physical states have every symplectic eigenvalue >= 1;
* a symplectic matrix S acts on a covariance matrix by congruence,
  sigma -> S^T sigma S, and the Williamson factorization is written in
  the same direction, sigma = S^T diag(nu1, nu1, ..., nuN, nuN) S;
* mode indices are zero-based in the library API (the command line
  front end is one-based).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    DecompositionError,
    InvalidArgumentError,
    NumericalDomainError,
)

# Absolute tolerances on unit-scaled matrices; checks rescale them by the
# largest matrix entry so that large-squeezing inputs (entries ~ e^{2r})
# are judged relatively.
TOL_SYM = 1e-9
TOL_SYMPL = 1e-9
TOL_PHYS = 1e-9
TOL_RECON = 1e-8
RADICAND_CLIP = 1e-10


def _scale(matrix) -> float:
    return max(1.0, float(np.max(np.abs(matrix))))


def clipped_sqrt(value: float, scale: float = 1.0, clip: float = RADICAND_CLIP) -> float:
    """sqrt with a small negative-radicand clip.

    Boundary states (pure, symmetric) sit exactly on branch points, so
    radicands down to ``-clip * max(1, scale)`` are treated as zero;
    anything more negative raises.
    """
    if value < -clip * max(1.0, abs(scale)):
        raise NumericalDomainError(f"negative radicand {value:.6e} beyond clip tolerance")
    return math.sqrt(max(value, 0.0))


def symplectic_form(modes: int) -> np.ndarray:
    """The 2N x 2N symplectic form: N diagonal copies of [[0, 1], [-1, 0]]."""
    if modes < 1:
        raise InvalidArgumentError(f"mode count must be a positive integer, got {modes}")
    omega = np.zeros((2 * modes, 2 * modes))
    for k in range(modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """A 2N x 2N real symmetric covariance matrix of an N-mode state.

    The constructor rejects matrices that are asymmetric beyond
    ``TOL_SYM`` (scaled by the largest entry) and symmetrizes the rest;
    the stored array is read-only. Positivity and the uncertainty
    relation are *not* enforced here: partial transposes of entangled
    states are legitimately non-physical covariance matrices.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0 or m.shape[0] % 2:
            raise InvalidArgumentError(f"covariance matrix must be 2Nx2N, got shape {m.shape}")
        skew = float(np.max(np.abs(m - m.T)))
        if skew > TOL_SYM * _scale(m):
            raise InvalidArgumentError(
                f"matrix is asymmetric beyond tolerance: max |s_ij - s_ji| = {skew:.3e}"
            )
        m = 0.5 * (m + m.T)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def modes(self) -> int:
        return self.matrix.shape[0] // 2

    def block(self, i: int, j: int) -> np.ndarray:
        """The 2x2 submatrix coupling modes i and j (zero-based)."""
        n = self.modes
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidArgumentError(f"mode indices ({i}, {j}) out of range for {n} modes")
        return self.matrix[2 * i : 2 * i + 2, 2 * j : 2 * j + 2]

    def allclose(self, other: "CovarianceMatrix", tol: float = 1e-12) -> bool:
        return self.modes == other.modes and bool(
            np.max(np.abs(self.matrix - other.matrix)) <= tol * _scale(self.matrix)
        )


def vacuum_cm(modes: int) -> CovarianceMatrix:
    """The N-mode vacuum: identity covariance matrix."""
    if modes < 1:
        raise InvalidArgumentError(f"mode count must be a positive integer, got {modes}")
    return CovarianceMatrix(np.eye(2 * modes))


@dataclass(frozen=True, eq=False)
class SymplecticSpectrum:
    """The N symplectic eigenvalues of a covariance matrix, sorted descending."""

    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.array(self.values, dtype=float))[::-1].copy()
        if v.ndim != 1 or v.size == 0:
            raise InvalidArgumentError("spectrum must hold at least one value")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def min(self) -> float:
        return float(self.values[-1])

    @property
    def max(self) -> float:
        return float(self.values[0])

    def clustered(self, tol: float | None = None) -> list[tuple[float, int]]:
        """Group numerically degenerate eigenvalues.

        Returns (value, multiplicity) pairs in descending order; the value
        is the mean of its cluster. Default tolerance 1e-7 * max(1, nu_max)
        since exact theoretical degeneracies are perturbed by roundoff.
        """
        if tol is None:
            tol = 1e-7 * max(1.0, self.max)
        clusters: list[list[float]] = []
        for v in self.values:
            if clusters and abs(clusters[-1][0] - v) <= tol:
                clusters[-1].append(float(v))
            else:
                clusters.append([float(v)])
        return [(sum(c) / len(c), len(c)) for c in clusters]


def _require_positive_definite(matrix: np.ndarray, what: str = "covariance matrix"):
    try:
        np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericalDomainError(f"{what} is not positive definite") from exc


def symplectic_eigenvalues(cm: CovarianceMatrix) -> SymplecticSpectrum:
    """Symplectic spectrum of a positive definite covariance matrix.

    Computed from the eigenvalues of the real matrix Omega @ sigma, which
    come in pure imaginary pairs +/- i nu; each pair is averaged into one
    reported eigenvalue.
    """
    m = cm.matrix
    _require_positive_definite(m)
    omega = symplectic_form(cm.modes)
    eigenvalues = np.linalg.eigvals(omega @ m)
    magnitudes = np.sort(np.abs(eigenvalues.imag))[::-1]
    paired = 0.5 * (magnitudes[0::2] + magnitudes[1::2])
    return SymplecticSpectrum(paired)


def is_bona_fide(cm: CovarianceMatrix, tol: float = TOL_PHYS) -> bool:
    """Whether the matrix satisfies the uncertainty relation.

    True iff sigma is positive definite and its smallest symplectic
    eigenvalue is >= 1 - tol, with tol scaled by the largest entry: the
    spectrum of a large-squeezing matrix is only determined to absolute
    precision eps * |sigma|_max.
    """
    try:
        spectrum = symplectic_eigenvalues(cm)
    except NumericalDomainError:
        return False
    return spectrum.min >= 1.0 - tol * _scale(cm.matrix)


def is_symplectic(s: np.ndarray, tol: float = TOL_SYMPL) -> bool:
    """Whether S^T Omega S = Omega within tolerance (scaled by |S|_max^2)."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2 or s.shape[0] == 0:
        return False
    omega = symplectic_form(s.shape[0] // 2)
    defect = float(np.max(np.abs(s.T @ omega @ s - omega)))
    return defect <= tol * max(1.0, float(np.max(np.abs(s))) ** 2)


def symplectic_inverse(s: np.ndarray) -> np.ndarray:
    """Inverse of a symplectic matrix, S^{-1} = -Omega S^T Omega (exact)."""
    s = np.asarray(s, dtype=float)
    omega = symplectic_form(s.shape[0] // 2)
    return -omega @ s.T @ omega


def williamson(cm: CovarianceMatrix, tol_recon: float = TOL_RECON):
    """Williamson normal form of a positive definite covariance matrix.

    Returns ``(S, spectrum)`` with ``sigma = S^T D S`` where
    ``D = diag(nu1, nu1, ..., nuN, nuN)`` holds the symplectic eigenvalues
    in the descending order of the returned spectrum.

    The construction forms ``K = sigma^{1/2} Omega sigma^{1/2}``, which is
    real antisymmetric with eigenvalues +/- i nu_i, brings it to its
    canonical block form by a real Schur transform, and assembles
    ``S = D^{-1/2} Q^T sigma^{1/2}``. The degenerate-subspace gauge (any
    orthogonal-symplectic mixing of equal eigenvalues) is whatever the
    Schur factorization yields.

    Raises
    ------
    NumericalDomainError
        If sigma is not positive definite.
    DecompositionError
        If the reconstruction residual exceeds ``tol_recon`` relative to
        the largest input entry.
    """
    m = cm.matrix
    n = cm.modes
    evals, evecs = np.linalg.eigh(m)
    if evals[0] <= 0.0:
        raise NumericalDomainError("covariance matrix is not positive definite")
    root = (evecs * np.sqrt(evals)) @ evecs.T

    omega = symplectic_form(n)
    k = root @ omega @ root
    k = 0.5 * (k - k.T)

    t, q = scipy.linalg.schur(k, output="real")

    nus = np.empty(n)
    for i in range(n):
        r = 2 * i
        theta = 0.5 * (t[r, r + 1] - t[r + 1, r])
        if theta < 0.0:
            q[:, [r, r + 1]] = q[:, [r + 1, r]]
            theta = -theta
        nus[i] = theta

    order = np.argsort(nus)[::-1]
    nus = nus[order]
    column_order = np.empty(2 * n, dtype=int)
    column_order[0::2] = 2 * order
    column_order[1::2] = 2 * order + 1
    q = q[:, column_order]

    d_inv_sqrt = 1.0 / np.sqrt(np.repeat(nus, 2))
    s = d_inv_sqrt[:, None] * (q.T @ root)

    reconstructed = s.T @ (np.repeat(nus, 2)[:, None] * s)
    residual = float(np.max(np.abs(reconstructed - m))) / _scale(m)
    if residual > tol_recon or not is_symplectic(s, tol=max(TOL_SYMPL, tol_recon)):
        raise DecompositionError(
            f"normal-form reconstruction residual {residual:.3e} exceeds {tol_recon:.1e}"
        )
    return s, SymplecticSpectrum(nus)


def purity(cm: CovarianceMatrix) -> float:
    """Purity 1 / sqrt(det sigma); in (0, 1] for physical states."""
    sign, logdet = np.linalg.slogdet(cm.matrix)
    if sign <= 0.0:
        raise NumericalDomainError("covariance determinant must be positive")
    return float(np.exp(-0.5 * logdet))


def delta_invariant(cm: CovarianceMatrix) -> float:
    """Sum of the determinants of all N^2 two-by-two mode blocks.

    A global symplectic invariant, like det sigma.
    """
    n = cm.modes
    b = cm.matrix.reshape(n, 2, n, 2)
    dets = b[:, 0, :, 0] * b[:, 1, :, 1] - b[:, 0, :, 1] * b[:, 1, :, 0]
    return float(dets.sum())


def apply_symplectic(s: np.ndarray, cm: CovarianceMatrix) -> CovarianceMatrix:
    """Congruence action sigma -> S^T sigma S."""
    s = np.asarray(s, dtype=float)
    if s.shape != cm.matrix.shape:
        raise InvalidArgumentError(
            f"shape mismatch: transform {s.shape} vs covariance {cm.matrix.shape}"
        )
    if not is_symplectic(s):
        raise InvalidArgumentError("transform is not symplectic within tolerance")
    return CovarianceMatrix(s.T @ cm.matrix @ s)


def partial_trace(cm: CovarianceMatrix, keep) -> CovarianceMatrix:
    """Reduced state on the given modes: the principal submatrix.

    ``keep`` is an iterable of distinct zero-based mode indices; the
    result orders them ascending.
    """
    keep = sorted(keep)
    if not keep:
        raise InvalidArgumentError("keep set must be nonempty")
    if len(set(keep)) != len(keep):
        raise InvalidArgumentError(f"duplicate mode indices in {keep}")
    if keep[0] < 0 or keep[-1] >= cm.modes:
        raise InvalidArgumentError(f"mode indices {keep} out of range for {cm.modes} modes")
    idx = np.array([[2 * k, 2 * k + 1] for k in keep]).ravel()
    return CovarianceMatrix(cm.matrix[np.ix_(idx, idx)])


@dataclass(frozen=True)
class TwoModeInvariants:
    """det sigma, the block-determinant sum, and the local determinants
    of a two-mode covariance matrix."""

    det_total: float
    delta: float
    det_block_a: float
    det_block_b: float

    def symplectic_eigenvalues(self) -> tuple[float, float]:
        """Closed-form (nu_minus, nu_plus): 2 nu^2 = Delta -/+ sqrt(Delta^2 - 4 det)."""
        return _minus_plus_pair(self.delta, self.det_total)


def _minus_plus_pair(delta: float, det: float) -> tuple[float, float]:
    """Both branches of 2 nu^2 = delta -/+ sqrt(delta^2 - 4 det).

    The minus branch is evaluated in conjugate form, 2 det / (delta +
    root), which stays accurate when the branches are many orders of
    magnitude apart (large squeezing).
    """
    root = clipped_sqrt(delta**2 - 4.0 * det, scale=delta**2)
    nu_plus = clipped_sqrt(0.5 * (delta + root), scale=abs(delta))
    if det > 0.0 and delta + root > 0.0:
        nu_minus = math.sqrt(2.0 * det / (delta + root))
    else:
        nu_minus = clipped_sqrt(0.5 * (delta - root), scale=abs(delta))
    return nu_minus, nu_plus


def two_mode_invariants(cm: CovarianceMatrix) -> TwoModeInvariants:
    if cm.modes != 2:
        raise InvalidArgumentError(f"expected a two-mode matrix, got {cm.modes} modes")
    m = cm.matrix
    return TwoModeInvariants(
        det_total=float(np.linalg.det(m)),
        delta=delta_invariant(cm),
        det_block_a=float(np.linalg.det(m[0:2, 0:2])),
        det_block_b=float(np.linalg.det(m[2:4, 2:4])),
    )


def two_mode_symplectic_eigenvalues(cm: CovarianceMatrix) -> tuple[float, float]:
    """(nu_minus, nu_plus) of a two-mode state from its invariants."""
    return two_mode_invariants(cm).symplectic_eigenvalues()


# ---------------------------------------------------------------------------
# Serialization. JSON: {"modes": N, "entries": [...]} with 4N^2 row-major
# numbers. CSV: 2N lines of 2N comma-separated decimals. Readers reject
# matrices that are asymmetric beyond TOL_SYM.
# ---------------------------------------------------------------------------


def cm_to_json_dict(cm: CovarianceMatrix) -> dict:
    return {"modes": cm.modes, "entries": [float(x) for x in cm.matrix.ravel()]}


def cm_from_json_dict(obj) -> CovarianceMatrix:
    if not isinstance(obj, dict) or "modes" not in obj or "entries" not in obj:
        raise InvalidArgumentError('expected a JSON object {"modes": N, "entries": [...]}')
    modes = obj["modes"]
    if not isinstance(modes, int) or modes < 1:
        raise InvalidArgumentError(f"modes must be a positive integer, got {modes!r}")
    entries = np.asarray(obj["entries"], dtype=float)
    if entries.size != 4 * modes * modes:
        raise InvalidArgumentError(
            f"expected {4 * modes * modes} entries for {modes} modes, got {entries.size}"
        )
    return CovarianceMatrix(entries.reshape(2 * modes, 2 * modes))


def cm_to_csv_text(cm: CovarianceMatrix) -> str:
    lines = [",".join(repr(float(x)) for x in row) for row in cm.matrix]
    return "\n".join(lines) + "\n"


def cm_from_csv_text(text: str) -> CovarianceMatrix:
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([float(cell) for cell in line.split(",")])
        except ValueError as exc:
            raise InvalidArgumentError(f"CSV line {lineno}: {exc}") from exc
    if not rows:
        raise InvalidArgumentError("CSV input holds no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows) or len(rows) != width:
        raise InvalidArgumentError(
            f"CSV rows must form a square matrix, got {len(rows)} rows of width {width}"
        )
    return CovarianceMatrix(np.array(rows))


def save_cm(cm: CovarianceMatrix, path) -> None:
    path = str(path)
    if path.endswith(".csv"):
        text = cm_to_csv_text(cm)
    else:
        text = json.dumps(cm_to_json_dict(cm))
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def load_cm(path) -> CovarianceMatrix:
    path = str(path)
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    if path.endswith(".csv"):
        return cm_from_csv_text(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidArgumentError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return cm_from_json_dict(obj)
