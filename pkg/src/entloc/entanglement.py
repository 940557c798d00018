"""Partial transposition, separability decisions and entanglement measures.

The separability test used throughout is positivity of the partial
transpose, which is decisive for two-mode states, 1 x n splits, and the
two-block states handled by the localization routines; for other splits
the separable flag is left undecided (None).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError
from .states import BisymmetricSpec
from .symplectic import (
    TOL_PHYS,
    CovarianceMatrix,
    SymplecticSpectrum,
    _minus_plus_pair,
    is_bona_fide,
    symplectic_eigenvalues,
    two_mode_invariants,
)

# PT eigenvalues this close above 1 are treated as exactly separable
# boundary values before any logarithm.
SEPARABLE_CLAMP = 1e-10


@dataclass(frozen=True)
class ModeBipartition:
    """An ordered split of the modes of a covariance matrix into two sides."""

    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self):
        side_a = tuple(int(i) for i in self.side_a)
        side_b = tuple(int(i) for i in self.side_b)
        object.__setattr__(self, "side_a", side_a)
        object.__setattr__(self, "side_b", side_b)
        if not side_a or not side_b:
            raise InvalidArgumentError("both sides of a bipartition must be nonempty")
        overlap = set(side_a) & set(side_b)
        if overlap:
            raise InvalidArgumentError(f"bipartition sides overlap on modes {sorted(overlap)}")
        if len(set(side_a)) != len(side_a) or len(set(side_b)) != len(side_b):
            raise InvalidArgumentError("bipartition sides contain duplicate modes")

    @classmethod
    def contiguous(cls, m: int, n: int) -> "ModeBipartition":
        """First m modes against the following n modes."""
        return cls(tuple(range(m)), tuple(range(m, m + n)))

    def validate_for(self, cm: CovarianceMatrix) -> None:
        covered = set(self.side_a) | set(self.side_b)
        expected = set(range(cm.modes))
        if covered != expected:
            raise InvalidArgumentError(
                f"bipartition covers modes {sorted(covered)}, expected {sorted(expected)}"
            )

    def swapped(self) -> "ModeBipartition":
        return ModeBipartition(self.side_b, self.side_a)


@dataclass(frozen=True)
class EntanglementReport:
    """Entanglement figures for one declared bipartition.

    ``eof`` is present only when the state (or its equivalent two-mode
    reduction) is symmetric; ``separable`` is None when positivity of the
    partial transpose is not known to be decisive for the state class.
    """

    nu_tilde_min: float
    log_negativity: float
    negativity: float
    eof: float | None
    separable: bool | None

    def to_json_dict(self) -> dict:
        return {
            "nu_tilde_min": self.nu_tilde_min,
            "log_negativity": self.log_negativity,
            "negativity": self.negativity,
            "eof": self.eof,
            "separable": self.separable,
        }


def partial_transpose(cm: CovarianceMatrix, part: ModeBipartition) -> CovarianceMatrix:
    """Mirror the momentum quadrature of every mode on side_b.

    The result is symmetric but generally not physical; its symplectic
    spectrum does not depend on which side is transposed.
    """
    part.validate_for(cm)
    signs = np.ones(2 * cm.modes)
    for k in part.side_b:
        signs[2 * k + 1] = -1.0
    return CovarianceMatrix(cm.matrix * np.outer(signs, signs))


def pt_spectrum(cm: CovarianceMatrix, part: ModeBipartition) -> SymplecticSpectrum:
    """Symplectic spectrum of the partially transposed matrix."""
    return symplectic_eigenvalues(partial_transpose(cm, part))


def pt_two_mode_nu_tilde(cm: CovarianceMatrix) -> tuple[float, float]:
    """Closed-form PT eigenvalues of a two-mode state from its invariants.

    Transposition flips the sign of the cross-block determinant, so
    Delta_tilde = det A + det B - 2 det C and the usual two-mode formula
    applies with Delta_tilde in place of Delta.
    """
    if cm.modes != 2:
        raise InvalidArgumentError(f"expected a two-mode matrix, got {cm.modes} modes")
    inv = two_mode_invariants(cm)
    det_c = float(np.linalg.det(cm.matrix[0:2, 2:4]))
    delta_tilde = inv.det_block_a + inv.det_block_b - 2.0 * det_c
    return _minus_plus_pair(delta_tilde, inv.det_total)


def _clamp_boundary(values: np.ndarray) -> np.ndarray:
    out = values.copy()
    boundary = (out > 1.0) & (out <= 1.0 + SEPARABLE_CLAMP)
    out[boundary] = 1.0
    return out


def eof_symmetric(nu_tilde: float) -> float:
    """Entanglement of formation of a symmetric two-mode state.

    Closed form max(0, h(nu_tilde)) with

        h(x) = (1+x)^2/(4x) ln((1+x)^2/(4x)) - (1-x)^2/(4x) ln((1-x)^2/(4x)),

    a strictly decreasing function on (0, 1] with h(1) = 0.
    """
    if nu_tilde <= 0.0:
        raise InvalidArgumentError(f"PT eigenvalue must be positive, got {nu_tilde}")
    plus = (1.0 + nu_tilde) ** 2 / (4.0 * nu_tilde)
    minus = (1.0 - nu_tilde) ** 2 / (4.0 * nu_tilde)
    value = plus * math.log(plus)
    if minus > 0.0:
        value -= minus * math.log(minus)
    return max(0.0, value)


def report_from_pt_values(
    nu_values: np.ndarray,
    decidable: bool,
    symmetric: bool,
    tol: float = TOL_PHYS,
) -> EntanglementReport:
    """Assemble a report from PT symplectic eigenvalues.

    ``E_N = max(0, -sum ln nu)`` over sub-unit eigenvalues; the negativity
    follows from the trace norm, N = (e^{E_N} - 1) / 2. The separable flag
    is populated only when ``decidable``.
    """
    values = _clamp_boundary(np.asarray(nu_values, dtype=float))
    nu_min = float(values.min())
    log_neg = max(0.0, -float(np.sum(np.log(values[values < 1.0]))))
    negativity = 0.5 * (math.exp(log_neg) - 1.0)
    separable = (nu_min >= 1.0 - tol) if decidable else None
    eof = eof_symmetric(nu_min) if symmetric else None
    return EntanglementReport(nu_min, log_neg, negativity, eof, separable)


def _two_mode_is_symmetric(cm: CovarianceMatrix, tol: float = 1e-8) -> bool:
    inv = two_mode_invariants(cm)
    scale = max(1.0, abs(inv.det_block_a), abs(inv.det_block_b))
    return abs(inv.det_block_a - inv.det_block_b) <= tol * scale


def log_negativity(
    cm: CovarianceMatrix,
    part: ModeBipartition,
    ppt_decidable: bool | None = None,
    tol: float = TOL_PHYS,
) -> EntanglementReport:
    """Entanglement report for a physical state across a bipartition.

    ``ppt_decidable`` may be set by the caller for state classes where
    positivity of the partial transpose is known to decide separability
    (for example two-block-symmetric states); 1 x n splits are treated as
    decidable automatically. The entanglement of formation is included
    only for symmetric two-mode inputs.
    """
    part.validate_for(cm)
    if not is_bona_fide(cm, tol=tol):
        raise InvalidArgumentError("input covariance matrix is not a physical state")
    if ppt_decidable is None:
        ppt_decidable = len(part.side_a) == 1 or len(part.side_b) == 1
    spectrum = pt_spectrum(cm, part)
    symmetric = cm.modes == 2 and _two_mode_is_symmetric(cm)
    return report_from_pt_values(
        spectrum.values,
        decidable=bool(ppt_decidable),
        symmetric=symmetric,
        tol=tol,
    )


def symmetric_condition(spec: BisymmetricSpec, tol: float = 1e-8) -> bool:
    """Whether the equivalent two-mode state of a two-block spec is symmetric.

    True iff (a + (m-1) e1)(a + (m-1) e2) = (b + (n-1) z1)(b + (n-1) z2)
    within tolerance; gates the availability of the entanglement of
    formation in reports.
    """
    lhs = (spec.a + (spec.m - 1) * spec.e1) * (spec.a + (spec.m - 1) * spec.e2)
    rhs = (spec.b + (spec.n - 1) * spec.z1) * (spec.b + (spec.n - 1) * spec.z2)
    return abs(lhs - rhs) <= tol * max(1.0, abs(lhs), abs(rhs))
