"""Constructors for the covariance-matrix families used by the package.

All constructors return physical (bona fide) states and raise
``InvalidArgumentError`` for unphysical parameters, carrying the violating
symplectic eigenvalue where one is identifiable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError
from .symplectic import (
    TOL_PHYS,
    CovarianceMatrix,
    clipped_sqrt,
    symplectic_eigenvalues,
)


@dataclass(frozen=True)
class FullySymmetricSpec:
    """Standard-form parameters of a permutation-invariant n-mode state.

    Every diagonal 2x2 block is diag(b, b) and every off-diagonal block is
    diag(z1, z2). The two distinct symplectic eigenvalues are

        nu_minus = sqrt((b - z1) (b - z2))            (multiplicity n - 1)
        nu_plus  = sqrt((b + (n-1) z1) (b + (n-1) z2))

    and physicality requires both to be >= 1. For a single mode the z
    covariances are unused and must be zero.
    """

    modes: int
    b: float
    z1: float = 0.0
    z2: float = 0.0

    def __post_init__(self):
        if self.modes < 1:
            raise InvalidArgumentError(f"mode count must be >= 1, got {self.modes}")
        if self.modes == 1:
            if self.z1 != 0.0 or self.z2 != 0.0:
                raise InvalidArgumentError("single-mode spec must have z1 = z2 = 0")
            if self.b < 1.0 - TOL_PHYS:
                raise InvalidArgumentError(
                    f"single-mode eigenvalue b = {self.b} below 1",
                    offending_value=self.b,
                )
            return
        n = self.modes
        factors = (
            self.b - self.z1,
            self.b - self.z2,
            self.b + (n - 1) * self.z1,
            self.b + (n - 1) * self.z2,
        )
        if min(factors) <= 0.0:
            raise InvalidArgumentError(
                f"covariance pattern is not positive definite (factors {factors})",
                offending_value=min(factors),
            )
        nu_minus = math.sqrt(factors[0] * factors[1])
        nu_plus = math.sqrt(factors[2] * factors[3])
        worst = min(nu_minus, nu_plus)
        if worst < 1.0 - TOL_PHYS:
            raise InvalidArgumentError(
                f"unphysical parameters: min symplectic eigenvalue {worst:.12g} < 1",
                offending_value=worst,
            )

    def nu_minus(self) -> float:
        return math.sqrt((self.b - self.z1) * (self.b - self.z2))

    def nu_plus(self) -> float:
        n = self.modes
        return math.sqrt((self.b + (n - 1) * self.z1) * (self.b + (n - 1) * self.z2))

    def to_json_dict(self) -> dict:
        return {"modes": self.modes, "b": self.b, "z1": self.z1, "z2": self.z2}


@dataclass(frozen=True)
class BisymmetricSpec:
    """Standard-form parameters of an (m+n)-mode two-block state.

    The first m modes carry the fully symmetric pattern (a, e1, e2), the
    last n modes the pattern (b, z1, z2), and every cross block between
    the two sides equals diag(g1, g2). Validation assembles the matrix
    and checks the uncertainty relation; both reduced blocks are then
    automatically physical.
    """

    m: int
    n: int
    a: float
    e1: float
    e2: float
    b: float
    z1: float
    z2: float
    g1: float
    g2: float
    min_symplectic_eigenvalue: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidArgumentError(f"block sizes must be >= 1, got ({self.m}, {self.n})")
        if self.m == 1 and (self.e1 != 0.0 or self.e2 != 0.0):
            raise InvalidArgumentError("single-mode first block must have e1 = e2 = 0")
        if self.n == 1 and (self.z1 != 0.0 or self.z2 != 0.0):
            raise InvalidArgumentError("single-mode second block must have z1 = z2 = 0")
        matrix = _assemble_bisymmetric(self)
        try:
            spectrum = symplectic_eigenvalues(CovarianceMatrix(matrix))
            smallest = spectrum.min
        except Exception:
            smallest = -math.inf
        if smallest < 1.0 - TOL_PHYS:
            raise InvalidArgumentError(
                f"unphysical parameters: min symplectic eigenvalue {smallest:.12g} < 1",
                offending_value=smallest,
            )
        object.__setattr__(self, "min_symplectic_eigenvalue", smallest)

    @property
    def total_modes(self) -> int:
        return self.m + self.n

    def alpha_block_spec(self) -> FullySymmetricSpec:
        return FullySymmetricSpec(self.m, self.a, self.e1, self.e2)

    def beta_block_spec(self) -> FullySymmetricSpec:
        return FullySymmetricSpec(self.n, self.b, self.z1, self.z2)

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "a": self.a,
            "e1": self.e1,
            "e2": self.e2,
            "b": self.b,
            "z1": self.z1,
            "z2": self.z2,
            "g1": self.g1,
            "g2": self.g2,
        }


def fully_symmetric_spec_from_json(obj: dict) -> FullySymmetricSpec:
    try:
        return FullySymmetricSpec(
            modes=int(obj["modes"]),
            b=float(obj["b"]),
            z1=float(obj.get("z1", 0.0)),
            z2=float(obj.get("z2", 0.0)),
        )
    except KeyError as exc:
        raise InvalidArgumentError(f"spec object is missing field {exc}") from exc


def bisymmetric_spec_from_json(obj: dict) -> BisymmetricSpec:
    try:
        return BisymmetricSpec(
            m=int(obj["m"]),
            n=int(obj["n"]),
            a=float(obj["a"]),
            e1=float(obj.get("e1", 0.0)),
            e2=float(obj.get("e2", 0.0)),
            b=float(obj["b"]),
            z1=float(obj.get("z1", 0.0)),
            z2=float(obj.get("z2", 0.0)),
            g1=float(obj.get("g1", 0.0)),
            g2=float(obj.get("g2", 0.0)),
        )
    except KeyError as exc:
        raise InvalidArgumentError(f"spec object is missing field {exc}") from exc


def _tile_symmetric_pattern(modes: int, diag2: np.ndarray, off2: np.ndarray) -> np.ndarray:
    out = np.zeros((2 * modes, 2 * modes))
    for i in range(modes):
        for j in range(modes):
            out[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = diag2 if i == j else off2
    return out


def _assemble_bisymmetric(spec: BisymmetricSpec) -> np.ndarray:
    m, n = spec.m, spec.n
    total = m + n
    out = np.zeros((2 * total, 2 * total))
    out[: 2 * m, : 2 * m] = _tile_symmetric_pattern(
        m, np.diag([spec.a, spec.a]), np.diag([spec.e1, spec.e2])
    )
    out[2 * m :, 2 * m :] = _tile_symmetric_pattern(
        n, np.diag([spec.b, spec.b]), np.diag([spec.z1, spec.z2])
    )
    gamma = np.diag([spec.g1, spec.g2])
    for i in range(m):
        for j in range(n):
            out[2 * i : 2 * i + 2, 2 * (m + j) : 2 * (m + j) + 2] = gamma
            out[2 * (m + j) : 2 * (m + j) + 2, 2 * i : 2 * i + 2] = gamma.T
    return out


def thermal_cm(nu_list) -> CovarianceMatrix:
    """Product of single-mode thermal states: diag(nu1, nu1, ..., nuN, nuN)."""
    nus = [float(v) for v in nu_list]
    if not nus:
        raise InvalidArgumentError("need at least one thermal eigenvalue")
    bad = [v for v in nus if v < 1.0 - TOL_PHYS]
    if bad:
        raise InvalidArgumentError(
            f"thermal eigenvalues must be >= 1, got {bad}", offending_value=min(bad)
        )
    return CovarianceMatrix(np.diag(np.repeat(nus, 2)))


def two_mode_squeezed(r: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum with squeezing parameter r >= 0.

    Diagonal blocks cosh(2r) I2, cross block sinh(2r) diag(1, -1); pure for
    every r, with partial-transpose eigenvalues e^{+/- 2r}.
    """
    if r < 0.0:
        raise InvalidArgumentError(f"squeezing parameter must be >= 0, got {r}")
    ch, sh = math.cosh(2.0 * r), math.sinh(2.0 * r)
    return CovarianceMatrix(
        np.array(
            [
                [ch, 0.0, sh, 0.0],
                [0.0, ch, 0.0, -sh],
                [sh, 0.0, ch, 0.0],
                [0.0, -sh, 0.0, ch],
            ]
        )
    )


def fully_symmetric_cm(spec: FullySymmetricSpec) -> CovarianceMatrix:
    """Assemble the permutation-invariant covariance matrix of a spec."""
    diag2 = np.diag([spec.b, spec.b])
    off2 = np.diag([spec.z1, spec.z2])
    return CovarianceMatrix(_tile_symmetric_pattern(spec.modes, diag2, off2))


def bisymmetric_cm(spec: BisymmetricSpec) -> CovarianceMatrix:
    """Assemble the two-block covariance matrix of a spec.

    The first block occupies modes 0..m-1, the second modes m..m+n-1.
    """
    return CovarianceMatrix(_assemble_bisymmetric(spec))


def fs_params_from_invariants(mu_beta: float, mu_beta2: float, delta2: float):
    """Recover standard-form parameters (b, z1, z2) from reduced-state invariants.

    ``mu_beta`` and ``mu_beta2`` are the single-mode and two-mode reduced
    purities, ``delta2`` the block-determinant sum of the two-mode
    reduction. Returns the branch with z2 >= z1:

        b  = 1 / mu_beta
        z1 = mu_beta (eps_minus - eps_plus) / 4
        z2 = mu_beta (eps_minus + eps_plus) / 4

    with eps_minus = sqrt(delta2^2 - 4/mu_beta2^2) and
    eps_plus = sqrt((delta2 - 4/mu_beta^2)^2 - 4/mu_beta2^2).
    """
    if not (0.0 < mu_beta <= 1.0 + TOL_PHYS):
        raise InvalidArgumentError(f"single-mode purity must be in (0, 1], got {mu_beta}")
    if not (0.0 < mu_beta2 <= 1.0 + TOL_PHYS):
        raise InvalidArgumentError(f"two-mode purity must be in (0, 1], got {mu_beta2}")
    four_over_mu2sq = 4.0 / mu_beta2**2
    scale = max(delta2**2, four_over_mu2sq)
    try:
        eps_minus = clipped_sqrt(delta2**2 - four_over_mu2sq, scale=scale)
        eps_plus = clipped_sqrt((delta2 - 4.0 / mu_beta**2) ** 2 - four_over_mu2sq, scale=scale)
    except Exception as exc:
        raise InvalidArgumentError(f"inconsistent invariants: {exc}") from exc
    b = 1.0 / mu_beta
    z1 = 0.25 * mu_beta * (eps_minus - eps_plus)
    z2 = 0.25 * mu_beta * (eps_minus + eps_plus)
    return b, z1, z2


def ghz_type_spec(total_modes: int, b: float) -> FullySymmetricSpec:
    """Standard-form spec of the pure M-mode permutation-invariant state.

    For M >= 2 and single-mode eigenvalue b >= 1 the off-block covariances

        z_{1,2} = [1 + b^2 (M-2) - (M-1)
                   +/- sqrt((b^2 - 1) ((b M)^2 - (M-2)^2))] / [2 b (M-1)]

    are the unique pair making both symplectic eigenvalues equal to 1.
    In the infinite-squeezing limit (b -> inf) these states approach
    simultaneous eigenstates of the relative positions and the total
    momentum.
    """
    if total_modes < 2:
        raise InvalidArgumentError(f"need at least two modes, got {total_modes}")
    if b < 1.0:
        raise InvalidArgumentError(f"single-mode eigenvalue must be >= 1, got {b}")
    big_m = float(total_modes)
    base = 1.0 + b * b * (big_m - 2.0) - (big_m - 1.0)
    root = math.sqrt(max((b * b - 1.0) * ((b * big_m) ** 2 - (big_m - 2.0) ** 2), 0.0))
    denom = 2.0 * b * (big_m - 1.0)
    z1 = (base + root) / denom
    z2 = (base - root) / denom
    return FullySymmetricSpec(total_modes, b, z1, z2)


def ghz_type_pure(total_modes: int, b: float) -> CovarianceMatrix:
    """Covariance matrix of the pure M-mode permutation-invariant state."""
    return fully_symmetric_cm(ghz_type_spec(total_modes, b))
