"""Brute-force reference implementations for the test suite.

Everything here evaluates definitions directly on dense matrices: mirror
reflections are applied entrywise, spectra come from a general dense
eigensolver, and bipartition scans enumerate splits exhaustively. The
routines deliberately avoid the closed-form code paths they are used to
check, and they are allowed to be slow.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidArgumentError, NumericalDomainError
from .states import BisymmetricSpec, FullySymmetricSpec
from .symplectic import CovarianceMatrix

REL_TOL_DEFAULT = 1e-7
ABS_TOL_DEFAULT = 1e-9


def _dense_omega(modes: int) -> np.ndarray:
    omega = np.zeros((2 * modes, 2 * modes))
    omega[0::2, 1::2] = np.eye(modes)
    omega[1::2, 0::2] = -np.eye(modes)
    return omega


def _dense_symplectic_spectrum(matrix: np.ndarray) -> np.ndarray:
    """All paired |Im eigenvalue| of Omega @ matrix, descending."""
    modes = matrix.shape[0] // 2
    eigenvalues = np.linalg.eigvals(_dense_omega(modes) @ matrix)
    magnitudes = np.sort(np.abs(eigenvalues.imag))[::-1]
    return 0.5 * (magnitudes[0::2] + magnitudes[1::2])


def _mirror_momenta(matrix: np.ndarray, flip_modes) -> np.ndarray:
    signs = np.ones(matrix.shape[0])
    for k in flip_modes:
        signs[2 * k + 1] = -1.0
    return matrix * np.outer(signs, signs)


def oracle_symplectic_spectrum(cm: CovarianceMatrix) -> np.ndarray:
    return _dense_symplectic_spectrum(np.array(cm.matrix))


def oracle_pt_log_negativity(cm: CovarianceMatrix, part) -> float:
    """Logarithmic negativity straight from the definitions.

    Mirrors the momentum quadratures of ``part.side_b``, takes the dense
    spectrum of the reflected matrix, and sums -ln over the sub-unit
    symplectic eigenvalues.
    """
    matrix = _mirror_momenta(np.array(cm.matrix), part.side_b)
    nus = _dense_symplectic_spectrum(matrix)
    if not np.all(np.isfinite(nus)):
        raise NumericalDomainError("dense eigensolver returned non-finite spectrum")
    total = -sum(math.log(nu) for nu in nus if nu < 1.0)
    return max(0.0, total)


def oracle_spectrum_multiplicities(
    cm: CovarianceMatrix, tol_cluster: float | None = None
) -> list[tuple[float, int]]:
    """Clustered dense symplectic spectrum, for degeneracy claims."""
    nus = _dense_symplectic_spectrum(np.array(cm.matrix))
    if tol_cluster is None:
        tol_cluster = 1e-7 * max(1.0, float(nus[0]))
    clusters: list[list[float]] = []
    for v in nus:
        if clusters and abs(clusters[-1][0] - v) <= tol_cluster:
            clusters[-1].append(float(v))
        else:
            clusters.append([float(v)])
    return [(sum(c) / len(c), len(c)) for c in clusters]


def exhaustive_bipartition_scan(cm: CovarianceMatrix, max_half: int | None = None):
    """(k, E_N) for every first-k x rest split of a permutation-invariant state.

    Every k-subset of a fully symmetric state is equivalent, so scanning
    contiguous splits is exhaustive. Desk-scale only (M <= 30).
    """
    total = cm.modes
    if total > 30:
        raise InvalidArgumentError(f"scan limited to 30 modes, got {total}")
    from .entanglement import ModeBipartition

    results = []
    upper = total // 2 if max_half is None else min(max_half, total - 1)
    for k in range(1, upper + 1):
        part = ModeBipartition(tuple(range(k)), tuple(range(k, total)))
        results.append((k, oracle_pt_log_negativity(cm, part)))
    return results


# ---------------------------------------------------------------------------
# Randomized inputs. Parameters are drawn uniformly from fixed boxes and
# unphysical draws are rejected, so boundary cases stay in the ensemble;
# the sampler keeps rejection counts for reporting.
# ---------------------------------------------------------------------------


def random_symplectic(modes: int, rng: np.random.Generator, strength: float = 0.3) -> np.ndarray:
    """exp(Omega A) for a random symmetric A; strength scales A."""
    a = rng.normal(size=(2 * modes, 2 * modes))
    a = strength * 0.5 * (a + a.T)
    return scipy.linalg.expm(_dense_omega(modes) @ a)


def random_local_symplectic(m: int, n: int, rng: np.random.Generator, strength: float = 0.3):
    return scipy.linalg.block_diag(
        random_symplectic(m, rng, strength), random_symplectic(n, rng, strength)
    )


def random_bona_fide_cm(
    modes: int,
    rng: np.random.Generator,
    max_thermal: float = 3.0,
    strength: float = 0.3,
) -> CovarianceMatrix:
    """S^T diag(nu...) S for random thermal eigenvalues and random symplectic S."""
    nus = 1.0 + (max_thermal - 1.0) * rng.random(modes)
    s = random_symplectic(modes, rng, strength)
    return CovarianceMatrix(s.T @ np.diag(np.repeat(nus, 2)) @ s)


class SpecSampler:
    """Rejection sampler for standard-form specs over fixed parameter boxes."""

    def __init__(
        self,
        seed,
        b_box=(1.0, 3.0),
        corr_box=(-0.8, 0.8),
        cross_box=(-0.6, 0.6),
        max_block: int = 6,
        max_tries: int = 10_000,
    ):
        self.rng = np.random.default_rng(seed)
        self.b_box = b_box
        self.corr_box = corr_box
        self.cross_box = cross_box
        self.max_block = max_block
        self.max_tries = max_tries
        self.attempts = 0
        self.accepted = 0

    @property
    def rejection_rate(self) -> float:
        if self.attempts == 0:
            return 0.0
        return 1.0 - self.accepted / self.attempts

    def _uniform(self, box) -> float:
        return float(self.rng.uniform(*box))

    def fully_symmetric(self, modes: int | None = None) -> FullySymmetricSpec:
        for _ in range(self.max_tries):
            self.attempts += 1
            n = modes if modes is not None else int(self.rng.integers(2, self.max_block + 1))
            try:
                spec = FullySymmetricSpec(
                    n, self._uniform(self.b_box), self._uniform(self.corr_box), self._uniform(self.corr_box)
                )
            except InvalidArgumentError:
                continue
            self.accepted += 1
            return spec
        raise RuntimeError("rejection sampling failed to produce a physical spec")

    def bisymmetric(self, m: int | None = None, n: int | None = None) -> BisymmetricSpec:
        for _ in range(self.max_tries):
            self.attempts += 1
            mm = m if m is not None else int(self.rng.integers(1, self.max_block + 1))
            nn = n if n is not None else int(self.rng.integers(1, self.max_block + 1))
            try:
                spec = BisymmetricSpec(
                    m=mm,
                    n=nn,
                    a=self._uniform(self.b_box),
                    e1=self._uniform(self.corr_box) if mm > 1 else 0.0,
                    e2=self._uniform(self.corr_box) if mm > 1 else 0.0,
                    b=self._uniform(self.b_box),
                    z1=self._uniform(self.corr_box) if nn > 1 else 0.0,
                    z2=self._uniform(self.corr_box) if nn > 1 else 0.0,
                    g1=self._uniform(self.cross_box),
                    g2=self._uniform(self.cross_box),
                )
            except InvalidArgumentError:
                continue
            self.accepted += 1
            return spec
        raise RuntimeError("rejection sampling failed to produce a physical spec")

    def separable_bisymmetric(self, m: int | None = None, n: int | None = None) -> BisymmetricSpec:
        """Product (g = 0) or classically correlated (g1 = g2 > 0) draws."""
        for _ in range(self.max_tries):
            self.attempts += 1
            mm = m if m is not None else int(self.rng.integers(1, self.max_block + 1))
            nn = n if n is not None else int(self.rng.integers(1, self.max_block + 1))
            if self.rng.random() < 0.5:
                g1 = g2 = 0.0
            else:
                # same-sign x-x and p-p correlations between thermal blocks
                # arise from mixing product states, hence stay separable
                g1 = g2 = float(self.rng.uniform(0.0, self.cross_box[1]))
            try:
                spec = BisymmetricSpec(
                    m=mm,
                    n=nn,
                    a=self._uniform((1.2, self.b_box[1])),
                    e1=self._uniform(self.corr_box) / 2 if mm > 1 else 0.0,
                    e2=self._uniform(self.corr_box) / 2 if mm > 1 else 0.0,
                    b=self._uniform((1.2, self.b_box[1])),
                    z1=self._uniform(self.corr_box) / 2 if nn > 1 else 0.0,
                    z2=self._uniform(self.corr_box) / 2 if nn > 1 else 0.0,
                    g1=g1,
                    g2=g2,
                )
            except InvalidArgumentError:
                continue
            self.accepted += 1
            return spec
        raise RuntimeError("rejection sampling failed to produce a physical spec")


# ---------------------------------------------------------------------------
# Comparison reports.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OracleReport:
    """One closed-form vs brute-force comparison."""

    quantity: str
    closed_form: float
    brute_force: float
    abs_diff: float
    rel_diff: float
    passed: bool

    @classmethod
    def compare(
        cls,
        quantity: str,
        closed_form: float,
        brute_force: float,
        rel_tol: float = REL_TOL_DEFAULT,
        abs_tol: float = ABS_TOL_DEFAULT,
    ) -> "OracleReport":
        abs_diff = abs(closed_form - brute_force)
        denom = max(abs(closed_form), abs(brute_force))
        rel_diff = abs_diff / denom if denom > 0.0 else 0.0
        passed = abs_diff <= abs_tol or rel_diff <= rel_tol
        return cls(quantity, closed_form, brute_force, abs_diff, rel_diff, passed)


def reports_to_csv_text(reports) -> str:
    import io

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["quantity", "closed_form", "brute_force", "abs_diff", "rel_diff", "pass"])
    for r in reports:
        writer.writerow(
            [
                r.quantity,
                f"{r.closed_form:.17g}",
                f"{r.brute_force:.17g}",
                f"{r.abs_diff:.6g}",
                f"{r.rel_diff:.6g}",
                str(r.passed).lower(),
            ]
        )
    return buffer.getvalue()


def summarize_reports(reports, seed, cases=None) -> dict:
    return {
        "cases": len(reports) if cases is None else cases,
        "comparisons": len(reports),
        "passes": sum(1 for r in reports if r.passed),
        "worst_rel_diff": max((r.rel_diff for r in reports), default=0.0),
        "seed": seed,
    }


def run_oracle_suite(cases: int = 500, seed: int = 4242, max_block: int = 6):
    """Cross-check the three logarithmic-negativity routes on random specs.

    For each sampled two-block spec the value is computed (a) from the
    equivalent-state invariants, (b) from the constructive reduction of the
    assembled matrix, and (c) by the brute-force reflected-spectrum route,
    and the pairwise comparisons are reported.
    """
    from .entanglement import ModeBipartition
    from .localization import equivalent_report, localize
    from .states import bisymmetric_cm

    sampler = SpecSampler(seed, max_block=max_block)
    two_mode_split = ModeBipartition((0,), (1,))
    reports: list[OracleReport] = []
    for index in range(cases):
        spec = sampler.bisymmetric()
        cm = bisymmetric_cm(spec)
        part = ModeBipartition(tuple(range(spec.m)), tuple(range(spec.m, spec.total_modes)))

        en_invariant = equivalent_report(spec).log_negativity
        loc = localize(cm, spec.m, spec.n)
        en_constructive = oracle_pt_log_negativity(loc.equivalent.cm_eq, two_mode_split)
        en_brute = oracle_pt_log_negativity(cm, part)

        label = f"case{index:04d}_m{spec.m}n{spec.n}"
        reports.append(OracleReport.compare(f"{label}_invariant_vs_brute", en_invariant, en_brute))
        reports.append(
            OracleReport.compare(f"{label}_constructive_vs_brute", en_constructive, en_brute)
        )
        reports.append(
            OracleReport.compare(f"{label}_invariant_vs_constructive", en_invariant, en_constructive)
        )
    return reports, summarize_reports(reports, seed, cases=cases), sampler.rejection_rate


def write_suite_outputs(reports, summary, csv_path=None, json_path=None):
    if csv_path is not None:
        with open(csv_path, "w", encoding="utf-8") as handle:
            handle.write(reports_to_csv_text(reports))
    if json_path is not None:
        with open(json_path, "w", encoding="utf-8") as handle:
            json.dump(summary, handle, indent=2, sort_keys=True)
            handle.write("\n")
