"""First-order perturbation theory under H' = beta * z * V(theta).

Because the unperturbed states factor into a z part and a theta part, every
matrix element factors too::

    H_ij = (beta / (pi L)) * Z(n_z_i, n_z_j) * I(n_theta_j - n_theta_i)

with ``Z`` the z-weighted overlap of two box states (:func:`z_overlap`) and
``I`` the angular moment of the potential. The 1/(pi R L) normalization and
the surface element R dtheta dz cancel the radius exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_REL_TOL,
    CylinderGeometry,
    DegeneracyGroup,
    QuantumNumbers,
    degeneracy_groups,
    energy,
    spectrum,
)
from .errors import DegenerateDenominatorError, InadmissiblePotentialError
from .linalg import check_hermitian, jacobi_eigh
from .potential import PotentialSpec, TermKind, admissibility, moment

HERMITIAN_RTOL = 1e-10

LOW_PAIRS = (
    QuantumNumbers(1, 1),
    QuantumNumbers(1, 2),
    QuantumNumbers(2, 1),
    QuantumNumbers(2, 2),
    QuantumNumbers(1, 3),
    QuantumNumbers(3, 1),
    QuantumNumbers(2, 3),
    QuantumNumbers(3, 2),
)


def z_overlap(n_i: int, n_j: int, L: float = 1.0) -> float:
    """``integral_0^L z sin(n_i pi z / L) sin(n_j pi z / L) dz`` in closed form."""
    if n_i < 1 or n_j < 1:
        raise ValueError("quantum numbers must be >= 1")
    if n_i == n_j:
        return L * L / 4.0
    if (n_i + n_j) % 2 == 0:
        return 0.0
    d, s = n_i - n_j, n_i + n_j
    return L * L / (2.0 * math.pi**2) * (-2.0 / d**2 + 2.0 / s**2)


def _prefactor(beta: float, geom: CylinderGeometry) -> float:
    return beta / (math.pi * geom.length)


def matrix_element(
    qn_i: QuantumNumbers,
    qn_j: QuantumNumbers,
    spec: PotentialSpec,
    beta: float,
    geom: CylinderGeometry,
) -> complex:
    """<i| beta z V(theta) |j> for two unperturbed states."""
    zo = z_overlap(qn_i.n_z, qn_j.n_z, geom.length)
    if zo == 0.0 or beta == 0.0:
        return 0j
    return _prefactor(beta, geom) * zo * moment(spec, qn_j.n_theta - qn_i.n_theta)


def nondegenerate_correction(
    qn: QuantumNumbers, spec: PotentialSpec, beta: float, geom: CylinderGeometry
) -> float:
    """Diagonal shift beta * L * I(0) / (4 pi); identical for every state."""
    return beta * geom.length * moment(spec, 0).real / (4.0 * math.pi)


@dataclass(frozen=True)
class PerturbationBlock:
    group: DegeneracyGroup
    matrix: np.ndarray = field(repr=False)

    @property
    def basis_order(self) -> tuple[QuantumNumbers, ...]:
        return self.group.members

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class CorrectionResult:
    corrections: np.ndarray
    mixing: np.ndarray = field(repr=False)


def build_block(
    group: DegeneracyGroup, spec: PotentialSpec, beta: float, geom: CylinderGeometry
) -> PerturbationBlock:
    members = group.members
    k = len(members)
    h = np.empty((k, k), dtype=complex)
    for a, qa in enumerate(members):
        for b, qb in enumerate(members):
            h[a, b] = matrix_element(qa, qb, spec, beta, geom)
    check_hermitian(h, HERMITIAN_RTOL)
    h.setflags(write=False)
    return PerturbationBlock(group, h)


def phase_pivot(v: np.ndarray) -> int:
    """First index whose modulus is within 1e-12 of the largest (ties by position)."""
    mod = np.abs(v)
    return int(np.flatnonzero(mod >= mod.max() * (1.0 - 1e-12))[0])


def _fix_phase(vectors: np.ndarray) -> np.ndarray:
    vectors = vectors.copy()
    for col in range(vectors.shape[1]):
        v = vectors[:, col]
        p = phase_pivot(v)
        v *= abs(v[p]) / v[p]
        v /= np.linalg.norm(v)
        v[p] = abs(v[p])
    return vectors


def solve_block(block: PerturbationBlock) -> CorrectionResult:
    """Eigenvalues (ascending) and eigenvectors of the degenerate block.

    Each eigenvector column is normalized with its largest-modulus entry made
    real and positive; among entries of equal modulus the first one is used.
    """
    w, v = jacobi_eigh(block.matrix)
    return CorrectionResult(corrections=w, mixing=_fix_phase(v))


def secular_2x2(h: np.ndarray) -> tuple[float, float]:
    """Closed-form roots of the 2x2 secular equation, (lower, upper)."""
    haa, hbb = h[0, 0].real, h[1, 1].real
    disc = (haa - hbb) ** 2 + 4.0 * (h[0, 1] * h[1, 0]).real
    root = math.sqrt(max(disc, 0.0))
    mean = 0.5 * (haa + hbb)
    return mean - 0.5 * root, mean + 0.5 * root


def splitting_rule(n_zi: int, n_zj: int) -> bool:
    """True when two distinct z levels are coupled by z, i.e. n_zi + n_zj is odd."""
    return (n_zi + n_zj) % 2 == 1


def literal_splitting_rule(n_zi: int, n_zj: int) -> bool:
    """The narrower |n_zi - n_zj| == 1 form of the rule."""
    return abs(n_zi - n_zj) == 1


def splitting_rule_divergences(max_n: int) -> list[tuple[int, int]]:
    """Pairs (i < j <= max_n) coupled by z although |i - j| != 1."""
    return [
        (i, j)
        for i in range(1, max_n + 1)
        for j in range(i + 1, max_n + 1)
        if splitting_rule(i, j) and not literal_splitting_rule(i, j)
    ]


@dataclass(frozen=True)
class StateCorrection:
    target: QuantumNumbers
    coefficients: dict
    cutoff: tuple[int, int]

    @property
    def weight(self) -> float:
        return math.fsum(abs(c) ** 2 for c in self.coefficients.values())


def potential_scale(spec: PotentialSpec) -> float:
    """Rough magnitude of V on [0, 2 pi], used for relative zero tests."""
    total = 0.0
    for t in spec.terms:
        reach = (2.0 * math.pi) ** t.parameter if t.kind is TermKind.MONOMIAL else 1.0
        total += abs(t.amplitude) * reach
    return total


def state_correction(
    qn: QuantumNumbers,
    spec: PotentialSpec,
    beta: float,
    geom: CylinderGeometry,
    max_nz: int,
    max_ntheta: int,
    rel_tol: float = DEFAULT_REL_TOL,
) -> StateCorrection:
    """First-order mixing coefficients c_m = H_mn / (E_n - E_m).

    Only states inside the rectangle n_z <= max_nz, n_theta <= max_ntheta are
    considered and entries that vanish by the selection rules are omitted.
    Raises :class:`DegenerateDenominatorError` if another state in the
    rectangle shares the target's energy.
    """
    e_n = energy(qn, geom)
    zero = 1e-13 * abs(beta) * geom.length * potential_scale(spec)
    coefficients = {}
    for level in spectrum(geom, max_nz, max_ntheta):
        m = level.qn
        if m == qn:
            continue
        gap = e_n - level.energy
        if abs(gap) <= rel_tol * max(e_n, level.energy):
            raise DegenerateDenominatorError(
                f"{m} is degenerate with {qn}; use the degenerate block instead"
            )
        h = matrix_element(m, qn, spec, beta, geom)
        if abs(h) > zero:
            coefficients[m] = h / gap
    return StateCorrection(qn, dict(sorted(coefficients.items())), (max_nz, max_ntheta))


# -- reproduction of the low-excitation tables ----------------------------------

@dataclass(frozen=True)
class TableRow:
    members: tuple[QuantumNumbers, ...]
    degenerate: bool
    E0: float
    H: np.ndarray = field(repr=False)
    E1: tuple[float, ...]
    notes: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return "/".join(str(q) for q in self.members)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "pair": [[q.n_z, q.n_theta] for q in self.members],
            "degenerate": self.degenerate,
            "E0": self.E0,
            "H": [[z.real, z.imag] for z in self.H.ravel()],
            "E1": list(self.E1),
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class TablesReport:
    spec: PotentialSpec
    beta: float
    length: float
    I0: complex
    I1: complex
    I2: complex
    rows: tuple[TableRow, ...]

    def splitting_rows(self) -> list[tuple[str, float, float, float]]:
        """(label, E0, E0 + lowest E1, E0 + highest E1) per level."""
        return [(r.label, r.E0, r.E0 + min(r.E1), r.E0 + max(r.E1)) for r in self.rows]

    def to_rows(self) -> list[dict]:
        return [r.to_dict() for r in self.rows]


def paper_tables(spec: PotentialSpec, beta: float, geom_L: float = 1.0) -> TablesReport:
    """Blocks, corrections and shifted levels for the eight lowest pairs at R = L / pi.

    Raises :class:`InadmissiblePotentialError` when I(+-1) are not both real
    and nonzero, since the square root in the 2x2 roots has no real branch.
    """
    report = admissibility(spec)
    if not report.admissible:
        raise InadmissiblePotentialError(report)
    geom = CylinderGeometry.degenerate(geom_L)
    levels = sorted(
        (lv for lv in spectrum(geom, 3, 3) if lv.qn in LOW_PAIRS),
        key=lambda lv: (lv.energy, lv.qn.n_z, lv.qn.n_theta),
    )
    i0 = moment(spec, 0)
    rows = []
    for group in degeneracy_groups(levels):
        block = build_block(group, spec, beta, geom)
        result = solve_block(block)
        notes = []
        if group.is_degenerate:
            a, b = group.members[0], group.members[-1]
            if not splitting_rule(a.n_z, b.n_z) and abs(i0) > 1e-12 and beta != 0.0:
                notes.append("diagonal nonzero: I0 != 0 shifts both states equally")
            if splitting_rule(a.n_z, b.n_z) != literal_splitting_rule(a.n_z, b.n_z):
                notes.append("general splitting rule differs from |dn_z| = 1 form")
        rows.append(
            TableRow(
                members=group.members,
                degenerate=group.is_degenerate,
                E0=group.energy,
                H=np.array(block.matrix),
                E1=tuple(float(x) for x in result.corrections),
                notes=tuple(notes),
            )
        )
    return TablesReport(spec, beta, geom_L, i0, report.I1, report.I2, tuple(rows))
