"""Brute-force ground truth: 2-D quadrature and truncated-basis diagonalization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_REL_TOL,
    CylinderGeometry,
    DegeneracyGroup,
    QuantumNumbers,
    energy,
    wavefunction,
)
from .errors import BasisTooSmallError
from .linalg import check_hermitian, jacobi_eigh
from .perturbation import build_block, matrix_element, solve_block, z_overlap
from .potential import PotentialSpec, evaluate, moment
from .quadrature import TWO_PI, gauss_legendre, integrate

BOUNDARY_WEIGHT_TOL = 1e-6


@dataclass(frozen=True)
class TruncatedBasis:
    """All states with n_z <= max_nz and n_theta <= max_ntheta.

    Ordered lexicographically by (n_z, n_theta): index = (n_z - 1) * max_ntheta
    + (n_theta - 1).
    """

    max_nz: int
    max_ntheta: int

    def __post_init__(self):
        if self.max_nz < 1 or self.max_ntheta < 1:
            raise ValueError("basis bounds must be >= 1")

    @property
    def states(self) -> tuple[QuantumNumbers, ...]:
        return tuple(
            QuantumNumbers(nz, nt)
            for nz in range(1, self.max_nz + 1)
            for nt in range(1, self.max_ntheta + 1)
        )

    @property
    def size(self) -> int:
        return self.max_nz * self.max_ntheta

    def index(self, qn: QuantumNumbers) -> int:
        if qn.n_z > self.max_nz or qn.n_theta > self.max_ntheta:
            raise KeyError(f"{qn} is outside the basis")
        return (qn.n_z - 1) * self.max_ntheta + (qn.n_theta - 1)

    def __contains__(self, qn) -> bool:
        return qn.n_z <= self.max_nz and qn.n_theta <= self.max_ntheta

    def on_boundary(self, qn: QuantumNumbers) -> bool:
        return qn.n_z == self.max_nz or qn.n_theta == self.max_ntheta


@dataclass(frozen=True)
class SpectralResult:
    eigenvalues: np.ndarray
    basis: TruncatedBasis
    beta: float
    eigenvectors: np.ndarray | None = field(default=None, repr=False)


def assemble_hamiltonian(
    basis: TruncatedBasis, spec: PotentialSpec, beta: float, geom: CylinderGeometry
) -> np.ndarray:
    """Unperturbed energies on the diagonal plus the full perturbation matrix."""
    states = basis.states
    nz = np.array([q.n_z for q in states])
    nt = np.array([q.n_theta for q in states])
    zmat = np.array(
        [[z_overlap(a, b, geom.length) for b in range(1, basis.max_nz + 1)]
         for a in range(1, basis.max_nz + 1)]
    )
    span = basis.max_ntheta - 1
    moments = {m: moment(spec, m) for m in range(-span, span + 1)}
    dtheta = nt[None, :] - nt[:, None]
    mmat = np.vectorize(moments.__getitem__, otypes=[complex])(dtheta)
    h = (beta / (math.pi * geom.length)) * zmat[nz[:, None] - 1, nz[None, :] - 1] * mmat
    h[np.diag_indices_from(h)] += np.array([energy(q, geom) for q in states])
    return h


def exact_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Full spectrum of a Hermitian matrix, ascending (cyclic Jacobi)."""
    check_hermitian(h)
    return jacobi_eigh(h)[0]


def diagonalize(
    basis: TruncatedBasis, spec: PotentialSpec, beta: float, geom: CylinderGeometry
) -> SpectralResult:
    w, v = jacobi_eigh(assemble_hamiltonian(basis, spec, beta, geom))
    return SpectralResult(w, basis, beta, v)


def quadrature_element(
    qn_i: QuantumNumbers,
    qn_j: QuantumNumbers,
    spec: PotentialSpec | None,
    beta: float,
    geom: CylinderGeometry,
    nodes_theta: int = 256,
    nodes_z: int = 256,
    norm_mode: bool = False,
) -> complex:
    """Direct 2-D integration of conj(psi_i) * beta z V(theta) * psi_j * R.

    Works from the wavefunctions on a full product grid with no separation
    of variables. With ``norm_mode`` the operator is the identity and the
    result is the overlap <i|j>.
    """
    if nodes_theta < 64 or nodes_z < 64:
        raise ValueError("need at least 64 nodes in each direction")
    theta, wt = gauss_legendre(0.0, TWO_PI, nodes_theta)
    z, wz = gauss_legendre(0.0, geom.length, nodes_z)
    th, zz = np.meshgrid(theta, z, indexing="ij")
    integrand = np.conj(wavefunction(qn_i, geom, th, zz)) * wavefunction(qn_j, geom, th, zz)
    if not norm_mode:
        integrand = integrand * beta * zz * evaluate(spec, th)
    return complex(integrate(integrand * geom.radius, wt[:, None] * wz[None, :]))


# -- slope check -------------------------------------------------------------

@dataclass(frozen=True)
class SlopeSample:
    beta: float
    slope: float
    residual: float


@dataclass(frozen=True)
class LevelSlope:
    predicted: float
    samples: tuple[SlopeSample, ...]

    @property
    def ratios(self) -> tuple[float, ...]:
        out = []
        for a, b in zip(self.samples, self.samples[1:]):
            out.append(a.residual / b.residual if b.residual > 0.0 else math.inf)
        return tuple(out)


@dataclass(frozen=True)
class SlopeReport:
    group: DegeneracyGroup
    E0: float
    basis: TruncatedBasis
    levels: tuple[LevelSlope, ...]
    boundary_weight: float

    def passes(self, residual_factor: float = 5.0, ratio_range=(5.0, 20.0)) -> bool:
        lo, hi = ratio_range
        for level in self.levels:
            if any(s.residual > residual_factor * s.beta for s in level.samples):
                return False
            if any(not lo <= r <= hi for r in level.ratios):
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "group": [[q.n_z, q.n_theta] for q in self.group.members],
            "E0": self.E0,
            "basis": [self.basis.max_nz, self.basis.max_ntheta],
            "boundary_weight": self.boundary_weight,
            "levels": [
                {
                    "predicted": lv.predicted,
                    "samples": [
                        {"beta": s.beta, "slope": s.slope, "residual": s.residual}
                        for s in lv.samples
                    ],
                    "ratios": list(lv.ratios),
                }
                for lv in self.levels
            ],
        }


def target_group(target, basis: TruncatedBasis, geom: CylinderGeometry, rel_tol: float) -> DegeneracyGroup:
    if isinstance(target, DegeneracyGroup):
        return target
    e = energy(target, geom)
    members = tuple(
        q for q in basis.states if abs(energy(q, geom) - e) <= rel_tol * max(e, energy(q, geom))
    )
    if target not in members:
        members = members + (target,)
    return DegeneracyGroup(members, e)


def _boundary_weight(group, spec, beta, geom, basis, rel_tol) -> float:
    """First-order weight that the target states place on basis-edge states."""
    total = 0.0
    for qn in group.members:
        e_n = energy(qn, geom)
        for m in basis.states:
            if m in group.members or not basis.on_boundary(m):
                continue
            gap = e_n - energy(m, geom)
            if abs(gap) <= rel_tol * e_n:
                continue
            total += abs(matrix_element(m, qn, spec, beta, geom) / gap) ** 2
    return total


def perturbation_slope_check(
    target: QuantumNumbers | DegeneracyGroup,
    spec: PotentialSpec,
    geom: CylinderGeometry,
    betas=(1e-2, 1e-3, 1e-4),
    basis: TruncatedBasis | None = None,
    rel_tol: float = DEFAULT_REL_TOL,
) -> SlopeReport:
    """Compare exact eigenvalue slopes (lambda(beta) - E0) / beta with E1.

    The levels belonging to the target are followed by eigenvector weight on
    the target subspace, so crossings with other levels cannot mix them up.
    Raises :class:`BasisTooSmallError` if a target state sits on the basis
    edge or its first-order admixture of edge states exceeds 1e-6.
    """
    basis = basis or TruncatedBasis(12, 12)
    betas = [float(b) for b in betas]
    if not betas or any(b <= 0 for b in betas) or betas != sorted(betas, reverse=True):
        raise ValueError("betas must be a descending list of positive numbers")
    group = target_group(target, basis, geom, rel_tol)
    for qn in group.members:
        if qn not in basis or basis.on_boundary(qn):
            raise BasisTooSmallError(f"{qn} is not strictly inside the {basis.max_nz}x{basis.max_ntheta} basis")
    weight = _boundary_weight(group, spec, betas[0], geom, basis, rel_tol)
    if weight > BOUNDARY_WEIGHT_TOL:
        raise BasisTooSmallError(
            f"first-order weight {weight:.3e} on basis edge exceeds {BOUNDARY_WEIGHT_TOL:g}"
        )

    e0 = energy(group.members[0], geom)
    predicted = solve_block(build_block(group, spec, 1.0, geom)).corrections
    idx = [basis.index(q) for q in group.members]
    k = len(idx)
    slopes = []
    for beta in betas:
        result = diagonalize(basis, spec, beta, geom)
        overlap = np.sum(np.abs(result.eigenvectors[idx, :]) ** 2, axis=0)
        picked = np.sort(np.argsort(-overlap, kind="stable")[:k])
        slopes.append((result.eigenvalues[picked] - e0) / beta)
    levels = tuple(
        LevelSlope(
            predicted=float(predicted[a]),
            samples=tuple(
                SlopeSample(beta, float(s[a]), float(abs(s[a] - predicted[a])))
                for beta, s in zip(betas, slopes)
            ),
        )
        for a in range(k)
    )
    return SlopeReport(group, e0, basis, levels, weight)

