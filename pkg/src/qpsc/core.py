"""Unperturbed eigenstates of a particle confined to a cylinder surface.

The angular coordinate is periodic with quantum number ``n_theta >= 1`` and
the axial coordinate is a box of length L with Dirichlet nodes at both ends:

    psi(theta, z) = sin(n_z pi z / L) exp(i n_theta theta) / sqrt(pi R L)
    E = n_z^2 pi^2 hbar^2 / (2 m L^2) + hbar^2 n_theta^2 / (2 m R^2)

At R = L / pi the two terms share a prefactor and the spectrum is
proportional to n_z^2 + n_theta^2, which produces exact degeneracies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import gauss_legendre, integrate, trapezoid_periodic

DEFAULT_REL_TOL = 1e-9


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    n_z: int
    n_theta: int

    def __post_init__(self):
        for name in ("n_z", "n_theta"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise DomainError(f"{name} must be >= 1, got {value}")
            object.__setattr__(self, name, int(value))

    def swapped(self) -> "QuantumNumbers":
        return QuantumNumbers(self.n_theta, self.n_z)

    def __str__(self):
        return f"({self.n_z},{self.n_theta})"


def _positive_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True)
class CylinderGeometry:
    """Cylinder radius and length plus the particle mass and hbar.

    Natural units (m = hbar = 1, L = 1) are the defaults; the radius has no
    default. Use :meth:`degenerate` for the R = L / pi geometry.
    """

    radius: float
    length: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("radius", "length", "mass", "hbar"):
            object.__setattr__(self, name, _positive_finite(name, getattr(self, name)))

    @classmethod
    def degenerate(cls, length: float = 1.0, mass: float = 1.0, hbar: float = 1.0):
        return cls(radius=length / math.pi, length=length, mass=mass, hbar=hbar)

    @property
    def is_degenerate(self) -> bool:
        return math.isclose(self.radius * math.pi, self.length, rel_tol=1e-12)


@dataclass(frozen=True)
class EnergyLevel:
    qn: QuantumNumbers
    energy: float


@dataclass(frozen=True)
class DegeneracyGroup:
    members: tuple[QuantumNumbers, ...]
    energy: float

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        if not members:
            raise ValueError("a degeneracy group needs at least one member")
        object.__setattr__(self, "members", members)

    @property
    def multiplicity(self) -> int:
        return len(self.members)

    @property
    def is_degenerate(self) -> bool:
        return len(self.members) > 1


def energy(qn: QuantumNumbers, geom: CylinderGeometry) -> float:
    axial = (qn.n_z * math.pi * geom.hbar / geom.length) ** 2 / (2.0 * geom.mass)
    angular = (geom.hbar * qn.n_theta / geom.radius) ** 2 / (2.0 * geom.mass)
    return axial + angular


def _check_z(z, length: float) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if np.any(~np.isfinite(z)) or np.any(z < 0.0) or np.any(z > length):
        raise DomainError(f"z must lie in [0, {length}]")
    return z


def wavefunction(qn: QuantumNumbers, geom: CylinderGeometry, theta, z):
    """Normalized amplitude; broadcasts over array ``theta`` and ``z``."""
    z = _check_z(z, geom.length)
    theta = np.asarray(theta, dtype=float)
    norm = 1.0 / math.sqrt(math.pi * geom.radius * geom.length)
    out = norm * np.sin(qn.n_z * math.pi * z / geom.length) * np.exp(1j * qn.n_theta * theta)
    return out[()] if out.ndim == 0 else out


def probability_density(qn: QuantumNumbers, geom: CylinderGeometry, theta, z):
    z = _check_z(z, geom.length)
    theta = np.asarray(theta, dtype=float)
    s = np.sin(qn.n_z * math.pi * z / geom.length)
    out = np.broadcast_to(s * s / (math.pi * geom.radius * geom.length), np.broadcast(theta, z).shape)
    out = np.array(out)
    return out[()] if out.ndim == 0 else out


def spectrum(geom: CylinderGeometry, max_nz: int, max_ntheta: int) -> list[EnergyLevel]:
    """All levels with n_z <= max_nz and n_theta <= max_ntheta, ascending.

    Ties (equal floating point energies) are ordered by (n_z, n_theta).
    """
    if max_nz < 1 or max_ntheta < 1:
        raise DomainError("enumeration bounds must be >= 1")
    levels = [
        EnergyLevel(qn, energy(qn, geom))
        for qn in (
            QuantumNumbers(nz, nt)
            for nz in range(1, max_nz + 1)
            for nt in range(1, max_ntheta + 1)
        )
    ]
    levels.sort(key=lambda lv: (lv.energy, lv.qn.n_z, lv.qn.n_theta))
    return levels


def degeneracy_groups(
    levels: list[EnergyLevel], rel_tol: float = DEFAULT_REL_TOL
) -> list[DegeneracyGroup]:
    """Partition a sorted level list into groups of (nearly) equal energy.

    Adjacent levels are linked when ``|E_i - E_j| <= rel_tol * max(E_i, E_j)``
    and groups are the connected runs of linked levels. The group energy is
    the mean of its members.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    runs: list[list[EnergyLevel]] = []
    for level in levels:
        if runs:
            prev = runs[-1][-1]
            if abs(level.energy - prev.energy) <= rel_tol * max(abs(level.energy), abs(prev.energy)):
                runs[-1].append(level)
                continue
        runs.append([level])
    return [
        DegeneracyGroup(
            members=tuple(lv.qn for lv in run),
            energy=math.fsum(lv.energy for lv in run) / len(run),
        )
        for run in runs
    ]


def group_of(qn: QuantumNumbers, geom: CylinderGeometry, max_nz: int, max_ntheta: int,
             rel_tol: float = DEFAULT_REL_TOL) -> DegeneracyGroup:
    """The degeneracy group containing ``qn`` within an enumeration rectangle."""
    max_nz = max(max_nz, qn.n_z)
    max_ntheta = max(max_ntheta, qn.n_theta)
    for group in degeneracy_groups(spectrum(geom, max_nz, max_ntheta), rel_tol):
        if qn in group.members:
            return group
    raise AssertionError("unreachable: every level belongs to a group")


def normalization_residual(
    qn: QuantumNumbers, geom: CylinderGeometry, quadrature_nodes: int = 256
) -> float:
    """|integral of |psi|^2 over the surface - 1| on a 2-D product grid.

    Uses the surface element R dtheta dz; trapezoid nodes in theta and
    Gauss-Legendre nodes in z, ``quadrature_nodes`` in each direction.
    """
    if quadrature_nodes < 32:
        raise ValueError("quadrature_nodes must be >= 32")
    theta, wt = trapezoid_periodic(quadrature_nodes)
    z, wz = gauss_legendre(0.0, geom.length, quadrature_nodes)
    psi = wavefunction(qn, geom, theta[:, None], z[None, :])
    total = integrate(np.abs(psi) ** 2 * geom.radius, wt[:, None] * wz[None, :])
    return abs(total - 1.0)
