"""Oracle checks run by ``qpsc verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import CylinderGeometry, QuantumNumbers, normalization_residual
from .errors import BasisTooSmallError, SingularParameterError
from .linalg import hermiticity_defect
from .oracle import (
    TruncatedBasis,
    target_group,
    assemble_hamiltonian,
    perturbation_slope_check,
    quadrature_element,
)
from .perturbation import (
    build_block,
    matrix_element,
    nondegenerate_correction,
    potential_scale,
    z_overlap,
)
from .potential import (
    PotentialSpec,
    admissibility,
    angular_moment,
    angular_moment_closed,
)
from .quadrature import gauss_legendre, integrate


@dataclass
class Check:
    name: str
    passed: bool
    predicted: float | None = None
    observed: float | None = None
    tolerance: float | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "predicted": self.predicted,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerifyConfig:
    spec: PotentialSpec
    geom: CylinderGeometry
    state: QuantumNumbers = QuantumNumbers(1, 2)
    basis: TruncatedBasis = TruncatedBasis(12, 12)
    betas: tuple[float, ...] = (1e-2, 1e-3, 1e-4)
    quadrature_nodes: int = 256
    check_complexity: bool = False


@dataclass
class VerifyReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _z_quadrature(n_i: int, n_j: int, L: float, nodes: int = 256) -> float:
    z, w = gauss_legendre(0.0, L, nodes)
    return integrate(z * np.sin(n_i * math.pi * z / L) * np.sin(n_j * math.pi * z / L), w)


def run_verification(cfg: VerifyConfig) -> VerifyReport:
    report = VerifyReport()
    add = report.checks.append
    spec, geom = cfg.spec, cfg.geom
    group = target_group(cfg.state, cfg.basis, geom, 1e-9)
    scale = abs(cfg.betas[0]) * geom.length * potential_scale(spec)

    for qn in group.members:
        r = normalization_residual(qn, geom, cfg.quadrature_nodes)
        add(Check(f"normalization {qn}", r <= 1e-10, 0.0, r, 1e-10))

    other = QuantumNumbers(cfg.state.n_z + 1, cfg.state.n_theta)
    ov = abs(quadrature_element(cfg.state, other, None, 0.0, geom, norm_mode=True))
    add(Check(f"orthogonality {cfg.state} {other}", ov <= 1e-10, 0.0, ov, 1e-10))

    beta = cfg.betas[0]
    pairs = [(a, b) for a in group.members for b in group.members]
    pairs.append((cfg.state, QuantumNumbers(cfg.state.n_z + 1, cfg.state.n_theta + 1)))
    for a, b in pairs:
        closed = matrix_element(a, b, spec, beta, geom)
        quad = quadrature_element(a, b, spec, beta, geom, cfg.quadrature_nodes, cfg.quadrature_nodes)
        tol = 1e-8 * max(abs(closed), scale)
        add(Check(f"matrix element {a} {b}", abs(closed - quad) <= tol, abs(closed), abs(quad), tol,
                  f"|closed - quadrature| = {abs(closed - quad):.3e}"))

    for m in (-2, -1, 0, 1, 2):
        try:
            closed = angular_moment_closed(spec, m)
        except SingularParameterError:
            closed = None
        if closed is None:
            continue
        quad = angular_moment(spec, m, 4096)
        add(Check(f"angular moment m={m}", abs(closed - quad) <= 1e-9 * max(1.0, abs(closed)),
                  abs(closed), abs(quad), 1e-9))

    bad = []
    for i in range(1, 13):
        for j in range(1, 13):
            closed = z_overlap(i, j, 1.0)
            quad = _z_quadrature(i, j, 1.0)
            expect_zero = i != j and (i + j) % 2 == 0
            if expect_zero != (closed == 0.0) or (expect_zero and abs(quad) >= 1e-10) \
                    or (not expect_zero and abs(quad) <= 1e-4):
                bad.append((i, j))
    add(Check("selection rule sweep 12x12", not bad, 0.0, float(len(bad)), 0.0,
              f"mismatches: {bad}" if bad else "z overlap vanishes iff n_i != n_j and n_i + n_j even"))

    h0 = assemble_hamiltonian(cfg.basis, spec, 0.0, geom)
    h1 = assemble_hamiltonian(cfg.basis, spec, beta, geom)
    defect = hermiticity_defect(h1)
    add(Check("hamiltonian hermiticity", defect <= 1e-12, 0.0, defect, 1e-12))
    shift = float(np.trace(h1 - h0).real)
    expected = cfg.basis.size * nondegenerate_correction(cfg.state, spec, beta, geom)
    tol = 1e-10 * max(abs(expected), 0.5 * cfg.basis.size * scale)
    add(Check("trace identity", abs(shift - expected) <= tol, expected, shift, tol))

    block = build_block(group, spec, beta, geom)
    bdefect = hermiticity_defect(block.matrix)
    add(Check(f"block hermiticity {len(group.members)}x{len(group.members)}", bdefect <= 1e-12, 0.0, bdefect, 1e-12))

    try:
        slope = perturbation_slope_check(group, spec, geom, cfg.betas, cfg.basis)
    except BasisTooSmallError as exc:
        add(Check("slope check", False, detail=f"basis too small: {exc}"))
    else:
        for n, level in enumerate(slope.levels):
            for s in level.samples:
                add(Check(f"slope level {n} beta={s.beta:g}", s.residual <= 5.0 * s.beta,
                          level.predicted, s.slope, 5.0 * s.beta))
            for r in level.ratios:
                add(Check(f"slope level {n} residual ratio", 5.0 <= r <= 20.0, 10.0, r, 5.0,
                          "successive-beta residual ratio must lie in [5, 20]"))

    if cfg.check_complexity:
        rep = admissibility(spec)
        imag = min(abs(rep.I1.imag), abs(rep.I2.imag))
        add(Check("complex moments (expected inadmissible)", imag > 1e-3 and not rep.admissible,
                  None, imag, 1e-3, "I(-1), I(+1) must carry imaginary parts above 1e-3"))
    return report
