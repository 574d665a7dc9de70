"""Particle on a cylinder surface under a z-linear angular potential.

Exact unperturbed spectrum, first-order (degenerate and non-degenerate)
perturbation theory, and brute-force oracles that check every closed form.
"""

from .core import (
    CylinderGeometry,
    DegeneracyGroup,
    EnergyLevel,
    QuantumNumbers,
    degeneracy_groups,
    energy,
    normalization_residual,
    probability_density,
    spectrum,
    wavefunction,
)
from .errors import (
    BasisTooSmallError,
    DegenerateDenominatorError,
    DomainError,
    HermiticityError,
    InadmissiblePotentialError,
    PotentialParseError,
    QPSCError,
    SingularParameterError,
)
from .oracle import (
    SpectralResult,
    TruncatedBasis,
    assemble_hamiltonian,
    exact_eigenvalues,
    perturbation_slope_check,
    quadrature_element,
)
from .perturbation import (
    CorrectionResult,
    PerturbationBlock,
    StateCorrection,
    build_block,
    matrix_element,
    nondegenerate_correction,
    paper_tables,
    solve_block,
    splitting_rule,
    state_correction,
    z_overlap,
)
from .potential import (
    AdmissibilityReport,
    AngularMoment,
    PotentialSpec,
    PotentialTerm,
    TermKind,
    admissibility,
    angular_moment,
    angular_moment_closed,
    evaluate,
    format_potential,
    parse_potential,
)

__version__ = "0.1.0"
