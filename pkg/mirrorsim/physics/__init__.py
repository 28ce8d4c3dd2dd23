"""
File: __init__.py
Project: mirrorsim
Created: Tuesday, 13th October 2026
Author: Mirrorsim Team

Copyright (c) 2026 Mirrorsim. See LICENSE for details.
"""

from .field_state import (
    AmplitudeField,
    Basis,
    Interpretation,
    Representation,
    band_flat_packet,
    gaussian_packet,
    positive_frequency_packet,
    restrict_to_positive_k,
    superpose,
    to_circular,
    to_linear,
    vacuum,
)
from .grid import Grid, UnitSystem, make_grid, make_units, natural_units
from .kernels import KernelKind, KernelSpec
from .mirror import (
    DenseKernel,
    EquivalenceReport,
    MirrorKernel,
    ScatteringSpectrum,
    SeparableKernel,
    Solver,
    apply_scattering,
    box_separable_kernel,
    dense_kernel,
    evolve_mirror,
    gaussian_blob_kernel,
    gaussian_separable_kernel,
    positive_frequency_effective_evolution,
    reflected_fraction,
    scattering_equivalence_check,
    separable_kernel,
    xi_profile,
    xi_spectrum,
)
from .observables import (
    FieldProfiles,
    band_edge_fraction,
    energy_by_direction,
    energy_density,
    energy_total,
    field_profiles,
    maxwell_residual,
)
from .propagation import (
    dynamical_spectrum,
    evolve_free,
    shift_position,
    to_interaction_picture,
    to_schrodinger_picture,
)
from .transforms import overlap_kernel, to_momentum, to_position

__all__ = [
    "AmplitudeField",
    "Basis",
    "DenseKernel",
    "EquivalenceReport",
    "FieldProfiles",
    "Grid",
    "Interpretation",
    "KernelKind",
    "KernelSpec",
    "MirrorKernel",
    "Representation",
    "ScatteringSpectrum",
    "SeparableKernel",
    "Solver",
    "UnitSystem",
    "apply_scattering",
    "band_edge_fraction",
    "band_flat_packet",
    "box_separable_kernel",
    "dense_kernel",
    "dynamical_spectrum",
    "energy_by_direction",
    "energy_density",
    "energy_total",
    "evolve_free",
    "evolve_mirror",
    "field_profiles",
    "gaussian_blob_kernel",
    "gaussian_packet",
    "gaussian_separable_kernel",
    "make_grid",
    "make_units",
    "maxwell_residual",
    "natural_units",
    "overlap_kernel",
    "positive_frequency_effective_evolution",
    "positive_frequency_packet",
    "reflected_fraction",
    "restrict_to_positive_k",
    "scattering_equivalence_check",
    "separable_kernel",
    "shift_position",
    "superpose",
    "to_circular",
    "to_interaction_picture",
    "to_linear",
    "to_momentum",
    "to_position",
    "to_schrodinger_picture",
    "vacuum",
    "xi_profile",
    "xi_spectrum",
]
