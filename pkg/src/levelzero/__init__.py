"""Exact combinatorics of level-0 blocks: inertial parameters, facet class systems, classical checks."""
from __future__ import annotations

__version__ = "0.1.0"

from .building import (  # noqa: E402,F401
    ClassSystem, FacetType, compute_S_phi, face_restriction, facet_types, is_attained, parahoric_quotient,
    psi_sigma, verify_partition, verify_zero_coherence,
)
from .inertial import (  # noqa: E402,F401
    InertialParam, centralizer_connected, enumerate_inertial_params, refine_to_Ql, torus_theta_decomposition,
    twisted_torus_params,
)
from .root_datum import (  # noqa: E402,F401
    BasedAutomorphism, RootDatum, affine_simple_system, dual_root_datum, levi_subdatum, make_automorphism,
    make_root_datum, transpose_automorphism, validate_root_datum,
)
from .ss_classes import (  # noqa: E402,F401
    FrobeniusDescriptor, GeometricClass, class_order, ell_regular_part, enumerate_F_stable_orbits,
    frobenius_image, is_F_stable, make_frobenius,
)
from .weyl import canonical_rep, generate_weyl, stabilizer  # noqa: E402,F401
