"""Exact invariants of finite-dimensional algebras over the rationals.

Derivations, centroid, center and central derivations of algebras given by
structure constants, with rational coefficients or rational functions in a
single parameter.
"""
__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    IDENTITY_KINDS,
    AlgebraSpec,
    DendriformSpec,
    center,
    change_of_basis,
    check_dendriform,
    check_identity,
    derive_structure,
    direct_sum,
    multiply,
    power_chain,
    specialize,
)
from .fileformat import load_algebra, parse_algebra, render_algebra  # noqa: E402
from .invariants import (  # noqa: E402
    EndoSpace,
    cd_definitional,
    cd_equational,
    cd_intersection,
    centroid_space,
    derivation_space,
    direct_sum_centroid_report,
    render_parametric,
    transport_conjugation,
)
from .linalg import SubspaceBasis  # noqa: E402
from .scalars import AssumptionSet, Poly, RatFunc, param  # noqa: E402

__all__ = [
    "IDENTITY_KINDS",
    "AlgebraSpec",
    "AssumptionSet",
    "DendriformSpec",
    "EndoSpace",
    "Poly",
    "RatFunc",
    "SubspaceBasis",
    "cd_definitional",
    "cd_equational",
    "cd_intersection",
    "center",
    "centroid_space",
    "change_of_basis",
    "check_dendriform",
    "check_identity",
    "derivation_space",
    "derive_structure",
    "direct_sum",
    "direct_sum_centroid_report",
    "load_algebra",
    "multiply",
    "param",
    "parse_algebra",
    "power_chain",
    "render_algebra",
    "render_parametric",
    "specialize",
    "transport_conjugation",
]
