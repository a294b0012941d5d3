"""Exact unit-group computations in modular group algebras F[A x| C_q]."""

from .algebra import AlgElem, GroupAlgebra, Subspace, kernel_of
from .cqstruct import (FBCtx, FBElem, Idempotents, ProjVec, UnitClass,
                       b_polynomial, classify_unit, complement_search_B_in_VstarFB,
                       distinct_projection_unit, enumerate_VFB,
                       from_projections, hall_2prime_decomposition, idempotents,
                       projections, span_dimension)
from .field import FieldCtx, FieldElem, QDecomp, make_field, q_decompose
from .group import (AbelianSpec, ActionSpec, GroupElem, GroupSpec, OrbitTable,
                    make_group, orbits)
from .unitgroup import (CentralizerReport, ClassLength, cayley, cayley_inv,
                        centralizer_in_gamma, centralizer_of_b_orbit_form,
                        class_length, sample_disjoint_classes, sqrt_relation_check)
from .verifier import (Analysis, Certificate, Instance, analyze,
                       counting_certificate, m_gt_1_no_complement, make_instance)

__version__ = "0.1.0"

__all__ = [
    "FieldCtx", "FieldElem", "QDecomp", "make_field", "q_decompose",
    "AbelianSpec", "ActionSpec", "GroupElem", "GroupSpec", "OrbitTable",
    "make_group", "orbits",
    "AlgElem", "GroupAlgebra", "Subspace", "kernel_of",
    "FBCtx", "FBElem", "Idempotents", "ProjVec", "UnitClass",
    "idempotents", "projections", "from_projections", "classify_unit",
    "b_polynomial", "span_dimension", "enumerate_VFB",
    "hall_2prime_decomposition", "distinct_projection_unit",
    "complement_search_B_in_VstarFB",
    "CentralizerReport", "ClassLength", "centralizer_in_gamma",
    "centralizer_of_b_orbit_form", "class_length", "cayley", "cayley_inv",
    "sqrt_relation_check", "sample_disjoint_classes",
    "Instance", "Analysis", "Certificate", "make_instance", "analyze",
    "counting_certificate", "m_gt_1_no_complement",
    "__version__",
]
