"""Maximality of the 277-point set through its dual lattice"""

from .admissibility import (
    AdmissibilityChecker,
    AdmissibilityScreen,
    AdmissibilityVerdict,
    admissible_inner_set,
    discriminating_order,
)
from .certificate import SCHEMA_VERSION, ExtensionCertificate
from .extension import (
    TranslatedSet,
    bounded_checks,
    build_m,
    certify_unique_extension,
    expected_survivor,
    hyperplane_maximality,
    prepare_dual,
    translated_set,
    verify_w_extension,
)

__all__ = [
    "admissible_inner_set",
    "AdmissibilityVerdict",
    "AdmissibilityChecker",
    "AdmissibilityScreen",
    "discriminating_order",
    "ExtensionCertificate",
    "SCHEMA_VERSION",
    "TranslatedSet",
    "translated_set",
    "build_m",
    "prepare_dual",
    "expected_survivor",
    "bounded_checks",
    "certify_unique_extension",
    "verify_w_extension",
    "hyperplane_maximality",
]


def __dir__():
    return __all__
