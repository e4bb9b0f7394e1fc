"""Squares in arithmetic progressions.

The subpackages follow the computation: ``subsets`` (classes of positions),
``ap`` (progressions and witness search), ``curves`` and ``elliptic`` (the
curves attached to a subset), ``descent`` (Selmer bounds and certificates),
``covering`` (5-subsets via elliptic quotients), ``pell`` (positions shared by
two progressions) and ``pipeline`` (the Q(N) ladder and statistics).
"""
from .ap import ArithProgression, search_aps, squares_in_ap
from .descent import DescentCertificate, certify_z_zero
from .pipeline import CertificateStore, QTableRow, compute_q_table, sieve_stats, verify_table3
from .subsets import canonical_primitive, enumerate_classes

__version__ = "0.1.0"

__all__ = [
    "ArithProgression",
    "CertificateStore",
    "DescentCertificate",
    "QTableRow",
    "canonical_primitive",
    "certify_z_zero",
    "compute_q_table",
    "enumerate_classes",
    "search_aps",
    "sieve_stats",
    "squares_in_ap",
    "verify_table3",
]
