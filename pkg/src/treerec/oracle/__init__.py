"""Brute-force ground truth: exhaustive enumeration, counts and audits."""

from .audit import AUDIT_NAMES, AuditReport, bijection_audit
from .enumerate import CAPS, KINDS, STATISTICS, enumerate_objects, oracle_count
from .kernels import backend, orbit_stats

__all__ = [
    "AUDIT_NAMES",
    "AuditReport",
    "CAPS",
    "KINDS",
    "STATISTICS",
    "backend",
    "bijection_audit",
    "enumerate_objects",
    "oracle_count",
    "orbit_stats",
]
