"""Stable fingerprints for verify configurations."""

import hashlib
from typing import Any


def fingerprint(kind: str, name: str, **extra_keys: Any) -> str:
    """
    Generate a stable hash for a run configuration.

    Args:
        kind: Kind of run (e.g., "verify", "table")
        name: Primary identifier (e.g., the type spec)
        **extra_keys: Additional keys to include (p, levi subsets, seed...)

    Returns:
        A 16-character hex digest.
    """
    parts = [kind, name]
    for key in sorted(extra_keys):
        value = extra_keys[key]
        if value is not None:
            parts.append(f"{key}={value}")
    return hashlib.sha256("|".join(parts).encode()).hexdigest()[:16]
