"""Ground-instance tooling for the impossibility of non-dictatorial SWFs."""

from ._core import (
    check,
    cnf,
    fubini,
    models,
    orders,
    profile_count,
    prove,
    solve,
    stats,
)

__all__ = [
    "check",
    "cnf",
    "fubini",
    "models",
    "orders",
    "profile_count",
    "prove",
    "solve",
    "stats",
]
