"""Move policy factory."""
from .base import MovePolicy
from .signed import TMovePolicy, TPrimeMovePolicy

MODES = ("t", "tprime", "checkerboard")


def create_policy(mode: str) -> MovePolicy:
    """Create the move policy for a reduction mode.

    Raises:
        ValueError: If the mode is unknown.
    """
    if mode == "t":
        return TMovePolicy()
    if mode == "tprime":
        return TPrimeMovePolicy()
    if mode == "checkerboard":
        from ..plane import CheckerboardPolicy
        return CheckerboardPolicy()
    raise ValueError(f"Unknown move mode: {mode}. Valid options: {', '.join(repr(m) for m in MODES)}")


__all__ = ["MODES", "MovePolicy", "TMovePolicy", "TPrimeMovePolicy", "create_policy"]
