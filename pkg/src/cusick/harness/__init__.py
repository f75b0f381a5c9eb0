from .sweep import ALL_CHECKS, HARD_CHECKS, SOFT_CHECKS, evaluate, sweep

__all__ = ["ALL_CHECKS", "HARD_CHECKS", "SOFT_CHECKS", "evaluate", "sweep"]
