"""Kernel selection: compiled Numerov sweep when available, pure Python otherwise."""

try:
    from ._numerov_cy import numerov_sweep

    BACKEND = "cython"
except ImportError:  # pragma: no cover - depends on build environment
    from ._numerov_py import numerov_sweep

    BACKEND = "python"

__all__ = ["numerov_sweep", "BACKEND"]
