"""Child-process solution runner. See shim.py for the protocol."""

from .shim import (
    EXIT_BAD_INPUT,
    EXIT_EXCEPTION,
    EXIT_NO_ENTRY,
    EXIT_OK,
    STATUS_PREFIX,
    ShimStatus,
    main,
    run_solution,
)

__all__ = [
    "EXIT_BAD_INPUT",
    "EXIT_EXCEPTION",
    "EXIT_NO_ENTRY",
    "EXIT_OK",
    "STATUS_PREFIX",
    "ShimStatus",
    "main",
    "run_solution",
]
