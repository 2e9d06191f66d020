"""Utility functions for hyperext."""

import sys
from typing import Sequence, Union

import structlog
from sympy import Poly

log = structlog.get_logger()

_LEVELS = {"DEBUG": 10, "INFO": 20, "WARNING": 30, "ERROR": 40, "CRITICAL": 50}


def configure_logging(level: Union[str, int] = "INFO") -> None:
    """Configure structlog to render key-value events on standard error.

    Args:
        level: Name or number of the lowest level that is emitted.

    Raises:
        ValueError: If ``level`` is not a known level name.
    """
    if isinstance(level, str):
        try:
            level = _LEVELS[level.upper()]
        except KeyError:
            raise ValueError(f"Unknown log level: {level}") from None
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
    log.debug(f"Logging configured at level {level}")


def ascending_coefficients(poly: Poly) -> list[int]:
    """Coefficients of a univariate polynomial from the constant term up."""
    if poly.is_zero:
        return [0]
    return [int(c) for c in reversed(poly.all_coeffs())]


def format_polynomial(coefficients: Union[Poly, Sequence[int]], var: str = "t") -> str:
    """Render ascending-degree text such as ``2 - 3*t + t^2``.

    The zero polynomial renders as ``0``.
    """
    if isinstance(coefficients, Poly):
        coefficients = ascending_coefficients(coefficients)
    terms: list[str] = []
    for k, c in enumerate(coefficients):
        if c == 0:
            continue
        magnitude = abs(c)
        if k == 0:
            body = str(magnitude)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(terms) or "0"
