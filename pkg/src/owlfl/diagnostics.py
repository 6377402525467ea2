"""Diagnostics shared by the parsers, translators and engine.

Codes are short stable identifiers; the documented set lives in the README.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

ERROR = "error"
WARNING = "warning"
INFO = "info"


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # one of ERROR, WARNING, INFO
    code: str
    message: str
    location: Optional[Tuple[int, int]] = None  # (line, column)

    def __post_init__(self):
        if self.severity not in (ERROR, WARNING, INFO):
            raise ValueError(f"bad severity: {self.severity!r}")

    def __str__(self):
        loc = f" at {self.location[0]}:{self.location[1]}" if self.location else ""
        return f"{self.severity}[{self.code}]{loc}: {self.message}"


def has_errors(diagnostics) -> bool:
    return any(d.severity == ERROR for d in diagnostics)
