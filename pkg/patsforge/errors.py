from __future__ import annotations

from typing import Any, Optional


class PatsforgeError(Exception):
    """Base class for every error raised by patsforge."""


class ConfigError(PatsforgeError):
    pass


class FormatError(PatsforgeError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class FormulaError(PatsforgeError):
    pass


class InstanceTooLarge(PatsforgeError):
    pass


class SearchSpaceExceeded(PatsforgeError):
    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search space exceeded after {nodes} nodes")


class BlueprintError(PatsforgeError):
    def __init__(self, message: str, outcome: Any = None):
        self.outcome = outcome
        super().__init__(message)


class PaletteError(PatsforgeError):
    pass
