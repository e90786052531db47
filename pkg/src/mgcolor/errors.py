"""
Exception hierarchy for mgcolor.

Negative answers (no coloring, no dense subgraph) are returned as values.
Exceptions are reserved for bad input, exhausted budgets and internal defects.
"""

from typing import Any, Dict, List, Optional


class MgcolorError(Exception):
    """Base class for all engine errors"""
    pass


class InputError(MgcolorError):
    """Invalid input or violated precondition"""
    pass


class ParseError(InputError):
    """Malformed text input"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ConfigError(InputError):
    """Invalid engine settings"""
    pass


class ResourceError(MgcolorError):
    """A search budget was exhausted before an answer was certified"""

    def __init__(self, message: str, lower: Optional[int] = None, upper: Optional[int] = None):
        self.lower = lower
        self.upper = upper
        if lower is not None or upper is not None:
            message = f"{message} (bounds: {lower}..{upper})"
        super().__init__(message)


class StructuralError(MgcolorError):
    """A coloring could not be combined; carries the vertex where capacity fails"""

    def __init__(self, message: str, vertex: Optional[int] = None):
        self.vertex = vertex
        super().__init__(message)


class CasePreconditionError(MgcolorError):
    """A case operation does not apply to the current triple"""

    def __init__(self, case: str, clause: str):
        self.case = case
        self.clause = clause
        super().__init__(f"{case}: precondition failed: {clause}")


class DefectError(MgcolorError):
    """An invariant guaranteed by theory failed; indicates a bug"""

    def __init__(
        self,
        message: str,
        trace: Optional[List[Any]] = None,
        state: Optional[Dict[str, Any]] = None,
    ):
        self.trace = list(trace) if trace else []
        # the triple at the failure point, as ExtensionTriple.to_dict
        self.state = state
        super().__init__(message)
