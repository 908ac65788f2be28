"""Exception hierarchy.

Every domain error carries a stable ``code`` string; the CLI maps the whole
:class:`DomainError` family to one exit status and prints the code verbatim.
"""


class RpaError(Exception):
    code = "E_RPA"


class DomainError(RpaError):
    code = "E_DOMAIN"


class FilterMismatch(DomainError):
    code = "E_FILTER_MISMATCH"


class NotInvertible(DomainError):
    code = "E_NOT_INVERTIBLE"


class Unrepresentable(DomainError):
    code = "E_UNREPRESENTABLE"


class NotNonneg(DomainError):
    code = "E_NOT_NONNEG"


class NonIncreasingBreakpoints(DomainError):
    code = "E_NON_INCREASING"


class IncomparableBreakpoints(DomainError):
    code = "E_INCOMPARABLE"


class GridMismatch(DomainError):
    code = "E_GRID_MISMATCH"


class NotNormalizable(NotInvertible):
    code = "E_NOT_NORMALIZABLE"


class UnboundName(DomainError):
    code = "E_NAME"


class KindError(DomainError):
    """Operand kinds do not fit the operation (e.g. wave + scalar)."""

    code = "E_TYPE"


class ParseError(RpaError):
    code = "E_PARSE"

    def __init__(self, position, expected, found=None):
        self.position = position
        self.expected = tuple(expected)
        self.found = found
        exp = ", ".join(self.expected) if self.expected else "end of input"
        msg = f"at position {position}: expected {exp}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg)
