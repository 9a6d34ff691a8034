"""Exception hierarchy shared by every module of the package."""


class OrchardError(Exception):
    """Base class for all errors raised by :mod:`orchard`."""


class CoordinateOverflowError(OrchardError, ValueError):
    """A coordinate lies outside the range where determinants stay exact in int64."""


class DegenerateInputError(OrchardError, ValueError):
    """A predicate received collinear or coincident points it cannot decide on."""


class GenericityError(OrchardError, ValueError):
    """A configuration has collinear triples or coincident points.

    ``violations`` holds the offending index triples (coincident pairs are
    reported as ``(i, j, None)``).
    """

    def __init__(self, violations, message=None):
        self.violations = list(violations)
        if message is None:
            shown = ", ".join(_fmt_violation(v) for v in self.violations[:10])
            more = "" if len(self.violations) <= 10 else f" (+{len(self.violations) - 10} more)"
            message = f"configuration is not generic: {shown}{more}"
        super().__init__(message)


def _fmt_violation(v):
    i, j, k = v
    if k is None:
        return f"coincident pair ({i}, {j})"
    return f"collinear triple ({i}, {j}, {k})"


class GraphError(OrchardError, ValueError):
    """Invalid edge list or a drawing that does not match the required graph class."""


class RetryBudgetExhausted(OrchardError, RuntimeError):
    """Rejection sampling gave up before producing a generic placement."""


class BudgetExceededError(OrchardError, ValueError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, size, budget, what="enumeration"):
        self.size = size
        self.budget = budget
        super().__init__(f"{what} size {size} exceeds budget {budget}")


class InvariantViolation(OrchardError, AssertionError):
    """Two independent computations disagreed, or a proven bound was broken."""


class DocumentError(OrchardError, ValueError):
    """A drawing document failed to parse; ``field`` names the offending entry."""

    def __init__(self, message, field=None, line=None, column=None):
        self.field = field
        self.line = line
        self.column = column
        where = []
        if field:
            where.append(f"field {field}")
        if line is not None:
            where.append(f"line {line}, column {column}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)
