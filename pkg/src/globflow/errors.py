"""Exception types shared across the package."""


class FlowError(Exception):
    """Base class for all errors raised by this package."""


class CyclicGraph(FlowError):
    """The atom graph of a presentation contains a directed cycle."""

    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("atom graph is cyclic: " + " -> ".join(self.cycle))


class DanglingEndpoint(FlowError):
    """An atom references a state that is not in the 0-skeleton."""


class DuplicateId(FlowError):
    """Two states or two atoms share the same identifier."""


class BadIdentifier(FlowError):
    """An identifier is empty, not a string, or uses the reserved '*'."""


class IllTypedIdentification(FlowError):
    """An identification target is not a composable sequence with matching endpoints."""


class UnknownState(FlowError):
    """A state identifier is not part of the flow."""


class UnknownAtom(FlowError):
    """An atom identifier is not part of the flow."""


class NotComposable(FlowError):
    """Attempt to compose paths whose endpoints do not meet."""


class IllTypedAttachment(FlowError):
    """An attachment does not typecheck against the host flow."""


class CyclicResult(FlowError):
    """An attachment would create a directed cycle."""


class IndexNotGlobePair(FlowError):
    """The indexed position of a sequence does not carry the attachment pair."""


class NotAMorphism(FlowError):
    """Candidate maps violate one of the morphism equations."""

    def __init__(self, equation, witness):
        self.equation = equation
        self.witness = witness
        super().__init__(f"{equation} law fails at {witness!r}")


class SearchBudgetExceeded(FlowError):
    """A search was aborted because the instance exceeds the configured budget."""


class BadParameter(FlowError):
    """A concatenation parameter lies outside the open unit interval."""


class NotAPathOfHost(FlowError):
    """A timed path does not flatten to a path of the given flow."""


class StepIndexOutOfOrder(FlowError):
    """A script step references a cell introduced by a later step."""


class ParseError(FlowError):
    """A document failed to parse or violates the schema.

    ``line``/``column`` are set for JSON syntax errors, ``field`` for
    schema violations (dotted path into the document).
    """

    def __init__(self, message, line=None, column=None, field=None):
        self.line = line
        self.column = column
        self.field = field
        prefix = ""
        if line is not None:
            prefix = f"line {line}, column {column}: "
        elif field is not None:
            prefix = f"{field}: "
        super().__init__(prefix + message)
