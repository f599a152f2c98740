"""Exception hierarchy shared by every mvlogic module."""


class LogicError(Exception):
    """Base class for all mvlogic errors."""


class UnknownAtom(LogicError, KeyError):
    def __init__(self, atom):
        super().__init__(atom)
        self.atom = atom

    def __str__(self):
        return f"atom {self.atom!r} was never assigned a value"


class UnknownConnective(LogicError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"no connective named {self.name!r}"


class ArityMismatch(LogicError):
    pass


class MissingCorrespondence(LogicError):
    pass


class DomainMismatch(LogicError):
    pass


class TableError(LogicError):
    """A connective table is not total or not functional."""


class SystemFormatError(LogicError):
    pass


class ParseError(LogicError):
    """Syntax error in formula or premise text.

    ``offset`` is a byte offset into the UTF-8 encoding of ``text``.
    """

    def __init__(self, message, text, offset):
        self.message = message
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at byte {offset}")


class TooManyAtoms(LogicError):
    pass


class CorpusParseError(LogicError):
    pass


class NoSelectionError(LogicError):
    def __init__(self, outcome):
        self.outcome = outcome
        super().__init__(f"no action selected ({outcome.reason})")


class MirrorViolation(LogicError):
    pass


class ScenarioError(LogicError):
    pass
