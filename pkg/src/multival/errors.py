"""Exception hierarchy shared by every layer of the package."""


class MultivalError(Exception):
    pass


# finite maps

class NonTotal(MultivalError):
    """A domain element was left unassigned or assigned twice."""


class DanglingElement(MultivalError):
    """An assignment names an element that its set does not declare."""


class OutOfDomain(MultivalError):
    pass


class OutOfCodomain(MultivalError):
    pass


class SpaceMismatch(MultivalError):
    """Two maps were combined whose sets are not identical."""


class NotBijective(MultivalError):
    pass


# relations and immanence

class Multivalued(MultivalError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"relation is multivalued: {witness}")


class TranscendentInput(MultivalError):
    def __init__(self, witness, message=None):
        self.witness = witness
        super().__init__(message or f"mapping is transcendent: {witness}")


class SearchSpaceExceeded(MultivalError):
    pass


# networks

class CyclicNetwork(MultivalError):
    pass


class PartialAssignment(MultivalError):
    pass


class UnsupportedTopology(MultivalError):
    pass


class StalePair(MultivalError):
    pass


class EnumerationCapExceeded(MultivalError):
    pass


# documents

class DocumentError(MultivalError):
    """Base for problems found while reading a network document.

    ``path`` locates the offending field (``nodes.C.table[3]``) and ``line``
    is filled in when the problem was raised by the JSON decoder.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if path:
            where.append(path)
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


class DocumentSyntaxError(DocumentError):
    pass


class SchemaError(DocumentError):
    pass


class ValidationError(DocumentError):
    pass
