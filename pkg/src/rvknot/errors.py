"""Exception hierarchy shared by every module."""


class RVKnotError(Exception):
    """Base class for all library errors."""


class InputError(RVKnotError):
    """Malformed or inconsistent user input."""


class CapExceeded(RVKnotError):
    """A configured enumeration cap was exceeded."""


# core

class DiagramInvalid(InputError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid diagram: " + ", ".join(str(v) for v in self.violations))


class PolicyMismatch(RVKnotError):
    pass


class NotInPort(RVKnotError):
    pass


class NotANode(RVKnotError):
    pass


# codec

class GaussCodeError(InputError):
    pass


class EmptyCode(GaussCodeError):
    def __init__(self):
        super().__init__("empty Gauss code")


class OddOccurrence(GaussCodeError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"label {label!r} does not occur exactly twice")


class RoleConflict(GaussCodeError):
    def __init__(self, label, reason=""):
        self.label = label
        super().__init__(f"label {label!r}: {reason or 'inconsistent passes'}")


class BadToken(InputError):
    def __init__(self, token, position, line=None):
        self.token = token
        self.position = position
        self.line = line
        where = f"line {line}, column {position}" if line is not None else f"position {position}"
        super().__init__(f"bad token {token!r} at {where}")


# parity

class MultiComponent(RVKnotError):
    pass


class UnknownLabel(RVKnotError):
    pass


class SingleComponent(RVKnotError):
    pass


class CrossComponentNode(RVKnotError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"node {label} is shared between two components")


# rewrite

class InapplicableTangle(RVKnotError):
    pass


class VirtualSite(RVKnotError):
    pass


class UncoveredNode(RVKnotError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"parity map does not cover node {label}")


class TooManyNodes(CapExceeded):
    pass


class PatternMismatch(RVKnotError):
    pass


# invariants

class NodePresent(RVKnotError):
    pass


class TooManyCrossings(CapExceeded):
    pass


# rna

class UnmatchedBracket(InputError):
    def __init__(self, position):
        self.position = position
        super().__init__(f"unmatched bracket at position {position}")


class NonSpecialNode(RVKnotError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"node {label} is not a special (folding) node")
