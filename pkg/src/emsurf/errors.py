"""Exception hierarchy shared by the library and the command line."""


class EmsurfError(Exception):
    """Base class for every error raised by emsurf."""


class InvalidInput(EmsurfError):
    """Malformed group spec, file, or permutation document."""


class InvalidRepresentation(InvalidInput):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid permutation representation: " + "; ".join(self.violations))


class MinusOneInGroup(EmsurfError):
    """Raised when a theorem-level operation receives a group containing -1."""

    def __init__(self, label=""):
        self.label = label
        super().__init__(
            f"group {label or '<unnamed>'} contains -1; the dimension identities are only "
            "stated for finite-index subgroups of SL2(Z) not containing -1"
        )


class InconsistentInvariants(EmsurfError):
    """An internal integrality or consistency check failed."""


class AmbiguousRange(EmsurfError):
    """h^0 of a line bundle is not determined by its degree alone."""
