"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    pass


class BudgetExceeded(ToolkitError):
    """A search or enumeration hit its configured cap.

    `best_upper` carries the best verified upper bound found so far (when the
    aborted computation was a distance), `extent` a description of how far the
    search got.
    """

    def __init__(self, message, best_upper=None, extent=None):
        super().__init__(message)
        self.best_upper = best_upper
        self.extent = extent


class DomainMiss(ToolkitError, KeyError):
    """A pseudo-length or metric was queried outside its materialized domain."""

    def __init__(self, element):
        super().__init__(f"element outside materialized domain: {element!r}")
        self.element = element


class AxiomViolation(ToolkitError, ValueError):
    """A claimed pseudo-length fails one of its defining axioms."""

    def __init__(self, axiom, witness, detail=""):
        msg = f"axiom {axiom!r} violated by {witness!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.axiom = axiom
        self.witness = witness


class NotLoxodromic(ToolkitError, ValueError):
    pass


class CertificateError(ToolkitError, ValueError):
    """Raised when an anisotropy certificate cannot be emitted.

    `reason` is one of "zero-value" or "not-subordinate".
    """

    def __init__(self, reason, detail=""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


class NoConvergence(ToolkitError, RuntimeError):
    def __init__(self, message, final_slack=None):
        super().__init__(message)
        self.final_slack = final_slack
