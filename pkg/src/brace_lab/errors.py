"""Exception hierarchy.

Every error raised on bad input or a failed hypothesis derives from
:class:`BraceLabError` and carries an optional ``witness`` tuple naming the
offending elements. The CLI maps these to exit code 2.
"""

from __future__ import annotations


class BraceLabError(Exception):
    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


class TableError(BraceLabError, ValueError):
    """Malformed Cayley table (shape, type or out-of-range entry)."""


class AxiomError(BraceLabError):
    def __init__(self, axiom: str, witness: tuple | None = None, message: str | None = None):
        super().__init__(message or f"axiom failed: {axiom} (witness {witness})", witness)
        self.axiom = axiom


class NotRadical(BraceLabError):
    """The adjoint operation of a ring is not a group."""


class NotClosed(BraceLabError):
    """The Yang-Baxter map leaves X x X."""


class CarrierMismatch(BraceLabError, ValueError):
    pass


class ShortcutUnsound(BraceLabError):
    """First-coordinate reflection check requested for a non-involutive map."""


class BudgetExceeded(BraceLabError):
    pass


class UnknownEntry(BraceLabError, KeyError):
    pass


class HypothesisFailed(BraceLabError):
    def __init__(self, name: str, witness: tuple | None = None, message: str | None = None):
        super().__init__(message or f"hypothesis {name!r} failed (witness {witness})", witness)
        self.name = name


class NotCentral(HypothesisFailed):
    def __init__(self, witness=None):
        super().__init__("central", witness)


class ConditionFailed(HypothesisFailed):
    def __init__(self, witness=None):
        super().__init__("two-torsion", witness)


class ImageEscapesX(HypothesisFailed):
    def __init__(self, witness=None):
        super().__init__("image-in-X", witness)


class NotInSocle(HypothesisFailed):
    def __init__(self, name="socle", witness=None):
        super().__init__(name, witness)


class FNotEquivariant(HypothesisFailed):
    def __init__(self, witness=None):
        super().__init__("f-equivariant", witness)


class KNotJClose(HypothesisFailed):
    def __init__(self, witness=None):
        super().__init__("k(x)-x in J", witness)


class KNotInvolutive(HypothesisFailed):
    def __init__(self, witness=None):
        super().__init__("k-involutive", witness)


class RNotInvolutive(HypothesisFailed):
    def __init__(self, witness=None):
        super().__init__("r-involutive", witness)


class FactorizationError(BraceLabError):
    pass


class NotSubring(FactorizationError):
    pass


class NotIdeal(FactorizationError):
    pass


class IntersectionNontrivial(FactorizationError):
    pass


class AdditiveFactorizationFails(FactorizationError):
    pass


class DecompNotUnique(FactorizationError):
    pass


class TheoremViolation(BraceLabError, AssertionError):
    """A conclusion that a theorem guarantees did not hold on an instance.

    Either the hypotheses were checked incorrectly or there is a bug; never an
    input problem.
    """
