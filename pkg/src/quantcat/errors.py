"""Exception hierarchy shared across the toolkit."""

from __future__ import annotations


class QuantcatError(Exception):
    """Base class for all toolkit errors."""


class StructureError(QuantcatError):
    """A table or relation is malformed (e.g. a hom poset is not a lattice)."""


class ObjectMismatch(QuantcatError):
    """Arrow endpoints do not line up for the requested operation."""


class CategoryMismatch(QuantcatError):
    """Functor or distributor feet do not line up."""


class InvalidSize(QuantcatError):
    """A builder was asked for a structurally impossible size."""


class NotDivisible(QuantcatError):
    """The quantale is not divisible; carries the violating pair."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"quantale is not divisible; witness pair {witness}")


class NotGirard(QuantcatError):
    """The quantaloid does not carry the requested negation structure."""


class NotCyclic(NotGirard):
    """The candidate family fails the cyclicity equation; carries a witness arrow."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"family is not cyclic; witness {witness}")


class NotDualizing(NotGirard):
    """The candidate family fails the double-negation equation."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"family is not dualizing; witness {witness}")


class ArrowTypeError(QuantcatError, TypeError):
    """An arrow index lies outside the hom lattice required by the types."""


class DegreeOutOfHom(QuantcatError):
    """An incidence degree exceeds the membership bound of its row/column."""


class PresheafSpaceTooLarge(QuantcatError):
    """Weight-vector enumeration would exceed the configured cap."""

    def __init__(self, bound, cap):
        self.bound = bound
        self.cap = cap
        super().__init__(
            f"presheaf space of size {bound} exceeds the enumeration cap {cap}; "
            "raise the cap or use algorithm=generated"
        )


class SchemaError(QuantcatError):
    """An input document does not match its declared schema."""


class InvalidInfomorphism(QuantcatError):
    """The pair of maps does not satisfy the infomorphism equation."""


class InternalCheckError(QuantcatError):
    """A consistency identity that should hold by construction failed (bug trap)."""
