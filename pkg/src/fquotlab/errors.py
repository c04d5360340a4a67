"""Exception types shared across the package.

Domain-negative conditions (the math says no) are distinguished from
usage errors (bad input shape, resource bounds) so the CLI can map them
to exit codes 1 and 2 respectively.
"""

from __future__ import annotations


class FquotError(Exception):
    """Base class for all package errors."""


# --- input / usage errors -------------------------------------------------

class StructureFormatError(FquotError):
    """Malformed structure or theory file (bad JSON shape, unknown keys)."""


class DuplicateName(StructureFormatError):
    def __init__(self, name: str):
        super().__init__(f"duplicate name {name!r}")
        self.name = name


class InvalidIdentifier(StructureFormatError):
    def __init__(self, name: str):
        super().__init__(f"invalid identifier {name!r}")
        self.name = name


class MissingTable(StructureFormatError):
    def __init__(self, symbol: str):
        super().__init__(f"missing table for symbol {symbol!r}")
        self.symbol = symbol


class ArityMismatch(StructureFormatError):
    def __init__(self, symbol: str, detail: str = ""):
        msg = f"table shape does not match arity of {symbol!r}"
        super().__init__(msg + (f": {detail}" if detail else ""))
        self.symbol = symbol


class OutOfRangeElement(StructureFormatError):
    def __init__(self, symbol: str, value: object = None):
        super().__init__(f"entry {value!r} for {symbol!r} outside the universe")
        self.symbol = symbol
        self.value = value


class SignatureMismatch(FquotError):
    """Operands over different signatures."""


class SizeMismatch(FquotError):
    """Partitions or maps over universes of different sizes."""


class SearchSpaceTooLarge(FquotError):
    def __init__(self, candidates: int, bound: int):
        super().__init__(
            f"{candidates} candidate maps exceed the search bound {bound}"
        )
        self.candidates = candidates
        self.bound = bound


class UniverseTooLarge(FquotError):
    def __init__(self, n: int, bound: int):
        super().__init__(f"universe size {n} exceeds the enumeration bound {bound}")
        self.n = n
        self.bound = bound


class TargetSourceMismatch(FquotError):
    """Composition where inner target differs from outer source."""


class SourceMismatch(FquotError):
    """Factorization of homs that do not share a source."""


class NotInLattice(FquotError):
    """Requested partition is not an element of the lattice."""


# --- domain-negative results raised as errors ------------------------------

class EmptyUnsupported(FquotError):
    """Closure of an empty seed in a signature without constants."""


class NotClosed(FquotError):
    def __init__(self, symbol: str, witness: tuple[int, ...]):
        super().__init__(f"set not closed under {symbol!r} at {witness}")
        self.symbol = symbol
        self.witness = witness


class NotACongruence(FquotError):
    def __init__(self, report: object):
        super().__init__(f"partition is not a congruence: {report}")
        self.report = report


class NotRefinement(FquotError):
    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"pair {witness} related by the finer partition only")
        self.witness = witness


class KernelNotIncluded(FquotError):
    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"kernel inclusion fails at pair {witness}")
        self.witness = witness


class NotEquivalent(FquotError):
    """Homs are not mutually factorizable."""


class PremiseFails(FquotError):
    """Preservation check on a formula the structure does not satisfy."""


# --- formula language -------------------------------------------------------

class FormulaSyntaxError(FquotError):
    def __init__(self, line: int, col: int, expected: str):
        super().__init__(f"line {line}, col {col}: expected {expected}")
        self.line = line
        self.col = col
        self.expected = expected


class UnknownArity(FquotError):
    def __init__(self, symbol: str, detail: str = ""):
        super().__init__(
            f"symbol {symbol!r} used with the wrong arity"
            + (f" ({detail})" if detail else "")
        )
        self.symbol = symbol


class UnboundVariable(FquotError):
    def __init__(self, name: str):
        super().__init__(f"unbound variable {name!r}")
        self.name = name


class NotPCNF(FquotError):
    """Operation requires prenex conjunctive normal form."""


class ShadowingWarning(UserWarning):
    """A quantifier rebinds a variable already bound in an enclosing scope."""


# --- theorem verification ----------------------------------------------------

class SaturationNotClosed(FquotError):
    """Saturation of a closed set failed to be closed; contradicts theory."""

    def __init__(self, symbol: str, witness: tuple[int, ...]):
        super().__init__(
            f"saturated set not closed under {symbol!r} at {witness}"
        )
        self.symbol = symbol
        self.witness = witness


class InternalTheoremViolation(FquotError):
    """A proved theorem failed to verify; indicates an implementation bug.

    Carries enough of the instance to reproduce the failure.
    """

    def __init__(self, theorem: str, detail: str, instance: object = None):
        super().__init__(f"{theorem}: {detail}")
        self.theorem = theorem
        self.detail = detail
        self.instance = instance
