"""Exception hierarchy shared by every stage of the pipeline."""


class SynthError(Exception):
    """Base class for all dksynth errors."""


class InvalidRadixError(SynthError, ValueError):
    """Output radix is even or below 3."""


class NoModularInverseError(InvalidRadixError):
    """2**n has no inverse modulo k (k even)."""


class DimensionError(SynthError, ValueError):
    """Operands built over different k or n."""


class ArityError(DimensionError):
    """Input assignment has the wrong number of variables."""


class SizeError(SynthError, ValueError):
    """Request exceeds an exhaustive-enumeration guard."""


class StructuralError(SynthError, ValueError):
    """A gate, cell or document references an index out of range."""


class SpecFormatError(SynthError, ValueError):
    """A function spec or circuit document is malformed."""
