"""Exception hierarchy shared by the library and the CLI."""


class VpaminError(Exception):
    """Base class for all library errors."""


class InputError(VpaminError, ValueError):
    """Malformed or inconsistent input (bad symbol, arity mismatch, parse failure)."""


class ShapeError(InputError):
    """A VPA does not have the shape required by the immersion reduction."""


class ContractError(VpaminError):
    """A documented precondition on an argument does not hold."""


class ScaleError(VpaminError):
    """An exhaustive procedure would exceed its configured guard."""


class BackendError(VpaminError):
    """An external SAT backend failed or produced unusable output."""


class StructureError(VpaminError):
    """An immersion does not have the two-layer structure the reduction needs."""


class SoundnessError(VpaminError):
    """A certificate translation produced an invalid result (signals a bug)."""
