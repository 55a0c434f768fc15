"""Exception hierarchy shared by all qverify modules."""


class QverifyError(Exception):
    """Base class for all qverify errors."""


class CapExceeded(QverifyError):
    """A dense operation would exceed the configured qubit cap."""


class NonUnitaryCustomGate(QverifyError):
    """A custom gate matrix fails the unitarity check."""


class IndexOutOfRange(QverifyError):
    """A qubit index does not fit the circuit width."""


class DuplicateTarget(QverifyError):
    """A gate lists the same target qubit twice."""


class DimensionMismatch(QverifyError):
    """Two operands act on different numbers of qubits."""


class TargetMismatch(QverifyError):
    """A replacement gate does not act on the original gate's targets."""


class CapabilityMissing(QverifyError):
    """A protocol requires an access mode the black box does not grant."""


class DomainError(QverifyError):
    """An argument lies outside the mathematical domain of the function."""


class EvenBatch(QverifyError):
    """Batch winnowing requires an odd batch size."""


class NonCliffordGate(QverifyError):
    """The stabilizer engine only accepts Pauli, H, S, Sdg and CNOT gates."""


class CandidateNotFound(QverifyError):
    """No candidate circuit passed the equality test (promise violated)."""


class ParseError(QverifyError):
    """Malformed circuit file.  Carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownGate(ParseError):
    """Circuit file names a gate that does not exist."""
