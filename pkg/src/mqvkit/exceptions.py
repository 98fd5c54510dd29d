"""Custom exceptions for mqvkit."""


class MqvError(Exception):
    """Base class for all mqvkit errors."""


class InvalidPartitionError(MqvError):
    """Raised when a node partition has empty or overlapping parts."""

    def __init__(self, message: str, parts: list[list[str]] | None = None):
        """Initialize the error."""
        self.parts = parts
        super().__init__(message)


class InvalidIrregularTypeError(MqvError):
    """Raised when an irregular type has repeated eigenvalues."""

    def __init__(self, message: str, part: str | None = None):
        """Initialize the error."""
        self.part = part
        super().__init__(message)


class InvalidQuiverError(MqvError):
    """Raised when a coloured quiver violates its structural invariants."""


class UnknownNodeError(MqvError):
    """Raised when a node name is not part of the quiver."""

    def __init__(self, node: str):
        """Initialize the error."""
        self.node = node
        super().__init__(f"Unknown node: {node!r}")


class IndexMismatchError(MqvError):
    """Raised when two node-indexed vectors live on different index sets."""

    def __init__(self, left: tuple[str, ...], right: tuple[str, ...]):
        """Initialize the error."""
        self.left = left
        self.right = right
        super().__init__(f"Index sets differ: {left} vs {right}")


class InvalidGramError(MqvError):
    """Raised when a Gram matrix is not symmetric with diagonal 2."""

    def __init__(self, message: str, shape: tuple[int, ...] | None = None):
        """Initialize the error."""
        self.shape = shape
        super().__init__(message)


class NotInBigCellError(MqvError):
    """Raised when phi_i = 1 + x_1 y^1 + ... + x_i y^i is singular."""

    def __init__(self, index: int, sigma_min: float | None = None):
        """Initialize the error."""
        self.index = index
        self.sigma_min = sigma_min
        super().__init__(f"phi_{index} is not invertible (sigma_min={sigma_min})")


class NotInvertibleError(MqvError):
    """Raised when a monochromatic product v_- v_+ leaves the opposite big cell."""

    def __init__(self, colour: int, node: str, sigma_min: float | None = None):
        """Initialize the error."""
        self.colour = colour
        self.node = node
        self.sigma_min = sigma_min
        super().__init__(
            f"Representation not invertible on colour {colour} at node {node!r}"
        )


class IndeterminateError(MqvError):
    """Raised when a numerical decision falls inside the tolerance band."""

    def __init__(self, message: str, value: float):
        """Initialize the error."""
        self.value = value
        super().__init__(message)


class AmbiguousSpectrumError(MqvError):
    """Raised when eigenvalue clustering or Jordan ranks are ill-conditioned."""

    def __init__(self, message: str, eigenvalue: complex | None = None):
        """Initialize the error."""
        self.eigenvalue = eigenvalue
        super().__init__(message)


class AmbiguousRankError(MqvError):
    """Raised when a rank estimate has a singular value inside the band."""

    def __init__(self, message: str, singular_values: list[float]):
        """Initialize the error."""
        self.singular_values = singular_values
        super().__init__(message)


class InvalidMarkingError(MqvError):
    """Raised when a marking does not annihilate its conjugacy class."""

    def __init__(self, message: str, eigenvalue: complex | None = None):
        """Initialize the error."""
        self.eigenvalue = eigenvalue
        super().__init__(message)


class EmptyClassError(MqvError):
    """Raised when a leg admits no invertible representation."""

    def __init__(self, message: str, position: int):
        """Initialize the error."""
        self.position = position
        super().__init__(message)


class NotReducedError(MqvError):
    """Raised when a fission point does not lie in the reduced fiber."""

    def __init__(self, residual: float):
        """Initialize the error."""
        self.residual = residual
        super().__init__(f"G-moment differs from identity (residual={residual:.3e})")


class NotSupernovaError(MqvError):
    """Raised when an operation needs a supernova quiver and gets another."""


class ReflectionError(MqvError):
    """Raised when a reflection is not admissible or its bookkeeping disagrees."""

    def __init__(self, message: str, node: str):
        """Initialize the error."""
        self.node = node
        super().__init__(message)


class DegenerateTupleError(MqvError):
    """Raised when every element of a tame tuple is the identity."""

    def __init__(self, dims: tuple[int, ...]):
        """Initialize the error."""
        self.dims = dims
        super().__init__(f"Degenerate tame tuple: d={dims}, W=0")


class SpecParseError(MqvError):
    """Raised when an input document cannot be parsed."""

    def __init__(self, message: str, line: int, column: int = 1):
        """Initialize the error."""
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class ConjectureCounterexampleError(MqvError):
    """Raised when a predicted-unsolvable instance has a verified witness."""

    def __init__(self, instance_id: str, seed: int, artifact: str):
        """Initialize the error."""
        self.instance_id = instance_id
        self.seed = seed
        self.artifact = artifact
        super().__init__(
            f"Instance {instance_id} predicted unsolvable but witness found "
            f"(seed={seed})"
        )


class SingularMatrixError(MqvError):
    """Raised when a component that must be invertible is singular."""

    def __init__(self, name: str, sigma_min: float | None = None):
        """Initialize the error."""
        self.name = name
        self.sigma_min = sigma_min
        super().__init__(f"{name} is not invertible (sigma_min={sigma_min})")
