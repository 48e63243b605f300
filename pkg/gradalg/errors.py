"""
Exception hierarchy for gradalg
"""

from typing import Any, Optional


class GradAlgError(Exception):
    """Base class for all gradalg errors"""


class SchemaError(GradAlgError):
    """Input does not match the expected JSON schema"""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class ValidationError(GradAlgError):
    """Mathematical rejection of otherwise well-formed input"""

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class CocycleError(ValidationError):
    """A 2-cocycle identity or normalization failed"""


class NotInvariantError(ValidationError):
    """A bicharacter is not invariant under the acting group"""


class CenterNotGradedError(ValidationError):
    """The radical S is not central, so the center K is not graded"""


class PresentationError(ValidationError):
    """A crossed presentation failed one of its checks"""

    def __init__(self, check: str, message: str, witness: Optional[Any] = None):
        super().__init__(f"check {check} failed: {message}", witness)
        self.check = check


class ObstructionError(ValidationError):
    """The monomial shadow cannot carry the requested realization"""
