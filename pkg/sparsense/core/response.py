"""Unified service response formats."""

from typing import Generic, Optional, TypeVar

from pydantic import BaseModel, ConfigDict

from sparsense.core.errors import SparsenseError

T = TypeVar('T')


class ServiceResponse(BaseModel, Generic[T]):
    """Outcome of a service call; ``code`` is the CLI exit status."""

    success: bool
    data: Optional[T] = None
    error: Optional[str] = None
    error_label: Optional[str] = None
    code: int = 0
    message: Optional[str] = None

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @classmethod
    def success_response(cls, data: T, message: Optional[str] = None) -> 'ServiceResponse[T]':
        return cls(success=True, data=data, message=message, code=0)

    @classmethod
    def error_response(cls, error: str, code: int = 3, label: Optional[str] = None) -> 'ServiceResponse[T]':
        return cls(success=False, error=error, error_label=label, code=code)

    @classmethod
    def from_exception(cls, exc: SparsenseError) -> 'ServiceResponse[T]':
        """Map a typed error onto its exit status."""
        return cls.error_response(str(exc), code=exc.exit_code, label=exc.label)
