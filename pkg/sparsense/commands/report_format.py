"""Run report envelope.

Every command writes one JSON object with the same keys, whether it
succeeded or failed, so scripts can read results without knowing the command.
"""

from datetime import datetime, timezone
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

ERROR_METRIC = "relative 2-norm ||x - x_hat|| / ||x|| per snapshot"


class ReportFailure(BaseModel):
    """Error block: ``code`` is the error label, e.g. ``SingularInterpolant``."""

    message: str
    code: str = "OPERATION_FAILED"
    exit_status: int = 3


class RunReport(BaseModel):
    """Outcome of one subcommand run with its provenance block."""

    success: bool
    operation: str
    data: Any = None
    message: Optional[str] = None
    timestamp: Optional[str] = None
    metadata: Dict[str, Any] = Field(default_factory=dict)
    error: Optional[ReportFailure] = None

    @staticmethod
    def _stamp(enabled: bool) -> Optional[str]:
        return datetime.now(timezone.utc).isoformat() if enabled else None

    @classmethod
    def completed(
        cls,
        operation: str,
        data: Any,
        metadata: Dict[str, Any],
        message: Optional[str] = None,
        stamped: bool = True,
    ) -> "RunReport":
        """Report for a finished run; ``stamped=False`` leaves ``timestamp`` null."""
        return cls(
            success=True,
            operation=operation,
            data=data,
            message=message or f"{operation} completed successfully",
            timestamp=cls._stamp(stamped),
            metadata=metadata,
        )

    @classmethod
    def failed(
        cls,
        operation: str,
        failure: ReportFailure,
        metadata: Dict[str, Any],
        stamped: bool = True,
    ) -> "RunReport":
        return cls(
            success=False,
            operation=operation,
            timestamp=cls._stamp(stamped),
            metadata=metadata,
            error=failure,
        )

    def as_document(self) -> Dict[str, Any]:
        """Plain dict for the JSON writer; ``data`` is passed through untouched."""
        return {
            "success": self.success,
            "operation": self.operation,
            "data": self.data,
            "message": self.message,
            "timestamp": self.timestamp,
            "metadata": self.metadata,
            "error": None if self.error is None else self.error.model_dump(),
        }
