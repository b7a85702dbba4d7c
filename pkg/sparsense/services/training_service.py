"""Training service: snapshot matrix in, POD basis directory out."""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from sparsense.core.config import Settings, settings as default_settings
from sparsense.core.errors import SparsenseError
from sparsense.core.response import ServiceResponse
from sparsense.models.basis import RankKind, RankSpec
from sparsense.models.run import MatrixFormat
from sparsense.numerics.basis import fit_pod, hard_threshold
from sparsense.storage import load_matrix, save_basis

logger = logging.getLogger(__name__)


class TrainingService:
    """Fits tailored bases from snapshot files."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings if settings is not None else default_settings

    def train(
        self,
        input_path: Path,
        out_dir: Path,
        rank_spec: RankSpec,
        mean_subtract: Optional[bool] = None,
        fmt: Optional[MatrixFormat] = None,
        provenance: Optional[Dict[str, Any]] = None,
    ) -> ServiceResponse[Dict[str, Any]]:
        """Fit a POD basis to the snapshots in ``input_path`` and save it to ``out_dir``."""
        try:
            if mean_subtract is None:
                mean_subtract = self.settings.DEFAULT_MEAN_SUBTRACT
            snapshots = load_matrix(input_path, fmt)
            basis = fit_pod(snapshots, rank_spec, mean_subtract)
            save_basis(basis, out_dir, provenance)

            data: Dict[str, Any] = {
                "n": snapshots.rows,
                "m": snapshots.cols,
                "r": basis.r,
                "rank_spec": str(rank_spec),
                "mean_subtracted": mean_subtract,
                "sigmas": basis.sigmas,
                "energy_fraction": basis.energy_fraction,
                "basis": str(out_dir),
            }
            if rank_spec.kind == RankKind.AUTO:
                data["threshold"] = hard_threshold(basis.spectrum, snapshots.rows, snapshots.cols)
            logger.info(f"trained basis r={basis.r} from {input_path}")
            return ServiceResponse.success_response(data, f"Trained rank-{basis.r} basis")

        except SparsenseError as e:
            logger.debug(f"train failed: {e.label}: {e}")
            return ServiceResponse.from_exception(e)
        except np.linalg.LinAlgError as e:
            return ServiceResponse.error_response(f"train: LAPACK failure: {e}", code=3, label="LinAlgError")
