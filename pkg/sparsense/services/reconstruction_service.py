"""Reconstruction service: measurements in, full states out."""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from sparsense.core.config import Settings, settings as default_settings
from sparsense.core.errors import DimensionMismatch, SparsenseError
from sparsense.core.response import ServiceResponse
from sparsense.models.reconstruction import NoiseModel
from sparsense.models.run import MatrixFormat
from sparsense.numerics.reconstruct import add_measurement_noise, gappy_reconstruct
from sparsense.storage import load_basis, load_matrix, load_sensors, save_matrix

logger = logging.getLogger(__name__)


class ReconstructionService:
    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings if settings is not None else default_settings

    def reconstruct(
        self,
        basis_dir: Path,
        sensors_path: Path,
        measurements_path: Path,
        out: Path,
        truth_path: Optional[Path] = None,
        eta: float = 0.0,
        seed: int = 0,
        fmt: Optional[MatrixFormat] = None,
    ) -> ServiceResponse[Dict[str, Any]]:
        """Reconstruct one state per measurement column and write the n×k state matrix.

        With ``eta > 0`` seeded Gaussian noise is added to the measurements
        first. Relative errors are reported when ``truth_path`` is given.
        """
        try:
            basis = load_basis(basis_dir)
            sensors = load_sensors(sensors_path)
            y = load_matrix(measurements_path, fmt).values
            if y.shape[0] != sensors.p:
                raise DimensionMismatch(
                    f"{measurements_path}: expected {sensors.p} rows (one per sensor), got {y.shape[0]}"
                )
            truth = None
            if truth_path is not None:
                truth = load_matrix(truth_path, fmt).values
                if truth.shape != (basis.n, y.shape[1]):
                    raise DimensionMismatch(
                        f"{truth_path}: expected shape {(basis.n, y.shape[1])}, got {truth.shape}"
                    )

            noisy = add_measurement_noise(y, NoiseModel(eta=eta, seed=seed))
            results = [
                gappy_reconstruct(basis, sensors, noisy[:, j], None if truth is None else truth[:, j])
                for j in range(noisy.shape[1])
            ]
            states = np.column_stack([result.state for result in results])
            save_matrix(states, out, fmt)

            data: Dict[str, Any] = {
                "n": basis.n,
                "r": basis.r,
                "p": sensors.p,
                "k": len(results),
                "kappa": results[0].kappa,
                "eta": eta,
                "coeffs": [result.coeffs for result in results],
                "out": str(out),
            }
            if truth is not None:
                errors = [result.rel_error for result in results]
                data["rel_errors"] = errors
                data["mean_rel_error"] = float(np.mean(errors))
            logger.info(f"reconstructed {len(results)} states with kappa={data['kappa']:.3e}")
            return ServiceResponse.success_response(data, f"Reconstructed {len(results)} states")

        except SparsenseError as e:
            logger.debug(f"reconstruct failed: {e.label}: {e}")
            return ServiceResponse.from_exception(e)
        except np.linalg.LinAlgError as e:
            return ServiceResponse.error_response(f"reconstruct: LAPACK failure: {e}", code=3, label="LinAlgError")
