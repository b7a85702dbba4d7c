"""Placement service: choose sensors for a stored basis and score them."""

import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from sparsense.core.config import Settings, settings as default_settings
from sparsense.core.errors import InfeasibleSensorCount, SparsenseError
from sparsense.core.response import ServiceResponse
from sparsense.models.basis import TailoredBasis
from sparsense.models.run import PlaceMethod
from sparsense.models.sensors import CriterionKind, PlacementCriterion, SensorSetRecord
from sparsense.numerics.placement import (
    brute_force_optimal,
    compare_to_optimum,
    evaluate_criterion,
    select_deim_sensors,
    select_qr_sensors,
    select_random_sensors,
)
from sparsense.storage import load_basis, load_sensors, save_sensors

logger = logging.getLogger(__name__)


class PlacementService:
    """Sensor placement and criterion evaluation against stored bases."""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings if settings is not None else default_settings

    # ==================== Helpers ====================

    def criteria_values(self, basis: TailoredBasis, sensors: SensorSetRecord) -> Dict[str, Optional[float]]:
        """All four criteria; full-rank criteria are ``None`` when p < r."""
        values: Dict[str, Optional[float]] = {}
        for kind in CriterionKind:
            criterion = PlacementCriterion(kind=kind)
            if criterion.requires_full_rank and sensors.p < basis.r:
                values[kind.value] = None
                continue
            values[kind.value] = evaluate_criterion(basis, sensors, criterion)
        return values

    def select(
        self,
        basis: TailoredBasis,
        method: PlaceMethod,
        p: Optional[int],
        criterion: PlacementCriterion,
        seed: int = 0,
    ) -> SensorSetRecord:
        if method == PlaceMethod.QR:
            return select_qr_sensors(basis, p, max_n=self.settings.OVERSAMPLE_MAX_N)
        if method == PlaceMethod.DEIM:
            if p is not None and p != basis.r:
                raise InfeasibleSensorCount(f"DEIM places exactly r={basis.r} sensors, asked for p={p}")
            return select_deim_sensors(basis)
        if method == PlaceMethod.RANDOM:
            record = select_random_sensors(basis.n, p, seed)
            return record.model_copy(update={"r": basis.r, "generator": self.settings.RANDOM_GENERATOR})
        return brute_force_optimal(
            basis,
            p,
            criterion,
            limit=self.settings.BRUTE_FORCE_LIMIT,
            batch=self.settings.BRUTE_FORCE_BATCH,
        )

    # ==================== Operations ====================

    def place(
        self,
        basis_dir: Path,
        out: Path,
        method: PlaceMethod,
        p: Optional[int],
        criterion: PlacementCriterion,
        seed: int = 0,
        provenance: Optional[Dict[str, Any]] = None,
    ) -> ServiceResponse[Dict[str, Any]]:
        """Place sensors for the basis in ``basis_dir`` and write the sensor record to ``out``."""
        try:
            basis = load_basis(basis_dir)
            record = self.select(basis, method, p, criterion, seed)
            save_sensors(record, out, provenance)
            data = {
                "sensors": record,
                "criteria": self.criteria_values(basis, record),
                "out": str(out),
            }
            logger.info(f"placed {record.p} sensors with {record.method.value}")
            return ServiceResponse.success_response(data, f"Placed {record.p} sensors")

        except SparsenseError as e:
            logger.debug(f"place failed: {e.label}: {e}")
            return ServiceResponse.from_exception(e)
        except np.linalg.LinAlgError as e:
            return ServiceResponse.error_response(f"place: LAPACK failure: {e}", code=3, label="LinAlgError")

    def evaluate(
        self,
        basis_dir: Path,
        sensors_path: Path,
        criterion: Optional[PlacementCriterion] = None,
        compare: bool = False,
    ) -> ServiceResponse[Dict[str, Any]]:
        """Score a stored sensor set; ``criterion=None`` reports all four criteria.

        With ``compare`` the set is also ranked against the exhaustive optimum
        for the chosen criterion (d-optimal when none is given).
        """
        try:
            basis = load_basis(basis_dir)
            record = load_sensors(sensors_path)
            if criterion is None:
                criteria = self.criteria_values(basis, record)
            else:
                criteria = {criterion.kind.value: evaluate_criterion(basis, record, criterion)}
            data: Dict[str, Any] = {"p": record.p, "r": basis.r, "n": basis.n, "criteria": criteria}
            if compare:
                data["optimum"] = compare_to_optimum(
                    basis,
                    record,
                    criterion or PlacementCriterion(),
                    limit=self.settings.BRUTE_FORCE_LIMIT,
                )
            return ServiceResponse.success_response(data, "Criteria evaluated")

        except SparsenseError as e:
            logger.debug(f"eval failed: {e.label}: {e}")
            return ServiceResponse.from_exception(e)
        except np.linalg.LinAlgError as e:
            return ServiceResponse.error_response(f"eval: LAPACK failure: {e}", code=3, label="LinAlgError")
