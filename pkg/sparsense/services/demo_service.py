"""Demonstrations: three-tone compressed sensing and Fekete interpolation."""

import logging
from typing import Optional

import numpy as np

from sparsense.core.config import Settings, settings as default_settings
from sparsense.core.errors import SparsenseError
from sparsense.core.response import ServiceResponse
from sparsense.models.sparse import FeketeReport, SamplingMode, ThreeToneReport
from sparsense.numerics.csrecover import three_tone_demo
from sparsense.numerics.interpolation import fekete_comparison

logger = logging.getLogger(__name__)


class DemoService:
    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings if settings is not None else default_settings

    def three_tone(
        self,
        n: int = 4096,
        p: int = 256,
        seed: int = 0,
        k_max: int = 6,
        sampling: SamplingMode = SamplingMode.RANDOM,
    ) -> ServiceResponse[ThreeToneReport]:
        try:
            report = three_tone_demo(n=n, p=p, seed=seed, k_max=k_max, sampling=sampling)
            message = "Recovered all three tones" if report.match else "Tones not recovered"
            return ServiceResponse.success_response(report, message)
        except SparsenseError as e:
            logger.debug(f"cs-demo failed: {e.label}: {e}")
            return ServiceResponse.from_exception(e)
        except np.linalg.LinAlgError as e:
            return ServiceResponse.error_response(f"cs-demo: LAPACK failure: {e}", code=3, label="LinAlgError")

    def fekete(self, degree: int = 30, grid: int = 1000) -> ServiceResponse[FeketeReport]:
        try:
            report = fekete_comparison(degree=degree, grid_size=grid)
            return ServiceResponse.success_response(report, "Fekete comparison finished")
        except SparsenseError as e:
            logger.debug(f"fekete failed: {e.label}: {e}")
            return ServiceResponse.from_exception(e)
        except np.linalg.LinAlgError as e:
            return ServiceResponse.error_response(f"fekete: LAPACK failure: {e}", code=3, label="LinAlgError")
