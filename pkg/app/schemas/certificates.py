"""
Cone-kernel certificate schemas
"""
from pydantic import BaseModel, ConfigDict
from typing import Any, Dict, List, Optional

from ..core.config import CERTIFICATE_RATIO_SAMPLES, DEFAULT_SEED


class CertificateOut(BaseModel):
    # campos extras de cada caso (P₁, núcleos, ...) seguem junto
    model_config = ConfigDict(extra="allow")

    case: str
    instance: Dict[str, Any]
    holds: bool
    verdict: str
    multipliers: Optional[List[str]] = None
    witness: Optional[List[str]] = None
    max_ratio: Optional[str] = None


class CertificateRequest(BaseModel):
    system: str
    twist: Optional[str] = None
    case: str
    # pontos por instância para a razão empírica
    n_samples: int = CERTIFICATE_RATIO_SAMPLES
    seed: int = DEFAULT_SEED
