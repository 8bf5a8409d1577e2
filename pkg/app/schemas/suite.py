"""
Suite configuration and report schemas
"""
from pydantic import BaseModel, Field, field_validator
from typing import Any, Dict, List, Optional

from ..core.config import DEFAULT_SAMPLES, DEFAULT_SEED, IDENTITY_SAMPLES, SAMPLE_BOUND, VERIFY_WORKERS
from ..models.enums import IdentityId


class SuiteConfig(BaseModel):
    system_spec: Optional[str] = Field(None, description="Sistema, ex. 'A3' ou 'A3:flip'; vazio roda o catálogo padrão")
    twist_spec: Optional[str] = Field(None, description="Automorfismo do diagrama: id, flip, swap ou perm=...")
    identities: List[str] = Field(default_factory=list, description="Identidades do catálogo (vazio = todas)")
    n_samples: int = Field(DEFAULT_SAMPLES, description="Amostras por identidade")
    identity_samples: Dict[str, int] = Field(default_factory=lambda: dict(IDENTITY_SAMPLES),
                                             description="Padrão por identidade, usado quando n_samples é omitido")
    seed: int = Field(DEFAULT_SEED, description="Semente de 64 bits")
    sample_bound: int = Field(SAMPLE_BOUND, description="N da distribuição p/q")
    output_path: Optional[str] = Field(None, description="Arquivo JSON de saída")
    workers: int = Field(VERIFY_WORKERS, description="Processos para dividir as identidades")

    @field_validator("n_samples", "sample_bound", "workers")
    @classmethod
    def at_least_one(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @field_validator("seed")
    @classmethod
    def seed_in_64_bits(cls, value: int) -> int:
        if not 0 <= value < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        return value

    @field_validator("identities")
    @classmethod
    def known_identities(cls, values: List[str]) -> List[str]:
        known = {i.value for i in IdentityId}
        unknown = [v for v in values if v not in known]
        if unknown:
            raise ValueError(f"unknown identities: {', '.join(unknown)}")
        return values

    def samples_for(self, identity: IdentityId | str) -> int:
        """n_samples when given explicitly, otherwise the identity's own default"""
        if "n_samples" in self.model_fields_set:
            return self.n_samples
        return self.identity_samples.get(IdentityId(identity).value, self.n_samples)


class IdentityReport(BaseModel):
    identity: str
    description: str
    n_samples: int = Field(..., description="Amostras pedidas para esta identidade")
    checked: int
    skipped_boundary: int
    failed: int
    passed: bool
    witnesses: List[Dict[str, Any]] = []
    notes: Dict[str, Any] = {}
    elapsed: float = Field(0.0, description="Segundos; único campo dependente do relógio")


class SystemReport(BaseModel):
    system: str
    twist: Optional[str] = None
    label: str
    weyl_order: int
    identities: List[IdentityReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.identities)


class ReportHeader(BaseModel):
    version: str
    measure_convention: str
    realization: Dict[str, List[List[str]]] = Field(..., description="Raízes simples por sistema, em 'p/q'")
    seed: int
    sample_bound: int
    n_samples: int


class Report(BaseModel):
    header: ReportHeader
    systems: List[SystemReport]
    passed: bool
    failures: List[str] = []


class CatalogueItem(BaseModel):
    identity: str
    group: str
    frames: List[str]
    description: str
