"""
Compute command schemas: families, polynomials and exponential values
"""
from pydantic import BaseModel, Field, model_validator
from typing import Dict, List, Optional, Union

from ..core.config import DEFAULT_SEED

Rational = Union[str, int]


class OrthogonalFamilyFile(BaseModel):
    """X_s por palavra reduzida, ou o atalho T / T0 de family_from_T"""
    values: Optional[Dict[str, List[Rational]]] = None
    T: Optional[List[Rational]] = None
    T0: Optional[List[Rational]] = None

    @model_validator(mode="after")
    def values_or_T(self) -> "OrthogonalFamilyFile":
        if self.values is None and self.T is None:
            raise ValueError("a family needs either 'values' or 'T'")
        return self

    def as_mapping(self) -> dict:
        return self.model_dump(exclude_none=True)


class PolynomialTerm(BaseModel):
    exponents: List[int]
    coefficient: str


class PolynomialOut(BaseModel):
    symbols: List[str]
    terms: List[PolynomialTerm]


class ExpValueOut(BaseModel):
    """Σ c·e^a: expoente a → coeficiente c, ambos 'p/q'"""
    terms: Dict[str, str]
    rational: Optional[str] = None


class FrameRequest(BaseModel):
    system: str = Field(..., description="Sistema, ex. 'A2' ou 'A3:flip'")
    twist: Optional[str] = Field(None, description="Automorfismo do diagrama")
    seed: int = Field(DEFAULT_SEED, description="Semente das formas auxiliares")


class VolumeRequest(FrameRequest):
    levi: str = Field("", description="Subconjunto de raízes simples de M (vazio = M0)")
    family: OrthogonalFamilyFile


class VolumeResponse(BaseModel):
    system: str
    levi: List[int]
    measure_convention: str
    regular: bool
    value: str
    independent: bool
    hull_volume: Optional[str] = None


class RadicialRequest(FrameRequest):
    levi: str = Field(..., description="Levi L (própria) da expansão")
    projected: bool = Field(False, description="Família em M0 projetada em L")
    z: Optional[List[Rational]] = Field(None, description="Valores z_β alinhados com as raízes listadas")
    g: Optional[str] = Field(None, description="Função teste p(y)·exp(q(y)) em y1..yN")


class DifferentialOut(BaseModel):
    limit: str
    derivative: str
    agree: bool


class RadicialResponse(BaseModel):
    system: str
    levi: List[int]
    carrier: List[int]
    measure_convention: str
    degree: int
    roots: List[List[str]]
    polynomial: PolynomialOut
    agree: bool
    multilinear: bool
    bases: int
    value: Optional[str] = None
    differential: Optional[DifferentialOut] = None


class OmegaRequest(FrameRequest):
    P: str = Field(..., description="Parabólico padrão P")
    Q: str = Field(..., description="Parabólico padrão Q")
    T: List[Rational]
    lam: List[Rational] = Field(..., description="λ ∈ 𝔞_P")
    mu: List[Rational] = Field(..., description="μ ∈ 𝔞_Q")


class OmegaResponse(BaseModel):
    system: str
    associated: bool
    value: ExpValueOut
    regrouped_agree: bool
    numeric_ok: bool
    numeric: Optional[str] = None
    exact: Optional[str] = None


class HullRequest(FrameRequest):
    levi: str = Field("", description="Subconjunto de raízes simples de M")
    family: OrthogonalFamilyFile
    H: List[Rational]


class HullResponse(BaseModel):
    system: str
    levi: List[int]
    member: int
    points: List[List[str]]
