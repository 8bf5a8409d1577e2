"""
Compute routes: hull volume, radicial expansion, scalar omega and hull membership
"""
from fastapi import APIRouter

from ..core.deps import http_errors
from ..schemas.compute import (
    HullRequest,
    HullResponse,
    OmegaRequest,
    OmegaResponse,
    RadicialRequest,
    RadicialResponse,
    VolumeRequest,
    VolumeResponse,
)
from ..verification.compute import compute_hull, compute_omega, compute_radicial, compute_volume

router = APIRouter(prefix="/compute", tags=["compute"])


@router.post("/volume", response_model=VolumeResponse, summary="Volume γ_M de uma família ortogonal")
def volume(req: VolumeRequest):
    """
    Calcula γ_M(𝒳) com duas formas auxiliares independentes.

    Para famílias regulares de posto ≤ 3 inclui também o volume triangulado do fecho convexo.
    """
    with http_errors():
        return compute_volume(req)


@router.post("/radicial", response_model=RadicialResponse, summary="Expansão radicial de γ_L∘j")
def radicial(req: RadicialRequest):
    """
    Retorna o polinômio em z_β calculado pelas duas vias e, se pedido,
    o valor em **z** e o teste do operador diferencial para **g**.
    """
    with http_errors():
        return compute_radicial(req)


@router.post("/omega", response_model=OmegaResponse, summary="ω escalar com singularidades removidas")
def omega(req: OmegaRequest):
    with http_errors():
        return compute_omega(req)


@router.post("/hull", response_model=HullResponse, summary="Pertinência ao fecho convexo")
def hull(req: HullRequest):
    with http_errors():
        return compute_hull(req)
