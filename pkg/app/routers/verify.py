"""
Verification routes: identity suites, the catalogue and certificates
"""
from fastapi import APIRouter
from typing import List

from ..core.deps import http_errors
from ..schemas.certificates import CertificateOut, CertificateRequest
from ..schemas.suite import CatalogueItem, Report, SuiteConfig
from ..verification.catalogue import catalogue_listing
from ..verification.compute import list_certificates
from ..verification.suite import run_suite

router = APIRouter(prefix="/verify", tags=["verify"])


@router.post("/suite", response_model=Report, summary="Executar uma suíte de identidades")
def verify_suite(config: SuiteConfig):
    """
    Executa as identidades pedidas sobre o sistema indicado (ou sobre o catálogo padrão).

    - **system_spec**: sistema, ex. `A3` ou `A3:flip`
    - **identities**: subconjunto do catálogo; vazio roda todas as que se aplicam
    - **n_samples** / **seed**: a mesma configuração produz o mesmo relatório; sem **n_samples**, cada identidade
      usa seu padrão (`langlands` roda 1000 amostras)
    """
    with http_errors():
        return run_suite(config)


@router.get("/catalogue", response_model=List[CatalogueItem], summary="Listar o catálogo de identidades")
def get_catalogue():
    """Retorna cada identidade com seu grupo e os referenciais (plain/twisted) em que roda."""
    return catalogue_listing()


@router.post("/certificates", response_model=List[CertificateOut], summary="Listar certificados de um caso")
def get_certificates(req: CertificateRequest):
    """
    Produz os certificados exatos de um caso (q-map, fixed-point, sigma-split) num referencial torcido.

    Todas as instâncias do caso são enumeradas; **n_samples** é o número de pontos por instância
    usados na razão empírica.
    """
    with http_errors():
        return list_certificates(req)
