"""
Application configuration settings
"""
import logging
import os
from dotenv import load_dotenv

# Carregar variáveis de ambiente
load_dotenv()

# Limites de enumeração e amostragem
WEYL_GROUP_BOUND = int(os.getenv("WEYL_GROUP_BOUND", "1000000"))
SAMPLE_BOUND = int(os.getenv("SAMPLE_BOUND", "20"))
DEFAULT_SAMPLES = int(os.getenv("DEFAULT_SAMPLES", "500"))
# amostras padrão por identidade quando --samples não é informado
IDENTITY_SAMPLES = {"langlands": int(os.getenv("LANGLANDS_SAMPLES", "1000"))}
DEFAULT_SEED = int(os.getenv("DEFAULT_SEED", "1"))
MAX_REDRAWS = int(os.getenv("MAX_REDRAWS", "50"))
MAX_RANK = 8

# Igualdade de somas exponenciais formais: número de pontos de avaliação
EQUALITY_POINTS = int(os.getenv("EQUALITY_POINTS", "8"))

# Limites numéricos (mpmath)
LIMIT_DIGITS = int(os.getenv("LIMIT_DIGITS", "50"))
LIMIT_TOLERANCE = os.getenv("LIMIT_TOLERANCE", "1e-20")
LIMIT_STEP = os.getenv("LIMIT_STEP", "1e-30")

# Teto de amostras para as verificações simbólicas (polinômios, ω, radicial)
GM_SAMPLE_CAP = int(os.getenv("GM_SAMPLE_CAP", "100"))

# ω: mínimo de configurações com (λ, μ) sobre paredes por sistema
OMEGA_MIN_WALLS = int(os.getenv("OMEGA_MIN_WALLS", "50"))

VERIFY_WORKERS = int(os.getenv("VERIFY_WORKERS", "1"))

# Certificados de cones: pontos por instância para a razão empírica (todas as instâncias são enumeradas)
CERTIFICATE_RATIO_SAMPLES = int(os.getenv("CERTIFICATE_RATIO_SAMPLES", "5"))

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# Catálogo padrão
DEFAULT_SYSTEMS = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"]
DEFAULT_TWISTED_SYSTEMS = ["A3:flip", "D4:swap"]

MEASURE_CONVENTION = (
    "on every a_P^Q the lattice spanned by the projected simple coroots of "
    "Delta^Q minus Delta^P has covolume 1 (orbit sums of those coroots on "
    "theta-fixed subspaces)"
)

# Tags para documentação da API
API_TAGS = [
    {
        "name": "verify",
        "description": "Endpoints para execução das suítes de verificação de identidades e consulta do catálogo."
    },
    {
        "name": "compute",
        "description": "Endpoints de cálculo: polinômio de volume, expansão radicial, omega escalar e pertinência ao fecho convexo."
    }
]

# Configuração do FastAPI
APP_CONFIG = {
    "title": "Rootcone API",
    "description": "API para verificação exata da combinatória de sistemas de raízes: paraboliques, classes de Weyl, cones, famílias ortogonais, (G,M)-famílias e variantes torcidas.",
    "version": "1.0.0",
    "docs_url": "/docs",
    "redoc_url": "/redoc",
    "openapi_url": "/openapi.json"
}

# Configuração do Swagger UI
SWAGGER_UI_PARAMETERS = {
    "displayOperationId": True,
    "operationsSorter": "method",
}

# Configuração CORS
CORS_CONFIG = {
    "allow_origins": ["*"],  # Defina origins específicas em produção
    "allow_credentials": True,
    "allow_methods": ["*"],
    "allow_headers": ["*"],
}


def configure_logging(level: str | None = None) -> None:
    """Configure root logging once for the CLI and the HTTP app"""
    logging.basicConfig(level=(level or LOG_LEVEL).upper(), format=LOG_FORMAT)
