"""
All router imports for easy inclusion in main FastAPI app
"""
from .verify import router as verify_router
from .compute import router as compute_router

__all__ = [
    'verify_router',
    'compute_router',
]
