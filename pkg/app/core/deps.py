"""
Common helpers used across routers
"""
import logging
from contextlib import contextmanager

from fastapi import HTTPException, status

from .errors import BoundarySampleError, GroupBoundExceededError, PoleError, USAGE_ERRORS

logger = logging.getLogger(__name__)


@contextmanager
def http_errors():
    """Translate library errors into HTTPException (400 input, 413 bound, 422 degenerate sample)"""
    try:
        yield
    except GroupBoundExceededError as exc:
        logger.error("group bound exceeded: %s", exc)
        raise HTTPException(status_code=status.HTTP_413_REQUEST_ENTITY_TOO_LARGE, detail=str(exc))
    except USAGE_ERRORS as exc:
        raise HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(exc))
    except (BoundarySampleError, PoleError) as exc:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(exc))
