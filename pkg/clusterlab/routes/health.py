"""Health endpoint."""

from fastapi import APIRouter

from clusterlab import __version__
from clusterlab.config import DEFAULT_DEPTH, MAX_SEEDS
from clusterlab.services.verify_service import suite_names

router = APIRouter(tags=["health"])


@router.get("/health", summary="Health check")
def health():
    """Liveness plus the effective engine limits and the available suites."""
    return {
        "status": "ok",
        "version": __version__,
        "max_seeds": MAX_SEEDS,
        "default_depth": DEFAULT_DEPTH,
        "suites": suite_names(),
    }
