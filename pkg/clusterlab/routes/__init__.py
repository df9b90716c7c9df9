"""API routes for clusterlab."""

from fastapi import APIRouter

from clusterlab.routes import health, membership, seeds, verify

api_router = APIRouter(prefix="/api", tags=["api"])

api_router.include_router(health.router)
api_router.include_router(seeds.router, prefix="/seeds", tags=["seeds"])
api_router.include_router(membership.router, prefix="/membership", tags=["membership"])
api_router.include_router(verify.router, prefix="/verify", tags=["verify"])
