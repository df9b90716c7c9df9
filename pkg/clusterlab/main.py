"""
clusterlab FastAPI application entrypoint.

Run with: uvicorn clusterlab.main:app --reload
"""

from contextlib import asynccontextmanager

from fastapi import FastAPI

from clusterlab import __version__
from clusterlab.routes import api_router
from clusterlab.utils.logging import configure_logging


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Configure logging on startup. The app is stateless."""
    configure_logging()
    yield


app = FastAPI(
    title="clusterlab API",
    description="""Exact cluster structures on double Bruhat cells and Vinberg monoids.

Read-only: every request builds its seeds from scratch. Reports match the CLI's JSON output.
""",
    version=__version__,
    lifespan=lifespan,
)

app.include_router(api_router)


@app.get("/")
def root():
    return {"service": "clusterlab", "docs": "/docs", "api": "/api"}
