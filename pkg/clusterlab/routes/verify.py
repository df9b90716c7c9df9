"""Run acceptance suites over HTTP."""

from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from clusterlab.models.documents import SuiteReportDocument
from clusterlab.services.errors import ClusterLabError
from clusterlab.services.verify_service import default_config, run_suite, suite_names

router = APIRouter()


@router.get("/{suite}", response_model=SuiteReportDocument)
def get_suite_report(
    suite: str,
    samples: Optional[int] = Query(None, ge=1),
    seed: Optional[int] = Query(None),
    depth: Optional[int] = Query(None, ge=0),
    k: Optional[int] = Query(None, ge=0),
):
    if suite not in suite_names():
        raise HTTPException(status_code=404, detail=f"Suite '{suite}' not found")
    try:
        config = default_config(suite, seed, depth, samples, k, command="api")
        return run_suite(suite, config).to_document()
    except ClusterLabError as e:
        raise HTTPException(status_code=400, detail=str(e))
