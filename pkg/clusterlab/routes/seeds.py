"""Seed construction: framed seeds by type and seeds of explicit double words."""

from fastapi import APIRouter, HTTPException, Query
from fastapi.responses import PlainTextResponse

from clusterlab.models.documents import OutputFormat, SeedBuildRequest, SeedDocument
from clusterlab.services.cartan import datum_of_type, root_datum
from clusterlab.services.dbc_seed import build_seed, double_word, framed_seed, to_dot
from clusterlab.services.errors import ClusterLabError
from clusterlab.services.export_service import cartan_from_document, seed_document

router = APIRouter()


@router.get("/framed/{cartan_type}", response_model=SeedDocument)
def get_framed_seed(cartan_type: str, output: OutputFormat = Query(OutputFormat.JSON, alias="format")):
    """Framed seed of a finite type (A1, A2, B2, ...). `?format=dot` returns the quiver."""
    try:
        built = framed_seed(datum_of_type(cartan_type))
    except ClusterLabError as e:
        raise HTTPException(status_code=400, detail=str(e))
    if output == OutputFormat.DOT:
        return PlainTextResponse(to_dot(built.seed, built.datum.name or cartan_type))
    return seed_document(built)


@router.post("/build", response_model=SeedDocument)
def post_build_seed(body: SeedBuildRequest):
    try:
        cartan = cartan_from_document(body.cartan)
        datum = root_datum(cartan, name=body.cartan.name or "")
        return seed_document(build_seed(double_word(datum, body.word)))
    except ClusterLabError as e:
        raise HTTPException(status_code=400, detail=str(e))
