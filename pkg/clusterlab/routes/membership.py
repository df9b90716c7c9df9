"""Membership queries against framed seeds."""

import logging

from fastapi import APIRouter, HTTPException

from clusterlab.models.documents import MembershipReport, MembershipRequest
from clusterlab.services.cartan import datum_of_type
from clusterlab.services.dbc_seed import framed_seed
from clusterlab.services.errors import ClusterLabError
from clusterlab.services.export_service import membership_report
from clusterlab.services.expression import membership_query

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("", response_model=MembershipReport)
def post_membership(body: MembershipRequest):
    """
    Decide whether the expression lies in the partially compactified upper
    cluster algebra for Σ, in the upper cluster algebra only, or neither.
    """
    try:
        built = framed_seed(datum_of_type(body.cartan_type))
        f, vertices, result = membership_query(body.expression, built, body.sigma, body.depth)
    except ClusterLabError as e:
        logger.info("membership rejected: %s", e)
        raise HTTPException(status_code=400, detail=str(e))
    return membership_report(result, f, body.expression, built, vertices)
