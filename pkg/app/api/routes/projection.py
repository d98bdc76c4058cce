from fastapi import APIRouter

from schemas.api import SanityRequest
from schemas.projection import SanityConfig, SanityVerdict
from services.sanity_service import check_translation_sanity

router = APIRouter()


@router.post("/sanity", response_model=SanityVerdict)
def translation_sanity(request: SanityRequest):
    config = SanityConfig(repeat_fraction=request.repeat_fraction, min_run=request.min_run)
    return check_translation_sanity(request.text, config)
