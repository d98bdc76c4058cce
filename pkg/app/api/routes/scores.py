from fastapi import APIRouter, Query

from core.config import JOBS
from schemas.api import ScoreRequest
from schemas.report import ScoreReport
from services.scoring_service import ScoringService

router = APIRouter()


@router.post("/", response_model=ScoreReport)
def score_documents(request: ScoreRequest, jobs: int = Query(JOBS, ge=1)):
    scoring_service = ScoringService(singletons=request.singletons, split=request.split, jobs=jobs)
    return scoring_service.score_corpus(request.key, request.response, per_document=request.per_document)
