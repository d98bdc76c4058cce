from typing import List

from fastapi import APIRouter, Depends

from api.dependencies import get_stats_service
from schemas.api import StatsResponse
from schemas.document import Document
from services.stats_service import StatsService, split_antecedent_ratio

router = APIRouter()


@router.post("/", response_model=StatsResponse)
def corpus_statistics(docs: List[Document], stats_service: StatsService = Depends(get_stats_service)):
    total = stats_service.corpus_stats([(None, docs)])[-1].stats
    ratio = split_antecedent_ratio(total) if total.n_mentions else None
    return StatsResponse(stats=total, split_antecedent_ratio=ratio)
