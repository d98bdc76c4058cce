from typing import List

from fastapi import APIRouter, Depends

from api.dependencies import get_decoder_service
from schemas.document import Document
from schemas.scores import AntecedentChoice, PairwiseScores
from services.decoder_service import DecoderService, antecedent_choices, decode_document

router = APIRouter()


@router.post("/", response_model=Document)
def decode_scores(scores: PairwiseScores):
    return decode_document(scores)


@router.post("/batch", response_model=List[Document])
def decode_score_batch(records: List[PairwiseScores], decoder_service: DecoderService = Depends(get_decoder_service)):
    return decoder_service.decode_corpus(records)


@router.post("/choices", response_model=List[AntecedentChoice])
def explain_scores(scores: PairwiseScores):
    return antecedent_choices(scores)
