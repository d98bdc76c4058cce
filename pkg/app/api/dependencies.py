from fastapi import Query

from core.config import JOBS
from services.decoder_service import DecoderService
from services.document_service import DocumentService
from services.stats_service import StatsService


def get_document_service(jobs: int = Query(JOBS, ge=1)) -> DocumentService:
    return DocumentService(jobs=jobs)


def get_decoder_service(jobs: int = Query(JOBS, ge=1)) -> DecoderService:
    return DecoderService(jobs=jobs)


def get_stats_service(jobs: int = Query(JOBS, ge=1)) -> StatsService:
    return StatsService(jobs=jobs)
