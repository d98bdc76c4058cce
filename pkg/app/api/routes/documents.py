from typing import List

from fastapi import APIRouter, Depends

from api.dependencies import get_document_service
from schemas.document import Document, Violation
from services.document_service import DocumentService, expand_split_antecedents

router = APIRouter()


@router.post("/validate", response_model=List[Violation])
def validate_documents(docs: List[Document], document_service: DocumentService = Depends(get_document_service)):
    return document_service.validate_corpus(docs)


@router.post("/expand", response_model=Document)
def expand_document(doc: Document):
    return expand_split_antecedents(doc)
