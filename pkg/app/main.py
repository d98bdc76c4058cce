from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from api.routes.decoder import router as decoder_router
from api.routes.documents import router as document_router
from api.routes.projection import router as projection_router
from api.routes.scores import router as score_router
from api.routes.stats import router as stats_router
from core.config import API_HOST, API_PORT, CORS_ORIGINS, LOG_LEVEL
from core.exceptions import CorefToolkitError, coref_exception_handler
from core.logging_config import setup_logging

setup_logging(LOG_LEVEL)

app = FastAPI(title="coref-toolkit")

app.add_middleware(
    CORSMiddleware,
    allow_origins=CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)
app.add_exception_handler(CorefToolkitError, coref_exception_handler)

app.include_router(document_router, prefix="/documents", tags=["Documents"])
app.include_router(score_router, prefix="/scores", tags=["Scores"])
app.include_router(decoder_router, prefix="/decoder", tags=["Decoder"])
app.include_router(stats_router, prefix="/stats", tags=["Statistics"])
app.include_router(projection_router, prefix="/projection", tags=["Projection"])

if __name__ == "__main__":
    import uvicorn
    uvicorn.run("main:app", host=API_HOST, port=API_PORT, reload=True)
