import os
from dotenv import load_dotenv

load_dotenv()  # Load environment variables once

# Translation sanity check thresholds
REPEAT_FRACTION = float(os.getenv("COREF_REPEAT_FRACTION", "0.9"))
MIN_RUN = int(os.getenv("COREF_MIN_RUN", "5"))

JOBS = int(os.getenv("COREF_JOBS", "1"))
LOG_LEVEL = os.getenv("COREF_LOG_LEVEL", "WARNING")
DEFAULT_LANGUAGE = os.getenv("COREF_DEFAULT_LANGUAGE", "und")

API_HOST = os.getenv("COREF_API_HOST", "localhost")
API_PORT = int(os.getenv("COREF_API_PORT", "8000"))
CORS_ORIGINS = [o for o in os.getenv("COREF_CORS_ORIGINS", "http://localhost:3000").split(",") if o]
