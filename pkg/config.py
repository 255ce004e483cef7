# config.py
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# --- Series Configuration ---
SERIES_ORDER = int(os.getenv("LOGHARMONIC_SERIES_ORDER", "64"))

# --- Supremum Search Grid ---
NORM_RADII = int(os.getenv("LOGHARMONIC_NORM_RADII", "96"))
NORM_ANGLES = int(os.getenv("LOGHARMONIC_NORM_ANGLES", "384"))
NORM_R_MAX = float(os.getenv("LOGHARMONIC_NORM_R_MAX", str(1 - 1e-4)))
REFINE_ITERS = int(os.getenv("LOGHARMONIC_REFINE_ITERS", "30"))
BRACKET_TOL = float(os.getenv("LOGHARMONIC_BRACKET_TOL", "1e-12"))

# --- Class R Certificate Grid ---
CLASS_R_RADII = int(os.getenv("LOGHARMONIC_CLASS_R_RADII", "64"))
CLASS_R_ANGLES = int(os.getenv("LOGHARMONIC_CLASS_R_ANGLES", "256"))
CLASS_R_R_MAX = float(os.getenv("LOGHARMONIC_CLASS_R_R_MAX", "0.995"))

# --- Starlikeness Grid ---
STARLIKE_RADII = int(os.getenv("LOGHARMONIC_STARLIKE_RADII", "64"))
STARLIKE_ANGLES = int(os.getenv("LOGHARMONIC_STARLIKE_ANGLES", "256"))
STARLIKE_R_MAX = float(os.getenv("LOGHARMONIC_STARLIKE_R_MAX", "0.999"))
STARLIKE_R_MIN = float(os.getenv("LOGHARMONIC_STARLIKE_R_MIN", "0.05"))

# --- Quadrature ---
PATH_NODES = int(os.getenv("LOGHARMONIC_PATH_NODES", "96"))
QUAD_TOL = float(os.getenv("LOGHARMONIC_QUAD_TOL", "1e-12"))
QUAD_MAX_DEPTH = int(os.getenv("LOGHARMONIC_QUAD_MAX_DEPTH", "40"))

# --- Rendering ---
RENDER_R_MAX = float(os.getenv("LOGHARMONIC_RENDER_R_MAX", "0.995"))
RENDER_THETA = int(os.getenv("LOGHARMONIC_RENDER_THETA", "256"))
RENDER_RAYS = int(os.getenv("LOGHARMONIC_RENDER_RAYS", "16"))
RENDER_CIRCLES = int(os.getenv("LOGHARMONIC_RENDER_CIRCLES", "8"))

# --- Output & Logging ---
OUTPUT_DIR = os.getenv("LOGHARMONIC_OUTPUT_DIR", "output")
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
