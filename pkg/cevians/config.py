import os
from dotenv import load_dotenv

load_dotenv()

LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

RANDOM_SEED = int(os.getenv("RANDOM_SEED", "42"))

# Numeric tolerances
DEFAULT_TOL = float(os.getenv("DEFAULT_TOL", "1e-9"))
MIN_ANGLE = float(os.getenv("MIN_ANGLE", "1e-6"))
ISOSCELES_TOL = float(os.getenv("ISOSCELES_TOL", "1e-9"))
LOCUS_ENDPOINT_MARGIN = float(os.getenv("LOCUS_ENDPOINT_MARGIN", "1e-4"))

GAP_SAMPLES = int(os.getenv("GAP_SAMPLES", "1000"))
LOCUS_SAMPLES = int(os.getenv("LOCUS_SAMPLES", "200"))
LOCUS_L_MAX = float(os.getenv("LOCUS_L_MAX", "50"))
TETRA_STARTS = int(os.getenv("TETRA_STARTS", "100"))
TETRA_MAX_ITER = int(os.getenv("TETRA_MAX_ITER", "200"))

SVG_PIXELS = int(os.getenv("SVG_PIXELS", "800"))
SVG_CLIP = float(os.getenv("SVG_CLIP", "3.0"))
CSV_SIGNIFICANT_DIGITS = int(os.getenv("CSV_SIGNIFICANT_DIGITS", "6"))
JSON_SIGNIFICANT_DIGITS = int(os.getenv("JSON_SIGNIFICANT_DIGITS", "12"))

# Published values of the tetrahedron experiment; reported as annotations only.
PUBLISHED_TETRA_SOLUTION = (8.660, 7.071, 9.659)
PUBLISHED_TETRA_FACE_AREA = 118.301
