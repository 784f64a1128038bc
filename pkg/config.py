import os

# Scan
LIMIT = 2**22  # desk-scale default; the published tables go to 2**40
BINS = 120
HIST_RANGE = (-6.0, 6.0)
CHUNK_SIZE = 2**20
MAX_MOMENT = 10
LIFT_THRESHOLD = 149  # first prime above 16 g^2 = 144
SQRT_STRATEGY = "tonelli-shanks"  # or "cipolla"
SEED = 69

# Theory
QUADRATURE_POINTS = 256
TORUS_TOL = 1e-9
MAX_COMPONENTS = 256
NULLSPACE_RTOL = 1e-8

# Compute related
ACCELERATOR = "cpu"  # "gpu" runs the Haar quadrature on CUDA when available
NUM_WORKERS = int(os.environ.get("SATOTATE_NUM_WORKERS", os.cpu_count() or 1))

# Output
OUTPUT_DIR = "./results/"
LOG_DIR = "./scan_logs/"
