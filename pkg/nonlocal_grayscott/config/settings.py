"""Default settings and constants for the nonlocal Gray-Scott solver."""

# Quadrature settings
DEFAULT_QUAD_EPSABS = 1e-12
DEFAULT_QUAD_EPSREL = 1e-10
DEFAULT_QUAD_LIMIT = 2000

# Boundary settings
DEFAULT_DECAY_EXPONENT = 2.0
DEFAULT_FAR_FIELD_OFFSET = 0.0

# Neumann extension
EXTENSION_RESIDUAL_TOLERANCE = 1e-10

# Time stepping
DEFAULT_STEADY_TOLERANCE = 1e-8
DEFAULT_CHECKPOINT_EVERY = 1000
DEFAULT_SPECTRAL_SCHEME = "imex-bdf2"
IMAGINARY_RESIDUE_TOLERANCE = 1e-12

# Pulse initial condition (alpha, beta)
DEFAULT_PULSE_ALPHA = 0.1
DEFAULT_PULSE_BETA = 3.0

# Profile metrics
PLATEAU_LEVEL = 0.95

# Output settings
CSV_FLOAT_FORMAT = "%.17e"
PROFILE_FILE = "profile.csv"
HISTORY_FILE = "history.csv"
REPORT_FILE = "report.csv"
CHECKPOINT_FILE = "checkpoint.csv"
DETERMINANT_FILE = "determinant.csv"
COMPARISON_FILE = "comparison.csv"
PLOT_SCRIPT_FILE = "plot.gp"

# Environment
LOG_LEVEL_ENV_VAR = "NLGS_LOG_LEVEL"
OUTPUT_DIR_ENV_VAR = "NLGS_OUTPUT_DIR"
DEFAULT_LOG_LEVEL = "INFO"
DEFAULT_OUTPUT_DIR = "out"

# Exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID_CONFIG = 2
EXIT_DIVERGED = 3
