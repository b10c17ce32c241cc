"""
Constants and configuration settings for Bratteli Kit.
"""

# Numeric modes
MODE_EXACT = "exact"
MODE_FLOAT = "float"
SUPPORTED_MODES = {MODE_EXACT, MODE_FLOAT}

# Tolerances
DEFAULT_TOL = 1e-12  # float checks (recursions, eigenvectors)
GEOMETRY_TOL = 1e-9  # rectangle / identification comparisons
WEIGHT_CONVERGENCE_FACTOR = 1e-2  # max |w* - w_k| <= factor * min w*
DEFAULT_ETA = 0.05
POWER_ITERATION_MAX_STEPS = 10_000
PRIMITIVITY_MAX_POWER = 64

# Order policies
POLICY_LEFT_RIGHT = "default-left-right"
POLICY_RIGHT_LEFT = "right-left"
SUPPORTED_POLICIES = {POLICY_LEFT_RIGHT, POLICY_RIGHT_LEFT}

# Successor extension over maximal paths
EXTENSION_NONE = "none"
EXTENSION_PERIODIC = "periodic"
EXTENSION_WRAP = "wrap"
SUPPORTED_EXTENSIONS = {EXTENSION_NONE, EXTENSION_PERIODIC, EXTENSION_WRAP}

# Periodic component candidates need this many single-incoming levels past the head
PERIODIC_CONFIRM_LEVELS = 3

# Exit codes
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VALIDATION = 2
EXIT_TOLERANCE = 3
EXIT_INCONCLUSIVE = 4

# Output rendering
SVG_CANVAS = 480  # pixel side of the drawing area
PNG_CANVAS = 512
PNG_BG = (28, 28, 30)
PNG_RECT_COLORS = [
    (180, 119, 31), (14, 127, 255), (44, 160, 44), (40, 39, 214),
    (189, 103, 148), (75, 86, 140), (194, 119, 227), (127, 127, 127),
]

# Default settings
DEFAULT_SETTINGS = {
    'mode': MODE_FLOAT,
    'tol': DEFAULT_TOL,
    'geometry_tol': GEOMETRY_TOL,
    'depth': 8,
    'max_shift': 60,
    'window_depth': 3,
    'n_terms': 100,
    'seed': 0,
    'output_dir': 'brattelikit_out',
    'eta': DEFAULT_ETA,
    'epsilon': None,  # None -> min w*/4
    'mu': None,  # None -> half the minimal schedule gap
    'cone_depth': 60,
    'metamour_cap': 32,
    'extension': EXTENSION_PERIODIC,
    'order_policy': POLICY_LEFT_RIGHT,
    'strict': False,
    'log_level': 'INFO',
}
