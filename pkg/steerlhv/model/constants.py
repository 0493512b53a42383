"""Numeric tolerances and defaults shared across steerlhv."""

# Geometry
UNIT_NORM_TOL = 1e-12
"""Allowed deviation of a pure-state Bloch vector from unit length."""
AMPLITUDE_MATCH_TOL = 1e-12
"""Allowed mismatch between stored amplitudes and the stored Bloch vector."""
PROBABILITY_SUM_TOL = 1e-12
"""Allowed deviation of ensemble weights from summing to one."""
GRAM_DET_TOL = 1e-12
"""Gram determinants down to ``-GRAM_DET_TOL`` still count as realizable."""
ANTIPODAL_TOL = 1e-12
"""Inner products below this magnitude make a bisector undefined."""
DEGENERATE_AXIS_TOL = 1e-12
"""Below this sine the Cholesky completion treats two Bloch vectors as parallel."""

# Steering
AVERAGE_MATCH_TOL = 1e-10
"""Entrywise tolerance when comparing ensemble averages with reduced states."""
PSD_TOL = 1e-10
"""Minimum eigenvalue accepted for a measurement element."""
SUPPORT_TOL = 1e-10
"""Projector residual above which a steered member lies outside supp(rho_B)."""
SCHMIDT_CUTOFF = 1e-12
"""Schmidt coefficients below this are treated as zero."""

# Structure
DEFAULT_ORTH_EPS = 1e-9
"""Overlaps below this count as orthogonal when enumerating atoms."""
MAX_ORTH_EPS = 1e-6
"""Largest orthogonality threshold accepted by enumerate_atoms."""

# LP engine
RESIDUAL_TOL = 1e-9
"""Maximum row or bound violation of an accepted witness."""
CERTIFICATE_MARGIN_TOL = 1e-7
"""Minimum contradiction margin of an accepted Farkas certificate."""
CERTIFICATE_SIGN_TOL = 1e-9
"""Sign slack allowed on certificate multipliers and reduced columns."""
PIVOT_TOL = 1e-11
"""Tableau entries and reduced costs smaller than this are treated as zero."""
MAX_PIVOTS = 100_000
"""Hard cap on simplex pivots before the solver gives up."""
EXACT_MAX_DENOMINATOR = 10**6
"""Denominator bound used when rationalizing float coefficients for exact mode.

Small enough that overlaps computed separately as o and 1 - o still rationalize
to exact complements."""

# Analysis
DEFAULT_HULL_MARGIN = 1e-6
"""Default exclusion band around the tetrahedron boundary."""
MIN_SCAN_STEP = 0.01
"""Finest grid accepted by the conjecture scan."""
MAX_SCAN_STEP = 0.25
"""Coarsest grid accepted by the conjecture scan."""
MIN_WERNER_TOL = 1e-4
"""Finest bisection tolerance accepted by the Werner search."""
WERNER_COARSE_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
"""Weights probed on every configuration before bisection starts."""
REFERENCE_WERNER_THRESHOLDS = {3: 0.8, 4: 2**-0.5}
"""Previously published Werner thresholds, reported next to computed ones."""
