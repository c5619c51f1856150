"""Central tolerance table.

All tolerances are absolute, in model or geometry units.  The base scale can
be overridden with the CURVKIT_TOL environment variable (a multiplier applied
to every entry), so a whole run can be made stricter or looser at once.
"""

import os

_SCALE = float(os.environ.get("CURVKIT_TOL", "1.0"))


def _t(value: float) -> float:
    return value * _SCALE


#: round-trip error allowed for chart conversions
CHART_ROUNDTRIP = _t(1e-14)

#: agreement of distance evaluated in different charts
DISTANCE_CROSS_CHART = _t(1e-12)

#: |c| = 1 and orthogonality residuals for isometry parameters
ISOMETRY_PARAM = _t(1e-12)

#: isometry action must preserve distances to this accuracy
ISOMETRY_ACTION = _t(1e-12)

#: points returned by cycle intersection lie on both cycles to this accuracy
CYCLE_INTERSECTION = _t(1e-11)

#: | |c-l| - r | below this classifies a circle/hypercycle pair as tangent
TANGENCY = _t(1e-10)

#: membership band: boundary points within this are treated as inside
CONTAINS_BAND = _t(1e-12)

#: feasibility slack used while assembling intersection boundaries
ASSEMBLY = _t(1e-9)

#: verification tolerance for a claimed symmetry (defect must stay below)
SYMMETRY_VERIFY = _t(1e-9)

#: defect above this counts as genuinely asymmetric
ASYMMETRY_THRESHOLD = _t(1e-3)

#: loose tolerance for matching arc signatures when enumerating candidates
SIGNATURE_MATCH = _t(8e-2)

#: optimizer termination (inballs, enclosing balls, diameters)
OPTIMIZER = _t(1e-12)

#: gap below which a diametral segment is reported as non-unique
DIAMETER_UNIQUE = _t(1e-7)

#: clustering radius for inball touch points
TOUCH_POINT = _t(1e-9)
