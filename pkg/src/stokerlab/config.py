"""Shared numerical tolerance policy.

Every threshold used by the library lives in one frozen record so a single
scale factor can stress-test all checks coherently (the CLI honors the
``STOKERLAB_TOL_SCALE`` environment variable for this purpose).
"""

from dataclasses import dataclass, fields


@dataclass(frozen=True)
class Tolerances:
    ball: float = 1e-9            # margin keeping Klein points off the unit sphere
    light: float = 1e-10          # |<v,v>| below this counts as lightlike
    norm: float = 1e-10           # unit-normal normalization slack
    iso: float = 1e-10            # Lorentz-invariance defect allowed for isometries
    axis: float = 1e-8            # minimum geodesic length of a rotation axis
    rank_rel: float = 1e-10       # relative SVD cutoff for plane construction
    planar: float = 1e-9          # absolute bound on planarity determinants
    convex: float = 1e-10         # strict positivity margin for convexity determinants
    rank_svd: float = 1e-9        # relative SVD cutoff for rank/kernel decisions
    principal_angle: float = 1e-6 # kernel vs isometry-direction subspace agreement
    relator: float = 1e-8         # group-relation residual (up to overall sign)
    trace_identity: float = 1e-9  # meridian trace vs dihedral angle agreement
    irreducible: float = 1e-8     # projective residual separating reducible reps
    frame: float = 1e-10          # collinearity threshold for gauge frames
    witness: float = 1e-12        # witness-on-plane detection

    def scaled(self, factor: float) -> "Tolerances":
        """Return a copy with every threshold multiplied by ``factor``."""
        if factor <= 0:
            raise ValueError("tolerance scale factor must be positive")
        return Tolerances(**{f.name: getattr(self, f.name) * factor for f in fields(self)})


DEFAULT = Tolerances()
