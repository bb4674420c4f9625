"""Exact computations with formal diffeomorphisms, vector fields and curves of (C^2, 0)."""
from .blowup import (
    NearPoint, NearPointSeq, intersect_noether, lift_diffeo, lift_vfield, near_points,
    shared_prefix, strict_transform,
)
from .curve import CurveParam, TangentDirection, act, equal_up_to, implicitize, intersect_order
from .diffeo import FormalDiffeo, classify, commutator, compose, invert, pullback, shift
from .groups import Caps, GeneratedGroup, derived_sample, enumerate_ball, fd_check, orbit_prefix_tree, ui_probe
from .jetspace import exp_jet, log_jet, project_diffeo, project_vfield, truncate_level
from .scalar import EPS, I, Scalar, gaussian
from .series import BiSeries, OrderResult, UniSeries
from .vfield import FormalVectorField, exp_vf, log_diffeo

__version__ = "0.1.0"
