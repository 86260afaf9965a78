"""Exact certification of delta-invariant bounds for the log del Pezzo surfaces S_n."""

from .certify import CertificationReport, certify_n
from .delta import DEFAULT_EPSILON, local_delta_bound, s_flag, s_invariant, volume_function
from .family import build_sn, closed_forms, lam
from .ledger import inequality_ledger
from .link import SmaleType, b2_link, classify_smale, genus_branch_curve, torsion_h2
from .surface import IntersectionLattice, LogDelPezzo, PointOnCurve, QuotientSingularity
from .zariski import decompose_at, decompose_family, pseff_threshold

__version__ = "0.1.0"
