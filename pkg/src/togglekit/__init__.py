"""Exact piecewise-linear and birational toggling on rectangles and moon polyominoes."""

from .chains import PathFamilySpec, brute_force_max_weight, chain_statistic, max_weight
from .ehrhart import count_dilate, count_dilate_oracle, period_collapse_check, qstab, syt_volume_check, vertex_certificate
from .maps import (
    MapProgram,
    conjugator,
    evacuation,
    omega,
    p_tableau,
    promotion,
    q_tableau,
    rowmotion_shift,
    rsk,
    rsk_inverse,
    sw_promotion,
)
from .moon import (
    Filling,
    IllegalShift,
    MaxRect,
    MoonError,
    MoonPolyomino,
    ShiftStep,
    canonical_partition,
    ne_chain_max,
    omega_path,
    rect_chain_max,
    se_chain_max,
    shift_filling,
    straighten,
    validate,
)
from .poset import Coord, RectShape, Region, file_index, linear_extension, rank
from .realm import BIRATIONAL, PL, REALMS, Labeling, Realm, realm_by_name, to_rational
from .toggles import orbit_length, rowmotion, toggle, transfer

__version__ = "0.1.0"

__all__ = [
    "BIRATIONAL",
    "Coord",
    "Filling",
    "IllegalShift",
    "Labeling",
    "MapProgram",
    "MaxRect",
    "MoonError",
    "MoonPolyomino",
    "PL",
    "PathFamilySpec",
    "REALMS",
    "Realm",
    "RectShape",
    "Region",
    "ShiftStep",
    "brute_force_max_weight",
    "canonical_partition",
    "chain_statistic",
    "conjugator",
    "count_dilate",
    "count_dilate_oracle",
    "evacuation",
    "file_index",
    "linear_extension",
    "max_weight",
    "ne_chain_max",
    "omega",
    "omega_path",
    "orbit_length",
    "p_tableau",
    "period_collapse_check",
    "promotion",
    "q_tableau",
    "qstab",
    "rank",
    "realm_by_name",
    "rect_chain_max",
    "rowmotion",
    "rowmotion_shift",
    "rsk",
    "rsk_inverse",
    "se_chain_max",
    "shift_filling",
    "straighten",
    "sw_promotion",
    "syt_volume_check",
    "to_rational",
    "toggle",
    "transfer",
    "validate",
    "vertex_certificate",
]
