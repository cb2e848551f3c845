"""Planar diagram engine: construction, surgery, invariants, rewriting."""

from .build import (
    horizontal_twists,
    infinity_tangle,
    rational_tangle_diagram,
    trivial_tangle,
    vertical_twists,
    zero_tangle,
)
from .core import Component, TangleDiagram, Wiring
from .identify import LinkId, identify_link, recover_fraction
from .invariants import (
    bracket_both,
    bracket_skein,
    bracket_state_sum,
    crossing_budget,
    fingerprint,
    linking_matrix,
    linking_number,
    writhe,
)
from .pdcode import emit_pd, parse_pd
from .rewrite import (
    apply_r1_add,
    apply_r2_add,
    apply_r3,
    r3_triangles,
    simplify,
)
from .surgery import (
    add_boundary_twists,
    cap,
    close_numerator,
    close_with,
    close_with_x_arcs,
    remove_string,
)

__all__ = [
    "Component",
    "LinkId",
    "TangleDiagram",
    "Wiring",
    "add_boundary_twists",
    "apply_r1_add",
    "apply_r2_add",
    "apply_r3",
    "bracket_both",
    "bracket_skein",
    "bracket_state_sum",
    "cap",
    "close_numerator",
    "close_with",
    "close_with_x_arcs",
    "crossing_budget",
    "emit_pd",
    "fingerprint",
    "horizontal_twists",
    "identify_link",
    "infinity_tangle",
    "linking_matrix",
    "linking_number",
    "parse_pd",
    "r3_triangles",
    "rational_tangle_diagram",
    "recover_fraction",
    "remove_string",
    "simplify",
    "trivial_tangle",
    "vertical_twists",
    "writhe",
    "zero_tangle",
]
