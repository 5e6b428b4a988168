"""Dehn p-colorings of knot diagrams and local biquandle cocycle invariants."""

__version__ = "0.1.0"

from .diagram import (  # noqa: E402
    CrossingCorners,
    DiagramTopology,
    PDCode,
    PDSyntaxError,
    PDValidationError,
    TopologyError,
    crossing_corners,
    extract_topology,
    parse_pd_code,
)
from .coloring import (  # noqa: E402
    BudgetExceeded,
    ColoringSpace,
    ColorPalette,
    DehnColoring,
    NotColorable,
    classify_coloring,
    coloring_affine_classes,
    enumerate_colorings,
    min_colors_over_diagram,
    solve_coloring_space,
)
from .algebra import (  # noqa: E402
    Chain1,
    Chain2,
    boundary2,
    boundary2_chain,
    normalize_chain2,
    normalize_gen2,
    theta_value,
    verify_chain_complex,
    verify_theta_cocycle,
)
from .invariant import (  # noqa: E402
    BoundReport,
    PhiMultiset,
    crossing_weight,
    mincol_bounds,
    phi_invariant,
    weight_sum,
)
from .palettes import (  # noqa: E402
    KernelAnalysis,
    affine_canonical_palette,
    analyze_all,
    candidate_palettes,
    kernel_analysis,
    weight_generators,
)
from .tables import KnotTableEntry, load_knot_table, lookup  # noqa: E402
