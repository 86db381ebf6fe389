"""Random geometric graphs on the unit torus.

Sampling, graph construction, component census, hitting radii and seeded
Monte Carlo campaigns around the connectivity threshold, with closed-form
evaluators for the isolated-vertex and small-component statistics.
"""

from rgglab._backend import BACKEND

from rgglab.geometry import (
    CellGrid,
    ClusterGeometry,
    PointSet,
    TorusPoint,
    build_grid,
    circular_extent,
    disk_union_area_mc,
    neighbors_within,
    torus_distance,
)
from rgglab.rgg import (
    ComponentLabeling,
    GeometricGraph,
    RandomSeed,
    build_rgg,
    build_rgg_bruteforce,
    components,
    sample_points,
)
from rgglab.census import (
    CensusConfig,
    ComponentCensus,
    ComponentSummary,
    census,
    classify_types,
    is_solitary,
    summarize_component,
)
from rgglab.analytic import (
    BoxOccupancyBound,
    IBetaParams,
    ThresholdParams,
    area_bounds,
    chernoff_box_bound,
    ek_shape,
    expected_k1_exact,
    i_beta_asymptotic,
    i_beta_quadrature,
    k_prime_expectation_bracket,
    mu_of,
    r_of_mu,
)
from rgglab.process import (
    HittingRadii,
    IsolatedPairConfig,
    bottleneck_radius,
    count_close_isolated_pairs,
    hitting_radii,
    nearest_neighbor_radii,
)
from rgglab.harness import (
    EstimateRow,
    TrialPlan,
    factorial_moment_estimate,
    hitting_sweep,
    poisson_tv_distance,
    run_census_trials,
    scaling_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoxOccupancyBound",
    "CellGrid",
    "CensusConfig",
    "ClusterGeometry",
    "ComponentCensus",
    "ComponentLabeling",
    "ComponentSummary",
    "EstimateRow",
    "GeometricGraph",
    "HittingRadii",
    "IBetaParams",
    "IsolatedPairConfig",
    "PointSet",
    "RandomSeed",
    "ThresholdParams",
    "TorusPoint",
    "TrialPlan",
    "area_bounds",
    "bottleneck_radius",
    "build_grid",
    "build_rgg",
    "build_rgg_bruteforce",
    "census",
    "chernoff_box_bound",
    "circular_extent",
    "classify_types",
    "components",
    "count_close_isolated_pairs",
    "disk_union_area_mc",
    "ek_shape",
    "expected_k1_exact",
    "factorial_moment_estimate",
    "hitting_radii",
    "hitting_sweep",
    "i_beta_asymptotic",
    "i_beta_quadrature",
    "is_solitary",
    "k_prime_expectation_bracket",
    "mu_of",
    "neighbors_within",
    "nearest_neighbor_radii",
    "poisson_tv_distance",
    "r_of_mu",
    "run_census_trials",
    "sample_points",
    "scaling_sweep",
    "summarize_component",
    "torus_distance",
]
