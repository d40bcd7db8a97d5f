"""Python interface to the coupled membrane-mould contact solver."""

from ._core import (
    CoefficientFunction,
    Coefficients,
    ContactParams,
    EllipticState,
    Grid,
    RegSchedule,
    ScalarField,
    SolverParams,
    TimeGrid,
    Trajectory,
    bounds_mM,
    build_grid,
    chi_eps,
    coercivity_margin,
    constant_field,
    contact_set,
    continuation_solve,
    integrate,
    run_elliptic_checks,
    run_quasistatic,
    run_quasistatic_checks,
    solve_membrane,
    solve_mould,
    solve_pair,
)

__all__ = [
    "CoefficientFunction",
    "Coefficients",
    "ContactParams",
    "EllipticState",
    "Grid",
    "RegSchedule",
    "ScalarField",
    "SolverParams",
    "TimeGrid",
    "Trajectory",
    "bounds_mM",
    "build_grid",
    "chi_eps",
    "coercivity_margin",
    "constant_field",
    "contact_set",
    "continuation_solve",
    "integrate",
    "run_elliptic_checks",
    "run_quasistatic",
    "run_quasistatic_checks",
    "solve_membrane",
    "solve_mould",
    "solve_pair",
]

__version__ = "0.1.0"
