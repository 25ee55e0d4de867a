"""Primal-dual weak Galerkin solver for elliptic Cauchy problems on the unit square."""

from ._pdwg import (
    Mesh,
    build_uniform_mesh,
    list_cases,
    observed_order,
    run_study,
    emit,
    solve_case,
    assemble_case,
)

__all__ = [
    "Mesh",
    "build_uniform_mesh",
    "list_cases",
    "observed_order",
    "run_study",
    "emit",
    "solve_case",
    "assemble_case",
]
