"""Delzant polytopes, symplectic potentials and their dually flat structure."""

from fractions import Fraction

from ._core import (
    Error,
    FaceChart,
    Polytope,
    SymplecticPotential,
    bregman,
    bregman_expanded,
    boundary_divergence,
    dual_geodesic_limit,
    dual_geodesic_point,
    face_chart,
    from_dual,
    guillemin,
    kl,
    limit_divergence,
    load_problem,
    metric_pair,
    mixture_probabilities,
    project_to_face,
    pythagoras_54,
    pythagoras_55,
    run_cli,
    to_dual,
    validate_delzant,
    zero_sum_check,
)


def polytope(halfspaces, bounded=True):
    """Polytope from (normal, offset) pairs; offsets may be ints, Fractions or strings."""
    halfspaces = [(list(n), str(Fraction(o)) if not isinstance(o, str) else o) for n, o in halfspaces]
    return Polytope(len(halfspaces[0][0]), halfspaces, bounded)


__all__ = [name for name in dir() if not name.startswith("_")]
