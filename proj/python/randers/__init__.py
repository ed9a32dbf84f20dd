"""Randers metrics on rotational surfaces of revolution.

Thin wrapper over the C++ engine. Points are (r, theta) pairs; results come
back as plain dicts and lists.
"""

from ._core import (
    Profile,
    RandersError,
    __version__,
    check_cut_point,
    clairaut_report,
    cut_locus,
    distance,
    embed_point,
    first_conjugate,
    geodesic,
    mesh_obj,
    pullback_batch,
    verify,
)

__all__ = [
    "Profile",
    "RandersError",
    "__version__",
    "check_cut_point",
    "clairaut_report",
    "cut_locus",
    "distance",
    "embed_point",
    "first_conjugate",
    "geodesic",
    "mesh_obj",
    "pullback_batch",
    "verify",
]
