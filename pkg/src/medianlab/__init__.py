"""Median graphs, their hyperplanes, path rewriting, right-angled Artin
groups, group actions without inversions and a symbolic class ledger."""
from .errors import *  # noqa: F401,F403
from .graphs import (
    ExplicitGraph,
    FreeGroupTree,
    Lattice,
    ProductGraph,
    SubsetCube,
    ball,
    bfs_distance,
    shortest_path,
)
from .median import check_median, median
from .hyperplanes import (
    carrier,
    compute_hyperplanes,
    halfspaces,
    hyperplane_classes,
    is_transverse,
    orient,
    separating_hyperplanes,
)
from .rewriting import connect_geodesics, normalize_to_geodesic, transform_path
from .raag import DefinitionGraph, abelianize, is_identity, normal_form, parse_word, reduce_word
from .action import ActionSpec, build_orbit_labeling, check_no_inversion, theta
from .cremona import FormalBirMap, check_witness, generation_obstruction, phi, phi_via_cube_path

__version__ = "0.1.0"
