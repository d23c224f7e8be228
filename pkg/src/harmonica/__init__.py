"""List coloring of plane graphs with checkable certificates.

Decide whether a plane graph with lists of size 3 on the boundary and 5
inside can be colored when two boundary vertices have shorter lists, and
back every answer with either a coloring or a harmonica obstruction.
"""

from ._accel import NUMBA_ENABLED
from .canvas import Canvas, Subgraph, canvas_violations, make_lists, validate_canvas
from .decide import Colorable, Obstructed, certify_by_governments, decide_with_certificate, hypothesis_report
from .errors import HarmonicaError, HypothesesViolated, ConsistencyViolation
from .government_harmonica import (
    GovernmentHarmonica,
    check_conversion,
    convert_harmonica,
    find_government_harmonica,
    verify_government_harmonica,
)
from .governments import Confederacy, Government, classify, democracy, dictatorship, find_confederacy, find_government
from .harmonicas import HarmonicaCertificate, Step, find_coloring_harmonica, verify_coloring_harmonica
from .plane_graph import PlaneGraph, build_plane_graph, chords_of_outer, cutvertices, delete_vertices, subgraph
from .reductions import democratic_reduction, extend_reduced_coloring
from .solver import (
    EdgeColoringSet,
    check_chord_composition,
    count_bad_wheel_colorings,
    count_colorings,
    extension_set,
    find_coloring,
    is_proper_coloring,
)

__version__ = "0.1.0"
