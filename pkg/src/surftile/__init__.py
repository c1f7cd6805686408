"""Enumeration and classification of tilings of closed surfaces by congruent polygons."""

__version__ = "0.1.0"
FORMAT_SCHEMA_VERSION = 1

from .convert import (SignedCorner, VertexSet, check_pair_conditions, check_vertexset, corner,
                      diagram_to_vertexset, next_corner, vertexset_to_diagram)
from .diagram import (Diagram, EdgePair, EdgeRef, SymmetryElement, apply_symmetry, canonical_form,
                      diagram, parse_diagram, serialize_diagram, symmetry_group)
from .distinctlen import admissible_surfaces, check_distinct_necessary, two_tile_distinct_family
from .enumeration import (CountTable, EnumSpec, TilingRecord, count_table, enumerate_tilings,
                          oracle_enumerate)
from .geomfilter import build_angle_system, check_positive_solution, edge_classes
from .topology import SurfaceClass, classify_surface, connectivity, validate_params
