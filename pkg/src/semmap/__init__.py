"""Semi-equivelar maps: validation, symmetry, covers and classification."""
from .maps import MapError, PolyhedralMap, from_faces, load, loads, dump, dumps
from .typearith import VertexType, parse_type, vertex_count, face_vector, enumerate_types, EnumerationParams
from .symmetry import (
    AutGroup,
    GroupId,
    VertexPermutation,
    are_isomorphic,
    automorphism_group,
    canonical_certificate,
    identify_group,
    vertex_orbits,
)

__version__ = "0.1.0"
