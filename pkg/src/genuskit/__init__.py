"""genuskit: rotation-system embeddings, k-apex pipelines, exact genus oracle."""

from .graph import (
    Graph,
    BlockCutTree,
    MinorMapping,
    biconnected_decompose,
    contract_set,
    cut_along,
    has_minor,
    petals_and_propellers,
    verify_minor_mapping,
)
from .embedding import (
    RotationSystem,
    SurfaceEmbedding,
    euler_genus_of,
    trace_faces,
    verify_embedding,
)

__all__ = [
    "Graph",
    "BlockCutTree",
    "MinorMapping",
    "biconnected_decompose",
    "contract_set",
    "cut_along",
    "has_minor",
    "petals_and_propellers",
    "verify_minor_mapping",
    "RotationSystem",
    "SurfaceEmbedding",
    "euler_genus_of",
    "trace_faces",
    "verify_embedding",
]

__version__ = "0.1.0"
