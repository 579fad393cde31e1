"""
Block libraries and the vector-sum composition search.
"""

from .library import Block, BlockLibrary, load_library, write_path_library
from .search import (
    CompositionQuery,
    CompositionResult,
    SearchOutcome,
    hyperbola_samples,
    results_frame,
    search,
    verify_composition,
)

__all__ = [
    'Block', 'BlockLibrary', 'load_library', 'write_path_library',
    'CompositionQuery', 'CompositionResult', 'SearchOutcome', 'hyperbola_samples',
    'results_frame', 'search', 'verify_composition',
]
