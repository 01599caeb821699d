"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``FUGLEDE_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _pykernels

EXHAUSTED = _pykernels.EXHAUSTED
RESULT_LIMIT = _pykernels.RESULT_LIMIT
BUDGET = _pykernels.BUDGET

_compiled = None
if os.environ.get("FUGLEDE_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

backend = _compiled if _compiled is not None else _pykernels
BACKEND_NAME = "cython" if _compiled is not None else "python"

mask_from_bool = _pykernels.mask_from_bool
zero_cone_mask = backend.zero_cone_mask
direction_mask = backend.direction_mask
find_cliques = backend.find_cliques
complete_mappings = backend.complete_mappings
balanced_adjacency = backend.balanced_adjacency


def bits(mask: int):
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def difference_graph(tables, allowed: int) -> list[int]:
    """Adjacency bitsets of the Cayley graph ``x ~ y  iff  x - y in allowed``.

    ``allowed`` must be closed under negation, as zero cones and complements
    of direction sets are.
    """
    size = tables.size
    flags = np.array([(allowed >> i) & 1 for i in range(size)], dtype=bool)
    rows = flags[tables.sub]          # rows[x, y] = flags[x - y]
    return [mask_from_bool(rows[x]) for x in range(size)]
