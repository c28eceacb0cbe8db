"""Temporal 3-edge motif counting.

Count matrices are 6x6 numpy arrays: cell M_ij sits at ``[i - 1, j - 1]``.
Local counts are ``(num_nodes, 40)`` arrays indexed by dense node id; slots
36..39 are the reversed two-node motifs.
"""

from ._core import (
    Edges,
    __version__,
    brute_force_count,
    category_totals,
    count_global,
    count_global_multi,
    count_local,
    delta_sweep,
    from_arrays,
    null_ratio,
    parse_edges,
    read_edges,
    run_cli,
    shuffle_intra_block,
    shuffle_timestamps,
    slot_label,
)

__all__ = [
    "Edges",
    "__version__",
    "brute_force_count",
    "category_totals",
    "count_global",
    "count_global_multi",
    "count_local",
    "delta_sweep",
    "from_arrays",
    "null_ratio",
    "parse_edges",
    "read_edges",
    "run_cli",
    "shuffle_intra_block",
    "shuffle_timestamps",
    "slot_label",
]
