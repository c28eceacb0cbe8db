#pragma once

#include <cstddef>

namespace tmotif {

/// Worker count: `requested` if positive, else $MOTIF_THREADS, else the
/// OpenMP default.
int resolve_threads(int requested);

/// Id of the calling worker inside a parallel region, 0 outside.
int worker_id();

}  // namespace tmotif
