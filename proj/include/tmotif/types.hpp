#pragma once

#include <cstdint>

namespace tmotif {

using NodeId = std::uint32_t;
using PairId = std::uint32_t;
/// Position of an edge in the (t, seq)-sorted edge list.
using EdgePos = std::uint32_t;
/// Unix seconds.
using Timestamp = std::int64_t;
using Seconds = std::int64_t;
using Count = std::uint64_t;

inline constexpr NodeId kInvalidNode = static_cast<NodeId>(-1);
inline constexpr PairId kInvalidPair = static_cast<PairId>(-1);

}  // namespace tmotif
