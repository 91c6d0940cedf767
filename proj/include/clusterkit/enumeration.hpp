#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace clusterkit {

/// Exhaustive enumeration is capped here; beyond this the partition count
/// is too large for oracle use.
inline constexpr int kEnumerationCap = 14;

/// Visitor over raw blocks; return false to stop the stream early.
using BlockVisitor = std::function<bool(const std::vector<std::vector<int>>&)>;

/// Streams every partition of {0..n-1} into exactly k blocks, each of size
/// at least min_size, in canonical order (blocks ordered by smallest
/// element, each block ascending), each exactly once. Infeasible parameter
/// combinations yield an empty stream. Throws when n exceeds the cap.
void enumerate_partitions(int n, int k, int min_size, const BlockVisitor& visit);

/// Number of partitions the stream above yields.
std::uint64_t count_partitions(int n, int k, int min_size);

}  // namespace clusterkit
