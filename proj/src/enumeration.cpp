#include "clusterkit/enumeration.hpp"

#include <stdexcept>

namespace clusterkit {

namespace {

// Recursively assigns point i to an existing block or opens a new one.
// Assigning in block order yields restricted-growth strings in
// lexicographic order, which is exactly the canonical partition order.
// Returns false when the visitor asked to stop.
bool assign(int i, int n, int k, int min_size, std::vector<std::vector<int>>& blocks,
            const BlockVisitor& visit) {
  if (i == n) {
    if (static_cast<int>(blocks.size()) != k) return true;
    for (const auto& b : blocks)
      if (static_cast<int>(b.size()) < min_size) return true;
    return visit(blocks);
  }
  int remaining = n - i;
  int open = static_cast<int>(blocks.size());
  // Deficit pruning: every open block short of min_size and every block
  // still to open must be fillable from the remaining points.
  int deficit = (k - open) * min_size;
  for (const auto& b : blocks)
    if (static_cast<int>(b.size()) < min_size) deficit += min_size - static_cast<int>(b.size());
  if (remaining < deficit) return true;

  for (int b = 0; b < open; ++b) {
    blocks[b].push_back(i);
    bool keep_going = assign(i + 1, n, k, min_size, blocks, visit);
    blocks[b].pop_back();
    if (!keep_going) return false;
  }
  if (open < k) {
    blocks.push_back({i});
    bool keep_going = assign(i + 1, n, k, min_size, blocks, visit);
    blocks.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

void enumerate_partitions(int n, int k, int min_size, const BlockVisitor& visit) {
  if (n > kEnumerationCap) throw std::invalid_argument("enumerate_partitions: point count exceeds cap");
  if (n < 1 || k < 1 || min_size < 1) throw std::invalid_argument("enumerate_partitions: bad parameters");
  if (k * min_size > n || k > n) return;  // infeasible: empty stream
  std::vector<std::vector<int>> blocks;
  blocks.reserve(static_cast<std::size_t>(k));
  assign(0, n, k, min_size, blocks, visit);
}

std::uint64_t count_partitions(int n, int k, int min_size) {
  std::uint64_t count = 0;
  enumerate_partitions(n, k, min_size, [&count](const std::vector<std::vector<int>>&) {
    ++count;
    return true;
  });
  return count;
}

}  // namespace clusterkit
