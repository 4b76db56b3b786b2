#pragma once

#include <cstddef>

namespace korbit
{

/// Combinatorial budgets shared by every module. Every cap is enforced with a
/// ResourceLimitError rather than by running out of memory.
struct Limits
{
  /// Maximum order of an enumerated group.
  std::size_t max_elements = 1'000'000;
  /// Maximum degree for brute-force searches over a full symmetric group
  /// (normalizers in S_n, automorphism groups of k-sets).
  std::size_t max_degree = 8;
  /// Maximum number of non-diagonal k-tuples n!/(n-k)!.
  std::size_t max_tuples = 10'000'000;
  /// Maximum group order for subgroup enumeration.
  std::size_t max_subgroup_order = 10'000;
  /// Maximum number of subgroup pairs examined by one pairwise check.
  std::size_t max_subgroup_pairs = 50'000;
};

} // namespace korbit
