#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "korbit/perm_group.hpp"

namespace korbit
{

/// Fixed-size bitset over the element indices of a GroupTable.
class IndexSet
{
public:
  IndexSet() = default;
  explicit IndexSet(std::size_t n) : words_((n + 63) / 64, 0), size_(n) {}

  std::size_t universe() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::size_t count() const;
  std::vector<std::uint32_t> indices() const;
  bool is_subset_of(IndexSet const &other) const;
  IndexSet operator&(IndexSet const &other) const;

  std::vector<std::uint64_t> const &words() const { return words_; }

  friend bool operator==(IndexSet const &, IndexSet const &) = default;
  /// Lexicographic comparison of the sorted index lists.
  friend bool lex_less(IndexSet const &a, IndexSet const &b);

private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

struct IndexSetHash
{
  std::size_t operator()(IndexSet const &s) const noexcept;
};

/// Index-level view of an enumerated group: element i is group().elements()[i]
/// (so index order is lexicographic order), with a multiplication table for
/// groups of moderate size.
class GroupTable
{
public:
  explicit GroupTable(PermGroup group);

  PermGroup const &group() const { return group_; }
  std::size_t size() const { return group_.order(); }
  Permutation const &element(std::uint32_t i) const { return group_.elements()[i]; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t conj(std::uint32_t x, std::uint32_t a) const
  { return mul(mul(x, a), inverse_[x]); }
  std::uint32_t order_of(std::uint32_t a) const { return orders_[a]; }
  std::uint32_t index_of(Permutation const &p) const;

  /// Subgroup generated by `gens` (element indices).
  IndexSet closure(std::vector<std::uint32_t> const &gens) const;
  /// <H, extra> given H closed with generators h_gens.
  IndexSet extend(IndexSet const &h, std::vector<std::uint32_t> const &h_gens,
                  std::uint32_t extra) const;

  IndexSet conjugate(IndexSet const &h, std::uint32_t x) const;

  PermGroup to_group(IndexSet const &members,
                     std::vector<std::uint32_t> const &gens = {}) const;
  IndexSet members_of(PermGroup const &sub) const;
  std::vector<std::uint32_t> generators_of(PermGroup const &sub) const;
  /// Small generating set of a subgroup given by its members.
  std::vector<std::uint32_t> greedy_generators(IndexSet const &members) const;

private:
  PermGroup group_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> keys_;
  bool small_degree_ = true;

  std::uint32_t lookup(Permutation const &p) const;
};

} // namespace korbit
