#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "korbit/group_table.hpp"

namespace korbit
{

/// One conjugacy class of subgroups of an ambient group.
struct SubgroupClass
{
  /// Canonical representative: the conjugate whose sorted element list is
  /// lexicographically least.
  IndexSet members;
  std::vector<std::uint32_t> generators;
  IndexSet normalizer;
  std::size_t class_size = 1;

  std::size_t order() const { return members.count(); }
  bool is_normal() const { return class_size == 1; }
};

/// All subgroups of a group up to conjugacy, found by cyclic extension:
/// starting from the trivial group, each representative is extended by one
/// cyclic subgroup of prime-power order at a time and the result is kept if
/// it is not conjugate to a known class.
class SubgroupEnumeration
{
public:
  explicit SubgroupEnumeration(PermGroup const &g, Limits const &limits = {});

  GroupTable const &table() const { return *table_; }
  PermGroup const &group() const { return table_->group(); }

  /// Sorted by order, then by element list.
  std::vector<SubgroupClass> const &classes() const { return classes_; }

  /// Every subgroup (all conjugates of every class), sorted by order then
  /// element list.
  std::vector<IndexSet> const &all() const;

  PermGroup to_group(SubgroupClass const &c) const
  { return table_->to_group(c.members, c.generators); }
  PermGroup to_group(IndexSet const &members) const
  { return table_->to_group(members); }

private:
  std::shared_ptr<GroupTable> table_;
  std::vector<SubgroupClass> classes_;
  mutable std::vector<IndexSet> all_;
  std::shared_ptr<std::once_flag> all_once_ = std::make_shared<std::once_flag>();

  void expand_all() const;
};

/// Subgroup representatives up to conjugacy in g, as groups.
std::vector<PermGroup> enumerate_subgroups(PermGroup const &g, Limits const &limits = {});

} // namespace korbit
