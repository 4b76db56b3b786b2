#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "korbit/limits.hpp"
#include "korbit/partition.hpp"
#include "korbit/permutation.hpp"

namespace korbit
{

/// A permutation group with its full element list. Elements are sorted
/// lexicographically by image sequence; the identity is always first.
class PermGroup
{
public:
  PermGroup() = default;

  /// Wraps an already closed, sorted, deduplicated element list. No closure
  /// is performed; callers guarantee the group axioms.
  static PermGroup from_sorted_elements(std::size_t degree,
                                        std::vector<Permutation> generators,
                                        std::vector<Permutation> elements);

  std::size_t degree() const { return degree_; }
  std::vector<Permutation> const &generators() const { return generators_; }
  std::vector<Permutation> const &elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  Permutation const &identity() const { return elements_.front(); }

  bool contains(Permutation const &g) const;
  /// Position of g in elements(), or npos.
  std::size_t index_of(Permutation const &g) const;
  bool is_subgroup_of(PermGroup const &other) const;
  bool is_normal_in(PermGroup const &other) const;
  bool is_abelian() const;
  bool is_transitive() const;
  bool is_trivial() const { return elements_.size() == 1; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  /// Group equality: same degree and element set. Generators are ignored.
  friend bool operator==(PermGroup const &a, PermGroup const &b)
  { return a.degree_ == b.degree_ && a.elements_ == b.elements_; }

private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> elements_;
};

/// Closes a generating set under composition. An empty generator list gives
/// the trivial group of the stated degree.
PermGroup close_group(std::vector<Permutation> generators, std::size_t degree,
                      Limits const &limits = {});

PermGroup symmetric_group(std::size_t n, Limits const &limits = {});
PermGroup alternating_group(std::size_t n, Limits const &limits = {});
PermGroup cyclic_group(std::size_t n);

/// The group generated by the elements of `elements` found, in order, to
/// enlarge the running closure. Deterministic and usually small.
std::vector<Permutation> greedy_generators(std::vector<Permutation> const &elements,
                                           std::size_t degree);

/// x G x^-1
PermGroup conjugate(PermGroup const &g, Permutation const &x);

Partition<Point> orbits_on_points(PermGroup const &g);

/// All minimal non-trivial G-invariant partitions of the points, each
/// obtained as the finest invariant partition joining point 1 with some
/// other point. Sorted by block size, then lexicographically. Empty iff G is
/// primitive in the classical sense.
std::vector<Partition<Point>> block_systems(PermGroup const &g);

/// Finest G-invariant partition in which a and b share a class.
Partition<Point> minimal_block_system(PermGroup const &g, Point a, Point b);

bool is_invariant_partition(PermGroup const &g, Partition<Point> const &q);

/// Induced action of a group on the classes of an invariant partition.
class QuotientAction
{
public:
  QuotientAction(PermGroup const &g, Partition<Point> q,
                 Limits const &limits = {});

  PermGroup const &group() const { return image_; }
  Partition<Point> const &blocks() const { return blocks_; }
  /// Class permutation induced by g (class i is blocks()[i]).
  Permutation image(Permutation const &g) const;

private:
  Partition<Point> blocks_;
  std::vector<std::size_t> class_of_point_;
  PermGroup image_;
};

enum class Convention
{
  classical,
  paper ///< primitive and non-Abelian
};

bool is_primitive(PermGroup const &g, Convention convention = Convention::paper);

/// {s in S_n : s G s^-1 = G}, by filtering all n! permutations.
PermGroup normalizer_in_sym(PermGroup const &g, Limits const &limits = {});

/// Normalizer of `sub` inside `g`.
PermGroup normalizer_in(PermGroup const &g, PermGroup const &sub);

std::string format_points(Partition<Point> const &p);
std::string point_label(Point p);

/// Group file: "degree n" then one generator per line in cycle notation;
/// "#" starts a comment.
std::string save_group(PermGroup const &g);
PermGroup load_group(std::string_view text, Limits const &limits = {});
PermGroup read_group_file(std::string const &path, Limits const &limits = {});
void write_group_file(std::string const &path, PermGroup const &g);

std::string read_text_file(std::string const &path);
void write_text_file(std::string const &path, std::string const &text);

} // namespace korbit
