#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "korbit/limits.hpp"
#include "korbit/partition.hpp"
#include "korbit/perm_group.hpp"

namespace korbit
{

/// An ordered tuple of distinct points.
class KTuple
{
public:
  KTuple() = default;
  explicit KTuple(std::vector<Point> points);

  /// The initial n-tuple <1..n>.
  static KTuple initial(std::size_t n);

  std::size_t arity() const { return points_.size(); }
  Point operator[](std::size_t i) const { return points_[i]; }
  std::vector<Point> const &points() const { return points_; }
  /// Co(t): the coordinates as a sorted set.
  std::vector<Point> coordinates() const;
  Point max_point() const;

  /// Compact rendering: "123" when every point is a single digit, otherwise
  /// "1,2,10".
  std::string to_string() const;

  friend bool operator==(KTuple const &, KTuple const &) = default;
  friend auto operator<=>(KTuple const &a, KTuple const &b)
  { return a.points_ <=> b.points_; }

private:
  std::vector<Point> points_;
};

/// A set of k-tuples of one arity, kept sorted and deduplicated.
class KSet
{
public:
  KSet() = default;
  KSet(std::size_t arity, std::vector<KTuple> tuples);

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  std::vector<KTuple> const &tuples() const { return tuples_; }
  KTuple const &front() const { return tuples_.front(); }
  bool contains(KTuple const &t) const;
  bool is_subset_of(KSet const &other) const;
  bool intersects(KSet const &other) const;
  KSet intersection(KSet const &other) const;
  /// The union of Co(t) over all tuples.
  std::vector<Point> support() const;

  auto begin() const { return tuples_.begin(); }
  auto end() const { return tuples_.end(); }

  friend bool operator==(KSet const &, KSet const &) = default;
  friend auto operator<=>(KSet const &a, KSet const &b)
  { return a.tuples_ <=> b.tuples_; }

private:
  std::size_t arity_ = 0;
  std::vector<KTuple> tuples_;
};

KTuple left_act(Permutation const &g, KTuple const &t);
KSet left_act(Permutation const &g, KSet const &s);

/// <v_{g1} ... v_{gn}>: defined only when the arity equals the degree of g.
KTuple right_act(KTuple const &t, Permutation const &g);
KSet right_act(KSet const &s, Permutation const &g);

/// G t
KSet orbit_of(PermGroup const &g, KTuple const &t);
/// The n-orbit G <1..n>.
KSet n_orbit(PermGroup const &g);

/// Orb_k(G): the orbits of G on non-diagonal k-tuples, ordered by least tuple.
std::vector<KSet> k_orbits(PermGroup const &g, std::size_t k, Limits const &limits = {});

/// n!/(n-k)!, saturating.
std::size_t count_tuples(std::size_t n, std::size_t k);

/// Selects from every tuple the coordinates at the positions named by
/// `positions` (1-based through the initial tuple), in that order.
KSet project(KSet const &x, KTuple const &positions);

struct CoAnalysis
{
  SetFamily<Point> family;
  SmashResult<Point> smashed;
};

CoAnalysis co_analysis(KSet const &x);

/// Aut(X): every permutation of the support of X (fixing all other points)
/// that maps X onto itself. Brute force over Sym(support).
PermGroup aut_of_kset(KSet const &x, std::size_t degree, Limits const &limits = {});

struct KBlock
{
  KSet tuples;
  PermGroup aut;
  /// Aut(Y) is transitive on the k points of Co(Y).
  bool aut_transitive = false;
};

/// Groups tuples by coordinate set. Each class is reported with its
/// automorphism group (computed over Co of the block).
std::vector<KBlock> k_blocks(KSet const &x, std::size_t degree, Limits const &limits = {});
/// The k-block decomposition alone, as a partition of the tuples of x.
Partition<KTuple> k_block_partition(KSet const &x);

/// k-set exchange format: "arity k", then one tuple per line.
std::string save_kset(KSet const &x);
KSet load_kset(std::string_view text);

} // namespace korbit
