#pragma once

#include <optional>
#include <string>
#include <vector>

#include "korbit/ktuple.hpp"

namespace korbit
{

enum class Coherence
{
  incoherent,
  coherent,
  elementary_coherent
};

std::string to_string(Coherence c);

/// A k-suborbit <g>alpha inside X whose coordinate sets cover only a proper
/// subset U of the support of X.
struct SuborbitWitness
{
  std::vector<Point> u;
  KSet suborbit;
  Permutation generator;
  /// Co of the suborbit overlaps (U-coherent) rather than partitioning U
  /// (U-incoherent).
  bool u_coherent = false;
};

struct CoherenceVerdict
{
  Coherence kind = Coherence::coherent;
  /// k = 1, or Co(X) is the single set of all supporting points.
  bool trivial = false;
  /// The merged coordinate-set partition of the support of X.
  Partition<Point> merged;
  /// Set only for coherent verdicts that are not elementary.
  std::optional<SuborbitWitness> suborbit;
};

/// Classifies a k-orbit of G. Works relative to the support of X, which is
/// all of V for transitive G. Suborbits considered are orbits of non-trivial
/// subgroups of G; it suffices to test cyclic ones through one tuple.
CoherenceVerdict classify_coherence(PermGroup const &g, KSet const &x);

/// Stab(Y): the setwise stabilizer of Y in G, with its transitivity on Y.
struct KStabilizer
{
  PermGroup group;
  bool transitive = false;
};

KStabilizer stab_of_ksuborbit(PermGroup const &g, KSet const &y);

/// {g in G : gS = S} for a set of points.
PermGroup setwise_stabilizer(PermGroup const &g, std::vector<Point> const &s);

struct CosetPartitions
{
  KSet x; ///< G I
  KSet y; ///< A I
  /// L_k = { gY }, sorted. A partition of X or an overlapping covering.
  std::vector<KSet> left;
  bool left_is_partition = true;
  /// R_k: X split into A-orbits.
  Partition<KTuple> right;
};

CosetPartitions coset_k_partitions(PermGroup const &g, PermGroup const &a, KTuple const &i);

/// True if some subgroup of G has s as a point orbit, i.e. Stab_G(s) is
/// transitive on s.
bool is_automorphic_subset(PermGroup const &g, std::vector<Point> const &s);

struct AutomorphicNumber
{
  std::size_t k = 0;
  bool automorphic = false;
};

struct AutomorphicAnalysis
{
  /// Divisors of |G| not exceeding n.
  std::vector<AutomorphicNumber> group_divisors;
  /// Divisors of n.
  std::vector<AutomorphicNumber> degree_divisors;
  /// Every automorphic subset of V, sorted by size then lexicographically.
  std::vector<std::vector<Point>> subsets;
  /// Largest automorphic k < n among the respective divisor lists (1 if
  /// none larger).
  std::size_t max_proper_group_divisor = 1;
  std::size_t max_proper_degree_divisor = 1;
};

/// Subsets are enumerated directly for n <= 16; above that the point orbits
/// of all subgroups are collected (bounded by max_subgroup_order).
AutomorphicAnalysis automorphic_analysis(PermGroup const &g, Limits const &limits = {});

std::vector<std::size_t> divisors(std::size_t n);

} // namespace korbit
