#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "korbit/perm_group.hpp"

namespace korbit
{

/// Lexicographically least fixed-point-free element of prime-power order.
std::optional<Permutation> find_fpf_prime_power(PermGroup const &g);

/// Given an fpf element of prime-power order p^l of the quotient action on
/// q, takes a preimage g (the least one unless supplied), writes
/// |g| = p^m d with d coprime to p and returns g^d.
Permutation lift_fpf(PermGroup const &g, Partition<Point> const &q, Permutation const &g_quot,
                     std::optional<Permutation> const &preimage = std::nullopt,
                     Limits const &limits = {});

/// Canonically least proper transitive subgroup (by order, then element
/// list), if any.
std::optional<PermGroup> least_transitive_subgroup(PermGroup const &g,
                                                   Limits const &limits = {});

struct PartitionFinding
{
  Partition<Point> q;
  /// All projections G<c> (c a class of q, read in increasing order) lie in
  /// one orbit of N.
  bool n_isomorphic = false;
  bool elementary_coherent = false;
  /// |X_k| = |G| for every projection.
  bool orbit_size_equals_order = false;
  /// For every class c, Stab_G(c) acts faithfully on every class of q.
  bool stabilizer_projection_isomorphic = false;
  std::vector<std::string> coherence; ///< verdict per class
  std::vector<std::size_t> orbit_sizes; ///< |X_k| per class
  std::vector<std::size_t> stabilizer_orders; ///< |Stab_G(c)| per class

  bool closes() const
  {
    return n_isomorphic && elementary_coherent && orbit_size_equals_order &&
           stabilizer_projection_isomorphic;
  }
};

struct AuditVariant
{
  std::string name; ///< "degree" or "group": which divisors k ranges over
  std::size_t k = 1;
  std::vector<PartitionFinding> partitions;
  bool truncated = false;
  bool closed = false;
};

struct AuditRecord
{
  PermGroup group;
  /// Violated hypotheses (empty when the audit ran on a qualifying group).
  std::vector<std::string> hypothesis_violations;
  PermGroup normalizer;
  bool normalizer_proper = false;
  std::vector<AuditVariant> variants;
  /// Some variant found a partition on which every claimed step holds.
  bool closed = false;
};

enum class AuditMode
{
  strict, ///< hypothesis violations are errors
  record  ///< hypothesis violations are recorded and the audit proceeds
};

/// Audits the argument for primitive groups without transitive subgroups:
/// normalizer, automorphic k, partitions of V into k-element suborbits and
/// the properties of their projections.
AuditRecord proof_audit(PermGroup const &g, Limits const &limits = {},
                        AuditMode mode = AuditMode::strict,
                        std::size_t max_partitions = 10'000);

std::string audit_to_json(AuditRecord const &a);

enum class StepKind
{
  quotient,    ///< pass to the action on the blocks
  lift,        ///< return from a quotient with a lifted element
  abandon,     ///< a quotient branch produced nothing; back to the parent
  descend,     ///< pass to a proper transitive subgroup
  ascend,      ///< return from a subgroup with its element
  terminal,    ///< direct search in the current group
  audit        ///< proof audit of the current group (no group change)
};

std::string to_string(StepKind k);

struct TraceStep
{
  StepKind kind = StepKind::terminal;
  /// quotient: the group whose blocks are taken; descend: the subgroup;
  /// terminal/audit: the current group. Unused otherwise.
  PermGroup group;
  std::optional<Partition<Point>> blocks;
  std::optional<Permutation> element;
  std::string note;

  friend bool operator==(TraceStep const &a, TraceStep const &b);
};

struct ReductionTrace
{
  PermGroup group;
  std::vector<TraceStep> steps;
  /// The element the reduction produced, if it produced one.
  std::optional<Permutation> reduced;
  /// The verified result (reduced, or the direct-search fallback).
  Permutation element;
  ElementAnalysis analysis;
  /// Differences between reduction and direct search, or failed branches.
  std::vector<std::string> discrepancies;

  friend bool operator==(ReductionTrace const &a, ReductionTrace const &b);
};

ReductionTrace fks_pipeline(PermGroup const &g, Limits const &limits = {});

/// Re-executes the recorded steps and returns the element they produce.
/// Throws Error if any step does not reproduce.
Permutation replay_trace(ReductionTrace const &t, Limits const &limits = {});

/// Line-delimited JSON, one record per step, framed by a group header and a
/// result record.
std::string save_trace(ReductionTrace const &t);
ReductionTrace load_trace(std::string_view text, Limits const &limits = {});

} // namespace korbit
