#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "korbit/catalog.hpp"
#include "korbit/ktuple.hpp"
#include "korbit/subgroups.hpp"

namespace korbit
{

/// Objects a check runs on. Absent fields are enumerated by the check; a
/// fully narrowed context names exactly one hypothesis instance.
struct CheckContext
{
  std::string group_id;
  PermGroup group;
  std::optional<std::size_t> k;
  /// Named subgroups (all of the group's degree), e.g. "H", "A", "B".
  std::map<std::string, PermGroup> subgroups;
  /// Named tuples, e.g. "alpha" (a representative of the k-orbit under
  /// study) and "beta".
  std::map<std::string, KTuple> tuples;

  PermGroup const *subgroup(std::string const &name) const;
  KTuple const *tuple(std::string const &name) const;
};

bool operator==(CheckContext const &a, CheckContext const &b);

enum class Verdict
{
  pass,
  fail,
  inapplicable,
  skipped ///< a cap was hit
};

std::string to_string(Verdict v);

struct CheckResult
{
  std::string check_id;
  CheckContext context;
  Verdict verdict = Verdict::inapplicable;
  /// Why the check was inapplicable or skipped, or what failed.
  std::string reason;
  /// Number of hypothesis instances evaluated.
  std::size_t instances = 0;
  /// Set on fail: a narrowed context that reproduces the failure.
  std::optional<CheckContext> witness;
  /// Check-specific observations, as a compact JSON object (may be "{}").
  std::string notes = "{}";
};

/// Shared caches for subgroup enumerations. Safe for concurrent use.
class CheckEnv
{
public:
  explicit CheckEnv(Limits limits = {}) : limits_(limits) {}

  Limits const &limits() const { return limits_; }
  std::shared_ptr<SubgroupEnumeration const> subgroups(PermGroup const &g);

private:
  struct Slot
  {
    std::once_flag once;
    std::shared_ptr<SubgroupEnumeration const> value;
    std::exception_ptr error;
  };
  Limits limits_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> cache_;
};

struct CheckInfo
{
  std::string id;
  /// Evaluated once per k rather than once per group.
  bool uses_k = false;
  std::string statement;
};

/// The registry, in canonical order.
std::vector<CheckInfo> const &check_registry();
CheckInfo const &check_info(std::string_view id);

/// Runs one check. Throws PreconditionError for an unknown id and
/// ResourceLimitError when the context exceeds a cap.
CheckResult run_check(std::string_view check_id, CheckContext const &context, CheckEnv &env);

struct SuiteOptions
{
  std::optional<std::pair<std::size_t, std::size_t>> k_range;
  std::vector<std::string> check_ids; ///< empty: all
  std::size_t jobs = 1;
};

struct SuiteReport
{
  std::vector<CheckResult> results;

  std::size_t count(Verdict v) const;
};

/// Every (entry, k, check) context, evaluated possibly in parallel and
/// reported in canonical order. Cap violations become skipped results.
SuiteReport run_suite(GroupCatalog const &catalog, SuiteOptions const &options,
                      Limits const &limits = {});

std::string context_to_json(CheckContext const &c);
CheckContext context_from_json(std::string_view text, Limits const &limits = {});

/// Witness file: the check id and the narrowed context, self-contained.
std::string witness_to_json(CheckResult const &r);
/// Re-runs a witness file; returns the resulting verdict.
CheckResult replay_witness(std::string_view text, CheckEnv &env);

/// File name (relative to the report directory) of a failure's witness.
std::string witness_name(CheckResult const &r);
/// One JSON record per line.
std::string report_jsonl(SuiteReport const &r);
std::string report_summary(SuiteReport const &r);
/// Writes report.jsonl, summary.txt and witnesses/ into `dir`.
void write_report(SuiteReport const &r, std::string const &dir);

/// Conclusion predicates of the registry checks, usable on their own.
namespace conclusion
{

/// |Aut(X)| = |X|.
bool order_matches(PermGroup const &aut, KSet const &x);
/// No non-identity element of g fixes the tuple.
bool acts_freely_on(PermGroup const &g, KTuple const &a);
/// H normal in M, |M/H| = |aut| and the restriction of M to co is aut.
/// Returns an empty string when all hold, else what failed.
std::string quotient_is_aut(PermGroup const &m, PermGroup const &h, PermGroup const &aut,
                            std::vector<Point> const &co);
/// N_G(A) != A and |G|/|H| = |N_G(A)|/|A|; empty string when both hold.
std::string index_identity(PermGroup const &g, PermGroup const &h, PermGroup const &a);
/// Least k for which some g outside A maps an A-orbit Z onto another
/// A-orbit gZ != Z.
std::optional<std::size_t> g_isomorphic_k(PermGroup const &g, PermGroup const &a,
                                          Limits const &limits = {});
/// N_{S_n}(G) != G.
bool normalizer_grows(PermGroup const &g, Limits const &limits = {});
/// The enumerated group has a normal subgroup other than 1 and itself.
std::optional<PermGroup> proper_normal_subgroup(SubgroupEnumeration const &subs);
/// Y (a subset of X containing at least one tuple) is a block of aut on X.
bool is_block(PermGroup const &aut, KSet const &x, KSet const &y);
/// Some normal subgroup of order |X| is transitive on X.
bool has_regular_normal_subgroup(SubgroupEnumeration const &aut_subs, KSet const &x);
/// Stab(Y & Z) = Stab(Y) & Stab(Z) (setwise stabilizers in g).
bool meet_stabilizer_identity(PermGroup const &g, KSet const &y, KSet const &z);
/// Stab(U) = gr(Stab(Y), Stab(Z)).
bool join_stabilizer_identity(PermGroup const &g, KSet const &y, KSet const &z, KSet const &u);

} // namespace conclusion

} // namespace korbit
