#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "korbit/catalog.hpp"
#include "korbit/coherence.hpp"
#include "korbit/errors.hpp"
#include "korbit/fks.hpp"
#include "korbit/propcheck.hpp"
#include "korbit/render.hpp"

namespace korbit::cli
{

namespace
{

using nlohmann::json;
namespace fs = std::filesystem;

struct RunConfig
{
  std::string group_path;
  std::string catalog_path;
  std::optional<std::size_t> k;
  std::string k_range;
  std::vector<std::string> checks;
  bool all = false;
  Limits limits;
  std::string convention = "paper";
  std::size_t jobs = 1;
  std::string out;
  bool force = false;
  std::vector<std::string> chain;
  std::size_t degree = 0;
  std::string kind = "transitive";
};

/// Usage or input mistakes detected by the front end itself.
class UsageError : public Error
{
public:
  using Error::Error;
};

json points_json(std::vector<Point> const &ps)
{
  json a = json::array();
  for (auto p : ps)
    a.push_back(p + 1);
  return a;
}

json tuple_json(KTuple const &t) { return points_json(t.points()); }

json partition_json(Partition<Point> const &p)
{
  json a = json::array();
  for (auto const &c : p.classes())
    a.push_back(points_json(c));
  return a;
}

std::pair<std::size_t, std::size_t> parse_range(std::string const &text)
{
  auto dots = text.find("..");
  auto number = [&](std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw UsageError("--k-range expects A..B, got '" + text + "'");
    return v;
  };
  if (dots == std::string::npos)
    throw UsageError("--k-range expects A..B, got '" + text + "'");
  auto a = number(std::string_view(text).substr(0, dots));
  auto b = number(std::string_view(text).substr(dots + 2));
  if (a < 1 || a > b)
    throw UsageError("--k-range needs 1 <= A <= B, got '" + text + "'");
  return {a, b};
}

/// The k values requested for a group of degree n (all k when unspecified).
std::vector<std::size_t> k_values(RunConfig const &c, std::size_t n)
{
  std::size_t lo = 1, hi = n;
  if (c.k) {
    if (*c.k < 1 || *c.k > n)
      throw UsageError("--k must lie in 1.." + std::to_string(n));
    lo = hi = *c.k;
  } else if (!c.k_range.empty()) {
    auto [a, b] = parse_range(c.k_range);
    lo = a;
    hi = std::min(b, n);
  }
  std::vector<std::size_t> ks;
  for (auto k = lo; k <= hi; ++k)
    ks.push_back(k);
  return ks;
}

Convention convention_of(RunConfig const &c)
{
  return c.convention == "classical" ? Convention::classical : Convention::paper;
}

/// Writes to --out when given, else to the output stream.
void emit(RunConfig const &c, std::ostream &out, std::string const &text)
{
  if (c.out.empty())
    out << text;
  else
    write_text_file(c.out, text);
}

PermGroup need_group(RunConfig const &c)
{
  if (c.group_path.empty())
    throw UsageError("--group is required");
  return read_group_file(c.group_path, c.limits);
}

int cmd_orbits(RunConfig const &c, std::ostream &out)
{
  auto g = need_group(c);
  std::string text;
  for (auto k : k_values(c, g.degree()))
    for (auto const &x : k_orbits(g, k, c.limits)) {
      auto v = classify_coherence(g, x);
      json r{{"k", k},
             {"size", x.size()},
             {"representative", tuple_json(x.front())},
             {"verdict", to_string(v.kind)},
             {"trivial", v.trivial},
             {"merged", partition_json(v.merged)}};
      if (v.suborbit) {
        r["suborbit"] = {{"u", points_json(v.suborbit->u)},
                         {"generator", v.suborbit->generator.to_cycle_string()},
                         {"size", v.suborbit->suborbit.size()},
                         {"u_coherent", v.suborbit->u_coherent}};
      }
      text += r.dump() + "\n";
    }
  emit(c, out, text);
  return 0;
}

int cmd_blocks(RunConfig const &c, std::ostream &out)
{
  auto g = need_group(c);
  std::string text;
  json header{{"degree", g.degree()},
              {"order", g.order()},
              {"transitive", g.is_transitive()},
              {"convention", c.convention}};
  if (g.is_transitive()) {
    header["primitive"] = is_primitive(g, convention_of(c));
    json systems = json::array();
    for (auto const &q : block_systems(g))
      systems.push_back(partition_json(q));
    header["block_systems"] = systems;
  }
  text += header.dump() + "\n";
  for (auto k : k_values(c, g.degree()))
    for (auto const &x : k_orbits(g, k, c.limits)) {
      auto co = co_analysis(x);
      json blocks = json::array();
      for (auto const &b : k_blocks(x, g.degree(), c.limits))
        blocks.push_back({{"co", points_json(b.tuples.front().coordinates())},
                          {"size", b.tuples.size()},
                          {"aut_order", b.aut.order()},
                          {"aut_transitive", b.aut_transitive}});
      text += json{{"k", k},
                   {"representative", tuple_json(x.front())},
                   {"size", x.size()},
                   {"co_sets", co.family.members().size()},
                   {"merged", partition_json(co.smashed.partition)},
                   {"co_disjoint", co.smashed.disjoint},
                   {"blocks", blocks}}
                .dump() +
              "\n";
    }
  emit(c, out, text);
  return 0;
}

int cmd_render(RunConfig const &c, std::ostream &out)
{
  auto g = need_group(c);
  std::vector<PermGroup> chain;
  for (auto const &spec : c.chain) {
    std::vector<Permutation> gens;
    std::string_view rest = spec;
    // generators separated by commas
    while (!rest.empty()) {
      auto comma = rest.find(',');
      auto piece = rest.substr(0, comma);
      while (!piece.empty() && piece.front() == ' ')
        piece.remove_prefix(1);
      if (!piece.empty())
        gens.push_back(parse_permutation(piece, g.degree()));
      if (comma == std::string_view::npos)
        break;
      rest.remove_prefix(comma + 1);
    }
    chain.push_back(close_group(std::move(gens), g.degree(), c.limits));
  }
  chain.push_back(g);
  emit(c, out, render_norbit(g, chain));
  return 0;
}

int cmd_catalog(RunConfig const &c, std::ostream &out)
{
  GroupCatalog cat;
  if (!c.catalog_path.empty()) {
    cat = read_catalog_file(c.catalog_path, c.limits);
  } else {
    if (c.degree < 1)
      throw UsageError("catalog needs --degree N or --catalog PATH");
    if (c.kind == "transitive")
      cat = transitive_catalog(c.degree, c.limits);
    else if (c.kind == "all")
      cat = subgroup_catalog(c.degree, c.limits);
    else
      throw UsageError("--kind must be transitive or all");
  }
  emit(c, out, save_catalog(cat));
  return 0;
}

GroupCatalog input_catalog(RunConfig const &c)
{
  if (!c.catalog_path.empty())
    return read_catalog_file(c.catalog_path, c.limits);
  if (!c.group_path.empty()) {
    GroupCatalog cat;
    auto g = read_group_file(c.group_path, c.limits);
    cat.degree = g.degree();
    cat.provenance = "imported";
    cat.entries.push_back(make_entry(fs::path(c.group_path).stem().string(), std::move(g)));
    return cat;
  }
  throw UsageError("--group or --catalog is required");
}

int cmd_check(RunConfig const &c, std::ostream &out)
{
  if (c.all == !c.checks.empty())
    throw UsageError("check needs exactly one of --all and --check");
  auto cat = input_catalog(c);
  SuiteOptions o;
  o.jobs = c.jobs;
  if (!c.all) {
    for (auto const &id : c.checks)
      check_info(id);
    o.check_ids = c.checks;
  }
  if (c.k)
    o.k_range = {{*c.k, *c.k}};
  else if (!c.k_range.empty())
    o.k_range = parse_range(c.k_range);
  auto report = run_suite(cat, o, c.limits);
  auto dir = c.out.empty() ? std::string("report") : c.out;
  write_report(report, dir);
  out << report_summary(report);
  out << "report written to " << dir << "\n";
  return report.count(Verdict::fail) > 0 ? 1 : 0;
}

int cmd_fks(RunConfig const &c, std::ostream &out)
{
  auto cat = input_catalog(c);
  bool const single = !c.group_path.empty() && c.catalog_path.empty();
  if (!single && !c.out.empty())
    fs::create_directories(c.out);
  for (auto const &e : cat.entries) {
    auto trace = fks_pipeline(e.group, c.limits);
    auto replayed = replay_trace(trace, c.limits);
    auto verified = analyze_element(trace.element).is_fpf_prime_power();
    out << e.id << ": " << trace.element.to_cycle_string() << " order "
        << trace.analysis.order << (verified ? " fpf prime-power" : " NOT fpf prime-power")
        << ", " << trace.steps.size() << " steps"
        << (trace.reduced && replayed == *trace.reduced ? ", replayed" : "")
        << (trace.discrepancies.empty()
              ? std::string()
              : ", " + std::to_string(trace.discrepancies.size()) + " discrepancies")
        << "\n";
    if (!c.out.empty()) {
      auto path = single ? fs::path(c.out) : fs::path(c.out) / (e.id + ".trace.jsonl");
      write_text_file(path.string(), save_trace(trace));
    }
  }
  return 0;
}

int cmd_audit(RunConfig const &c, std::ostream &out)
{
  auto g = need_group(c);
  auto record = proof_audit(g, c.limits, c.force ? AuditMode::record : AuditMode::strict);
  emit(c, out, audit_to_json(record) + "\n");
  return 0;
}

void add_limits(CLI::App &app, RunConfig &c)
{
  app.add_option("--max-elements", c.limits.max_elements, "maximum group order")
    ->check(CLI::PositiveNumber);
  app.add_option("--max-degree", c.limits.max_degree,
                 "maximum degree for searches over the full symmetric group")
    ->check(CLI::PositiveNumber);
  app.add_option("--max-tuples", c.limits.max_tuples, "maximum number of k-tuples")
    ->check(CLI::PositiveNumber);
  app.add_option("--max-subgroup-order", c.limits.max_subgroup_order,
                 "maximum group order for subgroup enumeration")
    ->check(CLI::PositiveNumber);
  app.add_option("--max-subgroup-pairs", c.limits.max_subgroup_pairs,
                 "maximum subgroup pairs per pairwise check")
    ->check(CLI::PositiveNumber);
  app.add_option("--convention", c.convention, "primitivity convention")
    ->check(CLI::IsMember({"classical", "paper"}));
  app.add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", c.out, "output file or directory");
}

} // namespace

int run(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  RunConfig c;
  CLI::App app("Permutation group k-orbits, property checks and FKS reductions", "korbit");
  app.require_subcommand(1);
  app.fallthrough();
  add_limits(app, c);

  auto group_opt = [&](CLI::App *s, bool required) {
    auto *o = s->add_option("--group", c.group_path, "group file")->check(CLI::ExistingFile);
    if (required)
      o->required();
  };
  auto k_opts = [&](CLI::App *s) {
    auto *k = s->add_option("--k", c.k, "tuple length")->check(CLI::PositiveNumber);
    s->add_option("--k-range", c.k_range, "tuple lengths A..B")->excludes(k);
  };

  auto *orbits = app.add_subcommand("orbits", "k-orbits with coherence verdicts");
  group_opt(orbits, true);
  k_opts(orbits);
  auto *blocks = app.add_subcommand("blocks", "block systems, k-blocks and Co analysis");
  group_opt(blocks, true);
  k_opts(blocks);
  auto *render = app.add_subcommand("render", "n-orbit matrix with coset cells");
  group_opt(render, true);
  render->add_option("--subgroup", c.chain,
                     "subgroup generators, comma separated; repeat from finest to coarsest");
  auto *catalog = app.add_subcommand("catalog", "generate or normalize a group catalog");
  catalog->add_option("--degree", c.degree, "degree of the generated catalog");
  catalog->add_option("--kind", c.kind, "transitive or all")
    ->check(CLI::IsMember({"transitive", "all"}));
  catalog->add_option("--catalog", c.catalog_path, "catalog file to load and rewrite")
    ->check(CLI::ExistingFile);
  auto *check = app.add_subcommand("check", "run the property check suite");
  group_opt(check, false);
  check->add_option("--catalog", c.catalog_path, "catalog file")->check(CLI::ExistingFile);
  k_opts(check);
  check->add_option("--check", c.checks, "check ids")->delimiter(',');
  check->add_flag("--all", c.all, "run every registered check");
  auto *fks = app.add_subcommand("fks", "fixed-point-free prime-power reduction");
  group_opt(fks, false);
  fks->add_option("--catalog", c.catalog_path, "catalog file")->check(CLI::ExistingFile);
  auto *audit = app.add_subcommand("audit", "audit of the primitive case");
  group_opt(audit, true);
  audit->add_flag("--force", c.force, "record violated hypotheses instead of failing");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &) {
    out << app.help();
    return 0;
  } catch (CLI::CallForAllHelp const &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (CLI::ParseError const &e) {
    err << "korbit: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*orbits)
      return cmd_orbits(c, out);
    if (*blocks)
      return cmd_blocks(c, out);
    if (*render)
      return cmd_render(c, out);
    if (*catalog)
      return cmd_catalog(c, out);
    if (*check)
      return cmd_check(c, out);
    if (*fks)
      return cmd_fks(c, out);
    if (*audit)
      return cmd_audit(c, out);
  } catch (ResourceLimitError const &e) {
    err << "korbit: resource limit: " << e.what() << "\n";
    return 2;
  } catch (std::exception const &e) {
    err << "korbit: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

} // namespace korbit::cli
