#include "korbit/fks.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "korbit/coherence.hpp"
#include "korbit/errors.hpp"
#include "korbit/ktuple.hpp"
#include "korbit/subgroups.hpp"

namespace korbit
{

using nlohmann::json;

std::optional<Permutation> find_fpf_prime_power(PermGroup const &g)
{
  for (auto const &e : g.elements())
    if (analyze_element(e).is_fpf_prime_power())
      return e;
  return std::nullopt;
}

namespace
{

std::uint64_t ipow(std::uint64_t b, unsigned e)
{
  std::uint64_t r = 1;
  while (e--)
    r *= b;
  return r;
}

} // namespace

Permutation lift_fpf(PermGroup const &g, Partition<Point> const &q, Permutation const &g_quot,
                     std::optional<Permutation> const &preimage, Limits const &limits)
{
  QuotientAction qa(g, q, limits);
  if (g_quot.degree() != q.size() || !qa.group().contains(g_quot))
    throw PreconditionError("element " + g_quot.to_cycle_string() +
                            " is not in the quotient image");
  auto qa_info = analyze_element(g_quot);
  if (!qa_info.is_fpf)
    throw PreconditionError("quotient element " + g_quot.to_cycle_string() +
                            " fixes a class");
  if (!qa_info.is_prime_power())
    throw PreconditionError("quotient element " + g_quot.to_cycle_string() +
                            " does not have prime-power order");
  auto const p = qa_info.splits.front().prime;

  std::optional<Permutation> pre = preimage;
  if (pre) {
    if (!g.contains(*pre) || qa.image(*pre) != g_quot)
      throw PreconditionError(pre->to_cycle_string() + " is not a preimage of " +
                              g_quot.to_cycle_string());
  } else {
    for (auto const &e : g.elements())
      if (qa.image(e) == g_quot) {
        pre = e;
        break;
      }
  }

  auto info = analyze_element(*pre);
  auto const *split = info.split_for(p);
  auto const d = split->cofactor;
  auto result = pre->pow(static_cast<std::int64_t>(d));
  auto check = analyze_element(result);
  if (!check.is_fpf_prime_power() || check.order != ipow(p, split->exponent))
    throw Error("lift of " + g_quot.to_cycle_string() + " via " + pre->to_cycle_string() +
                " gave " + result.to_cycle_string() +
                ", which is not fixed-point-free of prime-power order");
  return result;
}

std::optional<PermGroup> least_transitive_subgroup(PermGroup const &g, Limits const &limits)
{
  SubgroupEnumeration subs(g, limits);
  // classes are sorted by order and then by their least conjugate, so the
  // first transitive proper class holds the least transitive subgroup
  for (auto const &c : subs.classes()) {
    if (c.order() == g.order())
      break;
    auto h = subs.to_group(c);
    if (h.is_transitive())
      return h;
  }
  return std::nullopt;
}

namespace
{

std::string gens_string(PermGroup const &g)
{
  std::string out = "<";
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    if (i)
      out += ", ";
    out += g.generators()[i].to_cycle_string();
  }
  return out + ">";
}

void exact_covers(std::vector<std::vector<Point>> const &subsets, std::size_t n,
                  std::size_t cap, std::vector<Partition<Point>> &out, bool &truncated)
{
  std::vector<bool> covered(n, false);
  std::vector<std::vector<Point>> chosen;
  std::function<void()> rec = [&]() {
    if (truncated)
      return;
    auto first = std::find(covered.begin(), covered.end(), false);
    if (first == covered.end()) {
      if (out.size() >= cap) {
        truncated = true;
        return;
      }
      out.emplace_back(chosen);
      return;
    }
    auto p = static_cast<Point>(first - covered.begin());
    for (auto const &s : subsets) {
      if (s.front() != p)
        continue;
      if (std::any_of(s.begin(), s.end(), [&](Point x) { return covered[x]; }))
        continue;
      for (auto x : s)
        covered[x] = true;
      chosen.push_back(s);
      rec();
      chosen.pop_back();
      for (auto x : s)
        covered[x] = false;
    }
  };
  rec();
}

PartitionFinding examine_partition(PermGroup const &g, PermGroup const &n,
                                   Partition<Point> const &q)
{
  PartitionFinding f;
  f.q = q;
  std::vector<KSet> projections;
  for (auto const &c : q.classes())
    projections.push_back(orbit_of(g, KTuple(c)));

  f.n_isomorphic = std::all_of(projections.begin(), projections.end(), [&](KSet const &x) {
    return std::any_of(n.elements().begin(), n.elements().end(), [&](Permutation const &v) {
      return left_act(v, projections.front()) == x;
    });
  });

  f.elementary_coherent = true;
  f.orbit_size_equals_order = true;
  for (auto const &x : projections) {
    auto v = classify_coherence(g, x);
    f.coherence.push_back(to_string(v.kind) + (v.trivial ? " (trivial)" : ""));
    f.elementary_coherent &= v.kind == Coherence::elementary_coherent;
    f.orbit_sizes.push_back(x.size());
    f.orbit_size_equals_order &= x.size() == g.order();
  }

  f.stabilizer_projection_isomorphic = true;
  for (auto const &c : q.classes()) {
    auto a = setwise_stabilizer(g, c);
    f.stabilizer_orders.push_back(a.order());
    for (auto const &target : q.classes()) {
      std::set<std::vector<Point>> restricted;
      for (auto const &e : a.elements()) {
        std::vector<Point> r;
        for (auto x : target)
          r.push_back(e[x]);
        restricted.insert(std::move(r));
      }
      f.stabilizer_projection_isomorphic &= restricted.size() == a.order();
    }
  }
  return f;
}

} // namespace

AuditRecord proof_audit(PermGroup const &g, Limits const &limits, AuditMode mode,
                        std::size_t max_partitions)
{
  if (!g.is_transitive())
    throw PreconditionError("proof audit needs a transitive group");
  AuditRecord a;
  a.group = g;
  if (!is_primitive(g, Convention::paper))
    a.hypothesis_violations.push_back(
      g.is_abelian() && is_primitive(g, Convention::classical)
        ? "group is primitive but Abelian"
        : "group is not primitive");
  if (auto h = least_transitive_subgroup(g, limits))
    a.hypothesis_violations.push_back("group has the proper transitive subgroup " +
                                      gens_string(*h));
  if (mode == AuditMode::strict && !a.hypothesis_violations.empty())
    throw PreconditionError("hypothesis violation: " + a.hypothesis_violations.front());

  a.normalizer = normalizer_in_sym(g, limits);
  a.normalizer_proper = a.normalizer.order() != g.order();

  auto automorphic = automorphic_analysis(g, limits);
  for (auto [name, k] : {std::pair<char const *, std::size_t>{
                           "degree", automorphic.max_proper_degree_divisor},
                         {"group", automorphic.max_proper_group_divisor}}) {
    AuditVariant v;
    v.name = name;
    v.k = k;
    if (k > 1) {
      std::vector<std::vector<Point>> subsets;
      for (auto const &s : automorphic.subsets)
        if (s.size() == k)
          subsets.push_back(s);
      std::vector<Partition<Point>> qs;
      exact_covers(subsets, g.degree(), max_partitions, qs, v.truncated);
      for (auto const &q : qs) {
        v.partitions.push_back(examine_partition(g, a.normalizer, q));
        v.closed |= v.partitions.back().closes();
      }
    }
    a.closed |= v.closed && a.normalizer_proper;
    a.variants.push_back(std::move(v));
  }
  return a;
}

namespace
{

json group_json(PermGroup const &g)
{
  json gens = json::array();
  for (auto const &s : g.generators())
    gens.push_back(s.to_cycle_string());
  return {{"degree", g.degree()}, {"generators", gens}};
}

} // namespace

std::string audit_to_json(AuditRecord const &a)
{
  json j;
  j["group"] = group_json(a.group);
  j["hypothesis_violations"] = a.hypothesis_violations;
  j["normalizer_order"] = a.normalizer.order();
  j["normalizer_proper"] = a.normalizer_proper;
  j["closed"] = a.closed;
  j["variants"] = json::array();
  for (auto const &v : a.variants) {
    json jv{{"name", v.name}, {"k", v.k}, {"truncated", v.truncated}, {"closed", v.closed}};
    jv["partitions"] = json::array();
    for (auto const &f : v.partitions)
      jv["partitions"].push_back({{"q", format_points(f.q)},
                                  {"n_isomorphic", f.n_isomorphic},
                                  {"elementary_coherent", f.elementary_coherent},
                                  {"orbit_size_equals_order", f.orbit_size_equals_order},
                                  {"stabilizer_projection_isomorphic",
                                   f.stabilizer_projection_isomorphic},
                                  {"coherence", f.coherence},
                                  {"orbit_sizes", f.orbit_sizes},
                                  {"stabilizer_orders", f.stabilizer_orders}});
    j["variants"].push_back(std::move(jv));
  }
  return j.dump();
}

std::string to_string(StepKind k)
{
  switch (k) {
  case StepKind::quotient:
    return "quotient";
  case StepKind::lift:
    return "lift";
  case StepKind::abandon:
    return "abandon";
  case StepKind::descend:
    return "descend";
  case StepKind::ascend:
    return "ascend";
  case StepKind::terminal:
    return "terminal";
  case StepKind::audit:
    return "audit";
  }
  return "?";
}

namespace
{

bool same_group(PermGroup const &a, PermGroup const &b)
{ return a == b && a.generators() == b.generators(); }

StepKind step_kind(std::string const &s)
{
  for (auto k : {StepKind::quotient, StepKind::lift, StepKind::abandon, StepKind::descend,
                 StepKind::ascend, StepKind::terminal, StepKind::audit})
    if (to_string(k) == s)
      return k;
  throw ParseError("unknown trace step kind \"" + s + "\"");
}

} // namespace

bool operator==(TraceStep const &a, TraceStep const &b)
{
  return a.kind == b.kind && same_group(a.group, b.group) && a.blocks == b.blocks &&
         a.element == b.element && a.note == b.note;
}

bool operator==(ReductionTrace const &a, ReductionTrace const &b)
{
  return same_group(a.group, b.group) && a.steps == b.steps && a.reduced == b.reduced &&
         a.element == b.element && a.discrepancies == b.discrepancies;
}

namespace
{

class Reducer
{
public:
  Reducer(ReductionTrace &t, Limits const &limits) : t_(t), limits_(limits) {}

  std::optional<Permutation> run(PermGroup const &g)
  {
    auto systems = block_systems(g);
    if (!systems.empty()) {
      for (auto const &q : systems) {
        push(StepKind::quotient, g, q);
        std::optional<Permutation> sub;
        std::string failure;
        try {
          QuotientAction qa(g, q, limits_);
          sub = run(qa.group());
          if (sub) {
            auto e = lift_fpf(g, q, *sub, std::nullopt, limits_);
            push(StepKind::lift, {}, q, e);
            return e;
          }
          failure = "quotient on " + format_points(q) + " gave no element";
        } catch (Error const &ex) {
          failure = "quotient on " + format_points(q) + ": " + ex.what();
        }
        t_.discrepancies.push_back(failure);
        push(StepKind::abandon, {}, q, std::nullopt, failure);
      }
      return terminal(g, "every block system failed");
    }
    if (g.is_abelian())
      return terminal(g, "primitive Abelian");

    std::optional<PermGroup> sub;
    try {
      sub = least_transitive_subgroup(g, limits_);
    } catch (ResourceLimitError const &ex) {
      t_.discrepancies.push_back(std::string("subgroup search: ") + ex.what());
      return terminal(g, "subgroup search exceeded a cap");
    }
    if (sub) {
      push(StepKind::descend, *sub);
      auto e = run(*sub);
      push(StepKind::ascend, {}, std::nullopt, e);
      if (e)
        return e;
      return terminal(g, "subgroup gave no element");
    }

    std::string note;
    try {
      note = audit_to_json(proof_audit(g, limits_));
    } catch (Error const &ex) {
      note = std::string("audit failed: ") + ex.what();
      t_.discrepancies.push_back(note);
    }
    push(StepKind::audit, g, std::nullopt, std::nullopt, note);
    return terminal(g, "primitive without transitive subgroups");
  }

private:
  ReductionTrace &t_;
  Limits const &limits_;

  std::optional<Permutation> terminal(PermGroup const &g, std::string note)
  {
    auto e = find_fpf_prime_power(g);
    if (!e)
      note += "; no fixed-point-free prime-power element";
    push(StepKind::terminal, g, std::nullopt, e, std::move(note));
    return e;
  }

  void push(StepKind kind, PermGroup g, std::optional<Partition<Point>> q = std::nullopt,
            std::optional<Permutation> e = std::nullopt, std::string note = {})
  {
    t_.steps.push_back({kind, std::move(g), std::move(q), std::move(e), std::move(note)});
  }
};

} // namespace

ReductionTrace fks_pipeline(PermGroup const &g, Limits const &limits)
{
  if (!g.is_transitive())
    throw PreconditionError("the reduction needs a transitive group");
  ReductionTrace t;
  t.group = g;
  Reducer r(t, limits);
  t.reduced = r.run(g);

  auto searched = find_fpf_prime_power(g);
  if (!t.reduced)
    t.discrepancies.push_back("reduction produced no element");
  if (!searched)
    t.discrepancies.push_back("direct search found no element");
  if (t.reduced && !(g.contains(*t.reduced) &&
                     analyze_element(*t.reduced).is_fpf_prime_power()))
    t.discrepancies.push_back("reduction produced an invalid element " +
                              t.reduced->to_cycle_string());
  if (t.reduced && g.contains(*t.reduced) && analyze_element(*t.reduced).is_fpf_prime_power())
    t.element = *t.reduced;
  else if (searched)
    t.element = *searched;
  else
    throw Error("no fixed-point-free prime-power element in a transitive group of degree " +
                std::to_string(g.degree()));
  t.analysis = analyze_element(t.element);
  return t;
}

Permutation replay_trace(ReductionTrace const &t, Limits const &limits)
{
  struct Frame
  {
    PermGroup group;
    StepKind kind;
    std::optional<Partition<Point>> blocks;
  };
  std::vector<Frame> stack;
  PermGroup current = t.group;
  std::optional<Permutation> last;
  auto fail = [](std::size_t i, std::string const &what) {
    throw Error("trace step " + std::to_string(i + 1) + " does not replay: " + what);
  };

  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    auto const &s = t.steps[i];
    switch (s.kind) {
    case StepKind::quotient: {
      if (!(s.group == current) || !s.blocks)
        fail(i, "quotient of a group other than the current one");
      QuotientAction qa(current, *s.blocks, limits);
      stack.push_back({current, s.kind, s.blocks});
      current = qa.group();
      last.reset();
      break;
    }
    case StepKind::lift:
    case StepKind::abandon: {
      if (stack.empty() || stack.back().kind != StepKind::quotient)
        fail(i, "no quotient to return from");
      auto frame = stack.back();
      stack.pop_back();
      current = frame.group;
      if (s.kind == StepKind::lift) {
        if (!last)
          fail(i, "nothing to lift");
        auto e = lift_fpf(current, *frame.blocks, *last, std::nullopt, limits);
        if (e != s.element)
          fail(i, "lift gives " + e.to_cycle_string());
        last = e;
      } else {
        last.reset();
      }
      break;
    }
    case StepKind::descend:
      if (!s.group.is_subgroup_of(current) || !s.group.is_transitive() ||
          s.group.order() == current.order())
        fail(i, "not a proper transitive subgroup");
      stack.push_back({current, s.kind, std::nullopt});
      current = s.group;
      last.reset();
      break;
    case StepKind::ascend:
      if (stack.empty() || stack.back().kind != StepKind::descend)
        fail(i, "no subgroup to return from");
      current = stack.back().group;
      stack.pop_back();
      if (last != s.element)
        fail(i, "subgroup returned a different element");
      break;
    case StepKind::terminal: {
      if (!(s.group == current))
        fail(i, "search in a group other than the current one");
      auto e = find_fpf_prime_power(current);
      if (e != s.element)
        fail(i, "search gives a different element");
      last = e;
      break;
    }
    case StepKind::audit:
      if (!(s.group == current))
        fail(i, "audit of a group other than the current one");
      break;
    }
  }
  if (!stack.empty())
    throw Error("trace ends inside a reduction step");
  if (last != t.reduced)
    throw Error("trace steps produce a different reduced element");
  auto result = last ? *last : find_fpf_prime_power(t.group).value_or(Permutation());
  if (result != t.element)
    throw Error("trace result does not replay");
  return result;
}

std::string save_trace(ReductionTrace const &t)
{
  std::string out;
  json head = group_json(t.group);
  head["record"] = "group";
  out += head.dump() + "\n";
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    auto const &s = t.steps[i];
    json j{{"record", "step"}, {"index", i + 1}, {"kind", to_string(s.kind)}};
    if (s.group.degree() > 0)
      j["group"] = group_json(s.group);
    if (s.blocks)
      j["blocks"] = format_points(*s.blocks);
    if (s.element) {
      j["element"] = s.element->to_cycle_string();
      j["element_degree"] = s.element->degree();
    }
    if (!s.note.empty())
      j["note"] = s.note;
    out += j.dump() + "\n";
  }
  json r{{"record", "result"},
         {"element", t.element.to_cycle_string()},
         {"order", t.analysis.order},
         {"fixed_point_free", t.analysis.is_fpf},
         {"discrepancies", t.discrepancies}};
  r["reduced"] = t.reduced ? json(t.reduced->to_cycle_string()) : json(nullptr);
  if (t.analysis.is_prime_power()) {
    r["prime"] = t.analysis.splits.front().prime;
    r["exponent"] = t.analysis.splits.front().exponent;
  }
  out += r.dump() + "\n";
  return out;
}

namespace
{

PermGroup group_from_json(json const &j, Limits const &limits)
{
  auto n = j.at("degree").get<std::size_t>();
  if (n < 1 || n > kMaxDegree)
    throw ParseError("group degree out of range");
  std::vector<Permutation> gens;
  for (auto const &s : j.at("generators"))
    gens.push_back(parse_permutation(s.get<std::string>(), n));
  return close_group(std::move(gens), n, limits);
}

Partition<Point> partition_from_text(std::string const &text, std::size_t n)
{
  std::vector<std::vector<Point>> classes{{}};
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "|") {
      classes.emplace_back();
      continue;
    }
    unsigned long v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 1 || v > n)
      throw ParseError("block point " + tok + " out of range");
    classes.back().push_back(static_cast<Point>(v - 1));
  }
  try {
    return Partition<Point>(std::move(classes));
  } catch (PreconditionError const &e) {
    throw ParseError(std::string("malformed block system: ") + e.what());
  }
}

} // namespace

ReductionTrace load_trace(std::string_view text, Limits const &limits)
{
  ReductionTrace t;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_group = false, have_result = false;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        continue;
      if (have_result)
        throw ParseError("records after the result");
      auto j = json::parse(line);
      auto record = j.at("record").get<std::string>();
      if (record == "group") {
        if (have_group)
          throw ParseError("second group record");
        t.group = group_from_json(j, limits);
        have_group = true;
      } else if (record == "step") {
        if (!have_group)
          throw ParseError("step before the group record");
        TraceStep s;
        s.kind = step_kind(j.at("kind").get<std::string>());
        if (j.contains("group"))
          s.group = group_from_json(j.at("group"), limits);
        if (j.contains("blocks")) {
          auto n = s.group.degree() > 0 ? s.group.degree() : kMaxDegree;
          s.blocks = partition_from_text(j.at("blocks").get<std::string>(), n);
        }
        if (j.contains("element"))
          s.element = parse_permutation(j.at("element").get<std::string>(),
                                        j.at("element_degree").get<std::size_t>());
        if (j.contains("note"))
          s.note = j.at("note").get<std::string>();
        if (j.at("index").get<std::size_t>() != t.steps.size() + 1)
          throw ParseError("step index out of sequence");
        t.steps.push_back(std::move(s));
      } else if (record == "result") {
        if (!have_group)
          throw ParseError("result before the group record");
        t.element = parse_permutation(j.at("element").get<std::string>(), t.group.degree());
        if (!j.at("reduced").is_null())
          t.reduced = parse_permutation(j.at("reduced").get<std::string>(), t.group.degree());
        t.discrepancies = j.at("discrepancies").get<std::vector<std::string>>();
        t.analysis = analyze_element(t.element);
        have_result = true;
      } else {
        throw ParseError("unknown record \"" + record + "\"");
      }
    }
  } catch (json::exception const &e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  } catch (ParseError const &e) {
    throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
  }
  if (!have_result)
    throw ParseError("trace has no result record");
  return t;
}

} // namespace korbit
