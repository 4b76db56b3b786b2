#include "korbit/coherence.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "korbit/errors.hpp"
#include "korbit/subgroups.hpp"

namespace korbit
{

std::string to_string(Coherence c)
{
  switch (c) {
  case Coherence::incoherent:
    return "incoherent";
  case Coherence::coherent:
    return "coherent";
  case Coherence::elementary_coherent:
    return "elementary-coherent";
  }
  return "?";
}

namespace
{

void require_invariant(PermGroup const &g, KSet const &x)
{
  if (x.empty())
    throw PreconditionError("k-set is empty");
  if (x.support().back() >= g.degree())
    throw PreconditionError("k-set uses points beyond the group degree");
  for (auto const &s : g.generators())
    if (left_act(s, x) != x)
      throw PreconditionError("k-set is not invariant under the group");
}

std::optional<SuborbitWitness> find_proper_suborbit(PermGroup const &g, KSet const &x,
                                                    std::vector<Point> const &support)
{
  auto const &alpha = x.front();
  for (auto const &e : g.elements()) {
    if (e == g.identity())
      continue;
    std::vector<KTuple> orbit{alpha};
    for (auto t = left_act(e, alpha); t != alpha; t = left_act(e, t))
      orbit.push_back(t);
    KSet y(alpha.arity(), std::move(orbit));
    auto co = co_analysis(y);
    if (co.family.size() < 2 || co.family.universe().size() >= support.size())
      continue;
    SuborbitWitness w;
    w.u = co.family.universe();
    w.suborbit = std::move(y);
    w.generator = e;
    w.u_coherent = !co.smashed.disjoint;
    return w;
  }
  return std::nullopt;
}

} // namespace

CoherenceVerdict classify_coherence(PermGroup const &g, KSet const &x)
{
  require_invariant(g, x);
  auto co = co_analysis(x);
  CoherenceVerdict v;
  v.merged = co.smashed.partition;
  if (x.arity() == 1 || co.family.size() == 1) {
    v.kind = Coherence::coherent;
    v.trivial = true;
    return v;
  }
  if (v.merged.size() > 1) {
    v.kind = Coherence::incoherent;
    return v;
  }
  v.suborbit = find_proper_suborbit(g, x, co.family.universe());
  v.kind = v.suborbit ? Coherence::coherent : Coherence::elementary_coherent;
  return v;
}

KStabilizer stab_of_ksuborbit(PermGroup const &g, KSet const &y)
{
  if (y.empty())
    throw PreconditionError("k-suborbit is empty");
  if (y.support().back() >= g.degree())
    throw PreconditionError("k-set uses points beyond the group degree");
  std::vector<Permutation> kept;
  for (auto const &e : g.elements()) {
    bool ok = std::all_of(y.begin(), y.end(),
                          [&](KTuple const &t) { return y.contains(left_act(e, t)); });
    if (ok)
      kept.push_back(e);
  }
  KStabilizer out;
  out.group = PermGroup::from_sorted_elements(g.degree(), {}, std::move(kept));
  std::set<KTuple> reached;
  for (auto const &e : out.group.elements())
    reached.insert(left_act(e, y.front()));
  out.transitive = reached.size() == y.size();
  return out;
}

PermGroup setwise_stabilizer(PermGroup const &g, std::vector<Point> const &s)
{
  std::vector<bool> in(g.degree(), false);
  for (auto p : s) {
    if (p >= g.degree())
      throw PreconditionError("point " + point_label(p) + " beyond the group degree");
    in[p] = true;
  }
  std::vector<Permutation> kept;
  for (auto const &e : g.elements())
    if (std::all_of(s.begin(), s.end(), [&](Point p) { return in[e[p]]; }))
      kept.push_back(e);
  return PermGroup::from_sorted_elements(g.degree(), {}, std::move(kept));
}

CosetPartitions coset_k_partitions(PermGroup const &g, PermGroup const &a, KTuple const &i)
{
  if (a.degree() != g.degree() || !a.is_subgroup_of(g))
    throw PreconditionError("A is not a subgroup of G");
  CosetPartitions out;
  out.x = orbit_of(g, i);
  out.y = orbit_of(a, i);

  std::set<KSet> left;
  for (auto const &e : g.elements())
    left.insert(left_act(e, out.y));
  out.left.assign(left.begin(), left.end());
  std::size_t total = 0;
  for (auto const &l : out.left)
    total += l.size();
  out.left_is_partition = total == out.x.size();

  std::set<KTuple> done;
  std::vector<std::vector<KTuple>> classes;
  for (auto const &t : out.x) {
    if (done.count(t))
      continue;
    auto orbit = orbit_of(a, t);
    done.insert(orbit.begin(), orbit.end());
    classes.push_back(orbit.tuples());
  }
  out.right = Partition<KTuple>(std::move(classes));
  return out;
}

bool is_automorphic_subset(PermGroup const &g, std::vector<Point> const &s)
{
  if (s.empty())
    return false;
  auto stab = setwise_stabilizer(g, s);
  std::vector<Point> orbit;
  for (auto const &e : stab.elements())
    orbit.push_back(e[s.front()]);
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  auto sorted = s;
  std::sort(sorted.begin(), sorted.end());
  return orbit == sorted;
}

std::vector<std::size_t> divisors(std::size_t n)
{
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0)
      out.push_back(d);
  return out;
}

namespace
{

std::vector<std::vector<Point>> automorphic_subsets_direct(PermGroup const &g)
{
  std::size_t const n = g.degree();
  std::vector<std::vector<Point>> out;
  std::vector<Point> s;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    s.clear();
    for (std::size_t p = 0; p < n; ++p)
      if (mask >> p & 1)
        s.push_back(static_cast<Point>(p));
    std::uint32_t orbit = 0;
    for (auto const &e : g.elements()) {
      std::uint32_t image = 0;
      for (auto p : s)
        image |= std::uint32_t{1} << e[p];
      if (image == mask)
        orbit |= std::uint32_t{1} << e[s.front()];
    }
    if (orbit == mask)
      out.push_back(s);
  }
  return out;
}

std::vector<std::vector<Point>> automorphic_subsets_by_subgroups(PermGroup const &g,
                                                                 Limits const &limits)
{
  SubgroupEnumeration subs(g, limits);
  std::set<std::vector<Point>> found;
  for (auto const &members : subs.all()) {
    auto orbits = orbits_on_points(subs.to_group(members));
    for (auto const &c : orbits.classes())
      found.insert(c);
  }
  return {found.begin(), found.end()};
}

} // namespace

AutomorphicAnalysis automorphic_analysis(PermGroup const &g, Limits const &limits)
{
  std::size_t const n = g.degree();
  AutomorphicAnalysis out;
  bool direct = n <= 16 && (std::size_t{1} << n) * g.order() <= 200'000'000;
  out.subsets = direct ? automorphic_subsets_direct(g)
                       : automorphic_subsets_by_subgroups(g, limits);
  std::sort(out.subsets.begin(), out.subsets.end(), [](auto const &a, auto const &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });

  std::vector<bool> sizes(n + 1, false);
  for (auto const &s : out.subsets)
    sizes[s.size()] = true;
  for (auto d : divisors(g.order()))
    if (d <= n)
      out.group_divisors.push_back({d, sizes[d]});
  for (auto d : divisors(n))
    out.degree_divisors.push_back({d, sizes[d]});
  for (auto const &a : out.group_divisors)
    if (a.automorphic && a.k < n)
      out.max_proper_group_divisor = std::max(out.max_proper_group_divisor, a.k);
  for (auto const &a : out.degree_divisors)
    if (a.automorphic && a.k < n)
      out.max_proper_degree_divisor = std::max(out.max_proper_degree_divisor, a.k);
  return out;
}

} // namespace korbit
