#include "korbit/propcheck.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <set>
#include <thread>

#include <json.hpp>

#include "korbit/coherence.hpp"
#include "korbit/errors.hpp"
#include "korbit/fks.hpp"

namespace korbit
{

using nlohmann::json;

PermGroup const *CheckContext::subgroup(std::string const &name) const
{
  auto it = subgroups.find(name);
  return it == subgroups.end() ? nullptr : &it->second;
}

KTuple const *CheckContext::tuple(std::string const &name) const
{
  auto it = tuples.find(name);
  return it == tuples.end() ? nullptr : &it->second;
}

bool operator==(CheckContext const &a, CheckContext const &b)
{
  if (a.group_id != b.group_id || !(a.group == b.group) || a.k != b.k ||
      a.tuples != b.tuples || a.subgroups.size() != b.subgroups.size())
    return false;
  for (auto const &[name, g] : a.subgroups) {
    auto const *other = b.subgroup(name);
    if (!other || !(*other == g))
      return false;
  }
  return true;
}

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::pass:
    return "pass";
  case Verdict::fail:
    return "fail";
  case Verdict::inapplicable:
    return "inapplicable";
  case Verdict::skipped:
    return "skipped";
  }
  return "?";
}

std::shared_ptr<SubgroupEnumeration const> CheckEnv::subgroups(PermGroup const &g)
{
  std::string key = std::to_string(g.degree()) + ":";
  for (auto const &e : g.elements())
    key.append(reinterpret_cast<char const *>(e.images().data()), e.degree());
  std::shared_ptr<Slot> slot;
  {
    std::lock_guard lock(mutex_);
    auto &s = cache_[key];
    if (!s)
      s = std::make_shared<Slot>();
    slot = s;
  }
  std::call_once(slot->once, [&] {
    try {
      slot->value = std::make_shared<SubgroupEnumeration const>(g, limits_);
    } catch (...) {
      slot->error = std::current_exception();
    }
  });
  if (slot->error)
    std::rethrow_exception(slot->error);
  return slot->value;
}

std::vector<CheckInfo> const &check_registry()
{
  static std::vector<CheckInfo> const registry = {
    {"P_stab_co", true,
     "for an automorphic tuple a, M = Stab(Co(a)) and H its pointwise stabilizer of a: "
     "H is normal in M and M/H is Aut(Ma)"},
    {"P_LkRk", true, "Y = Ka a suborbit, H = Stab(Y): if GY = HX then H is normal in G"},
    {"P_prim_normal", false, "non-trivial normal subgroups of a primitive group are transitive"},
    {"C_simple", false, "a primitive group without proper transitive subgroups is simple"},
    {"P_index", false,
     "A < H normal in G with N_H(A) = A: N_G(A) != A and |G|/|H| = |N_G(A)|/|A|"},
    {"P_giso", false,
     "A < H normal in G with N_H(A) = A: some g outside A maps an A-orbit Z to another "
     "A-orbit gZ != Z"},
    {"L_alt_norm", false, "G inside A_n: N_{S_n}(G) != G"},
    {"C_no_tr", false, "primitive without proper transitive subgroups: N_{S_n}(G) != G"},
    {"P_equal_classes", true,
     "every subgroup of Aut(X) has equal-size orbits on X: |Aut(X)| = |X|"},
    {"L_grAB", true,
     "A, B in Aut(X) acting freely on a: gr(A,B) acts freely on a"},
    {"P_capcup", true,
     "meet and join of two block systems GY, GZ of X are block systems, GT and GU, with "
     "Stab(T) = Stab(Y) & Stab(Z) and Stab(U) = gr(Stab(Y), Stab(Z))"},
    {"L_H_order", true,
     "every suborbit Y of Aut(X) gives a partition Aut(X)Y: Aut(X) has a normal subgroup "
     "of order |X| transitive on X"},
    {"P_incoherent", true, "X incoherent: |Aut(X)| != |X|"},
    {"P_triv_norm", true,
     "hypotheses of L_H_order and a proper self-normalizing subgroup of Aut(X): "
     "|Aut(X)| = |X|"},
    {"T_coherent", true, "hypotheses of L_H_order and X coherent: |Aut(X)| = |X|"},
    {"L_elcoh_part", true,
     "X elementary coherent: Aut(X)Y is a partition of X for every suborbit Y"},
    {"T_elcoh", true, "X elementary coherent: |Aut(X)| = |X|"},
    {"L_block_aut", true, "Y a k-block of a k-rorbit: Aut(Y) is transitive on Co(Y)"},
    {"L_proof_elcoh", false,
     "primitive without proper transitive subgroups: projections on the classes of an "
     "N-isomorphic partition are elementary coherent"},
  };
  return registry;
}

CheckInfo const &check_info(std::string_view id)
{
  for (auto const &c : check_registry())
    if (c.id == id)
      return c;
  throw PreconditionError("unknown check id " + std::string(id));
}

namespace
{

using Index = std::uint32_t;

/// The action of a group on the tuples of a k-set, by tuple index.
class XAction
{
public:
  XAction(PermGroup const &g, KSet const &x) : g_(g), x_(x), act_(g.order())
  {
    std::vector<Point> buf(x.arity());
    auto const &ts = x.tuples();
    for (std::size_t e = 0; e < g.order(); ++e) {
      auto const &p = g.elements()[e];
      act_[e].resize(ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = 0; j < buf.size(); ++j)
          buf[j] = p[ts[i][j]];
        auto it = std::lower_bound(ts.begin(), ts.end(), buf, [](KTuple const &t, auto const &b) {
          return std::lexicographical_compare(t.points().begin(), t.points().end(), b.begin(),
                                              b.end());
        });
        if (it == ts.end() || !std::equal(buf.begin(), buf.end(), it->points().begin()))
          throw PreconditionError("k-set is not invariant under the acting group");
        act_[e][i] = static_cast<Index>(it - ts.begin());
      }
    }
  }

  std::size_t size() const { return x_.size(); }
  Index operator()(std::size_t element, Index i) const { return act_[element][i]; }
  PermGroup const &group() const { return g_; }
  KSet const &x() const { return x_; }

  Index index_of(KTuple const &t) const
  {
    auto it = std::lower_bound(x_.begin(), x_.end(), t);
    if (it == x_.end() || *it != t)
      throw PreconditionError("tuple " + t.to_string() + " is not in the k-set");
    return static_cast<Index>(it - x_.begin());
  }

  /// Orbit of tuple i under the elements listed (a subgroup).
  std::vector<Index> orbit(std::vector<std::uint32_t> const &members, Index i) const
  {
    std::vector<Index> out;
    for (auto e : members)
      out.push_back(act_[e][i]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Index> image(std::size_t element, std::vector<Index> const &s) const
  {
    std::vector<Index> out;
    out.reserve(s.size());
    for (auto i : s)
      out.push_back(act_[element][i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Elements (indices into group().elements()) stabilizing s setwise.
  std::vector<std::uint32_t> stabilizer(std::vector<Index> const &s) const
  {
    std::vector<bool> in(size(), false);
    for (auto i : s)
      in[i] = true;
    std::vector<std::uint32_t> out;
    for (std::size_t e = 0; e < act_.size(); ++e)
      if (std::all_of(s.begin(), s.end(), [&](Index i) { return in[act_[e][i]]; }))
        out.push_back(static_cast<std::uint32_t>(e));
    return out;
  }

  /// s (containing tuple a) is a block: every element moving a into s
  /// maps s onto itself.
  bool is_block(std::vector<Index> const &s, Index a) const
  {
    std::vector<bool> in(size(), false);
    for (auto i : s)
      in[i] = true;
    for (auto const &row : act_) {
      if (!in[row[a]])
        continue;
      for (auto i : s)
        if (!in[row[i]])
          return false;
    }
    return true;
  }

  /// Orbit sizes of the subgroup generated by the given elements.
  std::vector<std::size_t> orbit_sizes(std::vector<std::uint32_t> const &gens) const
  {
    detail::UnionFind uf(size());
    for (auto e : gens)
      for (Index i = 0; i < size(); ++i)
        uf.unite(i, act_[e][i]);
    std::map<std::size_t, std::size_t> count;
    for (Index i = 0; i < size(); ++i)
      ++count[uf.find(i)];
    std::vector<std::size_t> out;
    for (auto const &[root, c] : count)
      out.push_back(c);
    return out;
  }

private:
  PermGroup const &g_;
  KSet const &x_;
  std::vector<std::vector<Index>> act_;
};

std::vector<std::uint32_t> members_of(PermGroup const &g, PermGroup const &sub)
{
  std::vector<std::uint32_t> out;
  for (auto const &e : sub.elements()) {
    auto i = g.index_of(e);
    if (i == PermGroup::npos)
      throw PreconditionError("subgroup is not contained in the group");
    out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

class Run
{
public:
  Run(std::string_view id, CheckContext const &ctx) : ctx_(ctx)
  {
    r_.check_id = std::string(id);
    r_.context = ctx;
  }

  bool failed() const { return r_.witness.has_value(); }
  void instance() { ++r_.instances; }

  void fail(CheckContext witness, std::string why)
  {
    if (!r_.witness) {
      r_.witness = std::move(witness);
      r_.reason = std::move(why);
    }
  }

  CheckContext narrow() const { return ctx_; }

  json notes = json::object();

  CheckResult finish(std::string inapplicable_reason)
  {
    if (r_.witness)
      r_.verdict = Verdict::fail;
    else if (r_.instances > 0)
      r_.verdict = Verdict::pass;
    else {
      r_.verdict = Verdict::inapplicable;
      r_.reason = std::move(inapplicable_reason);
    }
    r_.notes = notes.dump();
    return std::move(r_);
  }

  CheckResult skip(std::string why)
  {
    r_.verdict = Verdict::skipped;
    r_.reason = std::move(why);
    r_.witness.reset();
    r_.notes = notes.dump();
    return std::move(r_);
  }

private:
  CheckContext const &ctx_;
  CheckResult r_;
};

std::vector<std::size_t> k_values(CheckContext const &ctx)
{
  if (ctx.k) {
    if (*ctx.k < 1 || *ctx.k > ctx.group.degree())
      throw PreconditionError("k must satisfy 1 <= k <= n");
    return {*ctx.k};
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= ctx.group.degree(); ++k)
    out.push_back(k);
  return out;
}

/// The k-orbits under study with their representatives: the orbit of the
/// context tuple "alpha" if present, else every k-orbit with its least tuple.
std::vector<std::pair<KSet, KTuple>> orbits_under_study(CheckContext const &ctx, std::size_t k,
                                                        Limits const &limits)
{
  std::vector<std::pair<KSet, KTuple>> out;
  if (auto const *a = ctx.tuple("alpha")) {
    if (a->arity() != k)
      throw PreconditionError("tuple alpha has the wrong arity");
    out.emplace_back(orbit_of(ctx.group, *a), *a);
    return out;
  }
  for (auto &x : k_orbits(ctx.group, k, limits)) {
    auto a = x.front();
    out.emplace_back(std::move(x), std::move(a));
  }
  return out;
}

CheckContext with_orbit(CheckContext c, std::size_t k, KTuple const &alpha)
{
  c.k = k;
  c.tuples["alpha"] = alpha;
  return c;
}

bool has_proper_transitive_subgroup(SubgroupEnumeration const &subs, PermGroup &found)
{
  for (auto const &c : subs.classes()) {
    if (c.order() == subs.group().order())
      break;
    auto h = subs.to_group(c);
    if (h.is_transitive()) {
      found = std::move(h);
      return true;
    }
  }
  return false;
}

std::string gens_text(PermGroup const &g)
{
  std::string out = "<";
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    out += (i ? ", " : "") + g.generators()[i].to_cycle_string();
  return out + ">";
}

// ---------------------------------------------------------------- checks

CheckResult check_stab_co(CheckContext const &ctx, CheckEnv &env)
{
  Run run("P_stab_co", ctx);
  auto const &g = ctx.group;
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      auto co = alpha.coordinates();
      if (!is_automorphic_subset(g, co))
        continue;
      run.instance();
      auto m = setwise_stabilizer(g, co);
      std::vector<Permutation> fixing;
      for (auto const &e : m.elements())
        if (left_act(e, alpha) == alpha)
          fixing.push_back(e);
      auto h = PermGroup::from_sorted_elements(g.degree(), {}, std::move(fixing));
      auto xm = orbit_of(m, alpha);
      auto aut = aut_of_kset(xm, g.degree(), env.limits());

      auto why = conclusion::quotient_is_aut(m, h, aut, co);
      if (!why.empty()) {
        run.fail(with_orbit(ctx, k, alpha), why);
        return run.finish({});
      }
    }
  return run.finish("no automorphic tuple");
}

CheckResult check_lkrk(CheckContext const &ctx, CheckEnv &env)
{
  Run run("P_LkRk", ctx);
  auto const &g = ctx.group;
  auto subs = env.subgroups(g);
  std::vector<PermGroup> candidates;
  if (auto const *kk = ctx.subgroup("K"))
    candidates.push_back(*kk);
  else
    for (auto const &m : subs->all())
      candidates.push_back(subs->to_group(m));

  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      XAction act(g, x);
      auto a0 = act.index_of(alpha);
      std::set<std::vector<Index>> seen;
      for (auto const &kgroup : candidates) {
        auto y = act.orbit(members_of(g, kgroup), a0);
        if (!seen.insert(y).second)
          continue;
        auto h = act.stabilizer(y);
        // L = R iff every translate gY is the H-orbit of g a0
        bool equal = true;
        for (std::size_t e = 0; e < g.order() && equal; ++e)
          equal = act.image(e, y) == act.orbit(h, act(e, a0));
        if (!equal)
          continue;
        run.instance();
        std::vector<Permutation> hs;
        for (auto i : h)
          hs.push_back(g.elements()[i]);
        auto hgroup = PermGroup::from_sorted_elements(g.degree(), {}, std::move(hs));
        if (!hgroup.is_normal_in(g)) {
          auto w = with_orbit(ctx, k, alpha);
          w.subgroups["K"] = kgroup;
          run.fail(std::move(w), "L = R but Stab(Y) = " + gens_text(hgroup) + " is not normal");
          return run.finish({});
        }
      }
    }
  return run.finish("no suborbit with L = R");
}

std::vector<PermGroup> normal_subgroups(SubgroupEnumeration const &subs, bool proper)
{
  std::vector<PermGroup> out;
  for (auto const &c : subs.classes())
    if (c.is_normal() && c.order() > 1 && (!proper || c.order() < subs.group().order()))
      out.push_back(subs.to_group(c));
  return out;
}

CheckResult check_prim_normal(CheckContext const &ctx, CheckEnv &env)
{
  Run run("P_prim_normal", ctx);
  auto const &g = ctx.group;
  if (!g.is_transitive() || !is_primitive(g, Convention::paper))
    return run.finish("group is not primitive (non-Abelian primitive required)");
  std::vector<PermGroup> hs;
  if (auto const *h = ctx.subgroup("H")) {
    if (!h->is_normal_in(g) || h->is_trivial())
      return run.finish("H is not a non-trivial normal subgroup");
    hs.push_back(*h);
  } else {
    hs = normal_subgroups(*env.subgroups(g), false);
  }
  for (auto const &h : hs) {
    run.instance();
    if (!h.is_transitive()) {
      auto w = run.narrow();
      w.subgroups["H"] = h;
      run.fail(std::move(w), "normal subgroup " + gens_text(h) + " is intransitive");
      break;
    }
  }
  return run.finish("no non-trivial normal subgroup");
}

bool primitive_without_transitive_subgroup(CheckContext const &ctx, CheckEnv &env,
                                           std::string &reason)
{
  auto const &g = ctx.group;
  if (!g.is_transitive() || !is_primitive(g, Convention::paper)) {
    reason = "group is not primitive (non-Abelian primitive required)";
    return false;
  }
  PermGroup sub;
  if (has_proper_transitive_subgroup(*env.subgroups(g), sub)) {
    reason = "group has the proper transitive subgroup " + gens_text(sub);
    return false;
  }
  return true;
}

CheckResult check_simple(CheckContext const &ctx, CheckEnv &env)
{
  Run run("C_simple", ctx);
  std::string reason;
  if (!primitive_without_transitive_subgroup(ctx, env, reason))
    return run.finish(reason);
  run.instance();
  if (auto h = conclusion::proper_normal_subgroup(*env.subgroups(ctx.group)))
    run.fail(run.narrow(), "proper normal subgroup " + gens_text(*h));
  return run.finish({});
}

/// Pairs (H, A): H proper non-trivial normal in G, A proper in H with
/// N_H(A) = A. A runs over G-class representatives inside H.
template <typename Fn>
void for_each_index_instance(CheckContext const &ctx, CheckEnv &env, Fn &&fn)
{
  auto const &g = ctx.group;
  auto subs = env.subgroups(g);
  std::vector<PermGroup> hs;
  if (auto const *h = ctx.subgroup("H"))
    hs.push_back(*h);
  else
    hs = normal_subgroups(*subs, true);
  for (auto const &h : hs) {
    if (!h.is_normal_in(g) || h.order() == g.order() || h.is_trivial())
      continue;
    std::vector<PermGroup> as;
    if (auto const *a = ctx.subgroup("A"))
      as.push_back(*a);
    else
      for (auto const &c : subs->classes()) {
        auto a = subs->to_group(c);
        if (a.order() < h.order() && a.is_subgroup_of(h))
          as.push_back(std::move(a));
      }
    for (auto const &a : as) {
      if (a.order() >= h.order() || !a.is_subgroup_of(h))
        continue;
      if (normalizer_in(h, a).order() != a.order())
        continue;
      if (!fn(h, a))
        return;
    }
  }
}

CheckResult check_index(CheckContext const &ctx, CheckEnv &env)
{
  Run run("P_index", ctx);
  auto const &g = ctx.group;
  for_each_index_instance(ctx, env, [&](PermGroup const &h, PermGroup const &a) {
    run.instance();
    auto why = conclusion::index_identity(g, h, a);
    if (why.empty())
      return true;
    auto w = run.narrow();
    w.subgroups["H"] = h;
    w.subgroups["A"] = a;
    run.fail(std::move(w), why);
    return false;
  });
  return run.finish("no A < H normal in G with N_H(A) = A");
}

CheckResult check_giso(CheckContext const &ctx, CheckEnv &env)
{
  Run run("P_giso", ctx);
  auto const &g = ctx.group;
  std::vector<std::size_t> found_k;
  for_each_index_instance(ctx, env, [&](PermGroup const &h, PermGroup const &a) {
    run.instance();
    if (auto k = conclusion::g_isomorphic_k(g, a, env.limits())) {
      found_k.push_back(*k);
      return true;
    }
    auto w = run.narrow();
    w.subgroups["H"] = h;
    w.subgroups["A"] = a;
    run.fail(std::move(w), "A has no G-isomorphic k-orbits for any k");
    return false;
  });
  if (!found_k.empty())
    run.notes["least_k"] = found_k;
  return run.finish("no A < H normal in G with N_H(A) = A");
}

CheckResult check_alt_norm(CheckContext const &ctx, CheckEnv &env)
{
  Run run("L_alt_norm", ctx);
  auto const &g = ctx.group;
  bool even = std::all_of(g.generators().begin(), g.generators().end(), [](Permutation const &p) {
    std::size_t transpositions = 0;
    for (auto const &c : p.cycles())
      transpositions += c.size() - 1;
    return transpositions % 2 == 0;
  });
  if (!even)
    return run.finish("group is not contained in A_n");
  run.instance();
  if (!conclusion::normalizer_grows(g, env.limits()))
    run.fail(run.narrow(), "N_{S_n}(G) = G");
  return run.finish({});
}

CheckResult check_no_tr(CheckContext const &ctx, CheckEnv &env)
{
  Run run("C_no_tr", ctx);
  std::string reason;
  if (!primitive_without_transitive_subgroup(ctx, env, reason))
    return run.finish(reason);
  run.instance();
  if (!conclusion::normalizer_grows(ctx.group, env.limits()))
    run.fail(run.narrow(), "N_{S_n}(G) = G");
  return run.finish({});
}

struct AutView
{
  PermGroup aut;
  std::shared_ptr<SubgroupEnumeration const> subs;
};

AutView aut_view(KSet const &x, std::size_t degree, CheckEnv &env)
{
  AutView v;
  v.aut = aut_of_kset(x, degree, env.limits());
  v.subs = env.subgroups(v.aut);
  return v;
}

CheckResult check_equal_classes(CheckContext const &ctx, CheckEnv &env)
{
  Run run("P_equal_classes", ctx);
  auto const n = ctx.group.degree();
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      auto v = aut_view(x, n, env);
      XAction act(v.aut, x);
      bool equal = true;
      for (auto const &c : v.subs->classes()) {
        auto sizes = act.orbit_sizes(c.generators);
        if (std::adjacent_find(sizes.begin(), sizes.end(), std::not_equal_to<>()) !=
            sizes.end()) {
          equal = false;
          break;
        }
      }
      if (!equal)
        continue;
      run.instance();
      if (!conclusion::order_matches(v.aut, x)) {
        run.fail(with_orbit(ctx, k, alpha), "|Aut(X)| = " + std::to_string(v.aut.order()) +
                                              " but |X| = " + std::to_string(x.size()));
        return run.finish({});
      }
    }
  return run.finish("some subgroup of Aut(X) has unequal orbits on every X");
}

CheckResult check_grab(CheckContext const &ctx, CheckEnv &env)
{
  Run run("L_grAB", ctx);
  auto const n = ctx.group.degree();
  std::size_t pairs = 0;
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      auto v = aut_view(x, n, env);
      auto const &table = v.subs->table();
      IndexSet stab(table.size());
      for (std::size_t e = 0; e < table.size(); ++e)
        if (left_act(table.element(static_cast<std::uint32_t>(e)), alpha) == alpha)
          stab.set(e);

      struct Free
      {
        IndexSet members;
        std::vector<std::uint32_t> gens;
      };
      std::vector<Free> free_subgroups;
      auto add = [&](IndexSet const &m) {
        if ((m & stab).count() == 1)
          free_subgroups.push_back({m, table.greedy_generators(m)});
      };
      auto const *ga = ctx.subgroup("A");
      auto const *gb = ctx.subgroup("B");
      if (ga && gb) {
        add(table.members_of(*ga));
        add(table.members_of(*gb));
        if (free_subgroups.size() < 2)
          continue;
      } else {
        for (auto const &m : v.subs->all())
          add(m);
      }

      std::size_t const count = free_subgroups.size();
      std::size_t const here = (ga && gb) ? 1 : count * (count + 1) / 2;
      pairs += here;
      if (pairs > env.limits().max_subgroup_pairs)
        return run.skip("subgroup pair search needs " + std::to_string(pairs) +
                        " pairs (max_subgroup_pairs = " +
                        std::to_string(env.limits().max_subgroup_pairs) +
                        ", raise with --max-subgroup-pairs)");
      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = (ga && gb) ? 1 : i; j < count; ++j) {
          run.instance();
          auto gens = free_subgroups[i].gens;
          gens.insert(gens.end(), free_subgroups[j].gens.begin(), free_subgroups[j].gens.end());
          auto join = table.closure(gens);
          if (!conclusion::acts_freely_on(table.to_group(join), alpha)) {
            auto w = with_orbit(ctx, k, alpha);
            w.subgroups["A"] = table.to_group(free_subgroups[i].members);
            w.subgroups["B"] = table.to_group(free_subgroups[j].members);
            auto orbit = join.count() / (join & stab).count();
            run.fail(std::move(w), "|T| = " + std::to_string(orbit) + " but |gr(A,B)| = " +
                                     std::to_string(join.count()));
            return run.finish({});
          }
          if (ga && gb)
            break;
        }
    }
  return run.finish("no pair of subgroups acting freely on a tuple");
}

CheckResult check_capcup(CheckContext const &ctx, CheckEnv &env)
{
  Run run("P_capcup", ctx);
  auto const &g = ctx.group;
  auto subs = env.subgroups(g);
  auto const &table = subs->table();
  auto const gens = table.generators_of(g);
  std::size_t pairs = 0;

  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      XAction act(g, x);
      auto const a0 = act.index_of(alpha);
      auto const size = act.size();
      IndexSet point_stab(g.order());
      for (std::size_t e = 0; e < g.order(); ++e)
        if (act(e, a0) == a0)
          point_stab.set(e);

      // blocks through a0 correspond to overgroups of the tuple stabilizer
      std::vector<IndexSet> overgroups;
      for (auto name : {"HY", "HZ"})
        if (auto const *h = ctx.subgroup(name))
          overgroups.push_back(table.members_of(*h));
      bool const narrowed = overgroups.size() == 2;
      if (!narrowed) {
        overgroups.clear();
        for (auto const &m : subs->all())
          if (point_stab.is_subset_of(m))
            overgroups.push_back(m);
      }
      std::size_t const count = overgroups.size();
      pairs += narrowed ? 1 : count * (count + 1) / 2;
      if (pairs > env.limits().max_subgroup_pairs)
        return run.skip("block system pairs: " + std::to_string(pairs) +
                        " (max_subgroup_pairs = " +
                        std::to_string(env.limits().max_subgroup_pairs) +
                        ", raise with --max-subgroup-pairs)");

      auto stab_set = [&](std::vector<Index> const &c) {
        IndexSet out(g.order());
        for (auto e : act.stabilizer(c))
          out.set(e);
        return out;
      };

      struct System
      {
        std::vector<Index> block; ///< the block through a0
        std::vector<std::size_t> label;
        std::size_t blocks = 0;
        IndexSet stab;
      };
      std::vector<System> systems(count);
      for (std::size_t i = 0; i < count; ++i) {
        auto &s = systems[i];
        s.block = act.orbit(overgroups[i].indices(), a0);
        s.label.assign(size, SIZE_MAX);
        for (std::size_t e = 0; e < g.order(); ++e) {
          auto img = act.image(e, s.block);
          if (s.label[img.front()] != SIZE_MAX)
            continue;
          for (auto t : img)
            s.label[t] = s.blocks;
          ++s.blocks;
        }
        s.stab = stab_set(s.block);
      }

      auto class_of = [&](std::vector<std::size_t> const &label, std::size_t l) {
        std::vector<Index> out;
        for (Index t = 0; t < size; ++t)
          if (label[t] == l)
            out.push_back(t);
        return out;
      };
      // The partition is G-invariant and its class through a0 is a suborbit,
      // so it is the system G C0 of isomorphic suborbits.
      auto is_suborbit_system = [&](std::vector<std::size_t> const &label) {
        for (auto e : gens) {
          std::vector<std::size_t> image_label(size, SIZE_MAX);
          for (Index t = 0; t < size; ++t) {
            auto &il = image_label[label[t]];
            auto l = label[act(e, t)];
            if (il == SIZE_MAX)
              il = l;
            else if (il != l)
              return false;
          }
        }
        auto c0 = class_of(label, label[a0]);
        return act.orbit(act.stabilizer(c0), a0) == c0;
      };

      for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = narrowed ? 1 : i; j < count; ++j) {
          auto const &sy = systems[i];
          auto const &sz = systems[j];
          auto witness = [&](KTuple const &beta) {
            auto w = with_orbit(ctx, k, alpha);
            w.subgroups["HY"] = table.to_group(overgroups[i]);
            w.subgroups["HZ"] = table.to_group(overgroups[j]);
            w.tuples["beta"] = beta;
            return w;
          };

          std::vector<std::size_t> meet(size), join(size);
          std::vector<std::size_t> meet_id(sy.blocks * sz.blocks, SIZE_MAX);
          std::size_t meet_classes = 0;
          detail::UnionFind uf(sy.blocks + sz.blocks);
          for (Index t = 0; t < size; ++t) {
            auto &id = meet_id[sy.label[t] * sz.blocks + sz.label[t]];
            if (id == SIZE_MAX)
              id = meet_classes++;
            meet[t] = id;
            uf.unite(sy.label[t], sy.blocks + sz.label[t]);
          }
          for (Index t = 0; t < size; ++t)
            join[t] = uf.find(sy.label[t]);

          if (!is_suborbit_system(meet) || !is_suborbit_system(join)) {
            run.instance();
            run.fail(witness(alpha), "meet or join is not a system of isomorphic suborbits");
            return run.finish({});
          }

          auto const &y = sy.block;
          auto u = class_of(join, join[a0]);
          std::vector<std::uint32_t> join_gens = table.greedy_generators(sy.stab);
          std::set<std::size_t> z_labels;
          if (auto const *beta = ctx.tuple("beta"); beta && narrowed)
            z_labels.insert(sz.label[act.index_of(*beta)]);
          else
            for (auto t : y)
              z_labels.insert(sz.label[t]);
          for (auto zl : z_labels) {
            auto z = class_of(sz.label, zl);
            std::vector<Index> t_set;
            std::set_intersection(y.begin(), y.end(), z.begin(), z.end(),
                                  std::back_inserter(t_set));
            if (t_set.empty())
              continue;
            run.instance();
            auto const &beta = x.tuples()[z.front()];
            auto stab_z = stab_set(z);
            auto gens_u = join_gens;
            auto gz = table.greedy_generators(stab_z);
            gens_u.insert(gens_u.end(), gz.begin(), gz.end());

            std::string why;
            if (!std::includes(u.begin(), u.end(), z.begin(), z.end()))
              why = "the join class of Y does not contain Z";
            else if (class_of(meet, meet[t_set.front()]) != t_set)
              why = "meet is not GT";
            else if (!(stab_set(t_set) == (sy.stab & stab_z)))
              why = "Stab(T) != Stab(Y) & Stab(Z)";
            else if (!(stab_set(u) == table.closure(gens_u)))
              why = "Stab(U) != gr(Stab(Y), Stab(Z))";
            if (!why.empty()) {
              run.fail(witness(beta), why);
              return run.finish({});
            }
          }
          if (narrowed)
            break;
        }
    }
  return run.finish("no pair of block systems");
}

/// Every suborbit A a0 (A <= Aut(X)) is a block of Aut(X) on X. Returns the
/// first subgroup violating it, if any.
std::optional<PermGroup> lh_violation(AutView const &v, XAction const &act, Index a0,
                                      PermGroup const *only)
{
  auto const &table = v.subs->table();
  std::set<std::vector<Index>> seen;
  auto test = [&](IndexSet const &m) -> bool {
    auto y = act.orbit(m.indices(), a0);
    if (!seen.insert(y).second)
      return true;
    return act.is_block(y, a0);
  };
  if (only) {
    auto m = table.members_of(*only);
    if (!test(m))
      return table.to_group(m);
    return std::nullopt;
  }
  for (auto const &m : v.subs->all())
    if (!test(m))
      return table.to_group(m);
  return std::nullopt;
}

CheckResult check_h_order(CheckContext const &ctx, CheckEnv &env)
{
  Run run("L_H_order", ctx);
  auto const n = ctx.group.degree();
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      auto v = aut_view(x, n, env);
      XAction act(v.aut, x);
      auto a0 = act.index_of(alpha);
      if (lh_violation(v, act, a0, nullptr))
        continue;
      run.instance();
      if (!conclusion::has_regular_normal_subgroup(*v.subs, x)) {
        run.fail(with_orbit(ctx, k, alpha),
                 "Aut(X) has no transitive normal subgroup of order " + std::to_string(x.size()));
        return run.finish({});
      }
    }
  return run.finish("some suborbit of Aut(X) gives a covering for every X");
}

CheckResult check_incoherent(CheckContext const &ctx, CheckEnv &env)
{
  Run run("P_incoherent", ctx);
  auto const n = ctx.group.degree();
  std::size_t two_block = 0, square = 0;
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      auto verdict = classify_coherence(ctx.group, x);
      if (verdict.kind != Coherence::incoherent)
        continue;
      run.instance();
      auto aut = aut_of_kset(x, n, env.limits());
      auto blocks = k_block_partition(x);
      if (blocks.size() == 2) {
        ++two_block;
        KSet y(k, blocks[0]);
        square += stab_of_ksuborbit(aut, y).group.order() == y.size() * y.size();
      }
      if (conclusion::order_matches(aut, x)) {
        run.fail(with_orbit(ctx, k, alpha), "|Aut(X)| = |X| = " + std::to_string(x.size()));
        break;
      }
    }
  run.notes["two_block_orbits"] = two_block;
  run.notes["two_block_stab_is_square"] = square;
  return run.finish("no incoherent k-orbit");
}

CheckResult check_triv_norm(CheckContext const &ctx, CheckEnv &env)
{
  Run run("P_triv_norm", ctx);
  auto const n = ctx.group.degree();
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      auto v = aut_view(x, n, env);
      XAction act(v.aut, x);
      std::optional<PermGroup> self_normalizing;
      if (auto const *a = ctx.subgroup("A")) {
        if (a->order() < v.aut.order() && a->is_subgroup_of(v.aut) &&
            normalizer_in(v.aut, *a).order() == a->order())
          self_normalizing = *a;
      } else {
        for (auto const &c : v.subs->classes())
          if (c.order() < v.aut.order() && c.normalizer == c.members) {
            self_normalizing = v.subs->to_group(c);
            break;
          }
      }
      if (!self_normalizing || lh_violation(v, act, act.index_of(alpha), nullptr))
        continue;
      run.instance();
      if (!conclusion::order_matches(v.aut, x)) {
        auto w = with_orbit(ctx, k, alpha);
        w.subgroups["A"] = *self_normalizing;
        run.fail(std::move(w), "|Aut(X)| = " + std::to_string(v.aut.order()) +
                                 " but |X| = " + std::to_string(x.size()));
        return run.finish({});
      }
    }
  return run.finish("no k-orbit meets the hypotheses");
}

CheckResult check_coherent(CheckContext const &ctx, CheckEnv &env)
{
  Run run("T_coherent", ctx);
  auto const n = ctx.group.degree();
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      auto verdict = classify_coherence(ctx.group, x);
      if (verdict.kind == Coherence::incoherent || verdict.trivial)
        continue;
      auto v = aut_view(x, n, env);
      XAction act(v.aut, x);
      if (lh_violation(v, act, act.index_of(alpha), nullptr))
        continue;
      run.instance();
      if (!conclusion::order_matches(v.aut, x)) {
        run.fail(with_orbit(ctx, k, alpha), "|Aut(X)| = " + std::to_string(v.aut.order()) +
                                              " but |X| = " + std::to_string(x.size()));
        return run.finish({});
      }
    }
  return run.finish("no coherent k-orbit meets the hypotheses");
}

CheckResult check_elcoh_part(CheckContext const &ctx, CheckEnv &env)
{
  Run run("L_elcoh_part", ctx);
  auto const n = ctx.group.degree();
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      if (classify_coherence(ctx.group, x).kind != Coherence::elementary_coherent)
        continue;
      run.instance();
      auto v = aut_view(x, n, env);
      XAction act(v.aut, x);
      if (auto bad = lh_violation(v, act, act.index_of(alpha), ctx.subgroup("A"))) {
        auto w = with_orbit(ctx, k, alpha);
        w.subgroups["A"] = *bad;
        run.fail(std::move(w), "Aut(X)Y is not a partition for Y = A alpha");
        return run.finish({});
      }
    }
  return run.finish("no elementary coherent k-orbit");
}

CheckResult check_elcoh(CheckContext const &ctx, CheckEnv &env)
{
  Run run("T_elcoh", ctx);
  auto const n = ctx.group.degree();
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      if (classify_coherence(ctx.group, x).kind != Coherence::elementary_coherent)
        continue;
      run.instance();
      auto aut = aut_of_kset(x, n, env.limits());
      if (!conclusion::order_matches(aut, x)) {
        run.fail(with_orbit(ctx, k, alpha), "|Aut(X)| = " + std::to_string(aut.order()) +
                                              " but |X| = " + std::to_string(x.size()));
        return run.finish({});
      }
    }
  return run.finish("no elementary coherent k-orbit");
}

CheckResult check_block_aut(CheckContext const &ctx, CheckEnv &env)
{
  Run run("L_block_aut", ctx);
  auto const n = ctx.group.degree();
  for (auto k : k_values(ctx))
    for (auto const &[x, alpha] : orbits_under_study(ctx, k, env.limits())) {
      // Co sets of one orbit are translates, so one tuple decides
      if (!is_automorphic_subset(ctx.group, alpha.coordinates()))
        continue;
      for (auto const &b : k_blocks(x, n, env.limits())) {
        run.instance();
        if (!b.aut_transitive) {
          run.fail(with_orbit(ctx, k, alpha),
                   "Aut(Y) is intransitive on Co(Y) for the block of " +
                     b.tuples.front().to_string());
          return run.finish({});
        }
      }
    }
  return run.finish("no k-rorbit");
}

CheckResult check_proof_elcoh(CheckContext const &ctx, CheckEnv &env)
{
  Run run("L_proof_elcoh", ctx);
  std::string reason;
  if (!primitive_without_transitive_subgroup(ctx, env, reason))
    return run.finish(reason);
  auto audit = proof_audit(ctx.group, env.limits(), AuditMode::record);
  for (auto const &v : audit.variants) {
    if (v.name != "degree")
      continue;
    for (auto const &f : v.partitions) {
      if (!f.n_isomorphic)
        continue;
      run.instance();
      if (!f.elementary_coherent) {
        run.fail(run.narrow(), "projections on " + format_points(f.q) +
                                 " are not all elementary coherent");
        break;
      }
    }
  }
  return run.finish("no partition into N-isomorphic suborbits was found");
}

using CheckFn = CheckResult (*)(CheckContext const &, CheckEnv &);

CheckFn check_fn(std::string_view id)
{
  static std::map<std::string, CheckFn, std::less<>> const fns = {
    {"P_stab_co", check_stab_co},         {"P_LkRk", check_lkrk},
    {"P_prim_normal", check_prim_normal}, {"C_simple", check_simple},
    {"P_index", check_index},             {"P_giso", check_giso},
    {"L_alt_norm", check_alt_norm},       {"C_no_tr", check_no_tr},
    {"P_equal_classes", check_equal_classes}, {"L_grAB", check_grab},
    {"P_capcup", check_capcup},           {"L_H_order", check_h_order},
    {"P_incoherent", check_incoherent},   {"P_triv_norm", check_triv_norm},
    {"T_coherent", check_coherent},       {"L_elcoh_part", check_elcoh_part},
    {"T_elcoh", check_elcoh},             {"L_block_aut", check_block_aut},
    {"L_proof_elcoh", check_proof_elcoh},
  };
  auto it = fns.find(id);
  if (it == fns.end())
    throw PreconditionError("unknown check id " + std::string(id));
  return it->second;
}

} // namespace

CheckResult run_check(std::string_view check_id, CheckContext const &context, CheckEnv &env)
{
  auto fn = check_fn(check_id);
  if (context.group.degree() == 0)
    throw PreconditionError("check context has no group");
  for (auto const &[name, h] : context.subgroups)
    if (h.degree() != context.group.degree() ||
        (name != "A" && name != "B" && !h.is_subgroup_of(context.group)))
      throw PreconditionError("context subgroup " + name + " is not a subgroup of the group");
  for (auto const &[name, t] : context.tuples)
    if (!t.points().empty() && t.max_point() >= context.group.degree())
      throw PreconditionError("context tuple " + name + " uses points beyond the degree");
  return fn(context, env);
}

std::size_t SuiteReport::count(Verdict v) const
{
  return static_cast<std::size_t>(
    std::count_if(results.begin(), results.end(), [&](auto const &r) { return r.verdict == v; }));
}

SuiteReport run_suite(GroupCatalog const &catalog, SuiteOptions const &options,
                      Limits const &limits)
{
  std::vector<CheckInfo> checks;
  if (options.check_ids.empty())
    checks = check_registry();
  else
    for (auto const &id : options.check_ids)
      checks.push_back(check_info(id));

  struct Task
  {
    std::size_t entry;
    CheckInfo const *check;
    std::optional<std::size_t> k;
  };
  std::vector<Task> tasks;
  for (std::size_t e = 0; e < catalog.entries.size(); ++e) {
    auto const n = catalog.entries[e].group.degree();
    for (auto const &c : checks) {
      if (!c.uses_k) {
        tasks.push_back({e, &c, std::nullopt});
        continue;
      }
      std::size_t lo = 1, hi = n;
      if (options.k_range) {
        lo = std::max(lo, options.k_range->first);
        hi = std::min(hi, options.k_range->second);
      }
      for (auto k = lo; k <= hi; ++k)
        tasks.push_back({e, &c, k});
    }
  }

  CheckEnv env(limits);
  SuiteReport report;
  report.results.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      auto const &t = tasks[i];
      auto const &entry = catalog.entries[t.entry];
      CheckContext ctx;
      ctx.group_id = entry.id;
      ctx.group = entry.group;
      ctx.k = t.k;
      try {
        report.results[i] = run_check(t.check->id, ctx, env);
      } catch (ResourceLimitError const &e) {
        CheckResult r;
        r.check_id = t.check->id;
        r.context = ctx;
        r.verdict = Verdict::skipped;
        r.reason = e.what();
        report.results[i] = std::move(r);
      }
    }
  };
  std::size_t const jobs = std::max<std::size_t>(1, options.jobs);
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j)
    pool.emplace_back(worker);
  worker();
  for (auto &th : pool)
    th.join();
  return report;
}

namespace
{

json perm_list(std::vector<Permutation> const &ps)
{
  json out = json::array();
  for (auto const &p : ps)
    out.push_back(p.to_cycle_string());
  return out;
}

json context_json(CheckContext const &c, bool full)
{
  json j;
  if (full)
    j["group"] = {{"id", c.group_id},
                  {"degree", c.group.degree()},
                  {"generators", perm_list(c.group.generators())}};
  else
    j["group"] = c.group_id;
  j["k"] = c.k ? json(*c.k) : json(nullptr);
  if (!c.subgroups.empty()) {
    json s = json::object();
    for (auto const &[name, h] : c.subgroups)
      s[name] = perm_list(h.generators());
    j["subgroups"] = s;
  }
  if (!c.tuples.empty()) {
    json t = json::object();
    for (auto const &[name, tup] : c.tuples) {
      json pts = json::array();
      for (auto p : tup.points())
        pts.push_back(p + 1);
      t[name] = pts;
    }
    j["tuples"] = t;
  }
  return j;
}

PermGroup group_of(json const &gens, std::size_t n, Limits const &limits)
{
  std::vector<Permutation> ps;
  for (auto const &s : gens)
    ps.push_back(parse_permutation(s.get<std::string>(), n));
  return close_group(std::move(ps), n, limits);
}

CheckContext context_of(json const &j, Limits const &limits)
{
  CheckContext c;
  auto const &g = j.at("group");
  c.group_id = g.at("id").get<std::string>();
  auto n = g.at("degree").get<std::size_t>();
  if (n < 1 || n > kMaxDegree)
    throw ParseError("group degree out of range");
  c.group = group_of(g.at("generators"), n, limits);
  if (!j.at("k").is_null())
    c.k = j.at("k").get<std::size_t>();
  if (j.contains("subgroups"))
    for (auto const &[name, gens] : j.at("subgroups").items())
      c.subgroups[name] = group_of(gens, n, limits);
  if (j.contains("tuples"))
    for (auto const &[name, pts] : j.at("tuples").items()) {
      std::vector<Point> v;
      for (auto const &p : pts) {
        auto x = p.get<long long>();
        if (x < 1 || x > static_cast<long long>(n))
          throw ParseError("tuple point out of range");
        v.push_back(static_cast<Point>(x - 1));
      }
      try {
        c.tuples[name] = KTuple(std::move(v));
      } catch (PreconditionError const &e) {
        throw ParseError(e.what());
      }
    }
  return c;
}

} // namespace

std::string context_to_json(CheckContext const &c) { return context_json(c, true).dump(); }

CheckContext context_from_json(std::string_view text, Limits const &limits)
{
  try {
    return context_of(json::parse(text), limits);
  } catch (json::exception const &e) {
    throw ParseError(std::string("malformed context: ") + e.what());
  }
}

std::string witness_to_json(CheckResult const &r)
{
  if (!r.witness)
    throw PreconditionError("check result has no witness");
  json j{{"check_id", r.check_id},
         {"context", context_json(*r.witness, true)},
         {"reason", r.reason}};
  return j.dump(1) + "\n";
}

CheckResult replay_witness(std::string_view text, CheckEnv &env)
{
  json j;
  try {
    j = json::parse(text);
    auto ctx = context_of(j.at("context"), env.limits());
    return run_check(j.at("check_id").get<std::string>(), ctx, env);
  } catch (json::exception const &e) {
    throw ParseError(std::string("malformed witness: ") + e.what());
  }
}

std::string witness_name(CheckResult const &r)
{
  std::string name = "witnesses/" + r.check_id + "__" + r.context.group_id;
  if (r.context.k)
    name += "__k" + std::to_string(*r.context.k);
  return name + ".json";
}

std::string report_jsonl(SuiteReport const &r)
{
  std::string out;
  for (auto const &res : r.results) {
    json j{{"check_id", res.check_id},
           {"context", context_json(res.context, false)},
           {"verdict", to_string(res.verdict)},
           {"reason", res.reason},
           {"instances", res.instances},
           {"notes", json::parse(res.notes)}};
    j["witness_ref"] = res.witness ? json(witness_name(res)) : json(nullptr);
    out += j.dump() + "\n";
  }
  return out;
}

std::string report_summary(SuiteReport const &r)
{
  std::map<std::string, std::array<std::size_t, 4>> tally;
  for (auto const &c : check_registry())
    tally[c.id];
  for (auto const &res : r.results)
    ++tally[res.check_id][static_cast<std::size_t>(res.verdict)];

  char line[160];
  std::string out;
  std::snprintf(line, sizeof line, "%-16s %8s %8s %13s %8s\n", "check", "pass", "fail",
                "inapplicable", "skipped");
  out += line;
  for (auto const &c : check_registry()) {
    auto const &t = tally[c.id];
    if (t[0] + t[1] + t[2] + t[3] == 0)
      continue;
    std::snprintf(line, sizeof line, "%-16s %8zu %8zu %13zu %8zu\n", c.id.c_str(), t[0], t[1],
                  t[2], t[3]);
    out += line;
  }
  std::snprintf(line, sizeof line, "%-16s %8zu %8zu %13zu %8zu\n", "total", r.count(Verdict::pass),
                r.count(Verdict::fail), r.count(Verdict::inapplicable),
                r.count(Verdict::skipped));
  out += line;
  return out;
}

void write_report(SuiteReport const &r, std::string const &dir)
{
  namespace fs = std::filesystem;
  fs::create_directories(fs::path(dir) / "witnesses");
  write_text_file((fs::path(dir) / "report.jsonl").string(), report_jsonl(r));
  write_text_file((fs::path(dir) / "summary.txt").string(), report_summary(r));
  for (auto const &res : r.results)
    if (res.witness)
      write_text_file((fs::path(dir) / witness_name(res)).string(), witness_to_json(res));
}


namespace conclusion
{

bool order_matches(PermGroup const &aut, KSet const &x) { return aut.order() == x.size(); }

bool acts_freely_on(PermGroup const &g, KTuple const &a)
{
  return std::none_of(g.elements().begin() + 1, g.elements().end(),
                      [&](Permutation const &e) { return left_act(e, a) == a; });
}

std::string quotient_is_aut(PermGroup const &m, PermGroup const &h, PermGroup const &aut,
                            std::vector<Point> const &co)
{
  if (!h.is_normal_in(m))
    return "pointwise stabilizer is not normal";
  if (m.order() / h.order() != aut.order())
    return "|M/H| = " + std::to_string(m.order() / h.order()) +
           " but |Aut(X)| = " + std::to_string(aut.order());
  std::set<Permutation> restricted;
  for (auto const &e : m.elements()) {
    std::vector<Point> img(m.degree());
    for (std::size_t p = 0; p < img.size(); ++p)
      img[p] = static_cast<Point>(p);
    for (auto p : co)
      img[p] = e[p];
    restricted.emplace(img);
  }
  if (restricted != std::set<Permutation>(aut.elements().begin(), aut.elements().end()))
    return "the action of M on Co(a) is not Aut(X)";
  return {};
}

std::string index_identity(PermGroup const &g, PermGroup const &h, PermGroup const &a)
{
  auto n = normalizer_in(g, a);
  if (n.order() == a.order())
    return "N_G(A) = A";
  if (g.order() * a.order() != h.order() * n.order())
    return "|G|/|H| = " + std::to_string(g.order() / h.order()) +
           " but |N_G(A)|/|A| = " + std::to_string(n.order() / a.order());
  return {};
}

std::optional<std::size_t> g_isomorphic_k(PermGroup const &g, PermGroup const &a,
                                          Limits const &limits)
{
  for (std::size_t k = 1; k <= g.degree(); ++k) {
    auto orbits = k_orbits(a, k, limits);
    std::set<KSet> orbit_set(orbits.begin(), orbits.end());
    for (auto const &e : g.elements()) {
      if (a.contains(e))
        continue;
      for (auto const &z : orbits) {
        auto gz = left_act(e, z);
        if (gz != z && orbit_set.count(gz))
          return k;
      }
    }
  }
  return std::nullopt;
}

bool normalizer_grows(PermGroup const &g, Limits const &limits)
{
  return normalizer_in_sym(g, limits).order() != g.order();
}

std::optional<PermGroup> proper_normal_subgroup(SubgroupEnumeration const &subs)
{
  for (auto const &c : subs.classes())
    if (c.is_normal() && c.order() > 1 && c.order() < subs.group().order())
      return subs.to_group(c);
  return std::nullopt;
}

bool is_block(PermGroup const &aut, KSet const &x, KSet const &y)
{
  if (y.empty() || !y.is_subset_of(x))
    throw PreconditionError("block candidate must be a non-empty subset of X");
  for (auto const &e : aut.elements()) {
    auto img = left_act(e, y);
    if (img != y && img.intersects(y))
      return false;
  }
  return true;
}

bool has_regular_normal_subgroup(SubgroupEnumeration const &aut_subs, KSet const &x)
{
  for (auto const &c : aut_subs.classes()) {
    if (!c.is_normal() || c.order() != x.size())
      continue;
    std::set<KTuple> reached;
    for (auto i : c.members.indices())
      reached.insert(left_act(aut_subs.table().element(i), x.front()));
    if (reached.size() == x.size())
      return true;
  }
  return false;
}

bool meet_stabilizer_identity(PermGroup const &g, KSet const &y, KSet const &z)
{
  auto sy = stab_of_ksuborbit(g, y).group;
  auto sz = stab_of_ksuborbit(g, z).group;
  auto st = stab_of_ksuborbit(g, y.intersection(z)).group;
  std::vector<Permutation> both;
  std::set_intersection(sy.elements().begin(), sy.elements().end(), sz.elements().begin(),
                        sz.elements().end(), std::back_inserter(both));
  return st.elements() == both;
}

bool join_stabilizer_identity(PermGroup const &g, KSet const &y, KSet const &z, KSet const &u)
{
  auto gens = stab_of_ksuborbit(g, y).group.elements();
  auto sz = stab_of_ksuborbit(g, z).group.elements();
  gens.insert(gens.end(), sz.begin(), sz.end());
  return close_group(std::move(gens), g.degree()) == stab_of_ksuborbit(g, u).group;
}

} // namespace conclusion

} // namespace korbit
