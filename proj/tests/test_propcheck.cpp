#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "korbit/coherence.hpp"
#include "korbit/errors.hpp"
#include "korbit/propcheck.hpp"

using namespace korbit;
using namespace testing;

namespace
{

CheckContext ctx_of(std::string id, PermGroup g, std::optional<std::size_t> k = std::nullopt)
{
  CheckContext c;
  c.group_id = std::move(id);
  c.group = std::move(g);
  c.k = k;
  return c;
}

std::set<oracle::Perm> oracle_normalizer(std::set<oracle::Perm> const &g,
                                         std::set<oracle::Perm> const &a)
{
  std::set<oracle::Perm> out;
  for (auto const &x : g)
    if (oracle::conjugate(a, x) == a)
      out.insert(x);
  return out;
}

/// |{s in Sym(n) : sX = X}| by scanning every permutation of the support.
std::size_t oracle_aut_order(KSet const &x, int n)
{
  auto tuples = oracle_tuples(x);
  std::size_t count = 0;
  for (auto const &s : oracle::all_perms(n)) {
    bool ok = true;
    for (auto const &t : tuples) {
      oracle::Tuple u;
      for (int p : t)
        u.push_back(s[p]);
      if (!tuples.count(u)) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  // permutations of points outside the support are not part of Aut(X)
  std::size_t outside = 1;
  for (int i = 2; i <= n - static_cast<int>(x.support().size()); ++i)
    outside *= i;
  return count / outside;
}

} // namespace

TEST_CASE("registry")
{
  CHECK(check_registry().size() == 19);
  CHECK(check_info("P_capcup").uses_k);
  CHECK_FALSE(check_info("P_index").uses_k);
  CHECK_THROWS_AS(check_info("nope"), PreconditionError);
  CheckEnv env;
  CHECK_THROWS_AS(run_check("nope", ctx_of("x", symmetric_group(3)), env), PreconditionError);
  CHECK_THROWS_AS(run_check("P_capcup", ctx_of("x", symmetric_group(3), 4), env),
                  PreconditionError);
}

TEST_CASE("examples")
{
  CheckEnv env;
  auto c = ctx_of("S4", symmetric_group(4));
  c.subgroups["H"] = alternating_group(4);
  c.subgroups["A"] = G(4, {"(1 2 3)"});
  auto r = run_check("P_index", c, env);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.instances == 1);
  // the ratios by direct normalizer computation: |S4|/|A4| = 2 = |N(A)|/|A|
  auto na = oracle_normalizer(oracle_elements(symmetric_group(4)),
                              oracle_elements(G(4, {"(1 2 3)"})));
  CHECK(na.size() == 6);

  CHECK(run_check("P_prim_normal", ctx_of("C5", G(5, {"(1 2 3 4 5)"})), env).verdict ==
        Verdict::inapplicable);

  auto lkrk = run_check("P_LkRk", ctx_of("C4", G(4, {"(1 2 3 4)"})), env);
  CHECK(lkrk.verdict == Verdict::pass);
  CHECK(lkrk.instances > 0);

  CHECK(run_suite(GroupCatalog{}, {}).results.empty());
}

TEST_CASE("conclusion predicates on known-true and known-false fixtures")
{
  using namespace conclusion;
  auto s3 = symmetric_group(3);
  auto c3 = G(3, {"(1 2 3)"});

  // |Aut(X)| = |X|
  auto x_points = orbit_of(c3, T("1"));
  auto x_cyc = orbit_of(c3, T("123"));
  CHECK(order_matches(aut_of_kset(x_cyc, 3), x_cyc));
  CHECK_FALSE(order_matches(aut_of_kset(x_points, 3), x_points));

  CHECK(acts_freely_on(c3, T("1")));
  CHECK_FALSE(acts_freely_on(s3, T("1")));

  auto m = G(3, {"(1 2)"});
  auto trivial = G(3, {});
  std::vector<Point> co{0, 1};
  CHECK(quotient_is_aut(m, trivial, G(3, {"(1 2)"}), co).empty());
  CHECK_FALSE(quotient_is_aut(m, m, G(3, {"(1 2)"}), co).empty());
  CHECK_FALSE(quotient_is_aut(s3, trivial, G(3, {"(1 2)"}), co).empty());

  CHECK(index_identity(symmetric_group(4), alternating_group(4), G(4, {"(1 2 3)"})).empty());
  // A self-normalizing in G as well
  CHECK(index_identity(s3, s3, G(3, {"(1 2)"})) == "N_G(A) = A");

  auto s4 = symmetric_group(4);
  auto a = G(4, {"(1 2 3)"});
  auto k = g_isomorphic_k(s4, a);
  REQUIRE(k);
  // least k by the orbit oracle
  std::size_t expected = 0;
  auto ga = oracle_elements(a);
  for (int kk = 1; kk <= 4 && !expected; ++kk) {
    auto orbits = oracle::tuple_orbits(ga, 4, kk);
    for (auto const &e : oracle_elements(s4)) {
      if (ga.count(e))
        continue;
      for (auto const &z : orbits) {
        std::set<oracle::Tuple> gz;
        for (auto const &t : z) {
          oracle::Tuple u;
          for (int p : t)
            u.push_back(e[p]);
          gz.insert(u);
        }
        if (gz != z && orbits.count(gz))
          expected = kk;
      }
    }
  }
  CHECK(*k == expected);
  CHECK_FALSE(g_isomorphic_k(c3, c3).has_value());

  CHECK(normalizer_grows(c3));
  CHECK_FALSE(normalizer_grows(s3));

  CHECK(proper_normal_subgroup(SubgroupEnumeration(s4)).has_value());
  CHECK_FALSE(proper_normal_subgroup(SubgroupEnumeration(G(5, {"(1 2 3 4 5)"}))).has_value());
  CHECK_FALSE(proper_normal_subgroup(SubgroupEnumeration(alternating_group(5))).has_value());

  auto c4 = G(4, {"(1 2 3 4)"});
  auto x4 = orbit_of(c4, T("1"));
  CHECK(is_block(c4, x4, KS({"1", "3"})));
  CHECK_FALSE(is_block(c4, x4, KS({"1", "2"})));
  CHECK_THROWS_AS(is_block(c4, x4, KSet(1, {})), PreconditionError);

  CHECK(has_regular_normal_subgroup(SubgroupEnumeration(s3), x_points));
  CHECK(has_regular_normal_subgroup(SubgroupEnumeration(s4), orbit_of(s4, T("1"))));
  CHECK_FALSE(
    has_regular_normal_subgroup(SubgroupEnumeration(symmetric_group(5)), orbit_of(symmetric_group(5), T("1"))));

  CHECK(meet_stabilizer_identity(c4, KS({"1", "3"}), KS({"1", "3"})));
  CHECK_FALSE(meet_stabilizer_identity(s3, KS({"1", "2"}), KS({"1", "3"})));
  CHECK(join_stabilizer_identity(c4, KS({"1", "3"}), KS({"1", "3"}), KS({"1", "3"})));
  CHECK_FALSE(join_stabilizer_identity(s4, KS({"1", "2"}), KS({"3", "4"}),
                                       KS({"1", "2", "3", "4"})));

  // predicates reused from the library
  CHECK(alternating_group(4).is_normal_in(s4));
  CHECK_FALSE(G(4, {"(1 2)"}).is_normal_in(s4));
  CHECK(G(4, {"(1 2)(3 4)", "(1 3)(2 4)"}).is_transitive());
  CHECK_FALSE(G(4, {"(1 2)(3 4)"}).is_transitive());
  CHECK(k_blocks(KS({"12", "21"}), 2).front().aut_transitive);
  CHECK_FALSE(k_blocks(KS({"12"}), 2).front().aut_transitive);
}

TEST_CASE("P_capcup agrees with a direct block computation")
{
  // every block through alpha found by subset search, every pair checked
  // against the set-level stabilizer predicates
  CheckEnv env;
  for (auto const &g : {G(4, {"(1 2 3 4)"}), G(4, {"(1 2 3 4)", "(1 3)"}),
                        G(4, {"(1 2)(3 4)", "(1 3)(2 4)"}), symmetric_group(3),
                        G(6, {"(1 2 3 4 5 6)"})}) {
    for (std::size_t k = 1; k <= std::min<std::size_t>(g.degree(), 2); ++k)
      for (auto const &x : k_orbits(g, k)) {
        if (x.size() > 12)
          continue;
        auto const &tuples = x.tuples();
        std::vector<KSet> blocks;
        for (std::uint32_t mask = 0; mask < (1u << tuples.size()); ++mask) {
          if (!(mask & 1))
            continue;
          std::vector<KTuple> ys;
          for (std::size_t i = 0; i < tuples.size(); ++i)
            if (mask >> i & 1)
              ys.push_back(tuples[i]);
          KSet y(k, ys);
          if (conclusion::is_block(g, x, y))
            blocks.push_back(y);
        }
        for (auto const &y : blocks)
          for (auto const &z : blocks) {
            CHECK(conclusion::meet_stabilizer_identity(g, y, z));
            // the join block through alpha: close Y and Z under their translates
            std::set<KTuple> u(y.begin(), y.end());
            for (bool grew = true; grew;) {
              grew = false;
              for (auto const &e : g.elements())
                for (auto const &b : {y, z}) {
                  auto img = left_act(e, b);
                  bool meets = std::any_of(img.begin(), img.end(),
                                           [&](KTuple const &t) { return u.count(t); });
                  if (meets)
                    for (auto const &t : img)
                      grew |= u.insert(t).second;
                }
            }
            CHECK(conclusion::join_stabilizer_identity(
              g, y, z, KSet(k, std::vector<KTuple>(u.begin(), u.end()))));
          }
        auto c = ctx_of("g", g, k);
        c.tuples["alpha"] = x.front();
        CHECK(run_check("P_capcup", c, env).verdict == Verdict::pass);
      }
  }
}

TEST_CASE("findings confirmed by independent computation")
{
  CheckEnv env;
  SUBCASE("L_grAB on C3")
  {
    auto r = run_check("L_grAB", ctx_of("C3", G(3, {"(1 2 3)"}), 1), env);
    REQUIRE(r.verdict == Verdict::fail);
    auto const &w = *r.witness;
    auto a = *w.subgroup("A"), b = *w.subgroup("B");
    auto alpha = *w.tuple("alpha");
    // hypotheses: |A alpha| = |A|, |B alpha| = |B|
    CHECK(orbit_of(a, alpha).size() == a.order());
    CHECK(orbit_of(b, alpha).size() == b.order());
    auto gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    auto join = oracle::closure(
      [&] {
        std::vector<oracle::Perm> v;
        for (auto const &p : gens)
          v.push_back(to_oracle(p));
        return v;
      }(),
      3);
    std::set<int> orbit;
    for (auto const &e : join)
      orbit.insert(e[alpha[0]]);
    CHECK(orbit.size() < join.size());
  }
  SUBCASE("P_index on t6.9")
  {
    auto cat = transitive_catalog(6);
    auto c = ctx_of("t6.9", cat.find("t6.9").group);
    auto r = run_check("P_index", c, env);
    REQUIRE(r.verdict == Verdict::fail);
    auto h = oracle_elements(*r.witness->subgroup("H"));
    auto a = oracle_elements(*r.witness->subgroup("A"));
    auto g = oracle_elements(c.group);
    CHECK(oracle_normalizer(h, a) == a);
    auto n = oracle_normalizer(g, a);
    bool holds = n != a && g.size() * a.size() == h.size() * n.size();
    CHECK_FALSE(holds);
  }
  SUBCASE("T_elcoh on t6.3")
  {
    auto cat = transitive_catalog(6);
    auto c = ctx_of("t6.3", cat.find("t6.3").group, 4);
    auto r = run_check("T_elcoh", c, env);
    REQUIRE(r.verdict == Verdict::fail);
    auto x = orbit_of(c.group, *r.witness->tuple("alpha"));
    CHECK(classify_coherence(c.group, x).kind == Coherence::elementary_coherent);
    CHECK(oracle_aut_order(x, 6) != x.size());
  }
}

TEST_CASE("witness replay and serialization")
{
  auto cat = transitive_catalog(4);
  auto report = run_suite(cat, {});
  CHECK(report.results.size() == 5 * (7 + 12 * 4));
  CHECK(report.count(Verdict::fail) > 0);
  CheckEnv env;
  for (auto const &r : report.results) {
    CHECK(r.verdict != Verdict::skipped);
    if (r.verdict != Verdict::fail)
      continue;
    auto text = witness_to_json(r);
    auto replayed = replay_witness(text, env);
    CHECK(replayed.verdict == Verdict::fail);
    auto back = context_from_json(context_to_json(*r.witness));
    CHECK(back == *r.witness);
  }
  CHECK_THROWS_AS(replay_witness("{", env), ParseError);
  CHECK_THROWS_AS(replay_witness(R"({"check_id": "P_index"})", env), ParseError);
  CHECK_THROWS_AS(context_from_json(
                    R"j({"group": {"id": "x", "degree": 3, "generators": ["(1 4)"]}, "k": null})j"),
                  ParseError);
}

TEST_CASE("suite determinism and jobs")
{
  auto cat = transitive_catalog(4);
  SuiteOptions one, four;
  four.jobs = 4;
  auto a = report_jsonl(run_suite(cat, one));
  auto b = report_jsonl(run_suite(cat, four));
  CHECK(a == b);
  CHECK(a == report_jsonl(run_suite(cat, one)));

  SuiteOptions ranged;
  ranged.k_range = {{2, 3}};
  ranged.check_ids = {"T_elcoh", "P_index"};
  auto r = run_suite(cat, ranged);
  CHECK(r.results.size() == 5 * (2 + 1));
  CHECK(r.results[0].check_id == "T_elcoh");
  CHECK(r.results[0].context.k == 2u);
  CHECK(r.results[2].check_id == "P_index");
}

TEST_CASE("caps become skipped results")
{
  auto cat = transitive_catalog(4);
  Limits tight;
  tight.max_subgroup_pairs = 3;
  SuiteOptions o;
  o.check_ids = {"P_capcup"};
  auto r = run_suite(cat, o, tight);
  REQUIRE(r.count(Verdict::skipped) > 0);
  for (auto const &res : r.results)
    if (res.verdict == Verdict::skipped)
      CHECK(res.reason.find("--max-subgroup-pairs") != std::string::npos);

  Limits tiny;
  tiny.max_subgroup_order = 4;
  o.check_ids = {"P_index"};
  auto s = run_suite(cat, o, tiny);
  CHECK(s.count(Verdict::skipped) > 0);
}

TEST_CASE("write_report")
{
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / "korbit_report_test";
  fs::remove_all(dir);
  SuiteOptions o;
  o.check_ids = {"L_grAB"};
  auto r = run_suite(transitive_catalog(3), o);
  write_report(r, dir.string());
  CHECK(fs::exists(dir / "report.jsonl"));
  CHECK(fs::exists(dir / "summary.txt"));
  CheckEnv env;
  for (auto const &res : r.results)
    if (res.witness) {
      auto path = dir / witness_name(res);
      REQUIRE(fs::exists(path));
      CHECK(replay_witness(read_text_file(path.string()), env).verdict == Verdict::fail);
    }
  fs::remove_all(dir);
}
