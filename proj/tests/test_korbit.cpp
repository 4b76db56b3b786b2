#include <doctest.h>

#include "helpers.hpp"
#include "korbit/coherence.hpp"
#include "korbit/errors.hpp"
#include "korbit/render.hpp"
#include "korbit/subgroups.hpp"

using namespace korbit;
using namespace testing;

namespace
{

PermGroup klein() { return G(4, {"(1 2)(3 4)", "(1 3)(2 4)"}); }
PermGroup c4() { return G(4, {"(1 2 3 4)"}); }

/// Overlap-closure of coordinate sets by repeated pairwise merging.
std::set<std::set<int>> merged_coordinates(std::set<oracle::Tuple> const &x)
{
  std::vector<std::set<int>> sets;
  for (auto const &t : x)
    sets.emplace_back(t.begin(), t.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < sets.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < sets.size() && !changed; ++j) {
        std::vector<int> common;
        std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(),
                              sets[j].end(), std::back_inserter(common));
        if (!common.empty()) {
          sets[i].insert(sets[j].begin(), sets[j].end());
          sets.erase(sets.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
  }
  return {sets.begin(), sets.end()};
}

/// Elementary coherence by brute force: every non-trivial subgroup, every
/// orbit of it inside X, is checked for a proper support with >= 2
/// coordinate sets.
bool oracle_has_proper_suborbit(std::set<oracle::Perm> const &g,
                                std::set<oracle::Tuple> const &x, int n)
{
  std::set<int> support;
  for (auto const &t : x)
    support.insert(t.begin(), t.end());
  for (auto const &h : oracle::all_subgroups(g, n)) {
    if (h.size() == 1)
      continue;
    for (auto const &a : x) {
      std::set<std::set<int>> cos;
      std::set<int> u;
      for (auto const &e : h) {
        std::set<int> c;
        for (int p : a)
          c.insert(e[p]);
        u.insert(c.begin(), c.end());
        cos.insert(c);
      }
      if (cos.size() >= 2 && u.size() < support.size())
        return true;
    }
  }
  return false;
}

} // namespace

TEST_CASE("left and right actions reproduce the worked examples")
{
  auto g = P(3, "(1 2 3)");
  auto x = KS({"123", "132"});
  CHECK(left_act(g, x) == KS({"231", "213"}));
  CHECK(right_act(x, g) == KS({"231", "321"}));
  CHECK(left_act(Permutation::identity(3), x) == x);
  CHECK(left_act(P(4, "(1 2)(3 4)"), T("1234")) == T("2143"));
  CHECK(right_act(T("2143"), P(4, "(1 2)")) == T("1243"));
  CHECK(right_act(T("123"), Permutation::identity(3)) == T("123"));
  CHECK_THROWS_AS(right_act(T("12"), g), PreconditionError);
  CHECK_THROWS_AS(left_act(P(2, "(1 2)"), T("13")), PreconditionError);
  CHECK_THROWS_AS(KTuple({0, 0}), PreconditionError);
}

TEST_CASE("right action matches its definition expansion")
{
  GroupGen gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = gen.perm(5);
    auto tp = gen.perm(5);
    auto im = tp.images();
    auto t = KTuple(std::vector<Point>(im.begin(), im.end()));
    auto r = right_act(t, g);
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(r[i] == t[g[i]]);
  }
}

TEST_CASE("k_orbits agree with the brute-force action oracle")
{
  auto orbits = k_orbits(c4(), 2);
  REQUIRE(orbits.size() == 3);
  for (auto const &o : orbits)
    CHECK(o.size() == 4);
  CHECK(std::find(orbits.begin(), orbits.end(), KS({"12", "23", "34", "41"})) != orbits.end());

  CHECK(k_orbits(symmetric_group(3), 3).size() == 1);
  CHECK(k_orbits(close_group({}, 4), 2).size() == 12);

  GroupGen gen(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 3 + trial % 4;
    auto g = gen.group(n, 1 + trial % 2);
    for (std::size_t k = 1; k <= n; ++k) {
      std::set<std::set<oracle::Tuple>> got;
      for (auto const &o : k_orbits(g, k))
        got.insert(oracle_tuples(o));
      CHECK(got == oracle::tuple_orbits(oracle_elements(g), static_cast<int>(n),
                                        static_cast<int>(k)));
    }
  }
}

TEST_CASE("k_orbits enforces the tuple cap")
{
  Limits limits;
  limits.max_tuples = 100;
  try {
    k_orbits(symmetric_group(6), 4, limits);
    FAIL("expected a resource limit");
  } catch (ResourceLimitError const &e) {
    CHECK(e.flag() == "--max-tuples");
  }
  CHECK_THROWS_AS(k_orbits(symmetric_group(3), 4), PreconditionError);
  CHECK_THROWS_AS(k_orbits(symmetric_group(3), 0), PreconditionError);
}

TEST_CASE("orbit identities")
{
  GroupGen gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 3 + trial % 3;
    auto g = gen.group(n, 2);
    auto xn = n_orbit(g);
    CHECK(xn.size() == g.order());
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t total = 0;
      for (auto const &x : k_orbits(g, k)) {
        total += x.size();
        std::size_t fixing = 0;
        for (auto const &e : g.elements())
          fixing += left_act(e, x.front()) == x.front();
        CHECK(x.size() * fixing == g.order());
      }
      CHECK(total == count_tuples(n, k));
    }
    std::vector<Point> pos{2, 0};
    KTuple i(pos);
    for (auto const &e : g.elements())
      CHECK(project(left_act(e, xn), i) == left_act(e, project(xn, i)));
  }
}

TEST_CASE("projection")
{
  auto xn = n_orbit(klein());
  CHECK(xn.size() == 4);
  CHECK(project(xn, T("12")) == KS({"12", "21", "34", "43"}));
  CHECK(project(xn, T("1234")) == xn);
  CHECK(project(KS({"2143"}), T("24")) == KS({"13"}));
  CHECK_THROWS_AS(project(KS({"12"}), T("13")), PreconditionError);
}

TEST_CASE("co_analysis and k_blocks")
{
  auto a = co_analysis(KS({"12", "21", "34", "43"}));
  CHECK(a.family.members() == std::vector<std::vector<Point>>{{0, 1}, {2, 3}});
  CHECK(a.smashed.disjoint);
  CHECK(a.smashed.partition.size() == 2);

  auto b = co_analysis(KS({"12", "23", "34", "41"}));
  CHECK(b.family.size() == 4);
  CHECK_FALSE(b.smashed.disjoint);
  CHECK(b.smashed.partition.size() == 1);

  auto c = co_analysis(KS({"21"}));
  CHECK(c.smashed.disjoint);
  CHECK(c.smashed.partition.size() == 1);

  auto blocks = k_blocks(KS({"12", "21", "34", "43"}), 4);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].tuples == KS({"12", "21"}));
  CHECK(blocks[1].tuples == KS({"34", "43"}));
  CHECK(blocks[0].aut_transitive);

  auto singles = k_blocks(KS({"12", "23", "34", "41"}), 4);
  CHECK(singles.size() == 4);
  for (auto const &blk : singles) {
    CHECK(blk.tuples.size() == 1);
    CHECK_FALSE(blk.aut_transitive);
  }
  CHECK(k_blocks(n_orbit(symmetric_group(3)), 3).size() == 1);
}

TEST_CASE("aut_of_kset")
{
  CHECK(aut_of_kset(KS({"12", "21"}), 2).order() == 2);
  auto a = aut_of_kset(KS({"12", "23", "34", "41"}), 4);
  CHECK(a == c4());
  CHECK(aut_of_kset(n_orbit(symmetric_group(3)), 3).order() == 6);
  Limits limits;
  limits.max_degree = 3;
  CHECK_THROWS_AS(aut_of_kset(KS({"12", "34"}), 4, limits), ResourceLimitError);

  // brute-force oracle over all of S_n, and the acting group is contained
  GroupGen gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = gen.group(5, 1);
    for (auto const &x : k_orbits(g, 2)) {
      auto aut = aut_of_kset(x, 5);
      std::set<oracle::Perm> expect;
      auto xs = oracle_tuples(x);
      std::set<int> support;
      for (auto const &t : xs)
        support.insert(t.begin(), t.end());
      for (auto const &s : oracle::all_perms(5)) {
        bool fixes_outside = true;
        for (int p = 0; p < 5; ++p)
          if (!support.count(p) && s[p] != p)
            fixes_outside = false;
        if (!fixes_outside)
          continue;
        std::set<oracle::Tuple> img;
        for (auto const &t : xs)
          img.insert({s[t[0]], s[t[1]]});
        if (img == xs)
          expect.insert(s);
      }
      CHECK(oracle_elements(aut) == expect);
    }
  }
}

TEST_CASE("classify_coherence: examples")
{
  auto v = classify_coherence(klein(), KS({"12", "21", "34", "43"}));
  CHECK(v.kind == Coherence::incoherent);
  CHECK(format_points(v.merged) == "1 2 | 3 4");

  auto w = classify_coherence(c4(), KS({"12", "23", "34", "41"}));
  CHECK(w.kind != Coherence::incoherent);
  CHECK_FALSE(w.trivial);

  auto one = classify_coherence(symmetric_group(3), k_orbits(symmetric_group(3), 1)[0]);
  CHECK(one.kind == Coherence::coherent);
  CHECK(one.trivial);

  auto full = classify_coherence(symmetric_group(3), n_orbit(symmetric_group(3)));
  CHECK(full.trivial);

  CHECK_THROWS_AS(classify_coherence(c4(), KS({"12"})), PreconditionError);
}

TEST_CASE("classify_coherence agrees with the subgroup-orbit oracle")
{
  std::vector<PermGroup> groups = {c4(), klein(), symmetric_group(4),
                                   alternating_group(4),
                                   G(4, {"(1 2 3 4)", "(1 3)"}),
                                   G(5, {"(1 2 3 4 5)"}),
                                   G(5, {"(1 2 3 4 5)", "(2 5)(3 4)"}),
                                   G(6, {"(1 2 3 4 5 6)"}),
                                   G(6, {"(1 2 3)(4 5 6)", "(1 4)(2 5)(3 6)"})};
  for (auto const &g : groups) {
    int n = static_cast<int>(g.degree());
    auto elems = oracle_elements(g);
    for (int k = 2; k < n; ++k)
      for (auto const &x : k_orbits(g, static_cast<std::size_t>(k))) {
        auto v = classify_coherence(g, x);
        auto xs = oracle_tuples(x);
        auto merged = merged_coordinates(xs);
        bool single_set = true;
        for (auto const &t : xs)
          single_set &= std::set<int>(t.begin(), t.end()) ==
                        std::set<int>(xs.begin()->begin(), xs.begin()->end());
        if (single_set) {
          CHECK(v.trivial);
          continue;
        }
        if (merged.size() > 1) {
          CHECK(v.kind == Coherence::incoherent);
          continue;
        }
        bool proper = oracle_has_proper_suborbit(elems, xs, n);
        CHECK(v.kind == (proper ? Coherence::coherent : Coherence::elementary_coherent));
        if (v.suborbit) {
          CHECK(v.suborbit->suborbit.is_subset_of(x));
          CHECK(v.suborbit->u.size() < static_cast<std::size_t>(n));
        }
      }
  }
}

TEST_CASE("stab_of_ksuborbit")
{
  auto s = stab_of_ksuborbit(klein(), KS({"12", "21"}));
  CHECK(s.group.order() == 2);
  CHECK(s.transitive);
  auto x = k_orbits(klein(), 2)[0];
  CHECK(stab_of_ksuborbit(klein(), x).group == klein());
  auto t = stab_of_ksuborbit(c4(), KS({"12"}));
  CHECK(t.group.is_trivial());
  CHECK(t.transitive);
  CHECK_THROWS_AS(stab_of_ksuborbit(c4(), KSet()), PreconditionError);
}

TEST_CASE("coset_k_partitions")
{
  auto s3 = symmetric_group(3);
  auto c3 = G(3, {"(1 2 3)"});
  auto r = coset_k_partitions(s3, c3, T("123"));
  CHECK(r.left.size() == 2);
  CHECK(r.left_is_partition);
  CHECK(r.right.size() == 2);
  for (auto const &c : r.right.classes())
    CHECK(c.size() == 3);

  auto same = coset_k_partitions(s3, s3, T("12"));
  CHECK(same.left.size() == 1);
  CHECK(same.right.size() == 1);

  auto c2 = G(3, {"(1 2)"});
  auto k1 = coset_k_partitions(s3, c2, T("1"));
  CHECK(k1.x == KS({"1", "2", "3"}));
  CHECK(k1.right.size() == 2);
  CHECK(k1.right[0] == std::vector<KTuple>{T("1"), T("2")});
  CHECK_FALSE(k1.left_is_partition);

  CHECK_THROWS_AS(coset_k_partitions(c3, c2, T("1")), PreconditionError);

  // at k = n both sides have [G:A] classes
  for (auto const &a : enumerate_subgroups(symmetric_group(4))) {
    auto c = coset_k_partitions(symmetric_group(4), a, T("1234"));
    CHECK(c.left.size() == 24 / a.order());
    CHECK(c.right.size() == 24 / a.order());
    CHECK(c.left_is_partition);
  }
}

TEST_CASE("automorphic_analysis")
{
  auto a = automorphic_analysis(symmetric_group(3));
  auto flag = [](std::vector<AutomorphicNumber> const &v, std::size_t k) {
    for (auto const &x : v)
      if (x.k == k)
        return x.automorphic;
    return false;
  };
  CHECK(flag(a.group_divisors, 1));
  CHECK(flag(a.group_divisors, 2));
  CHECK(flag(a.group_divisors, 3));
  CHECK(a.max_proper_group_divisor == 2);
  CHECK(a.max_proper_degree_divisor == 1);

  auto c = automorphic_analysis(c4());
  CHECK(flag(c.degree_divisors, 2));
  CHECK(std::find(c.subsets.begin(), c.subsets.end(), std::vector<Point>{0, 2}) !=
        c.subsets.end());
  CHECK(is_automorphic_subset(c4(), {0, 2}));
  CHECK_FALSE(is_automorphic_subset(c4(), {0, 1}));

  // subsets agree with orbits of all subgroups
  std::vector<PermGroup> groups = {c4(), klein(), symmetric_group(4), G(5, {"(1 2 3 4 5)", "(2 5)(3 4)"}),
                                   G(6, {"(1 2)(3 4)(5 6)", "(1 3 5)(2 4 6)"})};
  for (auto const &g : groups) {
    std::set<std::vector<Point>> expect;
    for (auto const &h : oracle::all_subgroups(oracle_elements(g), static_cast<int>(g.degree())))
      for (std::size_t p = 0; p < g.degree(); ++p) {
        std::set<Point> orbit;
        for (auto const &e : h)
          orbit.insert(static_cast<Point>(e[p]));
        expect.insert({orbit.begin(), orbit.end()});
      }
    auto got = automorphic_analysis(g).subsets;
    CHECK(std::set<std::vector<Point>>(got.begin(), got.end()) == expect);
  }
}

TEST_CASE("render_norbit")
{
  auto k = klein();
  auto text = render_norbit(k, {G(4, {"(1 2)(3 4)"}), k});
  CHECK(text == read_text_file(KORBIT_FIXTURE_DIR "/klein_norbit.txt"));

  CHECK(render_norbit(k, {k}) == "+------+\n| 1234 |\n| 2143 |\n| 3412 |\n| 4321 |\n+------+\n");
  auto c2 = G(2, {"(1 2)"});
  CHECK(render_norbit(c2, {c2}) == "+----+\n| 12 |\n| 21 |\n+----+\n");

  auto s3 = symmetric_group(3);
  auto three = render_norbit(s3, {close_group({}, 3), G(3, {"(1 2 3)"}), s3});
  CHECK(three.find("+=======+") != std::string::npos);
  CHECK_THROWS_AS(render_norbit(k, {G(4, {"(1 2)"}), k}), PreconditionError);
  CHECK_THROWS_AS(render_norbit(k, {G(4, {"(1 2)(3 4)"})}), PreconditionError);
}

TEST_CASE("k-set file roundtrip")
{
  auto x = k_orbits(G(5, {"(1 2 3 4 5)"}), 3)[1];
  CHECK(load_kset(save_kset(x)) == x);
  CHECK(save_kset(KS({"21"})) == "arity 2\n2 1\n");
  CHECK_THROWS_AS(load_kset("arity 2\n1 2 3\n"), ParseError);
  CHECK_THROWS_AS(load_kset("1 2\n"), ParseError);
  CHECK_THROWS_AS(load_kset("arity 2\n1 1\n"), ParseError);
}
