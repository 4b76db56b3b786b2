#include <doctest.h>

#include "helpers.hpp"
#include "korbit/catalog.hpp"
#include "korbit/errors.hpp"

using namespace korbit;
using namespace testing;

TEST_CASE("transitive catalog counts match the enumeration oracle")
{
  for (int n = 1; n <= 5; ++n) {
    auto perms = oracle::all_perms(n);
    std::set<oracle::Perm> sym(perms.begin(), perms.end());
    auto subs = oracle::all_subgroups(sym, n);
    std::set<std::set<oracle::Perm>> transitive;
    for (auto const &h : subs)
      if (oracle::transitive(h, n))
        transitive.insert(h);
    auto expected = oracle::conjugacy_classes(transitive, sym);
    CHECK(transitive_catalog(static_cast<std::size_t>(n)).entries.size() == expected);
  }
  CHECK(transitive_catalog(4).entries.size() == 5);
  CHECK(transitive_catalog(5).entries.size() == 5);
  CHECK(transitive_catalog(6).entries.size() == 16);
  CHECK(subgroup_catalog(4).entries.size() == 11);
}

TEST_CASE("catalog entries are transitive, flagged and pairwise non-conjugate")
{
  for (std::size_t n = 2; n <= 5; ++n) {
    auto c = transitive_catalog(n);
    auto perms = oracle::all_perms(static_cast<int>(n));
    for (std::size_t i = 0; i < c.entries.size(); ++i) {
      auto const &e = c.entries[i];
      CHECK(e.id == "t" + std::to_string(n) + "." + std::to_string(i + 1));
      CHECK(e.transitive);
      CHECK(e.group.degree() == n);
      CHECK(orbits_on_points(e.group).size() == 1);
      CHECK(e.abelian == e.group.is_abelian());
      for (std::size_t j = i + 1; j < c.entries.size(); ++j) {
        auto a = oracle_elements(e.group);
        auto b = oracle_elements(c.entries[j].group);
        bool conj = false;
        for (auto const &x : perms)
          conj |= oracle::conjugate(a, x) == b;
        CHECK_FALSE(conj);
      }
    }
  }
  auto c4 = transitive_catalog(4);
  CHECK(c4.entries.front().group.order() == 4);
  CHECK(c4.entries.back().group.order() == 24);
  CHECK(c4.entries.back().paper_primitive());
}

TEST_CASE("catalog generation is deterministic")
{
  CHECK(save_catalog(transitive_catalog(6)) == save_catalog(transitive_catalog(6)));
}

TEST_CASE("catalog file roundtrip and errors")
{
  for (std::size_t n = 1; n <= 5; ++n) {
    auto c = subgroup_catalog(n);
    auto text = save_catalog(c);
    auto back = load_catalog(text);
    CHECK(back == c);
    CHECK(save_catalog(back) == text);
  }
  {
    // identity and repeated generators survive a roundtrip as written
    GroupCatalog c;
    c.degree = 3;
    c.provenance = "generated";
    c.entries.push_back(make_entry("a", close_group({}, 3)));
    c.entries.push_back(make_entry("b", close_group({P(3, "()"), P(3, "()")}, 3)));
    c.entries.push_back(make_entry("c", close_group({P(3, "(1 2)"), P(3, "(1 2)")}, 3)));
    auto back = load_catalog(save_catalog(c));
    CHECK(back == c);
    CHECK(back.entries[1].group.generators().size() == 2);
  }
  CHECK(save_catalog(transitive_catalog(3)) ==
        "degree 3\nprovenance generated\nt3.1 | 3 | transitive:1 | (1 2 3)\n"
        "t3.2 | 6 | transitive:1 | (2 3), (1 2)\n");

  try {
    load_catalog("degree 3\nprovenance generated\na | 3 | transitive:1 | (1 2 3)\n"
                 "a | 2 | transitive:0 | (1 2)\n");
    FAIL("expected a duplicate-id error");
  } catch (ParseError const &e) {
    CHECK(std::string(e.what()).find("duplicate id a") != std::string::npos);
  }
  CHECK_THROWS_AS(load_catalog("degree 3\nx | 4 | transitive:1 | (1 2 3)\n"), ParseError);
  CHECK_THROWS_AS(load_catalog("degree 3\nx | 3 | transitive:0 | (1 2 3)\n"), ParseError);
  CHECK_THROWS_AS(load_catalog("degree 3\nx | 3 | transitive:1 | (1 4)\n"), ParseError);
  CHECK_THROWS_AS(load_catalog("x | 3 | transitive:1 | (1 2 3)\n"), ParseError);
  CHECK_THROWS_AS(load_catalog("degree 3\nx | 3 | (1 2 3)\n"), ParseError);
  CHECK_THROWS_AS(transitive_catalog(8), PreconditionError);
}

TEST_CASE("generator files without provenance are imported")
{
  auto c = load_catalog("# external list\ndegree 8\nc8 | (1 2 3 4 5 6 7 8)\n"
                        "d8 | (1 2 3 4 5 6 7 8), (1 8)(2 7)(3 6)(4 5)\n");
  CHECK(c.provenance == "imported");
  CHECK(c.degree == 8);
  REQUIRE(c.entries.size() == 2);
  CHECK(c.find("c8").group.order() == 8);
  CHECK(c.find("d8").group.order() == 16);
  CHECK(c.find("d8").transitive);
  CHECK(load_catalog(save_catalog(c)) == c);
}
