#include <doctest.h>

#include "helpers.hpp"
#include "korbit/catalog.hpp"
#include "korbit/errors.hpp"
#include "korbit/fks.hpp"

using namespace korbit;
using namespace testing;

namespace
{

bool fpf_prime_power(Permutation const &g)
{
  // independent predicate: no fixed point, order a power of one prime
  for (std::size_t i = 0; i < g.degree(); ++i)
    if (g[i] == i)
      return false;
  auto o = g.order();
  std::uint64_t p = 2;
  while (o % p)
    ++p;
  while (o % p == 0)
    o /= p;
  return o == 1;
}

} // namespace

TEST_CASE("find_fpf_prime_power")
{
  CHECK(find_fpf_prime_power(symmetric_group(3)) == P(3, "(1 2 3)"));
  CHECK(find_fpf_prime_power(G(2, {"(1 2)"})) == P(2, "(1 2)"));
  CHECK_FALSE(find_fpf_prime_power(G(3, {"(1 2)"})).has_value());
  auto c6 = find_fpf_prime_power(G(6, {"(1 2 3 4 5 6)"}));
  REQUIRE(c6);
  CHECK(fpf_prime_power(*c6));
  // the least such element in lexicographic order, by exhaustive scan
  auto g = G(6, {"(1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"});
  std::optional<Permutation> least;
  for (auto const &e : g.elements())
    if (fpf_prime_power(e) && (!least || e < *least))
      least = e;
  CHECK(find_fpf_prime_power(g) == least);
}

TEST_CASE("lift_fpf examples")
{
  auto c6 = G(6, {"(1 2 3 4 5 6)"});
  auto q6 = Partition<Point>({{0, 3}, {1, 4}, {2, 5}});
  auto lifted = lift_fpf(c6, q6, P(3, "(1 2 3)"), P(6, "(1 2 3 4 5 6)"));
  CHECK(lifted == P(6, "(1 3 5)(2 4 6)"));

  auto d4 = G(4, {"(1 2 3 4)", "(1 3)"});
  auto q4 = Partition<Point>({{0, 2}, {1, 3}});
  CHECK(lift_fpf(d4, q4, P(2, "(1 2)"), P(4, "(1 2 3 4)")) == P(4, "(1 2 3 4)"));
  // already of prime-power order: unchanged
  CHECK(lift_fpf(d4, q4, P(2, "(1 2)"), P(4, "(1 2)(3 4)")) == P(4, "(1 2)(3 4)"));

  CHECK_THROWS_AS(lift_fpf(c6, q6, P(3, "(1 2)")), PreconditionError);
  CHECK_THROWS_AS(lift_fpf(c6, q6, P(3, "()")), PreconditionError);
  CHECK_THROWS_AS(lift_fpf(c6, q6, P(3, "(1 2 3)"), P(6, "(1 3 5)(2 4 6)")), PreconditionError);
  auto z4 = G(4, {"(1 2 3 4)"});
  CHECK_THROWS_AS(lift_fpf(z4, Partition<Point>({{0, 1}, {2, 3}}), P(2, "(1 2)")),
                  PreconditionError);
}

TEST_CASE("lift_fpf works for every preimage")
{
  for (std::size_t n = 4; n <= 6; ++n)
    for (auto const &e : transitive_catalog(n).entries) {
      if (e.group.order() > 1000)
        continue;
      for (auto const &q : block_systems(e.group)) {
        QuotientAction qa(e.group, q);
        auto gq = find_fpf_prime_power(qa.group());
        if (!gq)
          continue;
        for (auto const &x : e.group.elements())
          if (qa.image(x) == *gq)
            CHECK(fpf_prime_power(lift_fpf(e.group, q, *gq, x)));
      }
    }
}

TEST_CASE("fks_pipeline examples")
{
  auto c6 = fks_pipeline(G(6, {"(1 2 3 4 5 6)"}));
  REQUIRE(c6.steps.size() == 3);
  CHECK(c6.steps[0].kind == StepKind::quotient);
  CHECK(format_points(*c6.steps[0].blocks) == "1 4 | 2 5 | 3 6");
  CHECK(c6.steps[1].kind == StepKind::terminal);
  CHECK(c6.steps[1].group.degree() == 3);
  CHECK(c6.steps[2].kind == StepKind::lift);
  CHECK(c6.element == P(6, "(1 3 5)(2 4 6)"));
  CHECK(c6.discrepancies.empty());

  auto s3 = fks_pipeline(symmetric_group(3));
  REQUIRE(s3.steps.size() == 3);
  CHECK(s3.steps[0].kind == StepKind::descend);
  CHECK(s3.steps[0].group == G(3, {"(1 2 3)"}));
  CHECK(s3.element == P(3, "(1 2 3)"));

  auto c5 = fks_pipeline(G(5, {"(1 2 3 4 5)"}));
  REQUIRE(c5.steps.size() == 1);
  CHECK(c5.steps[0].kind == StepKind::terminal);
  CHECK(c5.element.order() == 5);

  CHECK_THROWS_AS(fks_pipeline(G(3, {"(1 2)"})), PreconditionError);
}

TEST_CASE("pipeline results are verified, replay, and roundtrip")
{
  for (std::size_t n = 2; n <= 6; ++n)
    for (auto const &e : transitive_catalog(n).entries) {
      auto t = fks_pipeline(e.group);
      CHECK(fpf_prime_power(t.element));
      CHECK(e.group.contains(t.element));
      CHECK(t.reduced.has_value());
      CHECK(replay_trace(t) == t.element);
      auto text = save_trace(t);
      auto back = load_trace(text);
      CHECK(back == t);
      CHECK(save_trace(back) == text);
    }
}

TEST_CASE("tampered traces do not replay")
{
  auto t = fks_pipeline(G(6, {"(1 2 3 4 5 6)"}));
  auto bad = t;
  bad.steps[2].element = P(6, "(1 4)(2 5)(3 6)");
  CHECK_THROWS_AS(replay_trace(bad), Error);
  auto cut = t;
  cut.steps.pop_back();
  CHECK_THROWS_AS(replay_trace(cut), Error);
  CHECK_THROWS_AS(load_trace("{\"record\":\"step\"}\n"), ParseError);
  CHECK_THROWS_AS(load_trace("not json\n"), ParseError);
}

TEST_CASE("proof_audit")
{
  try {
    proof_audit(symmetric_group(4));
    FAIL("expected a hypothesis violation");
  } catch (PreconditionError const &e) {
    CHECK(std::string(e.what()).find("transitive subgroup <") != std::string::npos);
  }
  CHECK_THROWS_AS(proof_audit(G(3, {"(1 2)"})), PreconditionError);

  // no group of degree <= 7 meets the hypotheses
  for (std::size_t n = 2; n <= 6; ++n)
    for (auto const &e : transitive_catalog(n).entries)
      CHECK(proof_audit(e.group, {}, AuditMode::record).hypothesis_violations.size() > 0);

  // A_5 on 6 points, audited regardless of hypotheses
  auto a5 = transitive_catalog(6).entries[11];
  REQUIRE(a5.group.order() == 60);
  auto a = proof_audit(a5.group, {}, AuditMode::record);
  CHECK(a.normalizer.order() == 120);
  CHECK(a.normalizer_proper);
  REQUIRE(a.variants.size() == 2);
  CHECK(a.variants[0].name == "degree");
  CHECK(a.variants[0].k == 3);
  CHECK_FALSE(a.variants[0].partitions.empty());
  for (auto const &f : a.variants[0].partitions) {
    CHECK(f.q.size() == 2);
    CHECK(f.orbit_sizes.size() == 2);
    CHECK(f.coherence.size() == 2);
  }
  CHECK(audit_to_json(a).find("\"normalizer_order\":120") != std::string::npos);

  // N = G is recorded, not assumed away
  auto s5 = proof_audit(symmetric_group(5), {}, AuditMode::record);
  CHECK_FALSE(s5.normalizer_proper);
  CHECK_FALSE(s5.closed);
}
