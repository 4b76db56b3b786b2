#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "korbit/ktuple.hpp"
#include "korbit/perm_group.hpp"
#include "oracles.hpp"

namespace testing
{

inline korbit::Permutation P(std::size_t n, std::string const &text)
{ return korbit::parse_permutation(text, n); }

inline korbit::PermGroup G(std::size_t n, std::initializer_list<char const *> gens)
{
  std::vector<korbit::Permutation> g;
  for (auto const *s : gens)
    g.push_back(P(n, s));
  return korbit::close_group(std::move(g), n);
}

inline oracle::Perm to_oracle(korbit::Permutation const &p)
{ return oracle::Perm(p.images().begin(), p.images().end()); }

inline std::vector<oracle::Perm> oracle_gens(korbit::PermGroup const &g)
{
  std::vector<oracle::Perm> out;
  for (auto const &s : g.generators())
    out.push_back(to_oracle(s));
  return out;
}

inline std::set<oracle::Perm> oracle_elements(korbit::PermGroup const &g)
{
  std::set<oracle::Perm> out;
  for (auto const &e : g.elements())
    out.insert(to_oracle(e));
  return out;
}

inline std::set<std::set<int>> oracle_classes(korbit::Partition<korbit::Point> const &p)
{
  std::set<std::set<int>> out;
  for (auto const &c : p.classes())
    out.insert(std::set<int>(c.begin(), c.end()));
  return out;
}

/// Tuple from 1-based single-digit points, e.g. "132".
inline korbit::KTuple T(std::string const &digits)
{
  std::vector<korbit::Point> pts;
  for (char c : digits)
    pts.push_back(static_cast<korbit::Point>(c - '1'));
  return korbit::KTuple(pts);
}

inline korbit::KSet KS(std::initializer_list<char const *> tuples)
{
  std::vector<korbit::KTuple> ts;
  for (auto const *t : tuples)
    ts.push_back(T(t));
  return korbit::KSet(ts.empty() ? 0 : ts.front().arity(), ts);
}

inline std::set<oracle::Tuple> oracle_tuples(korbit::KSet const &x)
{
  std::set<oracle::Tuple> out;
  for (auto const &t : x)
    out.insert(oracle::Tuple(t.points().begin(), t.points().end()));
  return out;
}

/// Deterministic generator of small groups for property tests.
class GroupGen
{
public:
  explicit GroupGen(std::uint64_t seed) : state_(seed * 0x9e3779b97f4a7c15ull + 1) {}

  std::uint64_t next()
  {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }

  korbit::Permutation perm(std::size_t n)
  {
    std::vector<korbit::Point> img(n);
    for (std::size_t i = 0; i < n; ++i)
      img[i] = static_cast<korbit::Point>(i);
    for (std::size_t i = n; i > 1; --i)
      std::swap(img[i - 1], img[next() % i]);
    return korbit::Permutation(img);
  }

  korbit::PermGroup group(std::size_t n, std::size_t gens)
  {
    std::vector<korbit::Permutation> g;
    for (std::size_t i = 0; i < gens; ++i)
      g.push_back(perm(n));
    return korbit::close_group(std::move(g), n);
  }

private:
  std::uint64_t state_;
};

} // namespace testing
