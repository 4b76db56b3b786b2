#include "korbit/ktuple.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "korbit/errors.hpp"

namespace korbit
{

KTuple::KTuple(std::vector<Point> points) : points_(std::move(points))
{
  auto sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw PreconditionError("k-tuple coordinates must be distinct");
}

KTuple KTuple::initial(std::size_t n)
{
  std::vector<Point> pts(n);
  std::iota(pts.begin(), pts.end(), Point{0});
  return KTuple(std::move(pts));
}

std::vector<Point> KTuple::coordinates() const
{
  auto c = points_;
  std::sort(c.begin(), c.end());
  return c;
}

Point KTuple::max_point() const
{ return points_.empty() ? Point{0} : *std::max_element(points_.begin(), points_.end()); }

std::string KTuple::to_string() const
{
  bool compact = std::all_of(points_.begin(), points_.end(), [](Point p) { return p < 9; });
  std::string out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i && !compact)
      out += ',';
    out += std::to_string(points_[i] + 1);
  }
  return out;
}

KSet::KSet(std::size_t arity, std::vector<KTuple> tuples)
  : arity_(arity), tuples_(std::move(tuples))
{
  for (auto const &t : tuples_)
    if (t.arity() != arity_)
      throw PreconditionError("k-set tuples must all have arity " + std::to_string(arity_));
  std::sort(tuples_.begin(), tuples_.end());
  tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
}

bool KSet::contains(KTuple const &t) const
{ return std::binary_search(tuples_.begin(), tuples_.end(), t); }

bool KSet::is_subset_of(KSet const &other) const
{
  return std::includes(other.tuples_.begin(), other.tuples_.end(), tuples_.begin(),
                       tuples_.end());
}

bool KSet::intersects(KSet const &other) const
{
  auto a = tuples_.begin(), b = other.tuples_.begin();
  while (a != tuples_.end() && b != other.tuples_.end()) {
    if (*a == *b)
      return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

KSet KSet::intersection(KSet const &other) const
{
  std::vector<KTuple> out;
  std::set_intersection(tuples_.begin(), tuples_.end(), other.tuples_.begin(),
                        other.tuples_.end(), std::back_inserter(out));
  return KSet(arity_, std::move(out));
}

std::vector<Point> KSet::support() const
{
  std::vector<Point> out;
  for (auto const &t : tuples_)
    out.insert(out.end(), t.points().begin(), t.points().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

KTuple left_act(Permutation const &g, KTuple const &t)
{
  std::vector<Point> out(t.arity());
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (t[i] >= g.degree())
      throw PreconditionError("tuple point " + std::to_string(t[i] + 1) +
                              " exceeds the degree " + std::to_string(g.degree()));
    out[i] = g[t[i]];
  }
  return KTuple(std::move(out));
}

KSet left_act(Permutation const &g, KSet const &s)
{
  std::vector<KTuple> out;
  out.reserve(s.size());
  for (auto const &t : s)
    out.push_back(left_act(g, t));
  return KSet(s.arity(), std::move(out));
}

KTuple right_act(KTuple const &t, Permutation const &g)
{
  if (t.arity() != g.degree())
    throw PreconditionError("right action needs a tuple of arity " +
                            std::to_string(g.degree()) + ", got " +
                            std::to_string(t.arity()));
  std::vector<Point> out(t.arity());
  for (std::size_t i = 0; i < t.arity(); ++i)
    out[i] = t[g[i]];
  return KTuple(std::move(out));
}

KSet right_act(KSet const &s, Permutation const &g)
{
  std::vector<KTuple> out;
  for (auto const &t : s)
    out.push_back(right_act(t, g));
  return KSet(s.arity(), std::move(out));
}

KSet orbit_of(PermGroup const &g, KTuple const &t)
{
  std::vector<KTuple> out;
  out.reserve(g.order());
  for (auto const &e : g.elements())
    out.push_back(left_act(e, t));
  return KSet(t.arity(), std::move(out));
}

KSet n_orbit(PermGroup const &g) { return orbit_of(g, KTuple::initial(g.degree())); }

std::size_t count_tuples(std::size_t n, std::size_t k)
{
  if (k > n)
    return 0;
  std::size_t c = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (c > SIZE_MAX / (n - i))
      return SIZE_MAX;
    c *= n - i;
  }
  return c;
}

namespace
{

/// Lexicographic rank of a non-diagonal k-tuple among all such tuples.
class TupleRanker
{
public:
  TupleRanker(std::size_t n, std::size_t k) : n_(n), k_(k), weights_(k)
  {
    for (std::size_t i = 0; i < k; ++i)
      weights_[i] = count_tuples(n - i - 1, k - i - 1);
  }

  std::size_t rank(std::vector<Point> const &t) const
  {
    std::uint64_t used = 0;
    std::size_t r = 0;
    for (std::size_t i = 0; i < k_; ++i) {
      auto below = static_cast<std::size_t>(
        std::popcount(used & ((std::uint64_t{1} << t[i]) - 1)));
      r += (t[i] - below) * weights_[i];
      used |= std::uint64_t{1} << t[i];
    }
    return r;
  }

private:
  std::size_t n_, k_;
  std::vector<std::size_t> weights_;
};

void for_each_tuple(std::size_t n, std::size_t k,
                    std::function<void(std::vector<Point> const &)> const &fn)
{
  std::vector<Point> t;
  std::vector<bool> used(n, false);
  std::function<void()> rec = [&]() {
    if (t.size() == k) {
      fn(t);
      return;
    }
    for (std::size_t p = 0; p < n; ++p) {
      if (used[p])
        continue;
      used[p] = true;
      t.push_back(static_cast<Point>(p));
      rec();
      t.pop_back();
      used[p] = false;
    }
  };
  rec();
}

} // namespace

std::vector<KSet> k_orbits(PermGroup const &g, std::size_t k, Limits const &limits)
{
  std::size_t const n = g.degree();
  if (k < 1 || k > n)
    throw PreconditionError("k must satisfy 1 <= k <= n");
  std::size_t const total = count_tuples(n, k);
  if (total > limits.max_tuples)
    throw ResourceLimitError("max_tuples", "--max-tuples", limits.max_tuples,
                             "k-orbit enumeration needs " + std::to_string(total) +
                               " tuples");

  std::vector<std::vector<Point>> tuples;
  tuples.reserve(total);
  for_each_tuple(n, k, [&](auto const &t) { tuples.push_back(t); });

  TupleRanker ranker(n, k);
  detail::UnionFind uf(total);
  std::vector<Point> image(k);
  for (auto const &s : g.generators())
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t j = 0; j < k; ++j)
        image[j] = s[tuples[i][j]];
      uf.unite(i, ranker.rank(image));
    }

  std::vector<std::size_t> slot(total, SIZE_MAX);
  std::vector<std::vector<KTuple>> orbits;
  for (std::size_t i = 0; i < total; ++i) {
    auto root = uf.find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = orbits.size();
      orbits.emplace_back();
    }
    orbits[slot[root]].emplace_back(tuples[i]);
  }

  std::vector<KSet> out;
  out.reserve(orbits.size());
  for (auto &o : orbits)
    out.emplace_back(k, std::move(o));
  return out;
}

KSet project(KSet const &x, KTuple const &positions)
{
  std::vector<KTuple> out;
  out.reserve(x.size());
  for (auto const &t : x) {
    std::vector<Point> sel;
    for (auto p : positions.points()) {
      if (p >= t.arity())
        throw PreconditionError("projection position " + std::to_string(p + 1) +
                                " exceeds arity " + std::to_string(t.arity()));
      sel.push_back(t[p]);
    }
    out.emplace_back(std::move(sel));
  }
  return KSet(positions.arity(), std::move(out));
}

CoAnalysis co_analysis(KSet const &x)
{
  std::vector<std::vector<Point>> members;
  for (auto const &t : x)
    members.push_back(t.coordinates());
  CoAnalysis a;
  a.family = SetFamily<Point>(std::move(members));
  a.smashed = smash(a.family);
  return a;
}

PermGroup aut_of_kset(KSet const &x, std::size_t degree, Limits const &limits)
{
  auto support = x.support();
  if (support.size() > limits.max_degree)
    throw ResourceLimitError("max_degree", "--max-degree", limits.max_degree,
                             "automorphism search over a support of " +
                               std::to_string(support.size()) + " points");
  if (!support.empty() && support.back() >= degree)
    throw PreconditionError("k-set uses points beyond the degree");

  std::vector<Point> values = support;
  std::vector<Permutation> found;
  std::vector<Point> images(degree);
  std::vector<Point> buf;
  do {
    std::iota(images.begin(), images.end(), Point{0});
    for (std::size_t i = 0; i < support.size(); ++i)
      images[support[i]] = values[i];
    bool ok = true;
    for (auto const &t : x) {
      buf.assign(t.points().begin(), t.points().end());
      for (auto &p : buf)
        p = images[p];
      if (!std::binary_search(x.begin(), x.end(), KTuple(buf))) {
        ok = false;
        break;
      }
    }
    if (ok)
      found.emplace_back(images);
  } while (std::next_permutation(values.begin(), values.end()));

  return PermGroup::from_sorted_elements(degree, {}, std::move(found));
}

Partition<KTuple> k_block_partition(KSet const &x)
{
  std::map<std::vector<Point>, std::vector<KTuple>> by_coords;
  for (auto const &t : x)
    by_coords[t.coordinates()].push_back(t);
  std::vector<std::vector<KTuple>> classes;
  for (auto &[c, ts] : by_coords)
    classes.push_back(std::move(ts));
  return Partition<KTuple>(std::move(classes));
}

std::vector<KBlock> k_blocks(KSet const &x, std::size_t degree, Limits const &limits)
{
  std::vector<KBlock> out;
  auto partition = k_block_partition(x);
  for (auto const &cls : partition.classes()) {
    KBlock b;
    b.tuples = KSet(x.arity(), cls);
    b.aut = aut_of_kset(b.tuples, degree, limits);
    auto co = cls.front().coordinates();
    // transitive on Co(Y): the orbit of its least point is all of Co(Y)
    std::vector<Point> orbit{co.front()};
    for (auto const &e : b.aut.elements())
      orbit.push_back(e[co.front()]);
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    b.aut_transitive = orbit == co;
    out.push_back(std::move(b));
  }
  return out;
}

std::string save_kset(KSet const &x)
{
  std::string out = "arity " + std::to_string(x.arity()) + "\n";
  for (auto const &t : x) {
    for (std::size_t i = 0; i < t.arity(); ++i) {
      if (i)
        out += ' ';
      out += std::to_string(t[i] + 1);
    }
    out += '\n';
  }
  return out;
}

KSet load_kset(std::string_view text)
{
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> arity;
  std::vector<KTuple> tuples;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos)
      line.erase(pos);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first))
      continue;
    auto where = "line " + std::to_string(line_no) + ": ";
    if (!arity) {
      long long k = 0;
      if (first != "arity" || !(ls >> k) || k <= 0 || k > static_cast<long long>(kMaxDegree))
        throw ParseError(where + "expected \"arity k\" header");
      arity = static_cast<std::size_t>(k);
      continue;
    }
    std::vector<Point> pts;
    std::istringstream all(line);
    long long v = 0;
    while (all >> v) {
      if (v < 1 || v > static_cast<long long>(kMaxDegree))
        throw ParseError(where + "point out of range");
      pts.push_back(static_cast<Point>(v - 1));
    }
    if (!all.eof())
      throw ParseError(where + "malformed tuple");
    if (pts.size() != *arity)
      throw ParseError(where + "tuple has " + std::to_string(pts.size()) +
                       " points, expected " + std::to_string(*arity));
    try {
      tuples.emplace_back(std::move(pts));
    } catch (PreconditionError const &e) {
      throw ParseError(where + e.what());
    }
  }
  if (!arity)
    throw ParseError("k-set file has no \"arity k\" header");
  return KSet(*arity, std::move(tuples));
}

} // namespace korbit
