#include "korbit/perm_group.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "korbit/errors.hpp"

namespace korbit
{

PermGroup PermGroup::from_sorted_elements(std::size_t degree,
                                          std::vector<Permutation> generators,
                                          std::vector<Permutation> elements)
{
  PermGroup g;
  g.degree_ = degree;
  g.elements_ = std::move(elements);
  if (g.elements_.empty())
    g.elements_.push_back(Permutation::identity(degree));
  if (generators.empty() && g.elements_.size() > 1)
    generators = greedy_generators(g.elements_, degree);
  g.generators_ = std::move(generators);
  return g;
}

bool PermGroup::contains(Permutation const &g) const
{ return index_of(g) != npos; }

std::size_t PermGroup::index_of(Permutation const &g) const
{
  if (g.degree() != degree_)
    return npos;
  auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
  if (it == elements_.end() || *it != g)
    return npos;
  return static_cast<std::size_t>(it - elements_.begin());
}

bool PermGroup::is_subgroup_of(PermGroup const &other) const
{
  if (degree_ != other.degree_ || other.order() % order() != 0)
    return false;
  return std::all_of(generators_.begin(), generators_.end(),
                     [&](auto const &s) { return other.contains(s); });
}

bool PermGroup::is_normal_in(PermGroup const &other) const
{
  if (!is_subgroup_of(other))
    return false;
  for (auto const &x : other.generators()) {
    auto xi = x.inverse();
    for (auto const &s : generators_)
      if (!contains(x * s * xi))
        return false;
  }
  return true;
}

bool PermGroup::is_abelian() const
{
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (generators_[i] * generators_[j] != generators_[j] * generators_[i])
        return false;
  return true;
}

bool PermGroup::is_transitive() const
{ return orbits_on_points(*this).size() == 1; }

PermGroup close_group(std::vector<Permutation> generators, std::size_t degree,
                      Limits const &limits)
{
  if (degree == 0)
    throw PreconditionError("group degree must be positive");
  for (auto const &s : generators)
    if (s.degree() != degree)
      throw PreconditionError("generator " + s.to_cycle_string() + " has degree " +
                              std::to_string(s.degree()) + ", expected " +
                              std::to_string(degree));

  std::vector<Permutation> elements{Permutation::identity(degree)};
  std::unordered_set<Permutation> seen(elements.begin(), elements.end());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (auto const &s : generators) {
      auto p = elements[i] * s;
      if (seen.insert(p).second) {
        if (elements.size() >= limits.max_elements)
          throw ResourceLimitError("max_elements", "--max-elements",
                                   limits.max_elements,
                                   "group closure exceeds the element cap");
        elements.push_back(std::move(p));
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return PermGroup::from_sorted_elements(degree, std::move(generators),
                                         std::move(elements));
}

std::vector<Permutation> greedy_generators(std::vector<Permutation> const &elements,
                                           std::size_t degree)
{
  std::vector<Permutation> gens;
  std::vector<Permutation> closure{Permutation::identity(degree)};
  std::unordered_set<Permutation> seen(closure.begin(), closure.end());

  for (auto const &e : elements) {
    if (seen.count(e))
      continue;
    gens.push_back(e);
    // Right cosets H*t of the current closure H are added whole.
    std::size_t const sub_order = closure.size();
    std::vector<Permutation> reps{Permutation::identity(degree)};
    std::vector<Permutation> sub(closure.begin(), closure.end());
    for (std::size_t r = 0; r < reps.size(); ++r) {
      for (auto const &s : gens) {
        auto t = reps[r] * s;
        if (seen.count(t))
          continue;
        for (std::size_t h = 0; h < sub_order; ++h) {
          auto x = sub[h] * t;
          seen.insert(x);
          closure.push_back(std::move(x));
        }
        reps.push_back(std::move(t));
      }
    }
  }
  return gens;
}

PermGroup symmetric_group(std::size_t n, Limits const &limits)
{
  std::vector<Permutation> gens;
  if (n >= 2) {
    std::vector<Point> cyc(n);
    std::iota(cyc.begin(), cyc.end(), Point{1});
    cyc.back() = 0;
    gens.emplace_back(cyc);
    std::vector<Point> tr(n);
    std::iota(tr.begin(), tr.end(), Point{0});
    std::swap(tr[0], tr[1]);
    gens.emplace_back(tr);
  }
  return close_group(std::move(gens), n, limits);
}

PermGroup alternating_group(std::size_t n, Limits const &limits)
{
  std::vector<Permutation> gens;
  for (std::size_t i = 2; i < n; ++i) {
    std::vector<Point> c(n);
    std::iota(c.begin(), c.end(), Point{0});
    c[0] = 1;
    c[1] = static_cast<Point>(i);
    c[i] = 0;
    gens.emplace_back(c);
  }
  return close_group(std::move(gens), n, limits);
}

PermGroup cyclic_group(std::size_t n)
{
  if (n == 0)
    throw PreconditionError("group degree must be positive");
  std::vector<Point> cyc(n);
  std::iota(cyc.begin(), cyc.end(), Point{1});
  cyc.back() = 0;
  return close_group({Permutation(cyc)}, n);
}

PermGroup conjugate(PermGroup const &g, Permutation const &x)
{
  auto xi = x.inverse();
  std::vector<Permutation> gens;
  for (auto const &s : g.generators())
    gens.push_back(x * s * xi);
  std::vector<Permutation> elements;
  elements.reserve(g.order());
  for (auto const &e : g.elements())
    elements.push_back(x * e * xi);
  std::sort(elements.begin(), elements.end());
  return PermGroup::from_sorted_elements(g.degree(), std::move(gens),
                                         std::move(elements));
}

Partition<Point> orbits_on_points(PermGroup const &g)
{
  detail::UnionFind uf(g.degree());
  for (auto const &s : g.generators())
    for (std::size_t x = 0; x < g.degree(); ++x)
      uf.unite(x, s[x]);
  std::vector<Point> domain(g.degree());
  std::iota(domain.begin(), domain.end(), Point{0});
  return detail::classes_from_union_find(domain, uf);
}

Partition<Point> minimal_block_system(PermGroup const &g, Point a, Point b)
{
  std::size_t const n = g.degree();
  detail::UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue{{a, b}};
  uf.unite(a, b);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [x, y] = queue[i];
    for (auto const &s : g.generators()) {
      Point sx = s[x], sy = s[y];
      if (uf.find(sx) != uf.find(sy)) {
        uf.unite(sx, sy);
        queue.emplace_back(sx, sy);
      }
    }
  }
  std::vector<Point> domain(n);
  std::iota(domain.begin(), domain.end(), Point{0});
  return detail::classes_from_union_find(domain, uf);
}

std::vector<Partition<Point>> block_systems(PermGroup const &g)
{
  if (!g.is_transitive())
    throw PreconditionError("block_systems requires a transitive group");

  std::vector<Partition<Point>> candidates;
  for (std::size_t b = 1; b < g.degree(); ++b) {
    auto q = minimal_block_system(g, 0, static_cast<Point>(b));
    if (q.size() > 1 &&
        std::find(candidates.begin(), candidates.end(), q) == candidates.end())
      candidates.push_back(std::move(q));
  }

  std::vector<Partition<Point>> minimal;
  for (auto const &q : candidates) {
    bool is_min = std::none_of(candidates.begin(), candidates.end(), [&](auto const &r) {
      return r != q && r.refines(q);
    });
    if (is_min)
      minimal.push_back(q);
  }
  std::sort(minimal.begin(), minimal.end(), [](auto const &x, auto const &y) {
    if (x[0].size() != y[0].size())
      return x[0].size() < y[0].size();
    return x < y;
  });
  return minimal;
}

bool is_invariant_partition(PermGroup const &g, Partition<Point> const &q)
{
  if (q.domain().size() != g.degree())
    return false;
  for (auto const &s : g.generators()) {
    for (auto const &c : q.classes()) {
      auto target = q.class_of(s[c.front()]);
      for (auto x : c)
        if (q.class_of(s[x]) != target)
          return false;
    }
  }
  return true;
}

QuotientAction::QuotientAction(PermGroup const &g, Partition<Point> q,
                               Limits const &limits)
  : blocks_(std::move(q))
{
  if (blocks_.domain().size() != g.degree())
    throw PreconditionError("partition does not cover the points of the group");
  if (!is_invariant_partition(g, blocks_))
    throw PreconditionError("partition " + format_points(blocks_) +
                            " is not invariant under the group");

  class_of_point_.resize(g.degree());
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    for (auto x : blocks_[i])
      class_of_point_[x] = i;

  std::vector<Permutation> gens;
  for (auto const &s : g.generators())
    gens.push_back(image(s));
  image_ = close_group(std::move(gens), blocks_.size(), limits);
}

Permutation QuotientAction::image(Permutation const &g) const
{
  std::vector<Point> images(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    images[i] = static_cast<Point>(class_of_point_[g[blocks_[i].front()]]);
  return Permutation(std::move(images));
}

bool is_primitive(PermGroup const &g, Convention convention)
{
  if (!g.is_transitive())
    throw PreconditionError("primitivity is defined for transitive groups only");
  if (!block_systems(g).empty())
    return false;
  return convention == Convention::classical || !g.is_abelian();
}

PermGroup normalizer_in_sym(PermGroup const &g, Limits const &limits)
{
  std::size_t const n = g.degree();
  if (n > limits.max_degree)
    throw ResourceLimitError("max_degree", "--max-degree", limits.max_degree,
                             "normalizer search over S_" + std::to_string(n));

  std::vector<Point> images(n);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<Permutation> found;
  do {
    Permutation s(images);
    auto si = s.inverse();
    bool ok = std::all_of(g.generators().begin(), g.generators().end(),
                          [&](auto const &x) { return g.contains(s * x * si); });
    if (ok)
      found.push_back(std::move(s));
  } while (std::next_permutation(images.begin(), images.end()));

  return PermGroup::from_sorted_elements(n, {}, std::move(found));
}

PermGroup normalizer_in(PermGroup const &g, PermGroup const &sub)
{
  std::vector<Permutation> found;
  for (auto const &x : g.elements()) {
    auto xi = x.inverse();
    bool ok = std::all_of(sub.generators().begin(), sub.generators().end(),
                          [&](auto const &s) { return sub.contains(x * s * xi); });
    if (ok)
      found.push_back(x);
  }
  return PermGroup::from_sorted_elements(g.degree(), {}, std::move(found));
}

std::string point_label(Point p) { return std::to_string(p + 1); }

std::string format_points(Partition<Point> const &p)
{ return format_partition(p, point_label); }

std::string save_group(PermGroup const &g)
{
  std::string out = "degree " + std::to_string(g.degree()) + "\n";
  for (auto const &s : g.generators())
    out += s.to_cycle_string() + "\n";
  return out;
}

namespace
{

std::string strip_comment(std::string line)
{
  if (auto pos = line.find('#'); pos != std::string::npos)
    line.erase(pos);
  auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

} // namespace

PermGroup load_group(std::string_view text, Limits const &limits)
{
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t degree = 0;
  std::size_t line_no = 0;
  std::vector<Permutation> gens;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_comment(line);
    if (line.empty())
      continue;
    if (degree == 0) {
      std::istringstream head(line);
      std::string word;
      long long n = 0;
      if (!(head >> word >> n) || word != "degree" || n <= 0 ||
          static_cast<std::size_t>(n) > kMaxDegree || (head >> word))
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected \"degree n\" header");
      degree = static_cast<std::size_t>(n);
      continue;
    }
    try {
      gens.push_back(parse_permutation(line, degree));
    } catch (ParseError const &e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (degree == 0)
    throw ParseError("group file has no \"degree n\" header");
  return close_group(std::move(gens), degree, limits);
}

std::string read_text_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(std::string const &path, std::string const &text)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error("cannot write " + path);
  out << text;
}

PermGroup read_group_file(std::string const &path, Limits const &limits)
{ return load_group(read_text_file(path), limits); }

void write_group_file(std::string const &path, PermGroup const &g)
{ write_text_file(path, save_group(g)); }

} // namespace korbit
