#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "korbit/errors.hpp"

namespace korbit
{

namespace detail
{

class UnionFind
{
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::size_t find(std::size_t x)
  {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b)
  {
    a = find(a);
    b = find(b);
    if (a != b)
      parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

} // namespace detail

/// A partition of a finite, totally ordered domain. Always kept canonical:
/// elements sorted within classes, classes sorted by least element.
template <typename T>
class Partition
{
public:
  using Class = std::vector<T>;

  Partition() = default;

  explicit Partition(std::vector<Class> classes) : classes_(std::move(classes))
  {
    for (auto &c : classes_) {
      if (c.empty())
        throw PreconditionError("partition class is empty");
      std::sort(c.begin(), c.end());
      domain_.insert(domain_.end(), c.begin(), c.end());
    }
    std::sort(domain_.begin(), domain_.end());
    if (std::adjacent_find(domain_.begin(), domain_.end()) != domain_.end())
      throw PreconditionError("partition classes are not disjoint");
    std::sort(classes_.begin(), classes_.end(),
              [](Class const &a, Class const &b) { return a.front() < b.front(); });
  }

  static Partition discrete(std::vector<T> domain)
  {
    std::vector<Class> classes;
    for (auto &x : domain)
      classes.push_back({x});
    return Partition(std::move(classes));
  }

  static Partition whole(std::vector<T> domain)
  {
    if (domain.empty())
      return Partition();
    return Partition(std::vector<Class>{std::move(domain)});
  }

  std::vector<T> const &domain() const { return domain_; }
  std::vector<Class> const &classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }
  Class const &operator[](std::size_t i) const { return classes_[i]; }

  bool contains(T const &x) const
  { return std::binary_search(domain_.begin(), domain_.end(), x); }

  /// Index of the class holding x.
  std::size_t class_of(T const &x) const
  {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      if (std::binary_search(classes_[i].begin(), classes_[i].end(), x))
        return i;
    throw PreconditionError("element not in partition domain");
  }

  /// Per-domain-position class index, aligned with domain().
  std::vector<std::size_t> labels() const
  {
    std::vector<std::size_t> out(domain_.size());
    for (std::size_t i = 0; i < classes_.size(); ++i)
      for (auto const &x : classes_[i])
        out[position(x)] = i;
    return out;
  }

  std::size_t position(T const &x) const
  {
    auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
    if (it == domain_.end() || !(*it == x))
      throw PreconditionError("element not in partition domain");
    return static_cast<std::size_t>(it - domain_.begin());
  }

  bool is_coarsest() const { return classes_.size() <= 1; }
  bool is_finest() const { return classes_.size() == domain_.size(); }
  /// Neither a single class nor all singletons.
  bool is_nontrivial() const { return !is_coarsest() && !is_finest(); }

  /// True if every class of *this lies inside a class of `other`.
  bool refines(Partition const &other) const
  {
    if (domain_ != other.domain_)
      return false;
    for (auto const &c : classes_) {
      auto k = other.class_of(c.front());
      for (auto const &x : c)
        if (!std::binary_search(other.classes_[k].begin(), other.classes_[k].end(), x))
          return false;
    }
    return true;
  }

  friend bool operator==(Partition const &, Partition const &) = default;
  friend auto operator<=>(Partition const &a, Partition const &b)
  { return a.classes_ <=> b.classes_; }

private:
  std::vector<Class> classes_;
  std::vector<T> domain_;
};

/// A family of (possibly overlapping) non-empty subsets of a finite universe.
template <typename T>
class SetFamily
{
public:
  SetFamily() = default;

  explicit SetFamily(std::vector<std::vector<T>> members) : members_(std::move(members))
  {
    for (auto &m : members_) {
      if (m.empty())
        throw PreconditionError("set family member is empty");
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      universe_.insert(universe_.end(), m.begin(), m.end());
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    std::sort(universe_.begin(), universe_.end());
    universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
  }

  std::vector<std::vector<T>> const &members() const { return members_; }
  std::vector<T> const &universe() const { return universe_; }
  std::size_t size() const { return members_.size(); }

  friend bool operator==(SetFamily const &, SetFamily const &) = default;

private:
  std::vector<std::vector<T>> members_;
  std::vector<T> universe_;
};

template <typename T>
struct SmashResult
{
  Partition<T> partition;
  /// The family was already pairwise disjoint (a partition of its union);
  /// otherwise it was a covering.
  bool disjoint = true;
};

/// Coarsest common refinement.
template <typename T>
Partition<T> meet(Partition<T> const &p, Partition<T> const &r)
{
  if (p.domain() != r.domain())
    throw PreconditionError("meet of partitions over different domains");
  auto lp = p.labels();
  auto lr = r.labels();
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::size_t>> keyed;
  for (std::size_t i = 0; i < lp.size(); ++i)
    keyed.push_back({{lp[i], lr[i]}, i});
  std::sort(keyed.begin(), keyed.end());

  std::vector<typename Partition<T>::Class> classes;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i == 0 || keyed[i].first != keyed[i - 1].first)
      classes.emplace_back();
    classes.back().push_back(p.domain()[keyed[i].second]);
  }
  return Partition<T>(std::move(classes));
}

namespace detail
{

template <typename T>
Partition<T> classes_from_union_find(std::vector<T> const &domain, UnionFind &uf)
{
  std::vector<typename Partition<T>::Class> classes;
  std::vector<std::size_t> slot(domain.size(), SIZE_MAX);
  for (std::size_t i = 0; i < domain.size(); ++i) {
    auto root = uf.find(i);
    if (slot[root] == SIZE_MAX) {
      slot[root] = classes.size();
      classes.emplace_back();
    }
    classes[slot[root]].push_back(domain[i]);
  }
  return Partition<T>(std::move(classes));
}

} // namespace detail

/// Finest common coarsening: transitive closure of class overlap.
template <typename T>
Partition<T> join(Partition<T> const &p, Partition<T> const &r)
{
  if (p.domain() != r.domain())
    throw PreconditionError("join of partitions over different domains");
  detail::UnionFind uf(p.domain().size());
  for (auto const *q : {&p, &r})
    for (auto const &c : q->classes())
      for (auto const &x : c)
        uf.unite(p.position(c.front()), p.position(x));
  return detail::classes_from_union_find(p.domain(), uf);
}

/// Merges members sharing elements until the result is disjoint.
template <typename T>
SmashResult<T> smash(SetFamily<T> const &family)
{
  auto const &universe = family.universe();
  auto pos = [&](T const &x) {
    return static_cast<std::size_t>(
      std::lower_bound(universe.begin(), universe.end(), x) - universe.begin());
  };

  detail::UnionFind uf(universe.size());
  std::size_t total = 0;
  for (auto const &m : family.members()) {
    total += m.size();
    for (auto const &x : m)
      uf.unite(pos(m.front()), pos(x));
  }
  SmashResult<T> result;
  result.partition = detail::classes_from_union_find(universe, uf);
  result.disjoint = total == universe.size();
  return result;
}

template <typename T, typename Fmt>
std::string format_partition(Partition<T> const &p, Fmt &&fmt)
{
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i)
      out += " | ";
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (j)
        out += ' ';
      out += fmt(p[i][j]);
    }
  }
  return out;
}

} // namespace korbit
