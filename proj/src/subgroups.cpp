#include "korbit/subgroups.hpp"

#include <algorithm>
#include <unordered_set>

#include "korbit/errors.hpp"
#include "korbit/permutation.hpp"

namespace korbit
{

namespace
{

bool is_prime_power(std::uint32_t n)
{ return n > 1 && prime_factors(n).size() == 1; }

bool order_then_lex(IndexSet const &a, IndexSet const &b)
{
  auto ca = a.count(), cb = b.count();
  if (ca != cb)
    return ca < cb;
  return lex_less(a, b);
}

} // namespace

SubgroupEnumeration::SubgroupEnumeration(PermGroup const &g, Limits const &limits)
{
  if (g.order() > limits.max_subgroup_order)
    throw ResourceLimitError("max_subgroup_order", "--max-subgroup-order",
                             limits.max_subgroup_order,
                             "subgroup enumeration of a group of order " +
                               std::to_string(g.order()));

  table_ = std::make_shared<GroupTable>(g);
  auto const &t = *table_;
  std::size_t const n = t.size();

  // One generator per cyclic subgroup of prime-power order.
  std::vector<std::uint32_t> candidates;
  std::vector<std::int32_t> cyclic_id(n, -1);
  for (std::uint32_t e = 1; e < n; ++e) {
    if (cyclic_id[e] >= 0 || !is_prime_power(t.order_of(e)))
      continue;
    auto id = static_cast<std::int32_t>(candidates.size());
    candidates.push_back(e);
    std::uint32_t p = e;
    for (std::uint32_t j = 1; j < t.order_of(e); ++j, p = t.mul(p, e))
      if (t.order_of(p) == t.order_of(e))
        cyclic_id[p] = id;
  }

  std::unordered_set<IndexSet, IndexSetHash> seen;

  auto register_class = [&](IndexSet const &k, std::vector<std::uint32_t> const &gens) {
    IndexSet best = k;
    std::uint32_t best_x = 0;
    std::vector<IndexSet> conjugates;
    conjugates.reserve(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      conjugates.push_back(t.conjugate(k, x));
      if (lex_less(conjugates.back(), best)) {
        best = conjugates.back();
        best_x = x;
      }
    }
    SubgroupClass c;
    c.members = best;
    for (auto s : gens)
      c.generators.push_back(t.conj(best_x, s));
    c.normalizer = IndexSet(n);
    auto const inv_best = t.inv(best_x);
    for (std::uint32_t x = 0; x < n; ++x) {
      if (conjugates[x] == best)
        c.normalizer.set(t.mul(x, inv_best));
      seen.insert(std::move(conjugates[x]));
    }
    c.class_size = n / c.normalizer.count();
    classes_.push_back(std::move(c));
  };

  IndexSet trivial(n);
  trivial.set(0);
  register_class(trivial, {});

  for (std::size_t i = 0; i < classes_.size(); ++i) {
    // Candidates are taken up to conjugation by the normalizer of the
    // current representative.
    auto const h = classes_[i].members;
    auto const h_gens = classes_[i].generators;
    auto n_gens = t.greedy_generators(classes_[i].normalizer);

    detail::UnionFind uf(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c)
      for (auto x : n_gens)
        uf.unite(c, static_cast<std::size_t>(cyclic_id[t.conj(x, candidates[c])]));

    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (uf.find(c) != c || h.test(candidates[c]))
        continue;
      auto k = t.extend(h, h_gens, candidates[c]);
      if (seen.count(k))
        continue;
      auto gens = h_gens;
      gens.push_back(candidates[c]);
      register_class(k, gens);
    }
  }

  std::sort(classes_.begin(), classes_.end(), [](auto const &a, auto const &b) {
    return order_then_lex(a.members, b.members);
  });
}

std::vector<IndexSet> const &SubgroupEnumeration::all() const
{
  std::call_once(*all_once_, [this] { expand_all(); });
  return all_;
}

void SubgroupEnumeration::expand_all() const
{
  auto const &t = *table_;
  for (auto const &c : classes_) {
    std::unordered_set<IndexSet, IndexSetHash> conj;
    for (std::uint32_t x = 0; x < t.size(); ++x)
      conj.insert(t.conjugate(c.members, x));
    all_.insert(all_.end(), conj.begin(), conj.end());
  }
  std::sort(all_.begin(), all_.end(), order_then_lex);
}

std::vector<PermGroup> enumerate_subgroups(PermGroup const &g, Limits const &limits)
{
  SubgroupEnumeration e(g, limits);
  std::vector<PermGroup> out;
  for (auto const &c : e.classes())
    out.push_back(e.to_group(c));
  return out;
}

} // namespace korbit
