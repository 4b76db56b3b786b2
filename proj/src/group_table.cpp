#include "korbit/group_table.hpp"

#include <algorithm>
#include <bit>

#include "korbit/errors.hpp"

namespace korbit
{

namespace
{

constexpr std::size_t kTableLimit = 5200;

std::uint64_t pack(Permutation const &p)
{
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < p.degree(); ++i)
    key |= std::uint64_t{p[i]} << (4 * i);
  return key;
}

} // namespace

std::size_t IndexSet::count() const
{
  std::size_t c = 0;
  for (auto w : words_)
    c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::uint32_t> IndexSet::indices() const
{
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    auto bits = words_[w];
    while (bits) {
      auto b = static_cast<std::size_t>(std::countr_zero(bits));
      out.push_back(static_cast<std::uint32_t>(w * 64 + b));
      bits &= bits - 1;
    }
  }
  return out;
}

bool IndexSet::is_subset_of(IndexSet const &other) const
{
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~other.words_[w])
      return false;
  return true;
}

IndexSet IndexSet::operator&(IndexSet const &other) const
{
  IndexSet r(*this);
  for (std::size_t w = 0; w < words_.size(); ++w)
    r.words_[w] &= other.words_[w];
  return r;
}

bool lex_less(IndexSet const &a, IndexSet const &b)
{
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    auto x = a.words_[w], y = b.words_[w];
    if (x == y)
      continue;
    // The smallest index present in exactly one set decides.
    auto diff = x ^ y;
    auto low = diff & (~diff + 1);
    return (x & low) != 0;
  }
  return false;
}

std::size_t IndexSetHash::operator()(IndexSet const &s) const noexcept
{
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto w : s.words())
    h = (h ^ w) * 0x100000001b3ull + (h >> 29);
  return h;
}

GroupTable::GroupTable(PermGroup group) : group_(std::move(group))
{
  std::size_t const n = size();
  small_degree_ = group_.degree() <= 16;
  if (small_degree_) {
    keys_.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
      keys_.emplace_back(pack(element(i)), i);
    std::sort(keys_.begin(), keys_.end());
  }

  inverse_.resize(n);
  orders_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    inverse_[i] = lookup(element(i).inverse());
    orders_[i] = static_cast<std::uint32_t>(element(i).order());
  }

  if (n <= kTableLimit) {
    table_.resize(n * n);
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = 0; b < n; ++b)
        table_[a * n + b] = static_cast<std::uint16_t>(lookup(element(a) * element(b)));
  }
}

std::uint32_t GroupTable::lookup(Permutation const &p) const
{
  if (small_degree_) {
    auto key = pack(p);
    auto it = std::lower_bound(keys_.begin(), keys_.end(),
                               std::pair<std::uint64_t, std::uint32_t>{key, 0});
    if (it == keys_.end() || it->first != key)
      throw PreconditionError("permutation " + p.to_cycle_string() +
                              " is not in the group");
    return it->second;
  }
  auto idx = group_.index_of(p);
  if (idx == PermGroup::npos)
    throw PreconditionError("permutation " + p.to_cycle_string() +
                            " is not in the group");
  return static_cast<std::uint32_t>(idx);
}

std::uint32_t GroupTable::index_of(Permutation const &p) const { return lookup(p); }

std::uint32_t GroupTable::mul(std::uint32_t a, std::uint32_t b) const
{
  if (!table_.empty())
    return table_[a * size() + b];
  return lookup(element(a) * element(b));
}

IndexSet GroupTable::closure(std::vector<std::uint32_t> const &gens) const
{
  IndexSet members(size());
  members.set(0);
  std::vector<std::uint32_t> h_gens;
  IndexSet current = members;
  for (auto g : gens) {
    if (current.test(g))
      continue;
    current = extend(current, h_gens, g);
    h_gens.push_back(g);
  }
  return current;
}

IndexSet GroupTable::extend(IndexSet const &h, std::vector<std::uint32_t> const &h_gens,
                            std::uint32_t extra) const
{
  // Right cosets H*t are added whole; closing the coset representatives
  // under right multiplication by every generator closes the group.
  auto sub = h.indices();
  IndexSet members = h;
  std::vector<std::uint32_t> gens = h_gens;
  gens.push_back(extra);
  std::vector<std::uint32_t> reps{0};
  for (std::size_t r = 0; r < reps.size(); ++r) {
    for (auto s : gens) {
      auto t = mul(reps[r], s);
      if (members.test(t))
        continue;
      for (auto x : sub)
        members.set(mul(x, t));
      reps.push_back(t);
    }
  }
  return members;
}

IndexSet GroupTable::conjugate(IndexSet const &h, std::uint32_t x) const
{
  IndexSet out(size());
  auto xi = inverse_[x];
  for (auto e : h.indices())
    out.set(mul(mul(x, e), xi));
  return out;
}

PermGroup GroupTable::to_group(IndexSet const &members,
                               std::vector<std::uint32_t> const &gens) const
{
  std::vector<Permutation> elements;
  for (auto i : members.indices())
    elements.push_back(element(i));
  std::vector<Permutation> g;
  for (auto i : gens)
    g.push_back(element(i));
  if (g.empty() && members.count() > 1)
    for (auto i : greedy_generators(members))
      g.push_back(element(i));
  return PermGroup::from_sorted_elements(group_.degree(), std::move(g),
                                         std::move(elements));
}

IndexSet GroupTable::members_of(PermGroup const &sub) const
{
  IndexSet out(size());
  for (auto const &e : sub.elements())
    out.set(lookup(e));
  return out;
}

std::vector<std::uint32_t> GroupTable::generators_of(PermGroup const &sub) const
{
  std::vector<std::uint32_t> out;
  for (auto const &s : sub.generators())
    out.push_back(lookup(s));
  return out;
}

std::vector<std::uint32_t> GroupTable::greedy_generators(IndexSet const &members) const
{
  std::vector<std::uint32_t> gens;
  IndexSet current(size());
  current.set(0);
  for (auto i : members.indices()) {
    if (current.test(i))
      continue;
    current = extend(current, gens, i);
    gens.push_back(i);
  }
  return gens;
}

} // namespace korbit
