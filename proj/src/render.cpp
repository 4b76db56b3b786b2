#include "korbit/render.hpp"

#include <algorithm>
#include <map>

#include "korbit/errors.hpp"

namespace korbit
{

namespace
{

/// Left coset label of every element of g: the least element of x*A.
std::vector<std::size_t> coset_labels(PermGroup const &g, PermGroup const &a)
{
  std::vector<std::size_t> label(g.order(), PermGroup::npos);
  std::size_t next = 0;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (label[i] != PermGroup::npos)
      continue;
    for (auto const &h : a.elements())
      label[g.index_of(g.elements()[i] * h)] = next;
    ++next;
  }
  return label;
}

} // namespace

std::string render_norbit(PermGroup const &g, std::vector<PermGroup> const &chain)
{
  if (chain.empty() || !(chain.back() == g))
    throw PreconditionError("subgroup chain must end at the group itself");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (chain[i].degree() != g.degree() || !chain[i].is_subgroup_of(chain[i + 1]))
      throw PreconditionError("subgroup chain is not nested at position " +
                              std::to_string(i + 1));

  std::size_t const levels = chain.size() - 1;
  std::vector<std::vector<std::size_t>> labels;
  for (std::size_t l = 0; l < levels; ++l)
    labels.push_back(coset_labels(g, chain[l]));

  // elements are sorted, so labels are assigned in order of least row
  std::vector<std::size_t> rows(g.order());
  for (std::size_t i = 0; i < rows.size(); ++i)
    rows[i] = i;
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    for (std::size_t l = levels; l-- > 0;)
      if (labels[l][a] != labels[l][b])
        return labels[l][a] < labels[l][b];
    return false;
  });

  std::size_t const n = g.degree();
  auto columns = orbits_on_points(chain.front());
  bool wide = n > 9;
  auto render_row = [&](Permutation const &e) {
    std::string s;
    for (std::size_t p = 0; p < n; ++p) {
      if (p > 0) {
        bool split = columns.class_of(static_cast<Point>(p)) !=
                     columns.class_of(static_cast<Point>(p - 1));
        if (split)
          s += ' ';
        else if (wide)
          s += ',';
      }
      s += point_label(e[p]);
    }
    return s;
  };

  std::vector<std::string> text;
  for (auto r : rows)
    text.push_back(render_row(g.elements()[r]));
  std::size_t width = 0;
  for (auto const &t : text)
    width = std::max(width, t.size());
  auto border = [&](char c) { return "+" + std::string(width + 2, c) + "+\n"; };

  std::string out = border('-');
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      std::size_t changed = levels;
      for (std::size_t l = 0; l < levels; ++l)
        if (labels[l][rows[i]] != labels[l][rows[i - 1]])
          changed = l;
      if (changed < levels)
        out += border(changed > 0 ? '=' : '-');
    }
    out += "| " + text[i] + std::string(width - text[i].size(), ' ') + " |\n";
  }
  out += border('-');
  return out;
}

} // namespace korbit
