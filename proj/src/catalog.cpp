#include "korbit/catalog.hpp"

#include <set>
#include <sstream>

#include "korbit/errors.hpp"
#include "korbit/subgroups.hpp"

namespace korbit
{

CatalogEntry const &GroupCatalog::find(std::string_view id) const
{
  for (auto const &e : entries)
    if (e.id == id)
      return e;
  throw PreconditionError("no catalog entry with id " + std::string(id));
}

bool operator==(CatalogEntry const &a, CatalogEntry const &b)
{
  return a.id == b.id && a.group == b.group &&
         a.group.generators() == b.group.generators() && a.transitive == b.transitive &&
         a.primitive == b.primitive && a.abelian == b.abelian;
}

bool operator==(GroupCatalog const &a, GroupCatalog const &b)
{
  return a.degree == b.degree && a.provenance == b.provenance && a.entries == b.entries;
}

CatalogEntry make_entry(std::string id, PermGroup group)
{
  CatalogEntry e;
  e.id = std::move(id);
  e.transitive = group.is_transitive();
  e.primitive = e.transitive && is_primitive(group, Convention::classical);
  e.abelian = group.is_abelian();
  e.group = std::move(group);
  return e;
}

namespace
{

GroupCatalog from_enumeration(std::size_t n, bool only_transitive, char prefix,
                              Limits const &limits)
{
  if (n < 1)
    throw PreconditionError("catalog degree must be positive");
  if (n > kMaxGeneratedDegree)
    throw PreconditionError("catalogs are generated only up to degree " +
                            std::to_string(kMaxGeneratedDegree) +
                            "; import a generator file for degree " + std::to_string(n));
  Limits relaxed = limits;
  relaxed.max_subgroup_order = std::max(limits.max_subgroup_order, std::size_t{5040});
  SubgroupEnumeration subs(symmetric_group(n, limits), relaxed);

  GroupCatalog c;
  c.degree = n;
  c.provenance = "generated";
  for (auto const &cls : subs.classes()) {
    auto g = subs.to_group(cls);
    if (only_transitive && !g.is_transitive())
      continue;
    auto id = std::string(1, prefix) + std::to_string(n) + "." +
              std::to_string(c.entries.size() + 1);
    c.entries.push_back(make_entry(std::move(id), std::move(g)));
  }
  return c;
}

std::string trim(std::string s)
{
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(std::string const &s, char sep, bool outside_parens)
{
  std::vector<std::string> out{""};
  int depth = 0;
  for (char ch : s) {
    if (ch == '(' || ch == '[')
      ++depth;
    else if (ch == ')' || ch == ']')
      --depth;
    if (ch == sep && (!outside_parens || depth == 0))
      out.emplace_back();
    else
      out.back() += ch;
  }
  for (auto &x : out)
    x = trim(x);
  return out;
}

} // namespace

GroupCatalog transitive_catalog(std::size_t n, Limits const &limits)
{ return from_enumeration(n, true, 't', limits); }

GroupCatalog subgroup_catalog(std::size_t n, Limits const &limits)
{ return from_enumeration(n, false, 's', limits); }

std::string save_catalog(GroupCatalog const &c)
{
  std::string out = "degree " + std::to_string(c.degree) + "\n";
  out += "provenance " + c.provenance + "\n";
  for (auto const &e : c.entries) {
    out += e.id + " | " + std::to_string(e.group.order()) + " | transitive:" +
           (e.transitive ? "1" : "0") + " |";
    auto const &gens = e.group.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
      out += (i ? ", " : " ") + gens[i].to_cycle_string();
    out += "\n";
  }
  return out;
}

GroupCatalog load_catalog(std::string_view text, Limits const &limits)
{
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  GroupCatalog c;
  bool have_degree = false, have_provenance = false;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto pos = line.find('#'); pos != std::string::npos)
      line.erase(pos);
    line = trim(line);
    if (line.empty())
      continue;
    auto where = "line " + std::to_string(line_no) + ": ";
    if (!have_degree) {
      std::istringstream ls(line);
      std::string word;
      long long n = 0;
      std::string rest;
      if (!(ls >> word >> n) || word != "degree" || n < 1 ||
          n > static_cast<long long>(kMaxDegree) || (ls >> rest))
        throw ParseError(where + "expected \"degree n\"");
      c.degree = static_cast<std::size_t>(n);
      have_degree = true;
      continue;
    }
    if (line.rfind("provenance", 0) == 0 && line.find('|') == std::string::npos) {
      if (have_provenance || !c.entries.empty())
        throw ParseError(where + "provenance must appear once, before the entries");
      auto value = trim(line.substr(10));
      if (value != "generated" && value != "imported")
        throw ParseError(where + "unknown provenance \"" + value + "\"");
      c.provenance = value;
      have_provenance = true;
      continue;
    }

    auto fields = split(line, '|', false);
    if (fields.size() != 4 && fields.size() != 2)
      throw ParseError(where + "expected \"id | order | transitive:0/1 | generators\"");
    auto const &id = fields[0];
    if (id.empty() || id.find_first_of(" \t") != std::string::npos)
      throw ParseError(where + "malformed id \"" + id + "\"");
    if (!ids.insert(id).second)
      throw ParseError(where + "duplicate id " + id);

    std::vector<Permutation> gens;
    for (auto const &g : split(fields.back(), ',', true)) {
      if (g.empty())
        continue;
      try {
        gens.push_back(parse_permutation(g, c.degree));
      } catch (ParseError const &e) {
        throw ParseError(where + "entry " + id + ": " + e.what());
      }
    }
    auto entry = make_entry(id, close_group(std::move(gens), c.degree, limits));
    if (fields.size() == 4) {
      if (fields[1] != std::to_string(entry.group.order()))
        throw ParseError(where + "entry " + id + " states order " + fields[1] +
                         " but generates a group of order " +
                         std::to_string(entry.group.order()));
      if (fields[2] != "transitive:0" && fields[2] != "transitive:1")
        throw ParseError(where + "malformed transitivity field \"" + fields[2] + "\"");
      if ((fields[2] == "transitive:1") != entry.transitive)
        throw ParseError(where + "entry " + id + " has a wrong transitivity flag");
    }
    c.entries.push_back(std::move(entry));
  }
  if (!have_degree)
    throw ParseError("catalog has no \"degree n\" line");
  if (!have_provenance)
    c.provenance = "imported";
  return c;
}

GroupCatalog read_catalog_file(std::string const &path, Limits const &limits)
{
  try {
    return load_catalog(read_text_file(path), limits);
  } catch (ParseError const &e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_catalog_file(std::string const &path, GroupCatalog const &c)
{ write_text_file(path, save_catalog(c)); }

} // namespace korbit
