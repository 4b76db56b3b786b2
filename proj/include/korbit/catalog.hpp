#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "korbit/perm_group.hpp"

namespace korbit
{

struct CatalogEntry
{
  std::string id;
  PermGroup group;
  bool transitive = false;
  /// Classical primitivity (false for intransitive groups).
  bool primitive = false;
  bool abelian = false;

  /// Primitive and non-Abelian.
  bool paper_primitive() const { return primitive && !abelian; }
};

/// Groups of one degree, pairwise non-conjugate in S_n when generated.
struct GroupCatalog
{
  std::size_t degree = 0;
  /// "generated" or "imported".
  std::string provenance = "generated";
  std::vector<CatalogEntry> entries;

  CatalogEntry const &find(std::string_view id) const;
};

bool operator==(CatalogEntry const &a, CatalogEntry const &b);
bool operator==(GroupCatalog const &a, GroupCatalog const &b);

/// Highest degree for which catalogs are generated rather than imported.
inline constexpr std::size_t kMaxGeneratedDegree = 7;

/// All transitive subgroups of S_n up to conjugacy, ids "t<n>.<i>", ordered
/// by order and then by the lexicographically least conjugate's element list.
GroupCatalog transitive_catalog(std::size_t n, Limits const &limits = {});

/// Every subgroup of S_n up to conjugacy, ids "s<n>.<i>", same ordering.
GroupCatalog subgroup_catalog(std::size_t n, Limits const &limits = {});

/// Catalog file:
///   degree n
///   provenance generated
///   id | order | transitive:0/1 | gen, gen, ...
/// A file without a provenance line is imported. Imported entries may also
/// use the short form "id | gen, gen, ...".
std::string save_catalog(GroupCatalog const &c);
GroupCatalog load_catalog(std::string_view text, Limits const &limits = {});
GroupCatalog read_catalog_file(std::string const &path, Limits const &limits = {});
void write_catalog_file(std::string const &path, GroupCatalog const &c);

CatalogEntry make_entry(std::string id, PermGroup group);

} // namespace korbit
