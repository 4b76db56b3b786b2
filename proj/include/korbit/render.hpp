#pragma once

#include <string>
#include <vector>

#include "korbit/perm_group.hpp"

namespace korbit
{

/// Draws the n-orbit G<1..n> as a matrix, one row per element. Rows are
/// grouped into bordered cells by the left cosets of every subgroup in the
/// chain; the chain must be nested and end at G. Cell borders between
/// cosets of the first subgroup are drawn with '-', coarser ones with '='.
/// Columns are spaced by the point orbits of the first subgroup.
std::string render_norbit(PermGroup const &g, std::vector<PermGroup> const &chain);

} // namespace korbit
