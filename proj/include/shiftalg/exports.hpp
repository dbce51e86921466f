#ifndef SHIFTALG_EXPORTS_HPP
#define SHIFTALG_EXPORTS_HPP

#include <string>

#include "shiftalg/bridges.hpp"
#include "shiftalg/stone.hpp"

namespace shiftalg {

std::string dot_graph(const Graph& g);
std::string dot_ultragraph(const Ultragraph& u, const SubshiftPtr& s, std::size_t budget);
// atom refinement tree between two canonical depths
std::string dot_atom_tree(const SubshiftPtr& s, std::size_t from_depth, std::size_t to_depth,
                          std::size_t window);
// truncated groupoid: sigma-hat arrows from depth-d atoms into depth-(d-1) atoms
std::string dot_groupoid(const SubshiftPtr& s, std::size_t depth, std::size_t window);

std::string json_atoms(const GenSetPtr& gens);
std::string json_fiber(const SubshiftPtr& s, const OTWPoint& x, std::size_t depth,
                       std::size_t window);

}  // namespace shiftalg

#endif
