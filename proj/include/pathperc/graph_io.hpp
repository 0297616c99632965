#pragma once

#include <iosfwd>
#include <vector>

#include "pathperc/generators.hpp"
#include "pathperc/network.hpp"

namespace pathperc {

/// Edge list: header "# N=<n>", then one "u v" line per edge with u < v,
/// sorted, 0-indexed.
void write_edge_list(std::ostream& out, const Network& net);
/// Throws std::runtime_error on a missing header or malformed line.
Network read_edge_list(std::istream& in);

/// Satellite nodes as CSV "node,x,y,p".
void write_positions_csv(std::ostream& out, const std::vector<Point2>& positions,
                         const std::vector<double>& accept_prob);
/// Reads the per-node acceptance column p from a positions CSV.
std::vector<double> read_acceptance_csv(std::istream& in);

}  // namespace pathperc
