#include "pathperc/graph_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pathperc/csv.hpp"

namespace pathperc {

void write_edge_list(std::ostream& out, const Network& net) {
  out << "# N=" << net.node_count() << '\n';
  std::vector<NodeId> nbrs;
  for (NodeId u = 0; u < net.node_count(); ++u) {
    nbrs.assign(net.neighbors(u).begin(), net.neighbors(u).end());
    std::sort(nbrs.begin(), nbrs.end());
    for (NodeId v : nbrs) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
}

Network read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# N=", 0) != 0) {
    throw std::runtime_error("edge list must start with '# N=<n>'");
  }
  const long long n = std::stoll(line.substr(4));
  if (n < 1) throw std::runtime_error("edge list header has non-positive N");
  Network net(static_cast<std::size_t>(n));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    if (!(fields >> u >> v) || u < 0 || v < 0 || u >= n || v >= n) {
      throw std::runtime_error("bad edge on line " + std::to_string(line_no));
    }
    net.add_link(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return net;
}

void write_positions_csv(std::ostream& out, const std::vector<Point2>& positions,
                         const std::vector<double>& accept_prob) {
  out << "node,x,y,p\n";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    out << i << ',' << format_real(positions[i].x) << ',' << format_real(positions[i].y) << ','
        << format_real(accept_prob[i]) << '\n';
  }
}

std::vector<double> read_acceptance_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "node,x,y,p") {
    throw std::runtime_error("positions CSV must have header node,x,y,p");
  }
  std::vector<double> prob;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != 4) throw std::runtime_error("positions CSV row needs 4 columns: " + line);
    const auto node = std::stoull(cells[0]);
    if (node != prob.size()) throw std::runtime_error("positions CSV nodes must be 0..N-1 in order");
    prob.push_back(std::stod(cells[3]));
  }
  return prob;
}

}  // namespace pathperc
