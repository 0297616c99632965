#include "pathperc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pathperc {

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::UST: return "ust";
    case TopologyKind::ER: return "er";
    case TopologyKind::Honeycomb2D: return "honeycomb";
    case TopologyKind::Complete: return "complete";
    case TopologyKind::SatelliteDisk: return "satellite";
  }
  return "unknown";
}

TopologyKind parse_topology_kind(const std::string& name) {
  if (name == "ust") return TopologyKind::UST;
  if (name == "er") return TopologyKind::ER;
  if (name == "honeycomb" || name == "hex") return TopologyKind::Honeycomb2D;
  if (name == "complete") return TopologyKind::Complete;
  if (name == "satellite") return TopologyKind::SatelliteDisk;
  throw std::invalid_argument("unknown topology kind '" + name + "'");
}

double RadialProfile::operator()(double distance, double radius) const {
  if (shape) return std::clamp(shape(distance, radius), 0.0, 1.0);
  const double x = distance / radius;
  return std::clamp(amplitude * std::exp(-x * x), 0.0, 1.0);
}

Network generate_ust(std::size_t n, Rng& rng) {
  Network net(n);
  if (n == 1) return net;
  std::vector<char> in_tree(n, 0);
  std::vector<NodeId> next(n, 0);
  const auto root = static_cast<NodeId>(uniform_index(rng, n));
  in_tree[root] = 1;
  for (NodeId start = 0; start < n; ++start) {
    // Random walk until the tree is hit; overwriting next[] erases loops.
    for (NodeId u = start; !in_tree[u]; u = next[u]) {
      auto v = static_cast<NodeId>(uniform_index(rng, n - 1));
      if (v >= u) ++v;
      next[u] = v;
    }
    for (NodeId u = start; !in_tree[u]; u = next[u]) {
      in_tree[u] = 1;
      net.add_link(u, next[u]);
    }
  }
  return net;
}

Network generate_er(std::size_t n, double mean_degree, Rng& rng) {
  if (n < 2) throw std::invalid_argument("ER graph needs at least 2 nodes");
  const double max_degree = static_cast<double>(n - 1);
  if (!(mean_degree >= 0.0) || mean_degree > max_degree) {
    throw std::invalid_argument("mean degree must lie in [0, N-1]");
  }
  const double p = mean_degree / max_degree;
  if (p >= 1.0) return generate_complete(n);
  Network net(n);
  if (p <= 0.0) return net;
  // Batagelj-Brandes skipping over the lower triangle.
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = uniform01(rng);
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) net.add_link(static_cast<NodeId>(v), static_cast<NodeId>(w));
  }
  return net;
}

Network generate_complete(std::size_t n) {
  if (n < 2) throw std::invalid_argument("complete graph needs at least 2 nodes");
  Network net(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) net.add_link(u, v);
  }
  return net;
}

namespace {

bool hexagonal_girth(std::size_t w, std::size_t h) {
  if (w >= 6 && h >= 4) return true;
  return h == 2 && w >= 8 && (w / 2) % 2 == 0;
}

}  // namespace

HoneycombLayout choose_honeycomb_layout(std::size_t n) {
  if (n < 8) throw std::invalid_argument("honeycomb needs at least 8 nodes (two cells)");
  const std::size_t rounded = std::max<std::size_t>(8, 4 * ((n + 2) / 4));
  HoneycombLayout best;
  bool best_hex = false;
  std::size_t best_gap = std::numeric_limits<std::size_t>::max();
  for (std::size_t h = 2; h * h <= rounded; h += 2) {
    if (rounded % h != 0) continue;
    const std::size_t w = rounded / h;
    if (w % 2 != 0 || w < 4) continue;
    const bool hex = hexagonal_girth(w, h);
    const std::size_t gap = w - h;
    if ((hex && !best_hex) || (hex == best_hex && gap < best_gap)) {
      best = {w, h, (h == 2 && hex) ? w / 2 : 0};
      best_hex = hex;
      best_gap = gap;
    }
  }
  return best;
}

Network generate_honeycomb(const HoneycombLayout& layout) {
  const std::size_t w = layout.width;
  const std::size_t h = layout.height;
  if (w < 4 || h < 2 || w % 2 != 0 || h % 2 != 0 || layout.twist % 2 != 0) {
    throw std::invalid_argument("honeycomb layout needs even width >= 4, even height >= 2, even twist");
  }
  Network net(w * h);
  auto id = [w](std::size_t x, std::size_t y) { return static_cast<NodeId>(y * w + x); };
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      net.add_link(id(x, y), id((x + 1) % w, y));
      if ((x + y) % 2 == 0) {
        if (y + 1 < h) {
          net.add_link(id(x, y), id(x, y + 1));
        } else {
          net.add_link(id(x, y), id((x + layout.twist) % w, 0));
        }
      }
    }
  }
  return net;
}

Network generate_honeycomb(std::size_t n) { return generate_honeycomb(choose_honeycomb_layout(n)); }

double downlink_link_probability(double p_i, double p_j, int photon_count) {
  const double single = std::clamp(p_i * p_j, 0.0, 1.0);
  if (single >= 1.0) return 1.0;
  return -std::expm1(photon_count * std::log1p(-single));
}

std::vector<double> disk_acceptance(const std::vector<Point2>& positions, const DiskParams& params) {
  if (!params.node_probabilities.empty()) {
    if (params.node_probabilities.size() != positions.size()) {
      throw std::invalid_argument("node probability count does not match node count");
    }
    for (double p : params.node_probabilities) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("node probability outside [0,1]");
    }
    return params.node_probabilities;
  }
  std::vector<double> prob;
  prob.reserve(positions.size());
  for (const auto& pt : positions) {
    prob.push_back(params.profile(std::hypot(pt.x, pt.y), params.radius_km));
  }
  return prob;
}

Topology generate_satellite_disk(std::size_t n, const DiskParams& params, Rng& rng) {
  if (n < 2) throw std::invalid_argument("satellite disk needs at least 2 nodes");
  if (!(params.radius_km > 0.0)) throw std::invalid_argument("disk radius must be positive");
  if (params.photon_count < 1) throw std::invalid_argument("photon count must be >= 1");

  Topology topo{Network(n), {}, {}};
  topo.positions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = params.radius_km * std::sqrt(uniform01(rng));
    const double phi = 2.0 * M_PI * uniform01(rng);
    topo.positions.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  topo.accept_prob = disk_acceptance(topo.positions, params);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double pi = downlink_link_probability(topo.accept_prob[u], topo.accept_prob[v],
                                                  params.photon_count);
      if (bernoulli(rng, pi)) topo.network.add_link(u, v);
    }
  }
  return topo;
}

Topology generate(const GeneratorSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case TopologyKind::UST: return {generate_ust(spec.node_count, rng), {}, {}};
    case TopologyKind::ER: return {generate_er(spec.node_count, spec.mean_degree, rng), {}, {}};
    case TopologyKind::Honeycomb2D: return {generate_honeycomb(spec.node_count), {}, {}};
    case TopologyKind::Complete: return {generate_complete(spec.node_count), {}, {}};
    case TopologyKind::SatelliteDisk: return generate_satellite_disk(spec.node_count, spec.disk, rng);
  }
  throw std::invalid_argument("unknown topology kind");
}

}  // namespace pathperc
