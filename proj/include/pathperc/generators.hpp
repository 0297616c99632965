#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pathperc/network.hpp"
#include "pathperc/random.hpp"

namespace pathperc {

enum class TopologyKind { UST, ER, Honeycomb2D, Complete, SatelliteDisk };

std::string to_string(TopologyKind kind);
/// Accepts "ust", "er", "honeycomb" (or "hex"), "complete", "satellite".
TopologyKind parse_topology_kind(const std::string& name);

/// Monotone-decreasing radial acceptance profile p(d) for the satellite disk.
/// The default is p0 * exp(-(d/R)^2).
struct RadialProfile {
  double amplitude = 0.1;
  std::function<double(double distance, double radius)> shape;  // empty: Gaussian

  double operator()(double distance, double radius) const;
};

struct DiskParams {
  double radius_km = 1.8e3;
  int photon_count = 50;
  RadialProfile profile;
  /// Overrides the radial profile when non-empty; one value per node.
  std::vector<double> node_probabilities;
};

struct GeneratorSpec {
  TopologyKind kind = TopologyKind::UST;
  std::size_t node_count = 1000;
  double mean_degree = 2.0;
  DiskParams disk;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// A generated topology. Satellite disks also carry node positions and the
/// per-node photon acceptance probabilities.
struct Topology {
  Network network;
  std::vector<Point2> positions;
  std::vector<double> accept_prob;
};

/// Uniform spanning tree of the complete graph K_N via Wilson's
/// loop-erased random walk.
Network generate_ust(std::size_t n, Rng& rng);

/// G(N, p) with p = mean_degree / (N - 1), using geometric skipping.
Network generate_er(std::size_t n, double mean_degree, Rng& rng);

Network generate_complete(std::size_t n);

/// Periodic brick-wall layout of the honeycomb lattice: width x height nodes,
/// each node linked to its row neighbours and to one vertical neighbour.
/// Crossing the top edge shifts the column by `twist`.
struct HoneycombLayout {
  std::size_t width = 0;
  std::size_t height = 0;
  std::size_t twist = 0;
  std::size_t node_count() const { return width * height; }
};

/// Layout for roughly n nodes. n is rounded to the nearest multiple of 4 (at
/// least 8). Among the even factorisations, layouts whose shortest cycle is a
/// hexagon are preferred, then the squarest.
HoneycombLayout choose_honeycomb_layout(std::size_t n);
Network generate_honeycomb(const HoneycombLayout& layout);
Network generate_honeycomb(std::size_t n);

/// Link probability for one pair under the downlink model,
/// 1 - (1 - p_i p_j)^n_p.
double downlink_link_probability(double p_i, double p_j, int photon_count);

/// Nodes uniform in a disk; initial links drawn pairwise with
/// downlink_link_probability.
Topology generate_satellite_disk(std::size_t n, const DiskParams& params, Rng& rng);

/// Acceptance probabilities for nodes at the given positions.
std::vector<double> disk_acceptance(const std::vector<Point2>& positions, const DiskParams& params);

Topology generate(const GeneratorSpec& spec, Rng& rng);

}  // namespace pathperc
