#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "i3kit/stats.hpp"

namespace i3kit {

/// Journals as nodes; an edge joins two units whose citation distributions
/// are NOT significantly different.
struct HomogeneityGraph {
  std::vector<std::string> nodes;              // canonical order
  std::set<std::pair<size_t, size_t>> edges;   // index pairs, first < second

  size_t size() const { return nodes.size(); }
  bool has_edge(size_t a, size_t b) const {
    if (a > b) std::swap(a, b);
    return edges.count({a, b}) > 0;
  }
  std::vector<size_t> degrees() const;
  std::vector<std::vector<size_t>> adjacency() const;
};

/// Complement of the significant relation: edge (i,j) iff not significant.
HomogeneityGraph build_graph(const PairwiseMatrix& matrix);

/// Largest k such that the node survives in the k-core (min-degree peeling).
std::map<std::string, int> core_numbers(const HomogeneityGraph& graph);

/// Pajek .net text: `*Vertices n`, 1-based `i "label"` lines, `*Edges`,
/// `i j` lines with i < j. LF endings, embedded quotes doubled.
std::string export_pajek(const HomogeneityGraph& graph);

/// Undirected DOT `graph` block in the same canonical order.
std::string export_dot(const HomogeneityGraph& graph);

struct LayoutResult {
  std::map<std::string, Eigen::Vector2d> positions;
  std::vector<double> energy_trace;  // total stress after each iteration
};

/// Kamada-Kawai stress minimization over shortest-path distances, one
/// gradient-descent sweep with backtracking per iteration (energy never
/// increases). Components are laid out independently and packed on a row,
/// largest first. Deterministic for a fixed seed.
LayoutResult kamada_kawai_layout(const HomogeneityGraph& graph, int iterations, uint64_t seed);

/// CSV `label,x,y` with six decimals, nodes in canonical order.
std::string layout_to_csv(const HomogeneityGraph& graph, const LayoutResult& layout);

}  // namespace i3kit
