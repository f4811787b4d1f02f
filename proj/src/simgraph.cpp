#include "i3kit/simgraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "i3kit/prng.hpp"
#include "i3kit/text.hpp"

namespace i3kit {

namespace {

constexpr double kTwoPi = 6.283185307179586;

std::string quote_pajek(const std::string& label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

std::string quote_dot(const std::string& label) {
  std::string out = "\"";
  for (char c : label) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out += '"';
  return out;
}

std::string format_coord(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

/// BFS hop distances from every node of one component.
Eigen::MatrixXd component_distances(const std::vector<std::vector<size_t>>& adjacency,
                                    const std::vector<size_t>& component) {
  const size_t n = component.size();
  std::map<size_t, size_t> local;  // graph index -> component index
  for (size_t i = 0; i < n; ++i) local[component[i]] = i;

  Eigen::MatrixXd dist(n, n);
  dist.setConstant(-1.0);
  for (size_t s = 0; s < n; ++s) {
    std::deque<size_t> queue{component[s]};
    dist(s, s) = 0.0;
    while (!queue.empty()) {
      size_t v = queue.front();
      queue.pop_front();
      size_t vi = local[v];
      for (size_t w : adjacency[v]) {
        size_t wi = local[w];
        if (dist(s, wi) < 0.0) {
          dist(s, wi) = dist(s, vi) + 1.0;
          queue.push_back(w);
        }
      }
    }
  }
  return dist;
}

struct ComponentLayout {
  std::vector<size_t> members;  // graph indices
  Eigen::MatrixX2d positions;
};

double stress_energy(const Eigen::MatrixX2d& pos, const Eigen::MatrixXd& dist) {
  double energy = 0.0;
  const Eigen::Index n = pos.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = dist(i, j);
      const double len = (pos.row(i) - pos.row(j)).norm();
      const double diff = len - d;
      energy += diff * diff / (d * d);
    }
  }
  return energy;
}

void stress_gradient(const Eigen::MatrixX2d& pos, const Eigen::MatrixXd& dist,
                     Eigen::MatrixX2d& grad) {
  const Eigen::Index n = pos.rows();
  grad.setZero(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double d = dist(i, j);
      Eigen::RowVector2d delta = pos.row(i) - pos.row(j);
      double len = delta.norm();
      if (len < 1e-12) {
        // coincident points: push apart along a fixed axis, scaled by index
        delta = Eigen::RowVector2d(1e-6 * static_cast<double>(j - i), 1e-6);
        len = delta.norm();
      }
      const Eigen::RowVector2d g = (2.0 / (d * d)) * (len - d) / len * delta;
      grad.row(i) += g;
      grad.row(j) -= g;
    }
  }
}

}  // namespace

std::vector<size_t> HomogeneityGraph::degrees() const {
  std::vector<size_t> deg(nodes.size(), 0);
  for (const auto& [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

std::vector<std::vector<size_t>> HomogeneityGraph::adjacency() const {
  std::vector<std::vector<size_t>> adj(nodes.size());
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

HomogeneityGraph build_graph(const PairwiseMatrix& matrix) {
  HomogeneityGraph graph;
  graph.nodes = matrix.labels;
  for (size_t i = 0; i < matrix.size(); ++i) {
    for (size_t j = i + 1; j < matrix.size(); ++j) {
      if (!matrix.significant(i, j)) graph.edges.insert({i, j});
    }
  }
  return graph;
}

std::map<std::string, int> core_numbers(const HomogeneityGraph& graph) {
  const size_t n = graph.size();
  std::vector<size_t> degree = graph.degrees();
  auto adjacency = graph.adjacency();
  std::vector<bool> removed(n, false);
  std::vector<int> core(n, 0);

  // min-degree peeling; n is small (journal counts), O(n^2) is fine
  int level = 0;
  for (size_t step = 0; step < n; ++step) {
    size_t best = n;
    for (size_t v = 0; v < n; ++v) {
      if (removed[v]) continue;
      if (best == n || degree[v] < degree[best]) best = v;
    }
    level = std::max(level, static_cast<int>(degree[best]));
    core[best] = level;
    removed[best] = true;
    for (size_t w : adjacency[best]) {
      if (!removed[w] && degree[w] > 0) --degree[w];
    }
  }

  std::map<std::string, int> out;
  for (size_t v = 0; v < n; ++v) out[graph.nodes[v]] = core[v];
  return out;
}

std::string export_pajek(const HomogeneityGraph& graph) {
  std::string out = "*Vertices " + std::to_string(graph.size()) + "\n";
  for (size_t i = 0; i < graph.size(); ++i)
    out += std::to_string(i + 1) + " " + quote_pajek(graph.nodes[i]) + "\n";
  out += "*Edges\n";
  for (const auto& [a, b] : graph.edges)
    out += std::to_string(a + 1) + " " + std::to_string(b + 1) + "\n";
  return out;
}

std::string export_dot(const HomogeneityGraph& graph) {
  std::string out = "graph homogeneity {\n";
  for (const auto& node : graph.nodes) out += "  " + quote_dot(node) + ";\n";
  for (const auto& [a, b] : graph.edges)
    out += "  " + quote_dot(graph.nodes[a]) + " -- " + quote_dot(graph.nodes[b]) + ";\n";
  out += "}\n";
  return out;
}

LayoutResult kamada_kawai_layout(const HomogeneityGraph& graph, int iterations, uint64_t seed) {
  if (iterations < 1) throw std::invalid_argument("kamada_kawai_layout: iterations >= 1");
  LayoutResult result;
  const size_t n = graph.size();
  if (n == 0) return result;

  auto adjacency = graph.adjacency();

  // connected components, members in node order
  std::vector<int> component_of(n, -1);
  std::vector<std::vector<size_t>> components;
  for (size_t v = 0; v < n; ++v) {
    if (component_of[v] >= 0) continue;
    std::vector<size_t> members;
    std::deque<size_t> queue{v};
    component_of[v] = static_cast<int>(components.size());
    while (!queue.empty()) {
      size_t u = queue.front();
      queue.pop_front();
      members.push_back(u);
      for (size_t w : adjacency[u]) {
        if (component_of[w] < 0) {
          component_of[w] = static_cast<int>(components.size());
          queue.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }

  // largest component first; ties by smallest member index
  std::vector<size_t> order(components.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (components[a].size() != components[b].size())
      return components[a].size() > components[b].size();
    return components[a][0] < components[b][0];
  });

  SplitMix64 rng(seed);
  std::vector<ComponentLayout> layouts;
  std::vector<Eigen::MatrixXd> distances;
  for (size_t ci : order) {
    const auto& members = components[ci];
    ComponentLayout layout;
    layout.members = members;
    const size_t m = members.size();
    layout.positions.resize(m, 2);
    Eigen::MatrixXd dist = component_distances(adjacency, members);
    const double diameter = dist.maxCoeff();
    const double radius = std::max(1.0, diameter / 2.0);
    for (size_t i = 0; i < m; ++i) {
      // circle by node order plus a small seeded jitter
      const double angle = kTwoPi * static_cast<double>(i) / static_cast<double>(m);
      layout.positions(i, 0) = radius * std::cos(angle) + 0.01 * (rng.next_unit() - 0.5);
      layout.positions(i, 1) = radius * std::sin(angle) + 0.01 * (rng.next_unit() - 0.5);
    }
    layouts.push_back(std::move(layout));
    distances.push_back(std::move(dist));
  }

  std::vector<double> energies(layouts.size(), 0.0);
  std::vector<double> steps(layouts.size(), 0.25);
  for (size_t c = 0; c < layouts.size(); ++c)
    if (layouts[c].members.size() > 1) energies[c] = stress_energy(layouts[c].positions, distances[c]);

  Eigen::MatrixX2d grad, trial;
  for (int iter = 0; iter < iterations; ++iter) {
    for (size_t c = 0; c < layouts.size(); ++c) {
      auto& layout = layouts[c];
      if (layout.members.size() < 2) continue;
      stress_gradient(layout.positions, distances[c], grad);
      double step = steps[c];
      bool accepted = false;
      for (int halving = 0; halving < 40; ++halving) {
        trial = layout.positions - step * grad;
        const double trial_energy = stress_energy(trial, distances[c]);
        if (trial_energy <= energies[c]) {
          layout.positions = trial;
          energies[c] = trial_energy;
          steps[c] = std::min(step * 1.5, 1.0);
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) steps[c] = step;  // keep shrinking next sweep
    }
    result.energy_trace.push_back(std::accumulate(energies.begin(), energies.end(), 0.0));
  }

  // pack components on a row, left to right, 1.0 padding
  double x_offset = 0.0;
  for (auto& layout : layouts) {
    const Eigen::Index m = layout.positions.rows();
    const double min_x = layout.positions.col(0).minCoeff();
    const double min_y = layout.positions.col(1).minCoeff();
    const double width = layout.positions.col(0).maxCoeff() - min_x;
    for (Eigen::Index i = 0; i < m; ++i) {
      Eigen::Vector2d p(layout.positions(i, 0) - min_x + x_offset,
                        layout.positions(i, 1) - min_y);
      result.positions[graph.nodes[layout.members[static_cast<size_t>(i)]]] = p;
    }
    x_offset += width + 1.0;
  }
  return result;
}

std::string layout_to_csv(const HomogeneityGraph& graph, const LayoutResult& layout) {
  std::string out = "label,x,y\n";
  for (const auto& node : graph.nodes) {
    auto it = layout.positions.find(node);
    if (it == layout.positions.end()) continue;
    out += csv_field(node);
    out += ',';
    out += format_coord(it->second.x());
    out += ',';
    out += format_coord(it->second.y());
    out += '\n';
  }
  return out;
}

}  // namespace i3kit
