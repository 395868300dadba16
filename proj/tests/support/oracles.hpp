#pragma once

// Independent brute-force oracles for the metric implementations: an exact
// min-cost-flow transport solver over integer-scaled histograms, and the
// exhaustive recursive optimal-string-alignment distance.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace revised::test::oracles {

// Exact optimal transport between two distributions with an arbitrary
// ground-cost matrix, solved as min-cost max-flow with successive shortest
// paths (Bellman-Ford) over integer supplies. Supplies are the histogram
// counts scaled to a common denominator; the result is cost / denominator.
inline double transport_cost(const std::vector<std::int64_t>& supply,
                             const std::vector<std::int64_t>& demand,
                             const std::vector<std::vector<double>>& cost) {
  const std::size_t n = supply.size();
  const std::size_t m = demand.size();
  // nodes: 0 = source, 1..n = supply bins, n+1..n+m = demand bins, sink last
  const std::size_t sink = n + m + 1;
  struct Edge {
    std::size_t to;
    std::int64_t cap;
    double cost;
    std::size_t rev;
  };
  std::vector<std::vector<Edge>> g(sink + 1);
  const auto add_edge = [&](std::size_t u, std::size_t v, std::int64_t cap, double c) {
    g[u].push_back({v, cap, c, g[v].size()});
    g[v].push_back({u, 0, -c, g[u].size() - 1});
  };
  for (std::size_t i = 0; i < n; ++i) add_edge(0, 1 + i, supply[i], 0.0);
  for (std::size_t j = 0; j < m; ++j) add_edge(1 + n + j, sink, demand[j], 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      add_edge(1 + i, 1 + n + j, std::numeric_limits<std::int64_t>::max() / 4, cost[i][j]);
    }
  }

  double total = 0.0;
  while (true) {
    std::vector<double> dist(sink + 1, std::numeric_limits<double>::infinity());
    std::vector<std::pair<std::size_t, std::size_t>> parent(sink + 1, {SIZE_MAX, SIZE_MAX});
    dist[0] = 0.0;
    for (std::size_t round = 0; round <= sink; ++round) {
      bool changed = false;
      for (std::size_t u = 0; u <= sink; ++u) {
        if (!std::isfinite(dist[u])) continue;
        for (std::size_t k = 0; k < g[u].size(); ++k) {
          const Edge& e = g[u][k];
          if (e.cap > 0 && dist[u] + e.cost < dist[e.to] - 1e-15) {
            dist[e.to] = dist[u] + e.cost;
            parent[e.to] = {u, k};
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (!std::isfinite(dist[sink])) break;
    std::int64_t push = std::numeric_limits<std::int64_t>::max();
    for (std::size_t v = sink; v != 0;) {
      auto [u, k] = parent[v];
      if (u == SIZE_MAX) {
        push = 0;
        break;
      }
      push = std::min(push, g[u][k].cap);
      v = u;
    }
    if (push <= 0) break;
    for (std::size_t v = sink; v != 0;) {
      auto [u, k] = parent[v];
      g[u][k].cap -= push;
      g[g[u][k].to][g[u][k].rev].cap += push;
      v = u;
    }
    total += static_cast<double>(push) * dist[sink];
  }
  return total;
}

// EMD between two activity sequences (eos excluded), unit ground distance
// between distinct activities, via the exact transport solver.
inline double emd_oracle(std::span<const int> a, std::span<const int> b, int eos) {
  std::map<int, std::int64_t> ca, cb;
  std::int64_t na = 0, nb = 0;
  for (int x : a) {
    if (x != eos) {
      ++ca[x];
      ++na;
    }
  }
  for (int x : b) {
    if (x != eos) {
      ++cb[x];
      ++nb;
    }
  }
  if (na == 0 && nb == 0) return 0.0;
  if (na == 0 || nb == 0) return 1.0;

  std::vector<int> bins;
  for (const auto& [k, v] : ca) bins.push_back(k);
  for (const auto& [k, v] : cb) {
    if (!ca.count(k)) bins.push_back(k);
  }
  std::sort(bins.begin(), bins.end());

  // common denominator na*nb: supply_i = count_a * nb, demand_j = count_b * na
  std::vector<std::int64_t> supply, demand;
  for (int k : bins) supply.push_back((ca.count(k) ? ca[k] : 0) * nb);
  for (int k : bins) demand.push_back((cb.count(k) ? cb[k] : 0) * na);
  std::vector<std::vector<double>> cost(bins.size(), std::vector<double>(bins.size(), 1.0));
  for (std::size_t i = 0; i < bins.size(); ++i) cost[i][i] = 0.0;

  return transport_cost(supply, demand, cost) / static_cast<double>(na * nb);
}

// Exhaustive recursive optimal-string-alignment distance: tries delete,
// insert, substitute and adjacent transposition at each pair of suffix
// positions. Exponential; for oracle-sized inputs only.
inline std::size_t osa_recursive(std::span<const int> a, std::span<const int> b,
                                 std::size_t i, std::size_t j) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  std::size_t best = osa_recursive(a, b, i + 1, j) + 1;
  best = std::min(best, osa_recursive(a, b, i, j + 1) + 1);
  best = std::min(best, osa_recursive(a, b, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1));
  if (i + 1 < a.size() && j + 1 < b.size() && a[i] == b[j + 1] && a[i + 1] == b[j]) {
    best = std::min(best, osa_recursive(a, b, i + 2, j + 2) + 1);
  }
  return best;
}

inline std::size_t osa_oracle(std::span<const int> a, std::span<const int> b) {
  return osa_recursive(a, b, 0, 0);
}

}  // namespace revised::test::oracles
