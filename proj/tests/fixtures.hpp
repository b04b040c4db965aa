#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "shocknet/network.hpp"
#include "shocknet/random.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(SHOCKNET_DATA_DIR) + "/" + name; }

inline shocknet::Network load(const std::string& name) { return shocknet::load_network(data_path(name)); }

inline shocknet::Network series(std::size_t n) {
  std::vector<std::string> nodes;
  std::vector<shocknet::Network::LinkSpec> links;
  for (std::size_t i = 0; i <= n; ++i) nodes.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) links.push_back({int(i + 1), nodes[i], nodes[i + 1]});
  return shocknet::Network::create(nodes, links, {nodes.front(), nodes.back()});
}

inline shocknet::Network parallel(std::size_t n) {
  std::vector<shocknet::Network::LinkSpec> links;
  for (std::size_t i = 0; i < n; ++i) links.push_back({int(i + 1), "s", "t"});
  return shocknet::Network::create({"s", "t"}, links, {"s", "t"});
}

/// Random connected multigraph with `n` links: a spanning tree on `nodes`
/// nodes (capped at n + 1) plus random extra links, self-loops and parallels
/// included. Two or three terminals.
inline shocknet::Network random_network(std::size_t nodes, std::size_t n, shocknet::Rng& rng) {
  nodes = std::min(nodes, n + 1);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < nodes; ++i) ids.push_back("n" + std::to_string(i));
  std::vector<shocknet::Network::LinkSpec> links;
  for (std::size_t i = 1; i < nodes && links.size() < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    links.push_back({int(links.size() + 1), ids[parent(rng)], ids[i]});
  }
  std::uniform_int_distribution<std::size_t> any(0, nodes - 1);
  while (links.size() < n) links.push_back({int(links.size() + 1), ids[any(rng)], ids[any(rng)]});
  std::vector<std::string> terminals{ids[0], ids[nodes - 1]};
  if (nodes > 3 && rng() % 2) terminals.push_back(ids[nodes / 2]);
  return shocknet::Network::create(ids, links, terminals);
}

/// Random pmf of length `len` with all entries positive.
inline std::vector<double> random_pmf(std::size_t len, shocknet::Rng& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> v(len);
  double total = 0;
  for (auto& x : v) total += (x = u(rng));
  for (auto& x : v) x /= total;
  return v;
}

}  // namespace fixtures
