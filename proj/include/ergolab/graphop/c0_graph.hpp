#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ergolab/core/rational.hpp"

namespace ergolab {

template <class V>
struct Edge {
  V to;
  Rational weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// A weighted directed graph on a countable vertex set, described by
// successor/predecessor oracles. Out-degrees are finite, which makes every
// row a null sequence. The enumeration fixes the bijection N -> vertices that
// defines the truncations E_N = {vertex_at(0), ..., vertex_at(N-1)}.
template <class V>
class C0Graph {
 public:
  using vertex_type = V;
  using edge_type = Edge<V>;
  using Oracle = std::function<std::vector<Edge<V>>(const V&)>;
  using Enumeration = std::function<V(std::uint64_t)>;

  C0Graph(Oracle successors, Oracle predecessors, Enumeration enumeration, std::string description)
      : successors_(std::move(successors)),
        predecessors_(std::move(predecessors)),
        enumeration_(std::move(enumeration)),
        description_(std::move(description)) {}

  [[nodiscard]] std::vector<Edge<V>> successors(const V& v) const { return successors_(v); }
  [[nodiscard]] std::vector<Edge<V>> predecessors(const V& v) const { return predecessors_(v); }
  [[nodiscard]] V vertex_at(std::uint64_t index) const { return enumeration_(index); }
  [[nodiscard]] const std::string& description() const { return description_; }

  [[nodiscard]] std::vector<V> truncation(std::uint64_t n) const {
    std::vector<V> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(enumeration_(i));
    return out;
  }

  // Same graph with a replaced predecessor oracle; used for fault injection.
  [[nodiscard]] C0Graph with_predecessors(Oracle predecessors) const {
    C0Graph copy = *this;
    copy.predecessors_ = std::move(predecessors);
    return copy;
  }

 private:
  Oracle successors_;
  Oracle predecessors_;
  Enumeration enumeration_;
  std::string description_;
};

using IndexGraph = C0Graph<std::uint64_t>;

// Graph on N whose edges are listed explicitly; every other vertex is isolated.
// The enumeration is the identity.
inline IndexGraph make_index_graph(
    const std::vector<std::tuple<std::uint64_t, std::uint64_t, Rational>>& edges,
    std::string description) {
  auto succ = std::make_shared<std::map<std::uint64_t, std::vector<Edge<std::uint64_t>>>>();
  auto pred = std::make_shared<std::map<std::uint64_t, std::vector<Edge<std::uint64_t>>>>();
  for (const auto& [u, v, w] : edges) {
    if (w.sign() <= 0) throw std::invalid_argument("make_index_graph: weights must be positive");
    (*succ)[u].push_back({v, w});
    (*pred)[v].push_back({u, w});
  }
  auto lookup = [](const auto& table) {
    return [table](const std::uint64_t& v) {
      auto it = table->find(v);
      return it == table->end() ? std::vector<Edge<std::uint64_t>>{} : it->second;
    };
  };
  return IndexGraph(lookup(succ), lookup(pred), [](std::uint64_t i) { return i; },
                    std::move(description));
}

template <class V>
struct Path {
  std::vector<V> vertices;
  Rational weight{1};

  [[nodiscard]] std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
};

}  // namespace ergolab
