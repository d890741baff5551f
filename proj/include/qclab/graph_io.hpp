// Copyright 2026 The qclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Plain-text formats.
//
//   graph:      "n m\n" then m lines "u v" with u < v, strictly sorted.
//   clustering: n lines, the integer label of vertex i on line i.
//   partition:  one line of n characters from {0,1}.

#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qclab/graph.hpp"

namespace qclab {

inline void write_graph(std::ostream& os, const Graph& g) {
  const auto edges = g.edges();
  os << g.size() << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) os << e.u << ' ' << e.v << '\n';
}

inline Graph read_graph(std::istream& is) {
  long long n = -1, m = -1;
  if (!(is >> n >> m) || n < 0 || m < 0) throw FormatError("graph header must be 'n m'");
  if (static_cast<Count>(m) > choose2(static_cast<Count>(n))) throw FormatError("more edges than pairs");
  GraphBuilder b(static_cast<std::size_t>(n));
  Edge prev{0, 0};
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(is >> u >> v)) throw FormatError("truncated edge list at edge " + std::to_string(i));
    if (u < 0 || v <= u || v >= n) throw FormatError("edge " + std::to_string(i) + " must satisfy 0 <= u < v < n");
    const Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (i > 0 && !(prev < e)) throw FormatError("edges must be strictly sorted without duplicates");
    b.add_edge(e.u, e.v);
    prev = e;
  }
  std::string rest;
  if (is >> rest) throw FormatError("trailing data after edge list");
  return std::move(b).build();
}

inline void write_clustering(std::ostream& os, const Clustering& c) {
  for (auto l : c.labels()) os << l << '\n';
}

inline Clustering read_clustering(std::istream& is) {
  std::vector<long long> raw;
  long long x;
  while (is >> x) raw.push_back(x);
  if (!is.eof()) throw FormatError("clustering file must contain one integer per line");
  return Clustering::from_labels(std::span<const long long>(raw));
}

inline void write_partition(std::ostream& os, const CutPartition& p) {
  for (auto b : p.bits()) os << static_cast<char>('0' + b);
  os << '\n';
}

inline CutPartition read_partition(std::istream& is) {
  std::string line;
  std::getline(is, line);
  std::vector<std::uint8_t> bits;
  bits.reserve(line.size());
  for (char ch : line) {
    if (ch != '0' && ch != '1') throw FormatError("partition line must contain only 0/1");
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return CutPartition(std::move(bits));
}

inline std::string to_string(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

}  // namespace qclab
