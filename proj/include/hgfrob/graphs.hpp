#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hgf {

// Connected stable graph without canonical labels. Loops are edges (a, a).
struct StableGraph {
  std::vector<int> genus;                  // per vertex
  std::vector<std::pair<int, int>> edges;  // a <= b, sorted
  long aut = 1;                            // automorphisms, including loop flips and edge swaps

  int vertices() const { return static_cast<int>(genus.size()); }
  int valence(int v) const;
  int betti() const { return static_cast<int>(edges.size()) - vertices() + 1; }
  int total_genus() const;
  std::string describe() const;
};

// All isomorphism classes of genus-g stable graphs (g >= 2), in a fixed order.
std::vector<StableGraph> enumerate_graphs(int g);

}  // namespace hgf
