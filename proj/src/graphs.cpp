#include "hgfrob/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "hgfrob/scalar.hpp"

namespace hgf {

namespace {

using Multiplicity = std::vector<std::vector<int>>;  // symmetric, m[a][a] = loops at a

long factorial(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

bool connected(const Multiplicity& m) {
  const int n = static_cast<int>(m.size());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    int a = stack.back();
    stack.pop_back();
    for (int b = 0; b < n; ++b)
      if (m[a][b] > 0 && !seen[static_cast<std::size_t>(b)]) {
        seen[static_cast<std::size_t>(b)] = true;
        stack.push_back(b);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool x) { return x; });
}

// Lexicographically smallest (genus, matrix) encoding over all relabelings,
// plus the number of relabelings fixing the graph.
std::pair<std::vector<int>, int> canonical(const std::vector<int>& genus, const Multiplicity& m) {
  const int n = static_cast<int>(genus.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  auto encode = [&](const std::vector<int>& p) {
    std::vector<int> code;
    for (int a = 0; a < n; ++a) code.push_back(genus[static_cast<std::size_t>(p[static_cast<std::size_t>(a)])]);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) code.push_back(m[p[static_cast<std::size_t>(a)]][p[static_cast<std::size_t>(b)]]);
    return code;
  };
  std::vector<int> self = encode(perm);
  int fixing = 0;
  do {
    auto code = encode(perm);
    if (best.empty() || code < best) best = code;
    if (code == self) ++fixing;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best, fixing};
}

}  // namespace

int StableGraph::valence(int v) const {
  int val = 0;
  for (const auto& [a, b] : edges) val += (a == v) + (b == v);
  return val;
}

int StableGraph::total_genus() const { return std::accumulate(genus.begin(), genus.end(), 0) + betti(); }

std::string StableGraph::describe() const {
  std::ostringstream s;
  s << "genera(";
  for (std::size_t v = 0; v < genus.size(); ++v) s << (v ? "," : "") << genus[v];
  s << ") edges(";
  for (std::size_t e = 0; e < edges.size(); ++e) s << (e ? " " : "") << edges[e].first << "-" << edges[e].second;
  s << ") aut " << aut;
  return s.str();
}

std::vector<StableGraph> enumerate_graphs(int g) {
  if (g < 2) throw ValidationError("graph enumeration needs genus >= 2");
  std::map<std::vector<int>, StableGraph> found;
  for (int n = 1; n <= 2 * g - 2; ++n) {
    // Vertex genera as a nonincreasing sequence; relabeling handles the rest.
    std::vector<int> genus(static_cast<std::size_t>(n));
    std::function<void(int, int, int)> genera = [&](int v, int maxg, int left) {
      if (v == n) {
        // What is left of the genus is the loop number: E = b1 + n - 1.
        const int edges = left + n - 1;
        std::vector<std::pair<int, int>> slots;
        for (int a = 0; a < n; ++a)
          for (int b = a; b < n; ++b) slots.emplace_back(a, b);
        Multiplicity m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
        std::function<void(std::size_t, int)> fill = [&](std::size_t slot, int remaining) {
          if (slot == slots.size()) {
            if (remaining != 0) return;
            std::vector<int> val(static_cast<std::size_t>(n), 0);
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b) val[static_cast<std::size_t>(a)] += m[a][b] * (a == b ? 2 : 1);
            for (int a = 0; a < n; ++a)
              if (2 * genus[static_cast<std::size_t>(a)] - 2 + val[static_cast<std::size_t>(a)] <= 0) return;
            if (!connected(m)) return;
            auto [code, fixing] = canonical(genus, m);
            if (found.count(code)) return;
            StableGraph sg;
            sg.genus = std::vector<int>(code.begin(), code.begin() + n);
            std::size_t pos = static_cast<std::size_t>(n);
            long edge_factor = 1;
            for (int a = 0; a < n; ++a)
              for (int b = a; b < n; ++b) {
                int mult = code[pos++];
                for (int e = 0; e < mult; ++e) sg.edges.emplace_back(a, b);
                edge_factor *= factorial(mult) * (a == b ? (1L << mult) : 1L);
              }
            sg.aut = edge_factor * fixing;
            found.emplace(code, sg);
            return;
          }
          auto [a, b] = slots[slot];
          for (int k = 0; k <= remaining; ++k) {
            m[a][b] = m[b][a] = k;
            fill(slot + 1, remaining - k);
          }
          m[a][b] = m[b][a] = 0;
        };
        if (edges >= 0) fill(0, edges);
        return;
      }
      for (int gv = std::min(maxg, left); gv >= 0; --gv) {
        genus[static_cast<std::size_t>(v)] = gv;
        genera(v + 1, gv, left - gv);
      }
    };
    genera(0, g, g);
  }
  std::vector<StableGraph> out;
  for (auto& [code, sg] : found) out.push_back(sg);
  // Fewer vertices first, then fewer edges, then the canonical code.
  std::stable_sort(out.begin(), out.end(), [](const StableGraph& x, const StableGraph& y) {
    if (x.vertices() != y.vertices()) return x.vertices() < y.vertices();
    return x.edges.size() < y.edges.size();
  });
  return out;
}

}  // namespace hgf
