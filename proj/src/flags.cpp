#include "flagcert/flags.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "flagcert/detail/combinatorics.hpp"
#include "flagcert/detail/small_graph.hpp"

namespace flagcert {

TypeGraph::TypeGraph(Graph graph) : graph_(std::move(graph)) {
  if (graph_.order() <= kMaxCanonicalOrder && !is_admissible(graph_)) {
    throw std::invalid_argument("type graph is not admissible: " +
                                to_string(graph_));
  }
}

TypeGraph sigma0() { return TypeGraph(Graph(1)); }

TypeGraph sigma1() { return TypeGraph(path_graph(3)); }

TypeGraph sigma2() { return TypeGraph(complement(path_graph(3))); }

TypeGraph complement(const TypeGraph& sigma) {
  return TypeGraph(complement(sigma.graph()));
}

Flag::Flag(Graph graph, std::vector<int> labels)
    : graph_(std::move(graph)), labels_(std::move(labels)) {
  std::vector<bool> seen(graph_.order(), false);
  for (int v : labels_) {
    if (v < 0 || v >= graph_.order()) {
      throw std::out_of_range("flag label points outside the graph");
    }
    if (seen[v]) throw std::invalid_argument("flag labeling is not injective");
    seen[v] = true;
  }
  if (graph_.order() <= kMaxCanonicalOrder && !is_admissible(graph_)) {
    throw std::invalid_argument("flag graph is not admissible: " +
                                to_string(graph_));
  }
}

TypeGraph Flag::type() const {
  return TypeGraph(induced_subgraph(graph_, labels_));
}

namespace {

// Labeled vertices first (label order), then the rest ascending.
std::vector<int> labels_first_order(const Graph& g, std::span<const int> labels) {
  std::vector<int> order(labels.begin(), labels.end());
  std::vector<bool> labeled(g.order(), false);
  for (int v : labels) labeled[v] = true;
  for (int v = 0; v < g.order(); ++v) {
    if (!labeled[v]) order.push_back(v);
  }
  return order;
}

}  // namespace

CanonicalForm flag_canonical_form(const Flag& f) {
  const int n = f.order();
  if (n > kMaxCanonicalOrder) {
    throw SizeExceeded("flag_canonical_form supports at most " +
                       std::to_string(kMaxCanonicalOrder) + " vertices");
  }
  const auto order = labels_first_order(f.graph(), f.labels());
  const auto adj = detail::small_adjacency(f.graph(), order);
  return {n, f.type_size(), detail::min_code(adj, n, f.type_size())};
}

Flag flag_from_form(const CanonicalForm& form) {
  std::vector<int> labels(form.labeled);
  std::iota(labels.begin(), labels.end(), 0);
  return Flag(graph_from_form({form.order, 0, form.code}), std::move(labels));
}

Flag complement_flag(const Flag& f) {
  return Flag(complement(f.graph()), f.labels());
}

int FlagBasis::index_of(const CanonicalForm& form) const {
  auto it = std::lower_bound(forms.begin(), forms.end(), form);
  if (it == forms.end() || *it != form) return -1;
  return static_cast<int>(it - forms.begin());
}

FlagBasis enumerate_flags(const TypeGraph& sigma, int size) {
  const int k = sigma.size();
  if (size < k || size > kMaxCanonicalOrder) {
    throw std::invalid_argument("enumerate_flags needs |sigma| <= l <= 8");
  }
  std::vector<CanonicalForm> forms;
  for (const Graph& m : admissible_catalog(size).graphs) {
    detail::for_each_arrangement(size, k, [&](std::span<const int> theta) {
      for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
          if (m.adjacent(theta[a], theta[b]) != sigma.graph().adjacent(a, b)) return;
        }
      }
      const auto order = labels_first_order(m, theta);
      const auto adj = detail::small_adjacency(m, order);
      forms.push_back({size, k, detail::min_code(adj, size, k)});
    });
  }
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());

  FlagBasis basis;
  basis.sigma = sigma;
  basis.size = size;
  basis.forms = std::move(forms);
  for (const auto& form : basis.forms) basis.flags.push_back(flag_from_form(form));
  return basis;
}

std::vector<int> complement_pairing(const FlagBasis& from, const FlagBasis& to) {
  std::vector<int> pairing(from.dimension());
  for (int i = 0; i < from.dimension(); ++i) {
    const int j = to.index_of(flag_canonical_form(complement_flag(from.flags[i])));
    if (j < 0) {
      throw std::logic_error("complement of flag " + std::to_string(i) +
                             " is missing from the target basis");
    }
    pairing[i] = j;
  }
  return pairing;
}

}  // namespace flagcert
