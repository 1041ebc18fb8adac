#pragma once

#include "foldkit/cartan.hpp"
#include "foldkit/weights.hpp"

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace foldkit {

using PathTime = boost::rational<std::int64_t>;

/// Piecewise-linear Littelmann path from 0. Segment s moves in direction
/// lambda - sum_j dirs[s*rank + j] alpha_j for time lengths[s]; adjacent
/// segments have distinct directions and all lengths are positive, so the
/// representation is canonical.
struct LsPath {
  std::vector<std::int32_t> dirs;
  std::vector<PathTime> lengths;

  std::size_t segments() const noexcept { return lengths.size(); }

  friend bool operator==(const LsPath&, const LsPath&) = default;
};

/// Lexicographic order on (dirs, lengths).
bool signature_less(const LsPath& a, const LsPath& b);

struct LsPathHash {
  std::size_t operator()(const LsPath& p) const noexcept;
};

/// Root operators of the path model for B(lambda) over a Cartan datum.
class LsPathModel {
public:
  LsPathModel(const CartanDatum& c, HighestWeight lambda);

  std::size_t rank() const noexcept { return lambda_.size(); }
  const HighestWeight& lambda() const noexcept { return lambda_; }

  LsPath highest() const;
  std::optional<LsPath> apply_f(const LsPath& p, std::size_t i) const;
  std::optional<LsPath> apply_e(const LsPath& p, std::size_t i) const;
  std::int64_t epsilon(const LsPath& p, std::size_t i) const;
  std::int64_t phi(const LsPath& p, std::size_t i) const;
  /// nu with endpoint lambda - nu.
  RootVector nu(const LsPath& p) const;

private:
  std::int64_t slope(const LsPath& p, std::size_t s, std::size_t i) const;
  std::vector<PathTime> heights(const LsPath& p, std::size_t i) const;
  void reflect(LsPath& p, std::size_t s, std::size_t i) const;
  static void canonicalize(LsPath& p, std::size_t rank);

  HighestWeight lambda_;
  IntMatrix cartan_; // cartan_[i][j] = <i, alpha_j>
};

struct CrystalNode {
  LsPath path;
  RootVector nu;
  std::vector<std::int64_t> eps;
  std::vector<std::int64_t> phi;
  /// Generating edge: parent --f_label--> this node. The highest node has none.
  std::optional<std::size_t> parent;
  std::size_t label = 0;
};

/// f_j target of a node: an index, undefined, or defined but outside the window.
struct Edge {
  enum class Kind : std::uint8_t { Undefined, Outside, Node };
  Kind kind = Kind::Undefined;
  std::size_t target = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class CrystalGraph {
public:
  CrystalGraph() = default;
  CrystalGraph(CartanDatum datum, HighestWeight lambda, Window window, std::vector<CrystalNode> nodes,
               std::vector<std::vector<Edge>> f_edges);

  const CartanDatum& datum() const noexcept { return datum_; }
  const HighestWeight& lambda() const noexcept { return lambda_; }
  const Window& window() const noexcept { return window_; }
  const std::vector<CrystalNode>& nodes() const noexcept { return nodes_; }
  const CrystalNode& node(std::size_t k) const { return nodes_.at(k); }
  std::size_t size() const noexcept { return nodes_.size(); }

  Edge f_edge(std::size_t k, std::size_t j) const { return f_edges_.at(k).at(j); }
  /// e_j target: index of the unique b' with f_j b' = b, if any.
  std::optional<std::size_t> e_edge(std::size_t k, std::size_t j) const;

  /// Node index of a path, if generated.
  std::optional<std::size_t> find(const LsPath& p) const;

  /// Nodes of weight lambda - nu; throws InputError outside the window.
  std::int64_t census(const RootVector& nu) const;
  /// census for every nu carrying a node.
  std::map<RootVector, std::int64_t, HeightLexLess> census_table() const;

  friend bool operator==(const CrystalGraph& a, const CrystalGraph& b) {
    return a.datum_ == b.datum_ && a.lambda_ == b.lambda_ && a.window_ == b.window_ && a.f_edges_ == b.f_edges_ &&
           a.nodes_.size() == b.nodes_.size() && a.paths_equal(b);
  }

private:
  bool paths_equal(const CrystalGraph& other) const;
  void index();

  CartanDatum datum_;
  HighestWeight lambda_;
  Window window_;
  std::vector<CrystalNode> nodes_;
  std::vector<std::vector<Edge>> f_edges_;
  std::vector<std::vector<std::optional<std::size_t>>> e_edges_;
  std::map<RootVector, std::int64_t, HeightLexLess> census_;
};

/// Breadth-first closure of the highest path under f_j, restricted to the
/// window. Nodes are ordered by height, then by path signature.
CrystalGraph generate(const CartanDatum& c, const HighestWeight& lambda, const Window& window);

inline CrystalGraph generate(const CartanDatum& c, const HighestWeight& lambda, std::int64_t depth) {
  return generate(c, lambda, Window::by_height(depth));
}

/// Node permutation induced by a diagram automorphism (given by its vertex
/// permutation on the datum's index set). Built by replaying generating words
/// under j -> a(j) and checked against coordinate permutation of paths and the
/// intertwining relation; any discrepancy throws InternalError.
std::vector<std::size_t> aut_action(const CrystalGraph& g, const std::vector<std::size_t>& index_perm);

/// Nodes of weight lambda - nu fixed by sigma. `nu` is over the unfolded index
/// set and must be constant on orbits of `index_perm`.
std::int64_t fixed_census(const CrystalGraph& g, const std::vector<std::size_t>& sigma,
                          const std::vector<std::size_t>& index_perm, const RootVector& nu);

/// Fixed-node counts for every weight that carries a fixed node.
std::map<RootVector, std::int64_t, HeightLexLess> fixed_census_table(const CrystalGraph& g,
                                                                     const std::vector<std::size_t>& sigma);

} // namespace foldkit
