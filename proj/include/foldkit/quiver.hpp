#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace foldkit {

/// Strict weak order on ids: all-digit ids compare numerically and precede
/// other ids, which compare lexicographically.
bool id_less(std::string_view a, std::string_view b);

/// Finite graph stored as half-edges. Edge `e` owns half-edges 2e (as declared,
/// u -> v) and 2e+1 (v -> u); the involution h -> bar(h) is h ^ 1.
class Graph {
public:
  struct EdgeSpec {
    std::string id;
    std::string u;
    std::string v;
  };

  Graph() = default;

  /// Validates ids, endpoints and the no-loop rule, then sorts vertices and
  /// edges by `id_less`. Throws InputError.
  Graph(std::vector<std::string> vertices, std::vector<EdgeSpec> edges);

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t edge_count() const noexcept { return edge_ids_.size(); }
  std::size_t half_edge_count() const noexcept { return out_.size(); }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::string& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::string& edge_id(std::size_t e) const { return edge_ids_.at(e); }
  std::optional<std::size_t> find_vertex(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::string_view id) const;

  std::size_t out(std::size_t h) const { return out_.at(h); }
  std::size_t in(std::size_t h) const { return in_.at(h); }
  static constexpr std::size_t bar(std::size_t h) noexcept { return h ^ 1U; }
  static constexpr std::size_t edge_of(std::size_t h) noexcept { return h / 2; }

  /// Number of undirected edges joining vertices i and j.
  std::size_t edges_between(std::size_t i, std::size_t j) const;

  /// "eid:u->v" for diagnostics.
  std::string half_edge_name(std::size_t h) const;

private:
  std::vector<std::string> vertices_;
  std::vector<std::string> edge_ids_;
  std::vector<std::size_t> out_;
  std::vector<std::size_t> in_;
};

/// Subset Omega of H with Omega and bar(Omega) partitioning H.
class Orientation {
public:
  Orientation() = default;
  explicit Orientation(std::vector<bool> in_omega);

  bool contains(std::size_t h) const { return in_omega_.at(h); }
  /// +1 on Omega, -1 on bar(Omega).
  int epsilon(std::size_t h) const { return contains(h) ? 1 : -1; }
  std::size_t size() const noexcept { return in_omega_.size(); }
  const std::vector<bool>& mask() const noexcept { return in_omega_; }

  bool is_valid_for(const Graph& g) const;

  friend bool operator==(const Orientation&, const Orientation&) = default;

private:
  std::vector<bool> in_omega_;
};

/// A graph automorphism candidate stored on half-edges, with the vertex
/// permutation kept alongside. `order` is the least n with a^n = 1 on I and H.
struct Automorphism {
  std::vector<std::size_t> vertex_perm;
  std::vector<std::size_t> half_edge_perm;
  std::size_t order = 1;

  static Automorphism identity(const Graph& g);
  bool is_trivial() const;
  /// a^k on a vertex.
  std::size_t vertex_power(std::size_t i, std::size_t k) const;
};

/// Builds an automorphism from its two permutations, computing the order.
/// Throws InputError when either map is not a permutation of the right size.
Automorphism make_automorphism(const Graph& g, std::vector<std::size_t> vertex_perm,
                               std::vector<std::size_t> half_edge_perm);

struct Violation {
  std::string axiom;
  std::string witness;
};

/// Empty iff `a` is an admissible automorphism of `g`.
std::vector<Violation> validate_admissible(const Graph& g, const Automorphism& a);

struct Orbits {
  /// Vertex orbits, each sorted, ordered by least member.
  std::vector<std::vector<std::size_t>> vertex_orbits;
  /// Half-edge orbits, same conventions.
  std::vector<std::vector<std::size_t>> half_edge_orbits;
  /// vertex index -> orbit index.
  std::vector<std::size_t> orbit_of_vertex;
};

Orbits orbits(const Automorphism& a);

/// "{1,3}" style orbit label.
std::string orbit_label(const Graph& g, const std::vector<std::size_t>& orbit);

/// An a-stable orientation. Half-edges already in `seed` are placed first;
/// the rest follow the least-id rule. Throws InputError on conflict, which
/// only happens for automorphisms that are not admissible.
Orientation compatible_orientation(const Graph& g, const Automorphism& a,
                                   const std::vector<std::size_t>& seed = {});

struct Quiver {
  Graph graph;
  Orientation orientation;
  std::optional<Automorphism> automorphism;
  /// Vertex designated by an `affine_node` line.
  std::optional<std::size_t> affine_node;

  Automorphism automorphism_or_identity() const;
  bool orientation_is_compatible() const;
};

/// Parses the line-oriented quiver format. Throws ParseError with line and
/// column on syntax errors and InputError for structural ones.
Quiver parse_quiver(std::string_view text);

/// Reads a file and parses it; file errors become InputError.
Quiver load_quiver(const std::string& path);

} // namespace foldkit
