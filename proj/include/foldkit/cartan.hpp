#pragma once

#include "foldkit/quiver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace foldkit {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Finite index set with a symmetric integer form (j . j'). Diagonal entries
/// are even and positive; 2 (j.j') / (j.j) is a non-positive integer off the
/// diagonal.
struct CartanDatum {
  std::vector<std::string> labels;
  IntMatrix form;

  std::size_t rank() const noexcept { return labels.size(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return form[i][j]; }

  friend bool operator==(const CartanDatum&, const CartanDatum&) = default;
};

/// Checks the two Cartan axioms and symmetry; returns a description of the
/// first failure, if any.
std::optional<std::string> check_axioms(const CartanDatum& c);

/// Validating constructor. Throws InputError if an axiom fails.
CartanDatum make_datum(std::vector<std::string> labels, IntMatrix form);

/// Parses "2,-1;-1,2" (rows separated by ';'). Labels default to "1".."n".
CartanDatum parse_form(const std::string& text);

/// Stable 64-bit FNV-1a hash over labels and entries.
std::uint64_t datum_hash(const CartanDatum& c);

/// i.i = 2, i.j = -(number of edges joining i and j).
CartanDatum cartan_from_graph(const Graph& g);

/// Orbit datum: distinct orbits get -(edges joining them), an orbit with
/// itself 2 * |orbit|. Throws InputError for a non-admissible `a`.
CartanDatum fold(const Graph& g, const Automorphism& a);

struct Gcm {
  IntMatrix a;                        ///< a[i][j] = 2 (i.j) / (i.i)
  std::vector<std::int64_t> symmetrizer; ///< (i.i) / 2
};

Gcm gcm(const CartanDatum& c);

enum class Kind { Finite, Affine, Indefinite };

std::string to_string(Kind k);

struct ComponentClass {
  std::vector<std::size_t> indices;
  Kind kind = Kind::Finite;
  /// Primitive positive kernel vector over `indices`; empty unless Affine.
  std::vector<std::int64_t> delta;
};

struct TypeClass {
  Kind kind = Kind::Finite;
  bool irreducible = true;
  std::vector<ComponentClass> components;
  /// Null vector over the whole index set, set only for an irreducible affine datum.
  std::vector<std::int64_t> delta;

  /// "Finite", "Affine delta=(1,1)", or a product "Finite x Affine".
  std::string describe() const;
};

/// Connected components of the support graph of the form, each sorted.
std::vector<std::vector<std::size_t>> components(const CartanDatum& c);

TypeClass classify(const CartanDatum& c);

/// Datum restricted to a subset of indices (kept in the given order).
CartanDatum restrict(const CartanDatum& c, const std::vector<std::size_t>& indices);

/// Orbit-indexed vector when nu is constant on a-orbits, else nullopt.
std::optional<std::vector<std::int64_t>> stable_subset(const std::vector<std::int64_t>& nu, const Automorphism& a);

/// Inverse of `stable_subset`: spreads an orbit-indexed vector over I.
std::vector<std::int64_t> unfold_vector(const std::vector<std::int64_t>& nu_orbits, const Automorphism& a);

} // namespace foldkit
