#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlt/errors.hpp"

namespace dlt::triangulation {

/// Decorated ideal triangulation: triangles carry a marked corner and a
/// global ordering; interior edges carry positive Fock coordinates.
///
/// Each triangle stores its three sides counterclockwise starting at the
/// marked corner, so the mark is always "corner 0" and rho is a rotation of
/// the side list. The flip omega_{i,j} applies when the quadrilateral of
/// triangles i, j is in the reference configuration: the shared diagonal
/// sits in slot 1 of i and slot 2 of j.
class DecoratedTriangulation {
 public:
  struct EdgeSpec {
    bool boundary = false;
    double coord = 1.0;  // ignored on boundary edges
  };
  struct Side {
    int tri = -1, slot = -1;
    bool operator==(const Side&) const = default;
  };

  DecoratedTriangulation(std::vector<std::array<int, 3>> tri_sides,
                         std::vector<EdgeSpec> edges);

  int num_triangles() const { return int(tris_.size()); }
  int num_edges() const { return int(edges_.size()); }
  int edge_at(int tri, int slot) const;
  bool is_boundary_edge(int edge) const { return edges_[size_t(edge)].boundary; }
  bool is_boundary(int tri, int slot) const;
  double coord(int edge) const;
  void set_coord(int edge, double value);
  /// The other incidence of the interior edge in slot (tri, slot).
  Side partner(int tri, int slot) const;

  /// Interior-edge coordinates in a canonical traversal order (triangle by
  /// triangle, first visit of each edge).
  std::vector<double> coords_in_traversal_order() const;
  void assign_coords_in_traversal_order(const std::vector<double>& vals);

  void rho(int tri, bool inverse);
  void flip(int i, int j, bool inverse);
  /// new_tri[k] = old_tri[sigma[k]], 0-based mapping.
  void permute(const std::vector<int>& sigma, bool inverse);

  std::string to_json() const;
  static DecoratedTriangulation from_json(const std::string& text);

 private:
  std::vector<std::array<int, 3>> tris_;  // side slot -> edge id
  std::vector<EdgeSpec> edges_;
};

struct CompareResult {
  bool equal = false;
  double max_coord_dev = 0.0;
  std::string reason;
};

/// Exact decorated equality: same gluing pattern slot by slot, same boundary
/// edge labels in the same slots, coordinates within tol.
CompareResult compare_decorated(const DecoratedTriangulation& a,
                                const DecoratedTriangulation& b,
                                double coord_tol = 1e-12);

/// Weaker comparator: equal after some relabeling of triangles (boundary
/// edge identities ignored, coordinates ignored).
bool isomorphic_up_to_relabeling(const DecoratedTriangulation& a,
                                 const DecoratedTriangulation& b);

enum class Deco : std::uint8_t { none, hat, check };

struct Token {
  enum class Kind : std::uint8_t { perm, rho, omega } kind = Kind::rho;
  bool inverse = false;
  int i = 0;  // 1-based triangle label
  int j = 0;
  Deco ideco = Deco::none;
  Deco jdeco = Deco::none;
  std::vector<int> perm;  // 0-based mapping for Kind::perm
};

/// Sequence of groupoid generators in application order (first token is
/// applied first). Hat/check decorations on omega indices expand eagerly to
/// rho-conjugation when applied.
struct GroupoidWord {
  std::vector<Token> tokens;

  GroupoidWord& rho(int i, bool inverse = false);
  GroupoidWord& omega(int i, int j, bool inverse = false,
                      Deco ideco = Deco::none, Deco jdeco = Deco::none);
  GroupoidWord& perm(std::vector<int> sigma0);
  GroupoidWord& append(const GroupoidWord& other);

  /// Reversed word with every generator inverted.
  GroupoidWord inverted() const;

  std::string to_string() const;
  static GroupoidWord parse(const std::string& text);
};

/// Left-to-right application; the first inapplicable generator is reported
/// with its position.
DecoratedTriangulation apply_word(const DecoratedTriangulation& tri,
                                  const GroupoidWord& word);

struct RelationResult {
  bool holds = false;
  double max_deviation = 0.0;
};

/// Both words applied to tri and to n_coord_samples random positive
/// coordinate assignments; equal iff every run gives identical decorated
/// triangulations with coordinates within 1e-12.
RelationResult check_relation(const GroupoidWord& lhs, const GroupoidWord& rhs,
                              const DecoratedTriangulation& tri,
                              int n_coord_samples = 20,
                              unsigned long long seed = 7);

/// The annulus triangulation tau_N: 2N triangles, interior edges f_1..f_2N
/// (coordinate defaults 1), 2N boundary edges.
DecoratedTriangulation annulus(int N);
/// Same with prescribed Fock coordinates f_1..f_2N.
DecoratedTriangulation annulus(int N, const std::vector<double>& coords);

/// Read the Fock coordinates f_1..f_2N off an annulus-patterned
/// triangulation (slot 0 and slot 2 of each odd-labeled triangle).
std::vector<double> annulus_coords(const DecoratedTriangulation& tri);

/// Word whose action on tau_N realizes n light-cone steps (the mapping
/// class shifting the top marked points by n spacings).
GroupoidWord dehn_word(int N, int n);

/// The flip transformation law applied directly to a coordinate tuple:
/// f'_{2j} = 1/f_{2j-1}, f'_{2j+1} = f_{2j}(1+f_{2j-1})(1+f_{2j+1}).
std::vector<double> lightcone_map(const std::vector<double>& f);

/// Builds the zigzag state via f_m = chi_{m,0} (m odd), 1/chi_{m,-1}
/// (m even), runs one lattice light-cone step, separately applies
/// dehn_word(N,1) to the coordinates, and returns the max relative
/// deviation between the two resulting coordinate tuples.
double lightcone_equivalence_check(int N, const std::vector<double>& coords);

enum class WordIdentity { tilde_n, tilde_1, power_any, power_N };

struct WordIdentityResult {
  bool holds = false;
  double max_deviation = 0.0;
};

/// Classical-shadow check of the conjugated Dehn-power identities on the
/// annulus. n is consumed by tilde_n and power_any (1 <= n < N).
WordIdentityResult word_identity_check(WordIdentity id, int N, int n = 1,
                                       int n_coord_samples = 12,
                                       unsigned long long seed = 11);

}  // namespace dlt::triangulation
