#include "dlt/triangulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "dlt/lattice.hpp"

namespace dlt::triangulation {

namespace {

int wrap_label(int k, int twoN) {
  int r = (k - 1) % twoN;
  if (r < 0) r += twoN;
  return r + 1;
}

}  // namespace

DecoratedTriangulation::DecoratedTriangulation(
    std::vector<std::array<int, 3>> tri_sides, std::vector<EdgeSpec> edges)
    : tris_(std::move(tri_sides)), edges_(std::move(edges)) {
  std::vector<int> uses(edges_.size(), 0);
  for (const auto& t : tris_)
    for (int e : t) {
      if (e < 0 || e >= int(edges_.size()))
        throw ConfigError("triangulation: side refers to unknown edge");
      ++uses[size_t(e)];
    }
  for (size_t e = 0; e < edges_.size(); ++e) {
    const int expect = edges_[e].boundary ? 1 : 2;
    if (uses[e] != expect)
      throw ConfigError("triangulation: edge " + std::to_string(e) +
                        " has wrong incidence count");
    if (!edges_[e].boundary && !(edges_[e].coord > 0.0))
      throw ConfigError("triangulation: interior coordinates must be positive");
  }
}

int DecoratedTriangulation::edge_at(int tri, int slot) const {
  if (tri < 0 || tri >= num_triangles() || slot < 0 || slot > 2)
    throw ConfigError("triangulation: side out of range");
  return tris_[size_t(tri)][size_t(slot)];
}

bool DecoratedTriangulation::is_boundary(int tri, int slot) const {
  return edges_[size_t(edge_at(tri, slot))].boundary;
}

double DecoratedTriangulation::coord(int edge) const {
  if (edges_[size_t(edge)].boundary)
    throw ConfigError("triangulation: boundary edges carry no coordinate");
  return edges_[size_t(edge)].coord;
}

void DecoratedTriangulation::set_coord(int edge, double value) {
  if (edges_[size_t(edge)].boundary)
    throw ConfigError("triangulation: boundary edges carry no coordinate");
  if (!(value > 0.0))
    throw ConfigError("triangulation: coordinates must be positive");
  edges_[size_t(edge)].coord = value;
}

DecoratedTriangulation::Side DecoratedTriangulation::partner(int tri,
                                                             int slot) const {
  const int e = edge_at(tri, slot);
  if (edges_[size_t(e)].boundary)
    throw ConfigError("triangulation: boundary side has no partner");
  for (int t = 0; t < num_triangles(); ++t)
    for (int s = 0; s < 3; ++s)
      if (tris_[size_t(t)][size_t(s)] == e && !(t == tri && s == slot))
        return {t, s};
  throw ConfigError("triangulation: gluing involution broken");
}

std::vector<double> DecoratedTriangulation::coords_in_traversal_order() const {
  std::vector<double> out;
  std::vector<bool> seen(edges_.size(), false);
  for (const auto& t : tris_)
    for (int e : t)
      if (!edges_[size_t(e)].boundary && !seen[size_t(e)]) {
        seen[size_t(e)] = true;
        out.push_back(edges_[size_t(e)].coord);
      }
  return out;
}

void DecoratedTriangulation::assign_coords_in_traversal_order(
    const std::vector<double>& vals) {
  std::vector<bool> seen(edges_.size(), false);
  size_t k = 0;
  for (const auto& t : tris_)
    for (int e : t)
      if (!edges_[size_t(e)].boundary && !seen[size_t(e)]) {
        seen[size_t(e)] = true;
        if (k >= vals.size())
          throw ConfigError("triangulation: coordinate count mismatch");
        set_coord(e, vals[k++]);
      }
  if (k != vals.size())
    throw ConfigError("triangulation: coordinate count mismatch");
}

void DecoratedTriangulation::rho(int tri, bool inverse) {
  if (tri < 0 || tri >= num_triangles())
    throw ConfigError("rho: triangle index out of range");
  auto& s = tris_[size_t(tri)];
  if (!inverse)
    s = {s[1], s[2], s[0]};  // mark moves one corner counterclockwise
  else
    s = {s[2], s[0], s[1]};
}

void DecoratedTriangulation::flip(int i, int j, bool inverse) {
  if (i == j) throw ConfigError("flip: self-flips are not supported");
  if (i < 0 || i >= num_triangles() || j < 0 || j >= num_triangles())
    throw ConfigError("flip: triangle index out of range");
  auto& ti = tris_[size_t(i)];
  auto& tj = tris_[size_t(j)];

  const int islot = inverse ? 0 : 1;
  const int jslot = inverse ? 1 : 2;
  const int e = ti[size_t(islot)];
  if (edges_[size_t(e)].boundary)
    throw ConfigError("flip: diagonal slot holds a boundary edge");
  if (tj[size_t(jslot)] != e || partner(i, islot) != Side{j, jslot})
    throw ConfigError("flip: triangles not in the reference configuration");

  const double ev = edges_[size_t(e)].coord;
  // positions (triangle, slot) -> multiplicative factor, with the diagonal
  // value taken before its own update; a repeated edge collects both factors
  struct Upd {
    int tri, slot;
    double factor;
  };
  std::array<Upd, 4> upd;
  if (!inverse) {
    upd = {Upd{i, 2, ev / (1.0 + ev)}, Upd{j, 0, ev / (1.0 + ev)},
           Upd{j, 1, 1.0 + ev}, Upd{i, 0, 1.0 + ev}};
  } else {
    upd = {Upd{i, 2, 1.0 + ev}, Upd{j, 0, 1.0 + ev},
           Upd{i, 1, ev / (1.0 + ev)}, Upd{j, 2, ev / (1.0 + ev)}};
  }
  for (const auto& u : upd) {
    const int edge = tris_[size_t(u.tri)][size_t(u.slot)];
    if (edges_[size_t(edge)].boundary) continue;  // nothing to transform
    edges_[size_t(edge)].coord *= u.factor;
  }
  edges_[size_t(e)].coord = 1.0 / ev;

  if (!inverse) {
    const std::array<int, 3> oi = ti, oj = tj;
    ti = {e, oj[1], oi[2]};
    tj = {oj[0], e, oi[0]};
  } else {
    const std::array<int, 3> oi = ti, oj = tj;
    ti = {oj[2], e, oi[2]};
    tj = {oj[0], oi[1], e};
  }
}

void DecoratedTriangulation::permute(const std::vector<int>& sigma,
                                     bool inverse) {
  if (int(sigma.size()) != num_triangles())
    throw ConfigError("permute: mapping size mismatch");
  std::vector<bool> hit(sigma.size(), false);
  for (int v : sigma) {
    if (v < 0 || v >= num_triangles() || hit[size_t(v)])
      throw ConfigError("permute: not a bijection");
    hit[size_t(v)] = true;
  }
  std::vector<std::array<int, 3>> next(tris_.size());
  for (size_t k = 0; k < tris_.size(); ++k) {
    if (!inverse)
      next[k] = tris_[size_t(sigma[k])];
    else
      next[size_t(sigma[k])] = tris_[k];
  }
  tris_ = std::move(next);
}

std::string DecoratedTriangulation::to_json() const {
  nlohmann::ordered_json j;
  j["triangles"] = nlohmann::ordered_json::array();
  for (size_t t = 0; t < tris_.size(); ++t) {
    nlohmann::ordered_json tj;
    tj["ord"] = t + 1;
    tj["marked_corner"] = 0;  // sides are stored anchored at the mark
    tj["sides"] = tris_[t];
    j["triangles"].push_back(tj);
  }
  j["edges"] = nlohmann::ordered_json::array();
  for (size_t e = 0; e < edges_.size(); ++e) {
    nlohmann::ordered_json ej;
    ej["id"] = e;
    ej["boundary"] = edges_[e].boundary;
    if (!edges_[e].boundary) ej["coord"] = edges_[e].coord;
    j["edges"].push_back(ej);
  }
  return j.dump();
}

DecoratedTriangulation DecoratedTriangulation::from_json(
    const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<EdgeSpec> edges(j.at("edges").size());
  for (const auto& ej : j.at("edges")) {
    EdgeSpec spec;
    spec.boundary = ej.at("boundary").get<bool>();
    if (!spec.boundary) spec.coord = ej.at("coord").get<double>();
    edges.at(ej.at("id").get<size_t>()) = spec;
  }
  std::vector<std::array<int, 3>> tris;
  for (const auto& tj : j.at("triangles")) {
    std::array<int, 3> sides{};
    int k = 0;
    for (const auto& s : tj.at("sides")) sides[size_t(k++)] = s.get<int>();
    const int mark = tj.at("marked_corner").get<int>();
    std::rotate(sides.begin(), sides.begin() + mark, sides.end());
    tris.push_back(sides);
  }
  return DecoratedTriangulation(std::move(tris), std::move(edges));
}

CompareResult compare_decorated(const DecoratedTriangulation& a,
                                const DecoratedTriangulation& b,
                                double coord_tol) {
  CompareResult res;
  if (a.num_triangles() != b.num_triangles()) {
    res.reason = "triangle count differs";
    return res;
  }
  for (int t = 0; t < a.num_triangles(); ++t)
    for (int s = 0; s < 3; ++s) {
      if (a.is_boundary(t, s) != b.is_boundary(t, s)) {
        res.reason = "boundary pattern differs";
        return res;
      }
      if (a.is_boundary(t, s)) {
        if (a.edge_at(t, s) != b.edge_at(t, s)) {
          res.reason = "boundary edge identity differs";
          return res;
        }
        continue;
      }
      if (!(a.partner(t, s) == b.partner(t, s))) {
        res.reason = "gluing pattern differs";
        return res;
      }
      const double ca = a.coord(a.edge_at(t, s));
      const double cb = b.coord(b.edge_at(t, s));
      res.max_coord_dev = std::max(
          res.max_coord_dev, std::abs(ca - cb) / std::max({1.0, std::abs(ca),
                                                           std::abs(cb)}));
    }
  res.equal = res.max_coord_dev <= coord_tol;
  if (!res.equal) res.reason = "coordinates differ";
  return res;
}

bool isomorphic_up_to_relabeling(const DecoratedTriangulation& a,
                                 const DecoratedTriangulation& b) {
  const int n = a.num_triangles();
  if (n != b.num_triangles()) return false;
  for (int root = 0; root < n; ++root) {
    std::vector<int> map(size_t(n), -1);  // a-triangle -> b-triangle
    std::vector<int> stack{0};
    map[0] = root;
    bool ok = true;
    while (ok && !stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      for (int s = 0; s < 3 && ok; ++s) {
        const bool ba = a.is_boundary(t, s);
        const bool bb = b.is_boundary(map[size_t(t)], s);
        if (ba != bb) {
          ok = false;
          break;
        }
        if (ba) continue;
        const auto pa = a.partner(t, s);
        const auto pb = b.partner(map[size_t(t)], s);
        if (pa.slot != pb.slot) {
          ok = false;
          break;
        }
        if (map[size_t(pa.tri)] == -1) {
          map[size_t(pa.tri)] = pb.tri;
          stack.push_back(pa.tri);
        } else if (map[size_t(pa.tri)] != pb.tri) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    // require a full bijection
    std::vector<bool> hit(size_t(n), false);
    bool bij = true;
    for (int v : map) {
      if (v < 0 || hit[size_t(v)]) {
        bij = false;
        break;
      }
      hit[size_t(v)] = true;
    }
    if (bij) return true;
  }
  return false;
}

GroupoidWord& GroupoidWord::rho(int i, bool inverse) {
  Token t;
  t.kind = Token::Kind::rho;
  t.i = i;
  t.inverse = inverse;
  tokens.push_back(std::move(t));
  return *this;
}

GroupoidWord& GroupoidWord::omega(int i, int j, bool inverse, Deco ideco,
                                  Deco jdeco) {
  Token t;
  t.kind = Token::Kind::omega;
  t.i = i;
  t.j = j;
  t.inverse = inverse;
  t.ideco = ideco;
  t.jdeco = jdeco;
  tokens.push_back(std::move(t));
  return *this;
}

GroupoidWord& GroupoidWord::perm(std::vector<int> sigma0) {
  Token t;
  t.kind = Token::Kind::perm;
  t.perm = std::move(sigma0);
  tokens.push_back(std::move(t));
  return *this;
}

GroupoidWord& GroupoidWord::append(const GroupoidWord& other) {
  tokens.insert(tokens.end(), other.tokens.begin(), other.tokens.end());
  return *this;
}

GroupoidWord GroupoidWord::inverted() const {
  GroupoidWord out;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    Token t = *it;
    t.inverse = !t.inverse;
    out.tokens.push_back(std::move(t));
  }
  return out;
}

namespace {

std::string deco_suffix(Deco d) {
  switch (d) {
    case Deco::hat:
      return "^";
    case Deco::check:
      return "v";
    default:
      return "";
  }
}

std::string perm_cycles(const std::vector<int>& sigma) {
  // sigma is 0-based new[k] = old[sigma[k]]; print 1-based cycles of the
  // underlying permutation k -> sigma[k]
  std::string out = "p";
  std::vector<bool> seen(sigma.size(), false);
  bool any = false;
  for (size_t k = 0; k < sigma.size(); ++k) {
    if (seen[k] || sigma[k] == int(k)) continue;
    any = true;
    out += "(";
    size_t c = k;
    bool first = true;
    while (!seen[c]) {
      seen[c] = true;
      if (!first) out += " ";
      out += std::to_string(c + 1);
      first = false;
      c = size_t(sigma[c]);
    }
    out += ")";
  }
  if (!any) out += "()";
  return out;
}

}  // namespace

std::string GroupoidWord::to_string() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += " ";
    switch (t.kind) {
      case Token::Kind::rho:
        out += "r(" + std::to_string(t.i) + ")";
        break;
      case Token::Kind::omega:
        out += "w(" + std::to_string(t.i) + deco_suffix(t.ideco) + "," +
               std::to_string(t.j) + deco_suffix(t.jdeco) + ")";
        break;
      case Token::Kind::perm:
        out += perm_cycles(t.perm);
        break;
    }
    if (t.inverse) out += "^-1";
  }
  return out;
}

GroupoidWord GroupoidWord::parse(const std::string& text) {
  GroupoidWord word;
  // split on whitespace outside parentheses (perm cycles contain spaces)
  std::vector<std::string> pieces;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) {
      if (!cur.empty()) pieces.push_back(std::exchange(cur, {}));
      continue;
    }
    if (c == '(') ++depth;
    if (c == ')') --depth;
    cur += c;
  }
  if (!cur.empty()) pieces.push_back(cur);
  std::string tok;
  auto parse_index = [](const std::string& s, size_t& pos, Deco& deco) {
    size_t end = pos;
    while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end])))
      ++end;
    if (end == pos) throw ConfigError("word parse: index expected in " + s);
    int idx = std::stoi(s.substr(pos, end - pos));
    deco = Deco::none;
    if (end < s.size() && s[end] == 'v') {
      deco = Deco::check;
      ++end;
    } else if (end < s.size() && s[end] == '^' &&
               !(end + 1 < s.size() && s[end + 1] == '-')) {
      deco = Deco::hat;
      ++end;
    }
    pos = end;
    return idx;
  };
  for (std::string& piece : pieces) {
    tok = std::move(piece);
    bool inverse = false;
    if (tok.size() >= 3 && tok.substr(tok.size() - 3) == "^-1") {
      inverse = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (tok.size() < 3) throw ConfigError("word parse: bad token " + tok);
    if (tok[0] == 'r') {
      if (tok[1] != '(' || tok.back() != ')')
        throw ConfigError("word parse: bad rho token " + tok);
      word.rho(std::stoi(tok.substr(2, tok.size() - 3)), inverse);
    } else if (tok[0] == 'w') {
      if (tok[1] != '(' || tok.back() != ')')
        throw ConfigError("word parse: bad omega token " + tok);
      size_t pos = 2;
      Deco di, dj;
      const int i = parse_index(tok, pos, di);
      if (pos >= tok.size() || tok[pos] != ',')
        throw ConfigError("word parse: bad omega token " + tok);
      ++pos;
      const int j = parse_index(tok, pos, dj);
      if (pos + 1 != tok.size() || tok[pos] != ')')
        throw ConfigError("word parse: bad omega token " + tok);
      word.omega(i, j, inverse, di, dj);
    } else if (tok[0] == 'p') {
      // cycles; the mapping size is fixed later at application time, so we
      // parse into a sparse cycle list and expand against the max index
      std::vector<std::vector<int>> cycles;
      size_t pos = 1;
      int maxi = 0;
      while (pos < tok.size()) {
        if (tok[pos] != '(')
          throw ConfigError("word parse: bad perm token " + tok);
        ++pos;
        std::vector<int> cyc;
        while (pos < tok.size() && tok[pos] != ')') {
          if (tok[pos] == ' ') {
            ++pos;
            continue;
          }
          size_t end = pos;
          while (end < tok.size() &&
                 std::isdigit(static_cast<unsigned char>(tok[end])))
            ++end;
          if (end == pos) throw ConfigError("word parse: bad perm " + tok);
          cyc.push_back(std::stoi(tok.substr(pos, end - pos)));
          maxi = std::max(maxi, cyc.back());
          pos = end;
        }
        if (pos >= tok.size()) throw ConfigError("word parse: bad perm " + tok);
        ++pos;  // ')'
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
      }
      std::vector<int> sigma(static_cast<std::size_t>(maxi));
      for (size_t k = 0; k < sigma.size(); ++k) sigma[k] = int(k);
      for (const auto& cyc : cycles)
        for (size_t k = 0; k < cyc.size(); ++k)
          sigma[size_t(cyc[k] - 1)] = cyc[(k + 1) % cyc.size()] - 1;
      Token t;
      t.kind = Token::Kind::perm;
      t.inverse = inverse;
      t.perm = std::move(sigma);
      word.tokens.push_back(std::move(t));
    } else {
      throw ConfigError("word parse: unknown token " + tok);
    }
  }
  return word;
}

namespace {

void apply_token(DecoratedTriangulation& tri, const Token& t, size_t pos) {
  try {
    switch (t.kind) {
      case Token::Kind::rho:
        tri.rho(t.i - 1, t.inverse);
        return;
      case Token::Kind::perm: {
        std::vector<int> sigma = t.perm;
        if (int(sigma.size()) < tri.num_triangles()) {
          const size_t old = sigma.size();
          sigma.resize(static_cast<std::size_t>(tri.num_triangles()));
          for (size_t k = old; k < sigma.size(); ++k) sigma[k] = int(k);
        }
        tri.permute(sigma, t.inverse);
        return;
      }
      case Token::Kind::omega: {
        // decorations conjugate by rho on the decorated label, hat with
        // rho first, check with rho^{-1} first
        if (t.ideco != Deco::none) tri.rho(t.i - 1, t.ideco == Deco::check);
        if (t.jdeco != Deco::none) tri.rho(t.j - 1, t.jdeco == Deco::check);
        tri.flip(t.i - 1, t.j - 1, t.inverse);
        if (t.jdeco != Deco::none) tri.rho(t.j - 1, t.jdeco == Deco::hat);
        if (t.ideco != Deco::none) tri.rho(t.i - 1, t.ideco == Deco::hat);
        return;
      }
    }
  } catch (const ConfigError& e) {
    throw ConfigError("word: generator at position " + std::to_string(pos) +
                      " inapplicable: " + e.what());
  }
}

}  // namespace

DecoratedTriangulation apply_word(const DecoratedTriangulation& tri,
                                  const GroupoidWord& word) {
  DecoratedTriangulation out = tri;
  for (size_t k = 0; k < word.tokens.size(); ++k)
    apply_token(out, word.tokens[k], k);
  return out;
}

RelationResult check_relation(const GroupoidWord& lhs, const GroupoidWord& rhs,
                              const DecoratedTriangulation& tri,
                              int n_coord_samples, unsigned long long seed) {
  RelationResult res;
  res.holds = true;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logu(-1.5, 1.5);
  const size_t n_coords = tri.coords_in_traversal_order().size();
  for (int sample = 0; sample <= n_coord_samples; ++sample) {
    DecoratedTriangulation start = tri;
    if (sample > 0) {
      std::vector<double> coords(n_coords);
      for (auto& c : coords) c = std::exp(logu(rng));
      start.assign_coords_in_traversal_order(coords);
    }
    const DecoratedTriangulation a = apply_word(start, lhs);
    const DecoratedTriangulation b = apply_word(start, rhs);
    const CompareResult cmp = compare_decorated(a, b);
    res.max_deviation = std::max(res.max_deviation, cmp.max_coord_dev);
    if (!cmp.equal) {
      res.holds = false;
      if (cmp.reason != "coordinates differ")
        res.max_deviation = std::numeric_limits<double>::infinity();
    }
  }
  return res;
}

DecoratedTriangulation annulus(int N) {
  return annulus(N, std::vector<double>(static_cast<std::size_t>(2 * N), 1.0));
}

DecoratedTriangulation annulus(int N, const std::vector<double>& coords) {
  if (N < 1) throw DomainError("annulus: N must be >= 1");
  if (coords.size() != size_t(2 * N))
    throw DomainError("annulus: need 2N coordinates");
  // edges 0..2N-1 = f_1..f_2N interior; 2N..3N-1 bottom, 3N..4N-1 top
  std::vector<DecoratedTriangulation::EdgeSpec> edges(static_cast<std::size_t>(4 * N));
  for (int k = 0; k < 2 * N; ++k) edges[size_t(k)] = {false, coords[size_t(k)]};
  for (int k = 2 * N; k < 4 * N; ++k) edges[size_t(k)] = {true, 0.0};
  std::vector<std::array<int, 3>> tris(static_cast<std::size_t>(2 * N));
  const auto f = [&](int k) { return wrap_label(k, 2 * N) - 1; };
  for (int j = 1; j <= N; ++j) {
    tris[size_t(2 * j - 2)] = {f(2 * j - 1), 2 * N + (j - 1), f(2 * j)};
    tris[size_t(2 * j - 1)] = {f(2 * j + 1), 3 * N + (j - 1), f(2 * j)};
  }
  return DecoratedTriangulation(std::move(tris), std::move(edges));
}

std::vector<double> annulus_coords(const DecoratedTriangulation& tri) {
  const int twoN = tri.num_triangles();
  if (twoN % 2 != 0)
    throw ConfigError("annulus_coords: odd triangle count");
  std::vector<double> f(static_cast<std::size_t>(twoN));
  for (int j = 1; 2 * j - 1 <= twoN; ++j) {
    f[size_t(2 * j - 2)] = tri.coord(tri.edge_at(2 * j - 2, 0));
    f[size_t(2 * j - 1)] = tri.coord(tri.edge_at(2 * j - 2, 2));
  }
  return f;
}

GroupoidWord dehn_word(int N, int n) {
  if (N < 1) throw DomainError("dehn_word: N must be >= 1");
  if (n < 1) throw DomainError("dehn_word: n must be >= 1");
  GroupoidWord word;
  const int twoN = 2 * N;
  for (int rep = 0; rep < n; ++rep) {
    for (int l = 1; l <= N; ++l)
      word.omega(wrap_label(2 * l + 1, twoN), 2 * l, /*inverse=*/true,
                 Deco::none, Deco::check);
    for (int k = 1; k <= twoN; ++k) word.rho(k, /*inverse=*/true);
    std::vector<int> sigma(static_cast<std::size_t>(twoN));
    for (int k = 0; k < twoN; ++k) sigma[size_t(k)] = (k + twoN - 1) % twoN;
    word.perm(std::move(sigma));
  }
  return word;
}

std::vector<double> lightcone_map(const std::vector<double>& f) {
  const int twoN = int(f.size());
  if (twoN < 2 || twoN % 2 != 0)
    throw DomainError("lightcone_map: need 2N coordinates");
  auto at = [&](int k) { return f[size_t(wrap_label(k, twoN) - 1)]; };
  std::vector<double> out(f.size());
  for (int j = 1; 2 * j <= twoN; ++j) {
    out[size_t(wrap_label(2 * j, twoN) - 1)] = 1.0 / at(2 * j - 1);
    out[size_t(wrap_label(2 * j + 1, twoN) - 1)] =
        at(2 * j) * (1.0 + at(2 * j - 1)) * (1.0 + at(2 * j + 1));
  }
  return out;
}

double lightcone_equivalence_check(int N, const std::vector<double>& coords) {
  if (coords.size() != size_t(2 * N))
    throw DomainError("lightcone_equivalence_check: need 2N coordinates");
  // zigzag identification f_m = chi_{m,0} (m odd), 1/chi_{m,-1} (m even)
  std::vector<double> zig(coords.size());
  for (int m = 1; m <= 2 * N; ++m)
    zig[size_t(m - 1)] =
        (m % 2 == 1) ? coords[size_t(m - 1)] : 1.0 / coords[size_t(m - 1)];
  const lattice::ZigzagState state(N, 0, zig);
  const lattice::ZigzagState moved = lattice::lightcone_step(state);
  std::vector<double> f_lat(coords.size());
  for (int m = 1; m <= 2 * N; ++m)
    f_lat[size_t(m - 1)] = (m % 2 == 1) ? moved.chi(m, 0)
                                        : 1.0 / moved.chi(m, -1);

  const DecoratedTriangulation moved_tri =
      apply_word(annulus(N, coords), dehn_word(N, 1));
  const std::vector<double> f_word = annulus_coords(moved_tri);

  double dev = 0.0;
  for (size_t k = 0; k < f_lat.size(); ++k)
    dev = std::max(dev, std::abs(f_lat[k] - f_word[k]) /
                            std::max({1.0, std::abs(f_lat[k]),
                                      std::abs(f_word[k])}));
  return dev;
}

namespace {

// F(tau_N, tau_{n:N}): descending product over j = N..n+1 of
// T_{hat(2j),2j-1} T^{-1}_{2j-1,check(2j-2)} T^{-1}_{2j,check(1)}.
GroupoidWord w_conjugator(int N, int n) {
  GroupoidWord w;
  for (int j = N; j > n; --j) {
    w.omega(2 * j, 2 * j - 1, false, Deco::hat, Deco::none);
    w.omega(2 * j - 1, 2 * j - 2, true, Deco::none, Deco::check);
    w.omega(2 * j, 1, true, Deco::none, Deco::check);
  }
  return w;
}

std::vector<int> shift_down(int twoN) {
  std::vector<int> sigma(static_cast<std::size_t>(twoN));
  for (int k = 0; k < twoN; ++k) sigma[size_t(k)] = (k + twoN - 1) % twoN;
  return sigma;
}

std::vector<int> odd_cycle(int twoN, int direction) {
  // odds move by 2*direction, evens fixed (1-based labels)
  std::vector<int> sigma(static_cast<std::size_t>(twoN));
  for (int k = 0; k < twoN; ++k) sigma[size_t(k)] = k;
  for (int m = 1; m <= twoN; m += 2) {
    const int target = wrap_label(m + 2 * direction, twoN);
    // new_tri[m] = old_tri[target] realizes m <- m + 2*direction content
    sigma[size_t(m - 1)] = target - 1;
  }
  return sigma;
}

std::vector<int> pair_transpositions(int N, int n) {
  std::vector<int> sigma(static_cast<std::size_t>(2 * N));
  for (int k = 0; k < 2 * N; ++k) sigma[size_t(k)] = k;
  for (int m = n; m <= N; ++m)
    std::swap(sigma[size_t(2 * m - 2)], sigma[size_t(2 * m - 1)]);
  return sigma;
}

GroupoidWord rhs_tilde_n(int N, int n) {
  GroupoidWord w;
  for (int j = 1; j <= n - 1; ++j)
    w.omega(2 * j + 1, 2 * j, true, Deco::none, Deco::check);
  for (int k = N - 1; k > n; --k) w.omega(2 * N - 1, 2 * k - 1);
  w.omega(2 * N - 1, 2 * n, false, Deco::none, Deco::check);
  w.omega(1, 2 * N - 1, true);
  w.omega(2 * n - 1, 2 * n, false, Deco::hat, Deco::none);
  for (int l = 1; l <= 2 * n - 2; ++l) w.rho(l, true);
  w.perm(pair_transpositions(N, n));
  w.perm(shift_down(2 * N));
  return w;
}

GroupoidWord rhs_tilde_1(int N) {
  GroupoidWord w;
  for (int j = N - 1; j > 1; --j) w.omega(2 * N - 1, 2 * j - 1);
  w.omega(2 * N - 1, 2, false, Deco::none, Deco::check);
  w.omega(1, 2 * N - 1, true);
  w.omega(1, 2, false, Deco::hat, Deco::none);
  w.perm(odd_cycle(2 * N, -1));
  return w;
}

GroupoidWord rhs_power_any(int N, int n) {
  GroupoidWord w;
  for (int j = n; j > 1; --j) w.omega(2 * n + 1, 2 * j - 1);
  w.omega(2 * n + 1, 2, false, Deco::none, Deco::check);
  w.omega(1, 2 * n + 1, true);
  w.omega(1, 2, false, Deco::hat, Deco::none);
  for (int k = n + 1; k < N; ++k) w.omega(1, 2 * k + 1, true);
  for (int rep = 0; rep < n; ++rep) w.perm(odd_cycle(2 * N, +1));
  return w;
}

GroupoidWord rhs_power_N() {
  GroupoidWord w;
  w.omega(1, 2, true, Deco::check, Deco::hat);
  return w;
}

}  // namespace

WordIdentityResult word_identity_check(WordIdentity id, int N, int n,
                                       int n_coord_samples,
                                       unsigned long long seed) {
  if (N < 2) throw DomainError("word_identity_check: N must be >= 2");
  if ((id == WordIdentity::tilde_n || id == WordIdentity::power_any) &&
      !(1 <= n && n < N))
    throw DomainError("word_identity_check: need 1 <= n < N");

  GroupoidWord lhs, rhs;
  switch (id) {
    case WordIdentity::tilde_n:
      lhs = dehn_word(N, 1);
      lhs.append(w_conjugator(N, n));
      rhs = w_conjugator(N, n);
      rhs.append(rhs_tilde_n(N, n));
      break;
    case WordIdentity::tilde_1:
      lhs = dehn_word(N, 1);
      lhs.append(w_conjugator(N, 1));
      rhs = w_conjugator(N, 1);
      rhs.append(rhs_tilde_1(N));
      break;
    case WordIdentity::power_any:
      lhs = dehn_word(N, N - n);
      lhs.append(w_conjugator(N, 1));
      rhs = w_conjugator(N, 1);
      rhs.append(rhs_power_any(N, n));
      break;
    case WordIdentity::power_N:
      lhs = dehn_word(N, 1).inverted();
      for (int rep = 1; rep < N; ++rep)
        lhs.append(dehn_word(N, 1).inverted());
      lhs.append(w_conjugator(N, 1));
      rhs = w_conjugator(N, 1);
      rhs.append(rhs_power_N());
      break;
  }
  const RelationResult rel =
      check_relation(lhs, rhs, annulus(N), n_coord_samples, seed);
  return {rel.holds, rel.max_deviation};
}

}  // namespace dlt::triangulation
