#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gapforge/bipartite.hpp"
#include "gapforge/error.hpp"
#include "gapforge/exact.hpp"
#include "gapforge/gap_source.hpp"
#include "gapforge/graph.hpp"
#include "gapforge/reduction_output.hpp"

namespace gapforge {

inline constexpr std::size_t kDefaultVertexCap = 1'000'000;
inline constexpr std::size_t kDefaultEdgeCap = 50'000'000;

struct BuildCaps {
  std::size_t max_vertices = kDefaultVertexCap;
  std::size_t max_edges = kDefaultEdgeCap;
};

// ---------------------------------------------------------------------------
// Parameters for the ratio-below-3/2 reduction

/// Exact parameter set: s = C(k,2), d = ceil(s/eps)^(2s),
/// t = ceil((1/2 - delta) * d^(1 - 1/(2s))).
struct Params32 {
  int k = 3;
  std::size_t s = 3;
  Rational epsilon;
  Rational delta;
  BigInt d_root;  // ceil(s/eps), so d = d_root^(2s)
  BigInt d;
  BigInt t;
  // Every ratio strictly below this value is admitted: (3/2 - delta)/(1 + eps).
  Rational ratio_ceiling;
  std::optional<BigInt> n;

  // Asymptotic-regime inequalities, evaluated exactly.
  bool small_copies = false;      // s*t < eps*d
  bool choose_bound = false;      // (1/2 - delta)*d/t <= d^(1/(2s))
  bool factorial_bound = false;   // (k+1)! < 2*delta*sqrt(d) - 1
  std::optional<bool> d_fits_source;      // d <= ceil(n^(6/(k+1)))
  std::optional<bool> source_size_ok;     // ceil(n^(6/(k+6))) > (k+6)!

  bool admits_ratio(const Rational& rho) const { return ratio_ceiling > rho; }

  bool asymptotic_regime() const {
    return small_copies && choose_bound && factorial_bound && d_fits_source.value_or(false);
  }
};

namespace detail {

// ceil(n^(p/q)) >= target  <=>  n^p > (target-1)^q  (target >= 1, n >= 0).
inline bool ceil_root_at_least(const BigInt& n, std::uint64_t p, std::uint64_t q, const BigInt& target) {
  if (target <= 0) return true;
  return pow_big(n, p) > pow_big(target - 1, q);
}

}  // namespace detail

inline Params32 derive_params32(int k, std::optional<BigInt> n, const Rational& epsilon, const Rational& delta) {
  if (k < 3) throw InputError("derive_params32 requires k >= 3");
  if (!(epsilon > 0 && epsilon < 1)) throw InputError("epsilon must lie in (0,1)");
  if (!(delta > 0 && delta < Rational(1, 2))) throw InputError("delta must lie in (0,1/2)");
  Params32 p;
  p.k = k;
  p.s = static_cast<std::size_t>(k) * static_cast<std::size_t>(k - 1) / 2;
  p.epsilon = epsilon;
  p.delta = delta;
  const Rational half(1, 2);
  const std::uint64_t two_s = 2 * p.s;
  p.d_root = ceil_nonneg(Rational(p.s) / epsilon);
  p.d = pow_big(p.d_root, two_s);
  // d^(1 - 1/(2s)) = d_root^(2s - 1) exactly.
  p.t = ceil_nonneg((half - delta) * Rational(pow_big(p.d_root, two_s - 1)));
  p.ratio_ceiling = (Rational(3, 2) - delta) / (1 + epsilon);

  p.small_copies = Rational(p.s * p.t) < epsilon * Rational(p.d);
  p.choose_bound = (half - delta) * Rational(p.d, p.t) <= Rational(p.d_root);
  // sqrt(d) = d_root^s.
  p.factorial_bound = Rational(factorial(static_cast<std::uint64_t>(k) + 1)) <
                      2 * delta * Rational(pow_big(p.d_root, p.s)) - 1;
  if (n) {
    p.n = n;
    p.d_fits_source = detail::ceil_root_at_least(*n, 6, static_cast<std::uint64_t>(k) + 1, p.d);
    p.source_size_ok =
        detail::ceil_root_at_least(*n, 6, static_cast<std::uint64_t>(k) + 6, factorial(static_cast<std::uint64_t>(k) + 6) + 1);
  }
  return p;
}

inline nlohmann::json to_json(const Params32& p) {
  nlohmann::json j = {{"k", p.k},
                      {"s", p.s},
                      {"epsilon", to_string(p.epsilon)},
                      {"delta", to_string(p.delta)},
                      {"d", to_decimal(p.d)},
                      {"t", to_decimal(p.t)},
                      {"ratio_ceiling", to_string(p.ratio_ceiling)},
                      {"flags",
                       {{"s_t_lt_eps_d", p.small_copies},
                        {"choose_bound", p.choose_bound},
                        {"factorial_bound", p.factorial_bound}}}};
  if (p.n) {
    j["n"] = to_decimal(*p.n);
    j["flags"]["d_fits_source"] = *p.d_fits_source;
    j["flags"]["source_size_ok"] = *p.source_size_ok;
  }
  j["flags"]["asymptotic_regime"] = p.asymptotic_regime();
  return j;
}

// ---------------------------------------------------------------------------
// Construction of G'

/// Vertex numbering of G': B(H), then x_1..x_d, y_1..y_d, then (a, i) in
/// lexicographic order, then w_{b,j,i} in lexicographic order.
struct Layout32 {
  std::size_t b_size = 0;
  std::size_t a_size = 0;
  std::size_t s = 0;
  std::size_t d = 0;
  std::size_t t = 0;

  Vertex base(Vertex b) const { return b; }
  Vertex x(std::size_t c) const { return static_cast<Vertex>(b_size + c); }
  Vertex y(std::size_t c) const { return static_cast<Vertex>(b_size + d + c); }
  std::size_t copy_offset() const { return b_size + 2 * d; }
  std::size_t witness_offset() const { return copy_offset() + a_size * t; }
  Vertex copy(Vertex a, std::size_t i) const { return static_cast<Vertex>(copy_offset() + (a - 1) * t + i); }
  Vertex witness(Vertex b, std::size_t j, std::size_t i) const {
    return static_cast<Vertex>(witness_offset() + ((b - 1) * s + (j - 1)) * t + i);
  }
  std::size_t num_vertices() const { return witness_offset() + b_size * s * t; }

  nlohmann::json to_json() const {
    return {{"B", {{"first", 1}, {"count", b_size}}},
            {"X", {{"first", b_size + 1}, {"count", d}}},
            {"Y", {{"first", b_size + d + 1}, {"count", d}}},
            {"C", {{"first", copy_offset() + 1}, {"count", a_size * t}, {"order", "(a,i)"}}},
            {"W", {{"first", witness_offset() + 1}, {"count", b_size * s * t}, {"order", "(b,j,i)"}}}};
  }
};

/// Builds G' from a coloured bipartite graph with a_colors = s, b_colors = d.
///
/// Edge rules:
///   E1  b ~ b'              same beta colour, b != b'
///   E2  x_c ~ b, y_c ~ b    beta(b) = c
///   E3  w_{b,j,i} ~ b'      same beta colour, b != b', all j, i
///   E4  (a,i) ~ w_{b,j,i}   {a,b} in E(H), j = alpha(a)
///   E5  (a,i) ~ (a',i)      a != a'
inline ReductionOutput build_g_prime(const ColoredBipartiteGraph& h, std::size_t t, BuildCaps caps = {}) {
  if (t < 1) throw InputError("t must be positive");
  const std::size_t s = static_cast<std::size_t>(h.a_colors);
  const std::size_t d = static_cast<std::size_t>(h.b_colors);
  if (!h.every_beta_class_nonempty()) {
    throw InputError("every beta colour class must be nonempty (an empty class isolates x_c)");
  }
  Layout32 layout{h.b_size(), h.a_size(), s, d, t};
  const unsigned __int128 est_vertices = static_cast<unsigned __int128>(h.b_size()) * (1 + s * t) +
                                         static_cast<unsigned __int128>(h.a_size()) * t + 2 * d;
  if (est_vertices > caps.max_vertices) {
    throw CapExceeded("G' would have " + std::to_string(static_cast<std::uint64_t>(est_vertices)) +
                      " vertices (cap " + std::to_string(caps.max_vertices) + ")");
  }

  std::vector<std::vector<Vertex>> classes(d + 1);
  for (Vertex b = 1; b <= h.b_size(); ++b) classes[static_cast<std::size_t>(h.beta_of(b))].push_back(b);
  unsigned __int128 est_edges = 2 * h.b_size() + static_cast<unsigned __int128>(h.graph.num_edges()) * t +
                                static_cast<unsigned __int128>(t) * h.a_size() * (h.a_size() - 1) / 2;
  for (std::size_t c = 1; c <= d; ++c) {
    const unsigned __int128 m = classes[c].size();
    est_edges += m * (m - 1) / 2 + m * (m - 1) * s * t;
  }
  if (est_edges > caps.max_edges) {
    throw CapExceeded("G' would have " + std::to_string(static_cast<std::uint64_t>(est_edges)) +
                      " edges (cap " + std::to_string(caps.max_edges) + ")");
  }

  GraphBuilder builder(layout.num_vertices());
  for (std::size_t c = 1; c <= d; ++c) {
    const auto& cls = classes[c];
    for (std::size_t x = 0; x < cls.size(); ++x) {
      for (std::size_t y = x + 1; y < cls.size(); ++y) builder.add_edge(cls[x], cls[y]);  // E1
      builder.add_edge(layout.x(c), cls[x]);                                             // E2
      builder.add_edge(layout.y(c), cls[x]);
      for (Vertex other : cls) {
        if (other == cls[x]) continue;
        for (std::size_t j = 1; j <= s; ++j) {
          for (std::size_t i = 1; i <= t; ++i) builder.add_edge(layout.witness(cls[x], j, i), other);  // E3
        }
      }
    }
  }
  for (const auto& [a, b] : h.graph.edges()) {
    const auto j = static_cast<std::size_t>(h.alpha_of(a));
    for (std::size_t i = 1; i <= t; ++i) builder.add_edge(layout.copy(a, i), layout.witness(b, j, i));  // E4
  }
  for (std::size_t i = 1; i <= t; ++i) {
    for (Vertex a = 1; a <= h.a_size(); ++a) {
      for (Vertex a2 = a + 1; a2 <= h.a_size(); ++a2) builder.add_edge(layout.copy(a, i), layout.copy(a2, i));  // E5
    }
  }

  ReductionOutput out;
  out.graph = builder.build();
  out.roles.resize(layout.num_vertices());
  for (Vertex b = 1; b <= h.b_size(); ++b) {
    out.roles[b - 1] = Role{RoleKind::BaseRight, b, 0, 0, static_cast<std::uint32_t>(h.beta_of(b))};
  }
  for (std::size_t c = 1; c <= d; ++c) {
    out.roles[layout.x(c) - 1] = Role{RoleKind::XGuard, 0, 0, 0, static_cast<std::uint32_t>(c)};
    out.roles[layout.y(c) - 1] = Role{RoleKind::YGuard, 0, 0, 0, static_cast<std::uint32_t>(c)};
  }
  for (Vertex a = 1; a <= h.a_size(); ++a) {
    for (std::size_t i = 1; i <= t; ++i) {
      out.roles[layout.copy(a, i) - 1] = Role{RoleKind::Copy, a, 1, static_cast<std::uint32_t>(i), 0};
    }
  }
  for (Vertex b = 1; b <= h.b_size(); ++b) {
    for (std::size_t j = 1; j <= s; ++j) {
      for (std::size_t i = 1; i <= t; ++i) {
        out.roles[layout.witness(b, j, i) - 1] =
            Role{RoleKind::Witness, b, static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i),
                 static_cast<std::uint32_t>(h.beta_of(b))};
      }
    }
  }
  out.manifest = {{"construction", "g_prime"},
                  {"parameters", {{"s", s}, {"d", d}, {"t", t}, {"a_size", h.a_size()}, {"b_size", h.b_size()}}},
                  {"source_digest", digest_of(h)},
                  {"layout", layout.to_json()},
                  {"roles", encode_roles(out.roles)},
                  {"num_vertices", out.graph.num_vertices()},
                  {"num_edges", out.graph.num_edges()}};
  out.source = std::make_shared<const ColoredBipartiteGraph>(h);
  return out;
}

inline Layout32 layout32_of(const ReductionOutput& out) {
  if (out.manifest.value("construction", "") != "g_prime") throw InputError("not a G' reduction output");
  const auto& p = out.manifest.at("parameters");
  return Layout32{p.at("b_size").get<std::size_t>(), p.at("a_size").get<std::size_t>(), p.at("s").get<std::size_t>(),
                  p.at("d").get<std::size_t>(), p.at("t").get<std::size_t>()};
}

namespace detail {

// Biclique K with K.left rainbow under alpha onto [left_colors] and K.right
// rainbow under beta onto [right_colors]. Throws WitnessError naming the defect.
inline void check_colored_biclique(const ColoredBipartiteGraph& h, const Biclique& k, std::size_t left_colors,
                                   std::size_t right_colors, const std::string& left_name,
                                   const std::string& right_name) {
  for (Vertex a : k.left) {
    if (a < 1 || a > h.a_size()) throw WitnessError("left vertex " + std::to_string(a) + " not in A(H)");
  }
  for (Vertex b : k.right) {
    if (b < 1 || b > h.b_size()) throw WitnessError("right vertex " + std::to_string(b) + " not in B(H)");
  }
  auto surjective = [](const std::vector<Vertex>& side, std::size_t colors, auto color_of, const std::string& name,
                       const std::string& range) {
    std::vector<Vertex> holder(colors + 1, 0);
    for (Vertex v : side) {
      const auto c = static_cast<std::size_t>(color_of(v));
      if (holder[c] != 0) {
        throw WitnessError(name + " not injective: vertices " + std::to_string(holder[c]) + " and " +
                           std::to_string(v) + " share colour " + std::to_string(c));
      }
      holder[c] = v;
    }
    if (side.size() != colors) throw WitnessError(name + " not surjective onto " + range);
  };
  surjective(k.left, left_colors, [&](Vertex a) { return h.alpha_of(a); }, "alpha", left_name);
  surjective(k.right, right_colors, [&](Vertex b) { return h.beta_of(b); }, "beta", right_name);
  for (Vertex a : k.left) {
    for (Vertex b : k.right) {
      if (!h.graph.has_edge(a, b)) {
        throw WitnessError("missing biclique edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
      }
    }
  }
}

}  // namespace detail

/// Completeness witness for G': the planted right side plus every copy of
/// the planted left side, of size d + s*t.
inline DominatingSetResult extract_yes_witness32(const ReductionOutput& out, const Biclique& k) {
  if (!out.source) throw InputError("reduction output carries no source instance");
  const auto layout = layout32_of(out);
  detail::check_colored_biclique(*out.source, k, layout.s, layout.d, "[s]", "[d]");
  DominatingSetResult result;
  for (Vertex b : k.right) result.vertices.push_back(layout.base(b));
  for (Vertex a : k.left) {
    for (std::size_t i = 1; i <= layout.t; ++i) result.vertices.push_back(layout.copy(a, i));
  }
  std::sort(result.vertices.begin(), result.vertices.end());
  if (!is_dominating(out.graph, result.vertices)) {
    throw InternalFault("completeness witness for G' does not dominate");
  }
  // Every dominating set meets each of the d disjoint sets B_c.
  result.gamma_lower_bound = layout.d;
  result.optimal = result.size() == layout.d;
  return result;
}

}  // namespace gapforge
