#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gapforge/bipartite.hpp"
#include "gapforge/error.hpp"
#include "gapforge/exact.hpp"
#include "gapforge/gap_source.hpp"
#include "gapforge/graph.hpp"
#include "gapforge/reduce32.hpp"
#include "gapforge/reduction_output.hpp"

namespace gapforge {

// ---------------------------------------------------------------------------
// Parameters

/// d = (30 c^2 (k+1)^2)^(4k^3 + 3c) and t = c * d^(c - 1/(2 delta s)), with
/// d replaced by d^(2 delta s) whenever that power is not an integer.
///
/// Every stored value is exact. Comparisons that involve fractional powers of
/// d go through root = d^(1/(2 delta s)), which is an integer once t is.
struct ParamsMain {
  int k = 3;
  int c = 1;
  int delta = 2;
  std::size_t s = 3;
  std::uint64_t base = 0;      // 30 c^2 (k+1)^2
  std::uint64_t exponent = 0;  // 4k^3 + 3c
  bool adjusted = false;       // d <- d^(2 delta s) was applied
  BigInt d;
  BigInt root;  // d^(1/(2 delta s))
  BigInt t;

  bool cond_root_gap = false;       // (i)   d^(1/2 - 1/(2s)) > c s^c
  bool cond_factorial = false;      // (ii)  d > (3 (k+1)!)^(2s)
  bool cond_color_range = false;    // (iii) d > (10 delta s c^2)^(2 delta s)
  bool copies_small = false;        // delta s c t < d^c / 10
  bool copies_ratio = false;        // c d^c / (3t) <= d^(1/(2 delta s))
  bool factorial_root = false;      // (k+1)! < d^(1/(2s)) / 3
  bool product_slack = false;       // c d^c + c delta^c s^c d^(c - 1/2 + 1/(2s)) < 2 delta^c d^c

  bool all_conditions() const { return cond_root_gap && cond_factorial && cond_color_range; }
  bool all_consequences() const { return copies_small && copies_ratio && factorial_root && product_slack; }
};

inline constexpr double kMaxParamDigits = 2.0e6;

namespace detail {

inline std::vector<std::pair<std::uint64_t, std::uint64_t>> factorize(std::uint64_t x) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t p = 2; p * p <= x; ++p) {
    std::uint64_t e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (x > 1) out.emplace_back(x, 1);
  return out;
}

}  // namespace detail

inline ParamsMain derive_params_main(int k, int c, int delta = 2) {
  if (k < 3) throw InputError("derive_params_main requires k >= 3");
  if (c < 1) throw InputError("derive_params_main requires c >= 1");
  if (delta < 1) throw InputError("duplication factor must be positive");
  ParamsMain p;
  p.k = k;
  p.c = c;
  p.delta = delta;
  p.s = static_cast<std::size_t>(k) * static_cast<std::size_t>(k - 1) / 2;
  const std::uint64_t uk = static_cast<std::uint64_t>(k);
  const std::uint64_t uc = static_cast<std::uint64_t>(c);
  p.base = 30 * uc * uc * (uk + 1) * (uk + 1);
  p.exponent = 4 * uk * uk * uk + 3 * uc;
  const std::uint64_t q = 2 * static_cast<std::uint64_t>(delta) * p.s;

  // d^(1/q) is integral iff q divides every prime exponent of d.
  const auto factors = detail::factorize(p.base);
  const bool integral_root = std::all_of(factors.begin(), factors.end(),
                                         [&](const auto& f) { return (f.second * p.exponent) % q == 0; });
  p.adjusted = !integral_root;
  const double digits = static_cast<double>(p.exponent) * std::log10(static_cast<double>(p.base)) *
                        static_cast<double>(p.adjusted ? q : 1) * static_cast<double>(c);
  if (digits > kMaxParamDigits) {
    throw CapExceeded("d^c would have about " + std::to_string(static_cast<std::uint64_t>(digits)) +
                      " decimal digits");
  }

  const BigInt d0 = pow_big(p.base, p.exponent);
  if (p.adjusted) {
    p.d = pow_big(d0, q);
    p.root = d0;
  } else {
    p.d = d0;
    p.root = 1;
    for (const auto& [prime, e] : factors) p.root *= pow_big(prime, e * p.exponent / q);
  }
  const BigInt d_pow_c = pow_big(p.d, uc);
  p.t = uc * d_pow_c / p.root;

  const BigInt s_pow_c = pow_big(p.s, uc);
  const BigInt root_delta = pow_big(p.root, static_cast<std::uint64_t>(delta));  // d^(1/(2s))
  const BigInt big_r = pow_big(root_delta, p.s - 1);                             // d^((s-1)/(2s))
  const BigInt fact = factorial(uk + 1);
  const BigInt delta_pow_c = pow_big(delta, uc);

  p.cond_root_gap = big_r > uc * s_pow_c;
  p.cond_factorial = root_delta > 3 * fact;
  p.cond_color_range = p.root > BigInt(10) * delta * p.s * uc * uc;
  p.copies_small = BigInt(10) * delta * p.s * uc * p.t < d_pow_c;
  p.copies_ratio = uc * d_pow_c <= 3 * p.t * p.root;
  p.factorial_root = 3 * fact < root_delta;
  p.product_slack = uc * big_r + uc * delta_pow_c * s_pow_c < 2 * delta_pow_c * big_r;
  return p;
}

inline nlohmann::json to_json(const ParamsMain& p) {
  return {{"k", p.k},
          {"c", p.c},
          {"delta", p.delta},
          {"s", p.s},
          {"base", p.base},
          {"exponent", p.exponent},
          {"adjusted", p.adjusted},
          {"d", to_decimal(p.d)},
          {"d_digits", to_decimal(p.d).size()},
          {"t", to_decimal(p.t)},
          {"root", to_decimal(p.root)},
          {"conditions",
           {{"i", p.cond_root_gap}, {"ii", p.cond_factorial}, {"iii", p.cond_color_range}}},
          {"consequences",
           {{"copies_small", p.copies_small},
            {"copies_ratio", p.copies_ratio},
            {"factorial_root", p.factorial_root},
            {"product_slack", p.product_slack}}}};
}

// ---------------------------------------------------------------------------
// Tuple vertex space B^c

inline constexpr std::size_t kMaxTupleSpace = 100'000;

/// B^c enumerated lexicographically, partitioned into classes
/// V_i = { v : beta(v(l)) = i(l) for all l }, i in [colors]^c.
class TupleVertexSpace {
 public:
  TupleVertexSpace(std::size_t c, std::size_t b_size, std::vector<int> beta, int colors)
      : c_(c), b_size_(b_size), colors_(static_cast<std::size_t>(colors)), beta_(std::move(beta)) {
    if (c_ < 1) throw InputError("tuple dimension must be positive");
    if (beta_.size() != b_size_) throw InputError("beta must cover B");
    size_ = checked_power(b_size_, c_);
    num_classes_ = checked_power(colors_, c_);
    members_.resize(num_classes_);
    class_of_.resize(size_);
    for (std::size_t idx = 0; idx < size_; ++idx) {
      std::size_t cls = 0;
      std::size_t rest = idx;
      std::size_t place = 1;
      // Last coordinate is least significant in both encodings.
      for (std::size_t l = 0; l < c_; ++l) {
        const std::size_t coord = rest % b_size_;
        rest /= b_size_;
        cls += static_cast<std::size_t>(beta_[coord] - 1) * place;
        place *= colors_;
      }
      class_of_[idx] = cls;
      members_[cls].push_back(idx);
    }
  }

  std::size_t dimension() const noexcept { return c_; }
  std::size_t size() const noexcept { return size_; }
  std::size_t num_classes() const noexcept { return num_classes_; }

  std::vector<Vertex> tuple(std::size_t index) const {
    std::vector<Vertex> v(c_);
    for (std::size_t l = c_; l-- > 0;) {
      v[l] = static_cast<Vertex>(index % b_size_ + 1);
      index /= b_size_;
    }
    return v;
  }

  std::size_t index_of(std::span<const Vertex> v) const {
    if (v.size() != c_) throw InputError("tuple has wrong dimension");
    std::size_t idx = 0;
    for (Vertex x : v) {
      if (x < 1 || x > b_size_) throw InputError("tuple coordinate outside B");
      idx = idx * b_size_ + (x - 1);
    }
    return idx;
  }

  std::size_t class_of(std::size_t index) const { return class_of_.at(index); }
  const std::vector<std::size_t>& members(std::size_t class_index) const { return members_.at(class_index); }

  std::vector<int> class_colors(std::size_t class_index) const {
    std::vector<int> i(c_);
    for (std::size_t l = c_; l-- > 0;) {
      i[l] = static_cast<int>(class_index % colors_ + 1);
      class_index /= colors_;
    }
    return i;
  }

 private:
  static std::size_t checked_power(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
      if (base != 0 && r > kMaxTupleSpace / base) {
        throw CapExceeded("tuple space " + std::to_string(base) + "^" + std::to_string(e) + " exceeds " +
                          std::to_string(kMaxTupleSpace));
      }
      r *= base;
    }
    return r;
  }

  std::size_t c_;
  std::size_t b_size_;
  std::size_t colors_;
  std::vector<int> beta_;
  std::size_t size_ = 0;
  std::size_t num_classes_ = 0;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> members_;
};

// ---------------------------------------------------------------------------
// Construction of G_c

struct GcParams {
  std::size_t c = 1;
  std::size_t t = 1;
  std::size_t delta = 1;
  std::size_t s = 0;  // 0: infer from a_colors / delta
};

/// Vertex numbering of G_c: tuples of B^c (lexicographic), then (u, l, i),
/// then w_{v,j,i} ordered by (tuple index, index of j in [J]^c, i).
struct LayoutMain {
  std::size_t b_size = 0;
  std::size_t a_size = 0;
  std::size_t c = 1;
  std::size_t t = 1;
  std::size_t colors = 1;  // J = delta * s
  std::size_t tuples = 0;
  std::size_t color_tuples = 1;  // J^c

  Vertex tuple_vertex(std::size_t index) const { return static_cast<Vertex>(index + 1); }
  std::size_t copy_offset() const { return tuples; }
  std::size_t witness_offset() const { return tuples + a_size * c * t; }
  Vertex copy(Vertex u, std::size_t l, std::size_t i) const {
    return static_cast<Vertex>(copy_offset() + ((u - 1) * c + (l - 1)) * t + i);
  }
  Vertex witness(std::size_t tuple_index, std::size_t j_index, std::size_t i) const {
    return static_cast<Vertex>(witness_offset() + (tuple_index * color_tuples + j_index) * t + i);
  }
  std::size_t num_vertices() const { return witness_offset() + tuples * color_tuples * t; }

  // j(l) for l = 1..c, last coordinate least significant.
  std::vector<int> color_tuple(std::size_t j_index) const {
    std::vector<int> j(c);
    for (std::size_t l = c; l-- > 0;) {
      j[l] = static_cast<int>(j_index % colors + 1);
      j_index /= colors;
    }
    return j;
  }

  nlohmann::json to_json() const {
    return {{"V", {{"first", 1}, {"count", tuples}, {"order", "lexicographic B^c"}}},
            {"C", {{"first", copy_offset() + 1}, {"count", a_size * c * t}, {"order", "(u,l,i)"}}},
            {"W",
             {{"first", witness_offset() + 1},
              {"count", tuples * color_tuples * t},
              {"order", "(v,j,i)"}}}};
  }
};

inline LayoutMain layout_main_of(const ReductionOutput& out) {
  if (out.manifest.value("construction", "") != "g_c") throw InputError("not a G_c reduction output");
  const auto& p = out.manifest.at("parameters");
  LayoutMain l;
  l.b_size = p.at("b_size").get<std::size_t>();
  l.a_size = p.at("a_size").get<std::size_t>();
  l.c = p.at("c").get<std::size_t>();
  l.t = p.at("t").get<std::size_t>();
  l.colors = p.at("colors").get<std::size_t>();
  l.tuples = p.at("tuples").get<std::size_t>();
  l.color_tuples = p.at("color_tuples").get<std::size_t>();
  return l;
}

/// Builds G_c from a coloured bipartite graph with a_colors = delta*s.
///
///   E1  each V_i is a clique
///   E2  w_{v,j,i} ~ v'        v, v' in the same V_i and v(l) != v'(l) for every l
///   E3  (u,l,i) ~ w_{v,j,i}   {u, v(l)} in E(H) and j(l) = alpha(u)
///   E4  (u,l,i) ~ (u',l,i)    u != u'
inline ReductionOutput build_g_c(const ColoredBipartiteGraph& h, GcParams params, BuildCaps caps = {}) {
  if (params.c < 1 || params.t < 1 || params.delta < 1) throw InputError("c, t and delta must be positive");
  const std::size_t colors = static_cast<std::size_t>(h.a_colors);
  if (params.s == 0) {
    if (colors % params.delta != 0) throw InputError("a_colors is not a multiple of delta");
    params.s = colors / params.delta;
  }
  if (params.delta * params.s != colors) {
    throw InputError("colour count mismatch: a_colors = " + std::to_string(colors) + " but delta*s = " +
                     std::to_string(params.delta * params.s));
  }
  if (!h.every_beta_class_nonempty()) throw InputError("every beta colour class must be nonempty");

  const std::size_t c = params.c;
  const std::size_t t = params.t;
  TupleVertexSpace space(c, h.b_size(), h.beta, h.b_colors);
  LayoutMain layout;
  layout.b_size = h.b_size();
  layout.a_size = h.a_size();
  layout.c = c;
  layout.t = t;
  layout.colors = colors;
  layout.tuples = space.size();
  unsigned __int128 jc = 1;
  for (std::size_t l = 0; l < c; ++l) jc *= colors;
  const unsigned __int128 est_vertices =
      static_cast<unsigned __int128>(layout.tuples) * (1 + jc * t) + static_cast<unsigned __int128>(h.a_size()) * c * t;
  if (est_vertices > caps.max_vertices) {
    throw CapExceeded("G_c would have " + std::to_string(static_cast<std::uint64_t>(est_vertices)) +
                      " vertices (cap " + std::to_string(caps.max_vertices) + ")");
  }
  layout.color_tuples = static_cast<std::size_t>(jc);

  // neighbours[b][colour] = left neighbours of b with that alpha colour.
  std::vector<std::vector<std::vector<Vertex>>> neighbours(h.b_size() + 1,
                                                           std::vector<std::vector<Vertex>>(colors + 1));
  for (Vertex b = 1; b <= h.b_size(); ++b) {
    for (Vertex u : h.graph.right_neighbors(b)) neighbours[b][static_cast<std::size_t>(h.alpha_of(u))].push_back(u);
  }
  unsigned __int128 est_edges = static_cast<unsigned __int128>(c) * t * h.a_size() * (h.a_size() - 1) / 2;
  for (std::size_t cls = 0; cls < space.num_classes(); ++cls) {
    const unsigned __int128 m = space.members(cls).size();
    est_edges += m * m * (1 + jc * t);
  }
  {
    // E3 contributes, per tuple v and coordinate l, deg(v(l)) * J^(c-1) * t edges.
    unsigned __int128 deg_sum = 0;
    for (Vertex b = 1; b <= h.b_size(); ++b) deg_sum += h.graph.right_neighbors(b).size();
    est_edges += deg_sum * c * (layout.tuples / std::max<std::size_t>(h.b_size(), 1)) * (jc / colors) * t;
  }
  if (est_edges > caps.max_edges) {
    throw CapExceeded("G_c would have about " + std::to_string(static_cast<std::uint64_t>(est_edges)) +
                      " edges (cap " + std::to_string(caps.max_edges) + ")");
  }

  GraphBuilder builder(layout.num_vertices());
  std::vector<std::vector<Vertex>> tuples(layout.tuples);
  for (std::size_t idx = 0; idx < layout.tuples; ++idx) tuples[idx] = space.tuple(idx);
  auto all_differ = [&](std::size_t x, std::size_t y) {
    for (std::size_t l = 0; l < c; ++l) {
      if (tuples[x][l] == tuples[y][l]) return false;
    }
    return true;
  };
  for (std::size_t cls = 0; cls < space.num_classes(); ++cls) {
    const auto& mem = space.members(cls);
    for (std::size_t x = 0; x < mem.size(); ++x) {
      for (std::size_t y = x + 1; y < mem.size(); ++y) {
        builder.add_edge(layout.tuple_vertex(mem[x]), layout.tuple_vertex(mem[y]));  // E1
      }
      for (std::size_t y = 0; y < mem.size(); ++y) {
        if (y == x || !all_differ(mem[x], mem[y])) continue;
        for (std::size_t j = 0; j < layout.color_tuples; ++j) {
          for (std::size_t i = 1; i <= t; ++i) {
            builder.add_edge(layout.witness(mem[x], j, i), layout.tuple_vertex(mem[y]));  // E2
          }
        }
      }
    }
  }
  for (std::size_t idx = 0; idx < layout.tuples; ++idx) {
    for (std::size_t j = 0; j < layout.color_tuples; ++j) {
      const auto jt = layout.color_tuple(j);
      for (std::size_t l = 1; l <= c; ++l) {
        for (Vertex u : neighbours[tuples[idx][l - 1]][static_cast<std::size_t>(jt[l - 1])]) {
          for (std::size_t i = 1; i <= t; ++i) builder.add_edge(layout.copy(u, l, i), layout.witness(idx, j, i));  // E3
        }
      }
    }
  }
  for (std::size_t l = 1; l <= c; ++l) {
    for (std::size_t i = 1; i <= t; ++i) {
      for (Vertex u = 1; u <= h.a_size(); ++u) {
        for (Vertex u2 = u + 1; u2 <= h.a_size(); ++u2) builder.add_edge(layout.copy(u, l, i), layout.copy(u2, l, i));  // E4
      }
    }
  }

  ReductionOutput out;
  out.graph = builder.build();
  out.roles.resize(layout.num_vertices());
  for (std::size_t idx = 0; idx < layout.tuples; ++idx) {
    out.roles[idx] = Role{RoleKind::Tuple, static_cast<std::uint32_t>(idx), 0, 0,
                          static_cast<std::uint32_t>(space.class_of(idx))};
  }
  for (Vertex u = 1; u <= h.a_size(); ++u) {
    for (std::size_t l = 1; l <= c; ++l) {
      for (std::size_t i = 1; i <= t; ++i) {
        out.roles[layout.copy(u, l, i) - 1] =
            Role{RoleKind::Copy, u, static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(i), 0};
      }
    }
  }
  for (std::size_t idx = 0; idx < layout.tuples; ++idx) {
    for (std::size_t j = 0; j < layout.color_tuples; ++j) {
      for (std::size_t i = 1; i <= t; ++i) {
        out.roles[layout.witness(idx, j, i) - 1] =
            Role{RoleKind::Witness, static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(j),
                 static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(space.class_of(idx))};
      }
    }
  }
  out.manifest = {{"construction", "g_c"},
                  {"parameters",
                   {{"c", c},
                    {"t", t},
                    {"delta", params.delta},
                    {"s", params.s},
                    {"colors", colors},
                    {"d_small", h.b_colors},
                    {"a_size", h.a_size()},
                    {"b_size", h.b_size()},
                    {"tuples", layout.tuples},
                    {"color_tuples", layout.color_tuples}}},
                  {"source_digest", digest_of(h)},
                  {"layout", layout.to_json()},
                  {"roles", encode_roles(out.roles)},
                  {"num_vertices", out.graph.num_vertices()},
                  {"num_edges", out.graph.num_edges()}};
  out.source = std::make_shared<const ColoredBipartiteGraph>(h);
  return out;
}

/// Completeness witness for G_c: (B cap K)^c plus (A cap K) x [c] x [t],
/// of size d_small^c + delta*s*c*t.
inline DominatingSetResult extract_yes_witness_main(const ReductionOutput& out, const Biclique& k) {
  if (!out.source) throw InputError("reduction output carries no source instance");
  const auto layout = layout_main_of(out);
  const auto& h = *out.source;
  detail::check_colored_biclique(h, k, layout.colors, static_cast<std::size_t>(h.b_colors), "[delta*s]",
                                 "[d_small]");
  TupleVertexSpace space(layout.c, h.b_size(), h.beta, h.b_colors);
  DominatingSetResult result;
  std::vector<Vertex> cur(layout.c);
  // Odometer over (K.right)^c.
  std::vector<std::size_t> pos(layout.c, 0);
  while (true) {
    for (std::size_t l = 0; l < layout.c; ++l) cur[l] = k.right[pos[l]];
    result.vertices.push_back(layout.tuple_vertex(space.index_of(cur)));
    std::size_t l = layout.c;
    while (l > 0 && ++pos[l - 1] == k.right.size()) pos[--l] = 0;
    if (l == 0) break;
  }
  for (Vertex u : k.left) {
    for (std::size_t l = 1; l <= layout.c; ++l) {
      for (std::size_t i = 1; i <= layout.t; ++i) result.vertices.push_back(layout.copy(u, l, i));
    }
  }
  std::sort(result.vertices.begin(), result.vertices.end());
  if (!is_dominating(out.graph, result.vertices)) {
    throw InternalFault("completeness witness for G_c does not dominate");
  }
  return result;
}

}  // namespace gapforge
