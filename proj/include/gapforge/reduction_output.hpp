#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gapforge/bipartite.hpp"
#include "gapforge/graph.hpp"

namespace gapforge {

enum class RoleKind : std::uint8_t {
  BaseRight,  // b in B(H)            (G')
  XGuard,     // x_c                  (G')
  YGuard,     // y_c                  (G')
  Tuple,      // v in B^c, member of V_i (G_c)
  Copy,       // (a, i)  or (u, l, i)
  Witness,    // w_{b,j,i} or w_{v,j,i}
};

inline std::string_view role_label(RoleKind k) {
  switch (k) {
    case RoleKind::BaseRight: return "B";
    case RoleKind::XGuard: return "X";
    case RoleKind::YGuard: return "Y";
    case RoleKind::Tuple: return "V";
    case RoleKind::Copy: return "C";
    case RoleKind::Witness: return "W";
  }
  return "?";
}

/// Gadget role of one vertex of a constructed graph.
///
/// Field meaning by kind:
///   BaseRight  p0 = b,            color = beta(b)
///   X/YGuard                      color = c
///   Tuple      p0 = tuple index,  color = class index of beta(v)
///   Copy       p0 = a (or u), p1 = coordinate l (1 for G'), p2 = copy i
///   Witness    p0 = b (or tuple index), p1 = j (or index of j in [J]^c), p2 = i
struct Role {
  RoleKind kind = RoleKind::BaseRight;
  std::uint32_t p0 = 0;
  std::uint32_t p1 = 0;
  std::uint32_t p2 = 0;
  std::uint32_t color = 0;

  friend bool operator==(const Role&, const Role&) = default;
};

/// A constructed graph together with per-vertex roles and a manifest naming
/// the inputs, the digest of the source instance and the id layout.
struct ReductionOutput {
  Graph graph;
  std::vector<Role> roles;  // roles[v-1]
  nlohmann::json manifest;
  std::shared_ptr<const ColoredBipartiteGraph> source;

  const Role& role(Vertex v) const { return roles.at(v - 1); }

  std::size_t count(RoleKind kind) const {
    std::size_t n = 0;
    for (const auto& r : roles) n += r.kind == kind ? 1 : 0;
    return n;
  }

  std::vector<Vertex> vertices_of(RoleKind kind) const {
    std::vector<Vertex> out;
    for (Vertex v = 1; v <= roles.size(); ++v) {
      if (roles[v - 1].kind == kind) out.push_back(v);
    }
    return out;
  }
};

/// FNV-1a 64-bit content hash, rendered as 16 hex digits.
inline std::string content_digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

inline std::string digest_of(const ColoredBipartiteGraph& h) { return content_digest(to_json(h).dump()); }

// Run-length rows [label, first_vertex, count] over the role kinds.
inline nlohmann::json encode_roles(const std::vector<Role>& roles) {
  auto rows = nlohmann::json::array();
  std::size_t start = 0;
  for (std::size_t v = 1; v <= roles.size(); ++v) {
    if (v == roles.size() || roles[v].kind != roles[start].kind) {
      rows.push_back({std::string(role_label(roles[start].kind)), start + 1, v - start});
      start = v;
    }
  }
  return rows;
}

}  // namespace gapforge
