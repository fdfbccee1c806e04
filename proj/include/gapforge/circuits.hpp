#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gapforge/error.hpp"
#include "gapforge/graph.hpp"

namespace gapforge {

/// Depth-2 monotone circuit: an AND of ORs over positive variables 1..num_vars.
struct MonotoneCircuit {
  std::size_t num_vars = 0;
  std::vector<std::vector<std::uint32_t>> clauses;  // each sorted, nonempty

  void validate() const {
    for (std::size_t c = 0; c < clauses.size(); ++c) {
      if (clauses[c].empty()) throw InputError("clause " + std::to_string(c + 1) + " is empty");
      for (auto x : clauses[c]) {
        if (x < 1 || x > num_vars) throw InputError("literal " + std::to_string(x) + " outside [1,num_vars]");
      }
    }
  }

  bool satisfied_by(std::span<const std::uint32_t> support) const {
    std::vector<char> on(num_vars + 1, 0);
    for (auto x : support) {
      if (x < 1 || x > num_vars) throw InputError("assignment variable outside [1,num_vars]");
      on[x] = 1;
    }
    return std::all_of(clauses.begin(), clauses.end(), [&](const auto& clause) {
      return std::any_of(clause.begin(), clause.end(), [&](auto x) { return on[x] != 0; });
    });
  }

  friend bool operator==(const MonotoneCircuit&, const MonotoneCircuit&) = default;
};

/// One variable X_u per vertex, one clause per vertex v over its closed
/// neighbourhood N[v]. A support S satisfies the circuit iff S dominates G.
inline MonotoneCircuit graph_to_circuit(const Graph& g) {
  MonotoneCircuit circuit;
  circuit.num_vars = g.num_vertices();
  circuit.clauses.reserve(g.num_vertices());
  for (Vertex v = 1; v <= g.num_vertices(); ++v) {
    std::vector<std::uint32_t> clause(g.neighbors(v).begin(), g.neighbors(v).end());
    clause.push_back(v);
    std::sort(clause.begin(), clause.end());
    circuit.clauses.push_back(std::move(clause));
  }
  return circuit;
}

inline std::string write_circuit(const MonotoneCircuit& circuit) {
  std::ostringstream out;
  out << "vars " << circuit.num_vars << '\n';
  for (const auto& clause : circuit.clauses) {
    out << "or";
    for (auto x : clause) out << ' ' << x;
    out << '\n';
  }
  return out.str();
}

inline MonotoneCircuit parse_circuit(std::string_view text) {
  MonotoneCircuit circuit;
  bool have_header = false;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto tok = detail::split_ws(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 2 || tok[0] != "vars" || !detail::parse_uint(tok[1], circuit.num_vars)) {
        throw ParseError(line_no, "expected \"vars <n>\"");
      }
      have_header = true;
      continue;
    }
    if (tok[0] != "or") throw ParseError(line_no, "expected \"or <i> <j> ...\"");
    if (tok.size() < 2) throw ParseError(line_no, "empty clause");
    std::vector<std::uint32_t> clause;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      std::uint32_t x = 0;
      if (!detail::parse_uint(tok[i], x)) throw ParseError(line_no, "bad variable '" + std::string(tok[i]) + "'");
      if (x < 1 || x > circuit.num_vars) throw ParseError(line_no, "variable outside [1," + std::to_string(circuit.num_vars) + "]");
      clause.push_back(x);
    }
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    circuit.clauses.push_back(std::move(clause));
  }
  if (!have_header) throw ParseError(line_no, "missing \"vars <n>\" line");
  return circuit;
}

struct CircuitAssignment {
  std::vector<std::uint32_t> support;  // variables set to 1, ascending
  std::size_t lower_bound = 0;
  bool optimal = false;

  std::size_t weight() const noexcept { return support.size(); }
};

inline constexpr std::size_t kMaxCircuitVars = 30;

namespace detail {
struct BudgetSpent {};
}  // namespace detail

/// Minimum-weight satisfying assignment by lexicographic enumeration of
/// weights 0, 1, 2, ...; the first hit is the lexicographically least optimum.
/// Branches are cut once some unsatisfied clause has no variable left to pick.
inline CircuitAssignment min_weight_satisfying(const MonotoneCircuit& circuit,
                                               std::uint64_t max_nodes = 200'000'000) {
  circuit.validate();
  const std::size_t n = circuit.num_vars;
  if (n > kMaxCircuitVars) throw InputError("exact circuit search supports at most 30 variables");
  const std::size_t m = circuit.clauses.size();
  std::vector<std::uint32_t> clause_mask(m, 0);
  std::vector<std::uint32_t> clause_max(m, 0);
  for (std::size_t c = 0; c < m; ++c) {
    for (auto x : circuit.clauses[c]) clause_mask[c] |= std::uint32_t{1} << (x - 1);
    clause_max[c] = circuit.clauses[c].back();
  }
  std::uint64_t nodes = 0;
  std::vector<std::uint32_t> pick;
  // `next` is the smallest variable still selectable (1-based).
  auto search = [&](auto&& self, std::uint32_t next, std::size_t left, std::uint32_t on) -> bool {
    if (++nodes > max_nodes) throw detail::BudgetSpent{};
    bool all_sat = true;
    for (std::size_t c = 0; c < m; ++c) {
      if (clause_mask[c] & on) continue;
      all_sat = false;
      if (clause_max[c] < next || left == 0) return false;
    }
    if (all_sat) return true;
    for (std::uint32_t x = next; x <= n; ++x) {
      pick.push_back(x);
      if (self(self, x + 1, left - 1, on | (std::uint32_t{1} << (x - 1)))) return true;
      pick.pop_back();
    }
    return false;
  };
  CircuitAssignment result;
  try {
    for (std::size_t w = 0; w <= n; ++w) {
      pick.clear();
      result.lower_bound = w;
      if (search(search, 1, w, 0)) {
        result.support = pick;
        result.optimal = true;
        return result;
      }
    }
  } catch (const detail::BudgetSpent&) {
    // Greedy cover as the upper bound; weights below lower_bound are ruled out.
    std::uint32_t on = 0;
    std::vector<char> done(m, 0);
    while (true) {
      std::uint32_t best = 0;
      std::size_t best_hits = 0;
      for (std::uint32_t x = 1; x <= n; ++x) {
        std::size_t hits = 0;
        for (std::size_t c = 0; c < m; ++c) hits += !done[c] && (clause_mask[c] >> (x - 1) & 1U);
        if (hits > best_hits) {
          best_hits = hits;
          best = x;
        }
      }
      if (best_hits == 0) break;
      on |= std::uint32_t{1} << (best - 1);
      for (std::size_t c = 0; c < m; ++c) done[c] = done[c] || (clause_mask[c] & on);
    }
    for (std::uint32_t x = 1; x <= n; ++x) {
      if (on >> (x - 1) & 1U) result.support.push_back(x);
    }
    result.optimal = false;
    return result;
  }
  throw InputError("circuit is unsatisfiable");
}

}  // namespace gapforge
