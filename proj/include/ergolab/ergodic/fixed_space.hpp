#pragma once

// Symbolic certificate that the adjoint fixed-point equations
//   y_u = sum_v w(u,v) y_v
// admit only y = 0 on l^1. Vertices are grouped into families of chains whose
// shape is known from the graph's construction; each family is discharged by
// one rule whose premise is checked through the graph oracles on a window of
// chains and members.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergolab/graphop/c0_graph.hpp"
#include "ergolab/ladder/graphs.hpp"

namespace ergolab {

template <class V>
struct VertexFamily {
  std::string name;
  std::optional<std::uint64_t> chains;  // nullopt: one chain per natural number
  std::optional<std::uint64_t> length;  // members per chain; nullopt: infinite
  std::function<V(std::uint64_t chain, std::uint64_t i)> member;
};

template <class V>
struct GraphStructure {
  std::vector<VertexFamily<V>> families;
  std::function<std::optional<std::size_t>(const V&)> family_of;  // nullopt: outside every family
  std::uint64_t chain_window = 6;
  std::uint64_t member_window = 40;
};

enum class DischargeRule {
  terminal,    // no outgoing edges: y_u = 0
  direct,      // every successor already zero
  induction,   // successors zero except the previous chain member
  null_class,  // successors zero except the next member, with weight 1: the
               // chain is one infinite equality class of a summable sequence
};

inline std::string rule_name(DischargeRule r) {
  switch (r) {
    case DischargeRule::terminal: return "terminal";
    case DischargeRule::direct: return "direct";
    case DischargeRule::induction: return "induction";
    case DischargeRule::null_class: return "null-class";
  }
  return "?";
}

struct Derivation {
  std::string family;
  DischargeRule rule;
  std::vector<std::string> depends_on;  // families already forced to zero
  std::string equation;                 // a sample instance of the relation used
  std::uint64_t members_checked = 0;
};

enum class Conclusion { only_zero, inconclusive };

struct FixedSpaceCertificate {
  std::vector<std::string> forced_zero;       // families, in derivation order
  std::vector<std::string> equality_classes;  // families closed by the null-class rule
  std::vector<Derivation> relations;
  std::vector<std::string> undischarged;
  Conclusion conclusion = Conclusion::inconclusive;

  [[nodiscard]] bool only_zero() const { return conclusion == Conclusion::only_zero; }
};

namespace detail {

template <class V>
std::string vertex_text(const V& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

template <class V>
std::string relation_text(const C0Graph<V>& g, const V& u) {
  std::string s = "y[" + vertex_text(u) + "] =";
  auto succ = g.successors(u);
  if (succ.empty()) return s + " 0";
  for (std::size_t i = 0; i < succ.size(); ++i) {
    s += (i ? " + " : " ") + succ[i].weight.to_fraction() + "*y[" + vertex_text(succ[i].to) + "]";
  }
  return s;
}

template <class V>
bool same_vertex(const V& a, const V& b) {
  return !(a < b) && !(b < a);
}

// Checks the premise of `rule` for family f at every windowed member.
template <class V>
bool premise_holds(const C0Graph<V>& g, const GraphStructure<V>& st, std::size_t f, DischargeRule rule,
                   const std::set<std::size_t>& zero, std::uint64_t chain_window, std::uint64_t member_window,
                   std::uint64_t& checked) {
  const auto& fam = st.families[f];
  if (rule == DischargeRule::null_class && fam.length) return false;
  const std::uint64_t chains = std::min(fam.chains.value_or(chain_window), chain_window);
  const std::uint64_t length = std::min(fam.length.value_or(member_window), member_window);
  auto is_zero = [&](const V& v) {
    auto k = st.family_of(v);
    return k && zero.count(*k) > 0;
  };
  checked = 0;
  for (std::uint64_t c = 0; c < chains; ++c) {
    for (std::uint64_t i = 0; i < length; ++i) {
      const V u = fam.member(c, i);
      const auto succ = g.successors(u);
      ++checked;
      switch (rule) {
        case DischargeRule::terminal:
          if (!succ.empty()) return false;
          break;
        case DischargeRule::direct:
          for (const auto& e : succ) {
            if (!is_zero(e.to)) return false;
          }
          break;
        case DischargeRule::induction:
          for (const auto& e : succ) {
            if (is_zero(e.to)) continue;
            if (i == 0 || !same_vertex(e.to, fam.member(c, i - 1))) return false;
          }
          break;
        case DischargeRule::null_class: {
          const V next = fam.member(c, i + 1);
          int links = 0;
          for (const auto& e : succ) {
            if (is_zero(e.to)) continue;
            if (!same_vertex(e.to, next) || e.weight != Rational(1)) return false;
            ++links;
          }
          if (links != 1) return false;
          break;
        }
      }
    }
  }
  return checked > 0;
}

}  // namespace detail

// Discharges families to zero until no rule applies. Each successful step
// restarts the scan, so the derivation order is deterministic.
template <class V>
FixedSpaceCertificate fixed_space_certificate(const C0Graph<V>& g, const GraphStructure<V>& st) {
  FixedSpaceCertificate cert;
  std::set<std::size_t> zero;
  const DischargeRule rules[] = {DischargeRule::terminal, DischargeRule::direct, DischargeRule::induction,
                                 DischargeRule::null_class};
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t f = 0; f < st.families.size() && !progress; ++f) {
      if (zero.count(f)) continue;
      for (DischargeRule rule : rules) {
        std::uint64_t checked = 0;
        if (!detail::premise_holds(g, st, f, rule, zero, st.chain_window, st.member_window, checked)) continue;
        Derivation d;
        d.family = st.families[f].name;
        d.rule = rule;
        for (std::size_t z : zero) d.depends_on.push_back(st.families[z].name);
        const auto& fam = st.families[f];
        const std::uint64_t sample = fam.length.value_or(2) > 1 ? 1 : 0;
        d.equation = detail::relation_text(g, fam.member(0, sample));
        d.members_checked = checked;
        cert.relations.push_back(std::move(d));
        cert.forced_zero.push_back(fam.name);
        if (rule == DischargeRule::null_class) cert.equality_classes.push_back(fam.name);
        zero.insert(f);
        progress = true;
        break;
      }
    }
  }
  for (std::size_t f = 0; f < st.families.size(); ++f) {
    if (!zero.count(f)) cert.undischarged.push_back(st.families[f].name);
  }
  cert.conclusion = cert.undischarged.empty() ? Conclusion::only_zero : Conclusion::inconclusive;
  return cert;
}

struct ReplayReport {
  bool passed = true;
  std::vector<std::string> failures;
};

// Re-checks every derivation in order on a (possibly larger) window, using
// only the families discharged before it.
template <class V>
ReplayReport replay_certificate(const C0Graph<V>& g, const GraphStructure<V>& st,
                                const FixedSpaceCertificate& cert, std::uint64_t chain_window,
                                std::uint64_t member_window) {
  ReplayReport report;
  std::set<std::size_t> zero;
  auto index_of = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t f = 0; f < st.families.size(); ++f) {
      if (st.families[f].name == name) return f;
    }
    return std::nullopt;
  };
  for (const auto& d : cert.relations) {
    auto f = index_of(d.family);
    if (!f) {
      report.passed = false;
      report.failures.push_back("unknown family " + d.family);
      continue;
    }
    for (const auto& dep : d.depends_on) {
      auto k = index_of(dep);
      if (!k || !zero.count(*k)) {
        report.passed = false;
        report.failures.push_back(d.family + " depends on " + dep + " before it was discharged");
      }
    }
    std::uint64_t checked = 0;
    if (!detail::premise_holds(g, st, *f, d.rule, zero, chain_window, member_window, checked)) {
      report.passed = false;
      report.failures.push_back(d.family + ": " + rule_name(d.rule) + " premise fails on replay");
    }
    zero.insert(*f);
  }
  return report;
}

// One family per vertex; suits small explicit graphs and control cases.
template <class V>
GraphStructure<V> singleton_structure(const std::vector<V>& vertices) {
  GraphStructure<V> st;
  for (const auto& v : vertices) {
    st.families.push_back({detail::vertex_text(v), 1, 1, [v](std::uint64_t, std::uint64_t) { return v; }});
  }
  st.family_of = [vertices](const V& v) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      if (detail::same_vertex(vertices[i], v)) return i;
    }
    return std::nullopt;
  };
  return st;
}

// Chain families of a ladder graph, read off its construction.
inline GraphStructure<ladder::LadderVertex> ladder_structure(const ladder::LadderFamilyGraph& g) {
  using ladder::LadderVertex;
  using ladder::Role;
  GraphStructure<LadderVertex> st;
  const std::uint64_t k = g.k;
  std::vector<Role> roles;
  if (g.is_combined()) {
    st.families = {
        {"S", 1, 1, [](std::uint64_t, std::uint64_t) { return LadderVertex::source(); }},
        {"E(.)", 1, std::nullopt, [](std::uint64_t, std::uint64_t i) { return LadderVertex::entry(i); }},
        {"T(c,.)", std::nullopt, std::nullopt,
         [](std::uint64_t c, std::uint64_t i) { return LadderVertex::top(c, c + 1 + i); }},
        {"B(c,.)", std::nullopt, std::nullopt,
         [](std::uint64_t c, std::uint64_t i) { return LadderVertex::bottom(c, i + 1); }},
        {"V(c)", std::nullopt, 1, [](std::uint64_t c, std::uint64_t) { return LadderVertex::sink(c); }},
    };
    roles = {Role::source, Role::entry, Role::top, Role::bottom, Role::sink};
  } else {
    const std::string tag = std::to_string(k);
    st.families = {
        {"E(" + tag + ")", 1, 1, [k](std::uint64_t, std::uint64_t) { return LadderVertex::entry(k); }},
        {"T(" + tag + ",.)", 1, std::nullopt,
         [k](std::uint64_t, std::uint64_t i) { return LadderVertex::top(k, k + 1 + i); }},
        {"B(" + tag + ",.)", 1, std::nullopt,
         [k](std::uint64_t, std::uint64_t i) { return LadderVertex::bottom(k, i + 1); }},
        {"V(" + tag + ")", 1, 1, [k](std::uint64_t, std::uint64_t) { return LadderVertex::sink(k); }},
    };
    roles = {Role::entry, Role::top, Role::bottom, Role::sink};
  }
  st.family_of = [g, roles](const LadderVertex& v) -> std::optional<std::size_t> {
    if (!g.contains(v)) return std::nullopt;
    for (std::size_t i = 0; i < roles.size(); ++i) {
      if (roles[i] == v.role) return i;
    }
    return std::nullopt;
  };
  return st;
}

inline FixedSpaceCertificate fixed_space_certificate(const ladder::LadderFamilyGraph& g) {
  return fixed_space_certificate(g.graph, ladder_structure(g));
}

}  // namespace ergolab
