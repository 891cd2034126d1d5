#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "saginet/errors.hpp"
#include "saginet/kvfile.hpp"
#include "saginet/milp.hpp"
#include "saginet/topology.hpp"

namespace saginet {

struct IscptThresholds {
  // Topology-level thresholds driving the model (all in [0,1]).
  double tau_hat_c = 0.5;
  double tau_hat_p = 0.5;
  double tau_hat_s = 0.5;
  // Physical-level SINR/power targets; carried for reporting only.
  double tau_c = 0.0;
  double tau_p = 0.0;
  double tau_s = 0.0;
  /// Drop the k'=k term from the comm-SINR constraint sum.  The printed
  /// constraint keeps it (its topology-SINR counterpart does not), so the
  /// default reproduces the printed form.
  bool exclude_self = false;
  /// Square the weights in the power-transfer row.  The printed row is
  /// linear in w although the physical harvest is quadratic.
  bool power_constraint_squared = false;

  bool valid() const {
    auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
    return in01(tau_hat_c) && in01(tau_hat_p) && in01(tau_hat_s);
  }
};

struct IscptDecision {
  std::vector<int> u;    // comm-user activation, length K_C
  std::vector<int> v;    // AP activation, length M
  std::vector<int> v_s;  // sensing AP selector, length M (zeros if disabled)
  std::vector<double> z;  // M x K_C fractional matching, row-major
  int matching_value = 0;

  int num_comm() const { return static_cast<int>(u.size()); }
  int num_aps() const { return static_cast<int>(v.size()); }
  double z_at(int m, int k) const {
    return z.empty() ? 0.0 : z[static_cast<std::size_t>(m) * u.size() + k];
  }
};

struct BigM {
  double c1 = 0.0;
  double c2 = 0.0;
  double c4 = 0.0;
};

namespace detail {

inline void check_graph(const TopologyGraph& g) {
  if (g.num_comm < 1) throw MalformedGraphError("p2 needs at least one comm user");
  if (g.num_aps < 1) throw MalformedGraphError("p2 needs at least one AP");
  const std::size_t cells = static_cast<std::size_t>(g.num_aps) * g.num_users();
  if (g.adjacency.size() != cells || g.weights.size() != cells) {
    throw MalformedGraphError("topology matrices do not match the declared dimensions");
  }
}

inline BigM big_m_from_weights(const std::vector<double>& w, const TopologyGraph& g,
                               const IscptThresholds& thr) {
  auto at = [&](int m, int k) { return w[g.at(m, k)]; };
  const int sen = g.sensing_col();
  BigM out;
  for (int m = 0; m < g.num_aps; ++m) {
    double row_sum = sen >= 0 ? at(m, sen) : 0.0;
    for (int k = 0; k < g.num_comm; ++k) row_sum += at(m, k);
    for (int k = 0; k < g.num_comm; ++k) {
      out.c1 = std::max(out.c1, thr.tau_hat_c * at(m, k) * row_sum);
    }
  }
  out.c1 *= 1.05;
  out.c2 = out.c1;
  if (sen >= 0) {
    double sig = 0.0;
    for (int m = 0; m < g.num_aps; ++m) sig += at(m, sen) * at(m, sen);
    for (int k = 0; k < g.num_comm; ++k) {
      double cross = 0.0;
      for (int m = 0; m < g.num_aps; ++m) cross += at(m, k) * at(m, sen);
      out.c4 = std::max(out.c4, thr.tau_hat_s * (sig + cross));
    }
    out.c4 *= 1.05;
  }
  return out;
}

}  // namespace detail

/// Instance-tight big-M constants for the deactivation terms, inflated 5%.
inline BigM compute_bigM(const TopologyGraph& g, const IscptThresholds& thr) {
  detail::check_graph(g);
  return detail::big_m_from_weights(g.weights, g, thr);
}

/// Variable index blocks of a built model, for decoding solver output.
struct P2Layout {
  int num_aps = 0;
  int num_comm = 0;
  bool has_sensing = false;
  std::vector<int> u_var, v_var, vs_var;
  std::vector<int> z_var;  // M x K_C, -1 where no edge
};

struct P2Build {
  MilpModel model;
  P2Layout layout;
};

/// Translate the topology graph into the relaxed selection MILP.  Weights
/// are rescaled by their max entry first (the constraint system is
/// homogeneous per row, so the feasible set is unchanged) to keep the
/// squared-amplitude coefficients near 1.  The noise power does not appear
/// in the printed constraint system; the parameter is kept for signature
/// stability.
inline P2Build build_p2_model(const TopologyGraph& g, const IscptThresholds& thr,
                              double sigma2 = 0.0) {
  (void)sigma2;
  detail::check_graph(g);
  if (!thr.valid()) throw InvalidSpecError("thresholds must lie in [0,1]");

  std::vector<double> w = g.weights;
  double wmax = 0.0;
  for (double x : w) wmax = std::max(wmax, x);
  if (wmax > 0.0) {
    for (double& x : w) x /= wmax;
  }
  auto at = [&](int m, int k) { return w[g.at(m, k)]; };
  const BigM big = detail::big_m_from_weights(w, g, thr);
  const int sen = g.sensing_col();

  P2Build out;
  MilpModel& model = out.model;
  P2Layout& lay = out.layout;
  model.name = "p2";
  model.maximize = true;
  model.objective_is_integral = true;
  lay.num_aps = g.num_aps;
  lay.num_comm = g.num_comm;
  lay.has_sensing = g.has_sensing;

  for (int k = 0; k < g.num_comm; ++k) {
    lay.u_var.push_back(model.add_variable("u" + std::to_string(k), VarKind::Binary, 0.0, 1.0));
  }
  for (int m = 0; m < g.num_aps; ++m) {
    lay.v_var.push_back(model.add_variable("v" + std::to_string(m), VarKind::Binary, 0.0, 1.0));
  }
  if (g.has_sensing) {
    for (int m = 0; m < g.num_aps; ++m) {
      // Selecting a non-adjacent AP would be meaningless (zero dominant
      // weight); pinning the selector there keeps decodes unambiguous
      // without changing the optimum.
      const double ub = g.adj(m, sen) ? 1.0 : 0.0;
      lay.vs_var.push_back(
          model.add_variable("vs" + std::to_string(m), VarKind::Binary, 0.0, ub));
    }
  }
  lay.z_var.assign(static_cast<std::size_t>(g.num_aps) * g.num_comm, -1);
  for (int m = 0; m < g.num_aps; ++m) {
    for (int k = 0; k < g.num_comm; ++k) {
      if (g.adj(m, k)) {
        lay.z_var[static_cast<std::size_t>(m) * g.num_comm + k] = model.add_variable(
            "z" + std::to_string(m) + "_" + std::to_string(k), VarKind::Continuous, 0.0, 1.0,
            1.0);
      }
    }
  }
  auto zv = [&](int m, int k) { return lay.z_var[static_cast<std::size_t>(m) * g.num_comm + k]; };

  // Activation coupling: an active user needs an active visible AP, and an
  // active AP must serve some activated user, the target, or a charger.
  for (int k = 0; k < g.num_comm; ++k) {
    std::vector<std::pair<int, double>> terms{{lay.u_var[k], 1.0}};
    for (int m = 0; m < g.num_aps; ++m) {
      if (g.adj(m, k)) terms.push_back({lay.v_var[m], -1.0});
    }
    model.add_constraint("b" + std::to_string(k), std::move(terms), Rel::LessEq, 0.0);
  }
  for (int m = 0; m < g.num_aps; ++m) {
    std::vector<std::pair<int, double>> terms{{lay.v_var[m], 1.0}};
    for (int k = 0; k < g.num_comm; ++k) {
      if (g.adj(m, k)) terms.push_back({lay.u_var[k], -1.0});
    }
    double rhs = sen >= 0 && g.adj(m, sen) ? 1.0 : 0.0;
    for (int p = 0; p < g.num_charge; ++p) rhs += g.adj(m, g.charge_col0() + p) ? 1.0 : 0.0;
    model.add_constraint("c" + std::to_string(m), std::move(terms), Rel::LessEq, rhs);
  }

  // Matching rows: each AP serves at most one matched user and vice versa,
  // gated by the activation binaries.
  for (int m = 0; m < g.num_aps; ++m) {
    std::vector<std::pair<int, double>> terms;
    for (int k = 0; k < g.num_comm; ++k) {
      if (zv(m, k) >= 0) terms.push_back({zv(m, k), 1.0});
    }
    terms.push_back({lay.v_var[m], -1.0});
    model.add_constraint("rowz" + std::to_string(m), std::move(terms), Rel::LessEq, 0.0);
  }
  for (int k = 0; k < g.num_comm; ++k) {
    std::vector<std::pair<int, double>> terms;
    for (int m = 0; m < g.num_aps; ++m) {
      if (zv(m, k) >= 0) terms.push_back({zv(m, k), 1.0});
    }
    terms.push_back({lay.u_var[k], -1.0});
    model.add_constraint("colz" + std::to_string(k), std::move(terms), Rel::LessEq, 0.0);
  }

  // Comm-SINR proxy per dominant link, deactivatable through the big-M
  // terms when either endpoint is off.
  for (int m = 0; m < g.num_aps; ++m) {
    for (int k = 0; k < g.num_comm; ++k) {
      const double wmk = at(m, k);
      if (wmk <= 0.0) continue;
      std::vector<double> coef(model.num_vars(), 0.0);
      for (int kp = 0; kp < g.num_comm; ++kp) {
        if (thr.exclude_self && kp == k) continue;
        const double c = thr.tau_hat_c * wmk * at(m, kp);
        if (c != 0.0) coef[lay.u_var[kp]] += c;
      }
      if (sen >= 0 && at(m, sen) > 0.0) {
        coef[lay.vs_var[m]] += thr.tau_hat_c * wmk * at(m, sen);
      }
      coef[lay.u_var[k]] += big.c1;
      coef[lay.v_var[m]] += big.c2;
      std::vector<std::pair<int, double>> terms;
      for (int j = 0; j < model.num_vars(); ++j) {
        if (coef[j] != 0.0) terms.push_back({j, coef[j]});
      }
      model.add_constraint("g" + std::to_string(m) + "_" + std::to_string(k), std::move(terms),
                           Rel::LessEq, wmk * wmk + big.c1 + big.c2);
    }
  }

  // Power-transfer row: aggregate dominant charge weight of the active APs
  // against a fraction of the total.
  if (g.num_charge > 0) {
    std::vector<std::pair<int, double>> terms;
    double total = 0.0;
    for (int m = 0; m < g.num_aps; ++m) {
      double cw = 0.0;
      for (int p = 0; p < g.num_charge; ++p) {
        const double wp = at(m, g.charge_col0() + p);
        cw += thr.power_constraint_squared ? wp * wp : wp;
      }
      total += cw;
      if (cw != 0.0) terms.push_back({lay.v_var[m], cw});
    }
    model.add_constraint("h", std::move(terms), Rel::GreaterEq, thr.tau_hat_p * total);
  }

  if (g.has_sensing) {
    // Sensing-SINR proxy per comm user, plus the selector rows.
    for (int k = 0; k < g.num_comm; ++k) {
      std::vector<std::pair<int, double>> terms;
      for (int m = 0; m < g.num_aps; ++m) {
        const double ws = at(m, sen);
        if (ws <= 0.0) continue;
        terms.push_back({lay.vs_var[m], (1.0 - thr.tau_hat_s) * ws * ws});
        const double cross = thr.tau_hat_s * at(m, k) * ws;
        if (cross != 0.0) terms.push_back({lay.v_var[m], -cross});
      }
      terms.push_back({lay.u_var[k], -big.c4});
      model.add_constraint("i" + std::to_string(k), std::move(terms), Rel::GreaterEq, -big.c4);
    }
    for (int m = 0; m < g.num_aps; ++m) {
      model.add_constraint("j" + std::to_string(m),
                           {{lay.vs_var[m], 1.0}, {lay.v_var[m], -1.0}}, Rel::LessEq, 0.0);
    }
    std::vector<std::pair<int, double>> pick;
    for (int m = 0; m < g.num_aps; ++m) {
      if (g.adj(m, sen)) pick.push_back({lay.vs_var[m], 1.0});
    }
    model.add_constraint("k", std::move(pick), Rel::Eq, 1.0);
  }
  return out;
}

inline MilpModel build_p2(const TopologyGraph& g, const IscptThresholds& thr,
                          double sigma2 = 0.0) {
  return build_p2_model(g, thr, sigma2).model;
}

struct IscptResult {
  IscptDecision decision;
  MilpStatus status = MilpStatus::Infeasible;
  long nodes = 0;
  double objective = 0.0;
};

inline IscptDecision decode_decision(const P2Layout& lay, const std::vector<double>& values,
                                     double objective) {
  IscptDecision d;
  d.u.reserve(lay.num_comm);
  for (int k = 0; k < lay.num_comm; ++k) {
    d.u.push_back(static_cast<int>(std::lround(values[lay.u_var[k]])));
  }
  for (int m = 0; m < lay.num_aps; ++m) {
    d.v.push_back(static_cast<int>(std::lround(values[lay.v_var[m]])));
  }
  d.v_s.assign(static_cast<std::size_t>(lay.num_aps), 0);
  if (lay.has_sensing) {
    for (int m = 0; m < lay.num_aps; ++m) {
      d.v_s[m] = static_cast<int>(std::lround(values[lay.vs_var[m]]));
    }
  }
  d.z.assign(static_cast<std::size_t>(lay.num_aps) * lay.num_comm, 0.0);
  for (std::size_t i = 0; i < lay.z_var.size(); ++i) {
    if (lay.z_var[i] >= 0) d.z[i] = values[lay.z_var[i]];
  }
  d.matching_value = static_cast<int>(std::lround(objective));
  return d;
}

inline IscptResult solve_iscpt_full(const TopologyGraph& g, const IscptThresholds& thr,
                                    double sigma2 = 0.0, long node_limit = 1000000) {
  const P2Build built = build_p2_model(g, thr, sigma2);
  const MilpSolution sol = solve_bnb(built.model, node_limit);
  IscptResult res;
  res.status = sol.status;
  res.nodes = sol.nodes;
  res.objective = sol.objective;
  if (sol.status == MilpStatus::Infeasible) {
    throw InfeasibleError("selection model is infeasible for this topology");
  }
  if (sol.status == MilpStatus::NodeLimit) {
    throw NodeLimitError("node limit of " + std::to_string(node_limit) +
                         " reached before optimality");
  }
  if (sol.status == MilpStatus::Unbounded) {
    throw UnboundedError("selection model is unbounded; model construction is broken");
  }
  res.decision = decode_decision(built.layout, sol.values, sol.objective);
  return res;
}

inline IscptDecision solve_iscpt(const TopologyGraph& g, const IscptThresholds& thr,
                                 double sigma2 = 0.0, long node_limit = 1000000) {
  return solve_iscpt_full(g, thr, sigma2, node_limit).decision;
}

// ---- decision text format ----

inline KvDocument decision_to_kv(const IscptDecision& d) {
  KvDocument doc;
  auto& s = doc.add("decision");
  s.entries.push_back({"matching_value", std::to_string(d.matching_value)});
  auto join = [](const std::vector<int>& xs) {
    std::string line;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) line += ' ';
      line += std::to_string(xs[i]);
    }
    return line;
  };
  s.entries.push_back({"u", join(d.u)});
  s.entries.push_back({"v", join(d.v)});
  s.entries.push_back({"v_s", join(d.v_s)});
  return doc;
}

inline IscptDecision parse_decision(const KvDocument& doc) {
  const KvSection& s = doc.require("decision");
  IscptDecision d;
  auto read_bits = [&](const char* key) {
    const std::string* line = s.find(key);
    if (!line) throw ConfigError(std::string("decision missing ") + key);
    std::vector<int> out;
    for (const auto& tok : split_tokens(*line)) {
      if (tok == "0") {
        out.push_back(0);
      } else if (tok == "1") {
        out.push_back(1);
      } else {
        throw ConfigError(std::string("decision ") + key + " entries must be 0 or 1");
      }
    }
    return out;
  };
  d.u = read_bits("u");
  d.v = read_bits("v");
  d.v_s = read_bits("v_s");
  if (d.v_s.size() != d.v.size()) {
    throw ConfigError("decision v_s length does not match v");
  }
  if (const std::string* mv = s.find("matching_value")) {
    d.matching_value = static_cast<int>(kv_int(*mv, "decision.matching_value"));
  }
  for (std::size_t m = 0; m < d.v.size(); ++m) {
    if (d.v_s[m] > d.v[m]) throw ConfigError("decision has a sensing AP that is not active");
  }
  return d;
}

inline void save_decision(const IscptDecision& d, const std::string& path) {
  kv_save(decision_to_kv(d), path);
}

inline IscptDecision load_decision(const std::string& path) {
  return parse_decision(kv_load(path));
}

}  // namespace saginet
