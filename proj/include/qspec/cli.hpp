#pragma once

// Driver behind the qspec executable: a RunConfig in, the report text and the
// exit code out. Reports are assembled in a fixed order and carry no timing,
// so a config and seed reproduce them byte for byte.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qspec/berberian.hpp"
#include "qspec/commutator.hpp"
#include "qspec/error.hpp"
#include "qspec/io.hpp"
#include "qspec/sspec.hpp"
#include "qspec/suites.hpp"

namespace qspec {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_parse = 2,
  exit_no_convergence = 3,
  exit_property = 4,
  exit_dimension = 5,
  exit_not_almost_convergent = 6,
  exit_not_commuting = 7,
  exit_bound = 8,
  exit_other = 9,
};

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;  // positional files, then --input
  std::string left, right;          // commutator operands
  std::string q;                    // "w,x,y,z"
  double tol = 1e-6;
  std::optional<double> grid;       // spectrum: add a grid-scan cross-check at this step
  std::size_t terms = 10000;        // berberian: extent of the decay table
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string op = "unilateral-shift";
  std::size_t horizon = 100000;     // generalized-limit horizon
  double cert_tol = 1e-4;
  std::optional<std::size_t> eig_cap;  // QR sweeps per dimension
  std::string suite;

  void validate() const {
    if (!(tol > 0.0)) throw InvalidArgument("--tol must be positive");
    if (grid && !(*grid > 0.0 && *grid <= 1.0)) throw InvalidArgument("--grid must lie in (0, 1]");
    if (format != "json" && format != "csv") throw InvalidArgument("--format must be json or csv");
    if (terms == 0) throw InvalidArgument("--terms must be positive");
    if (!(cert_tol > 0.0)) throw InvalidArgument("--cert-tol must be positive");
    if (eig_cap && *eig_cap == 0) throw InvalidArgument("--eig-cap must be positive");
  }
};

struct Report {
  std::string output;
  int exit_code = exit_ok;
  bool error = false;  // output is an error document
};

namespace cli_detail {

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline const std::string& single_input(const RunConfig& cfg) {
  if (cfg.inputs.size() != 1) throw InvalidArgument(cfg.subcommand + " needs exactly one input matrix");
  return cfg.inputs.front();
}

inline Quaternion required_q(const RunConfig& cfg) {
  if (cfg.q.empty()) throw InvalidArgument(cfg.subcommand + " needs --q w,x,y,z");
  return parse_quaternion(cfg.q);
}

// Right-span basis of the kernel of R_q(A): real null vectors of the real
// representation, orthogonalized over H. The real kernel is closed under right
// scalars, so each kept vector accounts for four real dimensions.
inline std::vector<QVector> kernel_basis(const QMatrix& r, double threshold) {
  const auto ev = symmetric_eig(gram(real_rep(r)), true);
  std::vector<QVector> basis;
  for (std::size_t k = 0; k < ev.values.size(); ++k) {
    if (std::sqrt(std::max(0.0, ev.values[k])) > threshold) break;
    std::vector<double> col(ev.vectors.rows());
    for (std::size_t i = 0; i < col.size(); ++i) col[i] = ev.vectors(i, k);
    QVector v = from_real_coords(col);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) v = v - b * inner(b, v);
    const double nv = norm(v);
    if (nv > 0.5) basis.push_back(v * (1.0 / nv));
  }
  return basis;
}

inline Json vector_json(const QVector& v) {
  Json out = Json::array();
  for (std::size_t k = 0; k < v.dim(); ++k) out.push_back(to_json(v[k]));
  return out;
}

inline Report run_spectrum(const RunConfig& cfg) {
  const QMatrix a = parse_matrix_file(single_input(cfg));
  SpectrumOptions opt;
  if (cfg.eig_cap) opt.eig.sweeps_per_dim = *cfg.eig_cap;
  const SpectrumReport rep = s_spectrum(a, opt);
  Report out;
  if (cfg.format == "csv") {
    out.output = spectrum_csv(rep);
  } else {
    Json j = spectrum_json(rep);
    if (cfg.grid) {
      const double h = *cfg.grid, nrm = rep.operator_norm;
      const auto mins = local_minima(grid_scan(a, h, -nrm - 2 * h, nrm + 2 * h, nrm + 2 * h));
      auto near = [h](const SphereCoord& p, const SpectralSphere& s) {
        return std::abs(p.a - s.a) <= h * (1 + 1e-9) && std::abs(p.r - s.r) <= h * (1 + 1e-9);
      };
      std::size_t stray = 0, unmatched = 0;
      for (const auto& p : mins)
        if (std::none_of(rep.spheres.begin(), rep.spheres.end(), [&](const auto& s) { return near(p, s); })) ++stray;
      for (const auto& s : rep.spheres)
        if (std::none_of(mins.begin(), mins.end(), [&](const auto& p) { return near(p, s); })) ++unmatched;
      j["grid_check"] = Json{{"step", h}, {"minima", mins.size()}, {"off_sphere", stray}, {"unmatched", unmatched}};
      if (stray != 0 || unmatched != 0) out.exit_code = exit_property;
    }
    out.output = dump(j);
  }
  return out;
}

inline Report run_resolvent(const RunConfig& cfg) {
  const QMatrix a = parse_matrix_file(single_input(cfg));
  const Quaternion q = required_q(cfg);
  const Membership m = membership(a, q, cfg.tol);
  const auto margins = apo_sus_certificates(a, q);
  const double nrm = operator_norm(a);
  Json j;
  j["q"] = to_json(q);
  j["member"] = m.member;
  j["class"] = to_string(m.member ? SpectralClass::point : SpectralClass::regular);
  j["margin"] = m.margin;
  j["apo_margin"] = margins.apo_margin;
  j["sus_margin"] = margins.sus_margin;
  Json kernel = Json::array();
  if (m.member)
    for (const auto& v : kernel_basis(pseudo_resolvent(a, q).matrix, cfg.tol * (1.0 + nrm * nrm)))
      kernel.push_back(vector_json(v));
  j["kernel"] = std::move(kernel);
  return {dump(j), exit_ok};
}

inline Report run_commutator(const RunConfig& cfg) {
  std::vector<std::string> files;
  if (!cfg.left.empty()) files.push_back(cfg.left);
  if (!cfg.right.empty()) files.push_back(cfg.right);
  files.insert(files.end(), cfg.inputs.begin(), cfg.inputs.end());
  if (files.size() != 2) throw InvalidArgument("commutator needs two matrices (S and T)");
  const QMatrix s = parse_matrix_file(files[0]), t = parse_matrix_file(files[1]);
  const CheckReport ct = ct1_check(s, t);
  Json j;
  j["difference"] = check_json(ct);
  bool ok = ct.inclusion && ct.endpoint;
  if (commute(s, t)) {
    const Cop1Report c = cop1_check(s, t);
    j["sum"] = cop1_json(c);
    ok = ok && c.passed();
  } else {
    j["sum"] = Json{{"commuting", false}};
  }
  return {dump(j), ok ? exit_ok : exit_property};
}

inline Report run_berberian(const RunConfig& cfg) {
  const BandedOperatorRule rule =
      cfg.inputs.empty() ? BandedOperatorRule::by_name(cfg.op)
                         : BandedOperatorRule::from_matrix(parse_matrix_file(single_input(cfg)));
  const Quaternion q = required_q(cfg);
  GeneralizedLimitConfig gcfg;
  gcfg.horizon = cfg.horizon;
  CertOptions opt;
  opt.cert_tol = cfg.cert_tol;
  opt.decay_max = cfg.terms;
  const CertReport rep = tc1_certificate(rule, q, gcfg, opt);
  Json j = cert_json(rep);
  j["operator"] = rule.name();
  return {cfg.format == "csv" ? decay_csv(rep) : dump(j), rep.point_of_extension ? exit_ok : exit_property};
}

inline Report run_check(const RunConfig& cfg) {
  std::vector<std::string> names;
  if (cfg.suite == "all") names = suite_names();
  else if (!cfg.suite.empty()) names = {cfg.suite};
  else throw InvalidArgument("check needs --suite");
  Json crit = Json::array();
  bool all = true;
  for (const auto& name : names)
    for (const auto& r : run_suite(name, cfg.seed)) {
      crit.push_back(Json{{"suite", name}, {"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      all = all && r.passed;
    }
  Json j;
  j["suite"] = cfg.suite;
  j["seed"] = cfg.seed;
  j["passed"] = all;
  j["criteria"] = std::move(crit);
  return {dump(j), all ? exit_ok : exit_property};
}

}  // namespace cli_detail

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const DimensionError*>(&e)) return exit_parse;
  if (dynamic_cast<const NoConvergence*>(&e)) return exit_no_convergence;
  if (dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const UnsupportedRule*>(&e)) return exit_usage;
  if (dynamic_cast<const DimensionMismatch*>(&e)) return exit_dimension;
  if (dynamic_cast<const NotAlmostConvergent*>(&e)) return exit_not_almost_convergent;
  if (dynamic_cast<const NotCommuting*>(&e)) return exit_not_commuting;
  if (dynamic_cast<const BoundViolation*>(&e)) return exit_bound;
  return exit_other;
}

/// Dispatches one subcommand. Library errors become a JSON error report with
/// an exit code chosen by error class.
inline Report run(const RunConfig& cfg) {
  try {
    cfg.validate();
    if (cfg.subcommand == "spectrum") return cli_detail::run_spectrum(cfg);
    if (cfg.subcommand == "resolvent") return cli_detail::run_resolvent(cfg);
    if (cfg.subcommand == "commutator") return cli_detail::run_commutator(cfg);
    if (cfg.subcommand == "berberian") return cli_detail::run_berberian(cfg);
    if (cfg.subcommand == "check") return cli_detail::run_check(cfg);
    throw InvalidArgument("unknown subcommand '" + cfg.subcommand + "'");
  } catch (const std::exception& e) {
    Json j;
    j["error"] = e.what();
    return {cli_detail::dump(j), exit_code_for(e), true};
  }
}

}  // namespace qspec
