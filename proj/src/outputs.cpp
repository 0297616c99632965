#include "pathperc/outputs.hpp"

#include <ostream>

#include <json.hpp>

#include "pathperc/csv.hpp"

namespace pathperc {

void write_vs_csv(std::ostream& out, const SizeDistribution& vs) {
  out << "s,v,stderr\n";
  for (std::size_t s = 1; s <= vs.node_count(); ++s) {
    const double v = vs.value(s);
    if (v <= 0.0) continue;
    out << s << ',' << format_real(v) << ',' << format_real(vs.stderr_at(s)) << '\n';
  }
}

void write_phase_csv(std::ostream& out, std::span<const PhasePoint> points) {
  out << "N,alpha,eta_mean,eta_stderr,replicas,converged\n";
  for (const auto& p : points) {
    out << p.n << ',' << format_real(p.alpha) << ',' << format_real(p.eta_mean) << ','
        << format_real(p.eta_stderr) << ',' << p.replicas << ',' << (p.converged ? 1 : 0) << '\n';
  }
}

void write_ell_csv(std::ostream& out, const PathLengthScaling& ell) {
  out << "s,ell_mean,stderr\n";
  for (const auto& row : ell.rows()) {
    out << row.size << ',' << format_real(row.mean) << ',' << format_real(row.std_error) << '\n';
  }
}

void write_pl_csv(std::ostream& out, const LengthHistogram& hist) {
  out << "l,p,stderr\n";
  for (const auto& [l, count] : hist.counts) {
    out << l << ',' << format_real(hist.probability(l)) << ',' << format_real(hist.stderr_at(l)) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, std::span<const StepRecord> records) {
  out << "step,l,links_added,n_components,s_max,eta\n";
  for (const auto& r : records) {
    out << r.step << ',' << r.removed_length << ',' << r.links_added << ',' << r.n_components << ',' << r.s_max
        << ',' << format_real(r.eta) << '\n';
  }
}

void write_vs_theory_csv(std::ostream& out, const SolverState& state) {
  out << "s,v\n";
  const auto v = state.v();
  for (std::size_t s = 1; s < v.size(); ++s) out << s << ',' << format_real(v[s]) << '\n';
}

void write_predictor_csv(std::ostream& out, std::span<const double> p) {
  out << "l,p\n";
  for (std::size_t l = 1; l < p.size(); ++l) out << l << ',' << format_real(p[l]) << '\n';
}

std::string moment_report_json(const MomentReport& r) {
  nlohmann::ordered_json j;
  j["tau"] = r.tau;
  j["s_max"] = r.s_max;
  j["k_exact"] = r.k_exact;
  j["k_asym"] = r.k_asym;
  j["alpha_star_exact"] = r.alpha_star_exact;
  j["alpha_star_asym"] = r.alpha_star_asym;
  j["alpha_star_balance"] = r.alpha_star_balance;
  return j.dump(2) + "\n";
}

}  // namespace pathperc
