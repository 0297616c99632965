#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pathperc/observables.hpp"
#include "pathperc/phase.hpp"
#include "pathperc/smoluchowski.hpp"

namespace pathperc {

// All writers print reals with format_real, so equal inputs give equal bytes.

/// s,v,stderr for every s with a non-zero mean.
void write_vs_csv(std::ostream& out, const SizeDistribution& vs);
/// N,alpha,eta_mean,eta_stderr,replicas,converged
void write_phase_csv(std::ostream& out, std::span<const PhasePoint> points);
/// s,ell_mean,stderr
void write_ell_csv(std::ostream& out, const PathLengthScaling& ell);
/// l,p,stderr
void write_pl_csv(std::ostream& out, const LengthHistogram& hist);
/// step,l,links_added,n_components,s_max,eta
void write_trajectory_csv(std::ostream& out, std::span<const StepRecord> records);
/// s,v for s = 1..s_max.
void write_vs_theory_csv(std::ostream& out, const SolverState& state);
/// l,p for l >= 1.
void write_predictor_csv(std::ostream& out, std::span<const double> p);
/// {tau, s_max, k_exact, k_asym, alpha_star_exact, alpha_star_asym, alpha_star_balance}
std::string moment_report_json(const MomentReport& report);

}  // namespace pathperc
