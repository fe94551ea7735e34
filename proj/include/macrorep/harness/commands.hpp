#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "macrorep/harness/config.hpp"

namespace macrorep::harness {

/// printf("%.12g")
std::string format_real(double v);

/// Values joined with ';' (CSV-safe), empty for no values.
std::string join_ints(const std::vector<int>& v);

/// M,N,t,phi,outcome_spec,entropy,p_q
void run_sweep_entropy(const RunConfig& cfg, std::ostream& out);

/// M,N,t,phi,outcome_spec,fidelity,p_q against the parity-matched target.
void run_sweep_fidelity(const RunConfig& cfg, std::ostream& out);

/// q,prob,label,q_peak for the offset-rotated cat |C_{cat-m}>.
void run_measure_dist(const RunConfig& cfg, std::ostream& out);

/// Amplitude rows N,M,L,q2,K,amp_exact,amp_approx and summary rows
/// N,M,L,q2,fidelity.
void run_approx_compare(const RunConfig& cfg, std::ostream& out, std::ostream& summary);

/// seed,outcomes,labels,p_q,fid_pre,fid_post; mean/min summary on `log`.
void run_protocol(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Engine vs brute force over every outcome vector. Returns 0 when the
/// largest deviation is within 1e-10, otherwise 1 with the location on `log`.
int run_oracle_check(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Dispatch with file handling for --out / --summary. Returns the exit code
/// (0 ok, 1 computation failure); usage problems surface as UsageError.
int execute(const RunConfig& cfg, std::ostream& stdout_stream, std::ostream& stderr_stream);

}  // namespace macrorep::harness
