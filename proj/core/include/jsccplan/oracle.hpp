#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jsccplan/kkt_solver.hpp"
#include "jsccplan/types.hpp"

namespace jsccplan::oracle {

/// Controls for the derivative-free reference solvers. These deliberately
/// avoid the closed-form expressions so agreement with solve_p4 is evidence,
/// not tautology.
struct OracleOptions {
    double objective_tol = 1e-13;  ///< relative sweep-to-sweep improvement cutoff
    double line_tol = 1e-12;       ///< relative golden-section interval cutoff
    int max_sweeps = 400;
    int multistart = 8;
    std::uint64_t seed = 1;
};

/// E1 via adaptive Simpson quadrature of the defining integral, with a
/// log substitution that tames the integrable endpoint behavior. Supports
/// the same domain as the production evaluator but through entirely
/// different numerics.
double e1_quadrature(double g, double rel_tol = 1e-13);

/// Reference solution of the fixed-compression subproblem: thresholds pinned
/// at their minimum, each time share eliminated through the latency equality,
/// then the edge-CPU split minimized by projected pairwise coordinate descent
/// with golden-section line searches and multistart. mu_star is not produced
/// (left NaN); everything else matches the P4Solution contract.
P4Solution solve_p4_reference(const P4Instance& instance, const OracleOptions& opts = {});

/// One interior point of the latency constraint surface together with its
/// coefficients: f(g, tau, f_c) = b * e^g / tau + c / f_c (+ affine terms
/// that vanish under differentiation).
struct ConvexitySample {
    double g = 1.0;
    double tau = 1.0;
    double f_c = 1.0;
    double b = 1.0;
    double c = 1.0;
};

struct ConvexityVerdict {
    bool pass = false;
    int samples_checked = 0;
    int samples_skipped = 0;           ///< finite-difference step underflowed a boundary
    double min_normalized_minor = 0.0;
    std::string detail;
};

/// Central finite-difference Hessian of the latency constraint in the
/// variable order (g, tau, f_c), normalized to unit diagonal; verifies all
/// leading principal minors exceed -1e-8 at every sample.
ConvexityVerdict check_constraint_convexity(const std::vector<ConvexitySample>& samples);

struct BruteForceResult {
    bool any_solvable = false;   ///< at least one tuple admitted a tight allocation
    bool feasible = false;       ///< best total time share fits the frame budget
    std::vector<int> best_tuple;
    double best_sum_tau = 0.0;
    P4Solution best_solution;
    std::uint64_t tuples_examined = 0;
};

/// Exhaustive reference for the compression-selection layer at one candidate
/// delay: every tuple solved through solve_p4_reference, ties broken toward
/// the lexicographically smallest tuple. Refuses when the tuple count
/// exceeds 1e5.
BruteForceResult brute_force_p3(const SystemConfig& cfg,
                                const std::vector<DeviceProfile>& devices, double T,
                                const OracleOptions& opts = {});

}  // namespace jsccplan::oracle
