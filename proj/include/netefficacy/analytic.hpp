#pragma once

// Closed-form network efficacy, heterogeneous capacity, and growth formulas.
//
// Efficacy of a network whose effective part E covers N_E of the N_Ω nodes
// of its information system, with every node attempting contacts at rate α:
//
//     ψ = α · N_E² / N_Ω
//
// All functions are pure and throw PreconditionError outside their domain.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "netefficacy/core_model.hpp"

namespace netefficacy::analytic {

/// Absolute tolerance used when checking exact formulas.
inline constexpr double kExactTolerance = 1e-12;
/// Tolerance for composed round trips (relative where noted).
inline constexpr double kRoundTripTolerance = 1e-9;

/// psi_value · Σ ξ(e_i)·P(e_i). Throws ValidationError for an invalid distribution.
double expected_utility(double psi_value, const EventDistribution& distribution);

EfficacyReport efficacy(double alpha, std::size_t n_effective, std::size_t n_system);

struct DisconnectReport {
    EfficacyReport report;
    std::size_t n_effective = 0;  ///< floor(N_Ω / x)
    double shrink_factor = 1.0;
    /// α · N_E / x, the intermediate form of the disconnect construction.
    double shrink_form = 0.0;
};

/// Disconnects all but floor(N_Ω / x) nodes and evaluates the efficacy of
/// what remains. Requires x >= 1.
DisconnectReport disconnect_experiment(double alpha, std::size_t n_system, double shrink_x);

enum class Binding { Default, Preferred };
std::string to_string(Binding binding);

struct HetNetResult {
    double total = 0.0;
    double preferred_load = 0.0;
    double default_load = 0.0;
    Binding binding = Binding::Default;
};

/// Joint capacity of a universal default network D and a preferred network
/// K covering a fraction n of nodes. A fraction n² of traffic stays inside
/// K, the rest falls back to D:
///
///     total = min(C_D / (1 − n²), C_K / n²)
///
/// With C_K non-binding this is the unit-normalized 1/(1 − n²) scaled by C_D.
HetNetResult hetnet_capacity(const HetNetConfig& config);

/// Total traffic two mutually dependent networks can carry when a fraction
/// n is offloaded from the smaller capacity: c_small / (1 − n).
double dependent_capacity(double c_small, double traffic_fraction);

/// Coverage fraction at which an unlimited preferred network lifts the
/// joint capacity to `target_total`: sqrt(1 − c_default / target_total).
double plan_coverage(double c_default, double target_total);

struct TrajectoryPoint {
    std::size_t step = 0;
    std::size_t n_effective = 0;
    std::size_t n_system = 0;
    double efficacy = 0.0;
};

struct SizePair {
    std::size_t n_effective = 0;
    std::size_t n_system = 0;
};

std::vector<TrajectoryPoint> growth_trajectory(double alpha, std::span<const SizePair> schedule);

/// Sweeps N_E over [from, to] by `step` while N_Ω = max(n_system, N_E): a
/// network growing inside a fixed system until it catches the system, then
/// growing together with it.
std::vector<SizePair> saturating_schedule(std::size_t n_system, std::size_t from, std::size_t to,
                                          std::size_t step);

struct SystemLoad {
    double alpha = 1.0;
    std::size_t n_effective = 0;
    std::size_t n_system = 0;
};

/// Efficacy of one network serving several information systems.
double multipurpose_total(std::span<const SystemLoad> systems);

}  // namespace netefficacy::analytic
