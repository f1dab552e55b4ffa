#pragma once

// Seeded Monte Carlo contact simulator.
//
// Each attempt picks a caller from the effective network E and a target
// from the information system Ω according to the demand model. The attempt
// succeeds when the target is reachable inside the network. The mean
// success rate estimates N_E / N_Ω, and ψ̂ = α · N_E · success_rate
// estimates the analytic efficacy.
//
// Trial t draws from the counter stream keyed by (seed, first_trial + t),
// so results are bit-identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "netefficacy/analytic.hpp"
#include "netefficacy/core_model.hpp"

namespace netefficacy::montecarlo {

struct SimConfig {
    std::uint64_t seed = 0;
    std::uint64_t attempts = 100'000;  ///< per trial
    std::uint64_t trials = 10;
    std::uint64_t first_trial = 0;     ///< index of the first trial's stream
    unsigned workers = 0;              ///< 0 = hardware concurrency
};

Violations validate(const SimConfig& config);

struct SimResult {
    double alpha = 0.0;
    std::size_t n_effective = 0;
    std::size_t n_system = 0;
    std::uint64_t attempts_per_trial = 0;
    std::uint64_t first_trial = 0;

    double success_rate = 0.0;      ///< mean of per_trial
    double throughput_hat = 0.0;    ///< α · N_E · success_rate
    /// Sample standard error of throughput_hat across trials; 0 with one trial.
    double standard_error = 0.0;
    /// Fraction of the whole system's demand that was served. Disconnected
    /// nodes attempt at the same rate and always fail.
    double satisfied_demand = 0.0;
    std::vector<double> per_trial;  ///< success rate of each trial

    bool operator==(const SimResult&) const = default;
};

SimResult simulate_contacts(const InformationSystem& system, const NetworkOverlay& overlay,
                            const DemandModel& demand, const SimConfig& config);

/// Keeps floor(N_E / shrink_x) effective nodes, sampled uniformly with the
/// configured seed, and simulates the remainder against the full system.
SimResult simulate_disconnect(const InformationSystem& system, const NetworkOverlay& overlay,
                              const DemandModel& demand, double shrink_x, const SimConfig& config);

/// The overlay simulate_disconnect runs against.
NetworkOverlay disconnected_overlay(const InformationSystem& system, const NetworkOverlay& overlay,
                                    double shrink_x, std::uint64_t seed);

struct TopologyComparison {
    SimResult first;
    SimResult second;
    double max_gap = 0.0;  ///< max |difference| over throughput and per-trial rates
    bool bit_identical = false;
};

/// Runs both overlays on the same streams. Reachability only depends on
/// which nodes are connected through the overlay, never on which links
/// carry the traffic, so any two connected topologies over the same
/// effective set produce identical results.
TopologyComparison compare_topologies(const InformationSystem& system,
                                      const NetworkOverlay& first, const NetworkOverlay& second,
                                      const DemandModel& demand, const SimConfig& config);

struct HetNetEstimate {
    double preferred_share = 0.0;  ///< fraction of attempts carried by the preferred network
    double default_share = 0.0;
    double share_standard_error = 0.0;
    analytic::HetNetResult capacity;
    std::vector<double> per_trial_preferred_share;
};

/// Tags every attempt "preferred" when both ends sit in the preferred
/// overlay and "default" otherwise, then scales the observed shares until
/// one network saturates.
HetNetEstimate simulate_hetnet(const InformationSystem& system,
                               const NetworkOverlay& preferred_overlay, const DemandModel& demand,
                               const HetNetConfig& capacities, const SimConfig& config);

/// Exact expected throughput of the simulated process, by enumerating
/// every (caller, target) pair the demand model can produce. This is what
/// simulate_contacts converges to, including the exclude-self rule, contact
/// lists, and disconnected edge-list topologies.
double exact_expectation(const InformationSystem& system, const NetworkOverlay& overlay,
                         const DemandModel& demand);

/// Concatenates two runs over adjacent trial ranges of the same scenario.
SimResult merge(const SimResult& first, const SimResult& second);

/// Uniformly random contact list of `size` nodes for every node of the
/// system.
std::map<NodeId, NodeSet> sample_contact_sets(const InformationSystem& system, std::size_t size,
                                              std::uint64_t seed);

}  // namespace netefficacy::montecarlo
