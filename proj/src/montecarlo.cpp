#include "netefficacy/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "netefficacy/counter_rng.hpp"

namespace netefficacy::montecarlo {
namespace {

constexpr std::size_t kNoTarget = std::numeric_limits<std::size_t>::max();
constexpr std::uint64_t kDisconnectStream = 0xd15c0223c7ed0001ULL;
constexpr std::uint64_t kContactSetSalt = 0xc0a7ac75e7500001ULL;
constexpr std::uint64_t kHetNetSalt = 0x4e7e70e7b1e5a1ULL;

void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}

void check_inputs(const InformationSystem& system, const NetworkOverlay& overlay,
                  const DemandModel& demand, const SimConfig& config) {
    throw_if_invalid(validate(system));
    require(overlay.is_bound_to(system), "overlay is not bound to the simulated information system");
    throw_if_invalid(validate(overlay, system));
    throw_if_invalid(validate(demand, system));
    throw_if_invalid(validate(config));
    require(demand.target_rule != TargetRule::UniformOverSystemExcludingSelf || system.size() >= 2,
            "excluding self as a target needs a system of at least two nodes");
}

// Union-find over positions in the effective set.
class Components {
public:
    explicit Components(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void join(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

// Everything an attempt needs, indexed by rank in Ω.
class ContactKernel {
public:
    ContactKernel(const InformationSystem& system, const NetworkOverlay& overlay,
                  const DemandModel& demand)
        : n_system_(system.size()),
          exclude_self_(demand.target_rule == TargetRule::UniformOverSystemExcludingSelf),
          component_(system.size(), -1) {
        const NodeSet& omega = system.nodes();
        const NodeSet& effective = overlay.effective();
        effective_to_system_.reserve(effective.size());
        for (NodeId id : effective) effective_to_system_.push_back(*omega.index_of(id));

        Components components(effective.size());
        if (const auto* list = std::get_if<EdgeListTopology>(&overlay.topology())) {
            for (const auto& [a, b] : list->edges)
                components.join(*effective.index_of(a), *effective.index_of(b));
        } else {
            // Complete and star overlays connect every effective node.
            for (std::size_t i = 1; i < effective.size(); ++i) components.join(i, 0);
        }
        for (std::size_t i = 0; i < effective.size(); ++i)
            component_[effective_to_system_[i]] = static_cast<std::int64_t>(components.find(i));

        if (demand.contact_sets) {
            contacts_.resize(n_system_);
            has_contacts_.assign(n_system_, false);
            for (const auto& [caller, contacts] : *demand.contact_sets) {
                const std::size_t c = *omega.index_of(caller);
                has_contacts_[c] = true;
                for (NodeId id : contacts) contacts_[c].push_back(*omega.index_of(id));
            }
        }
    }

    std::size_t n_effective() const { return effective_to_system_.size(); }
    std::size_t effective_rank_to_system(std::size_t i) const { return effective_to_system_[i]; }

    std::size_t draw_target(rng::CounterDraws& draws, std::size_t caller) const {
        if (!has_contacts_.empty() && has_contacts_[caller]) {
            const auto& list = contacts_[caller];
            if (!exclude_self_) {
                if (list.empty()) return kNoTarget;
                return list[draws.below(list.size())];
            }
            auto self = std::lower_bound(list.begin(), list.end(), caller);
            const bool lists_self = self != list.end() && *self == caller;
            const std::size_t choices = list.size() - (lists_self ? 1 : 0);
            if (choices == 0) return kNoTarget;
            std::size_t pick = draws.below(choices);
            if (lists_self && pick >= static_cast<std::size_t>(self - list.begin())) ++pick;
            return list[pick];
        }
        if (!exclude_self_) return draws.below(n_system_);
        std::size_t pick = draws.below(n_system_ - 1);
        return pick >= caller ? pick + 1 : pick;
    }

    bool has_contacts(std::size_t caller) const {
        return !has_contacts_.empty() && has_contacts_[caller];
    }
    const std::vector<std::size_t>& contacts(std::size_t caller) const { return contacts_[caller]; }
    bool excludes_self() const { return exclude_self_; }

    bool reachable(std::size_t caller, std::size_t target) const {
        return target != kNoTarget && component_[target] >= 0 &&
               component_[target] == component_[caller];
    }

private:
    std::size_t n_system_;
    bool exclude_self_;
    std::vector<std::int64_t> component_;
    std::vector<std::size_t> effective_to_system_;
    std::vector<std::vector<std::size_t>> contacts_;
    std::vector<bool> has_contacts_;
};

// Runs fn(trial_index) for every trial, in parallel, storing by position.
template <class TrialFn>
std::vector<double> run_trials(const SimConfig& config, TrialFn&& fn) {
    std::vector<double> out(config.trials);
    unsigned workers = config.workers != 0 ? config.workers : std::thread::hardware_concurrency();
    workers = static_cast<unsigned>(
        std::clamp<std::uint64_t>(workers, 1, std::max<std::uint64_t>(config.trials, 1)));

    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t t; (t = next.fetch_add(1)) < config.trials;)
            out[t] = fn(config.first_trial + t);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    return out;
}

struct MeanAndError {
    double mean = 0.0;
    double standard_error = 0.0;
};

MeanAndError summarize(const std::vector<double>& values) {
    MeanAndError out;
    if (values.empty()) return out;
    const double n = static_cast<double>(values.size());
    out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.standard_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

void aggregate(SimResult& result) {
    const auto [mean, se] = summarize(result.per_trial);
    const double scale = result.alpha * static_cast<double>(result.n_effective);
    result.success_rate = mean;
    result.throughput_hat = scale * mean;
    result.standard_error = scale * se;
    result.satisfied_demand =
        mean * static_cast<double>(result.n_effective) / static_cast<double>(result.n_system);
}

Topology restrict_topology(const Topology& topology, const NodeSet& kept) {
    if (const auto* star = std::get_if<StarTopology>(&topology)) {
        if (kept.contains(star->center)) return *star;
        return CompleteTopology{};
    }
    if (const auto* list = std::get_if<EdgeListTopology>(&topology)) {
        EdgeListTopology out;
        for (const auto& edge : list->edges)
            if (kept.contains(edge.first) && kept.contains(edge.second)) out.edges.push_back(edge);
        return out;
    }
    return topology;
}

}  // namespace

Violations validate(const SimConfig& config) {
    Violations out;
    if (config.attempts < 1) out.push_back({"sim.attempts", "attempts must be >= 1"});
    if (config.trials < 1) out.push_back({"sim.trials", "trials must be >= 1"});
    return out;
}

SimResult simulate_contacts(const InformationSystem& system, const NetworkOverlay& overlay,
                            const DemandModel& demand, const SimConfig& config) {
    check_inputs(system, overlay, demand, config);

    SimResult result;
    result.alpha = demand.rate;
    result.n_effective = overlay.effective_size();
    result.n_system = system.size();
    result.attempts_per_trial = config.attempts;
    result.first_trial = config.first_trial;

    if (result.n_effective == 0) {
        result.per_trial.assign(config.trials, 0.0);
        aggregate(result);
        return result;
    }

    const ContactKernel kernel(system, overlay, demand);
    result.per_trial = run_trials(config, [&](std::uint64_t trial) {
        const rng::CounterStream stream(config.seed, trial);
        std::uint64_t successes = 0;
        for (std::uint64_t a = 0; a < config.attempts; ++a) {
            auto draws = stream.at(a);
            const std::size_t caller =
                kernel.effective_rank_to_system(draws.below(kernel.n_effective()));
            const std::size_t target = kernel.draw_target(draws, caller);
            if (kernel.reachable(caller, target)) ++successes;
        }
        return static_cast<double>(successes) / static_cast<double>(config.attempts);
    });
    aggregate(result);
    return result;
}

NetworkOverlay disconnected_overlay(const InformationSystem& system, const NetworkOverlay& overlay,
                                    double shrink_x, std::uint64_t seed) {
    require(std::isfinite(shrink_x) && shrink_x >= 1.0, "shrink factor must be >= 1");
    require(overlay.is_bound_to(system), "overlay is not bound to the simulated information system");
    const NodeSet& effective = overlay.effective();
    const auto retained = static_cast<std::size_t>(
        std::floor(static_cast<double>(effective.size()) / shrink_x));
    if (retained == effective.size()) return overlay;

    std::vector<NodeId> pool(effective.begin(), effective.end());
    const rng::CounterStream stream(seed, kDisconnectStream);
    for (std::size_t i = 0; i < retained; ++i) {
        auto draws = stream.at(i);
        const std::size_t j = i + draws.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(retained);
    NodeSet kept(std::move(pool));
    Topology topology = restrict_topology(overlay.topology(), kept);
    return bind_overlay(system, kept).with_topology(std::move(topology));
}

SimResult simulate_disconnect(const InformationSystem& system, const NetworkOverlay& overlay,
                              const DemandModel& demand, double shrink_x, const SimConfig& config) {
    return simulate_contacts(system, disconnected_overlay(system, overlay, shrink_x, config.seed),
                             demand, config);
}

TopologyComparison compare_topologies(const InformationSystem& system,
                                      const NetworkOverlay& first, const NetworkOverlay& second,
                                      const DemandModel& demand, const SimConfig& config) {
    require(first.is_bound_to(system) && second.is_bound_to(system),
            "both overlays must be bound to the simulated information system");
    require(first.effective() == second.effective(),
            "compared overlays must share the same effective node set");
    TopologyComparison out;
    out.first = simulate_contacts(system, first, demand, config);
    out.second = simulate_contacts(system, second, demand, config);
    out.max_gap = std::abs(out.first.throughput_hat - out.second.throughput_hat);
    for (std::size_t t = 0; t < out.first.per_trial.size(); ++t)
        out.max_gap =
            std::max(out.max_gap, std::abs(out.first.per_trial[t] - out.second.per_trial[t]));
    out.bit_identical = out.first == out.second;
    return out;
}

HetNetEstimate simulate_hetnet(const InformationSystem& system,
                               const NetworkOverlay& preferred_overlay, const DemandModel& demand,
                               const HetNetConfig& capacities, const SimConfig& config) {
    check_inputs(system, preferred_overlay, demand, config);
    throw_if_invalid(validate(capacities));
    const double observed = static_cast<double>(preferred_overlay.effective_size()) /
                            static_cast<double>(system.size());
    require(std::abs(observed - capacities.coverage) <= analytic::kRoundTripTolerance,
            "coverage " + std::to_string(capacities.coverage) +
                " does not match the preferred overlay's N_E/N_Omega = " + std::to_string(observed));

    const ContactKernel kernel(system, preferred_overlay, demand);
    const std::uint64_t key_seed = config.seed ^ kHetNetSalt;
    HetNetEstimate out;
    out.per_trial_preferred_share = run_trials(config, [&](std::uint64_t trial) {
        const rng::CounterStream stream(key_seed, trial);
        std::uint64_t preferred = 0;
        std::uint64_t carried = 0;
        for (std::uint64_t a = 0; a < config.attempts; ++a) {
            auto draws = stream.at(a);
            const std::size_t caller = draws.below(system.size());
            const std::size_t target = kernel.draw_target(draws, caller);
            if (target == kNoTarget) continue;
            ++carried;
            if (kernel.reachable(caller, target)) ++preferred;
        }
        return carried == 0 ? 0.0 : static_cast<double>(preferred) / static_cast<double>(carried);
    });

    const auto [share, se] = summarize(out.per_trial_preferred_share);
    out.preferred_share = share;
    out.default_share = 1.0 - share;
    out.share_standard_error = se;

    auto& cap = out.capacity;
    const double default_bound = capacities.default_capacity / out.default_share;
    cap.total = default_bound;
    if (share > 0.0) {
        const double preferred_bound = capacities.preferred_capacity / share;
        if (preferred_bound < default_bound) {
            cap.total = preferred_bound;
            cap.binding = analytic::Binding::Preferred;
        }
    }
    cap.preferred_load = share * cap.total;
    cap.default_load = out.default_share * cap.total;
    return out;
}

double exact_expectation(const InformationSystem& system, const NetworkOverlay& overlay,
                         const DemandModel& demand) {
    check_inputs(system, overlay, demand, SimConfig{});
    if (overlay.effective_size() == 0) return 0.0;
    const ContactKernel kernel(system, overlay, demand);
    const std::size_t n = system.size();

    // Without contact lists every caller has the same number of choices, so
    // successes are counted exactly and divided once.
    if (!demand.contact_sets) {
        std::uint64_t successes = 0;
        for (std::size_t i = 0; i < kernel.n_effective(); ++i) {
            const std::size_t caller = kernel.effective_rank_to_system(i);
            for (std::size_t target = 0; target < n; ++target) {
                if (kernel.excludes_self() && target == caller) continue;
                if (kernel.reachable(caller, target)) ++successes;
            }
        }
        const double choices = static_cast<double>(kernel.excludes_self() ? n - 1 : n);
        return demand.rate * (static_cast<double>(successes) / choices);
    }

    double total = 0.0;
    for (std::size_t i = 0; i < kernel.n_effective(); ++i) {
        const std::size_t caller = kernel.effective_rank_to_system(i);
        std::uint64_t successes = 0;
        std::uint64_t choices = 0;
        auto consider = [&](std::size_t target) {
            if (kernel.excludes_self() && target == caller) return;
            ++choices;
            if (kernel.reachable(caller, target)) ++successes;
        };
        if (kernel.has_contacts(caller)) {
            for (std::size_t target : kernel.contacts(caller)) consider(target);
        } else {
            for (std::size_t target = 0; target < n; ++target) consider(target);
        }
        if (choices != 0) total += static_cast<double>(successes) / static_cast<double>(choices);
    }
    return demand.rate * total;
}

SimResult merge(const SimResult& first, const SimResult& second) {
    require(first.alpha == second.alpha && first.n_effective == second.n_effective &&
                first.n_system == second.n_system &&
                first.attempts_per_trial == second.attempts_per_trial,
            "merged runs must simulate the same scenario");
    require(second.first_trial == first.first_trial + first.per_trial.size(),
            "merged runs must cover adjacent trial ranges");
    SimResult out = first;
    out.per_trial.insert(out.per_trial.end(), second.per_trial.begin(), second.per_trial.end());
    aggregate(out);
    return out;
}

std::map<NodeId, NodeSet> sample_contact_sets(const InformationSystem& system, std::size_t size,
                                              std::uint64_t seed) {
    const std::size_t n = system.size();
    require(size <= n, "contact set size exceeds the system size");
    std::map<NodeId, NodeSet> out;
    const rng::CounterStream stream(seed ^ kContactSetSalt, 0);
    std::vector<char> seen(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        // Floyd's sampling of `size` distinct ranks.
        auto draws = stream.at(i);
        std::vector<NodeId> ids;
        ids.reserve(size);
        for (std::size_t j = n - size; j < n; ++j) {
            std::size_t t = draws.below(j + 1);
            if (seen[t]) t = j;
            seen[t] = 1;
            ids.push_back(system.nodes()[t]);
        }
        for (NodeId id : ids) seen[*system.nodes().index_of(id)] = 0;
        out.emplace(system.nodes()[i], NodeSet(std::move(ids)));
    }
    return out;
}

}  // namespace netefficacy::montecarlo
