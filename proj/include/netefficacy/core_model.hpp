#pragma once

// Shared domain types: the information system, network overlays bound to
// it, the demand model, heterogeneous-network configuration, and the event
// distribution used for expected-utility calculations.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "netefficacy/errors.hpp"

namespace netefficacy {

using NodeId = std::uint64_t;

/// Sorted set of node identifiers with random access by rank.
class NodeSet {
public:
    NodeSet() = default;
    NodeSet(std::initializer_list<NodeId> ids);
    explicit NodeSet(std::vector<NodeId> ids);

    /// The closed range [first, last]; empty when last < first.
    static NodeSet range(NodeId first, NodeId last);

    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    bool contains(NodeId id) const;
    /// Rank of `id` in the set, if present.
    std::optional<std::size_t> index_of(NodeId id) const;
    NodeId operator[](std::size_t i) const { return ids_[i]; }

    std::span<const NodeId> ids() const noexcept { return ids_; }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }

    bool is_subset_of(const NodeSet& other) const;
    NodeSet intersect(const NodeSet& other) const;
    NodeSet unite(const NodeSet& other) const;

    bool operator==(const NodeSet&) const = default;

private:
    std::vector<NodeId> ids_;
};

/// The universe of nodes whose communication demand exists regardless of
/// any network.
class InformationSystem {
public:
    InformationSystem(std::string id, NodeSet nodes);

    /// Nodes 1..size.
    static InformationSystem of_size(std::string id, std::size_t size);

    const std::string& id() const noexcept { return id_; }
    const NodeSet& nodes() const noexcept { return nodes_; }
    std::size_t size() const noexcept { return nodes_.size(); }

private:
    std::string id_;
    NodeSet nodes_;
};

struct CompleteTopology {
    bool operator==(const CompleteTopology&) const = default;
};
struct StarTopology {
    NodeId center = 0;
    bool operator==(const StarTopology&) const = default;
};
struct EdgeListTopology {
    std::vector<std::pair<NodeId, NodeId>> edges;
    bool operator==(const EdgeListTopology&) const = default;
};
using Topology = std::variant<CompleteTopology, StarTopology, EdgeListTopology>;

std::string topology_name(const Topology& topology);

/// A network's member set B, and once bound to a system, the effective set
/// E = B ∩ Ω over which the topology is defined.
class NetworkOverlay {
public:
    /// An overlay that has not been bound to any information system.
    static NetworkOverlay unbound(NodeSet members, Topology topology = CompleteTopology{});

    const NodeSet& members() const noexcept { return members_; }
    const NodeSet& effective() const noexcept { return effective_; }
    std::size_t effective_size() const noexcept { return effective_.size(); }
    const Topology& topology() const noexcept { return topology_; }

    bool is_bound() const noexcept { return bound_to_.has_value(); }
    bool is_bound_to(const InformationSystem& system) const;
    const std::optional<std::string>& bound_system_id() const noexcept { return bound_to_; }

    NetworkOverlay with_topology(Topology topology) const;

    bool operator==(const NetworkOverlay&) const = default;

private:
    friend NetworkOverlay bind_overlay(const InformationSystem&, const NodeSet&);
    friend NetworkOverlay bind_overlay(const InformationSystem&, const NetworkOverlay&);

    NodeSet members_;
    NodeSet effective_;
    Topology topology_ = CompleteTopology{};
    std::optional<std::string> bound_to_;
};

/// Computes E = members ∩ Ω with a complete topology.
NetworkOverlay bind_overlay(const InformationSystem& system, const NodeSet& members);
/// Rebinds an overlay's member set, keeping its topology.
NetworkOverlay bind_overlay(const InformationSystem& system, const NetworkOverlay& overlay);

/// Whether every effective node can reach every other through the overlay.
/// Complete and star overlays always can; an edge list may leave islands.
bool is_connected(const NetworkOverlay& overlay);

enum class TargetRule {
    UniformOverSystem,             ///< includes the caller itself
    UniformOverSystemExcludingSelf,
};

std::string to_string(TargetRule rule);
std::optional<TargetRule> parse_target_rule(std::string_view text);

struct DemandModel {
    double rate = 1.0;  ///< attempts per node per unit time
    TargetRule target_rule = TargetRule::UniformOverSystem;
    /// Per-caller contact list A. Callers without an entry may target all of Ω.
    std::optional<std::map<NodeId, NodeSet>> contact_sets;
};

struct HetNetConfig {
    double default_capacity = 1.0;    ///< C_D
    double preferred_capacity = 0.0;  ///< C_K; +inf means unlimited
    double coverage = 0.0;            ///< n in [0, 1)
};

struct EfficacyReport {
    double analytic = 0.0;
    std::optional<double> simulated;
    std::optional<double> standard_error;
    std::size_t n_effective = 0;

    /// Per-node efficacy ζ = ψ / N_E; undefined for an empty network.
    std::optional<double> per_node() const;
};

struct Event {
    std::string id;
    double probability = 0.0;
    double weight = 0.0;
};

struct EventDistribution {
    std::vector<Event> events;
};

inline constexpr double kProbabilitySumTolerance = 1e-9;

Violations validate(const InformationSystem& system);
Violations validate(const NetworkOverlay& overlay, const InformationSystem& system);
Violations validate(const DemandModel& demand, const InformationSystem& system);
Violations validate(const HetNetConfig& config);
Violations validate(const EfficacyReport& report);
Violations validate(const EventDistribution& distribution);

/// Replaces the root segment of every violation path with `prefix`, so
/// `overlay.effective` under prefix `overlays[1]` becomes `overlays[1].effective`.
Violations prefixed(std::string_view prefix, Violations violations);

/// Throws ValidationError when `violations` is non-empty.
void throw_if_invalid(Violations violations);

}  // namespace netefficacy
