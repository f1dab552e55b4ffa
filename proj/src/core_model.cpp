#include "netefficacy/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>

namespace netefficacy {

ValidationError::ValidationError(Violations violations)
    : std::runtime_error([&] {
          std::ostringstream os;
          os << "validation failed";
          for (const auto& v : violations) os << "; " << v.path << ": " << v.message;
          return os.str();
      }()),
      violations_(std::move(violations)) {}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(message), line_(line), column_(column) {}

NodeSet::NodeSet(std::initializer_list<NodeId> ids) : NodeSet(std::vector<NodeId>(ids)) {}

NodeSet::NodeSet(std::vector<NodeId> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

NodeSet NodeSet::range(NodeId first, NodeId last) {
    NodeSet out;
    if (last < first) return out;
    out.ids_.reserve(last - first + 1);
    for (NodeId id = first;; ++id) {
        out.ids_.push_back(id);
        if (id == last) break;
    }
    return out;
}

bool NodeSet::contains(NodeId id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::optional<std::size_t> NodeSet::index_of(NodeId id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
    return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

NodeSet NodeSet::intersect(const NodeSet& other) const {
    NodeSet out;
    std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                          std::back_inserter(out.ids_));
    return out;
}

NodeSet NodeSet::unite(const NodeSet& other) const {
    NodeSet out;
    std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                   std::back_inserter(out.ids_));
    return out;
}

InformationSystem::InformationSystem(std::string id, NodeSet nodes)
    : id_(std::move(id)), nodes_(std::move(nodes)) {}

InformationSystem InformationSystem::of_size(std::string id, std::size_t size) {
    return InformationSystem(std::move(id), size == 0 ? NodeSet{} : NodeSet::range(1, size));
}

std::string topology_name(const Topology& topology) {
    struct Namer {
        std::string operator()(const CompleteTopology&) const { return "complete"; }
        std::string operator()(const StarTopology&) const { return "star"; }
        std::string operator()(const EdgeListTopology&) const { return "edge-list"; }
    };
    return std::visit(Namer{}, topology);
}

NetworkOverlay NetworkOverlay::unbound(NodeSet members, Topology topology) {
    NetworkOverlay overlay;
    overlay.members_ = std::move(members);
    overlay.topology_ = std::move(topology);
    return overlay;
}

bool NetworkOverlay::is_bound_to(const InformationSystem& system) const {
    return bound_to_ && *bound_to_ == system.id() && effective_.is_subset_of(system.nodes());
}

NetworkOverlay NetworkOverlay::with_topology(Topology topology) const {
    NetworkOverlay copy = *this;
    copy.topology_ = std::move(topology);
    return copy;
}

NetworkOverlay bind_overlay(const InformationSystem& system, const NodeSet& members) {
    NetworkOverlay overlay;
    overlay.members_ = members;
    overlay.effective_ = members.intersect(system.nodes());
    overlay.bound_to_ = system.id();
    return overlay;
}

NetworkOverlay bind_overlay(const InformationSystem& system, const NetworkOverlay& source) {
    NetworkOverlay overlay = bind_overlay(system, source.members());
    overlay.topology_ = source.topology();
    return overlay;
}

bool is_connected(const NetworkOverlay& overlay) {
    const auto* list = std::get_if<EdgeListTopology>(&overlay.topology());
    const NodeSet& effective = overlay.effective();
    if (list == nullptr || effective.size() <= 1) return true;

    std::vector<std::vector<std::size_t>> adjacent(effective.size());
    for (const auto& [a, b] : list->edges) {
        const auto ia = effective.index_of(a);
        const auto ib = effective.index_of(b);
        if (!ia || !ib) continue;
        adjacent[*ia].push_back(*ib);
        adjacent[*ib].push_back(*ia);
    }
    std::vector<char> seen(effective.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t at = stack.back();
        stack.pop_back();
        for (std::size_t next : adjacent[at]) {
            if (seen[next]) continue;
            seen[next] = 1;
            ++reached;
            stack.push_back(next);
        }
    }
    return reached == effective.size();
}

std::string to_string(TargetRule rule) {
    switch (rule) {
        case TargetRule::UniformOverSystem: return "uniform";
        case TargetRule::UniformOverSystemExcludingSelf: return "uniform-excluding-self";
    }
    return "unknown";
}

std::optional<TargetRule> parse_target_rule(std::string_view text) {
    if (text == "uniform") return TargetRule::UniformOverSystem;
    if (text == "uniform-excluding-self") return TargetRule::UniformOverSystemExcludingSelf;
    return std::nullopt;
}

std::optional<double> EfficacyReport::per_node() const {
    if (n_effective == 0) return std::nullopt;
    return analytic / static_cast<double>(n_effective);
}

Violations validate(const InformationSystem& system) {
    Violations out;
    if (system.size() < 1) out.push_back({"system.size", "information system needs at least one node"});
    return out;
}

Violations validate(const NetworkOverlay& overlay, const InformationSystem& system) {
    Violations out;
    if (!overlay.is_bound()) {
        out.push_back({"overlay", "overlay is not bound to an information system"});
        return out;
    }
    if (*overlay.bound_system_id() != system.id())
        out.push_back({"overlay", "overlay is bound to system '" + *overlay.bound_system_id() + "'"});
    const NodeSet& effective = overlay.effective();
    if (!effective.is_subset_of(system.nodes()))
        out.push_back({"overlay.effective", "effective set is not a subset of the system"});
    if (effective.size() > system.size())
        out.push_back({"overlay.effective_size", "effective size exceeds system size"});

    if (const auto* star = std::get_if<StarTopology>(&overlay.topology())) {
        if (!effective.contains(star->center))
            out.push_back({"overlay.topology.center", "star center is not an effective node"});
    } else if (const auto* list = std::get_if<EdgeListTopology>(&overlay.topology())) {
        for (std::size_t i = 0; i < list->edges.size(); ++i) {
            const auto& [a, b] = list->edges[i];
            if (!effective.contains(a) || !effective.contains(b))
                out.push_back({"overlay.topology.edges[" + std::to_string(i) + "]",
                               "edge endpoint is not an effective node"});
        }
    }
    return out;
}

Violations validate(const DemandModel& demand, const InformationSystem& system) {
    Violations out;
    if (!(demand.rate > 0.0) || !std::isfinite(demand.rate))
        out.push_back({"demand.rate", "rate must be a finite positive number"});
    if (demand.contact_sets) {
        for (const auto& [caller, contacts] : *demand.contact_sets) {
            const std::string path = "demand.contact_sets[" + std::to_string(caller) + "]";
            if (!system.nodes().contains(caller))
                out.push_back({path, "caller is not a node of the system"});
            if (!contacts.is_subset_of(system.nodes()))
                out.push_back({path, "contact set is not a subset of the system"});
        }
    }
    return out;
}

Violations validate(const HetNetConfig& config) {
    Violations out;
    if (!(config.default_capacity > 0.0) || !std::isfinite(config.default_capacity))
        out.push_back({"hetnet.default_capacity", "default capacity must be finite and > 0"});
    if (!(config.preferred_capacity >= 0.0))
        out.push_back({"hetnet.preferred_capacity", "preferred capacity must be >= 0"});
    if (!(config.coverage >= 0.0 && config.coverage < 1.0))
        out.push_back({"hetnet.coverage", "coverage out of range [0, 1)"});
    return out;
}

Violations validate(const EfficacyReport& report) {
    Violations out;
    if (!(report.analytic >= 0.0)) out.push_back({"report.analytic", "efficacy must be >= 0"});
    if (report.standard_error && !(*report.standard_error >= 0.0))
        out.push_back({"report.standard_error", "standard error must be >= 0"});
    return out;
}

Violations validate(const EventDistribution& distribution) {
    Violations out;
    double sum = 0.0;
    for (std::size_t i = 0; i < distribution.events.size(); ++i) {
        const auto& e = distribution.events[i];
        const std::string path = "events[" + std::to_string(i) + "]";
        if (!(e.probability >= 0.0) || !std::isfinite(e.probability))
            out.push_back({path + ".probability", "probability must be finite and >= 0"});
        if (!std::isfinite(e.weight)) out.push_back({path + ".weight", "weight must be finite"});
        sum += e.probability;
    }
    if (!(std::abs(sum - 1.0) <= kProbabilitySumTolerance)) {
        std::ostringstream os;
        os << "probabilities sum to " << sum << ", expected 1";
        out.push_back({"events", os.str()});
    }
    return out;
}

Violations prefixed(std::string_view prefix, Violations violations) {
    for (auto& v : violations) {
        auto dot = v.path.find_first_of(".[");
        std::string rest = dot == std::string::npos ? "" : v.path.substr(dot);
        v.path = std::string(prefix) + rest;
    }
    return violations;
}

void throw_if_invalid(Violations violations) {
    if (!violations.empty()) throw ValidationError(std::move(violations));
}

}  // namespace netefficacy
