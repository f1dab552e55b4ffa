#include "netefficacy/valuemodels.hpp"

#include <cmath>
#include <string>

#include "netefficacy/errors.hpp"

namespace netefficacy::valuemodels {
namespace {

double directed_pairs(double n) { return n * (n - 1.0); }

// Solves a·v = b·v + c for the single unknown v.
std::optional<double> solve_linear(double a, double b, double c) {
    if (a == b) return std::nullopt;
    return c / (a - b);
}

}  // namespace

ValueComparison compare_value_models(std::uint64_t n) {
    if (n == 0) throw PreconditionError("network size must be >= 1");
    ValueComparison out;
    out.n = n;
    const auto size = static_cast<double>(n);
    out.link_value = directed_pairs(size);
    out.node_value = size;
    if (n >= 2) {
        out.link_share = 1.0 / (size - 1.0);
        out.density = information_density(n);
    }
    return out;
}

SplitOutcome split_contradiction(std::uint64_t n, std::uint64_t k) {
    if (n < 2) throw PreconditionError("split needs a network of at least 2 nodes");
    if (k < 1) throw PreconditionError("split factor must be >= 1");
    const auto size = static_cast<double>(n);
    const auto parts = static_cast<double>(k);
    SplitOutcome out;
    out.link_ratio = directed_pairs(parts * size) / directed_pairs(size);
    out.resource_ratio = parts * size / size;
    out.per_resource_gain = out.link_ratio / out.resource_ratio;
    return out;
}

double information_density(std::uint64_t n) {
    if (n < 2) throw PreconditionError("information density needs a network of at least 2 nodes");
    const auto size = static_cast<double>(n);
    // n payloads spread over n(n − 1) deliveries.
    return size / directed_pairs(size);
}

BridgeVerdict bridge_value_check(std::uint64_t n) {
    if (n < 3) throw PreconditionError("bridge construction needs at least 3 nodes");
    BridgeVerdict out;
    out.n = n;
    out.links_at_hub = static_cast<double>(n - 1);
    out.links_at_leaf = 1.0;
    // Equal service to X and Y, no other value source.
    const auto v = solve_linear(out.links_at_hub, out.links_at_leaf, 0.0);
    out.link_value = v.value_or(std::nan(""));
    // With zero-value links, X and Y differ only as nodes, and are worth the same.
    const double hub_total = out.hub_node_value + out.link_value * out.links_at_hub;
    const double leaf_total = out.leaf_node_value + out.link_value * out.links_at_leaf;
    out.pass = v.has_value() && out.link_value == 0.0 && hub_total == leaf_total;
    return out;
}

}  // namespace netefficacy::valuemodels
