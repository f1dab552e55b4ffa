#pragma once

// Link-counting and node-counting valuations of an N-node network, and the
// arithmetic showing where link counting breaks down.
//
// An N-node switched network is viewed as N broadcast networks with N − 1
// receivers each, giving N(N − 1) directed links that share the same
// receivers.

#include <cstdint>
#include <optional>

namespace netefficacy::valuemodels {

struct ValueComparison {
    std::uint64_t n = 0;
    double link_value = 0.0;  ///< N(N − 1): directed pairs
    double node_value = 0.0;  ///< N
    std::optional<double> link_share;  ///< 1/(N − 1), absent for N = 1
    std::optional<double> density;     ///< unique payloads per delivery, absent for N = 1
};

ValueComparison compare_value_models(std::uint64_t n);

struct SplitOutcome {
    double link_ratio = 1.0;      ///< links after splitting every node k ways / links before
    double resource_ratio = 1.0;  ///< node value ratio, always k
    double per_resource_gain = 1.0;
};

/// Splits each of n nodes into k parts and reconnects them.
SplitOutcome split_contradiction(std::uint64_t n, std::uint64_t k);

/// 1/(N − 1); approaches 1/N as the network grows.
double information_density(std::uint64_t n);

struct BridgeVerdict {
    std::uint64_t n = 0;
    double links_at_hub = 0.0;   ///< X's direct links, n − 1
    double links_at_leaf = 0.0;  ///< Y's single link to X
    double link_value = 0.0;     ///< the solved per-link value
    double hub_node_value = 1.0;
    double leaf_node_value = 1.0;
    bool pass = false;
};

/// Hub X links to all n − 1 other nodes and leaf Y links only to X. With X
/// bridging, both receive the same service, so the per-link value V must
/// satisfy V·(n − 1) = V·1. Solves for V and checks it against the
/// node-based valuation, where X and Y are worth one unit each.
BridgeVerdict bridge_value_check(std::uint64_t n);

}  // namespace netefficacy::valuemodels
