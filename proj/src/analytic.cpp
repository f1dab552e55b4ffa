#include "netefficacy/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace netefficacy::analytic {
namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw PreconditionError(message);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

void check_efficacy_args(double alpha, std::size_t n_effective, std::size_t n_system,
                         const std::string& where) {
    require(finite_positive(alpha), where + "alpha must be a finite positive rate");
    require(n_system >= 1, where + "information system size must be >= 1");
    if (n_effective > n_system) {
        std::ostringstream os;
        os << where << "effective size " << n_effective << " exceeds system size " << n_system
           << " (E must be a subset of the system)";
        throw PreconditionError(os.str());
    }
}

double efficacy_value(double alpha, std::size_t n_effective, std::size_t n_system) {
    const auto ne = static_cast<double>(n_effective);
    return alpha * (ne * ne / static_cast<double>(n_system));
}

}  // namespace

double expected_utility(double psi_value, const EventDistribution& distribution) {
    throw_if_invalid(validate(distribution));
    double weighted = 0.0;
    for (const auto& e : distribution.events) weighted += e.weight * e.probability;
    return psi_value * weighted;
}

EfficacyReport efficacy(double alpha, std::size_t n_effective, std::size_t n_system) {
    check_efficacy_args(alpha, n_effective, n_system, "");
    EfficacyReport report;
    report.analytic = efficacy_value(alpha, n_effective, n_system);
    report.n_effective = n_effective;
    return report;
}

DisconnectReport disconnect_experiment(double alpha, std::size_t n_system, double shrink_x) {
    require(std::isfinite(shrink_x) && shrink_x >= 1.0, "shrink factor must be >= 1");
    require(n_system >= 1, "information system size must be >= 1");
    DisconnectReport out;
    out.n_effective = static_cast<std::size_t>(std::floor(static_cast<double>(n_system) / shrink_x));
    out.shrink_factor = shrink_x;
    out.report = efficacy(alpha, out.n_effective, n_system);
    out.shrink_form = alpha * static_cast<double>(out.n_effective) / shrink_x;
    return out;
}

std::string to_string(Binding binding) {
    return binding == Binding::Default ? "default" : "preferred";
}

HetNetResult hetnet_capacity(const HetNetConfig& config) {
    throw_if_invalid(validate(config));
    HetNetResult out;
    const double n2 = config.coverage * config.coverage;
    if (n2 == 0.0) {
        out.total = config.default_capacity;
        out.default_load = config.default_capacity;
        return out;
    }
    const double default_bound = config.default_capacity / (1.0 - n2);
    const double preferred_bound = std::isinf(config.preferred_capacity)
                                       ? std::numeric_limits<double>::infinity()
                                       : config.preferred_capacity / n2;
    if (preferred_bound < default_bound) {
        out.binding = Binding::Preferred;
        out.total = preferred_bound;
    } else {
        out.total = default_bound;
    }
    out.preferred_load = n2 * out.total;
    out.default_load = (1.0 - n2) * out.total;
    return out;
}

double dependent_capacity(double c_small, double traffic_fraction) {
    require(std::isfinite(c_small) && c_small >= 0.0, "capacity must be finite and >= 0");
    require(traffic_fraction >= 0.0 && traffic_fraction < 1.0,
            "offloaded traffic fraction must be in [0, 1)");
    return c_small / (1.0 - traffic_fraction);
}

double plan_coverage(double c_default, double target_total) {
    require(finite_positive(c_default), "default capacity must be finite and > 0");
    require(std::isfinite(target_total), "target capacity must be finite");
    require(target_total >= c_default,
            "target capacity is below the default capacity; coverage 0 already achieves it");
    return std::sqrt(1.0 - c_default / target_total);
}

std::vector<TrajectoryPoint> growth_trajectory(double alpha, std::span<const SizePair> schedule) {
    require(!schedule.empty(), "growth schedule is empty");
    std::vector<TrajectoryPoint> points;
    points.reserve(schedule.size());
    for (std::size_t step = 0; step < schedule.size(); ++step) {
        const auto [ne, nomega] = schedule[step];
        check_efficacy_args(alpha, ne, nomega, "step " + std::to_string(step) + ": ");
        points.push_back({step, ne, nomega, efficacy_value(alpha, ne, nomega)});
    }
    return points;
}

std::vector<SizePair> saturating_schedule(std::size_t n_system, std::size_t from, std::size_t to,
                                          std::size_t step) {
    require(n_system >= 1, "information system size must be >= 1");
    require(step >= 1, "schedule step must be >= 1");
    require(from <= to, "schedule start exceeds its end");
    std::vector<SizePair> out;
    for (std::size_t ne = from; ne <= to; ne += step) {
        out.push_back({ne, std::max(n_system, ne)});
        if (to - ne < step) break;
    }
    return out;
}

double multipurpose_total(std::span<const SystemLoad> systems) {
    double total = 0.0;
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const auto& s = systems[i];
        check_efficacy_args(s.alpha, s.n_effective, s.n_system,
                            "system " + std::to_string(i) + ": ");
        total += efficacy_value(s.alpha, s.n_effective, s.n_system);
    }
    return total;
}

}  // namespace netefficacy::analytic
