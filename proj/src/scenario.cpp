#include "netefficacy/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace netefficacy {
namespace {

using nlohmann::json;

std::string join_path(const std::string& parent, std::string_view key) {
    return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

std::string index_path(const std::string& parent, std::size_t i) {
    return parent + "[" + std::to_string(i) + "]";
}

// A JSON object whose keys are consumed one by one; leftovers are reported
// as unknown.
class ObjectReader {
public:
    ObjectReader(const json& value, std::string path, Violations& out)
        : value_(value), path_(std::move(path)), out_(out) {
        if (!value_.is_object()) {
            out_.push_back({path_.empty() ? "$" : path_, "expected an object"});
            ok_ = false;
        }
    }

    bool ok() const { return ok_; }
    std::string path(std::string_view key) const { return join_path(path_, key); }

    const json* field(std::string_view key) {
        if (!ok_) return nullptr;
        known_.emplace(key);
        auto it = value_.find(std::string(key));
        return it == value_.end() ? nullptr : &*it;
    }

    const json* required(std::string_view key) {
        const json* f = field(key);
        if (ok_ && f == nullptr) out_.push_back({path(key), "missing required key"});
        return f;
    }

    void finish() {
        if (!ok_) return;
        for (const auto& [key, unused] : value_.items())
            if (!known_.contains(key)) out_.push_back({path(key), "unknown key"});
    }

private:
    const json& value_;
    std::string path_;
    Violations& out_;
    std::set<std::string, std::less<>> known_;
    bool ok_ = true;
};

std::optional<double> read_number(const json* value, const std::string& path, Violations& out) {
    if (value == nullptr) return std::nullopt;
    if (!value->is_number()) {
        out.push_back({path, "expected a number"});
        return std::nullopt;
    }
    return value->get<double>();
}

std::optional<std::uint64_t> read_count(const json* value, const std::string& path,
                                        Violations& out) {
    if (value == nullptr) return std::nullopt;
    if (!value->is_number_unsigned()) {
        out.push_back({path, "expected a non-negative integer"});
        return std::nullopt;
    }
    return value->get<std::uint64_t>();
}

std::optional<std::string> read_string(const json* value, const std::string& path,
                                       Violations& out) {
    if (value == nullptr) return std::nullopt;
    if (!value->is_string()) {
        out.push_back({path, "expected a string"});
        return std::nullopt;
    }
    return value->get<std::string>();
}

// Either [id, ...] or {"range": [first, last]}.
std::optional<NodeSet> read_node_set(const json* value, const std::string& path, Violations& out) {
    if (value == nullptr) return std::nullopt;
    if (value->is_array()) {
        std::vector<NodeId> ids;
        const std::size_t before = out.size();
        std::set<NodeId> seen;
        for (std::size_t i = 0; i < value->size(); ++i) {
            auto id = read_count(&(*value)[i], index_path(path, i), out);
            if (!id) continue;
            if (!seen.insert(*id).second)
                out.push_back({index_path(path, i), "duplicate node id " + std::to_string(*id)});
            ids.push_back(*id);
        }
        if (out.size() != before) return std::nullopt;
        return NodeSet(std::move(ids));
    }
    ObjectReader obj(*value, path, out);
    if (!obj.ok()) return std::nullopt;
    const json* range = obj.required("range");
    obj.finish();
    if (range == nullptr) return std::nullopt;
    if (!range->is_array() || range->size() != 2) {
        out.push_back({obj.path("range"), "expected [first, last]"});
        return std::nullopt;
    }
    auto first = read_count(&(*range)[0], index_path(obj.path("range"), 0), out);
    auto last = read_count(&(*range)[1], index_path(obj.path("range"), 1), out);
    if (!first || !last) return std::nullopt;
    if (*last < *first) {
        out.push_back({obj.path("range"), "range end precedes its start"});
        return std::nullopt;
    }
    return NodeSet::range(*first, *last);
}

std::optional<InformationSystem> read_system(const json* value, const std::string& name,
                                             Violations& out) {
    if (value == nullptr) return std::nullopt;
    ObjectReader obj(*value, "system", out);
    const json* size = obj.field("size");
    const json* nodes = obj.field("nodes");
    obj.finish();
    if (!obj.ok()) return std::nullopt;
    if ((size == nullptr) == (nodes == nullptr)) {
        out.push_back({"system", "give exactly one of 'size' or 'nodes'"});
        return std::nullopt;
    }
    if (size != nullptr) {
        auto n = read_count(size, "system.size", out);
        if (!n) return std::nullopt;
        return InformationSystem::of_size(name, *n);
    }
    auto set = read_node_set(nodes, "system.nodes", out);
    if (!set) return std::nullopt;
    return InformationSystem(name, std::move(*set));
}

std::optional<Topology> read_topology(const json* value, const std::string& path, Violations& out) {
    if (value == nullptr) return CompleteTopology{};
    if (value->is_string()) {
        if (*value == "complete") return CompleteTopology{};
        out.push_back({path, "unknown topology '" + value->get<std::string>() + "'"});
        return std::nullopt;
    }
    ObjectReader obj(*value, path, out);
    auto kind = read_string(obj.required("kind"), obj.path("kind"), out);
    const json* center = obj.field("center");
    const json* edges = obj.field("edges");
    obj.finish();
    if (!kind) return std::nullopt;
    if (*kind == "complete") return CompleteTopology{};
    if (*kind == "star") {
        auto c = read_count(center, obj.path("center"), out);
        if (center == nullptr) out.push_back({obj.path("center"), "star topology needs a center"});
        if (!c) return std::nullopt;
        return StarTopology{*c};
    }
    if (*kind == "edge-list") {
        if (edges == nullptr || !edges->is_array()) {
            out.push_back({obj.path("edges"), "edge-list topology needs an 'edges' array"});
            return std::nullopt;
        }
        EdgeListTopology list;
        for (std::size_t i = 0; i < edges->size(); ++i) {
            const json& e = (*edges)[i];
            const std::string p = index_path(obj.path("edges"), i);
            if (!e.is_array() || e.size() != 2) {
                out.push_back({p, "expected [a, b]"});
                continue;
            }
            auto a = read_count(&e[0], p + "[0]", out);
            auto b = read_count(&e[1], p + "[1]", out);
            if (a && b) list.edges.emplace_back(*a, *b);
        }
        return list;
    }
    out.push_back({obj.path("kind"), "unknown topology kind '" + *kind + "'"});
    return std::nullopt;
}

std::vector<NamedOverlay> read_overlays(const json* value, const InformationSystem* system,
                                        Violations& out) {
    std::vector<NamedOverlay> overlays;
    if (value == nullptr) return overlays;
    if (!value->is_array()) {
        out.push_back({"overlays", "expected an array"});
        return overlays;
    }
    for (std::size_t i = 0; i < value->size(); ++i) {
        const std::string path = index_path("overlays", i);
        ObjectReader obj((*value)[i], path, out);
        auto name = read_string(obj.required("name"), obj.path("name"), out);
        auto members = read_node_set(obj.required("members"), obj.path("members"), out);
        auto topology = read_topology(obj.field("topology"), obj.path("topology"), out);
        obj.finish();
        if (!name || !members || !topology || system == nullptr) continue;
        NetworkOverlay bound = bind_overlay(*system, *members).with_topology(std::move(*topology));
        overlays.push_back({*name, std::move(bound)});
    }
    return overlays;
}

DemandSpec read_demand(const json* value, Violations& out) {
    DemandSpec demand;
    if (value == nullptr) return demand;
    ObjectReader obj(*value, "demand", out);
    if (auto rate = read_number(obj.field("rate"), obj.path("rate"), out)) demand.rate = *rate;
    if (auto rule = read_string(obj.field("target_rule"), obj.path("target_rule"), out)) {
        if (auto parsed = parse_target_rule(*rule))
            demand.target_rule = *parsed;
        else
            out.push_back({obj.path("target_rule"),
                           "expected 'uniform' or 'uniform-excluding-self'"});
    }
    if (const json* contacts = obj.field("contacts")) {
        ObjectReader c(*contacts, obj.path("contacts"), out);
        const json* sample = c.field("sample_size");
        const json* lists = c.field("lists");
        c.finish();
        if (c.ok()) {
            ContactSpec spec;
            if ((sample == nullptr) == (lists == nullptr))
                out.push_back({c.path("sample_size"), "give exactly one of 'sample_size' or 'lists'"});
            if (auto size = read_count(sample, c.path("sample_size"), out)) spec.sample_size = *size;
            if (lists != nullptr) {
                if (!lists->is_object()) {
                    out.push_back({c.path("lists"), "expected an object keyed by node id"});
                } else {
                    for (const auto& [key, set] : lists->items()) {
                        const std::string p = c.path("lists") + "." + key;
                        NodeId caller = 0;
                        std::istringstream is(key);
                        if (!(is >> caller) || !is.eof()) {
                            out.push_back({p, "list key is not a node id"});
                            continue;
                        }
                        if (auto nodes = read_node_set(&set, p, out)) spec.lists[caller] = *nodes;
                    }
                }
            }
            demand.contacts = std::move(spec);
        }
    }
    obj.finish();
    return demand;
}

std::optional<HetNetSpec> read_hetnet(const json* value, Violations& out) {
    if (value == nullptr) return std::nullopt;
    ObjectReader obj(*value, "hetnet", out);
    HetNetSpec spec;
    spec.config.preferred_capacity = std::numeric_limits<double>::infinity();
    bool coverage_given = false;
    if (auto v = read_number(obj.required("default_capacity"), obj.path("default_capacity"), out))
        spec.config.default_capacity = *v;
    if (const json* pc = obj.field("preferred_capacity"); pc && !(pc->is_string() && *pc == "unlimited")) {
        if (auto v = read_number(pc, obj.path("preferred_capacity"), out))
            spec.config.preferred_capacity = *v;
    }
    if (auto v = read_number(obj.field("coverage"), obj.path("coverage"), out)) {
        spec.config.coverage = *v;
        coverage_given = true;
    }
    spec.overlay = read_string(obj.field("overlay"), obj.path("overlay"), out);
    spec.target = read_number(obj.field("target"), obj.path("target"), out);
    obj.finish();
    if (obj.ok() && !coverage_given && !spec.overlay)
        out.push_back({obj.path("coverage"), "give 'coverage' or a preferred 'overlay' to derive it"});
    // NaN marks a coverage to be derived from the overlay once overlays are known.
    if (!coverage_given) spec.config.coverage = std::nan("");
    return spec;
}

std::optional<SimSpec> read_sim(const json* value, Violations& out) {
    if (value == nullptr) return std::nullopt;
    ObjectReader obj(*value, "sim", out);
    SimSpec spec;
    if (auto v = read_count(obj.field("attempts"), obj.path("attempts"), out)) spec.attempts = *v;
    if (auto v = read_count(obj.field("trials"), obj.path("trials"), out)) spec.trials = *v;
    obj.finish();
    return spec;
}

std::optional<std::vector<analytic::SizePair>> read_trajectory(const json* value, Violations& out) {
    if (value == nullptr) return std::nullopt;
    ObjectReader obj(*value, "trajectory", out);
    const json* schedule = obj.field("schedule");
    const json* n_system = obj.field("n_system");
    const json* from = obj.field("from");
    const json* to = obj.field("to");
    const json* step = obj.field("step");
    obj.finish();
    if (!obj.ok()) return std::nullopt;
    if (schedule != nullptr) {
        if (n_system || from || to || step) {
            out.push_back({"trajectory", "give either 'schedule' or a saturating sweep, not both"});
            return std::nullopt;
        }
        if (!schedule->is_array() || schedule->empty()) {
            out.push_back({"trajectory.schedule", "expected a non-empty array of [n_e, n_omega]"});
            return std::nullopt;
        }
        std::vector<analytic::SizePair> pairs;
        for (std::size_t i = 0; i < schedule->size(); ++i) {
            const json& p = (*schedule)[i];
            const std::string path = index_path("trajectory.schedule", i);
            if (!p.is_array() || p.size() != 2) {
                out.push_back({path, "expected [n_e, n_omega]"});
                continue;
            }
            auto ne = read_count(&p[0], path + "[0]", out);
            auto nomega = read_count(&p[1], path + "[1]", out);
            if (ne && nomega) pairs.push_back({*ne, *nomega});
        }
        return pairs;
    }
    auto ns = read_count(n_system, "trajectory.n_system", out);
    auto f = read_count(from, "trajectory.from", out);
    auto t = read_count(to, "trajectory.to", out);
    auto s = step == nullptr ? std::optional<std::uint64_t>(1) : read_count(step, "trajectory.step", out);
    if (!ns || !f || !t) {
        out.push_back({"trajectory", "give 'schedule' or all of 'n_system', 'from', 'to'"});
        return std::nullopt;
    }
    if (!s) return std::nullopt;
    try {
        return analytic::saturating_schedule(*ns, *f, *t, *s);
    } catch (const PreconditionError& e) {
        out.push_back({"trajectory", e.what()});
        return std::nullopt;
    }
}

std::optional<std::vector<analytic::SystemLoad>> read_multipurpose(const json* value,
                                                                   Violations& out) {
    if (value == nullptr) return std::nullopt;
    if (!value->is_array()) {
        out.push_back({"multipurpose", "expected an array"});
        return std::nullopt;
    }
    std::vector<analytic::SystemLoad> loads;
    for (std::size_t i = 0; i < value->size(); ++i) {
        ObjectReader obj((*value)[i], index_path("multipurpose", i), out);
        analytic::SystemLoad load;
        if (auto a = read_number(obj.field("alpha"), obj.path("alpha"), out)) load.alpha = *a;
        auto ne = read_count(obj.required("n_effective"), obj.path("n_effective"), out);
        auto nomega = read_count(obj.required("n_system"), obj.path("n_system"), out);
        obj.finish();
        if (!ne || !nomega) continue;
        load.n_effective = *ne;
        load.n_system = *nomega;
        loads.push_back(load);
    }
    return loads;
}

std::optional<EventDistribution> read_events(const json* value, Violations& out) {
    if (value == nullptr) return std::nullopt;
    if (!value->is_array()) {
        out.push_back({"events", "expected an array"});
        return std::nullopt;
    }
    EventDistribution dist;
    for (std::size_t i = 0; i < value->size(); ++i) {
        ObjectReader obj((*value)[i], index_path("events", i), out);
        Event e;
        e.id = read_string(obj.field("id"), obj.path("id"), out).value_or("e" + std::to_string(i));
        e.probability = read_number(obj.required("probability"), obj.path("probability"), out).value_or(0.0);
        e.weight = read_number(obj.required("weight"), obj.path("weight"), out).value_or(0.0);
        obj.finish();
        dist.events.push_back(std::move(e));
    }
    return dist;
}

std::optional<VerifyGridSpec> read_verify_grid(const json* value, Violations& out) {
    if (value == nullptr) return std::nullopt;
    ObjectReader obj(*value, "verify_grid", out);
    VerifyGridSpec spec;
    if (auto v = read_count(obj.field("max_n_system"), obj.path("max_n_system"), out))
        spec.max_n_system = *v;
    if (auto v = read_number(obj.field("alpha"), obj.path("alpha"), out)) spec.alpha = *v;
    obj.finish();
    return spec;
}

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

const NamedOverlay* Scenario::find_overlay(std::string_view name) const {
    for (const auto& o : overlays)
        if (o.name == name) return &o;
    return nullptr;
}

Scenario parse_scenario_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(text, e.byte);
        std::ostringstream os;
        os << "scenario parse error at line " << line << ", column " << column << ": "
           << (text.find_first_not_of(" \t\r\n") == std::string_view::npos ? "empty document"
                                                                            : e.what());
        throw ParseError(os.str(), line, column);
    }

    Violations out;
    Scenario scenario;
    ObjectReader root(doc, "", out);
    if (!root.ok()) throw ValidationError(std::move(out));

    if (auto version = read_count(root.required("schema_version"), "schema_version", out)) {
        if (*version != static_cast<std::uint64_t>(kScenarioSchemaVersion))
            out.push_back({"schema_version", "unsupported schema version " + std::to_string(*version)});
    }
    scenario.name = read_string(root.required("name"), "name", out).value_or("");
    auto system = read_system(root.required("system"), scenario.name, out);
    if (system) scenario.system = std::move(*system);
    scenario.overlays = read_overlays(root.field("overlays"), system ? &scenario.system : nullptr, out);
    scenario.demand = read_demand(root.field("demand"), out);
    scenario.hetnet = read_hetnet(root.field("hetnet"), out);
    scenario.sim = read_sim(root.field("sim"), out);
    scenario.trajectory = read_trajectory(root.field("trajectory"), out);
    scenario.multipurpose = read_multipurpose(root.field("multipurpose"), out);
    scenario.events = read_events(root.field("events"), out);
    scenario.verify_grid = read_verify_grid(root.field("verify_grid"), out);
    root.finish();

    if (scenario.hetnet && std::isnan(scenario.hetnet->config.coverage) && scenario.hetnet->overlay) {
        if (const auto* o = scenario.find_overlay(*scenario.hetnet->overlay); o && scenario.system.size() > 0)
            scenario.hetnet->config.coverage = static_cast<double>(o->overlay.effective_size()) /
                                               static_cast<double>(scenario.system.size());
    }

    if (!out.empty()) throw ValidationError(std::move(out));
    throw_if_invalid(validate(scenario));
    return scenario;
}

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

Violations validate(const Scenario& scenario) {
    Violations out;
    auto append = [&out](Violations more) {
        out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
    };
    append(validate(scenario.system));

    std::set<std::string> names;
    for (std::size_t i = 0; i < scenario.overlays.size(); ++i) {
        const auto& o = scenario.overlays[i];
        const std::string path = index_path("overlays", i);
        if (!names.insert(o.name).second)
            out.push_back({path + ".name", "duplicate overlay name '" + o.name + "'"});
        append(prefixed(path, validate(o.overlay, scenario.system)));
    }

    DemandModel demand{scenario.demand.rate, scenario.demand.target_rule, std::nullopt};
    if (scenario.demand.contacts) {
        if (scenario.demand.contacts->sample_size &&
            *scenario.demand.contacts->sample_size > scenario.system.size())
            out.push_back({"demand.contacts.sample_size", "sample size exceeds the system size"});
        demand.contact_sets = scenario.demand.contacts->lists;
    }
    append(validate(demand, scenario.system));

    if (scenario.hetnet) {
        const auto& h = *scenario.hetnet;
        append(validate(h.config));
        if (h.overlay) {
            const auto* o = scenario.find_overlay(*h.overlay);
            if (o == nullptr) {
                out.push_back({"hetnet.overlay", "no overlay named '" + *h.overlay + "'"});
            } else if (scenario.system.size() > 0) {
                const double observed = static_cast<double>(o->overlay.effective_size()) /
                                        static_cast<double>(scenario.system.size());
                if (std::abs(observed - h.config.coverage) > analytic::kRoundTripTolerance)
                    out.push_back({"hetnet.coverage",
                                   "coverage does not match the preferred overlay's N_E/N_Omega"});
            }
        }
        if (h.target && !(std::isfinite(*h.target) && *h.target >= h.config.default_capacity))
            out.push_back({"hetnet.target", "target must be finite and >= default_capacity"});
    }
    if (scenario.sim) append(montecarlo::validate(montecarlo::SimConfig{
                          0, scenario.sim->attempts, scenario.sim->trials, 0, 0}));
    if (scenario.trajectory) {
        for (std::size_t i = 0; i < scenario.trajectory->size(); ++i) {
            const auto& p = (*scenario.trajectory)[i];
            if (p.n_system < 1 || p.n_effective > p.n_system)
                out.push_back({index_path("trajectory.schedule", i),
                               "needs 1 <= n_omega and n_e <= n_omega"});
        }
    }
    if (scenario.multipurpose) {
        for (std::size_t i = 0; i < scenario.multipurpose->size(); ++i) {
            const auto& s = (*scenario.multipurpose)[i];
            if (!(s.alpha > 0.0) || s.n_system < 1 || s.n_effective > s.n_system)
                out.push_back({index_path("multipurpose", i),
                               "needs alpha > 0, n_system >= 1 and n_effective <= n_system"});
        }
    }
    if (scenario.events) append(validate(*scenario.events));
    if (scenario.verify_grid) {
        if (scenario.verify_grid->max_n_system < 1)
            out.push_back({"verify_grid.max_n_system", "must be >= 1"});
        if (!(scenario.verify_grid->alpha > 0.0))
            out.push_back({"verify_grid.alpha", "must be > 0"});
    }
    return out;
}

DemandModel resolve_demand(const Scenario& scenario, std::uint64_t seed) {
    DemandModel demand{scenario.demand.rate, scenario.demand.target_rule, std::nullopt};
    if (const auto& contacts = scenario.demand.contacts) {
        if (contacts->sample_size)
            demand.contact_sets = montecarlo::sample_contact_sets(scenario.system,
                                                                  *contacts->sample_size, seed);
        else
            demand.contact_sets = contacts->lists;
    }
    return demand;
}

}  // namespace netefficacy
