#include "qsl/config.hpp"

#include <fstream>
#include <json.hpp>

namespace qsl {

using nlohmann::json;

DotParams RunConfig::dot_params(std::uint64_t s) const {
    DotParams p;
    p.n1 = static_cast<std::size_t>(n1);
    p.n2 = static_cast<std::size_t>(n2);
    p.delta_eps = delta_eps;
    p.delta_e = delta_e;
    p.coupling = coupling;
    p.seed = s;
    return p;
}

DotInitialState RunConfig::dot_state_kind() const {
    if (dot_kind == "excited") return DotInitialState::excited;
    if (dot_kind == "coherent") return DotInitialState::coherent;
    throw config_error("dot_kind must be 'excited' or 'coherent', got '" + dot_kind + "'");
}

NormFlavor RunConfig::flavor() const {
    if (norm_flavor == "op") return NormFlavor::op;
    if (norm_flavor == "tr") return NormFlavor::tr;
    if (norm_flavor == "hs") return NormFlavor::hs;
    throw config_error("norm_flavor must be op|tr|hs, got '" + norm_flavor + "'");
}

double RunConfig::h_spread_value() const {
    if (h_spread == "full") return 2.0 * delta_e;
    if (h_spread == "half") return delta_e;
    throw config_error("h_spread must be full|half, got '" + h_spread + "'");
}

void RunConfig::validate() const {
    if (!(gamma0 > 0.0) || !(lambda > 0.0)) throw config_error("need gamma0 > 0 and lambda > 0");
    if (!(gamma0_min > 0.0) || !(gamma0_max > gamma0_min))
        throw config_error("need 0 < gamma0_min < gamma0_max");
    if (sweep_points < 1) throw config_error("need sweep_points >= 1");
    if (!(tau > 0.0) || !(dot_tau > 0.0)) throw config_error("need tau > 0");
    if (n_steps < 0 || dot_steps < 0) throw config_error("step counts must be >= 0 (0 = auto)");
    if (n1 < 1 || n2 < 1) throw config_error("need n1, n2 >= 1");
    if (delta_eps < 0.0 || coupling < 0.0)
        throw config_error("need delta_eps >= 0 and coupling >= 0");
    if (betas.empty()) throw config_error("need at least one beta");
    for (double b : betas)
        if (!(b > 0.0) || b > 1.0) throw config_error("each beta must lie in (0, 1]");
    if (seeds.empty()) throw config_error("need at least one seed");
    if (jobs < 1) throw config_error("need jobs >= 1");
    if (trials < 1) throw config_error("need trials >= 1");
    if (max_dim < 2) throw config_error("need max_dim >= 2");
    dot_state_kind();
    flavor();
    h_spread_value();
}

namespace {

json to_json_obj(const RunConfig& c) {
    return json{
        {"gamma0", c.gamma0},         {"lambda", c.lambda},
        {"omega0", c.omega0},         {"gamma0_min", c.gamma0_min},
        {"gamma0_max", c.gamma0_max}, {"sweep_points", c.sweep_points},
        {"tau", c.tau},               {"n_steps", c.n_steps},
        {"n1", c.n1},                 {"n2", c.n2},
        {"delta_eps", c.delta_eps},   {"delta_e", c.delta_e},
        {"coupling", c.coupling},     {"dot_kind", c.dot_kind},
        {"dot_tau", c.dot_tau},       {"dot_steps", c.dot_steps},
        {"betas", c.betas},           {"seeds", c.seeds},
        {"out_dir", c.out_dir},       {"norm_flavor", c.norm_flavor},
        {"h_spread", c.h_spread},     {"jobs", c.jobs},
        {"trials", c.trials},         {"max_dim", c.max_dim},
        {"seed", c.seed},
    };
}

template <typename T>
void pick(const json& j, const char* key, T& field) {
    if (j.contains(key)) j.at(key).get_to(field);
}

} // namespace

std::string config_to_json(const RunConfig& c) { return to_json_obj(c).dump(2) + "\n"; }

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw config_error("config root must be a JSON object");

    RunConfig c;
    const json known = to_json_obj(c);
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.contains(key)) throw config_error("unknown config key '" + key + "'");
    }
    try {
        pick(j, "gamma0", c.gamma0);
        pick(j, "lambda", c.lambda);
        pick(j, "omega0", c.omega0);
        pick(j, "gamma0_min", c.gamma0_min);
        pick(j, "gamma0_max", c.gamma0_max);
        pick(j, "sweep_points", c.sweep_points);
        pick(j, "tau", c.tau);
        pick(j, "n_steps", c.n_steps);
        pick(j, "n1", c.n1);
        pick(j, "n2", c.n2);
        pick(j, "delta_eps", c.delta_eps);
        pick(j, "delta_e", c.delta_e);
        pick(j, "coupling", c.coupling);
        pick(j, "dot_kind", c.dot_kind);
        pick(j, "dot_tau", c.dot_tau);
        pick(j, "dot_steps", c.dot_steps);
        pick(j, "betas", c.betas);
        pick(j, "seeds", c.seeds);
        pick(j, "out_dir", c.out_dir);
        pick(j, "norm_flavor", c.norm_flavor);
        pick(j, "h_spread", c.h_spread);
        pick(j, "jobs", c.jobs);
        pick(j, "trials", c.trials);
        pick(j, "max_dim", c.max_dim);
        pick(j, "seed", c.seed);
    } catch (const json::exception& e) {
        throw config_error(std::string("config field has the wrong type: ") + e.what());
    }
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return config_from_json(text);
}

} // namespace qsl
