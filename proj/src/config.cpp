#include <fstream>
#include <set>

#include "gpslab/harness.hpp"

namespace gpslab {

using nlohmann::json;

namespace {

// Wrap json access so missing/mistyped fields surface as config_error.
template <typename T>
T get_field(const json& j, const std::string& key) {
    if (!j.contains(key)) {
        throw config_error("missing config field: " + key);
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw config_error("bad config field '" + key + "': " + e.what());
    }
}

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw config_error("bad config field '" + key + "': " + e.what());
    }
}

Condition condition_from_json(const json& j) {
    if (!j.contains("cond") || j.at("cond").is_null()) {
        return Condition::unconditional();
    }
    if (!j.at("cond").is_string()) {
        throw config_error("'cond' must be a class label string or null");
    }
    return Condition::cls(j.at("cond").get<std::string>());
}

}  // namespace

json guidance_to_json(const GuidanceSpec& g) {
    return json{{"mode", g.mode() == GuidanceSpec::Mode::Extrapolate ? "extrapolate"
                                                                     : "interpolate"},
                {"weight", g.weight()}};
}

GuidanceSpec guidance_from_json(const json& j) {
    const auto mode = get_field<std::string>(j, "mode");
    const double w = get_field<double>(j, "weight");
    if (mode == "extrapolate") return GuidanceSpec::extrapolate(w);
    if (mode == "interpolate") return GuidanceSpec::interpolate(w);
    throw config_error("guidance mode must be 'extrapolate' or 'interpolate'");
}

json schedule_spec_to_json(const ScheduleSpec& s) {
    json j{{"kind", schedule_kind_name(s.kind)}, {"lo", s.lo}, {"hi", s.hi}};
    if (s.kind == ScheduleSpec::Kind::Sigmoid) {
        j["sharpness"] = s.sharpness;
    }
    return j;
}

ScheduleSpec schedule_spec_from_json(const json& j) {
    ScheduleSpec s;
    try {
        s.kind = schedule_kind_from_name(get_field<std::string>(j, "kind"));
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    s.lo = get_field<double>(j, "lo");
    s.hi = s.kind == ScheduleSpec::Kind::Constant ? s.lo : get_field<double>(j, "hi");
    s.sharpness = get_or<double>(j, "sharpness", 10.0);
    s.validate();
    return s;
}

json sampler_config_to_json(const SamplerConfig& cfg) {
    json j;
    j["T"] = cfg.T;
    j["K"] = cfg.K;
    j["repeats"] = cfg.repeats;
    j["seed"] = cfg.seed;
    j["cond"] = cfg.cond.is_unconditional ? json(nullptr) : json(cfg.cond.label);
    switch (cfg.method) {
        case SamplerConfig::Method::Standard:
            j["method"] = "standard";
            j["guidance"] = guidance_to_json(cfg.guidance);
            break;
        case SamplerConfig::Method::Zigzag:
            j["method"] = "zigzag";
            j["omega_h"] = cfg.omega_h;
            j["omega_l"] = cfg.omega_l;
            break;
        case SamplerConfig::Method::Gps:
            j["method"] = "gps";
            j["lambda1"] = cfg.lambda1;
            j["lambda2"] = schedule_spec_to_json(cfg.lambda2);
            j["lambda2_domain"] = cfg.lambda2_window_domain ? "window" : "full";
            break;
    }
    return j;
}

SamplerConfig sampler_config_from_json(const json& j, int T) {
    SamplerConfig cfg;
    cfg.T = get_or<int>(j, "T", T);
    cfg.K = get_or<int>(j, "K", 0);
    cfg.repeats = get_or<int>(j, "repeats", 1);
    cfg.seed = get_or<std::uint64_t>(j, "seed", 0);
    cfg.cond = condition_from_json(j);
    const auto method = get_field<std::string>(j, "method");
    if (method == "standard") {
        cfg.method = SamplerConfig::Method::Standard;
        if (!j.contains("guidance")) {
            throw config_error("standard run needs a 'guidance' object");
        }
        cfg.guidance = guidance_from_json(j.at("guidance"));
    } else if (method == "zigzag") {
        cfg.method = SamplerConfig::Method::Zigzag;
        cfg.omega_h = get_field<double>(j, "omega_h");
        cfg.omega_l = get_field<double>(j, "omega_l");
    } else if (method == "gps") {
        cfg.method = SamplerConfig::Method::Gps;
        cfg.lambda1 = get_field<double>(j, "lambda1");
        if (!j.contains("lambda2")) {
            throw config_error("gps run needs a 'lambda2' schedule object");
        }
        cfg.lambda2 = schedule_spec_from_json(j.at("lambda2"));
        const auto domain = get_or<std::string>(j, "lambda2_domain", "full");
        if (domain == "window") {
            cfg.lambda2_window_domain = true;
        } else if (domain != "full") {
            throw config_error("lambda2_domain must be 'full' or 'window'");
        }
    } else {
        throw config_error("unknown sampler method: " + method);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig cfg;
    cfg.dimension = get_field<int>(j, "dimension");

    if (!j.contains("schedule")) {
        throw config_error("missing config field: schedule");
    }
    const json& sched = j.at("schedule");
    cfg.T = get_field<int>(sched, "T");
    cfg.beta_start = get_field<double>(sched, "beta_start");
    cfg.beta_end = get_field<double>(sched, "beta_end");

    if (!j.contains("model") || !j.at("model").is_array()) {
        throw config_error("config field 'model' must be an array of components");
    }
    for (const json& cj : j.at("model")) {
        MixtureComponent c;
        c.weight = get_field<double>(cj, "weight");
        c.mean = get_field<std::vector<double>>(cj, "mean");
        c.sigma = get_field<double>(cj, "sigma");
        c.label = get_field<std::string>(cj, "class");
        cfg.model.push_back(std::move(c));
    }

    cfg.seeds = get_field<std::vector<std::uint64_t>>(j, "seeds");

    if (!j.contains("runs") || !j.at("runs").is_array()) {
        throw config_error("config field 'runs' must be an array");
    }
    for (const json& rj : j.at("runs")) {
        RunSpec r;
        r.name = get_field<std::string>(rj, "name");
        r.sampler = sampler_config_from_json(rj, cfg.T);
        cfg.runs.push_back(std::move(r));
    }

    cfg.output_dir = get_or<std::string>(j, "output_dir", "");
    cfg.emit_plots = get_or<bool>(j, "emit_plots", false);
    cfg.reference_resolution = get_or<int>(j, "reference_resolution", 10);

    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open config file: " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
    return from_json(j);
}

MixtureModel ExperimentConfig::make_model() const {
    return MixtureModel(model);
}

NoiseSchedule ExperimentConfig::make_schedule() const {
    return make_linear_schedule(T, beta_start, beta_end);
}

void ExperimentConfig::validate() const {
    if (dimension < 1) {
        throw std::invalid_argument("dimension must be >= 1");
    }
    if (seeds.empty()) {
        throw std::invalid_argument("need at least one seed");
    }
    if (runs.empty()) {
        throw std::invalid_argument("need at least one run");
    }
    std::set<std::string> names;
    for (const auto& r : runs) {
        if (r.name.empty()) {
            throw std::invalid_argument("run names must be nonempty");
        }
        if (!names.insert(r.name).second) {
            throw std::invalid_argument("duplicate run name: " + r.name);
        }
    }
    if (reference_resolution < 10) {
        throw std::invalid_argument("reference_resolution must be >= 10");
    }
    const MixtureModel m = make_model();
    if (m.dim() != dimension) {
        throw std::invalid_argument("model dimension does not match 'dimension'");
    }
    const NoiseSchedule s = make_schedule();
    for (const auto& r : runs) {
        SamplerConfig sc = r.sampler;
        sc.validate(s, m);
    }
}

}  // namespace gpslab
