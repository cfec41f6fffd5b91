#include "binn/json_io.hpp"

#include <fstream>
#include <set>

namespace binn {

namespace {

const std::set<std::string> kConfigKeys = {"modes",       "basis_counts",     "length_scales", "prior_variance",
                                           "noise_variance", "sweeps",        "seed",          "center_placement",
                                           "jitter",      "early_stop_patience", "proximal_updates"};

template <typename T>
T get_field(const Json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

Json vector_json(const Vector& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

Vector vector_from_json(const Json& j, const char* key) {
    const auto values = get_field<std::vector<double>>(j, key);
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

Json config_to_json(const ModelConfig& c) {
    Json j;
    j["modes"] = c.modes;
    j["basis_counts"] = c.basis_counts;
    j["length_scales"] = c.length_scales;
    j["prior_variance"] = c.prior_variance;
    j["noise_variance"] = c.noise_variance;
    j["sweeps"] = c.sweeps;
    j["seed"] = c.seed;
    j["center_placement"] = to_string(c.center_placement);
    j["jitter"] = c.jitter;
    j["early_stop_patience"] = c.early_stop_patience ? Json(*c.early_stop_patience) : Json(nullptr);
    j["proximal_updates"] = c.proximal_updates;
    return j;
}

ModelConfig config_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (!kConfigKeys.contains(key)) throw ParseError("unknown config key '" + key + "'");
    }
    ModelConfig c;
    if (j.contains("modes")) c.modes = get_field<std::size_t>(j, "modes");
    if (j.contains("basis_counts")) c.basis_counts = get_field<std::vector<std::size_t>>(j, "basis_counts");
    if (j.contains("length_scales")) c.length_scales = get_field<std::vector<double>>(j, "length_scales");
    if (j.contains("prior_variance")) c.prior_variance = get_field<double>(j, "prior_variance");
    if (j.contains("noise_variance")) c.noise_variance = get_field<double>(j, "noise_variance");
    if (j.contains("sweeps")) c.sweeps = get_field<std::size_t>(j, "sweeps");
    if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed");
    if (j.contains("center_placement")) {
        c.center_placement = center_placement_from_string(get_field<std::string>(j, "center_placement"));
    }
    if (j.contains("jitter")) c.jitter = get_field<double>(j, "jitter");
    if (j.contains("early_stop_patience") && !j.at("early_stop_patience").is_null()) {
        c.early_stop_patience = get_field<std::size_t>(j, "early_stop_patience");
    }
    if (j.contains("proximal_updates")) c.proximal_updates = get_field<bool>(j, "proximal_updates");
    c.validate();
    return c;
}

ModelConfig load_config(const std::filesystem::path& path) { return config_from_json(read_json(path)); }

Json model_to_json(const BinnModel& model) {
    Json j;
    j["format_version"] = kModelFormatVersion;
    j["config"] = config_to_json(model.config);
    j["scaler"] = {{"min", model.scaler.lo()}, {"max", model.scaler.hi()}};
    Json dims = Json::array();
    for (std::size_t d = 0; d < model.dims(); ++d) {
        const auto& post = model.posteriors[d];
        Json entry;
        entry["centers"] = model.bases[d].centers;
        entry["length_scale"] = model.bases[d].length_scale;
        entry["prior_mean"] = vector_json(post.prior_mean);
        entry["posterior_mean"] = vector_json(post.mean);
        const RowMatrix cov = post.covariance;
        entry["posterior_covariance"] = std::vector<double>(cov.data(), cov.data() + cov.size());
        dims.push_back(std::move(entry));
    }
    j["dimensions"] = std::move(dims);
    return j;
}

BinnModel model_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("format_version")) throw ParseError("model JSON has no format_version");
    const int version = get_field<int>(j, "format_version");
    if (version != kModelFormatVersion) {
        throw ParseError("unsupported model format version " + std::to_string(version));
    }
    BinnModel model;
    model.config = config_from_json(j.at("config"));
    const auto& sc = j.at("scaler");
    model.scaler = Scaler(get_field<std::vector<double>>(sc, "min"), get_field<std::vector<double>>(sc, "max"));
    const auto& dims = j.at("dimensions");
    if (!dims.is_array() || dims.size() != model.scaler.dims()) throw ParseError("model dimensions do not match scaler");
    for (const auto& entry : dims) {
        model.bases.emplace_back(get_field<std::vector<double>>(entry, "centers"), get_field<double>(entry, "length_scale"));
        DimensionPosterior post;
        post.prior_mean = vector_from_json(entry, "prior_mean");
        post.mean = vector_from_json(entry, "posterior_mean");
        const auto k = static_cast<Eigen::Index>(model.bases.back().size() * model.config.modes);
        const auto cov = get_field<std::vector<double>>(entry, "posterior_covariance");
        if (post.mean.size() != k || post.prior_mean.size() != k || static_cast<Eigen::Index>(cov.size()) != k * k) {
            throw ParseError("model posterior sizes do not match modes x centers");
        }
        post.covariance = Eigen::Map<const RowMatrix>(cov.data(), k, k);
        model.posteriors.push_back(std::move(post));
    }
    model.config = model.config.resolved_for(model.dims());
    for (std::size_t d = 0; d < model.dims(); ++d) model.config.basis_counts[d] = model.bases[d].size();
    return model;
}

Json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json(const Json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

void save_model(const BinnModel& model, const std::filesystem::path& path) { write_json(model_to_json(model), path); }

BinnModel load_model(const std::filesystem::path& path) { return model_from_json(read_json(path)); }

}  // namespace binn
