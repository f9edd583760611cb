#include "gsctrack/config.hpp"

#include <fstream>

#include <json.hpp>

namespace gsctrack::config {

namespace {

using nlohmann::json;

json ablation_to_json(const tracker::AblationFlags& a) {
    json j;
    j["disable_short_term"] = a.disable_short_term;
    j["disable_confidence"] = a.disable_confidence;
    j["disable_gsc"] = a.disable_gsc;
    if (std::isfinite(a.confidence_override)) {
        j["confidence_override"] = a.confidence_override;
    } else {
        j["confidence_override"] = nullptr;
    }
    return j;
}

void ablation_from_json(const json& j, tracker::AblationFlags& a) {
    a.disable_short_term = j.value("disable_short_term", a.disable_short_term);
    a.disable_confidence = j.value("disable_confidence", a.disable_confidence);
    a.disable_gsc = j.value("disable_gsc", a.disable_gsc);
    if (j.contains("confidence_override") && !j["confidence_override"].is_null()) {
        a.confidence_override = j["confidence_override"].get<double>();
    }
}

}  // namespace

std::string serialize_config(const FullConfig& cfg) {
    const tracker::TrackerConfig& t = cfg.tracker;
    json j;
    j["search_area_factor"] = t.search_area_factor;
    j["crop_size"] = t.crop_size;
    j["feature"] = {{"cell_stride", t.feature.cell_stride},
                    {"orientation_bins", t.feature.orientation_bins},
                    {"normalize", t.feature.normalize}};
    j["gsc"] = {{"temperature", t.gsc.temperature},
                {"search_radius_cells", t.gsc.search_radius_cells},
                {"sigma_conf", t.gsc.sigma_conf}};
    j["dcf"] = {{"lambda", t.dcf.lambda},
                {"learning_rate", t.dcf.learning_rate},
                {"label_sigma_factor", t.dcf.label_sigma_factor},
                {"use_cosine_window", t.dcf.use_cosine_window},
                {"augment",
                 {{"translation_px", t.dcf.augment.translation_px},
                  {"rotation_deg", t.dcf.augment.rotation_deg},
                  {"flip", t.dcf.augment.flip}}},
                {"update",
                 {{"period", t.dcf.update.period},
                  {"score_gate", t.dcf.update.score_gate},
                  {"distractor_ratio", t.dcf.update.distractor_ratio},
                  {"suppression_radius_cells", t.dcf.update.suppression_radius_cells}}},
                {"scales", t.dcf.scales},
                {"scale_penalty", t.dcf.scale_penalty},
                {"scale_damping", t.dcf.scale_damping}};
    j["fusion"] = {{"t_s", t.fusion.t_s},
                   {"k", t.fusion.k},
                   {"w_fuse", t.fusion.w_fuse},
                   {"decay", t.fusion.decay},
                   {"lost_threshold", t.fusion.lost_threshold},
                   {"ref_sigma", t.fusion.ref_sigma},
                   {"reference_elementwise", t.fusion.reference_elementwise}};
    j["ablation"] = ablation_to_json(t.ablation);
    j["eval"] = {{"reset_reinit_gap", cfg.reset.reinit_gap},
                 {"reset_burn_in", cfg.reset.burn_in}};
    return j.dump(2) + "\n";
}

FullConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("config: JSON parse error: ") + e.what());
    }
    FullConfig cfg;
    tracker::TrackerConfig& t = cfg.tracker;
    t.search_area_factor = j.value("search_area_factor", t.search_area_factor);
    t.crop_size = j.value("crop_size", t.crop_size);
    if (j.contains("feature")) {
        const json& f = j["feature"];
        t.feature.cell_stride = f.value("cell_stride", t.feature.cell_stride);
        t.feature.orientation_bins = f.value("orientation_bins", t.feature.orientation_bins);
        t.feature.normalize = f.value("normalize", t.feature.normalize);
    }
    if (j.contains("gsc")) {
        const json& g = j["gsc"];
        t.gsc.temperature = g.value("temperature", t.gsc.temperature);
        t.gsc.search_radius_cells = g.value("search_radius_cells", t.gsc.search_radius_cells);
        t.gsc.sigma_conf = g.value("sigma_conf", t.gsc.sigma_conf);
    }
    if (j.contains("dcf")) {
        const json& d = j["dcf"];
        t.dcf.lambda = d.value("lambda", t.dcf.lambda);
        t.dcf.learning_rate = d.value("learning_rate", t.dcf.learning_rate);
        t.dcf.label_sigma_factor = d.value("label_sigma_factor", t.dcf.label_sigma_factor);
        t.dcf.use_cosine_window = d.value("use_cosine_window", t.dcf.use_cosine_window);
        if (d.contains("augment")) {
            const json& a = d["augment"];
            t.dcf.augment.translation_px = a.value("translation_px", t.dcf.augment.translation_px);
            t.dcf.augment.rotation_deg = a.value("rotation_deg", t.dcf.augment.rotation_deg);
            t.dcf.augment.flip = a.value("flip", t.dcf.augment.flip);
        }
        if (d.contains("update")) {
            const json& u = d["update"];
            t.dcf.update.period = u.value("period", t.dcf.update.period);
            t.dcf.update.score_gate = u.value("score_gate", t.dcf.update.score_gate);
            t.dcf.update.distractor_ratio =
                u.value("distractor_ratio", t.dcf.update.distractor_ratio);
            t.dcf.update.suppression_radius_cells =
                u.value("suppression_radius_cells", t.dcf.update.suppression_radius_cells);
        }
        if (d.contains("scales")) t.dcf.scales = d["scales"].get<std::vector<double>>();
        t.dcf.scale_penalty = d.value("scale_penalty", t.dcf.scale_penalty);
        t.dcf.scale_damping = d.value("scale_damping", t.dcf.scale_damping);
    }
    if (j.contains("fusion")) {
        const json& f = j["fusion"];
        t.fusion.t_s = f.value("t_s", t.fusion.t_s);
        t.fusion.k = f.value("k", t.fusion.k);
        t.fusion.w_fuse = f.value("w_fuse", t.fusion.w_fuse);
        t.fusion.decay = f.value("decay", t.fusion.decay);
        t.fusion.lost_threshold = f.value("lost_threshold", t.fusion.lost_threshold);
        t.fusion.ref_sigma = f.value("ref_sigma", t.fusion.ref_sigma);
        t.fusion.reference_elementwise =
            f.value("reference_elementwise", t.fusion.reference_elementwise);
    }
    if (j.contains("ablation")) ablation_from_json(j["ablation"], t.ablation);
    if (j.contains("eval")) {
        const json& e = j["eval"];
        cfg.reset.reinit_gap = e.value("reset_reinit_gap", cfg.reset.reinit_gap);
        cfg.reset.burn_in = e.value("reset_burn_in", cfg.reset.burn_in);
    }
    return cfg;
}

FullConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open " + path.string());
    }
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

void save_config(const FullConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("config: cannot open " + path.string() + " for writing");
    }
    out << serialize_config(cfg);
}

}  // namespace gsctrack::config
