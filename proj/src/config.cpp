#include "rct/config.hpp"

#include <cstdlib>
#include <fstream>

#include "rct/errors.hpp"

namespace rct {
namespace {

double parse_number(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw FormatError("config key '" + key + "' has a non-numeric value '" + value + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void TrackerConfig::validate() const {
    if (!(lambda > 0.0)) throw FormatError("config: lambda must be > 0");
    if (!(eta >= 0.0 && eta <= 1.0)) throw FormatError("config: eta must be in [0, 1]");
    if (num_scales < 1 || num_scales % 2 == 0)
        throw FormatError("config: num_scales must be odd and >= 1");
    if (!(scale_step > 1.0)) throw FormatError("config: scale_step must be > 1");
    if (cell_size < 1) throw FormatError("config: cell_size must be >= 1");
    if (!(proposal_ratio > 0.0 && proposal_ratio < 1.0))
        throw FormatError("config: proposal_ratio must be in (0, 1)");
    if (!(ratio_tolerance > 0.0)) throw FormatError("config: ratio_tolerance must be > 0");
    if (!(area_threshold > 0.0 && area_threshold < 1.0))
        throw FormatError("config: area_threshold must be in (0, 1)");
    if (!(search_padding > 0.0)) throw FormatError("config: search_padding must be > 0");
    if (admm_iterations < 1) throw FormatError("config: admm_iterations must be >= 1");
    if (!(admm_penalty_init > 0.0)) throw FormatError("config: admm_penalty_init must be > 0");
    if (!(admm_penalty_scale >= 1.0)) throw FormatError("config: admm_penalty_scale must be >= 1");
    if (!(admm_penalty_max >= admm_penalty_init))
        throw FormatError("config: admm_penalty_max must be >= admm_penalty_init");
}

TrackerConfig default_config() { return TrackerConfig{}; }

void set_config_field(TrackerConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "lambda") cfg.lambda = parse_number(key, value);
    else if (key == "eta") cfg.eta = parse_number(key, value);
    else if (key == "num_scales") cfg.num_scales = static_cast<int>(parse_number(key, value));
    else if (key == "scale_step") cfg.scale_step = parse_number(key, value);
    else if (key == "cell_size") cfg.cell_size = static_cast<int>(parse_number(key, value));
    else if (key == "proposal_ratio") cfg.proposal_ratio = parse_number(key, value);
    else if (key == "ratio_tolerance") cfg.ratio_tolerance = parse_number(key, value);
    else if (key == "area_threshold") cfg.area_threshold = parse_number(key, value);
    else if (key == "search_padding") cfg.search_padding = parse_number(key, value);
    else if (key == "admm_iterations")
        cfg.admm_iterations = static_cast<int>(parse_number(key, value));
    else if (key == "admm_penalty_init") cfg.admm_penalty_init = parse_number(key, value);
    else if (key == "admm_penalty_scale") cfg.admm_penalty_scale = parse_number(key, value);
    else if (key == "admm_penalty_max") cfg.admm_penalty_max = parse_number(key, value);
    else if (key == "use_mask") cfg.use_mask = parse_number(key, value) != 0.0;
    else throw FormatError("unknown config key '" + key + "'");
}

TrackerConfig load_config(const std::filesystem::path& path, const TrackerConfig& base) {
    std::ifstream in(path);
    if (!in) throw NotFoundError("cannot open config file: " + path.string());
    TrackerConfig cfg = base;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        set_config_field(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

}  // namespace rct
