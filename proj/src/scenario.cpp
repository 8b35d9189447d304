#include "amcost/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "amcost/stl_io.hpp"

namespace amcost {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct ConfigEntry {
    std::string key;
    std::string value;
};

// Sectioned key = value text; '#' and ';' start comments, keys may repeat.
class Config {
public:
    static Config parse_file(const std::filesystem::path& path) {
        std::ifstream in(path);
        if (!in) {
            throw std::runtime_error("cannot open scenario file: " + path.string());
        }
        Config cfg;
        cfg.label_ = path.string();
        std::string line;
        std::string section;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto comment = line.find_first_of("#;");
            if (comment != std::string::npos) {
                line.erase(comment);
            }
            const std::string text = trim(line);
            if (text.empty()) {
                continue;
            }
            if (text.front() == '[') {
                if (text.back() != ']') {
                    throw std::runtime_error(cfg.label_ + ":" + std::to_string(line_no) +
                                             ": unterminated section header") ;
                }
                section = trim(text.substr(1, text.size() - 2));
                cfg.sections_[section];  // record even if empty
                continue;
            }
            const auto eq = text.find('=');
            if (eq == std::string::npos) {
                throw std::runtime_error(cfg.label_ + ":" + std::to_string(line_no) +
                                         ": expected key = value");
            }
            ConfigEntry entry{trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
            if (entry.key.empty()) {
                throw std::runtime_error(cfg.label_ + ":" + std::to_string(line_no) +
                                         ": empty key");
            }
            cfg.sections_[section].push_back(std::move(entry));
        }
        return cfg;
    }

    bool has_section(const std::string& section) const { return sections_.count(section) > 0; }

    std::vector<std::string> section_names() const {
        std::vector<std::string> names;
        for (const auto& [name, _] : sections_) {
            names.push_back(name);
        }
        return names;
    }

    const std::vector<ConfigEntry>& entries(const std::string& section) const {
        static const std::vector<ConfigEntry> empty;
        auto it = sections_.find(section);
        return it == sections_.end() ? empty : it->second;
    }

    std::optional<std::string> find(const std::string& section, const std::string& key) const {
        for (const ConfigEntry& e : entries(section)) {
            if (e.key == key) {
                return e.value;
            }
        }
        return std::nullopt;
    }

    std::string require(const std::string& section, const std::string& key) const {
        auto v = find(section, key);
        if (!v) {
            throw std::runtime_error(label_ + ": missing key [" + section + "] " + key);
        }
        return *v;
    }

    double require_double(const std::string& section, const std::string& key) const {
        return to_double(section, key, require(section, key));
    }

    double get_double(const std::string& section, const std::string& key, double fallback) const {
        auto v = find(section, key);
        return v ? to_double(section, key, *v) : fallback;
    }

    std::optional<double> get_optional_double(const std::string& section,
                                              const std::string& key) const {
        auto v = find(section, key);
        if (!v) {
            return std::nullopt;
        }
        return to_double(section, key, *v);
    }

    int get_int(const std::string& section, const std::string& key, int fallback) const {
        auto v = find(section, key);
        if (!v) {
            return fallback;
        }
        const double d = to_double(section, key, *v);
        const int i = static_cast<int>(std::llround(d));
        if (std::abs(d - i) > 1e-9) {
            throw std::runtime_error(label_ + ": [" + section + "] " + key +
                                     " must be an integer");
        }
        return i;
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        auto v = find(section, key);
        if (!v) {
            return fallback;
        }
        if (*v == "true" || *v == "1" || *v == "yes") return true;
        if (*v == "false" || *v == "0" || *v == "no") return false;
        throw std::runtime_error(label_ + ": [" + section + "] " + key + ": not a boolean: '" +
                                 *v + "'");
    }

    const std::string& label() const { return label_; }

private:
    double to_double(const std::string& section, const std::string& key,
                     const std::string& text) const {
        try {
            std::size_t pos = 0;
            const double d = std::stod(text, &pos);
            if (pos != text.size()) {
                throw std::invalid_argument(text);
            }
            return d;
        } catch (const std::exception&) {
            throw std::runtime_error(label_ + ": [" + section + "] " + key + ": not a number: '" +
                                     text + "'");
        }
    }

    std::string label_;
    std::map<std::string, std::vector<ConfigEntry>> sections_;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

ProcessProfile load_profile(const Config& cfg) {
    ProcessProfile p;
    p.p_material_eur_per_cm3 = cfg.require_double("profile", "p_material_eur_per_cm3");
    p.setup_labour_eur = cfg.require_double("profile", "c_setup_labour_eur");
    p.indirect_rate_eur_per_h = cfg.require_double("profile", "indirect_rate_eur_per_h");
    p.labour_rate_eur_per_h = cfg.require_double("profile", "labour_rate_eur_per_h");
    p.t_process_h = cfg.require_double("profile", "t_process_min") / 60.0;
    p.energy_price_eur_per_mj = cfg.require_double("profile", "energy_price_eur_per_mj");
    p.process_energy_mj_per_h = cfg.require_double("profile", "process_energy_mj_per_h");
    p.energy_rate_eur_per_h = p.energy_price_eur_per_mj * p.process_energy_mj_per_h;

    p.production_overhead_eur_per_h = cfg.get_double("profile", "production_overhead_eur_per_h", 0.0);
    p.administration_overhead_eur_per_h =
        cfg.get_double("profile", "administration_overhead_eur_per_h", 0.0);
    p.machine_cost_rate_eur_per_h = cfg.get_double("profile", "machine_cost_rate_eur_per_h", 0.0);
    p.machine_utilisation_pct = cfg.get_double("profile", "machine_utilisation_pct", 0.0);
    p.annual_operating_hours = cfg.get_double("profile", "annual_operating_hours", 0.0);
    p.validate();
    return p;
}

FailureModel load_failure(const Config& cfg) {
    FailureModel f;
    const auto p_constant = cfg.get_optional_double("failure", "p_constant");
    const auto mean_layers = cfg.get_optional_double("failure", "mean_layers_to_failure");
    if (p_constant && mean_layers) {
        throw std::runtime_error(
            cfg.label() + ": [failure] give either p_constant or mean_layers_to_failure, not both");
    }
    if (mean_layers) {
        if (!(*mean_layers > 0.0)) {
            throw std::runtime_error(cfg.label() +
                                     ": [failure] mean_layers_to_failure must be > 0");
        }
        f.p_constant = 1.0 / *mean_layers;
    } else if (p_constant) {
        f.p_constant = *p_constant;
    }
    f.exclude_setup_labour = cfg.get_bool("failure", "exclude_setup_labour", false);
    f.validate();
    return f;
}

std::optional<UsePhaseScenario> load_use_phase(const Config& cfg) {
    if (!cfg.has_section("use_phase")) {
        return std::nullopt;
    }
    UsePhaseScenario u;
    u.power_conventional_w = cfg.require_double("use_phase", "power_conventional_w");
    u.power_am_w = cfg.require_double("use_phase", "power_am_w");
    u.annual_hours = cfg.require_double("use_phase", "annual_hours");
    u.lifetime_hours = cfg.require_double("use_phase", "lifetime_hours");
    u.depreciation_years = cfg.get_double("use_phase", "depreciation_years",
                                          u.lifetime_hours / u.annual_hours);
    u.use_energy_price_eur_per_mj = cfg.require_double("use_phase", "use_energy_price_eur_per_mj");
    u.discount_rate = cfg.require_double("use_phase", "discount_rate");
    u.throughput_high_per_h = cfg.get_double("use_phase", "throughput_high_per_h", 0.0);
    u.throughput_low_per_h = cfg.get_double("use_phase", "throughput_low_per_h", 0.0);
    u.validate();
    return u;
}

std::vector<ConventionalCostRecord> load_conventional(const Config& cfg) {
    std::vector<ConventionalCostRecord> records;
    for (const std::string& name : cfg.section_names()) {
        if (name.rfind("conventional:", 0) != 0) {
            continue;
        }
        ConventionalCostRecord rec;
        try {
            rec.batch_size = std::stoi(name.substr(std::string("conventional:").size()));
        } catch (const std::exception&) {
            throw std::runtime_error(cfg.label() + ": bad batch size in section [" + name + "]");
        }
        rec.unit_cost_eur = cfg.require_double(name, "unit_cost_eur");
        for (const ConfigEntry& e : cfg.entries(name)) {
            if (e.key != "share") {
                continue;
            }
            const auto fields = split(e.value, '|');
            if (fields.size() != 3) {
                throw std::runtime_error(cfg.label() + ": [" + name +
                                         "] share must be 'label | process | percent'");
            }
            ConventionalShare share;
            share.label = fields[0];
            share.process = fields[1];
            try {
                share.percent = std::stod(fields[2]);
            } catch (const std::exception&) {
                throw std::runtime_error(cfg.label() + ": [" + name + "] share percent: '" +
                                         fields[2] + "' is not a number");
            }
            rec.shares.push_back(std::move(share));
        }
        rec.validate();
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(),
              [](const auto& a, const auto& b) { return a.batch_size < b.batch_size; });
    return records;
}

}  // namespace

void ConventionalCostRecord::validate() const {
    if (batch_size <= 0) {
        throw std::invalid_argument("conventional record: batch_size must be > 0");
    }
    if (!(unit_cost_eur > 0.0)) {
        throw std::invalid_argument("conventional record: unit_cost_eur must be > 0");
    }
    if (!shares.empty()) {
        double total = 0.0;
        for (const ConventionalShare& s : shares) {
            total += s.percent;
        }
        // printed shares carry rounding; allow half a point of slack
        if (std::abs(total - 100.0) > 0.5) {
            throw std::invalid_argument("conventional record: component shares sum to " +
                                        std::to_string(total) + "%, expected 100% +/- 0.5");
        }
    }
}

double Scenario::unit_volume_cm3() const {
    if (unit_part.volume_cm3) {
        return *unit_part.volume_cm3;
    }
    return mesh_volume_cm3(load_mesh(unit_part.path));
}

double Scenario::unit_height_mm() const {
    if (unit_part.height_mm) {
        return *unit_part.height_mm;
    }
    return part_height_mm(load_mesh(unit_part.path));
}

int Scenario::unit_layer_count() const {
    return compute_layers(unit_height_mm(), layer_thickness_mm);
}

PartSpec Scenario::load_unit_part() const {
    TriangleMesh mesh = load_mesh(unit_part.path);
    mesh.name = unit_part.name;
    PartSpec spec = make_part_spec(std::move(mesh), PartRole::required);
    if (unit_part.volume_cm3) {
        spec.deposited_volume_cm3 = *unit_part.volume_cm3;
    }
    return spec;
}

std::vector<PartSpec> Scenario::load_basket() const {
    std::vector<PartSpec> parts;
    for (const PartConfig& cfg : basket) {
        TriangleMesh mesh = load_mesh(cfg.path);
        mesh.name = cfg.name;
        PartSpec spec = make_part_spec(std::move(mesh), PartRole::reference);
        if (cfg.volume_cm3) {
            spec.deposited_volume_cm3 = *cfg.volume_cm3;
        }
        parts.push_back(std::move(spec));
    }
    return parts;
}

Scenario load_scenario(const std::filesystem::path& path) {
    const Config cfg = Config::parse_file(path);
    const std::filesystem::path base = path.parent_path();

    Scenario sc;
    sc.profile = load_profile(cfg);
    sc.failure = load_failure(cfg);

    sc.build_volume.x_mm = cfg.get_double("build_volume", "plate_x_mm", 250.0);
    sc.build_volume.y_mm = cfg.get_double("build_volume", "plate_y_mm", 250.0);
    sc.build_volume.z_mm = cfg.get_double("build_volume", "max_height_mm", 215.0);
    sc.build_volume.spacing_mm = cfg.get_double("build_volume", "spacing_mm", 5.0);
    if (!(sc.build_volume.x_mm > 0.0) || !(sc.build_volume.y_mm > 0.0) ||
        !(sc.build_volume.z_mm > 0.0)) {
        throw std::runtime_error(cfg.label() + ": [build_volume] plate dimensions must be > 0");
    }
    if (sc.build_volume.spacing_mm < 0.0) {
        throw std::runtime_error(cfg.label() + ": [build_volume] spacing_mm must be >= 0");
    }
    sc.layer_thickness_mm = cfg.get_double("build_volume", "layer_thickness_mm", 0.02);
    if (!(sc.layer_thickness_mm > 0.0)) {
        throw std::runtime_error(cfg.label() + ": [build_volume] layer_thickness_mm must be > 0");
    }
    sc.voxel_resolution_mm = cfg.get_double("build_volume", "voxel_resolution_mm", 1.0);
    if (!(sc.voxel_resolution_mm > 0.0)) {
        throw std::runtime_error(cfg.label() + ": [build_volume] voxel_resolution_mm must be > 0");
    }

    sc.unit_part.path = base / cfg.require("parts", "unit");
    sc.unit_part.name = cfg.find("parts", "unit_name").value_or("unit");
    sc.unit_part.volume_cm3 = cfg.get_optional_double("parts", "unit_volume_cm3");
    sc.unit_part.height_mm = cfg.get_optional_double("parts", "unit_height_mm");
    if (sc.unit_part.volume_cm3 && !(*sc.unit_part.volume_cm3 > 0.0)) {
        throw std::runtime_error(cfg.label() + ": [parts] unit_volume_cm3 must be > 0");
    }

    for (const ConfigEntry& e : cfg.entries("basket")) {
        PartConfig part;
        part.name = e.key;
        part.path = base / e.value;
        sc.basket.push_back(std::move(part));
    }

    sc.time_model.t_layer_s = cfg.get_double("time_model", "t_layer_s", 0.0);
    sc.time_model.melt_rate_cm3_per_h = cfg.get_double("time_model", "melt_rate_cm3_per_h", 0.0);
    if (sc.time_model.t_layer_s != 0.0 || sc.time_model.melt_rate_cm3_per_h != 0.0) {
        sc.time_model.validate();
    }

    sc.use_phase = load_use_phase(cfg);
    sc.conventional = load_conventional(cfg);

    if (auto fixture = cfg.find("fixture", "sweep")) {
        sc.sweep_fixture = base / *fixture;
    }
    sc.reference_count = cfg.get_int("comparison", "reference_count", 4);
    sc.baseline_batch = cfg.get_int("comparison", "baseline_batch", 60);
    if (sc.reference_count < 1) {
        throw std::runtime_error(cfg.label() + ": [comparison] reference_count must be >= 1");
    }
    return sc;
}

}  // namespace amcost
