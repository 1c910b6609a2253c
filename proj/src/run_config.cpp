#include "nhsvd/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace nhsvd {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

long long parse_int(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        fail(origin, line, "key '" + key + "': cannot parse '" + value + "' as an integer");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& origin, int line, const std::string& key,
                        const std::string& value) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        fail(origin, line, "key '" + key + "': cannot parse '" + value +
                               "' as an unsigned integer");
    }
    return v;
}

bool parse_bool(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    fail(origin, line, "key '" + key + "': cannot parse '" + value + "' as a boolean");
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& origin, int line, const std::string& key,
                          const std::string& value, Parse parse) {
    std::vector<T> items;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (item.empty()) fail(origin, line, "key '" + key + "': empty list element");
        items.push_back(parse(origin, line, key, item));
    }
    if (items.empty()) fail(origin, line, "key '" + key + "': empty list");
    return items;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

RunConfig RunConfig::parse_string(const std::string& text, const std::string& origin) {
    RunConfig config;
    std::istringstream stream(text);
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        std::string s = raw;
        if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            fail(origin, line, "expected 'key = value', got '" + trim(raw) + "'");
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(origin, line, "empty key");
        if (value.empty()) fail(origin, line, "key '" + key + "': empty value");

        SweepPlan& plan = config.plan;
        if (key == "model") {
            try {
                plan.model = parse_model_name(value);
            } catch (const std::exception& err) {
                fail(origin, line, err.what());
            }
        } else if (key == "sizes") {
            const auto list = parse_list<long long>(origin, line, key, value, parse_int);
            plan.sizes.assign(list.begin(), list.end());
        } else if (key == "strengths") {
            plan.strengths = parse_list<double>(origin, line, key, value, parse_double);
        } else if (key == "realizations") {
            plan.realizations = static_cast<int>(parse_int(origin, line, key, value));
        } else if (key == "master_seed") {
            plan.master_seed = parse_u64(origin, line, key, value);
        } else if (key == "coupling") {
            plan.coupling = parse_double(origin, line, key, value);
        } else if (key == "anisotropy") {
            plan.anisotropy = parse_double(origin, line, key, value);
        } else if (key == "asymmetry") {
            plan.asymmetry = parse_double(origin, line, key, value);
        } else if (key == "value_window_fraction") {
            plan.value_window.fraction = parse_double(origin, line, key, value);
        } else if (key == "vector_window_fraction") {
            plan.vector_window.fraction = parse_double(origin, line, key, value);
        } else if (key == "window_min_count") {
            const auto v = parse_int(origin, line, key, value);
            plan.value_window.min_count = static_cast<std::size_t>(v);
            plan.vector_window.min_count = static_cast<std::size_t>(v);
        } else if (key == "time_min") {
            plan.time_grid.t_min = parse_double(origin, line, key, value);
        } else if (key == "time_max_per_dim") {
            plan.time_grid.t_max_per_dim = parse_double(origin, line, key, value);
        } else if (key == "time_points") {
            plan.time_grid.points = static_cast<int>(parse_int(origin, line, key, value));
        } else if (key == "threads") {
            plan.threads = static_cast<int>(parse_int(origin, line, key, value));
        } else if (key == "sff") {
            plan.toggles.sff = parse_bool(origin, line, key, value);
        } else if (key == "ratios") {
            plan.toggles.ratios = parse_bool(origin, line, key, value);
        } else if (key == "complex_ratios") {
            plan.toggles.complex_ratios = parse_bool(origin, line, key, value);
        } else if (key == "ipr") {
            plan.toggles.ipr = parse_bool(origin, line, key, value);
        } else if (key == "entropy") {
            plan.toggles.entropy = parse_bool(origin, line, key, value);
        } else if (key == "eig_ipr") {
            plan.toggles.eig_ipr = parse_bool(origin, line, key, value);
        } else if (key == "eig_entropy") {
            plan.toggles.eig_entropy = parse_bool(origin, line, key, value);
        } else if (key == "out_dir") {
            config.out_dir = value;
        } else if (key == "resume") {
            config.resume = parse_bool(origin, line, key, value);
        } else {
            fail(origin, line, "unknown key '" + key + "'");
        }
    }
    return config;
}

RunConfig RunConfig::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str(), path.string());
}

std::string RunConfig::to_text() const {
    std::ostringstream out;
    out << "model = " << model_name(plan.model) << "\n";
    out << "sizes = ";
    for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
        if (i) out << ",";
        out << plan.sizes[i];
    }
    out << "\nstrengths = ";
    for (std::size_t i = 0; i < plan.strengths.size(); ++i) {
        if (i) out << ",";
        out << format_double(plan.strengths[i]);
    }
    out << "\n";
    out << "realizations = " << plan.realizations << "\n";
    out << "master_seed = " << plan.master_seed << "\n";
    out << "coupling = " << format_double(plan.coupling) << "\n";
    out << "anisotropy = " << format_double(plan.anisotropy) << "\n";
    out << "asymmetry = " << format_double(plan.asymmetry) << "\n";
    out << "value_window_fraction = " << format_double(plan.value_window.fraction) << "\n";
    out << "vector_window_fraction = " << format_double(plan.vector_window.fraction) << "\n";
    out << "window_min_count = " << plan.value_window.min_count << "\n";
    out << "time_min = " << format_double(plan.time_grid.t_min) << "\n";
    out << "time_max_per_dim = " << format_double(plan.time_grid.t_max_per_dim) << "\n";
    out << "time_points = " << plan.time_grid.points << "\n";
    out << "threads = " << plan.threads << "\n";
    out << "sff = " << (plan.toggles.sff ? "true" : "false") << "\n";
    out << "ratios = " << (plan.toggles.ratios ? "true" : "false") << "\n";
    out << "complex_ratios = " << (plan.toggles.complex_ratios ? "true" : "false") << "\n";
    out << "ipr = " << (plan.toggles.ipr ? "true" : "false") << "\n";
    out << "entropy = " << (plan.toggles.entropy ? "true" : "false") << "\n";
    out << "eig_ipr = " << (plan.toggles.eig_ipr ? "true" : "false") << "\n";
    out << "eig_entropy = " << (plan.toggles.eig_entropy ? "true" : "false") << "\n";
    out << "out_dir = " << out_dir.string() << "\n";
    out << "resume = " << (resume ? "true" : "false") << "\n";
    return out.str();
}

void RunConfig::validate() const {
    plan.validate();
    if (out_dir.empty()) {
        throw ConfigError("config: out_dir must not be empty");
    }
}

}  // namespace nhsvd
