#include "sdcn/config.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "sdcn/errors.hpp"

namespace sdcn {

namespace {

// Every legal key with its built-in default. "auto" defers to profile rules
// resolved by the experiment layer (epochs by graph source, lr, heat t,
// cluster count from labels, similarity by feature type).
constexpr std::array<std::pair<const char*, const char*>, 29> kDefaults{{
    {"dataset", ""},
    {"out", "out"},
    {"seed", "0"},
    {"variant", "full"},
    {"graph_source", "knn"},
    {"epochs", "auto"},
    {"pretrain_epochs", "30"},
    {"batch_size", "256"},
    {"lr", "auto"},
    {"pretrain_lr", "1e-3"},
    {"alpha", "0.1"},
    {"beta", "0.01"},
    {"epsilon", "0.5"},
    {"clusters", "auto"},
    {"knn_k", "5"},
    {"similarity", "auto"},
    {"heat_t", "auto"},
    {"ae_dims", "500,500,2000,10"},
    {"gcn_depth", "0"},
    {"kmeans_restarts", "20"},
    {"pretrain_cache", ""},
    {"synth_kind", "blobs"},
    {"synth_clusters", "3"},
    {"synth_per_cluster", "100"},
    {"synth_dim", "16"},
    {"synth_sigma", "0.1"},
    {"synth_separation", "10"},
    {"synth_p_in", "0.2"},
    {"synth_p_out", "0.02"},
}};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::defaults() {
    Config c;
    for (const auto& [k, v] : kDefaults) c.values_[k] = v;
    return c;
}

bool Config::is_known_key(const std::string& key) {
    for (const auto& [k, v] : kDefaults)
        if (key == k) return true;
    return false;
}

void Config::apply_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string cleaned = trim(line);
        if (cleaned.empty()) continue;
        const auto eq = cleaned.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + path.string() + ":" + std::to_string(line_no) +
                              ": expected key=value");
        const std::string key = trim(cleaned.substr(0, eq));
        const std::string value = trim(cleaned.substr(eq + 1));
        if (!is_known_key(key))
            throw ConfigError("config: " + path.string() + ":" + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
        values_[key] = value;
    }
}

void Config::set(const std::string& key, const std::string& value) {
    if (!is_known_key(key)) throw ConfigError("config: unknown key '" + key + "'");
    values_[key] = value;
}

const std::string& Config::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("config: unknown key '" + key + "'");
    return it->second;
}

bool Config::has(const std::string& key) const {
    const auto it = values_.find(key);
    return it != values_.end() && !it->second.empty();
}

double Config::get_double(const std::string& key) const {
    const std::string& v = get(key);
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not a number: '" + v + "'");
    }
}

long long Config::get_int(const std::string& key) const {
    const std::string& v = get(key);
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' is not an integer: '" + v + "'");
    }
}

std::uint64_t Config::get_seed() const {
    return static_cast<std::uint64_t>(get_int("seed"));
}

}  // namespace sdcn
