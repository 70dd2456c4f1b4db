#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace sdcn {

// Flat key=value configuration. Resolution order: command-line override,
// then config file, then built-in default. Unknown keys are hard errors.
class Config {
public:
    static Config defaults();
    static bool is_known_key(const std::string& key);

    // Applies key=value lines from a file ('#' comments allowed).
    void apply_file(const std::filesystem::path& path);
    // Applies one override; throws ConfigError on unknown keys.
    void set(const std::string& key, const std::string& value);

    const std::string& get(const std::string& key) const;
    bool has(const std::string& key) const;

    double get_double(const std::string& key) const;
    long long get_int(const std::string& key) const;
    std::uint64_t get_seed() const;

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

}  // namespace sdcn
