// cli.hpp: configuration, run directories and the subcommands of the nhse tool.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nhse::cli {

// Flat section.key -> value store. Later sources override earlier ones:
// built-in defaults < config file < --set overrides < dedicated flags (--out, --threads, --seed).
class Config {
public:
    // INI file with [lattice], [drive], [run], [output] sections, or a manifest.json whose
    // "config" object is read back. Throws ConfigError / IoError.
    static Config from_file(const std::filesystem::path& path);

    // "section.key=value"
    void set(const std::string& assignment);
    void set(const std::string& section, const std::string& key, const std::string& value);

    bool has(const std::string& section, const std::string& key) const;

    // Typed accessors record the value actually used (default included) in the snapshot.
    std::string get_string(const std::string& section, const std::string& key, const std::string& fallback);
    double get_double(const std::string& section, const std::string& key, double fallback);
    int get_int(const std::string& section, const std::string& key, int fallback);
    bool get_bool(const std::string& section, const std::string& key, bool fallback);
    // Comma list "a,b,c" or linspace "lo:hi:n".
    std::vector<double> get_list(const std::string& section, const std::string& key,
                                 const std::vector<double>& fallback);
    std::vector<int> get_int_list(const std::string& section, const std::string& key, const std::vector<int>& fallback);

    // Throws ConfigError naming the first explicitly set key no accessor read.
    void reject_unused() const;

    // Every value read so far, keyed "section.key".
    const std::map<std::string, std::string>& snapshot() const { return used_; }
    const std::map<std::string, std::string>& explicit_values() const { return values_; }

private:
    std::optional<std::string> raw(const std::string& section, const std::string& key) const;
    void record(const std::string& section, const std::string& key, const std::string& value);

    std::map<std::string, std::string> values_;
    std::map<std::string, std::string> used_;
};

std::string run_id_for(const std::string& command, const std::map<std::string, std::string>& snapshot);

struct RunResult {
    int exit_code{0};
    std::string run_id;
    std::filesystem::path directory;
    std::vector<std::string> outputs;
};

// Runs one subcommand with a fully assembled configuration; writes its outputs and
// manifest.json into <output.dir>/<run id>/. Library exceptions propagate.
RunResult run_command(const std::string& command, Config& cfg);

// Entry point of the executable: argument parsing plus exception to exit-code mapping
// (0 success, 2 configuration, 3 numerical, 4 I/O).
int main(int argc, char** argv);

}  // namespace nhse::cli
