#include "nhse/cli.hpp"

#include "nhse/errors.hpp"
#include "nhse/numfmt.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

namespace nhse::cli {

namespace {

const std::set<std::string> kSections{"lattice", "drive", "run", "output"};

std::string full_key(const std::string& section, const std::string& key) { return section + "." + key; }

void check_section(const std::string& section, const std::string& where) {
    if (!kSections.contains(section)) {
        throw ConfigError(where + ": unknown section [" + section + "], expected lattice, drive, run or output");
    }
}

std::string text_of(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_double(v.get<double>());
    throw ConfigError("manifest config values must be scalars");
}

}  // namespace

Config Config::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    Config cfg;
    if (path.extension() == ".json") {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(path.string() + ": " + e.what());
        }
        const auto it = doc.find("config");
        if (it == doc.end() || !it->is_object()) throw ConfigError(path.string() + ": no \"config\" object");
        for (const auto& [section, entries] : it->items()) {
            check_section(section, path.string());
            if (!entries.is_object()) throw ConfigError(path.string() + ": section " + section + " is not an object");
            for (const auto& [key, value] : entries.items()) cfg.set(section, key, text_of(value));
        }
        return cfg;
    }

    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(path.string() + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    for (const auto& [section, entries] : tree) {
        if (entries.empty()) throw ConfigError(path.string() + ": key '" + section + "' outside any section");
        check_section(section, path.string());
        for (const auto& [key, value] : entries) cfg.set(section, key, value.data());
    }
    return cfg;
}

void Config::set(const std::string& assignment) {
    const auto eq = assignment.find('=');
    const auto dot = assignment.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
        throw ConfigError("--set expects section.key=value, got '" + assignment + "'");
    }
    set(boost::algorithm::trim_copy(assignment.substr(0, dot)),
        boost::algorithm::trim_copy(assignment.substr(dot + 1, eq - dot - 1)), assignment.substr(eq + 1));
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
    check_section(section, full_key(section, key));
    if (key.empty()) throw ConfigError("empty key in section [" + section + "]");
    values_[full_key(section, key)] = boost::algorithm::trim_copy(value);
}

bool Config::has(const std::string& section, const std::string& key) const {
    return values_.contains(full_key(section, key));
}

std::optional<std::string> Config::raw(const std::string& section, const std::string& key) const {
    const auto it = values_.find(full_key(section, key));
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

void Config::record(const std::string& section, const std::string& key, const std::string& value) {
    used_[full_key(section, key)] = value;
}

std::string Config::get_string(const std::string& section, const std::string& key, const std::string& fallback) {
    const std::string v = raw(section, key).value_or(fallback);
    record(section, key, v);
    return v;
}

double Config::get_double(const std::string& section, const std::string& key, double fallback) {
    const auto v = raw(section, key);
    if (!v) {
        record(section, key, format_double(fallback));
        return fallback;
    }
    double x = 0.0;
    try {
        x = parse_double(*v);
    } catch (const std::invalid_argument&) {
        throw ConfigError(full_key(section, key) + ": expected a real number, got '" + *v + "'");
    }
    if (!std::isfinite(x)) throw ConfigError(full_key(section, key) + ": value must be finite");
    record(section, key, *v);
    return x;
}

int Config::get_int(const std::string& section, const std::string& key, int fallback) {
    const auto v = raw(section, key);
    if (!v) {
        record(section, key, std::to_string(fallback));
        return fallback;
    }
    int x = 0;
    const auto [end, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc() || end != v->data() + v->size()) {
        throw ConfigError(full_key(section, key) + ": expected an integer, got '" + *v + "'");
    }
    record(section, key, *v);
    return x;
}

bool Config::get_bool(const std::string& section, const std::string& key, bool fallback) {
    const auto v = raw(section, key);
    if (!v) {
        record(section, key, fallback ? "true" : "false");
        return fallback;
    }
    bool x = false;
    if (*v == "true" || *v == "1" || *v == "yes") {
        x = true;
    } else if (!(*v == "false" || *v == "0" || *v == "no")) {
        throw ConfigError(full_key(section, key) + ": expected true or false, got '" + *v + "'");
    }
    record(section, key, *v);
    return x;
}

std::vector<double> Config::get_list(const std::string& section, const std::string& key,
                                     const std::vector<double>& fallback) {
    const auto v = raw(section, key);
    if (!v) {
        std::string text;
        for (std::size_t i = 0; i < fallback.size(); ++i) text += (i ? "," : "") + format_double(fallback[i]);
        record(section, key, text);
        return fallback;
    }
    const std::string name = full_key(section, key);
    auto number = [&](const std::string& s) {
        try {
            return parse_double(boost::algorithm::trim_copy(s));
        } catch (const std::invalid_argument&) {
            throw ConfigError(name + ": bad number '" + s + "' in list");
        }
    };
    std::vector<double> out;
    if (v->find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(*v);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 3) throw ConfigError(name + ": range must be lo:hi:n");
        const double lo = number(parts[0]);
        const double hi = number(parts[1]);
        const double n = number(parts[2]);
        if (n < 1 || n != std::floor(n) || n > 1e6) throw ConfigError(name + ": range count must be an integer >= 1");
        const auto count = static_cast<int>(n);
        for (int i = 0; i < count; ++i) out.push_back(count == 1 ? lo : (lo * (count - 1 - i) + hi * i) / (count - 1));
    } else if (!boost::algorithm::trim_copy(*v).empty()) {
        std::stringstream ss(*v);
        for (std::string part; std::getline(ss, part, ',');) out.push_back(number(part));
    }
    record(section, key, *v);
    return out;
}

std::vector<int> Config::get_int_list(const std::string& section, const std::string& key,
                                      const std::vector<int>& fallback) {
    const std::vector<double> values = get_list(section, key, std::vector<double>(fallback.begin(), fallback.end()));
    std::vector<int> out;
    for (double x : values) {
        if (x != std::floor(x) || std::fabs(x) > 1e9) {
            throw ConfigError(full_key(section, key) + ": expected integers, got " + format_double(x));
        }
        out.push_back(static_cast<int>(x));
    }
    return out;
}

void Config::reject_unused() const {
    for (const auto& [key, value] : values_) {
        if (!used_.contains(key)) throw ConfigError(key + ": unknown key for this command");
    }
}

std::string run_id_for(const std::string& command, const std::map<std::string, std::string>& snapshot) {
    // FNV-1a over the command and every setting that can change the results
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto feed = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        h ^= 0xff;
        h *= 0x100000001b3ull;
    };
    feed(command);
    for (const auto& [key, value] : snapshot) {
        if (key == "output.dir" || key == "run.threads") continue;
        feed(key);
        feed(value);
    }
    std::ostringstream os;
    os << command << '-' << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

}  // namespace nhse::cli
