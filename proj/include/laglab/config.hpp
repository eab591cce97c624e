#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "laglab/types.hpp"

namespace laglab {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat INI-style configuration: [section] headers, key = value lines,
/// '#' or ';' comments. Keys are exposed as "section.key".
class Config {
  public:
    static Config parse_file(const std::filesystem::path& path) {
        std::ifstream is(path);
        if (!is) throw config_error("cannot open config: " + path.string());
        std::stringstream ss;
        ss << is.rdbuf();
        return parse(ss.str());
    }

    static Config parse(const std::string& text) {
        Config c;
        std::istringstream is(text);
        std::string line, section;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            auto hash = line.find_first_of("#;");
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    throw config_error("config line " + std::to_string(lineno) +
                                       ": unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw config_error("config line " + std::to_string(lineno) +
                                   ": expected key = value");
            std::string key = trim(line.substr(0, eq));
            std::string val = trim(line.substr(eq + 1));
            if (key.empty()) throw config_error("config line " + std::to_string(lineno) +
                                                ": empty key");
            c.values_[section.empty() ? key : section + "." + key] = val;
        }
        return c;
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_str(const std::string& key, const std::string& def = "") const {
        auto it = values_.find(key);
        return it == values_.end() ? def : it->second;
    }
    std::string require_str(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw config_error("config: missing key '" + key + "'");
        return it->second;
    }

    double get_double(const std::string& key, double def) const {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        return to_double(it->second, key);
    }
    long get_long(const std::string& key, long def) const {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        return to_long(it->second, key);
    }

    std::vector<double> get_double_list(const std::string& key,
                                        const std::vector<double>& def) const {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        std::vector<double> out;
        for (const auto& tok : split(it->second)) out.push_back(to_double(tok, key));
        if (out.empty()) throw config_error("config: empty list for '" + key + "'");
        return out;
    }
    std::vector<long> get_long_list(const std::string& key, const std::vector<long>& def) const {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        std::vector<long> out;
        for (const auto& tok : split(it->second)) out.push_back(to_long(tok, key));
        if (out.empty()) throw config_error("config: empty list for '" + key + "'");
        return out;
    }

    const std::map<std::string, std::string>& all() const { return values_; }

  private:
    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }
    static std::vector<std::string> split(const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                if (!trim(cur).empty()) out.push_back(trim(cur));
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!trim(cur).empty()) out.push_back(trim(cur));
        return out;
    }
    static double to_double(const std::string& s, const std::string& key) {
        try {
            size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (...) {
            throw config_error("config: bad numeric value '" + s + "' for '" + key + "'");
        }
    }
    static long to_long(const std::string& s, const std::string& key) {
        try {
            size_t pos = 0;
            long v = std::stol(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (...) {
            throw config_error("config: bad integer value '" + s + "' for '" + key + "'");
        }
    }

    std::map<std::string, std::string> values_;
};

/// Write-to-temp-then-rename; no partially written outputs on any error path.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw numerical_error("cannot write " + tmp.string());
        os << content;
        os.flush();
        if (!os) throw numerical_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace laglab
