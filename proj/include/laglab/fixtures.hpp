#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "laglab/types.hpp"

namespace laglab {

// Calibrated constants live in a versioned key-value text file, written once
// by `lab calibrate` and checked in. Experiments refuse to run when the file
// hash does not match the value compiled into the binary, so a silent
// recalibration cannot change what the suite asserts.

class Fixtures {
  public:
    Fixtures() = default;

    void set(const std::string& key, double value) { values_[key] = value; }

    double get(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) throw domain_error("fixture key missing: " + key);
        return it->second;
    }
    bool has(const std::string& key) const { return values_.count(key) != 0; }

    /// FNV-1a over the canonical serialization (excluding the hash line).
    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (const auto& [k, v] : values_) {
            std::string line = k + " " + format_double(v) + "\n";
            for (unsigned char c : line) {
                h ^= c;
                h *= 1099511628211ull;
            }
        }
        return h;
    }

    std::string serialize() const {
        std::ostringstream os;
        os << "laglab-fixtures v1\n";
        for (const auto& [k, v] : values_) os << k << " " << format_double(v) << "\n";
        char buf[24];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash()));
        os << "hash " << buf << "\n";
        return os.str();
    }

    void save(const std::filesystem::path& path) const {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw numerical_error("cannot write fixtures: " + path.string());
        os << serialize();
    }

    static Fixtures load(const std::filesystem::path& path) {
        std::ifstream is(path);
        if (!is) throw domain_error("cannot read fixtures: " + path.string());
        std::string header;
        std::getline(is, header);
        if (header != "laglab-fixtures v1")
            throw domain_error("fixtures: unsupported header '" + header + "'");
        Fixtures fx;
        std::string key;
        std::string stored_hash;
        while (is >> key) {
            if (key == "hash") {
                is >> stored_hash;
                break;
            }
            double v;
            is >> v;
            fx.values_[key] = v;
        }
        if (!stored_hash.empty()) {
            char buf[24];
            std::snprintf(buf, sizeof(buf), "%016llx",
                          static_cast<unsigned long long>(fx.hash()));
            if (stored_hash != buf)
                throw domain_error("fixtures: stored hash mismatch (file was edited?)");
        }
        return fx;
    }

    const std::map<std::string, double>& all() const { return values_; }

  private:
    std::map<std::string, double> values_;
};

} // namespace laglab
