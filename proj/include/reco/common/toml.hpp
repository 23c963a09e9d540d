#pragma once

// Minimal TOML reader covering the subset the config schema uses:
// [table] headers, [[array-of-table]] headers, dotted keys, strings,
// integers, floats, booleans and flat arrays. No vendored TOML library
// is available, so this is kept deliberately small.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reco::toml {

struct Value {
    enum class Kind { integer, real, boolean, string, array };
    Kind kind = Kind::integer;
    std::int64_t i = 0;
    double d = 0.0;
    bool b = false;
    std::string s;
    std::vector<Value> arr;

    double as_real() const { return kind == Kind::integer ? double(i) : d; }
};

struct Table {
    std::map<std::string, Value> values; // dotted keys relative to the table

    bool has(const std::string& key) const { return values.count(key) != 0; }

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_real(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_real_array(const std::string& key) const;
    std::vector<std::string> get_string_array(const std::string& key) const;

    std::int64_t require_int(const std::string& key) const;
    double require_real(const std::string& key) const;
    std::string require_string(const std::string& key) const;
};

struct Document {
    Table root;                                      // scalar keys, full dotted paths
    std::map<std::string, std::vector<Table>> arrays; // [[name]] entries

    const std::vector<Table>& tables(const std::string& name) const;
};

Document parse(const std::string& text);
Document parse_file(const std::string& path);

} // namespace reco::toml
