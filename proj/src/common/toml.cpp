#include "reco/common/toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "reco/common/error.hpp"

namespace reco::toml {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("toml: line " + std::to_string(line) + ": " + msg);
}

// Removes a trailing comment, ignoring '#' inside quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_str = !in_str;
        if (c == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

std::string parse_quoted(const std::string& text, int line) {
    std::string out;
    for (std::size_t i = 1; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '\\') {
            if (i + 1 >= text.size()) fail(line, "dangling escape");
            const char e = text[++i];
            switch (e) {
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                default: fail(line, std::string("unsupported escape \\") + e);
            }
        } else if (c == '"') {
            if (i + 1 != text.size()) fail(line, "trailing characters after string");
            return out;
        } else {
            out.push_back(c);
        }
    }
    fail(line, "unterminated string");
}

Value parse_value(const std::string& raw, int line);

Value parse_array(const std::string& raw, int line) {
    Value v;
    v.kind = Value::Kind::array;
    std::string body = trim(raw.substr(1, raw.size() - 2));
    if (body.empty()) return v;
    int depth = 0;
    bool in_str = false;
    std::string cur;
    for (std::size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (c == '"' && (i == 0 || body[i - 1] != '\\')) in_str = !in_str;
        if (!in_str) {
            if (c == '[') ++depth;
            if (c == ']') --depth;
            if (c == ',' && depth == 0) {
                v.arr.push_back(parse_value(trim(cur), line));
                cur.clear();
                continue;
            }
        }
        cur.push_back(c);
    }
    if (!trim(cur).empty()) v.arr.push_back(parse_value(trim(cur), line));
    return v;
}

Value parse_value(const std::string& raw, int line) {
    if (raw.empty()) fail(line, "empty value");
    Value v;
    if (raw.front() == '"') {
        v.kind = Value::Kind::string;
        v.s = parse_quoted(raw, line);
        return v;
    }
    if (raw.front() == '[') {
        if (raw.back() != ']') fail(line, "unterminated array");
        return parse_array(raw, line);
    }
    if (raw == "true" || raw == "false") {
        v.kind = Value::Kind::boolean;
        v.b = (raw == "true");
        return v;
    }
    const bool looks_int = raw.find_first_not_of("+-0123456789_") == std::string::npos;
    std::string digits;
    for (char c : raw)
        if (c != '_') digits.push_back(c);
    if (looks_int) {
        std::int64_t out = 0;
        const auto* first = digits.data();
        const auto* last = digits.data() + digits.size();
        if (first != last && *first == '+') ++first;
        const auto r = std::from_chars(first, last, out);
        if (r.ec == std::errc() && r.ptr == last) {
            v.kind = Value::Kind::integer;
            v.i = out;
            return v;
        }
    }
    try {
        std::size_t used = 0;
        const double d = std::stod(digits, &used);
        if (used == digits.size()) {
            v.kind = Value::Kind::real;
            v.d = d;
            return v;
        }
    } catch (const std::exception&) {
    }
    fail(line, "cannot parse value '" + raw + "'");
}

} // namespace

std::int64_t Table::get_int(const std::string& key, std::int64_t fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (it->second.kind != Value::Kind::integer) throw ConfigError("key '" + key + "' is not an integer");
    return it->second.i;
}

double Table::get_real(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (it->second.kind != Value::Kind::real && it->second.kind != Value::Kind::integer)
        throw ConfigError("key '" + key + "' is not a number");
    return it->second.as_real();
}

bool Table::get_bool(const std::string& key, bool fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (it->second.kind != Value::Kind::boolean) throw ConfigError("key '" + key + "' is not a boolean");
    return it->second.b;
}

std::string Table::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    if (it->second.kind != Value::Kind::string) throw ConfigError("key '" + key + "' is not a string");
    return it->second.s;
}

std::vector<double> Table::get_real_array(const std::string& key) const {
    auto it = values.find(key);
    std::vector<double> out;
    if (it == values.end()) return out;
    if (it->second.kind != Value::Kind::array) throw ConfigError("key '" + key + "' is not an array");
    for (const auto& v : it->second.arr) out.push_back(v.as_real());
    return out;
}

std::vector<std::string> Table::get_string_array(const std::string& key) const {
    auto it = values.find(key);
    std::vector<std::string> out;
    if (it == values.end()) return out;
    if (it->second.kind != Value::Kind::array) throw ConfigError("key '" + key + "' is not an array");
    for (const auto& v : it->second.arr) {
        if (v.kind != Value::Kind::string) throw ConfigError("key '" + key + "' holds non-string entries");
        out.push_back(v.s);
    }
    return out;
}

std::int64_t Table::require_int(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key '" + key + "'");
    return get_int(key, 0);
}

double Table::require_real(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key '" + key + "'");
    return get_real(key, 0.0);
}

std::string Table::require_string(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key '" + key + "'");
    return get_string(key, "");
}

const std::vector<Table>& Document::tables(const std::string& name) const {
    static const std::vector<Table> empty;
    auto it = arrays.find(name);
    return it == arrays.end() ? empty : it->second;
}

Document parse(const std::string& text) {
    Document doc;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    std::string prefix;       // active [table] prefix
    Table* array_entry = nullptr;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.size() >= 4 && line.substr(0, 2) == "[[") {
            if (line.substr(line.size() - 2) != "]]") fail(line_no, "malformed array header");
            const std::string name = trim(line.substr(2, line.size() - 4));
            if (name.empty()) fail(line_no, "empty array header");
            doc.arrays[name].emplace_back();
            array_entry = &doc.arrays[name].back();
            prefix.clear();
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "malformed table header");
            prefix = trim(line.substr(1, line.size() - 2));
            if (prefix.empty()) fail(line_no, "empty table header");
            array_entry = nullptr;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");
        const Value value = parse_value(val, line_no);
        if (array_entry != nullptr) {
            array_entry->values[key] = value;
        } else {
            const std::string full = prefix.empty() ? key : prefix + "." + key;
            doc.root.values[full] = value;
        }
    }
    return doc;
}

Document parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

} // namespace reco::toml
