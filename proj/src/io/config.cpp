// Copyright 2026 Polaug Contributors
// SPDX-License-Identifier: Apache-2.0

#include "io/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polaug::io {

void PipelineConfig::validate() const {
    if (!(flip_probability >= 0.0 && flip_probability <= 1.0))
        throw std::invalid_argument("config: flip_probability must be in [0, 1]");
    if (rotation_increment_deg <= 0 || 360 % rotation_increment_deg != 0)
        throw std::invalid_argument("config: rotation_increment_deg must divide 360");
    if (bit_depth != 8 && bit_depth != 16)
        throw std::invalid_argument("config: bit_depth must be 8 or 16");
    if (augments_per_image < 0)
        throw std::invalid_argument("config: augments_per_image must be non-negative");
    if (num_classes <= 0 || num_classes > 254)
        throw std::invalid_argument("config: num_classes out of range");
    layout.validate();
    (void)distinct_spec_capacity(rotation_increment_deg); // range check
    if (augments_per_image > distinct_spec_capacity(rotation_increment_deg))
        throw std::invalid_argument("config: augments_per_image exceeds distinct spec capacity");
}

namespace {

struct TomlValue {
    enum class Kind { string, integer, floating, boolean } kind;
    std::string str;
    long long i = 0;
    double f = 0.0;
    bool b = false;
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

TomlValue parse_value(const std::string& raw, const std::string& where) {
    TomlValue v{};
    if (raw.empty()) throw std::invalid_argument(where + ": missing value");
    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"')
            throw std::invalid_argument(where + ": unterminated string");
        v.kind = TomlValue::Kind::string;
        v.str = raw.substr(1, raw.size() - 2);
        return v;
    }
    if (raw == "true" || raw == "false") {
        v.kind = TomlValue::Kind::boolean;
        v.b = raw == "true";
        return v;
    }
    if (raw.find_first_of(".eE") == std::string::npos) {
        auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v.i);
        if (ec == std::errc{} && p == raw.data() + raw.size()) {
            v.kind = TomlValue::Kind::integer;
            return v;
        }
    }
    try {
        std::size_t pos = 0;
        v.f = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument("trailing garbage");
        v.kind = TomlValue::Kind::floating;
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": cannot parse value '" + raw + "'");
    }
}

long long as_int(const TomlValue& v, const std::string& where) {
    if (v.kind != TomlValue::Kind::integer)
        throw std::invalid_argument(where + ": expected an integer");
    return v.i;
}

double as_double(const TomlValue& v, const std::string& where) {
    if (v.kind == TomlValue::Kind::floating) return v.f;
    if (v.kind == TomlValue::Kind::integer) return static_cast<double>(v.i);
    throw std::invalid_argument(where + ": expected a number");
}

std::string as_string(const TomlValue& v, const std::string& where) {
    if (v.kind != TomlValue::Kind::string)
        throw std::invalid_argument(where + ": expected a quoted string");
    return v.str;
}

bool as_bool(const TomlValue& v, const std::string& where) {
    if (v.kind != TomlValue::Kind::boolean)
        throw std::invalid_argument(where + ": expected true or false");
    return v.b;
}

} // namespace

PipelineConfig parse_config_text(const std::string& text, const std::string& origin) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = origin + ":" + std::to_string(lineno);
        // Strip comments outside of strings.
        bool in_string = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_string = !in_string;
            if (line[i] == '#' && !in_string) {
                line.resize(i);
                break;
            }
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        if (stripped.front() == '[')
            throw std::invalid_argument(where + ": sections are not supported; use flat keys");
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(where + ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const TomlValue val = parse_value(trim(stripped.substr(eq + 1)), where);

        if (key == "input_dir") cfg.input_dir = as_string(val, where);
        else if (key == "label_dir") cfg.label_dir = as_string(val, where);
        else if (key == "output_dir") cfg.output_dir = as_string(val, where);
        else if (key == "layout") cfg.layout = SuperpixelLayout::parse(as_string(val, where));
        else if (key == "augments_per_image")
            cfg.augments_per_image = static_cast<int>(as_int(val, where));
        else if (key == "rotation_increment_deg")
            cfg.rotation_increment_deg = static_cast<int>(as_int(val, where));
        else if (key == "flip_probability") cfg.flip_probability = as_double(val, where);
        else if (key == "mode") cfg.mode = parse_augment_mode(as_string(val, where));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(as_int(val, where));
        else if (key == "bit_depth") cfg.bit_depth = static_cast<int>(as_int(val, where));
        else if (key == "num_classes") cfg.num_classes = static_cast<int>(as_int(val, where));
        else if (key == "allow_missing") cfg.allow_missing = as_bool(val, where);
        else throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path.string() + ": cannot open config");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

} // namespace polaug::io
