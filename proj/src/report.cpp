#include "dfint/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace dfint::report {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json complex_json(Complex v) {
    return json{{"re", v.real()}, {"im", v.imag()}};
}

std::string format_complex(Complex v) {
    std::string s = format_number(v.real());
    s += (v.imag() < 0.0) ? "-" : "+";
    s += format_number(std::abs(v.imag()));
    s += "i";
    return s;
}

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw UsageError("empty complex literal");

    auto to_double = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(t, &pos);
        } catch (const std::exception&) {
            throw UsageError("bad numeric literal '" + t + "'");
        }
        if (pos != t.size()) throw UsageError("bad numeric literal '" + t + "'");
        return v;
    };

    if (s.back() == 'i') {
        std::string body = s.substr(0, s.size() - 1);
        // split at the last sign that is neither leading nor an exponent sign
        std::size_t split = std::string::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            char ch = body[i];
            if ((ch == '+' || ch == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) return {0.0, to_double(body)};
        std::string re = body.substr(0, split);
        std::string im = body.substr(split);  // keeps the sign
        return {to_double(re), to_double(im)};
    }
    return {to_double(s), 0.0};
}

bool RunReport::all_ok() const {
    for (const auto& r : rows)
        if (r.status != "ok") return false;
    return thresholds_passed;
}

json RunReport::to_json(bool include_wall) const {
    json out;
    out["schema"] = kSchema;
    out["version"] = kVersion;
    out["command"] = command;
    out["parameters"] = parameters;
    out["tolerances"] = tolerances;
    out["seed"] = seed;
    out["thresholds_passed"] = thresholds_passed;
    json jrows = json::array();
    for (const auto& r : rows) {
        json jr;
        jr["inputs"] = r.inputs;
        jr["outputs"] = r.outputs;
        jr["status"] = r.status;
        if (include_wall) jr["wall_ms"] = r.wall_ms;
        jrows.push_back(std::move(jr));
    }
    out["rows"] = std::move(jrows);
    return out;
}

std::string RunReport::stable_text() const {
    return to_json(false).dump(2);
}

namespace {

// flatten {"k": {"re":..,"im":..}} to k.re / k.im columns, scalars as-is
void flatten_into(const json& obj, const std::string& prefix,
                  std::map<std::string, std::string>& out) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string key = prefix + it.key();
        const json& v = it.value();
        if (v.is_object() && v.contains("re") && v.contains("im") && v.size() == 2) {
            out[key + ".re"] = format_number(v["re"].get<double>());
            out[key + ".im"] = format_number(v["im"].get<double>());
        } else if (v.is_object()) {
            flatten_into(v, key + ".", out);
        } else if (v.is_number()) {
            out[key] = format_number(v.get<double>());
        } else if (v.is_boolean()) {
            out[key] = v.get<bool>() ? "true" : "false";
        } else if (v.is_string()) {
            out[key] = v.get<std::string>();
        } else {
            out[key] = v.dump();
        }
    }
}

} // namespace

namespace {

std::string csv_escape(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char ch : v) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

std::string RunReport::to_csv() const {
    std::vector<std::map<std::string, std::string>> flat(rows.size());
    std::set<std::string> columns;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        flatten_into(rows[i].inputs, "in.", flat[i]);
        flatten_into(rows[i].outputs, "out.", flat[i]);
        for (const auto& kv : flat[i]) columns.insert(kv.first);
    }
    std::string out = "index,status";
    for (const auto& c : columns) out += "," + csv_escape(c);
    out += "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += std::to_string(i) + "," + csv_escape(rows[i].status);
        for (const auto& c : columns) {
            auto it = flat[i].find(c);
            out += ",";
            if (it != flat[i].end()) out += csv_escape(it->second);
        }
        out += "\n";
    }
    return out;
}

} // namespace dfint::report
