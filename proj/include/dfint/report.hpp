#ifndef DFINT_REPORT_HPP
#define DFINT_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dfint/special.hpp"

namespace dfint::report {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "dfint/1";

using json = nlohmann::ordered_json;

struct Row {
    json inputs;
    json outputs;
    std::string status = "ok";
    double wall_ms = 0.0;
};

struct RunReport {
    std::string command;
    json parameters;
    json tolerances;
    std::uint64_t seed = 0;
    bool thresholds_passed = true;
    std::vector<Row> rows;

    json to_json(bool include_wall = true) const;
    std::string to_csv() const;
    /// Serialization with volatile fields (wall time) stripped; used for
    /// run-to-run stability checks.
    std::string stable_text() const;
    bool all_ok() const;
};

/// Parse "a", "a+bi", "a-bi", "bi", "i", "-i" (exponents allowed).
Complex parse_complex(const std::string& text);
std::string format_complex(Complex v);
std::string format_number(double v);  // 17 significant digits
json complex_json(Complex v);

} // namespace dfint::report

#endif
