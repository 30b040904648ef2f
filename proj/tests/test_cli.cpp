#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "dfint/report.hpp"

using namespace dfint;
using namespace dfint::report;

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("1.5") == Complex(1.5, 0.0));
    CHECK(parse_complex("-2") == Complex(-2.0, 0.0));
    CHECK(parse_complex("1+2i") == Complex(1.0, 2.0));
    CHECK(parse_complex("1-2i") == Complex(1.0, -2.0));
    CHECK(parse_complex("-1e-3+0.5i") == Complex(-1e-3, 0.5));
    CHECK(parse_complex("2i") == Complex(0.0, 2.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("i") == Complex(0.0, 1.0));
    CHECK(parse_complex(" 0.6 - 0.2i ") == Complex(0.6, -0.2));
    CHECK(parse_complex("1e+2+1e-2i") == Complex(100.0, 0.01));
    CHECK_THROWS_AS(parse_complex("zzz"), UsageError);
    CHECK_THROWS_AS(parse_complex(""), UsageError);
}

TEST_CASE("complex round trip at 17 digits") {
    Complex v(0.12345678901234567, -9.876543210987654e-5);
    CHECK(parse_complex(format_complex(v)) == v);
}

namespace {
RunReport sample_report(double wall) {
    RunReport rep;
    rep.command = "eval H";
    rep.parameters = json{{"a", 0.3}, {"d", -0.4}};
    rep.tolerances = json{{"rel_tol", 1e-10}};
    rep.seed = 42;
    Row r;
    r.inputs = json{{"a", 0.3}, {"d", -0.4}};
    r.outputs = json{{"closed", complex_json(Complex(1.25, -2.5))},
                     {"rel_diff", 3.5e-11}};
    r.wall_ms = wall;
    rep.rows.push_back(r);
    return rep;
}
} // namespace

TEST_CASE("reports are byte-stable modulo wall time") {
    RunReport a = sample_report(1.0);
    RunReport b = sample_report(57.0);
    CHECK(a.stable_text() == b.stable_text());
    CHECK(a.to_json(true).dump() != b.to_json(true).dump());
}

TEST_CASE("csv and json carry identical numeric payloads") {
    RunReport rep = sample_report(3.0);
    std::string csv = rep.to_csv();
    // header + one row
    std::istringstream is(csv);
    std::string header, line;
    std::getline(is, header);
    std::getline(is, line);
    CHECK(header == "index,status,in.a,in.d,out.closed.im,out.closed.re,out.rel_diff");
    std::string want = "0,ok";
    for (double v : {0.3, -0.4, -2.5, 1.25, 3.5e-11}) want += "," + format_number(v);
    CHECK(line == want);

    // every numeric field in the JSON re-parses to the same value printed in CSV
    json j = rep.to_json(false);
    CHECK(format_number(j["rows"][0]["outputs"]["closed"]["re"].get<double>()) ==
          format_number(1.25));
}

TEST_CASE("report schema fields") {
    json j = sample_report(0.0).to_json(true);
    CHECK(j["schema"] == "dfint/1");
    CHECK(j["version"] == kVersion);
    CHECK(j["rows"][0].contains("wall_ms"));
    CHECK(sample_report(0.0).all_ok());
}

TEST_CASE("csv quotes values containing separators") {
    RunReport rep;
    rep.command = "green sectors";
    Row r;
    r.inputs = json{{"theta1", 0.1}};
    r.outputs = json{{"sectors", json::array({2, 4})}};
    rep.rows.push_back(r);
    std::string csv = rep.to_csv();
    CHECK(csv.find("\"[2,4]\"") != std::string::npos);
    std::istringstream is(csv);
    std::string header, line;
    std::getline(is, header);
    std::getline(is, line);
    // quoted field keeps the column count stable
    int commas = 0;
    bool quoted = false;
    for (char ch : line) {
        if (ch == '"') quoted = !quoted;
        if (ch == ',' && !quoted) ++commas;
    }
    CHECK(commas == 3);
}
