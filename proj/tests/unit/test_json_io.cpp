#include "doctest.h"

#include <cmath>
#include <limits>

#include "rgc/json_io.hpp"
#include "rgc/point_process.hpp"

using namespace rgc;

TEST_CASE("doubles survive a text round trip") {
    const double values[] = {0.1, 1.0 / 3, 2.0 / 3 * 1e-300, 123456789.123456789, -0.0};
    for (double v : values) {
        const std::string s = dump_json(nlohmann::json{{"v", v}});
        CHECK(nlohmann::json::parse(s).at("v").get<double>() == v);
    }
    CHECK(dump_json(nlohmann::json{{"v", std::numeric_limits<double>::infinity()}}) == R"({"v":null})");
    CHECK(dump_json(nlohmann::json{{"v", 0.1}}) == R"({"v":0.10000000000000001})");
}

TEST_CASE("configuration file round trip") {
    const PointConfiguration c = sample(ProcessLaw::poisson(25), TorusSpec{2, 1.0}, SeedSpec{1, 1});
    const std::string path = "rgc_json_io_test.json";
    write_text_file(path, dump_json(to_json(c), 2));
    CHECK(configuration_from_json(read_json_file(path)) == c);
    std::remove(path.c_str());
}
