#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "demo.hpp"
#include "nets.hpp"
#include "netbn/format.hpp"

using namespace netbn;

namespace {

Assignment values(std::initializer_list<std::pair<int, bool>> pairs) {
    Assignment a;
    for (const auto& [var, value] : pairs) a.set(var, value);
    return a;
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
    CHECK_EQ(format_double(0.2), "0.2");
    CHECK_EQ(format_double(1.0), "1");
    CHECK_EQ(format_double(9467.0 / 10244.0), "0.9241507223740726");
    CHECK_EQ(std::stod(format_double(437.0 / 717.0)), 437.0 / 717.0);
}

TEST_CASE("format_fixed6 pins six fractional digits") {
    CHECK_EQ(format_fixed6(0.2), "0.200000");
    CHECK_EQ(format_fixed6(1.0), "1.000000");
    CHECK_EQ(format_fixed6(7000.0 / 9467.0), "0.739411");
    CHECK_EQ(format_fixed6(9467.0 / 10244.0), "0.924151");
    CHECK_EQ(format_fixed6(0.0), "0.000000");
}

TEST_CASE("render_assignment lists present events in index order") {
    auto events = nets::make_events(5);
    CHECK_EQ(render_assignment(values({{2, true}, {3, false}}), events),
             "{'E2': '1', 'E3': '0'}");
    CHECK_EQ(render_assignment(values({{5, true}}), events), "{'E5': '1'}");
    CHECK_EQ(render_assignment(Assignment{}, events), "{}");
    CHECK_EQ(render_assignment(
                 values({{1, true}, {2, true}, {3, false}, {4, true}, {5, true}}),
                 events),
             "{'E1': '1', 'E2': '1', 'E3': '0', 'E4': '1', 'E5': '1'}");
}

TEST_CASE("verdict and prediction lines") {
    auto events = nets::make_events(5);
    CHECK_EQ(render_verdict(FailureId{1, "F1"}), "Failure F1");
    CHECK_EQ(render_verdict(std::nullopt), "invalid event");

    auto full = values({{1, true}, {2, true}, {3, true}, {4, true}, {5, false}});
    CHECK_EQ(render_prediction(full, events, std::nullopt),
             "{'E1': '1', 'E2': '1', 'E3': '1', 'E4': '1', 'E5': '0'} --> "
             "invalid event");
    CHECK_EQ(render_prediction(values({{1, false}, {2, true}, {3, false},
                                       {4, true}, {5, true}}),
                               events, FailureId{3, "F3"}),
             "{'E1': '0', 'E2': '1', 'E3': '0', 'E4': '1', 'E5': '1'} --> "
             "Failure F3");
}

TEST_CASE("cpt_csv lays out every table row") {
    auto csv = cpt_csv(demo::model());
    CHECK(csv.rfind("event,parents,config,p0,p1,filler\n", 0) == 0);
    CHECK(csv.find("E1,,,0.075849,0.924151,0\n") != std::string::npos);
    CHECK(csv.find("E2,E1,0,0.000000,1.000000,0\n") != std::string::npos);
    CHECK(csv.find("E2,E1,1,0.075737,0.924263,0\n") != std::string::npos);
    CHECK(csv.find("E3,E1;E2,00,1.000000,0.000000,1\n") != std::string::npos);
    CHECK(csv.find("E3,E1;E2,11,0.800000,0.200000,0\n") != std::string::npos);
    CHECK(csv.find("E4,E2;E3,01,0.390516,0.609484,0\n") != std::string::npos);
    CHECK(csv.find("E5,E3;E4,11,1.000000,0.000000,0\n") != std::string::npos);

    // 1 + 2 + 4 + 4 + 4 table rows plus the header.
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK_EQ(lines, 16);
}
