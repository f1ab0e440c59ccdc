#include <sstream>
#include <string>

#include "doctest.h"
#include "socev/io.hpp"
#include "support/test_util.hpp"

using namespace socev;

namespace {

std::string two_frame_csv() {
    // 23 objects (ball + 11 + 11) over two frames.
    std::ostringstream out;
    for (int f = 0; f < 2; ++f) {
        out << f << ",0,ball,none,0,52.50,34.00\n";
        for (int i = 1; i <= 11; ++i)
            out << f << ',' << i << ",player,home," << (i == 1) << ",20.00," << i * 5 << ".00\n";
        for (int i = 12; i <= 22; ++i)
            out << f << ',' << i << ",player,away," << (i == 12) << ",80.00," << (i - 11) * 5
                << ".00\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("load_trace parses a two-frame 23-object file") {
    std::istringstream in(two_frame_csv());
    Trace t = load_trace(in);
    CHECK(t.size() == 2);
    CHECK(t.roster().size() == 23);
    CHECK(t.ball_id() == 0);
    CHECK(t.position(0, 0).x == doctest::Approx(52.5));
    CHECK(t.object(1).goalkeeper);
    CHECK(t.object(12).team == Team::Away);
}

TEST_CASE("load_trace reports a frame missing the ball") {
    std::string csv =
        "0,0,ball,none,0,50.00,34.00\n"
        "0,1,player,home,0,20.00,30.00\n"
        "1,1,player,home,0,20.00,30.00\n";
    std::istringstream in(csv);
    CHECK_THROWS_WITH_AS(load_trace(in), doctest::Contains("missing object 0"), DataError);
}

TEST_CASE("load_trace reports non-contiguous frames") {
    std::string csv =
        "0,0,ball,none,0,50.00,34.00\n"
        "1,0,ball,none,0,50.00,34.00\n"
        "3,0,ball,none,0,50.00,34.00\n";
    std::istringstream in(csv);
    CHECK_THROWS_WITH_AS(load_trace(in), doctest::Contains("missing frame 2"), DataError);
}

TEST_CASE("load_trace rejects malformed rows") {
    std::istringstream bad_fields("0,0,ball,none,0,50.00\n");
    CHECK_THROWS_WITH_AS(load_trace(bad_fields), doctest::Contains("malformed record"), DataError);
    std::istringstream bad_team("0,0,ball,mars,0,50.00,34.00\n");
    CHECK_THROWS_AS(load_trace(bad_team), DataError);
    std::istringstream empty("");
    CHECK_THROWS_AS(load_trace(empty), DataError);
}

TEST_CASE("save/load round trip is byte identical on canonical input") {
    auto t = testutil::make_trace(2, 2);
    testutil::add_frame(t, {{50.25, 34}, {20, 30}, {22, 31}, {80, 30}, {82, 31}});
    testutil::add_frame(t, {{50.75, 34.5}, {20, 30}, {22, 31}, {80, 30}, {82, 31}});
    std::ostringstream first;
    save_trace(t, first);
    std::istringstream back(first.str());
    Trace reloaded = load_trace(back);
    std::ostringstream second;
    save_trace(reloaded, second);
    CHECK(first.str() == second.str());
}

TEST_CASE("load_events parses atomic and interval lines") {
    std::string jsonl =
        "{\"type\":\"Goal\",\"start\":900,\"end\":900,\"roles\":{\"Scorer\":7}}\n"
        "{\"type\":\"Pass\",\"start\":120,\"end\":160,\"roles\":"
        "{\"KickingPlayer\":3,\"ReceivingPlayer\":5}}\n";
    std::istringstream in(jsonl);
    EventLog log = load_events(in);
    REQUIRE(log.atomic.size() == 1);
    REQUIRE(log.complex.size() == 1);
    CHECK(log.atomic[0].type == AtomicType::Goal);
    CHECK(log.atomic[0].t == 900);
    CHECK(log.atomic[0].roles.at("Scorer") == 7);
    CHECK(log.complex[0].type == ComplexType::Pass);
    CHECK(log.complex[0].start == 120);
    CHECK(log.complex[0].end == 160);
}

TEST_CASE("load_events rejects unknown event types") {
    std::istringstream in("{\"type\":\"Nutmeg\",\"start\":1,\"end\":2,\"roles\":{}}\n");
    CHECK_THROWS_WITH_AS(load_events(in), doctest::Contains("Nutmeg"), DataError);
}

TEST_CASE("event log ordering is stable under reload") {
    std::string jsonl =
        "{\"type\":\"Pass\",\"start\":300,\"end\":340,\"roles\":"
        "{\"KickingPlayer\":3,\"ReceivingPlayer\":5}}\n"
        "{\"type\":\"KickingTheBall\",\"start\":10,\"end\":10,\"roles\":"
        "{\"KickingPlayer\":3,\"KickedObject\":0}}\n"
        "{\"type\":\"Pass\",\"start\":100,\"end\":140,\"roles\":"
        "{\"KickingPlayer\":5,\"ReceivingPlayer\":3}}\n";
    std::istringstream in(jsonl);
    EventLog log = load_events(in);
    log.sort_and_renumber();
    std::ostringstream out;
    save_events(log, out);
    std::istringstream back(out.str());
    EventLog again = load_events(back);
    std::ostringstream out2;
    save_events(again, out2);
    CHECK(out.str() == out2.str());
    CHECK(log.complex[0].start == 100);
}

TEST_CASE("validate flags invariant violations") {
    auto good = testutil::make_trace(2, 2);
    for (int i = 0; i < 100; ++i)
        testutil::add_frame(good, {{50, 34}, {20, 30}, {22, 31}, {80, 30}, {82, 31}});
    CHECK(validate(good).empty());

    auto bad = testutil::make_trace(2, 2);
    testutil::add_frame(bad, {{50, 34}, {9999, 30}, {22, 31}, {80, 30}, {82, 31}});
    auto diags = validate(bad);
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].code == "OutOfBounds");
    CHECK(diags[0].frame == 0);
    CHECK(diags[0].object_id == 1);

    std::vector<ObjectInfo> roster = {{0, ObjectClass::Ball, Team::None, false},
                                      {1, ObjectClass::Ball, Team::None, false}};
    Trace two_balls(roster, 30.0);
    testutil::add_frame(two_balls, {{50, 34}, {51, 34}});
    auto ball_diags = validate(two_balls);
    bool found = false;
    for (const auto& d : ball_diags) found = found || d.code == "DuplicateBall";
    CHECK(found);
}
