#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "socev/atomic.hpp"
#include "socev/dsl.hpp"
#include "socev/scenario.hpp"

using namespace socev;

namespace {

const char* kPassRule =
    "complex Pass: seq(KickingTheBall as k, atomic BallPossession as p) within 90 "
    "where team(k.KickingPlayer) == team(p.PossessingPlayer) "
    "and k.KickingPlayer != p.PossessingPlayer "
    "emit roles {KickingPlayer: k.KickingPlayer, ReceivingPlayer: p.PossessingPlayer}";

}  // namespace

TEST_CASE("parse accepts the single-rule example") {
    auto asts = dsl::parse(kPassRule);
    REQUIRE(asts.size() == 1);
    CHECK(asts[0].name == "Pass");
    CHECK(asts[0].pattern.op == PatternOp::Seq);
    REQUIRE(asts[0].pattern.operands.size() == 2);
    CHECK(asts[0].pattern.operands[0].alias == "k");
    CHECK(asts[0].pattern.operands[1].force_atomic);
    CHECK(asts[0].pattern.within == 90);
    CHECK(asts[0].where.has_value());
    CHECK(asts[0].emits.size() == 2);
}

TEST_CASE("empty source parses to an empty rule list") {
    CHECK(dsl::parse("").empty());
    CHECK(dsl::parse("   \n\t  \n").empty());
}

TEST_CASE("seq requires at least two operands") {
    std::string bad = "complex X: seq(KickingTheBall as k) within 10 "
                      "emit roles {KickingPlayer: k.KickingPlayer}";
    CHECK_THROWS_AS(dsl::parse(bad), dsl::SyntaxError);
}

TEST_CASE("syntax errors carry positions inside the input") {
    std::string bad = "complex X:\n  seq(KickingTheBall as k,) within 5";
    try {
        dsl::parse(bad);
        FAIL("expected SyntaxError");
    } catch (const dsl::SyntaxError& e) {
        CHECK(e.pos.line >= 1);
        CHECK(e.pos.line <= 2);
        CHECK(e.pos.col >= 1);
    }
}

TEST_CASE("builtin source compiles to twelve rules") {
    auto asts = dsl::parse(dsl::builtin_source());
    CHECK(!asts.empty());
    auto compiled = dsl::check_and_compile(asts);
    CHECK(compiled.rules.size() == 12);
    bool saw_saved_shot_union = false;
    for (const auto& r : compiled.rules)
        if (r.type == ComplexType::SavedShot) saw_saved_shot_union = r.alternatives.size() == 2;
    CHECK(saw_saved_shot_union);  // deflection or possession by the goalkeeper
}

TEST_CASE("unknown role is rejected with a position") {
    std::string bad =
        "complex Pass: seq(KickingTheBall as k, atomic BallPossession as p) within 9 "
        "where team(k.Striker) == team(p.PossessingPlayer) "
        "emit roles {KickingPlayer: k.KickingPlayer}";
    try {
        dsl::check_and_compile(dsl::parse(bad));
        FAIL("expected CompileError");
    } catch (const dsl::CompileError& e) {
        CHECK(e.kind == dsl::CompileError::Kind::UnknownRole);
        CHECK(e.pos.line >= 1);
        CHECK(std::string(e.what()).find("Striker") != std::string::npos);
    }
}

TEST_CASE("mutually recursive rules are a cycle") {
    std::string cyc =
        "complex Pass: seq(ShotOut as a, atomic BallPossession as p) within 9 "
        "emit roles {KickingPlayer: p.PossessingPlayer}\n"
        "complex ShotOut: seq(Pass as a, atomic BallOut as o) within 9 "
        "emit roles {Shooter: a.KickingPlayer}";
    try {
        dsl::check_and_compile(dsl::parse(cyc));
        FAIL("expected CompileError");
    } catch (const dsl::CompileError& e) {
        CHECK(e.kind == dsl::CompileError::Kind::CyclicDependency);
    }
}

TEST_CASE("unknown event types are rejected") {
    std::string bad = "complex Shot: seq(Nutmeg as n, atomic BallOut as o) within 9 "
                      "emit roles {Shooter: o.OutObject}";
    try {
        dsl::check_and_compile(dsl::parse(bad));
        FAIL("expected CompileError");
    } catch (const dsl::CompileError& e) {
        CHECK(e.kind == dsl::CompileError::Kind::UnknownEvent);
    }
}

TEST_CASE("deleting the Pass rule breaks its dependents") {
    std::string src = dsl::builtin_source();
    auto start = src.find("complex Pass:");
    REQUIRE(start != std::string::npos);
    auto next = src.find("complex ", start + 1);
    REQUIRE(next != std::string::npos);
    src.erase(start, next - start);
    try {
        dsl::check_and_compile(dsl::parse(src));
        FAIL("expected CompileError");
    } catch (const dsl::CompileError& e) {
        CHECK(e.kind == dsl::CompileError::Kind::UnknownEvent);
    }
}

TEST_CASE("parse then pretty_print then parse is a fixed point") {
    auto first = dsl::parse(dsl::builtin_source());
    auto printed = dsl::pretty_print(first);
    auto second = dsl::parse(printed);
    CHECK(dsl::ast_equal(first, second));
    // and printing again is textually stable
    CHECK(dsl::pretty_print(second) == printed);
}

TEST_CASE("the shipped rule file matches the embedded builtin source") {
    std::ifstream in(std::string(SOCEV_REPO_DIR) + "/rules/builtin.cer");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(dsl::ast_equal(dsl::parse(buf.str()), dsl::parse(dsl::builtin_source())));
}

TEST_CASE("compiled builtins find PassThenGoal on a scripted scenario") {
    auto gen = generate_scenario({ScenarioKind::PassThenGoal, 15.0, 3.0, 31});
    auto atoms = detect_atomic(gen.trace, reference_parameters());
    auto complex = detect_complex(atoms, gen.trace, dsl::compile_builtin());
    bool found = false;
    for (const auto& e : complex) found = found || e.type == ComplexType::PassThenGoal;
    CHECK(found);
}
