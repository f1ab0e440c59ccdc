#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "socev/complex.hpp"

namespace socev::dsl {

struct SourcePos {
    int line = 1;
    int col = 1;
    bool operator==(const SourcePos&) const = default;
};

struct SyntaxError : std::runtime_error {
    SourcePos pos;
    SyntaxError(SourcePos p, const std::string& msg)
        : std::runtime_error("syntax error at " + std::to_string(p.line) + ":" +
                             std::to_string(p.col) + ": " + msg),
          pos(p) {}
};

struct CompileError : std::runtime_error {
    enum class Kind { UnknownEvent, UnknownRole, TypeMismatch, CyclicDependency };
    Kind kind;
    SourcePos pos;
    CompileError(Kind k, SourcePos p, const std::string& msg)
        : std::runtime_error(msg + " (at " + std::to_string(p.line) + ":" +
                             std::to_string(p.col) + ")"),
          kind(k), pos(p) {}
};

struct RoleRefAst {
    std::string alias;
    std::string role;
    SourcePos pos;
};

struct PredAst {
    enum class Kind {
        TeamEq, TeamNe, IdEq, IdNe, Goalkeeper, Zone, AheadOfDefence, OnTarget, And, Or, Not
    };
    Kind kind = Kind::And;
    RoleRefAst a, b;
    std::string zone;          // Zone
    std::string time_alias;    // AheadOfDefence
    std::string alias;         // OnTarget
    SourcePos pos;
    std::vector<PredAst> children;
};

struct OperandAst {
    bool force_atomic = false;
    std::string type_name;
    std::string alias;
    SourcePos pos;
};

struct PatternAst {
    PatternOp op = PatternOp::Leaf;
    std::vector<OperandAst> operands;
    std::optional<int> within;                    // Seq max gap
    std::optional<std::pair<int, int>> duration;  // duration(min, max)
    SourcePos pos;
};

struct EmitAst {
    std::string target;
    RoleRefAst source;
    SourcePos pos;
};

struct RuleAst {
    std::string name;
    SourcePos name_pos;
    PatternAst pattern;
    std::optional<PredAst> where;
    std::vector<EmitAst> emits;
};

/// Recursive-descent parse of a `.cer` rule file. Throws SyntaxError.
std::vector<RuleAst> parse(const std::string& source);

/// Canonical text form; parse(pretty_print(parse(s))) is a fixed point.
std::string pretty_print(const std::vector<RuleAst>& rules);

bool ast_equal(const std::vector<RuleAst>& a, const std::vector<RuleAst>& b);

/// Semantic check and compilation to the executable rule set, dependency
/// ordered. Throws CompileError with a source position.
CompiledRuleSet check_and_compile(const std::vector<RuleAst>& rules);

/// The shipped rule file: Pass, Cross, FilteringPass, the *ThenGoal chains,
/// WonTackle, LostTackle, Shot, ShotOut, ShotThenGoal and SavedShot.
std::string builtin_source();

CompiledRuleSet compile_builtin();

}  // namespace socev::dsl
