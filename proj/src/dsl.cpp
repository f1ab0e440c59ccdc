#include "socev/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace socev::dsl {

namespace {

// --- lexer -------------------------------------------------------------------

struct Token {
    enum class Type { Ident, Int, Sym, End };
    Type type = Type::End;
    std::string text;
    long value = 0;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { next(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        next();
        return t;
    }

private:
    void next() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == '#') {
                while (i_ < src_.size() && src_[i_] != '\n') ++i_;
            } else if (c == '\n') {
                ++line_;
                col_ = 1;
                ++i_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++col_;
                ++i_;
            } else {
                break;
            }
        }
        tok_ = Token{};
        tok_.pos = {line_, col_};
        if (i_ >= src_.size()) return;
        char c = src_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i_;
            while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) ||
                                       src_[j] == '_'))
                ++j;
            tok_.type = Token::Type::Ident;
            tok_.text = src_.substr(i_, j - i_);
            advance(j - i_);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            tok_.type = Token::Type::Int;
            tok_.text = src_.substr(i_, j - i_);
            tok_.value = std::stol(tok_.text);
            advance(j - i_);
            return;
        }
        if ((c == '=' || c == '!') && i_ + 1 < src_.size() && src_[i_ + 1] == '=') {
            tok_.type = Token::Type::Sym;
            tok_.text = std::string(1, c) + "=";
            advance(2);
            return;
        }
        if (std::string("(){},:.").find(c) != std::string::npos) {
            tok_.type = Token::Type::Sym;
            tok_.text = std::string(1, c);
            advance(1);
            return;
        }
        throw SyntaxError(tok_.pos, std::string("unexpected character '") + c + "'");
    }

    void advance(size_t n) {
        i_ += n;
        col_ += static_cast<int>(n);
    }

    const std::string& src_;
    size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

// --- parser ------------------------------------------------------------------

class Parser {
public:
    explicit Parser(const std::string& src) : lex_(src) {}

    std::vector<RuleAst> parse_file() {
        std::vector<RuleAst> rules;
        while (lex_.peek().type != Token::Type::End) rules.push_back(parse_rule());
        return rules;
    }

private:
    bool peek_ident(const std::string& kw) const {
        return lex_.peek().type == Token::Type::Ident && lex_.peek().text == kw;
    }

    bool peek_sym(const std::string& s) const {
        return lex_.peek().type == Token::Type::Sym && lex_.peek().text == s;
    }

    Token expect_ident(const std::string& what) {
        if (lex_.peek().type != Token::Type::Ident)
            throw SyntaxError(lex_.peek().pos, "expected " + what);
        return lex_.take();
    }

    void expect_kw(const std::string& kw) {
        if (!peek_ident(kw)) throw SyntaxError(lex_.peek().pos, "expected '" + kw + "'");
        lex_.take();
    }

    void expect_sym(const std::string& s) {
        if (!peek_sym(s)) throw SyntaxError(lex_.peek().pos, "expected '" + s + "'");
        lex_.take();
    }

    int expect_int() {
        if (lex_.peek().type != Token::Type::Int)
            throw SyntaxError(lex_.peek().pos, "expected an integer");
        return static_cast<int>(lex_.take().value);
    }

    RuleAst parse_rule() {
        expect_kw("complex");
        RuleAst rule;
        Token name = expect_ident("an event name");
        rule.name = name.text;
        rule.name_pos = name.pos;
        expect_sym(":");
        rule.pattern = parse_pattern();
        if (peek_ident("within")) {
            lex_.take();
            rule.pattern.within = expect_int();
        }
        if (peek_ident("duration")) {
            lex_.take();
            expect_sym("(");
            int lo = expect_int();
            expect_sym(",");
            int hi = expect_int();
            expect_sym(")");
            rule.pattern.duration = {lo, hi};
        }
        if (peek_ident("where")) {
            lex_.take();
            rule.where = parse_or();
        }
        expect_kw("emit");
        expect_kw("roles");
        expect_sym("{");
        if (!peek_sym("}")) {
            while (true) {
                EmitAst e;
                Token t = expect_ident("a role name");
                e.target = t.text;
                e.pos = t.pos;
                expect_sym(":");
                e.source = parse_roleref();
                rule.emits.push_back(std::move(e));
                if (!peek_sym(",")) break;
                lex_.take();
            }
        }
        expect_sym("}");
        return rule;
    }

    PatternAst parse_pattern() {
        PatternAst pat;
        pat.pos = lex_.peek().pos;
        if (peek_ident("seq") || peek_ident("and")) {
            pat.op = lex_.take().text == "seq" ? PatternOp::Seq : PatternOp::And;
            expect_sym("(");
            pat.operands.push_back(parse_operand());
            while (peek_sym(",")) {
                lex_.take();
                pat.operands.push_back(parse_operand());
            }
            expect_sym(")");
            if (pat.operands.size() < 2)
                throw SyntaxError(pat.pos, "seq/and need at least two operands");
        } else {
            pat.op = PatternOp::Leaf;
            pat.operands.push_back(parse_operand());
        }
        return pat;
    }

    OperandAst parse_operand() {
        OperandAst op;
        op.pos = lex_.peek().pos;
        if (peek_ident("atomic")) {
            lex_.take();
            op.force_atomic = true;
        }
        op.type_name = expect_ident("an event name").text;
        expect_kw("as");
        op.alias = expect_ident("an alias").text;
        return op;
    }

    RoleRefAst parse_roleref() {
        RoleRefAst r;
        Token a = expect_ident("an alias");
        r.alias = a.text;
        r.pos = a.pos;
        expect_sym(".");
        r.role = expect_ident("a role name").text;
        return r;
    }

    PredAst parse_or() {
        PredAst left = parse_and();
        if (!peek_ident("or")) return left;
        PredAst node;
        node.kind = PredAst::Kind::Or;
        node.pos = left.pos;
        node.children.push_back(std::move(left));
        while (peek_ident("or")) {
            lex_.take();
            node.children.push_back(parse_and());
        }
        return node;
    }

    PredAst parse_and() {
        PredAst left = parse_unary();
        if (!peek_ident("and")) return left;
        PredAst node;
        node.kind = PredAst::Kind::And;
        node.pos = left.pos;
        node.children.push_back(std::move(left));
        while (peek_ident("and")) {
            lex_.take();
            node.children.push_back(parse_unary());
        }
        return node;
    }

    PredAst parse_unary() {
        if (peek_ident("not")) {
            PredAst node;
            node.pos = lex_.take().pos;
            node.kind = PredAst::Kind::Not;
            node.children.push_back(parse_unary());
            return node;
        }
        if (peek_sym("(")) {
            lex_.take();
            PredAst inner = parse_or();
            expect_sym(")");
            return inner;
        }
        return parse_atom();
    }

    PredAst parse_atom() {
        PredAst node;
        node.pos = lex_.peek().pos;
        if (peek_ident("team")) {
            lex_.take();
            expect_sym("(");
            node.a = parse_roleref();
            expect_sym(")");
            bool eq = parse_cmp();
            expect_kw("team");
            expect_sym("(");
            node.b = parse_roleref();
            expect_sym(")");
            node.kind = eq ? PredAst::Kind::TeamEq : PredAst::Kind::TeamNe;
            return node;
        }
        if (peek_ident("goalkeeper")) {
            lex_.take();
            expect_sym("(");
            node.a = parse_roleref();
            expect_sym(")");
            node.kind = PredAst::Kind::Goalkeeper;
            return node;
        }
        if (peek_ident("zone")) {
            lex_.take();
            expect_sym("(");
            node.a = parse_roleref();
            expect_sym(",");
            node.zone = expect_ident("a zone name").text;
            expect_sym(")");
            node.kind = PredAst::Kind::Zone;
            return node;
        }
        if (peek_ident("nearest_to_goal_among_opponents")) {
            lex_.take();
            expect_sym("(");
            node.a = parse_roleref();
            expect_sym(",");
            node.time_alias = expect_ident("an alias").text;
            expect_sym(")");
            node.kind = PredAst::Kind::AheadOfDefence;
            return node;
        }
        if (peek_ident("on_target")) {
            lex_.take();
            expect_sym("(");
            node.alias = expect_ident("an alias").text;
            expect_sym(")");
            node.kind = PredAst::Kind::OnTarget;
            return node;
        }
        node.a = parse_roleref();
        bool eq = parse_cmp();
        node.b = parse_roleref();
        node.kind = eq ? PredAst::Kind::IdEq : PredAst::Kind::IdNe;
        return node;
    }

    bool parse_cmp() {
        if (peek_sym("==")) {
            lex_.take();
            return true;
        }
        if (peek_sym("!=")) {
            lex_.take();
            return false;
        }
        throw SyntaxError(lex_.peek().pos, "expected '==' or '!='");
    }

    Lexer lex_;
};

// --- pretty printer ----------------------------------------------------------

void print_roleref(std::ostream& os, const RoleRefAst& r) { os << r.alias << '.' << r.role; }

// precedence: Or < And < Not < atoms
int prec_of(PredAst::Kind k) {
    switch (k) {
        case PredAst::Kind::Or: return 1;
        case PredAst::Kind::And: return 2;
        case PredAst::Kind::Not: return 3;
        default: return 4;
    }
}

void print_pred(std::ostream& os, const PredAst& p, int parent_prec) {
    int prec = prec_of(p.kind);
    bool parens = prec < parent_prec;
    if (parens) os << '(';
    switch (p.kind) {
        case PredAst::Kind::TeamEq:
        case PredAst::Kind::TeamNe:
            os << "team(";
            print_roleref(os, p.a);
            os << (p.kind == PredAst::Kind::TeamEq ? ") == team(" : ") != team(");
            print_roleref(os, p.b);
            os << ')';
            break;
        case PredAst::Kind::IdEq:
        case PredAst::Kind::IdNe:
            print_roleref(os, p.a);
            os << (p.kind == PredAst::Kind::IdEq ? " == " : " != ");
            print_roleref(os, p.b);
            break;
        case PredAst::Kind::Goalkeeper:
            os << "goalkeeper(";
            print_roleref(os, p.a);
            os << ')';
            break;
        case PredAst::Kind::Zone:
            os << "zone(";
            print_roleref(os, p.a);
            os << ", " << p.zone << ')';
            break;
        case PredAst::Kind::AheadOfDefence:
            os << "nearest_to_goal_among_opponents(";
            print_roleref(os, p.a);
            os << ", " << p.time_alias << ')';
            break;
        case PredAst::Kind::OnTarget:
            os << "on_target(" << p.alias << ')';
            break;
        case PredAst::Kind::Not:
            os << "not ";
            print_pred(os, p.children.at(0), prec + 1);
            break;
        case PredAst::Kind::And:
        case PredAst::Kind::Or: {
            const char* sep = p.kind == PredAst::Kind::And ? " and " : " or ";
            for (size_t i = 0; i < p.children.size(); ++i) {
                if (i) os << sep;
                print_pred(os, p.children[i], prec + 1);
            }
            break;
        }
    }
    if (parens) os << ')';
}

// --- semantic checking -------------------------------------------------------

bool pred_equal(const PredAst& x, const PredAst& y) {
    auto rr = [](const RoleRefAst& a, const RoleRefAst& b) {
        return a.alias == b.alias && a.role == b.role;
    };
    if (x.kind != y.kind || !rr(x.a, y.a) || !rr(x.b, y.b) || x.zone != y.zone ||
        x.time_alias != y.time_alias || x.alias != y.alias ||
        x.children.size() != y.children.size())
        return false;
    for (size_t i = 0; i < x.children.size(); ++i)
        if (!pred_equal(x.children[i], y.children[i])) return false;
    return true;
}

}  // namespace

std::vector<RuleAst> parse(const std::string& source) { return Parser(source).parse_file(); }

std::string pretty_print(const std::vector<RuleAst>& rules) {
    std::ostringstream os;
    bool first = true;
    for (const auto& r : rules) {
        if (!first) os << '\n';
        first = false;
        os << "complex " << r.name << ":\n  ";
        const auto& pat = r.pattern;
        if (pat.op != PatternOp::Leaf) os << (pat.op == PatternOp::Seq ? "seq(" : "and(");
        for (size_t i = 0; i < pat.operands.size(); ++i) {
            if (i) os << ", ";
            const auto& op = pat.operands[i];
            if (op.force_atomic) os << "atomic ";
            os << op.type_name << " as " << op.alias;
        }
        if (pat.op != PatternOp::Leaf) os << ')';
        os << '\n';
        if (pat.within) os << "  within " << *pat.within << '\n';
        if (pat.duration)
            os << "  duration(" << pat.duration->first << ", " << pat.duration->second << ")\n";
        if (r.where) {
            os << "  where ";
            print_pred(os, *r.where, 0);
            os << '\n';
        }
        os << "  emit roles { ";
        for (size_t i = 0; i < r.emits.size(); ++i) {
            if (i) os << ", ";
            os << r.emits[i].target << ": ";
            print_roleref(os, r.emits[i].source);
        }
        os << " }\n";
    }
    return os.str();
}

bool ast_equal(const std::vector<RuleAst>& a, const std::vector<RuleAst>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        const auto& x = a[i];
        const auto& y = b[i];
        if (x.name != y.name || x.pattern.op != y.pattern.op ||
            x.pattern.within != y.pattern.within || x.pattern.duration != y.pattern.duration ||
            x.pattern.operands.size() != y.pattern.operands.size() ||
            x.emits.size() != y.emits.size() || x.where.has_value() != y.where.has_value())
            return false;
        for (size_t j = 0; j < x.pattern.operands.size(); ++j) {
            const auto& p = x.pattern.operands[j];
            const auto& q = y.pattern.operands[j];
            if (p.force_atomic != q.force_atomic || p.type_name != q.type_name ||
                p.alias != q.alias)
                return false;
        }
        if (x.where && !pred_equal(*x.where, *y.where)) return false;
        for (size_t j = 0; j < x.emits.size(); ++j) {
            const auto& p = x.emits[j];
            const auto& q = y.emits[j];
            if (p.target != q.target || p.source.alias != q.source.alias ||
                p.source.role != q.source.role)
                return false;
        }
    }
    return true;
}

namespace {

std::set<std::string> schema_of(const EventTypeRef& ref,
                                const std::map<ComplexType, std::set<std::string>>& rule_roles) {
    if (ref.is_atomic) {
        const auto& v = atomic_roles(ref.atomic);
        return {v.begin(), v.end()};
    }
    std::set<std::string> s;
    if (ref.complex == ComplexType::BallPossession) {
        s = {roles::PossessingPlayer, roles::PossessedObject};
    } else if (ref.complex == ComplexType::Tackle) {
        s = {roles::PossessingPlayer, roles::TacklingPlayer, roles::PossessedObject};
    }
    auto it = rule_roles.find(ref.complex);
    if (it != rule_roles.end()) s.insert(it->second.begin(), it->second.end());
    return s;
}

}  // namespace

CompiledRuleSet check_and_compile(const std::vector<RuleAst>& rules) {
    using Kind = CompileError::Kind;

    // Group alternatives by head name; heads must be known complex types.
    std::map<ComplexType, std::vector<const RuleAst*>> groups;
    std::vector<ComplexType> group_order;
    for (const auto& r : rules) {
        auto type = complex_type_from_name(r.name);
        if (!type)
            throw CompileError(Kind::UnknownEvent, r.name_pos,
                               "unknown complex event type '" + r.name + "'");
        if (!groups.count(*type)) group_order.push_back(*type);
        groups[*type].push_back(&r);
    }

    // Emitted role schema per defined type (union over alternatives).
    std::map<ComplexType, std::set<std::string>> rule_roles;
    for (const auto& [type, alts] : groups)
        for (const auto* r : alts)
            for (const auto& e : r->emits) rule_roles[type].insert(e.target);

    auto resolve_type = [&](const OperandAst& op) -> EventTypeRef {
        EventTypeRef ref;
        if (!op.force_atomic) {
            if (auto c = complex_type_from_name(op.type_name)) {
                ref.is_atomic = false;
                ref.complex = *c;
                bool merged = *c == ComplexType::BallPossession || *c == ComplexType::Tackle;
                if (!merged && !groups.count(*c))
                    throw CompileError(Kind::UnknownEvent, op.pos,
                                       "no rule defines '" + op.type_name + "'");
                return ref;
            }
        }
        if (auto a = atomic_type_from_name(op.type_name)) {
            ref.is_atomic = true;
            ref.atomic = *a;
            return ref;
        }
        throw CompileError(Kind::UnknownEvent, op.pos,
                           "unknown event type '" + op.type_name + "'");
    };

    auto compile_rule = [&](const RuleAst& r) -> CompiledPattern {
        CompiledPattern pat;
        pat.op = r.pattern.op;
        std::map<std::string, int> alias_index;
        for (const auto& op : r.pattern.operands) {
            if (alias_index.count(op.alias))
                throw CompileError(Kind::TypeMismatch, op.pos,
                                   "duplicate alias '" + op.alias + "'");
            alias_index[op.alias] = static_cast<int>(pat.operands.size());
            pat.operands.push_back(resolve_type(op));
        }
        if (r.pattern.within && pat.op != PatternOp::Seq)
            throw CompileError(Kind::TypeMismatch, r.pattern.pos,
                               "'within' applies to seq patterns only");
        pat.max_gap = pat.op == PatternOp::Seq ? r.pattern.within.value_or(-1) : 0;
        pat.duration = r.pattern.duration;

        auto lookup_alias = [&](const std::string& alias, SourcePos pos) -> int {
            auto it = alias_index.find(alias);
            if (it == alias_index.end())
                throw CompileError(Kind::UnknownRole, pos, "unknown alias '" + alias + "'");
            return it->second;
        };
        auto compile_roleref = [&](const RoleRefAst& rr) -> RoleRef {
            int idx = lookup_alias(rr.alias, rr.pos);
            auto schema = schema_of(pat.operands[idx], rule_roles);
            if (!schema.count(rr.role))
                throw CompileError(Kind::UnknownRole, rr.pos,
                                   "event '" + pat.operands[idx].name() + "' has no role '" +
                                       rr.role + "'");
            return RoleRef{idx, rr.role};
        };

        std::function<Predicate(const PredAst&)> compile_pred = [&](const PredAst& p) {
            Predicate out;
            switch (p.kind) {
                case PredAst::Kind::TeamEq: out.kind = Predicate::Kind::TeamEq; break;
                case PredAst::Kind::TeamNe: out.kind = Predicate::Kind::TeamNe; break;
                case PredAst::Kind::IdEq: out.kind = Predicate::Kind::IdEq; break;
                case PredAst::Kind::IdNe: out.kind = Predicate::Kind::IdNe; break;
                case PredAst::Kind::Goalkeeper: out.kind = Predicate::Kind::Goalkeeper; break;
                case PredAst::Kind::Zone: out.kind = Predicate::Kind::Zone; break;
                case PredAst::Kind::AheadOfDefence:
                    out.kind = Predicate::Kind::AheadOfDefence;
                    break;
                case PredAst::Kind::OnTarget: out.kind = Predicate::Kind::OnTarget; break;
                case PredAst::Kind::And: out.kind = Predicate::Kind::And; break;
                case PredAst::Kind::Or: out.kind = Predicate::Kind::Or; break;
                case PredAst::Kind::Not: out.kind = Predicate::Kind::Not; break;
            }
            switch (p.kind) {
                case PredAst::Kind::TeamEq:
                case PredAst::Kind::TeamNe:
                case PredAst::Kind::IdEq:
                case PredAst::Kind::IdNe:
                    out.a = compile_roleref(p.a);
                    out.b = compile_roleref(p.b);
                    break;
                case PredAst::Kind::Goalkeeper:
                    out.a = compile_roleref(p.a);
                    break;
                case PredAst::Kind::Zone: {
                    out.a = compile_roleref(p.a);
                    auto z = zone_from_name(p.zone);
                    if (!z)
                        throw CompileError(Kind::TypeMismatch, p.pos,
                                           "unknown zone '" + p.zone + "'");
                    out.zone = *z;
                    break;
                }
                case PredAst::Kind::AheadOfDefence:
                    out.a = compile_roleref(p.a);
                    out.time_operand = lookup_alias(p.time_alias, p.pos);
                    break;
                case PredAst::Kind::OnTarget: {
                    out.operand = lookup_alias(p.alias, p.pos);
                    const auto& ref = pat.operands[out.operand];
                    if (!ref.is_atomic || ref.atomic != AtomicType::KickingTheBall)
                        throw CompileError(Kind::TypeMismatch, p.pos,
                                           "on_target applies to atomic KickingTheBall");
                    break;
                }
                default:
                    for (const auto& c : p.children) out.children.push_back(compile_pred(c));
                    break;
            }
            return out;
        };
        if (r.where) pat.where = compile_pred(*r.where);
        for (const auto& e : r.emits)
            pat.emits.push_back(EmitRole{e.target, compile_roleref(e.source)});
        return pat;
    };

    // Topological order over inter-rule dependencies.
    std::map<ComplexType, std::set<ComplexType>> deps;
    for (const auto& [type, alts] : groups) {
        for (const auto* r : alts)
            for (const auto& op : r->pattern.operands) {
                auto ref = resolve_type(op);
                if (!ref.is_atomic && groups.count(ref.complex) && ref.complex != type)
                    deps[type].insert(ref.complex);
            }
    }
    std::vector<ComplexType> order;
    std::set<ComplexType> done, visiting;
    std::function<void(ComplexType)> visit = [&](ComplexType t) {
        if (done.count(t)) return;
        if (visiting.count(t))
            throw CompileError(Kind::CyclicDependency, groups[t].front()->name_pos,
                               "cyclic dependency involving '" + complex_type_name(t) + "'");
        visiting.insert(t);
        for (auto d : deps[t]) visit(d);
        visiting.erase(t);
        done.insert(t);
        order.push_back(t);
    };
    for (auto t : group_order) visit(t);

    CompiledRuleSet out;
    for (auto type : order) {
        CompiledRule rule;
        rule.type = type;
        for (const auto* r : groups[type]) rule.alternatives.push_back(compile_rule(*r));
        out.rules.push_back(std::move(rule));
    }
    return out;
}

std::string builtin_source() {
    return R"(# Built-in complex event rules.
# BallPossession and Tackle intervals come from the merge stage, not from
# rules; everything below composes them with the atomic events.

complex Shot:
  atomic KickingTheBall as k
  where on_target(k)
  emit roles { Shooter: k.KickingPlayer }

complex ShotOut:
  seq(Shot as s, atomic BallOut as o)
  within 150
  where zone(o.OutObject, behind_goal_line)
  emit roles { Shooter: s.Shooter }

complex ShotThenGoal:
  seq(Shot as s, atomic Goal as g)
  within 150
  where s.Shooter == g.Scorer
  emit roles { Shooter: s.Shooter, Scorer: g.Scorer }

complex SavedShot:
  seq(Shot as s, atomic BallDeflection as d)
  within 150
  where goalkeeper(d.DeflectingPlayer) and team(d.DeflectingPlayer) != team(s.Shooter)
  emit roles { Shooter: s.Shooter, GoalKeeper: d.DeflectingPlayer }

complex SavedShot:
  seq(Shot as s, atomic BallPossession as p)
  within 150
  where goalkeeper(p.PossessingPlayer) and team(p.PossessingPlayer) != team(s.Shooter)
  emit roles { Shooter: s.Shooter, GoalKeeper: p.PossessingPlayer }

complex Pass:
  seq(atomic KickingTheBall as k, atomic BallPossession as p)
  within 90
  where team(k.KickingPlayer) == team(p.PossessingPlayer) and k.KickingPlayer != p.PossessingPlayer
  emit roles { KickingPlayer: k.KickingPlayer, ReceivingPlayer: p.PossessingPlayer }

complex Cross:
  seq(atomic KickingTheBall as k, atomic BallPossession as p)
  within 90
  where team(k.KickingPlayer) == team(p.PossessingPlayer) and k.KickingPlayer != p.PossessingPlayer and zone(k.KickingPlayer, sideline_band) and zone(k.KickingPlayer, attacking_third) and zone(p.PossessingPlayer, goal_area)
  emit roles { KickingPlayer: k.KickingPlayer, ReceivingPlayer: p.PossessingPlayer }

complex FilteringPass:
  seq(atomic KickingTheBall as k, atomic BallPossession as p)
  within 90
  where team(k.KickingPlayer) == team(p.PossessingPlayer) and k.KickingPlayer != p.PossessingPlayer and nearest_to_goal_among_opponents(p.PossessingPlayer, k)
  emit roles { KickingPlayer: k.KickingPlayer, ReceivingPlayer: p.PossessingPlayer }

complex PassThenGoal:
  seq(Pass as p, atomic Goal as g)
  within 150
  where p.ReceivingPlayer == g.Scorer
  emit roles { KickingPlayer: p.KickingPlayer, ReceivingPlayer: p.ReceivingPlayer, Scorer: g.Scorer }

complex CrossThenGoal:
  seq(Cross as c, atomic Goal as g)
  within 150
  where c.ReceivingPlayer == g.Scorer
  emit roles { KickingPlayer: c.KickingPlayer, ReceivingPlayer: c.ReceivingPlayer, Scorer: g.Scorer }

complex FilteringPassThenGoal:
  seq(FilteringPass as f, atomic Goal as g)
  within 150
  where f.ReceivingPlayer == g.Scorer
  emit roles { KickingPlayer: f.KickingPlayer, ReceivingPlayer: f.ReceivingPlayer, Scorer: g.Scorer }

complex WonTackle:
  seq(Tackle as t, atomic BallPossession as p)
  within 150
  where team(t.TacklingPlayer) == team(p.PossessingPlayer)
  emit roles { TacklingPlayer: t.TacklingPlayer, PossessingPlayer: t.PossessingPlayer }

complex LostTackle:
  seq(Tackle as t, atomic BallPossession as p)
  within 150
  where team(t.TacklingPlayer) != team(p.PossessingPlayer)
  emit roles { TacklingPlayer: t.TacklingPlayer, PossessingPlayer: t.PossessingPlayer }
)";
}

CompiledRuleSet compile_builtin() { return check_and_compile(parse(builtin_source())); }

}  // namespace socev::dsl
