#include "pcka/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace pcka {

namespace {
TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }
}

TermPtr t_zero() { return make({Term::Kind::zero}); }
TermPtr t_one() { return make({Term::Kind::one}); }
TermPtr t_act(std::string name) {
    Term t{Term::Kind::act};
    t.name = std::move(name);
    return make(std::move(t));
}
TermPtr t_plus(TermPtr a, TermPtr b) {
    Term t{Term::Kind::plus};
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return make(std::move(t));
}
TermPtr t_seq(TermPtr a, TermPtr b) {
    Term t{Term::Kind::seq};
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    return make(std::move(t));
}
TermPtr t_star(TermPtr a) {
    Term t{Term::Kind::star};
    t.lhs = std::move(a);
    return make(std::move(t));
}
TermPtr t_pchoice(TermPtr a, Rat p, TermPtr b) {
    if (sgn(p) < 0 || p > 1) throw std::invalid_argument("choice probability outside [0,1]");
    Term t{Term::Kind::pchoice};
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    t.prob = std::move(p);
    return make(std::move(t));
}
TermPtr t_par(TermPtr a, std::vector<std::string> frame, TermPtr b) {
    std::sort(frame.begin(), frame.end());
    frame.erase(std::unique(frame.begin(), frame.end()), frame.end());
    Term t{Term::Kind::par};
    t.lhs = std::move(a);
    t.rhs = std::move(b);
    t.frame = std::move(frame);
    return make(std::move(t));
}
TermPtr t_run(std::vector<std::string> actions) {
    std::sort(actions.begin(), actions.end());
    actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
    Term t{Term::Kind::run};
    t.frame = std::move(actions);
    return make(std::move(t));
}

bool structural_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case Term::Kind::zero:
        case Term::Kind::one: return true;
        case Term::Kind::act: return a->name == b->name;
        case Term::Kind::star: return structural_equal(a->lhs, b->lhs);
        case Term::Kind::run: return a->frame == b->frame;
        case Term::Kind::pchoice:
            if (a->prob != b->prob) return false;
            return structural_equal(a->lhs, b->lhs) && structural_equal(a->rhs, b->rhs);
        case Term::Kind::par:
            if (a->frame != b->frame) return false;
            return structural_equal(a->lhs, b->lhs) && structural_equal(a->rhs, b->rhs);
        default:
            return structural_equal(a->lhs, b->lhs) && structural_equal(a->rhs, b->rhs);
    }
}

namespace {

// Precedence levels: choice < par < seq < star/atoms.
enum Level { kChoice = 0, kPar = 1, kSeq = 2, kTight = 3 };

int level_of(const Term& t) {
    switch (t.kind) {
        case Term::Kind::plus:
        case Term::Kind::pchoice: return kChoice;
        case Term::Kind::par: return kPar;
        case Term::Kind::seq: return kSeq;
        default: return kTight;
    }
}

void render(const TermPtr& t, int min_level, bool allow_same_op_left,
            const Term* parent, std::ostream& os) {
    int lvl = level_of(*t);
    bool parens = lvl < min_level;
    if (!parens && parent && lvl == min_level && lvl != kTight) {
        // Same level: only a left-assoc chain of the same operator kind may
        // stay bare; choice additionally requires the same operator (+ vs
        // +[p] never mix without parentheses).
        bool same_op = parent->kind == t->kind;
        parens = !(allow_same_op_left && same_op);
    }
    if (parens) os << "(";
    switch (t->kind) {
        case Term::Kind::zero: os << "0"; break;
        case Term::Kind::one: os << "1"; break;
        case Term::Kind::act: os << t->name; break;
        case Term::Kind::run: {
            os << "run{";
            for (std::size_t i = 0; i < t->frame.size(); ++i)
                os << (i ? "," : "") << t->frame[i];
            os << "}";
            break;
        }
        case Term::Kind::star:
            render(t->lhs, kTight, false, t.get(), os);
            os << "*";
            break;
        case Term::Kind::seq:
            render(t->lhs, kSeq, true, t.get(), os);
            os << " . ";
            render(t->rhs, kSeq + 1, false, t.get(), os);
            break;
        case Term::Kind::par: {
            render(t->lhs, kPar, true, t.get(), os);
            os << " ||{";
            for (std::size_t i = 0; i < t->frame.size(); ++i)
                os << (i ? "," : "") << t->frame[i];
            os << "} ";
            render(t->rhs, kPar + 1, false, t.get(), os);
            break;
        }
        case Term::Kind::plus:
            render(t->lhs, kChoice, true, t.get(), os);
            os << " + ";
            render(t->rhs, kChoice + 1, false, t.get(), os);
            break;
        case Term::Kind::pchoice:
            render(t->lhs, kChoice, true, t.get(), os);
            os << " +[" << rat_to_string(t->prob) << "] ";
            render(t->rhs, kChoice + 1, false, t.get(), os);
            break;
    }
    if (parens) os << ")";
}

}  // namespace

std::string pretty(const TermPtr& t) {
    std::ostringstream os;
    render(t, kChoice, true, nullptr, os);
    return os.str();
}

std::vector<std::string> actions_used(const TermPtr& t, const ActionAlphabet& alpha,
                                      bool external_only) {
    std::set<std::string> acc;
    std::vector<const Term*> work{t.get()};
    while (!work.empty()) {
        const Term* cur = work.back();
        work.pop_back();
        if (cur->kind == Term::Kind::act) {
            if (!external_only || alpha.is_external(alpha.id_of(cur->name)))
                acc.insert(cur->name);
        } else if (cur->kind == Term::Kind::run) {
            acc.insert(cur->frame.begin(), cur->frame.end());
        }
        if (cur->lhs) work.push_back(cur->lhs.get());
        if (cur->rhs) work.push_back(cur->rhs.get());
    }
    return {acc.begin(), acc.end()};
}

ParseError::ParseError(const std::string& what, unsigned line, unsigned col)
    : std::runtime_error(what + " at line " + std::to_string(line) + ", column " +
                         std::to_string(col)),
      line(line),
      col(col) {}

namespace {

struct Token {
    enum class Kind { ident, zero, one, dot, plus, pplus, par, star, lparen, rparen, eol, eof };
    Kind kind;
    std::string text;             // ident
    Rat prob;                     // pplus
    std::vector<std::string> set; // par frame
    unsigned line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    Token next() {
        skip_space(false);
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= s_.size()) {
            t.kind = Token::Kind::eof;
            return t;
        }
        char c = s_[pos_];
        if (c == '\n') {
            advance();
            t.kind = Token::Kind::eol;
            return t;
        }
        if (c == '#') {
            while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            return next();
        }
        if (c == '(') return simple(Token::Kind::lparen);
        if (c == ')') return simple(Token::Kind::rparen);
        if (c == '.') return simple(Token::Kind::dot);
        if (c == '*') return simple(Token::Kind::star);
        if (c == '=') {
            advance();
            t.kind = Token::Kind::ident;
            t.text = "=";
            return t;
        }
        if (c == '+') {
            advance();
            if (pos_ < s_.size() && s_[pos_] == '[') {
                advance();
                std::string num;
                while (pos_ < s_.size() && s_[pos_] != ']') {
                    if (!std::isspace(static_cast<unsigned char>(s_[pos_])))
                        num += s_[pos_];
                    advance();
                }
                if (pos_ >= s_.size()) throw ParseError("unterminated probability", t.line, t.col);
                advance();  // ']'
                auto r = rat_from_string(num);
                if (!r) throw ParseError("malformed probability '" + num + "'", t.line, t.col);
                if (sgn(*r) < 0 || *r > 1)
                    throw ParseError("probability outside [0,1]", t.line, t.col);
                t.kind = Token::Kind::pplus;
                t.prob = *r;
                return t;
            }
            t.kind = Token::Kind::plus;
            return t;
        }
        if (c == '|') {
            advance();
            if (pos_ >= s_.size() || s_[pos_] != '|')
                throw ParseError("expected '||'", t.line, t.col);
            advance();
            skip_space(true);
            if (pos_ >= s_.size() || s_[pos_] != '{')
                throw ParseError("parallel requires an explicit frame '||{...}'", t.line, t.col);
            advance();
            t.kind = Token::Kind::par;
            t.set = name_list('}');
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            advance();
            if (c == '0') {
                t.kind = Token::Kind::zero;
                return t;
            }
            if (c == '1') {
                t.kind = Token::Kind::one;
                return t;
            }
            throw ParseError("unexpected digit", t.line, t.col);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                    s_[pos_] == '-')) {
                id += s_[pos_];
                advance();
            }
            t.kind = Token::Kind::ident;
            t.text = id;
            if (id == "run") {
                skip_space(true);
                if (pos_ < s_.size() && s_[pos_] == '{') {
                    advance();
                    t.set = name_list('}');
                }
            }
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.col);
    }

private:
    Token simple(Token::Kind k) {
        Token t;
        t.line = line_;
        t.col = col_;
        t.kind = k;
        advance();
        return t;
    }

    std::vector<std::string> name_list(char close) {
        std::vector<std::string> names;
        std::string cur;
        while (true) {
            if (pos_ >= s_.size() || s_[pos_] == '\n')
                throw ParseError("unterminated action set", line_, col_);
            char c = s_[pos_];
            if (c == close || c == ',') {
                if (!cur.empty()) names.push_back(cur);
                cur.clear();
                advance();
                if (c == close) return names;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            cur += c;
            advance();
        }
    }

    void skip_space(bool also_no_newline_needed) {
        (void)also_no_newline_needed;
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r'))
            advance();
    }

    void advance() {
        if (pos_ < s_.size()) {
            if (s_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    unsigned line_ = 1, col_ = 1;
};

class Parser {
public:
    using Defs = std::map<std::string, TermPtr>;
    Parser(std::vector<Token> toks, const AlphabetPtr& alpha, const Defs* defs)
        : toks_(std::move(toks)), alpha_(alpha), defs_(defs) {}

    TermPtr expression() {
        TermPtr t = choice();
        return t;
    }

    const Token& peek() const { return toks_[i_]; }
    void expect_end() {
        if (peek().kind != Token::Kind::eof && peek().kind != Token::Kind::eol)
            fail("trailing input after expression");
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, peek().line, peek().col);
    }

    const Token& take() { return toks_[i_++]; }

    TermPtr choice() {
        TermPtr t = parallel();
        bool have_plus = false, have_pc = false;
        while (peek().kind == Token::Kind::plus || peek().kind == Token::Kind::pplus) {
            const Token& op = take();
            if (op.kind == Token::Kind::plus) have_plus = true;
            if (op.kind == Token::Kind::pplus) have_pc = true;
            if (have_plus && have_pc)
                throw ParseError(
                    "mixing + and +[p] at the same level requires parentheses", op.line,
                    op.col);
            TermPtr r = parallel();
            t = op.kind == Token::Kind::plus ? t_plus(t, r) : t_pchoice(t, op.prob, r);
        }
        return t;
    }

    TermPtr parallel() {
        TermPtr t = sequence();
        while (peek().kind == Token::Kind::par) {
            Token op = take();
            for (const auto& a : op.set) require_external(a, op);
            TermPtr r = sequence();
            t = t_par(t, op.set, r);
        }
        return t;
    }

    TermPtr sequence() {
        TermPtr t = postfix();
        while (peek().kind == Token::Kind::dot) {
            take();
            t = t_seq(t, postfix());
        }
        return t;
    }

    TermPtr postfix() {
        TermPtr t = atom();
        while (peek().kind == Token::Kind::star) {
            take();
            t = t_star(t);
        }
        return t;
    }

    TermPtr atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::zero: take(); return t_zero();
            case Token::Kind::one: take(); return t_one();
            case Token::Kind::lparen: {
                take();
                TermPtr inner = choice();
                if (peek().kind != Token::Kind::rparen) fail("expected ')'");
                take();
                return inner;
            }
            case Token::Kind::ident: {
                Token id = take();
                if (id.text == "run") {
                    if (id.set.empty())
                        throw ParseError("run requires a nonempty action set", id.line,
                                         id.col);
                    for (const auto& a : id.set) require_external(a, id);
                    return t_run(id.set);
                }
                if (id.text == "tau")
                    throw ParseError("tau is not usable as an action term", id.line, id.col);
                if (alpha_->has_action(id.text)) return t_act(id.text);
                if (defs_) {
                    auto it = defs_->find(id.text);
                    if (it != defs_->end()) return it->second;
                }
                throw ParseError("undeclared action '" + id.text + "'", id.line, id.col);
            }
            default:
                fail("expected a term");
        }
    }

    void require_external(const std::string& a, const Token& at) const {
        if (!alpha_->has_action(a) || !alpha_->is_external(alpha_->id_of(a)))
            throw ParseError("'" + a + "' is not a declared external action", at.line, at.col);
    }

    std::vector<Token> toks_;
    AlphabetPtr alpha_;
    const Defs* defs_;
    std::size_t i_ = 0;
};

std::vector<Token> lex_all(const std::string& text) {
    Lexer lex(text);
    std::vector<Token> out;
    for (;;) {
        Token t = lex.next();
        bool end = t.kind == Token::Kind::eof;
        out.push_back(std::move(t));
        if (end) return out;
    }
}

std::vector<Token> strip_eol(std::vector<Token> toks) {
    std::vector<Token> out;
    for (auto& t : toks)
        if (t.kind != Token::Kind::eol) out.push_back(std::move(t));
    return out;
}

}  // namespace

namespace {
TermPtr parse_expr_with(const std::string& text, const AlphabetPtr& alphabet,
                        const std::map<std::string, TermPtr>* defs) {
    Parser p(strip_eol(lex_all(text)), alphabet, defs);
    TermPtr t = p.expression();
    p.expect_end();
    return t;
}
}  // namespace

TermPtr parse_expr(const std::string& text, const AlphabetPtr& alphabet) {
    return parse_expr_with(text, alphabet, nullptr);
}

TermFile parse_term_file(const std::string& text) {
    // Split into lines first; header lines then definitions.
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) lines.push_back(line);
    }
    std::vector<std::string> external, internal;
    TermFile out;
    unsigned lineno = 0;
    bool alphabet_done = false;
    auto words = [](const std::string& s) {
        std::istringstream is(s);
        std::vector<std::string> w;
        std::string x;
        while (is >> x) w.push_back(x);
        return w;
    };
    std::vector<std::pair<unsigned, std::string>> def_lines;
    for (const auto& line : lines) {
        ++lineno;
        std::string stripped = line.substr(0, line.find('#'));
        auto w = words(stripped);
        if (w.empty()) continue;
        if (w[0] == "external" || w[0] == "internal") {
            if (alphabet_done)
                throw ParseError("alphabet lines must precede definitions", lineno, 1);
            auto& dst = w[0] == "external" ? external : internal;
            dst.insert(dst.end(), w.begin() + 1, w.end());
        } else if (w[0] == "def") {
            alphabet_done = true;
            def_lines.emplace_back(lineno, stripped);
        } else {
            throw ParseError("expected 'external', 'internal' or 'def'", lineno, 1);
        }
    }
    out.alphabet = make_alphabet(external, internal);
    // Earlier definitions are in scope for later ones; action names shadow.
    std::map<std::string, TermPtr> scope;
    for (const auto& [ln, text_line] : def_lines) {
        auto w = words(text_line);
        if (w.size() < 3 || w[0] != "def" || w[2] != "=")
            throw ParseError("expected 'def NAME = EXPR'", ln, 1);
        std::size_t eq = text_line.find('=');
        TermPtr t;
        try {
            t = parse_expr_with(text_line.substr(eq + 1), out.alphabet, &scope);
        } catch (ParseError& e) {
            throw ParseError(std::string(e.what()) + " (definition of " + w[1] + ")", ln,
                             e.col);
        }
        scope[w[1]] = t;
        out.defs.emplace_back(w[1], std::move(t));
    }
    return out;
}

TermPtr TermFile::find(const std::string& name) const {
    for (const auto& [n, t] : defs)
        if (n == name) return t;
    return nullptr;
}

ProbAutomaton compile(const TermPtr& t, const AlphabetPtr& alphabet) {
    switch (t->kind) {
        case Term::Kind::zero: return deadlock(alphabet);
        case Term::Kind::one: return skip(alphabet);
        case Term::Kind::act: return action(t->name, alphabet);
        case Term::Kind::plus: return plus(compile(t->lhs, alphabet), compile(t->rhs, alphabet));
        case Term::Kind::seq: return seq(compile(t->lhs, alphabet), compile(t->rhs, alphabet));
        case Term::Kind::star: return star(compile(t->lhs, alphabet));
        case Term::Kind::pchoice:
            return pchoice(compile(t->lhs, alphabet), t->prob, compile(t->rhs, alphabet));
        case Term::Kind::par: {
            std::set<ActionId> frame;
            for (const auto& a : t->frame) frame.insert(alphabet->id_of(a));
            return par(compile(t->lhs, alphabet), frame, compile(t->rhs, alphabet));
        }
        case Term::Kind::run: {
            std::set<ActionId> acts;
            for (const auto& a : t->frame) acts.insert(alphabet->id_of(a));
            return run(acts, alphabet);
        }
    }
    throw std::logic_error("unreachable");
}

TermPtr least_fixpoint_star(const TermPtr& p) { return t_seq(t_star(p), t_zero()); }

}  // namespace pcka
