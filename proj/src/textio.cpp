#include "pcka/textio.hpp"

#include <fstream>
#include <sstream>

namespace pcka {

namespace {

std::vector<std::string> split_words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

std::string strip_comment(const std::string& line) {
    return line.substr(0, line.find('#'));
}

// "name:prob" with prob = num or num/den
std::pair<std::string, Rat> parse_weighted(const std::string& tok, unsigned lineno) {
    auto colon = tok.rfind(':');
    if (colon == std::string::npos)
        throw ParseError("expected NAME:PROB, got '" + tok + "'", lineno, 1);
    auto r = rat_from_string(tok.substr(colon + 1));
    if (!r) throw ParseError("malformed probability in '" + tok + "'", lineno, 1);
    return {tok.substr(0, colon), *r};
}

}  // namespace

StateId NamedAutomaton::state_by_name(const std::string& n) const {
    for (const auto& [id, nm] : state_names)
        if (nm == n) return id;
    throw std::invalid_argument("unknown state name '" + n + "' in automaton " + name);
}

NamedAutomaton with_generated_names(std::string name, const ProbAutomaton& a) {
    NamedAutomaton out{std::move(name), a, {}};
    std::size_t i = 0;
    for (StateId s : a.states()) out.state_names[s] = "s" + std::to_string(i++);
    return out;
}

std::string write_automaton(const NamedAutomaton& na) {
    const ProbAutomaton& a = na.automaton;
    std::ostringstream os;
    os << "automaton " << na.name << "\n";
    os << "external";
    for (ActionId x : a.alphabet()->external_ids()) os << " " << a.alphabet()->name_of(x);
    os << "\n";
    const auto internals = a.alphabet()->internal_ids();
    if (!internals.empty()) {
        os << "internal";
        for (ActionId x : internals) os << " " << a.alphabet()->name_of(x);
        os << "\n";
    }
    os << "states";
    for (StateId s : a.states()) os << " " << na.state_names.at(s);
    os << "\n";
    os << "init";
    for (const auto& [s, w] : a.initial().entries())
        os << " " << na.state_names.at(s) << ":" << rat_to_string(w);
    os << "\n";
    if (!a.finals().empty()) {
        os << "final";
        for (StateId s : a.finals()) os << " " << na.state_names.at(s);
        os << "\n";
    }
    for (const auto& t : a.transitions()) {
        os << "trans " << na.state_names.at(t.src) << " " << a.alphabet()->name_of(t.act)
           << " ->";
        for (const auto& [s, w] : t.target.entries())
            os << " " << na.state_names.at(s) << ":" << rat_to_string(w);
        os << "\n";
    }
    return os.str();
}

NamedAutomaton read_automaton(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    unsigned lineno = 0;

    std::string name;
    std::vector<std::string> external, internal, states;
    std::vector<std::pair<std::string, Rat>> init;
    std::vector<std::string> finals;
    struct RawTrans {
        std::string src, act;
        std::vector<std::pair<std::string, Rat>> target;
    };
    std::vector<RawTrans> trans;

    while (std::getline(is, line)) {
        ++lineno;
        auto w = split_words(strip_comment(line));
        if (w.empty()) continue;
        const std::string& key = w[0];
        if (key == "automaton") {
            if (w.size() != 2) throw ParseError("expected 'automaton NAME'", lineno, 1);
            name = w[1];
        } else if (key == "external") {
            external.assign(w.begin() + 1, w.end());
        } else if (key == "internal") {
            internal.assign(w.begin() + 1, w.end());
        } else if (key == "states") {
            states.assign(w.begin() + 1, w.end());
        } else if (key == "init") {
            for (std::size_t i = 1; i < w.size(); ++i)
                init.push_back(parse_weighted(w[i], lineno));
        } else if (key == "final") {
            finals.assign(w.begin() + 1, w.end());
        } else if (key == "trans") {
            if (w.size() < 5 || w[3] != "->")
                throw ParseError("expected 'trans SRC ACT -> S:P ...'", lineno, 1);
            RawTrans t;
            t.src = w[1];
            t.act = w[2];
            for (std::size_t i = 4; i < w.size(); ++i)
                t.target.push_back(parse_weighted(w[i], lineno));
            trans.push_back(std::move(t));
        } else {
            throw ParseError("unknown directive '" + key + "'", lineno, 1);
        }
    }
    if (name.empty()) throw ParseError("missing 'automaton NAME' line", 1, 1);
    if (states.empty()) throw ParseError("missing 'states' line", 1, 1);

    AlphabetPtr alpha = make_alphabet(external, internal);
    std::map<std::string, StateId> ids;
    std::map<StateId, std::string> state_names;
    std::set<StateId> state_set;
    for (const auto& s : states) {
        if (ids.count(s)) throw ParseError("duplicate state '" + s + "'", 1, 1);
        StateId id = StateIdAllocator::fresh();
        ids[s] = id;
        state_set.insert(id);
        state_names[id] = s;
    }
    auto lookup = [&](const std::string& s) {
        auto it = ids.find(s);
        if (it == ids.end())
            throw ParseError("undeclared state '" + s + "'", 1, 1);
        return it->second;
    };
    auto to_dist = [&](const std::vector<std::pair<std::string, Rat>>& es) {
        std::vector<Dist::Entry> out_es;
        for (const auto& [s, w] : es) out_es.emplace_back(lookup(s), w);
        return Dist(std::move(out_es));
    };
    std::vector<Transition> ts;
    for (const auto& t : trans)
        ts.push_back({lookup(t.src), alpha->id_of(t.act), to_dist(t.target)});
    std::set<StateId> fin;
    for (const auto& f : finals) fin.insert(lookup(f));
    return NamedAutomaton{name,
                          ProbAutomaton(alpha, std::move(state_set), std::move(ts),
                                        to_dist(init), std::move(fin)),
                          std::move(state_names)};
}

std::string write_relation(const NamedRelation& r, const NamedAutomaton& left,
                           const NamedAutomaton& right) {
    std::ostringstream os;
    os << "relation " << r.name << " from " << r.left << " to " << r.right << "\n";
    for (const auto& [x, d] : r.rel.pairs()) {
        os << "pair " << left.state_names.at(x) << " ~";
        for (const auto& [y, w] : d.entries())
            os << " " << right.state_names.at(y) << ":" << rat_to_string(w);
        os << "\n";
    }
    return os.str();
}

NamedRelation read_relation(const std::string& text, const NamedAutomaton& left,
                            const NamedAutomaton& right) {
    std::istringstream is(text);
    std::string line;
    unsigned lineno = 0;
    NamedRelation out;
    while (std::getline(is, line)) {
        ++lineno;
        auto w = split_words(strip_comment(line));
        if (w.empty()) continue;
        if (w[0] == "relation") {
            if (w.size() != 6 || w[2] != "from" || w[4] != "to")
                throw ParseError("expected 'relation NAME from LEFT to RIGHT'", lineno, 1);
            out.name = w[1];
            out.left = w[3];
            out.right = w[5];
        } else if (w[0] == "pair") {
            if (w.size() < 4 || w[2] != "~")
                throw ParseError("expected 'pair STATE ~ S:P ...'", lineno, 1);
            StateId x = left.state_by_name(w[1]);
            std::vector<Dist::Entry> es;
            for (std::size_t i = 3; i < w.size(); ++i) {
                auto [s, p] = parse_weighted(w[i], lineno);
                es.emplace_back(right.state_by_name(s), p);
            }
            out.rel.add(x, Dist(std::move(es)));
        } else {
            throw ParseError("unknown directive '" + w[0] + "'", lineno, 1);
        }
    }
    return out;
}

std::string write_dot(const NamedAutomaton& na) {
    const ProbAutomaton& a = na.automaton;
    std::ostringstream os;
    os << "digraph " << na.name << " {\n";
    os << "  rankdir=TB;\n";
    os << "  __init [shape=point, style=invis];\n";
    for (StateId s : a.states()) {
        os << "  " << na.state_names.at(s) << " [shape="
           << (a.is_final(s) ? "doublecircle" : "circle") << "];\n";
    }
    unsigned dist_counter = 0;
    auto emit_dist = [&](const std::string& src, const std::string& label, const Dist& d,
                         bool init_edge) {
        const char* style = init_edge ? " [style=bold]" : "";
        if (d.is_point()) {
            os << "  " << src << " -> " << na.state_names.at(d.entries().front().first);
            if (!label.empty())
                os << " [label=\"" << label << "\"]";
            else
                os << style;
            os << ";\n";
            return;
        }
        std::string dn = "d" + std::to_string(dist_counter++);
        os << "  " << dn << " [shape=point];\n";
        os << "  " << src << " -> " << dn;
        if (!label.empty()) os << " [label=\"" << label << "\"]";
        os << ";\n";
        for (const auto& [y, w] : d.entries())
            os << "  " << dn << " -> " << na.state_names.at(y) << " [style=dashed, label=\""
               << rat_to_string(w) << "\"];\n";
    };
    emit_dist("__init", "", a.initial(), true);
    for (const auto& t : a.transitions())
        emit_dist(na.state_names.at(t.src), a.alphabet()->name_of(t.act), t.target, false);
    os << "}\n";
    return os.str();
}

const RGQuintuple& RGScenario::quintuple(const std::string& name) const {
    for (const auto& q : quintuples)
        if (q.name == name) return q;
    throw std::invalid_argument("unknown quintuple '" + name + "'");
}

RGScenario parse_rg_scenario(const std::string& text) {
    // Separate term-language lines from scenario stanzas.
    std::istringstream is(text);
    std::string line;
    std::string term_lines;
    std::vector<std::pair<unsigned, std::string>> stanza_lines;
    unsigned lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto w = split_words(strip_comment(line));
        if (w.empty()) continue;
        if (w[0] == "external" || w[0] == "internal" || w[0] == "def")
            term_lines += strip_comment(line) + "\n";
        else
            stanza_lines.emplace_back(lineno, strip_comment(line));
    }

    RGScenario sc;
    sc.terms = parse_term_file(term_lines);

    auto term_of = [&](const std::string& token, unsigned ln) {
        if (TermPtr t = sc.terms.find(token)) return t;
        try {
            return parse_expr(token, sc.terms.alphabet);
        } catch (const ParseError&) {
            throw ParseError("'" + token + "' is neither a defined term nor an expression",
                             ln, 1);
        }
    };

    for (const auto& [ln, raw] : stanza_lines) {
        auto w = split_words(raw);
        if (w[0] == "frame") {
            sc.frame.assign(w.begin() + 1, w.end());
        } else if (w[0] == "quintuple") {
            // quintuple NAME = P R { U } Q G
            if (w.size() != 10 || w[2] != "=" || w[5] != "{" || w[7] != "}")
                throw ParseError("expected 'quintuple NAME = P R { U } Q G'", ln, 1);
            RGQuintuple q;
            q.name = w[1];
            q.pre = term_of(w[3], ln);
            q.rely = term_of(w[4], ln);
            q.component = term_of(w[6], ln);
            q.post = term_of(w[8], ln);
            q.guarantee = term_of(w[9], ln);
            q.frame = sc.frame;
            sc.quintuples.push_back(std::move(q));
        } else if (w[0] == "rule" || w[0] == "check") {
            RGScenario::Stanza st;
            if (w[0] == "check") {
                if (w.size() != 3 || w[1] != "holds")
                    throw ParseError("expected 'check holds NAME'", ln, 1);
                st.rule = "holds";
                st.args["quintuple"] = w[2];
            } else {
                if (w.size() < 2) throw ParseError("expected 'rule KIND key=value...'", ln, 1);
                st.rule = w[1];
                for (std::size_t i = 2; i < w.size(); ++i) {
                    auto eq = w[i].find('=');
                    if (eq == std::string::npos)
                        throw ParseError("expected key=value, got '" + w[i] + "'", ln, 1);
                    st.args[w[i].substr(0, eq)] = w[i].substr(eq + 1);
                }
            }
            sc.stanzas.push_back(std::move(st));
        } else {
            throw ParseError("unknown scenario directive '" + w[0] + "'", ln, 1);
        }
    }
    if (sc.frame.empty())
        for (ActionId a : sc.terms.alphabet->external_ids())
            sc.frame.push_back(sc.terms.alphabet->name_of(a));
    for (auto& q : sc.quintuples) q.frame = sc.frame;
    return sc;
}

std::pair<std::vector<std::string>, bool> run_rg_scenario(const RGScenario& sc,
                                                          const CheckConfig& cfg) {
    std::vector<std::string> lines;
    bool all_ok = true;
    auto term_of = [&](const std::string& token) {
        if (TermPtr t = sc.terms.find(token)) return t;
        return parse_expr(token, sc.terms.alphabet);
    };
    auto emit_report = [&](const std::string& label, const RGReport& rep) {
        for (const auto& c : rep.premises) {
            lines.push_back("RG " + label + " premise " + c.name + " -> " +
                            verdict_name(c.verdict));
            all_ok &= c.verdict == Verdict::verified;
        }
        for (const auto& c : rep.conclusion) {
            lines.push_back("RG " + label + " conclusion " + c.name + " -> " +
                            verdict_name(c.verdict));
            all_ok &= c.verdict == Verdict::verified;
        }
        for (const auto& wmsg : rep.warnings)
            lines.push_back("RG " + label + " warning: " + wmsg);
        lines.push_back("RG " + label + " overall -> " + verdict_name(rep.overall()));
    };
    for (const auto& st : sc.stanzas) {
        if (st.rule == "holds") {
            const auto& q = sc.quintuple(st.args.at("quintuple"));
            emit_report("holds(" + q.name + ")", holds(q, cfg, sc.terms.alphabet));
        } else if (st.rule == "asymmetric") {
            emit_report("asymmetric",
                        rule_asymmetric(sc.quintuple(st.args.at("premise1")),
                                        sc.quintuple(st.args.at("premise2")), cfg,
                                        sc.terms.alphabet));
        } else if (st.rule == "concurrent") {
            emit_report("concurrent",
                        rule_concurrent_isolated(sc.quintuple(st.args.at("premise1")),
                                                 sc.quintuple(st.args.at("premise2")),
                                                 term_of(st.args.at("pre")), cfg,
                                                 sc.terms.alphabet));
        } else if (st.rule == "general") {
            emit_report("general",
                        rule_general_env(sc.quintuple(st.args.at("premise1")),
                                         sc.quintuple(st.args.at("premise2")),
                                         term_of(st.args.at("side")),
                                         term_of(st.args.at("pre")), cfg,
                                         sc.terms.alphabet));
        } else if (st.rule == "sequential") {
            emit_report("sequential",
                        rule_sequential(sc.quintuple(st.args.at("premise1")),
                                        sc.quintuple(st.args.at("premise2")), cfg,
                                        sc.terms.alphabet));
        } else {
            throw std::invalid_argument("unknown rule '" + st.rule + "'");
        }
    }
    return {lines, all_ok};
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    f << content;
}

}  // namespace pcka
