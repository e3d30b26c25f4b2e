#include "pcka/rg.hpp"

#include <algorithm>

namespace pcka {

namespace {

Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::refuted || b == Verdict::refuted) return Verdict::refuted;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive)
        return Verdict::inconclusive;
    return Verdict::verified;
}

Verdict fold(const std::vector<RGCheck>& checks) {
    Verdict v = Verdict::verified;
    for (const auto& c : checks) v = combine(v, c.verdict);
    return v;
}

AlphabetPtr pick_alphabet(const AlphabetPtr& given) {
    return given ? given : default_law_alphabet();
}

Verdict leq_terms(const TermPtr& a, const TermPtr& b, const CheckConfig& cfg,
                  const AlphabetPtr& alpha) {
    return leq(compile(a, alpha), compile(b, alpha), cfg).verdict;
}

std::vector<std::string> used_externals(const TermPtr& u, const TermPtr& u2,
                                        const ActionAlphabet& alpha) {
    auto a = actions_used(u, alpha);
    auto b = actions_used(u2, alpha);
    std::set<std::string> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return {s.begin(), s.end()};
}

}  // namespace

Verdict RGReport::premises_verdict() const { return fold(premises); }
Verdict RGReport::conclusion_verdict() const { return fold(conclusion); }
Verdict RGReport::overall() const {
    return combine(premises_verdict(), conclusion_verdict());
}

RGReport holds(const RGQuintuple& q, const CheckConfig& cfg, const AlphabetPtr& alphabet) {
    AlphabetPtr alpha = pick_alphabet(alphabet);
    RGReport rep;
    rep.rule = "holds";
    TermPtr guarded = t_seq(q.pre, t_par(q.rely, q.frame, q.component));
    rep.premises.push_back(
        {"P.(R||U) <= Q", leq_terms(guarded, q.post, cfg, alpha), q.name});
    rep.premises.push_back(
        {"U <= G", leq_terms(q.component, q.guarantee, cfg, alpha), q.name});
    return rep;
}

RGReport rule_concurrent_isolated(const RGQuintuple& q1, const RGQuintuple& q2,
                                  const TermPtr& t_pre, const CheckConfig& cfg,
                                  const AlphabetPtr& alphabet) {
    AlphabetPtr alpha = pick_alphabet(alphabet);
    RGReport rep;
    rep.rule = "concurrent-isolated";

    auto e1 = actions_used(q1.component, *alpha);
    auto e2 = actions_used(q2.component, *alpha);
    if (e1 != e2)
        rep.warnings.push_back(
            "component external action sets do not coincide; the rule's proof "
            "assumes they do");

    for (auto& c : holds(q1, cfg, alpha).premises) {
        c.detail = "premise 1";
        rep.premises.push_back(std::move(c));
    }
    for (auto& c : holds(q2, cfg, alpha).premises) {
        c.detail = "premise 2";
        rep.premises.push_back(std::move(c));
    }
    rep.premises.push_back(
        {"G <= R'", leq_terms(q1.guarantee, q2.rely, cfg, alpha), ""});
    rep.premises.push_back(
        {"G' <= R", leq_terms(q2.guarantee, q1.rely, cfg, alpha), ""});
    rep.premises.push_back({"T <= P", leq_terms(t_pre, q1.pre, cfg, alpha), ""});
    rep.premises.push_back({"T <= P'", leq_terms(t_pre, q2.pre, cfg, alpha), ""});

    TermPtr both = t_par(q1.component, q1.frame, q2.component);
    TermPtr run_t = t_run(used_externals(q1.component, q2.component, *alpha));
    TermPtr guar = t_par(q1.guarantee, q1.frame, q2.guarantee);

    RGQuintuple concl{"conclusion", t_pre, run_t, both, q1.post, guar, q1.frame};
    for (auto& c : holds(concl, cfg, alpha).premises) {
        c.detail = "conclusion (postcondition Q)";
        rep.conclusion.push_back(std::move(c));
    }
    RGQuintuple concl2{"conclusion-symmetric", t_pre, run_t, both, q2.post, guar, q1.frame};
    rep.conclusion.push_back({"T.(run||U||U') <= Q'",
                              holds(concl2, cfg, alpha).premises.front().verdict,
                              "symmetric postcondition"});
    return rep;
}

RGReport rule_asymmetric(const RGQuintuple& q_env, const RGQuintuple& q2,
                         const CheckConfig& cfg, const AlphabetPtr& alphabet) {
    AlphabetPtr alpha = pick_alphabet(alphabet);
    RGReport rep;
    rep.rule = "asymmetric";

    for (auto& c : holds(q_env, cfg, alpha).premises) {
        c.detail = "premise 1 (environment)";
        rep.premises.push_back(std::move(c));
    }
    for (auto& c : holds(q2, cfg, alpha).premises) {
        c.detail = "premise 2";
        rep.premises.push_back(std::move(c));
    }
    rep.premises.push_back(
        {"G <= R'", leq_terms(q_env.guarantee, q2.rely, cfg, alpha), ""});

    TermPtr both = t_par(q_env.component, q_env.frame, q2.component);
    TermPtr run_t = t_run(used_externals(q_env.component, q2.component, *alpha));
    TermPtr guar = t_par(q_env.guarantee, q_env.frame, q2.guarantee);
    RGQuintuple concl{"conclusion", q2.pre, run_t, both, q2.post, guar, q_env.frame};
    for (auto& c : holds(concl, cfg, alpha).premises) {
        c.detail = "conclusion";
        rep.conclusion.push_back(std::move(c));
    }
    return rep;
}

RGReport rule_general_env(const RGQuintuple& q1, const RGQuintuple& q2, const TermPtr& s_env,
                          const TermPtr& t_pre, const CheckConfig& cfg,
                          const AlphabetPtr& alphabet) {
    AlphabetPtr alpha = pick_alphabet(alphabet);
    RGReport rep;
    rep.rule = "general-environment";

    for (auto& c : holds(q1, cfg, alpha).premises) {
        c.detail = "premise 1";
        rep.premises.push_back(std::move(c));
    }
    for (auto& c : holds(q2, cfg, alpha).premises) {
        c.detail = "premise 2";
        rep.premises.push_back(std::move(c));
    }
    rep.premises.push_back(
        {"G <= R'", leq_terms(q1.guarantee, q2.rely, cfg, alpha), ""});
    rep.premises.push_back(
        {"G' <= R", leq_terms(q2.guarantee, q1.rely, cfg, alpha), ""});
    rep.premises.push_back({"S <= R", leq_terms(s_env, q1.rely, cfg, alpha), ""});
    rep.premises.push_back({"S <= R'", leq_terms(s_env, q2.rely, cfg, alpha), ""});
    rep.premises.push_back(
        {"S||S <= S", leq_terms(t_par(s_env, q1.frame, s_env), s_env, cfg, alpha), ""});
    rep.premises.push_back({"T <= P", leq_terms(t_pre, q1.pre, cfg, alpha), ""});
    rep.premises.push_back({"T <= P'", leq_terms(t_pre, q2.pre, cfg, alpha), ""});

    TermPtr both = t_par(q1.component, q1.frame, q2.component);
    TermPtr guar = t_par(q1.guarantee, q1.frame, q2.guarantee);
    RGQuintuple concl{"conclusion", t_pre, s_env, both, q1.post, guar, q1.frame};
    for (auto& c : holds(concl, cfg, alpha).premises) {
        c.detail = "conclusion";
        rep.conclusion.push_back(std::move(c));
    }
    return rep;
}

RGReport rule_sequential(const RGQuintuple& q1, const RGQuintuple& q2, const CheckConfig& cfg,
                         const AlphabetPtr& alphabet) {
    AlphabetPtr alpha = pick_alphabet(alphabet);
    RGReport rep;
    rep.rule = "sequential";

    for (auto& c : holds(q1, cfg, alpha).premises) {
        c.detail = "premise 1";
        rep.premises.push_back(std::move(c));
    }
    for (auto& c : holds(q2, cfg, alpha).premises) {
        c.detail = "premise 2";
        rep.premises.push_back(std::move(c));
    }
    rep.premises.push_back({"Q <= P'", leq_terms(q1.post, q2.pre, cfg, alpha), ""});

    auto e1 = actions_used(q1.component, *alpha);
    auto e2 = actions_used(q2.component, *alpha);
    if (e1 != e2)
        rep.warnings.push_back(
            "component external action sets do not coincide; the frame equality "
            "premise usually fails without this");

    TermPtr lhs_eq = t_seq(t_par(q1.rely, q1.frame, q1.component),
                           t_par(q2.rely, q1.frame, q2.component));
    TermPtr rhs_eq = t_par(t_seq(q1.rely, q2.rely), q1.frame,
                           t_seq(q1.component, q2.component));
    EquivResult er = equiv(compile(lhs_eq, alpha), compile(rhs_eq, alpha), cfg);
    rep.premises.push_back(
        {"(R||U).(R'||U') == (R.R')||(U.U')", er.verdict(), ""});

    RGQuintuple concl{"conclusion",
                      q1.pre,
                      t_seq(q1.rely, q2.rely),
                      t_seq(q1.component, q2.component),
                      q2.post,
                      t_seq(q1.guarantee, q2.guarantee),
                      q1.frame};
    for (auto& c : holds(concl, cfg, alpha).premises) {
        c.detail = "conclusion";
        rep.conclusion.push_back(std::move(c));
    }
    return rep;
}

const char* vending_machine_definitions() {
    return R"(external coin kick tea fail
internal stuck
def M  = (stuck . kick +[1/5] tea . 0)* . 0
def Up = kick . (kick . fail* + tea) + tea
def H  = kick . kick . run{kick,tea,fail} +[1/25] (kick . tea . 0 + tea . 0)
def Qp = kick . kick . fail* +[1/25] (kick + tea) . tea*
def Q  = coin . Qp
def V  = coin . M
def U  = coin . Up
def R  = run{kick,tea,fail}
)";
}

bool VendingReport::ok() const {
    return asymmetric.overall() == Verdict::verified && spec_refines == Verdict::verified &&
           strengthened_interchange == Verdict::verified &&
           final_claim == Verdict::verified && post_split_structural;
}

VendingReport vending_machine_case_study(const CheckConfig& cfg) {
    TermFile f = parse_term_file(vending_machine_definitions());
    AlphabetPtr alpha = f.alphabet;
    TermPtr m = f.find("M"), up = f.find("Up"), h = f.find("H"), qp = f.find("Qp"),
            q = f.find("Q"), v = f.find("V"), u = f.find("U"), run_t = f.find("R");
    std::vector<std::string> frame = {"coin", "kick", "tea", "fail"};

    VendingReport rep;
    rep.alphabet = alpha;

    RGQuintuple env{"env", t_one(), run_t, m, run_t, h, frame};
    RGQuintuple user{"user", t_act("coin"), h, up, q, run_t, frame};
    rep.asymmetric = rule_asymmetric(env, user, cfg, alpha);

    rep.spec_refines = leq_terms(t_par(h, frame, up), qp, cfg, alpha);

    EquivResult si = equiv(compile(t_par(v, frame, u), alpha),
                           compile(t_seq(t_act("coin"), t_par(m, frame, up)), alpha), cfg);
    rep.strengthened_interchange = si.verdict();

    rep.final_claim = leq_terms(t_par(v, frame, u), q, cfg, alpha);

    // The specification carries its probability split at the root choice.
    rep.post_split_structural = q->kind == Term::Kind::seq &&
                                q->rhs->kind == Term::Kind::pchoice &&
                                q->rhs->prob == rat(1, 25);
    if (rep.post_split_structural) {
        ProbAutomaton qa = compile(q, alpha);
        bool found = false;
        for (const auto& t : qa.transitions()) {
            if (t.target.support_size() != 2) continue;
            const auto& es = t.target.entries();
            if ((es[0].second == rat(1, 25) && es[1].second == rat(24, 25)) ||
                (es[0].second == rat(24, 25) && es[1].second == rat(1, 25)))
                found = true;
        }
        rep.post_split_structural = found;
    }
    return rep;
}

}  // namespace pcka
