#pragma once

#include "phragmen/apportionment.hpp"
#include "phragmen/axioms.hpp"
#include "phragmen/balance.hpp"
#include "phragmen/enestrom.hpp"
#include "phragmen/optrules.hpp"
#include "phragmen/profile.hpp"
#include "phragmen/seq.hpp"

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace phragmen::corpus {

// Bundled worked election instances. Voter numbering below follows the order
// in which ballots are listed.

inline const char* kProfile1 = R"(candidates: a b c
1: a
1: a
1: b
1: c
)";

inline const char* kProfile2 = R"(candidates: a b c d
1: a
1: b
1: b c
1: a b c
1: d
)";

inline const char* kProfile5 = R"(candidates: a b c d e f
1: a
1: b
1: c
1: d
1: a e f
1: b e f
1: c e f
1: d e f
)";

inline const char* kProfile6 = R"(candidates: a b c1 c2 c3 c4 c5 c6 c7 c8 c9 c10 c11 c12
2: a b c1
2: a b c2
6: c1 c2 c3 c4 c5 c6 c7 c8 c9 c10 c11 c12
5: c2 c3 c4 c5 c6 c7 c8 c9 c10 c11 c12
9: c3 c4 c5 c6 c7 c8 c9 c10 c11 c12
)";

inline const char* kProfile7 = R"(candidates: a b c d e f g
67: a b c d
12: e
11: f
10: g
)";

inline const char* kProfile8 = R"(candidates: a b c
2: a
3: a c
3: b c
2: b
)";

/// Golden greedy-score table for the 24-voter instance: one row per
/// candidate, one cell per round, "-" once the candidate has left the field.
/// Values are the published 3-decimal renderings.
inline std::vector<std::pair<std::string, std::vector<std::string>>> score_table_golden() {
    auto row = [](std::string name, std::string cells) {
        std::vector<std::string> out;
        std::istringstream in(cells);
        std::string tok;
        while (in >> tok) out.push_back(tok);
        return std::make_pair(std::move(name), std::move(out));
    };
    return {
        row("c1", "0.125 0.163 0.2 0.238 0.275 0.310 0.332 0.369 - - - -"),
        row("c2", "0.077 0.119 0.162 0.204 0.246 - - - - - - -"),
        row("c3", "0.05 - - - - - - - - - - -"),
        row("c4", "0.05 0.1 - - - - - - - - - -"),
        row("c5", "0.05 0.1 0.15 - - - - - - - - -"),
        row("c6", "0.05 0.1 0.15 0.2 - - - - - - - -"),
        row("c7", "0.05 0.1 0.15 0.2 0.25 0.275 - - - - - -"),
        row("c8", "0.05 0.1 0.15 0.2 0.25 0.275 0.325 - - - - -"),
        row("c9", "0.05 0.1 0.15 0.2 0.25 0.275 0.325 0.375 0.388 - - -"),
        row("c10", "0.05 0.1 0.15 0.2 0.25 0.275 0.325 0.375 0.388 0.438 - -"),
        row("c11", "0.05 0.1 0.15 0.2 0.25 0.275 0.325 0.375 0.388 0.438 0.488 -"),
        row("c12", "0.05 0.1 0.15 0.2 0.25 0.275 0.325 0.375 0.388 0.438 0.488 0.538"),
        row("a", "0.25 0.25 0.25 0.25 0.25 0.373 0.373 0.373 0.558 0.558 0.558 0.558"),
        row("b", "0.25 0.25 0.25 0.25 0.25 0.373 0.373 0.373 0.558 0.558 0.558 0.558"),
    };
}

/// Compares a greedy trace against a golden score table: the populated-cell
/// pattern must match, and the 3-decimal rendering of each computed score
/// must be byte-equal to the rendering of the parsed golden cell (so "0.310"
/// and "0.31" normalize to the same string). Returns failure messages.
inline std::vector<std::string> compare_score_table(
    const ApprovalProfile& profile, const SeqTrace& trace,
    const std::vector<std::pair<std::string, std::vector<std::string>>>& golden) {
    std::vector<std::string> failures;
    for (const auto& [name, cells] : golden) {
        int cand = profile.candidateIndex(name);
        if (cand < 0) {
            failures.push_back("unknown candidate " + name + " in golden table");
            continue;
        }
        if (cells.size() != trace.rounds.size()) {
            failures.push_back("round count mismatch for " + name);
            continue;
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            auto score = trace.rounds[j].scoreOf(cand);
            if (cells[j] == "-") {
                if (score)
                    failures.push_back(name + " round " + std::to_string(j + 1) +
                                       ": expected no score, computed " + format_rational(*score));
                continue;
            }
            if (!score) {
                failures.push_back(name + " round " + std::to_string(j + 1) +
                                   ": expected " + cells[j] + ", candidate already elected");
                continue;
            }
            std::string mine = decimal3(*score);
            std::string theirs = decimal3(parse_rational(cells[j]));
            if (mine != theirs)
                failures.push_back(name + " round " + std::to_string(j + 1) + ": computed " +
                                   format_rational(*score) + " -> " + mine + ", expected " +
                                   theirs);
        }
    }
    return failures;
}

struct ExampleCheck {
    std::string id;
    bool passed = true;
    std::vector<std::string> failures;
};

namespace detail {

struct Checker {
    ExampleCheck result;
    explicit Checker(std::string id) { result.id = std::move(id); }

    void fail(const std::string& message) {
        result.passed = false;
        result.failures.push_back(message);
    }
    template <typename T>
    void equal(const T& got, const T& want, const std::string& what) {
        if (!(got == want)) fail(what);
    }
    void committees(const ApprovalProfile& profile, const std::vector<Committee>& got,
                    const std::vector<std::string>& want, const std::string& what) {
        std::vector<Committee> expected;
        for (const auto& text : want) expected.push_back(parse_committee(profile, text));
        std::sort(expected.begin(), expected.end());
        if (got != expected) {
            std::string msg = what + ": got";
            for (const auto& c : got) msg += " " + committee_names(profile, c);
            fail(msg);
        }
    }
    void loads(const VoterLoadVector& got, const std::string& want, const std::string& what) {
        std::vector<Rational> expected;
        std::string spaced = want;
        std::replace(spaced.begin(), spaced.end(), ',', ' ');
        for (const auto& tok : phragmen::detail::split_ws(spaced))
            expected.push_back(parse_rational(tok));
        if (got != expected) fail(what + ": got " + [&] {
            std::string s;
            for (const auto& r : got) s += format_rational(r) + " ";
            return s;
        }());
    }
};

inline void check_example1(Checker& ck) {
    ApprovalProfile profile = parse_profile(kProfile1);
    auto lex = leximax_phragmen(profile, 2);
    ck.committees(profile, lex.committees, {"a,b", "a,c"}, "leximax winners");
    for (const auto& text : {"a,b", "a,c", "b,c"})
        ck.equal(min_max_load(profile, parse_committee(profile, text)), Rational(1),
                 std::string("min-max load of ") + text);
    auto bc = balanced_loads(profile, parse_committee(profile, "b,c"));
    ck.loads(bc.loads, "0,0,1,1", "balanced loads of b,c");
    auto jr = check_jr(profile, 2, parse_committee(profile, "b,c"));
    ck.equal(jr.verdict == Verdict::Violates, true, "b,c fails the unrepresented-group check");
}

inline void check_example2(Checker& ck) {
    ApprovalProfile profile = parse_profile(kProfile2);
    auto [s, d] = profile_stats(profile);
    ck.equal(s, 3, "largest ballot");
    ck.equal(d, 3, "largest supporter set");

    auto lex = leximax_phragmen(profile, 3);
    ck.committees(profile, lex.committees, {"a,b,c"}, "leximax winner");
    ck.loads(lex.certificates[0].loads, "3/4,3/4,3/4,3/4,0", "leximax loads");
    ck.equal(sum_squares(lex.certificates[0].loads), Rational(9, 4), "leximax sum of squares");

    auto var = var_phragmen(profile, 3);
    ck.committees(profile, var.committees, {"a,b,d"}, "variance winner");
    ck.loads(var.certificates[0].loads, "1/2,1/2,1/2,1/2,1", "variance loads");
    ck.equal(sum_squares(var.certificates[0].loads), Rational(2), "variance sum of squares");
}

inline void check_example3(Checker& ck) {
    ApprovalProfile profile = parse_profile(kProfile2);
    auto all = seq_phragmen(profile, 3, TieMode::ExploreAll);
    ck.committees(profile, all.committees, {"a,b,c", "a,b,d"}, "tie-exploring winners");

    auto canonical = seq_phragmen(profile, 3);
    const SeqTrace& trace = canonical.traces[0];
    auto score = [&](int round, const char* name) {
        auto v = trace.rounds[round - 1].scoreOf(profile.candidateIndex(name));
        return v ? *v : Rational(-1);
    };
    ck.equal(score(1, "b"), Rational(1, 3), "first-round score of b");
    ck.equal(score(1, "a"), Rational(1, 2), "first-round score of a");
    ck.equal(score(1, "c"), Rational(1, 2), "first-round score of c");
    ck.equal(score(1, "d"), Rational(1), "first-round score of d");
    ck.equal(score(2, "a"), Rational(2, 3), "second-round score of a");
    ck.equal(score(2, "c"), Rational(5, 6), "second-round score of c");
    ck.equal(score(2, "d"), Rational(1), "second-round score of d");
    ck.equal(score(3, "c"), Rational(1), "third-round score of c");
    ck.equal(score(3, "d"), Rational(1), "third-round score of d");
    std::vector<int> tied = trace.rounds[2].tied;
    ck.equal(tied == std::vector<int>{profile.candidateIndex("c"), profile.candidateIndex("d")},
             true, "third round ties c and d");
}

inline void check_example4(Checker& ck) {
    ApprovalProfile profile = parse_profile(kProfile2);
    auto result = enestrom_phragmen(profile, 3, QuotaKind::Hare);
    ck.committees(profile, result.committees, {"a,b,d"}, "quota-method winner");
    const EnestromTrace& trace = result.traces[0];
    ck.equal(trace.quota, Rational(5, 3), "quota value");
    std::vector<std::string> order;
    for (const auto& round : trace.rounds) order.push_back(profile.candidateName(round.chosen));
    ck.equal(order == std::vector<std::string>{"b", "a", "d"}, true, "selection order b,a,d");
    ck.equal(trace.rounds[0].winningScore, Rational(3), "first-round score of b");
    ck.equal(trace.rounds[0].factor, Rational(4, 9), "first-round weight factor");
    auto scoreOf = [&](int round, const char* name) {
        for (const auto& [c, v] : trace.rounds[round - 1].scores)
            if (c == profile.candidateIndex(name)) return v;
        return Rational(-1);
    };
    ck.equal(scoreOf(2, "a"), Rational(13, 9), "second-round score of a");
    ck.equal(scoreOf(2, "c"), Rational(8, 9), "second-round score of c");
    ck.equal(scoreOf(2, "d"), Rational(1), "second-round score of d");
    ck.equal(trace.rounds[1].factor, Rational(0), "supporters of a zeroed");
    ck.equal(scoreOf(3, "c"), Rational(4, 9), "third-round score of c");
    ck.equal(trace.rounds[2].chosen, profile.candidateIndex("d"), "third round elects d");
}

inline void check_example5(Checker& ck) {
    ApprovalProfile profile = parse_profile(kProfile5);
    auto seq = seq_phragmen(profile, 4);
    std::vector<std::string> order;
    for (const auto& round : seq.traces[0].rounds)
        order.push_back(profile.candidateName(round.chosen));
    ck.equal(order == std::vector<std::string>{"e", "f", "a", "b"}, true,
             "greedy selection order e,f,a,b");
    ck.loads(seq.traces[0].rounds.back().loads, "3/4,3/4,0,0,3/4,3/4,1/2,1/2",
             "greedy final loads");

    auto lex = leximax_phragmen(profile, 4);
    ck.committees(profile, lex.committees, {"a,b,c,d"}, "leximax winner");
    auto var = var_phragmen(profile, 4);
    ck.committees(profile, var.committees, {"a,b,c,d"}, "variance winner");
    ck.loads(lex.certificates[0].loads, "1/2,1/2,1/2,1/2,1/2,1/2,1/2,1/2", "perfect loads");

    auto enestrom = enestrom_phragmen(profile, 4, QuotaKind::Hare);
    ck.committees(profile, enestrom.committees, {"a,b,e,f"}, "quota-method winner");

    auto prSet = exists_pr(profile, 4);
    ck.equal(prSet.has_value(), true, "divisibility gate");
    if (prSet) {
        std::vector<Committee> expected{parse_committee(profile, "a,b,c,d")};
        ck.equal(*prSet == expected, true, "unique perfect-representation committee");
    }
    ck.equal(check_pr_membership(profile, 4, parse_committee(profile, "a,b,e,f")).verdict ==
                 Verdict::Violates,
             true, "e,f,a,b fails perfect representation");

    auto ejr = check_ejr(profile, 4, parse_committee(profile, "a,b,c,d"));
    ck.equal(ejr.verdict == Verdict::Violates, true, "perfect committee fails EJR");
    if (ejr.witness) {
        ck.equal(ejr.witness->ell, 2, "EJR witness demands two seats");
        std::vector<int> t = ejr.witness->candidates;
        ck.equal(t == std::vector<int>{profile.candidateIndex("e"), profile.candidateIndex("f")},
                 true, "EJR witness common set {e,f}");
        VoterSet expected(profile.voterCount());
        for (int v : {4, 5, 6, 7}) expected.set(v);
        ck.equal(ejr.witness->group == expected, true, "EJR witness group voters 5-8");
    } else {
        ck.fail("missing EJR witness");
    }
}

inline void check_example6(Checker& ck) {
    ApprovalProfile profile = parse_profile(kProfile6);
    auto seq = seq_phragmen(profile, 12);
    std::vector<std::string> members;
    for (int c : seq.committees[0].members) members.push_back(profile.candidateName(c));
    std::vector<std::string> expected;
    for (int i = 1; i <= 12; ++i) expected.push_back("c" + std::to_string(i));
    std::sort(expected.begin(), expected.end());
    std::sort(members.begin(), members.end());
    ck.equal(members == expected, true, "winning committee is the c-slate");

    auto ejr = check_ejr(profile, 12, seq.committees[0]);
    ck.equal(ejr.verdict == Verdict::Violates, true, "c-slate fails EJR");
    if (ejr.witness) {
        ck.equal(ejr.witness->ell, 2, "EJR witness demands two seats");
        std::vector<int> t = ejr.witness->candidates;
        ck.equal(t == std::vector<int>{profile.candidateIndex("a"), profile.candidateIndex("b")},
                 true, "EJR witness common set {a,b}");
        ck.equal(static_cast<int>(ejr.witness->group.count()), 4, "EJR witness group size 4");
    } else {
        ck.fail("missing EJR witness");
    }
    auto pjr = check_pjr(profile, 12, seq.committees[0]);
    ck.equal(pjr.verdict == Verdict::Provides, true, "c-slate provides PJR");
}

inline void check_example7(Checker& ck) {
    ApprovalProfile profile = parse_profile(kProfile7);
    auto var = var_phragmen(profile, 6);
    // the four large-party candidates are symmetric; every choice of three of
    // them ties, and the published committee is the canonical first
    ck.committees(profile, var.committees,
                  {"a,b,c,e,f,g", "a,b,d,e,f,g", "a,c,d,e,f,g", "b,c,d,e,f,g"},
                  "variance co-winners");
    ck.equal(var.committees.front() == parse_committee(profile, "a,b,c,e,f,g"), true,
             "canonical first winner");
    auto pjr = check_pjr(profile, 6, parse_committee(profile, "a,b,c,e,f,g"));
    ck.equal(pjr.verdict == Verdict::Violates, true, "variance winner fails PJR");
    if (pjr.witness) {
        ck.equal(pjr.witness->ell, 4, "PJR witness demands four seats");
        std::vector<int> expected;
        for (const char* name : {"a", "b", "c", "d"})
            expected.push_back(profile.candidateIndex(name));
        ck.equal(pjr.witness->candidates == expected, true, "PJR witness common set {a,b,c,d}");
        ck.equal(static_cast<int>(pjr.witness->group.count()), 67, "PJR witness group size 67");
    } else {
        ck.fail("missing PJR witness");
    }
}

inline void check_example8(Checker& ck) {
    ApprovalProfile profile = parse_profile(kProfile8);
    auto lex1 = leximax_phragmen(profile, 1);
    ck.committees(profile, lex1.committees, {"c"}, "leximax k=1");
    auto var1 = var_phragmen(profile, 1);
    ck.committees(profile, var1.committees, {"c"}, "variance k=1");
    auto lex2 = leximax_phragmen(profile, 2);
    ck.committees(profile, lex2.committees, {"a,b"}, "leximax k=2");
    auto var2 = var_phragmen(profile, 2);
    ck.committees(profile, var2.committees, {"a,b"}, "variance k=2");
    // winner sets for k=1 and k=2 are not nested
    ck.equal(lex2.committees[0].contains(profile.candidateIndex("c")), false,
             "committee monotonicity fails");
}

inline void check_table2(Checker& ck) {
    ApprovalProfile profile = parse_profile(kProfile6);
    auto seq = seq_phragmen(profile, 12);
    const SeqTrace& trace = seq.traces[0];
    std::vector<std::string> order;
    for (const auto& round : trace.rounds) order.push_back(profile.candidateName(round.chosen));
    std::vector<std::string> expectedOrder{"c3", "c4", "c5", "c6", "c2", "c7",
                                           "c8", "c1", "c9", "c10", "c11", "c12"};
    ck.equal(order == expectedOrder, true, "selection order");
    for (const auto& failure : compare_score_table(profile, trace, score_table_golden()))
        ck.fail(failure);
}

inline void check_partylist(Checker& ck) {
    VoteVector votes = parse_vote_list("67,12,11,10");
    auto single = [](std::vector<int> z) {
        return std::vector<SeatDistribution>{SeatDistribution{std::move(z)}};
    };
    ck.equal(dhondt(votes, 6) == single({5, 1, 0, 0}), true, "greatest-divisors seats");
    ck.equal(sainte_lague(votes, 6) == single({3, 1, 1, 1}), true, "odd-divisors seats");
    ck.equal(largest_remainder(votes, 6, QuotaKind::Hare) == single({4, 1, 1, 0}), true,
             "largest-remainder seats");
    ck.equal(induced_apportionment(RuleId::Seq, votes, 6) == single({5, 1, 0, 0}), true,
             "greedy rule induces greatest divisors");
    ck.equal(induced_apportionment(RuleId::Leximax, votes, 6) == single({5, 1, 0, 0}), true,
             "leximax rule induces greatest divisors");
    ck.equal(induced_apportionment(RuleId::Var, votes, 6) == single({3, 1, 1, 1}), true,
             "variance rule induces odd divisors");
    ck.equal(induced_apportionment(RuleId::EnestromHare, votes, 6) == single({4, 1, 1, 0}), true,
             "quota rule induces largest remainder");
    ck.equal(check_lower_quota(votes, 6, SeatDistribution{{3, 1, 1, 1}}).verdict ==
                 Verdict::Violates,
             true, "odd-divisors seats break the floor guarantee");
    ck.equal(check_lower_quota(votes, 6, SeatDistribution{{5, 1, 0, 0}}).verdict ==
                 Verdict::Provides,
             true, "greatest-divisors seats keep the floor guarantee");
}

} // namespace detail

/// Runs the bundled corpus (optionally a single case) and reports pass/fail
/// per case.
inline std::vector<ExampleCheck> run_examples(const std::optional<std::string>& only = {}) {
    using Runner = std::function<void(detail::Checker&)>;
    std::vector<std::pair<std::string, Runner>> cases{
        {"example1", detail::check_example1}, {"example2", detail::check_example2},
        {"example3", detail::check_example3}, {"example4", detail::check_example4},
        {"example5", detail::check_example5}, {"example6", detail::check_example6},
        {"example7", detail::check_example7}, {"example8", detail::check_example8},
        {"table2", detail::check_table2},     {"partylist", detail::check_partylist},
    };
    std::vector<ExampleCheck> results;
    bool matched = false;
    for (auto& [id, runner] : cases) {
        if (only && *only != id) continue;
        matched = true;
        detail::Checker ck(id);
        try {
            runner(ck);
        } catch (const std::exception& e) {
            ck.fail(std::string("exception: ") + e.what());
        }
        results.push_back(std::move(ck.result));
    }
    if (only && !matched) throw std::invalid_argument("unknown corpus case '" + *only + "'");
    return results;
}

} // namespace phragmen::corpus
