#pragma once

#include "phragmen/caps.hpp"
#include "phragmen/loads.hpp"
#include "phragmen/profile.hpp"
#include "phragmen/twins.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace phragmen {

/// One greedy round: candidate scores over the remaining field, the winner,
/// the tied set at the minimum, and the voter loads after the update.
struct SeqRound {
    int index = 0;                                 // 1-based
    std::vector<std::pair<int, Rational>> scores;  // remaining candidates, roster order
    int chosen = -1;
    std::vector<int> tied;
    VoterLoadVector loads;                         // post-round
    Rational maxLoad;                              // == score of the chosen candidate

    std::optional<Rational> scoreOf(int cand) const {
        for (const auto& [c, v] : scores)
            if (c == cand) return v;
        return std::nullopt;
    }
};

struct SeqTrace {
    std::vector<SeqRound> rounds;
};

struct SeqResult {
    std::vector<Committee> committees; // canonical order
    std::vector<SeqTrace> traces;      // parallel to committees
};

using SeqOptions = ExploreOptions;

/// Greedy score: the common load the supporters end on when one additional
/// unit is spread over them optimally, on top of their current loads.
inline Rational seq_score(const VoterLoadVector& loads, const VoterSet& supporters) {
    if (supporters.none()) throw std::invalid_argument("seq_score: empty supporter set");
    Rational sum(1);
    for (auto i = supporters.find_first(); i != VoterSet::npos; i = supporters.find_next(i))
        sum += loads[i];
    return sum / static_cast<int>(supporters.count());
}

namespace detail {

inline SeqRound seq_round(const ApprovalProfile& profile, const VoterLoadVector& loads,
                          const std::vector<int>& remaining, int index) {
    SeqRound round;
    round.index = index;
    Rational best;
    bool first = true;
    for (int c : remaining) {
        Rational score = seq_score(loads, profile.supporters(c));
        round.scores.emplace_back(c, score);
        if (first || score < best) {
            best = score;
            first = false;
        }
    }
    for (const auto& [c, score] : round.scores)
        if (score == best) round.tied.push_back(c);
    round.maxLoad = best;
    return round;
}

inline void seq_apply(const ApprovalProfile& profile, SeqRound& round, VoterLoadVector& loads,
                      int chosen) {
    round.chosen = chosen;
    const VoterSet& sup = profile.supporters(chosen);
    for (auto i = sup.find_first(); i != VoterSet::npos; i = sup.find_next(i))
        loads[i] = round.maxLoad;
    round.loads = loads;
}

inline SeqTrace remap_seq_trace(const SeqTrace& trace, const std::vector<int>& perm) {
    SeqTrace out = trace;
    for (auto& round : out.rounds) {
        round.chosen = perm[round.chosen];
        for (auto& c : round.tied) c = perm[c];
        std::sort(round.tied.begin(), round.tied.end());
        for (auto& [c, score] : round.scores) c = perm[c];
        std::sort(round.scores.begin(), round.scores.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return out;
}

} // namespace detail

/// Runs k greedy rounds, each electing a candidate minimizing the new maximum
/// voter load. Canonical mode breaks score ties by roster order; explore-all
/// branches on every tie and reports each reachable final committee once,
/// with the trace of the first branch that reached it.
inline SeqResult seq_phragmen(const ApprovalProfile& profile, int k,
                              TieMode ties = TieMode::Canonical, SeqOptions options = {}) {
    if (k < 1 || k > profile.candidateCount())
        throw std::invalid_argument("committee size must be between 1 and " +
                                    std::to_string(profile.candidateCount()));

    std::vector<int> all(profile.candidateCount());
    for (int c = 0; c < profile.candidateCount(); ++c) all[c] = c;

    if (ties == TieMode::Canonical) {
        VoterLoadVector loads(profile.voterCount(), Rational(0));
        std::vector<int> remaining = all;
        std::vector<int> elected;
        SeqTrace trace;
        for (int j = 1; j <= k; ++j) {
            SeqRound round = detail::seq_round(profile, loads, remaining, j);
            int chosen = round.tied.front();
            detail::seq_apply(profile, round, loads, chosen);
            remaining.erase(std::find(remaining.begin(), remaining.end(), chosen));
            elected.push_back(chosen);
            trace.rounds.push_back(std::move(round));
        }
        SeqResult result;
        result.committees.push_back(Committee(elected));
        result.traces.push_back(std::move(trace));
        return result;
    }

    detail::TwinClasses twins(profile);
    std::map<Committee, SeqTrace> found;
    std::uint64_t leaves = 0;

    std::function<void(VoterLoadVector&, std::vector<int>&, std::vector<int>&, SeqTrace&)> dfs =
        [&](VoterLoadVector& loads, std::vector<int>& remaining, std::vector<int>& elected,
            SeqTrace& trace) {
            int j = static_cast<int>(elected.size()) + 1;
            if (j > k) {
                if (++leaves > options.explorationCap)
                    throw EnumerationCapError("tie exploration exceeds the cap of " +
                                              std::to_string(options.explorationCap));
                found.try_emplace(Committee(elected), trace);
                return;
            }
            SeqRound round = detail::seq_round(profile, loads, remaining, j);
            for (int chosen : twins.representatives(round.tied)) {
                VoterLoadVector nextLoads = loads;
                SeqRound branchRound = round;
                detail::seq_apply(profile, branchRound, nextLoads, chosen);
                std::vector<int> nextRemaining;
                for (int c : remaining)
                    if (c != chosen) nextRemaining.push_back(c);
                elected.push_back(chosen);
                trace.rounds.push_back(std::move(branchRound));
                dfs(nextLoads, nextRemaining, elected, trace);
                trace.rounds.pop_back();
                elected.pop_back();
            }
        };

    VoterLoadVector loads(profile.voterCount(), Rational(0));
    std::vector<int> remaining = all;
    std::vector<int> elected;
    SeqTrace trace;
    dfs(loads, remaining, elected, trace);

    std::map<Committee, SeqTrace> finalSet;
    if (options.expandSymmetric) {
        for (const auto& [base, baseTrace] : found)
            detail::for_each_twin_expansion(
                twins, base, options.explorationCap,
                [&](const Committee& expanded, const std::vector<int>& perm) {
                    bool identity = expanded == base;
                    finalSet.try_emplace(expanded, identity
                                                       ? baseTrace
                                                       : detail::remap_seq_trace(baseTrace, perm));
                });
    } else {
        finalSet = std::move(found);
    }

    SeqResult result;
    for (auto& [committee, tr] : finalSet) {
        result.committees.push_back(committee);
        result.traces.push_back(std::move(tr));
    }
    return result;
}

} // namespace phragmen
