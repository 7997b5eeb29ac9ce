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

enum class QuotaKind { Hare, Droop };

inline Rational quota_value(QuotaKind kind, int n, int k) {
    return kind == QuotaKind::Hare ? Rational(n, k) : Rational(n, k + 1);
}

/// One quota round: weighted approval scores over the remaining field, the
/// winner, the weight-reduction factor applied to its supporters, and the
/// voter weights afterwards.
struct EnestromRound {
    int index = 0;
    std::vector<std::pair<int, Rational>> scores; // remaining candidates, roster order
    int chosen = -1;
    std::vector<int> tied;
    Rational winningScore;
    Rational factor; // (v - q)/v when v > q, otherwise 0
    std::vector<Rational> weights; // post-round
};

struct EnestromTrace {
    Rational quota;
    std::vector<EnestromRound> rounds;
};

struct EnestromResult {
    std::vector<Committee> committees;
    std::vector<EnestromTrace> traces;
};

namespace detail {

inline EnestromRound enestrom_round(const ApprovalProfile& profile,
                                    const std::vector<Rational>& weights,
                                    const std::vector<int>& remaining, int index) {
    EnestromRound round;
    round.index = index;
    Rational best(-1);
    for (int c : remaining) {
        Rational score(0);
        const VoterSet& sup = profile.supporters(c);
        for (auto i = sup.find_first(); i != VoterSet::npos; i = sup.find_next(i))
            score += weights[i];
        round.scores.emplace_back(c, score);
        if (score > best) best = score;
    }
    for (const auto& [c, score] : round.scores)
        if (score == best) round.tied.push_back(c);
    round.winningScore = best;
    return round;
}

inline void enestrom_apply(const ApprovalProfile& profile, EnestromRound& round,
                           std::vector<Rational>& weights, int chosen, const Rational& quota) {
    round.chosen = chosen;
    round.factor = round.winningScore > quota
                       ? (round.winningScore - quota) / round.winningScore
                       : Rational(0);
    const VoterSet& sup = profile.supporters(chosen);
    for (auto i = sup.find_first(); i != VoterSet::npos; i = sup.find_next(i))
        weights[i] *= round.factor;
    round.weights = weights;
}

inline EnestromTrace remap_enestrom_trace(const EnestromTrace& trace,
                                          const std::vector<int>& perm) {
    EnestromTrace out = trace;
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

/// The quota method: every voter starts with weight 1; each round elects a
/// candidate with maximum weighted approval score v, then multiplies its
/// supporters' weights by (v - q)/v when v exceeds the quota and zeroes them
/// otherwise. Elected candidates leave the scoring immediately.
inline EnestromResult enestrom_phragmen(const ApprovalProfile& profile, int k,
                                        QuotaKind quota = QuotaKind::Hare,
                                        TieMode ties = TieMode::Canonical,
                                        ExploreOptions options = {}) {
    if (k < 1 || k > profile.candidateCount())
        throw std::invalid_argument("committee size must be between 1 and " +
                                    std::to_string(profile.candidateCount()));
    const Rational q = quota_value(quota, profile.voterCount(), k);

    std::vector<int> all(profile.candidateCount());
    for (int c = 0; c < profile.candidateCount(); ++c) all[c] = c;

    if (ties == TieMode::Canonical) {
        std::vector<Rational> weights(profile.voterCount(), Rational(1));
        std::vector<int> remaining = all;
        std::vector<int> elected;
        EnestromTrace trace;
        trace.quota = q;
        for (int j = 1; j <= k; ++j) {
            EnestromRound round = detail::enestrom_round(profile, weights, remaining, j);
            int chosen = round.tied.front();
            detail::enestrom_apply(profile, round, weights, chosen, q);
            remaining.erase(std::find(remaining.begin(), remaining.end(), chosen));
            elected.push_back(chosen);
            trace.rounds.push_back(std::move(round));
        }
        EnestromResult result;
        result.committees.push_back(Committee(elected));
        result.traces.push_back(std::move(trace));
        return result;
    }

    detail::TwinClasses twins(profile);
    std::map<Committee, EnestromTrace> found;
    std::uint64_t leaves = 0;

    std::function<void(std::vector<Rational>&, std::vector<int>&, std::vector<int>&,
                       EnestromTrace&)>
        dfs = [&](std::vector<Rational>& weights, std::vector<int>& remaining,
                  std::vector<int>& elected, EnestromTrace& trace) {
            int j = static_cast<int>(elected.size()) + 1;
            if (j > k) {
                if (++leaves > options.explorationCap)
                    throw EnumerationCapError("tie exploration exceeds the cap of " +
                                              std::to_string(options.explorationCap));
                found.try_emplace(Committee(elected), trace);
                return;
            }
            EnestromRound round = detail::enestrom_round(profile, weights, remaining, j);
            for (int chosen : twins.representatives(round.tied)) {
                std::vector<Rational> nextWeights = weights;
                EnestromRound branchRound = round;
                detail::enestrom_apply(profile, branchRound, nextWeights, chosen, q);
                std::vector<int> nextRemaining;
                for (int c : remaining)
                    if (c != chosen) nextRemaining.push_back(c);
                elected.push_back(chosen);
                trace.rounds.push_back(std::move(branchRound));
                dfs(nextWeights, nextRemaining, elected, trace);
                trace.rounds.pop_back();
                elected.pop_back();
            }
        };

    std::vector<Rational> weights(profile.voterCount(), Rational(1));
    std::vector<int> remaining = all;
    std::vector<int> elected;
    EnestromTrace trace;
    trace.quota = q;
    dfs(weights, remaining, elected, trace);

    std::map<Committee, EnestromTrace> finalSet;
    if (options.expandSymmetric) {
        for (const auto& [base, baseTrace] : found)
            detail::for_each_twin_expansion(
                twins, base, options.explorationCap,
                [&](const Committee& expanded, const std::vector<int>& perm) {
                    bool identity = expanded == base;
                    finalSet.try_emplace(
                        expanded, identity ? baseTrace
                                           : detail::remap_enestrom_trace(baseTrace, perm));
                });
    } else {
        finalSet = std::move(found);
    }

    EnestromResult result;
    for (auto& [committee, tr] : finalSet) {
        result.committees.push_back(committee);
        result.traces.push_back(std::move(tr));
    }
    return result;
}

} // namespace phragmen
