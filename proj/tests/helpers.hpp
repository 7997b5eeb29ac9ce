#pragma once

#include "phragmen/phragmen.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace testutil {

using namespace phragmen;

/// Random approval profile: every voter approves each candidate independently
/// with a probability drawn from [pLo, pHi]; empty ballots get one random
/// candidate, unapproved candidates one random approver.
inline ApprovalProfile random_profile(std::mt19937& rng, int maxVoters, int maxCands,
                                      double pLo = 0.3, double pHi = 0.7) {
    std::uniform_int_distribution<int> nDist(1, maxVoters), mDist(1, maxCands);
    const int n = nDist(rng), m = mDist(rng);
    std::uniform_real_distribution<double> pDist(pLo, pHi);
    const double p = pDist(rng);
    std::bernoulli_distribution approve(p);
    std::uniform_int_distribution<int> candDist(0, m - 1);

    std::vector<std::vector<int>> ballots(n);
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < m; ++c)
            if (approve(rng)) ballots[i].push_back(c);
        if (ballots[i].empty()) ballots[i].push_back(candDist(rng));
    }
    std::vector<char> hasApprover(m, 0);
    for (const auto& b : ballots)
        for (int c : b) hasApprover[c] = 1;
    std::uniform_int_distribution<int> voterDist(0, n - 1);
    for (int c = 0; c < m; ++c)
        if (!hasApprover[c]) {
            int v = voterDist(rng);
            ballots[v].push_back(c);
        }

    std::vector<std::string> names;
    for (int c = 0; c < m; ++c) names.push_back("c" + std::to_string(c + 1));
    std::vector<std::pair<int, std::vector<int>>> grouped;
    for (auto& b : ballots) grouped.emplace_back(1, std::move(b));
    return ApprovalProfile(std::move(names), std::move(grouped));
}

inline int random_k(std::mt19937& rng, const ApprovalProfile& profile, int maxK) {
    std::uniform_int_distribution<int> kDist(1, std::min(maxK, profile.candidateCount()));
    return kDist(rng);
}

inline Committee random_committee(std::mt19937& rng, const ApprovalProfile& profile, int k) {
    std::vector<int> all(profile.candidateCount());
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(k);
    return Committee(all);
}

// ---------------------------------------------------------------------------
// Flow feasibility of a candidate load vector (independent of the peeling
// path): is there a valid distribution on S whose row sums stay within the
// given per-voter caps? Everything is scaled to integers by the caps' common
// denominator.
// ---------------------------------------------------------------------------
inline bool flow_feasible(const ApprovalProfile& profile, const Committee& committee,
                          const VoterLoadVector& caps) {
    const int n = profile.voterCount();
    const int k = committee.size();
    BigInt scale = 1;
    for (const auto& cap : caps) scale = boost::multiprecision::lcm(scale, denominator_of(cap));
    const auto D = static_cast<std::int64_t>(scale);

    MaxFlow flow(2 + k + n);
    const int source = 0, sink = 1;
    for (int ci = 0; ci < k; ++ci) flow.addEdge(source, 2 + ci, D);
    for (int i = 0; i < n; ++i) {
        Rational scaled = caps[i] * D;
        flow.addEdge(2 + k + i, sink, static_cast<std::int64_t>(numerator_of(scaled)));
    }
    for (int ci = 0; ci < k; ++ci) {
        const VoterSet& sup = profile.supporters(committee.members[ci]);
        for (auto i = sup.find_first(); i != VoterSet::npos; i = sup.find_next(i))
            flow.addEdge(2 + ci, 2 + k + static_cast<int>(i), D);
    }
    return flow.run(source, sink) == static_cast<std::int64_t>(k) * D;
}

// ---------------------------------------------------------------------------
// Chain oracle for the balanced load vector: enumerate every ordered
// partition of the committee into non-empty candidate subsets; each chain
// spreads each block evenly over its not-yet-used approvers, giving a
// candidate per-voter vector. Keep the flow-feasible ones and take the
// leximax-smallest. The optimum is generated by one of the chains, and every
// feasible chain vector bounds an achievable vector from above, so the
// minimum over this set is exactly the balanced vector.
// ---------------------------------------------------------------------------
inline std::vector<VoterLoadVector> chain_vectors(const ApprovalProfile& profile,
                                                  const Committee& committee) {
    const int n = profile.voterCount();
    std::vector<VoterLoadVector> out;
    std::vector<int> members = committee.members;

    std::function<void(std::vector<int>, VoterSet, VoterLoadVector)> rec =
        [&](std::vector<int> remaining, VoterSet active, VoterLoadVector acc) {
            if (remaining.empty()) {
                out.push_back(acc);
                return;
            }
            const int r = static_cast<int>(remaining.size());
            for (unsigned mask = 1; mask < (1u << r); ++mask) {
                VoterSet covered(n);
                std::vector<int> rest;
                int tSize = 0;
                for (int j = 0; j < r; ++j) {
                    if (mask & (1u << j)) {
                        covered |= profile.supporters(remaining[j]) & active;
                        ++tSize;
                    } else {
                        rest.push_back(remaining[j]);
                    }
                }
                if (covered.none()) continue; // block has no usable approvers
                Rational level(tSize, static_cast<int>(covered.count()));
                VoterLoadVector next = acc;
                for (auto i = covered.find_first(); i != VoterSet::npos; i = covered.find_next(i))
                    next[i] = level;
                rec(rest, active - covered, std::move(next));
            }
        };
    rec(members, [&] {
        VoterSet all(n);
        all.set();
        return all;
    }(), VoterLoadVector(n, Rational(0)));
    return out;
}

/// The oracle value: leximax-smallest flow-feasible chain vector(s).
inline std::vector<VoterLoadVector> oracle_balanced(const ApprovalProfile& profile,
                                                    const Committee& committee) {
    std::vector<VoterLoadVector> best;
    for (auto& v : chain_vectors(profile, committee)) {
        if (!flow_feasible(profile, committee, v)) continue;
        if (best.empty()) {
            best.push_back(std::move(v));
            continue;
        }
        auto cmp = leximax_compare(v, best.front());
        if (cmp == LeximaxOrder::Less) {
            best.clear();
            best.push_back(std::move(v));
        } else if (cmp == LeximaxOrder::EqualAsMultisets) {
            best.push_back(std::move(v));
        }
    }
    return best;
}

/// Exhaustive max over non-empty T of |T| / |N(T)| (dual bound for the
/// min-max load).
inline Rational oracle_max_ratio(const ApprovalProfile& profile, const Committee& committee) {
    const int r = committee.size();
    Rational best(0);
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
        VoterSet covered(profile.voterCount());
        int tSize = 0;
        for (int j = 0; j < r; ++j)
            if (mask & (1u << j)) {
                covered |= profile.supporters(committee.members[j]);
                ++tSize;
            }
        Rational ratio(tSize, static_cast<int>(covered.count()));
        best = std::max(best, ratio);
    }
    return best;
}

/// A random valid load distribution for the committee: each member spreads
/// its unit load over its approvers with random positive rational weights.
inline LoadDistribution random_distribution(std::mt19937& rng, const ApprovalProfile& profile,
                                            const Committee& committee) {
    LoadDistribution x;
    x.committeeSize = committee.size();
    std::uniform_int_distribution<int> weight(1, 6);
    for (int c : committee.members) {
        const VoterSet& sup = profile.supporters(c);
        std::vector<std::pair<int, int>> weights;
        int total = 0;
        for (auto i = sup.find_first(); i != VoterSet::npos; i = sup.find_next(i)) {
            int w = weight(rng);
            weights.emplace_back(static_cast<int>(i), w);
            total += w;
        }
        for (auto [i, w] : weights) x.set(i, c, Rational(w, total));
    }
    return x;
}

inline VoteVector random_votes(std::mt19937& rng, int maxParties, int maxEntry) {
    std::uniform_int_distribution<int> pDist(1, maxParties), vDist(1, maxEntry);
    std::vector<BigInt> votes;
    const int p = pDist(rng);
    for (int j = 0; j < p; ++j) votes.emplace_back(vDist(rng));
    return VoteVector(std::move(votes));
}

} // namespace testutil
