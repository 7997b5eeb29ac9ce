#pragma once

#include "phragmen/loads.hpp"
#include "phragmen/maxflow.hpp"
#include "phragmen/profile.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace phragmen {

/// One stage of the peeling decomposition: the candidate subset T fixing the
/// level, the voters carrying it, and the level value |T| / |N(T)|.
struct PeelLevel {
    std::vector<int> candidates;
    VoterSet voters;
    Rational level;
};

/// The optimally balanced load distribution for a fixed committee, together
/// with the decomposition certifying it. The load vector is simultaneously
/// leximax-minimal and sum-of-squares-minimal over all valid distributions
/// supported on the committee.
struct BalanceCertificate {
    Committee committee;
    VoterLoadVector loads;
    LoadDistribution distribution;
    std::vector<PeelLevel> levels;
};

namespace detail {

/// Sorted-vector run: `count` voters at level tSize/nSize. Levels strictly
/// decrease along a run sequence; voters beyond the covered prefix carry 0.
struct LevelRun {
    int tSize;
    int nSize; // denominator of the level
    int count; // voters carrying this level (== nSize at a peel step)
};

/// Reusable buffers for the subset recursion; enumeration loops thread one
/// instance through every committee to avoid reallocating bitsets.
struct PeelScratch {
    std::vector<VoterSet> covered;    // per recursion depth
    std::vector<VoterSet> restricted; // supporter sets ∩ active voters
    VoterSet active;
    VoterSet levelVoters;

    void ensure(int depth, int voters) {
        while (static_cast<int>(covered.size()) < depth + 1) covered.emplace_back();
        while (static_cast<int>(restricted.size()) < depth) restricted.emplace_back();
        for (auto& b : covered) b.resize(voters);
        for (auto& b : restricted) b.resize(voters);
        active.resize(voters);
        levelVoters.resize(voters);
    }
};

struct RawLevel {
    std::int64_t num = 0; // |T|
    std::int64_t den = 1; // |N(T)| within the active voters
    std::uint32_t unionMask = 0; // over indices of `remaining`
};

inline void densest_step(const std::vector<int>& remaining, std::size_t idx,
                         std::uint32_t chosenMask, int chosenCount, PeelScratch& s,
                         RawLevel& best) {
    if (idx == remaining.size()) {
        if (chosenCount == 0) return;
        std::int64_t den = static_cast<std::int64_t>(s.covered[idx].count());
        if (den == 0) throw std::logic_error("committee member without remaining supporters");
        std::int64_t lhs = chosenCount * best.den, rhs = best.num * den;
        if (lhs > rhs) {
            best.num = chosenCount;
            best.den = den;
            best.unionMask = chosenMask;
        } else if (lhs == rhs) {
            best.unionMask |= chosenMask;
        }
        return;
    }
    s.covered[idx + 1] = s.covered[idx];
    densest_step(remaining, idx + 1, chosenMask, chosenCount, s, best);
    s.covered[idx + 1] = s.covered[idx];
    s.covered[idx + 1] |= s.restricted[idx];
    densest_step(remaining, idx + 1, chosenMask | (1u << idx), chosenCount + 1, s, best);
}

/// Maximizes |T| / |N(T) ∩ active| over non-empty T ⊆ remaining and returns
/// the union of all maximizers (itself a maximizer, and the canonical
/// inclusion-maximal one). The union of two maximizers stays maximal because
/// coverage is submodular.
inline RawLevel densest_level(const ApprovalProfile& profile, const std::vector<int>& remaining,
                              PeelScratch& s) {
    const int r = static_cast<int>(remaining.size());
    if (r > 22) throw std::invalid_argument("balance peeling supports committees up to size 22");
    s.ensure(r, profile.voterCount());
    for (int j = 0; j < r; ++j) {
        s.restricted[j] = profile.supporters(remaining[j]);
        s.restricted[j] &= s.active;
    }
    s.covered[0].reset();
    RawLevel best;
    best.num = 0;
    best.den = 1;
    densest_step(remaining, 0, 0, 0, s, best);
    // canonicalize to the union of all maximizers: same ratio value, but the
    // level's candidate and voter counts are the union's
    s.levelVoters.reset();
    std::int64_t unionSize = 0;
    for (int j = 0; j < r; ++j)
        if (best.unionMask & (1u << j)) {
            s.levelVoters |= s.restricted[j];
            ++unionSize;
        }
    best.num = unionSize;
    best.den = static_cast<std::int64_t>(s.levelVoters.count());
    return best;
}

/// Full peeling decomposition as level runs. When `pruneAgainst` is given,
/// peeling aborts with nullopt as soon as the partial run sequence is
/// decidedly leximax-greater than it (produced positions are final).
inline std::optional<std::vector<LevelRun>> peel_runs(const ApprovalProfile& profile,
                                                      const std::vector<int>& members,
                                                      PeelScratch& s,
                                                      const std::vector<LevelRun>* pruneAgainst) {
    std::vector<int> remaining = members;
    s.ensure(static_cast<int>(members.size()), profile.voterCount());
    s.active.set();
    std::vector<LevelRun> runs;
    std::size_t pruneIdx = 0;
    int pruneOffset = 0;

    while (!remaining.empty()) {
        RawLevel level = densest_level(profile, remaining, s);
        s.levelVoters.reset();
        std::vector<int> rest;
        for (std::size_t j = 0; j < remaining.size(); ++j) {
            if (level.unionMask & (1u << j))
                s.levelVoters |= s.restricted[j];
            else
                rest.push_back(remaining[j]);
        }
        LevelRun run{static_cast<int>(level.num), static_cast<int>(level.den),
                     static_cast<int>(level.den)};
        runs.push_back(run);

        if (pruneAgainst) {
            int left = run.count;
            while (left > 0) {
                std::int64_t oNum = 0, oDen = 1;
                int oAvail = left;
                if (pruneIdx < pruneAgainst->size()) {
                    oNum = (*pruneAgainst)[pruneIdx].tSize;
                    oDen = (*pruneAgainst)[pruneIdx].nSize;
                    oAvail = (*pruneAgainst)[pruneIdx].count - pruneOffset;
                }
                std::int64_t lhs = static_cast<std::int64_t>(run.tSize) * oDen;
                std::int64_t rhs = oNum * static_cast<std::int64_t>(run.nSize);
                if (lhs > rhs) return std::nullopt; // decidedly greater
                if (lhs < rhs) {                    // decidedly smaller: stop pruning
                    pruneAgainst = nullptr;
                    break;
                }
                int step = left < oAvail ? left : oAvail;
                left -= step;
                if (pruneIdx < pruneAgainst->size()) {
                    pruneOffset += step;
                    if (pruneOffset == (*pruneAgainst)[pruneIdx].count) {
                        ++pruneIdx;
                        pruneOffset = 0;
                    }
                }
            }
        }

        s.active -= s.levelVoters;
        remaining = std::move(rest);
    }
    return runs;
}

inline VoterLoadVector runs_to_vector_sorted(const std::vector<LevelRun>& runs, int n) {
    VoterLoadVector v;
    v.reserve(n);
    for (const auto& r : runs)
        for (int i = 0; i < r.count; ++i) v.emplace_back(r.tSize, r.nSize);
    while (static_cast<int>(v.size()) < n) v.emplace_back(0);
    return v;
}

inline Rational runs_sum_squares(const std::vector<LevelRun>& runs) {
    Rational total(0);
    for (const auto& r : runs)
        total += Rational(static_cast<std::int64_t>(r.tSize) * r.tSize, r.nSize);
    return total;
}

/// -1 / 0 / +1 for a ≺ b, equal as multisets, a ≻ b on run sequences.
inline int compare_runs(const std::vector<LevelRun>& a, const std::vector<LevelRun>& b) {
    std::size_t ia = 0, ib = 0;
    int offA = 0, offB = 0;
    while (true) {
        bool endA = ia >= a.size(), endB = ib >= b.size();
        if (endA && endB) return 0;
        std::int64_t na = endA ? 0 : a[ia].tSize, da = endA ? 1 : a[ia].nSize;
        std::int64_t nb = endB ? 0 : b[ib].tSize, db = endB ? 1 : b[ib].nSize;
        std::int64_t lhs = na * db, rhs = nb * da;
        if (lhs < rhs) return -1;
        if (lhs > rhs) return 1;
        if (endA || endB) return 0; // equal values with an exhausted side: zeros vs zeros
        int availA = a[ia].count - offA, availB = b[ib].count - offB;
        int step = availA < availB ? availA : availB;
        offA += step;
        offB += step;
        if (offA == a[ia].count) { ++ia; offA = 0; }
        if (offB == b[ib].count) { ++ib; offB = 0; }
    }
}

/// Spreads one unit of load per level candidate over the level's voters so
/// that every voter lands exactly on the level value. Scaled to integers:
/// each candidate supplies |V| units, each voter absorbs |T| units.
inline void assign_level_loads(const ApprovalProfile& profile, const PeelLevel& level,
                               LoadDistribution& out) {
    const int t = static_cast<int>(level.candidates.size());
    const int nv = static_cast<int>(level.voters.count());
    std::vector<int> voters;
    voters.reserve(nv);
    for (int i = 0; i < profile.voterCount(); ++i)
        if (level.voters.test(i)) voters.push_back(i);

    MaxFlow flow(2 + t + nv);
    const int source = 0, sink = 1;
    int edgeCount = 0;
    std::vector<std::tuple<int, int, int>> loadEdges; // (edge index, voter, candidate)
    for (int ci = 0; ci < t; ++ci) {
        flow.addEdge(source, 2 + ci, nv);
        ++edgeCount;
    }
    for (int vi = 0; vi < nv; ++vi) {
        flow.addEdge(2 + t + vi, sink, t);
        ++edgeCount;
    }
    for (int ci = 0; ci < t; ++ci) {
        int c = level.candidates[ci];
        for (int vi = 0; vi < nv; ++vi) {
            if (!profile.supporters(c).test(voters[vi])) continue;
            flow.addEdge(2 + ci, 2 + t + vi, nv);
            loadEdges.emplace_back(edgeCount, voters[vi], c);
            ++edgeCount;
        }
    }
    std::int64_t pushed = flow.run(source, sink);
    if (pushed != static_cast<std::int64_t>(t) * nv)
        throw std::logic_error("level saturation failed; peeling level is infeasible");
    for (auto [e, voter, cand] : loadEdges) {
        std::int64_t f = flow.flowOn(e);
        if (f > 0) out.set(voter, cand, Rational(f, nv));
    }
}

} // namespace detail

/// The optimally balanced voter-load vector for committee S, the peeling
/// decomposition behind it, and a witnessing distribution. Computed by
/// iterated densest-subset peeling: fix the inclusion-maximal T maximizing
/// |T| / |N(T)|, give every voter of N(T) exactly that ratio, remove both
/// sides and recurse on the rest. Levels strictly decrease.
inline BalanceCertificate balanced_loads(const ApprovalProfile& profile,
                                         const Committee& committee) {
    for (int c : committee.members)
        if (c < 0 || c >= profile.candidateCount())
            throw std::invalid_argument("committee member out of range");

    BalanceCertificate cert;
    cert.committee = committee;
    cert.loads.assign(profile.voterCount(), Rational(0));
    cert.distribution.committeeSize = committee.size();

    detail::PeelScratch s;
    s.ensure(committee.size(), profile.voterCount());
    s.active.set();
    std::vector<int> remaining = committee.members;
    while (!remaining.empty()) {
        detail::RawLevel raw = detail::densest_level(profile, remaining, s);
        PeelLevel level;
        level.voters = VoterSet(profile.voterCount());
        std::vector<int> rest;
        for (std::size_t j = 0; j < remaining.size(); ++j) {
            if (raw.unionMask & (1u << j)) {
                level.candidates.push_back(remaining[j]);
                level.voters |= s.restricted[j];
            } else {
                rest.push_back(remaining[j]);
            }
        }
        level.level = Rational(raw.num, raw.den);
        for (int i = 0; i < profile.voterCount(); ++i)
            if (level.voters.test(i)) cert.loads[i] = level.level;
        detail::assign_level_loads(profile, level, cert.distribution);

        s.active -= level.voters;
        remaining = std::move(rest);
        cert.levels.push_back(std::move(level));
    }
    return cert;
}

/// The smallest achievable maximum voter load for committee S; equals the
/// first peeling level, max over non-empty T ⊆ S of |T| / |N(T)|.
inline Rational min_max_load(const ApprovalProfile& profile, const Committee& committee) {
    if (committee.size() == 0) return Rational(0);
    detail::PeelScratch s;
    s.ensure(committee.size(), profile.voterCount());
    s.active.set();
    detail::RawLevel raw = detail::densest_level(profile, committee.members, s);
    return Rational(raw.num, raw.den);
}

} // namespace phragmen
