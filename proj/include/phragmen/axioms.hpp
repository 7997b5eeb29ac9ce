#pragma once

#include "phragmen/caps.hpp"
#include "phragmen/loads.hpp"
#include "phragmen/maxflow.hpp"
#include "phragmen/profile.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace phragmen {

enum class Verdict { Provides, Violates, NotApplicable };

/// A group-based counterexample: `ell` demanded seats, the voter group, and
/// the commonly approved candidate set certifying cohesiveness. Substituting
/// it back into the axiom's defining inequalities re-validates it.
struct ViolationWitness {
    int ell = 0;
    VoterSet group;
    std::vector<int> candidates;
};

/// For perfect representation: each committee member with its assigned block
/// of approving voters.
struct PrPartition {
    std::vector<std::pair<int, VoterSet>> assignment;
};

struct LowerQuotaWitness {
    int party = 0; // 1-based
    BigInt entitled;
    BigInt got;
};

struct AxiomReport {
    std::string axiom;
    Verdict verdict = Verdict::Provides;
    std::optional<ViolationWitness> witness;
    std::optional<PrPartition> partition;
    std::optional<LowerQuotaWitness> lowerQuota;
};

struct AxiomOptions {
    /// Upper bound on candidate-subset iterations in the group searches.
    std::uint64_t workCap = 50'000'000;
};

namespace detail {

inline void bump_work(std::uint64_t& work, std::uint64_t cap) {
    if (++work > cap)
        throw EnumerationCapError("axiom witness search exceeds the work cap; "
                                  "instance too large for exhaustive verification");
}

/// Visits all size-r subsets of `universe`.
template <typename Visit>
void for_each_subset(const std::vector<int>& universe, int r, Visit&& visit) {
    if (r > static_cast<int>(universe.size())) return;
    std::vector<int> pick(r);
    std::function<bool(int, int)> rec = [&](int from, int got) {
        if (got == r) return visit(const_cast<const std::vector<int>&>(pick));
        for (int at = from; at + (r - got) <= static_cast<int>(universe.size()); ++at) {
            pick[got] = universe[at];
            if (!rec(at + 1, got + 1)) return false;
        }
        return true;
    };
    rec(0, 0);
}

enum class PjrThreshold { Standard, Strengthened };

} // namespace detail

/// Justified representation: no group of at least n/k voters with a common
/// candidate may go entirely unrepresented. Complete because any witness
/// group grows to all unrepresented approvers of its common candidate.
inline AxiomReport check_jr(const ApprovalProfile& profile, int k, const Committee& committee) {
    if (committee.size() != k) throw std::invalid_argument("committee size does not match k");
    const int n = profile.voterCount();
    AxiomReport report;
    report.axiom = "jr";
    CandSet mask = committee.mask(profile.candidateCount());

    VoterSet unrepresented(n);
    for (int i = 0; i < n; ++i)
        if (!profile.ballot(i).intersects(mask)) unrepresented.set(i);

    for (int c = 0; c < profile.candidateCount(); ++c) {
        VoterSet group = profile.supporters(c) & unrepresented;
        // |group| >= n/k as exact integers
        if (static_cast<std::int64_t>(group.count()) * k >= n) {
            report.verdict = Verdict::Violates;
            report.witness = ViolationWitness{1, group, {c}};
            return report;
        }
    }
    report.verdict = Verdict::Provides;
    return report;
}

namespace detail {

inline std::optional<ViolationWitness> pjr_witness(const ApprovalProfile& profile, int k,
                                                   const Committee& committee,
                                                   PjrThreshold threshold,
                                                   const AxiomOptions& options) {
    const int n = profile.voterCount();
    const int m = profile.candidateCount();
    CandSet mask = committee.mask(m);
    std::vector<int> allCands(m);
    for (int c = 0; c < m; ++c) allCands[c] = c;
    // footprint of each voter inside the committee
    std::vector<CandSet> inCommittee(n);
    for (int i = 0; i < n; ++i) inCommittee[i] = profile.ballot(i) & mask;

    std::uint64_t work = 0;
    std::optional<ViolationWitness> found;
    for (int ell = 1; ell <= k && !found; ++ell) {
        auto bigEnough = [&](std::int64_t groupSize) {
            return threshold == PjrThreshold::Standard
                       ? groupSize * k >= static_cast<std::int64_t>(ell) * n
                       : groupSize * (k + 1) > static_cast<std::int64_t>(ell) * n;
        };
        detail::for_each_subset(allCands, ell, [&](const std::vector<int>& tSet) {
            detail::bump_work(work, options.workCap);
            VoterSet unanimous(n);
            unanimous.set();
            for (int c : tSet) unanimous &= profile.supporters(c);
            if (!bigEnough(static_cast<std::int64_t>(unanimous.count()))) return true;
            // allowance: committee members the group footprints may touch
            bool keepGoing = true;
            detail::for_each_subset(committee.members, ell - 1, [&](const std::vector<int>& wSet) {
                CandSet allowed(m);
                for (int c : wSet) allowed.set(c);
                VoterSet group(n);
                for (auto i = unanimous.find_first(); i != VoterSet::npos;
                     i = unanimous.find_next(i))
                    if (inCommittee[i].is_subset_of(allowed)) group.set(i);
                if (bigEnough(static_cast<std::int64_t>(group.count()))) {
                    found = ViolationWitness{ell, group, tSet};
                    keepGoing = false;
                    return false;
                }
                return true;
            });
            return keepGoing;
        });
    }
    return found;
}

} // namespace detail

/// Proportional justified representation: every group of at least l*n/k
/// voters commonly approving l candidates must see at least l of its united
/// approvals in the committee. The search enumerates the common candidate set
/// and the committee allowance; any violating group embeds in one of these
/// canonical supersets, so the enumeration is complete.
inline AxiomReport check_pjr(const ApprovalProfile& profile, int k, const Committee& committee,
                             AxiomOptions options = {}) {
    if (committee.size() != k) throw std::invalid_argument("committee size does not match k");
    AxiomReport report;
    report.axiom = "pjr";
    auto witness =
        detail::pjr_witness(profile, k, committee, detail::PjrThreshold::Standard, options);
    if (witness) {
        report.verdict = Verdict::Violates;
        report.witness = std::move(witness);
    }
    return report;
}

/// The strengthened group threshold |N*| > l*n/(k+1); what the sequential
/// rule actually guarantees.
inline AxiomReport check_pjr_strengthened(const ApprovalProfile& profile, int k,
                                          const Committee& committee, AxiomOptions options = {}) {
    if (committee.size() != k) throw std::invalid_argument("committee size does not match k");
    AxiomReport report;
    report.axiom = "pjr-strengthened";
    auto witness =
        detail::pjr_witness(profile, k, committee, detail::PjrThreshold::Strengthened, options);
    if (witness) {
        report.verdict = Verdict::Violates;
        report.witness = std::move(witness);
    }
    return report;
}

/// Extended justified representation: in every such group some voter must
/// hold l committee seats among their own approvals.
inline AxiomReport check_ejr(const ApprovalProfile& profile, int k, const Committee& committee,
                             AxiomOptions options = {}) {
    if (committee.size() != k) throw std::invalid_argument("committee size does not match k");
    const int n = profile.voterCount();
    const int m = profile.candidateCount();
    AxiomReport report;
    report.axiom = "ejr";
    CandSet mask = committee.mask(m);
    std::vector<int> seatCount(n);
    for (int i = 0; i < n; ++i)
        seatCount[i] = static_cast<int>((profile.ballot(i) & mask).count());
    std::vector<int> allCands(m);
    for (int c = 0; c < m; ++c) allCands[c] = c;

    std::uint64_t work = 0;
    for (int ell = 1; ell <= k && report.verdict == Verdict::Provides; ++ell) {
        detail::for_each_subset(allCands, ell, [&](const std::vector<int>& tSet) {
            detail::bump_work(work, options.workCap);
            VoterSet unanimous(n);
            unanimous.set();
            for (int c : tSet) unanimous &= profile.supporters(c);
            VoterSet group(n);
            for (auto i = unanimous.find_first(); i != VoterSet::npos; i = unanimous.find_next(i))
                if (seatCount[i] < ell) group.set(i);
            if (static_cast<std::int64_t>(group.count()) * k >= static_cast<std::int64_t>(ell) * n) {
                report.verdict = Verdict::Violates;
                report.witness = ViolationWitness{ell, group, tSet};
                return false;
            }
            return true;
        });
    }
    return report;
}

/// Perfect representation membership: when k divides n, decides whether the
/// voters split into k blocks of n/k, each block unanimously approving its
/// assigned member. Integral assignment feasibility via bipartite saturation.
inline AxiomReport check_pr_membership(const ApprovalProfile& profile, int k,
                                       const Committee& committee) {
    if (committee.size() != k) throw std::invalid_argument("committee size does not match k");
    const int n = profile.voterCount();
    AxiomReport report;
    report.axiom = "pr";
    if (n % k != 0) {
        report.verdict = Verdict::NotApplicable;
        return report;
    }
    const int blockSize = n / k;

    MaxFlow flow(2 + k + n);
    const int source = 0, sink = 1;
    int edgeCount = 0;
    std::vector<std::tuple<int, int, int>> assignEdges; // (edge, member, voter)
    for (int ci = 0; ci < k; ++ci) {
        flow.addEdge(source, 2 + ci, blockSize);
        ++edgeCount;
    }
    for (int i = 0; i < n; ++i) {
        flow.addEdge(2 + k + i, sink, 1);
        ++edgeCount;
    }
    for (int ci = 0; ci < k; ++ci) {
        int c = committee.members[ci];
        const VoterSet& sup = profile.supporters(c);
        for (auto i = sup.find_first(); i != VoterSet::npos; i = sup.find_next(i)) {
            flow.addEdge(2 + ci, 2 + k + static_cast<int>(i), 1);
            assignEdges.emplace_back(edgeCount, ci, static_cast<int>(i));
            ++edgeCount;
        }
    }
    if (flow.run(source, sink) != n) {
        report.verdict = Verdict::Violates;
        return report;
    }
    PrPartition partition;
    partition.assignment.assign(k, {0, VoterSet(n)});
    for (int ci = 0; ci < k; ++ci) partition.assignment[ci].first = committee.members[ci];
    for (auto [e, ci, voter] : assignEdges)
        if (flow.flowOn(e) > 0) partition.assignment[ci].second.set(voter);
    report.verdict = Verdict::Provides;
    report.partition = std::move(partition);
    return report;
}

/// All committees providing perfect representation; nullopt when k does not
/// divide n (the notion is scoped to that case).
inline std::optional<std::vector<Committee>> exists_pr(const ApprovalProfile& profile, int k,
                                                       std::uint64_t enumerationCap =
                                                           kDefaultEnumerationCap) {
    if (k < 1 || k > profile.candidateCount())
        throw std::invalid_argument("committee size must be between 1 and " +
                                    std::to_string(profile.candidateCount()));
    if (profile.voterCount() % k != 0) return std::nullopt;
    const int m = profile.candidateCount();
    std::vector<int> members(k);
    std::vector<Committee> result;
    std::uint64_t visited = 0;
    for (int i = 0; i < k; ++i) members[i] = i;
    while (true) {
        if (++visited > enumerationCap)
            throw EnumerationCapError("perfect-representation enumeration exceeds the cap");
        Committee committee(members);
        if (check_pr_membership(profile, k, committee).verdict == Verdict::Provides)
            result.push_back(committee);
        int i = k - 1;
        while (i >= 0 && members[i] == m - k + i) --i;
        if (i < 0) break;
        ++members[i];
        for (int j = i + 1; j < k; ++j) members[j] = members[j - 1] + 1;
    }
    return result;
}

/// True iff every voter load equals k/n exactly.
inline bool check_perfect_load(const ApprovalProfile& profile, int k, const LoadDistribution& x) {
    VoterLoadVector loads = voter_loads(profile, x);
    const Rational average =
        profile.voterCount() > 0 ? Rational(k, profile.voterCount()) : Rational(0);
    for (const auto& load : loads)
        if (load != average) return false;
    return true;
}

} // namespace phragmen
