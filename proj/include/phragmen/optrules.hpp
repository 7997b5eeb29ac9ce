#pragma once

#include "phragmen/balance.hpp"
#include "phragmen/caps.hpp"
#include "phragmen/loads.hpp"
#include "phragmen/profile.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace phragmen {

struct OptOptions {
    std::uint64_t enumerationCap = kDefaultEnumerationCap;
};

/// Tied winning committees (canonical order) with their balance certificates.
struct OptResult {
    std::vector<Committee> committees;
    std::vector<BalanceCertificate> certificates;
};

namespace detail {

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt result = 1;
    for (int i = 0; i < k; ++i) {
        result *= (n - i);
        result /= (i + 1);
    }
    return result;
}

inline void check_enumeration_cap(const ApprovalProfile& profile, int k,
                                  const OptOptions& options) {
    BigInt total = binomial(profile.candidateCount(), k);
    if (total > options.enumerationCap)
        throw EnumerationCapError(
            "enumerating " + total.str() + " committees exceeds the cap of " +
            std::to_string(options.enumerationCap) +
            "; raise the cap or export a solver model instead");
}

/// Visits all size-k subsets of {0..m-1} in canonical (lexicographic) order.
template <typename Visit>
void for_each_committee(int m, int k, Visit&& visit) {
    std::vector<int> members(k);
    for (int i = 0; i < k; ++i) members[i] = i;
    while (true) {
        visit(const_cast<const std::vector<int>&>(members));
        int i = k - 1;
        while (i >= 0 && members[i] == m - k + i) --i;
        if (i < 0) break;
        ++members[i];
        for (int j = i + 1; j < k; ++j) members[j] = members[j - 1] + 1;
    }
}

} // namespace detail

/// All committees whose optimally balanced load vector is leximax-minimal;
/// vectors equal as multisets tie. Committee enumeration with peel pruning.
inline OptResult leximax_phragmen(const ApprovalProfile& profile, int k, OptOptions options = {}) {
    if (k < 1 || k > profile.candidateCount())
        throw std::invalid_argument("committee size must be between 1 and " +
                                    std::to_string(profile.candidateCount()));
    detail::check_enumeration_cap(profile, k, options);

    detail::PeelScratch scratch;
    std::vector<detail::LevelRun> best;
    bool haveBest = false;
    std::vector<Committee> winners;

    detail::for_each_committee(profile.candidateCount(), k, [&](const std::vector<int>& members) {
        auto runs = detail::peel_runs(profile, members, scratch, haveBest ? &best : nullptr);
        if (!runs) return; // decidedly worse
        if (!haveBest) {
            best = std::move(*runs);
            haveBest = true;
            winners.assign(1, Committee(members));
            return;
        }
        int cmp = detail::compare_runs(*runs, best);
        if (cmp < 0) {
            best = std::move(*runs);
            winners.assign(1, Committee(members));
        } else if (cmp == 0) {
            winners.push_back(Committee(members));
        }
    });

    OptResult result;
    result.committees = std::move(winners);
    for (const auto& committee : result.committees)
        result.certificates.push_back(balanced_loads(profile, committee));
    return result;
}

/// All committees minimizing the exact sum of squared voter loads of the
/// balanced distribution.
inline OptResult var_phragmen(const ApprovalProfile& profile, int k, OptOptions options = {}) {
    if (k < 1 || k > profile.candidateCount())
        throw std::invalid_argument("committee size must be between 1 and " +
                                    std::to_string(profile.candidateCount()));
    detail::check_enumeration_cap(profile, k, options);

    detail::PeelScratch scratch;
    Rational best;
    bool haveBest = false;
    std::vector<Committee> winners;

    detail::for_each_committee(profile.candidateCount(), k, [&](const std::vector<int>& members) {
        auto runs = detail::peel_runs(profile, members, scratch, nullptr);
        Rational value = detail::runs_sum_squares(*runs);
        if (!haveBest || value < best) {
            best = value;
            haveBest = true;
            winners.assign(1, Committee(members));
        } else if (value == best) {
            winners.push_back(Committee(members));
        }
    });

    OptResult result;
    result.committees = std::move(winners);
    for (const auto& committee : result.committees)
        result.certificates.push_back(balanced_loads(profile, committee));
    return result;
}

} // namespace phragmen
