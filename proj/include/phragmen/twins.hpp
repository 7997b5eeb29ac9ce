#pragma once

#include "phragmen/caps.hpp"
#include "phragmen/profile.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace phragmen::detail {

/// Groups candidates with identical supporter sets. Such candidates always
/// carry equal scores under the sequential rules, so tie exploration can
/// branch on one representative per class and expand afterwards.
struct TwinClasses {
    std::vector<std::vector<int>> classes; // members in roster order
    std::vector<int> classOf;

    explicit TwinClasses(const ApprovalProfile& profile) {
        std::map<VoterSet, int> index;
        classOf.resize(profile.candidateCount());
        for (int c = 0; c < profile.candidateCount(); ++c) {
            auto [it, fresh] = index.try_emplace(profile.supporters(c),
                                                 static_cast<int>(classes.size()));
            if (fresh) classes.emplace_back();
            classes[it->second].push_back(c);
            classOf[c] = it->second;
        }
    }

    /// Keeps the first tied candidate of each class.
    std::vector<int> representatives(const std::vector<int>& tied) const {
        std::vector<int> reps;
        std::vector<char> seen(classes.size(), 0);
        for (int c : tied) {
            if (seen[classOf[c]]) continue;
            seen[classOf[c]] = 1;
            reps.push_back(c);
        }
        return reps;
    }
};

/// Enumerates every committee symmetric to `base` under swaps of candidates
/// with identical supporter sets, invoking fn(committee, permutation) where
/// the permutation maps base members to their substitutes (identity outside).
/// The search elects the roster-first run of each class, so the expansions of
/// distinct search results never overlap.
inline void for_each_twin_expansion(const TwinClasses& twins, const Committee& base,
                                    std::uint64_t cap,
                                    const std::function<void(const Committee&,
                                                             const std::vector<int>&)>& fn) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> swappable; // (elected, class)
    for (const auto& cls : twins.classes) {
        std::vector<int> elected;
        for (int c : cls)
            if (base.contains(c)) elected.push_back(c);
        if (!elected.empty() && elected.size() < cls.size())
            swappable.emplace_back(elected, cls);
    }

    std::vector<int> perm(twins.classOf.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::uint64_t produced = 0;

    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == swappable.size()) {
            if (++produced > cap)
                throw EnumerationCapError("tie expansion exceeds the enumeration cap");
            std::vector<int> members;
            for (int c : base.members) members.push_back(perm[c]);
            fn(Committee(std::move(members)), perm);
            return;
        }
        const auto& [elected, cls] = swappable[idx];
        const std::size_t z = elected.size();
        std::vector<int> pick(z);
        std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t from,
                                                                   std::size_t got) {
            if (got == z) {
                // map elected[q] -> pick[q]; displaced names take the leftovers
                std::vector<int> leftovers;
                for (int c : cls)
                    if (std::find(pick.begin(), pick.end(), c) == pick.end()) leftovers.push_back(c);
                std::vector<int> nonElected;
                for (int c : cls)
                    if (std::find(elected.begin(), elected.end(), c) == elected.end())
                        nonElected.push_back(c);
                for (std::size_t q = 0; q < z; ++q) perm[elected[q]] = pick[q];
                for (std::size_t q = 0; q < nonElected.size(); ++q)
                    perm[nonElected[q]] = leftovers[q];
                rec(idx + 1);
                for (std::size_t q = 0; q < z; ++q) perm[elected[q]] = elected[q];
                for (std::size_t q = 0; q < nonElected.size(); ++q)
                    perm[nonElected[q]] = nonElected[q];
                return;
            }
            for (std::size_t at = from; at + (z - got) <= cls.size(); ++at) {
                pick[got] = cls[at];
                choose(at + 1, got + 1);
            }
        };
        choose(0, 0);
    };
    rec(0);
}

} // namespace phragmen::detail
