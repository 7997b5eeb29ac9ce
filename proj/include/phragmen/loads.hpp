#pragma once

#include "phragmen/profile.hpp"
#include "phragmen/rational.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace phragmen {

using VoterLoadVector = std::vector<Rational>;

/// Sparse voter x candidate load matrix; zeros omitted. A valid distribution
/// spreads one unit of load per committee member over that member's approvers,
/// with the committee induced by the columns summing to one.
struct LoadDistribution {
    int committeeSize = 0;
    std::map<std::pair<int, int>, Rational> entries; // (voter, candidate) -> load

    Rational at(int voter, int cand) const {
        auto it = entries.find({voter, cand});
        return it == entries.end() ? Rational(0) : it->second;
    }
    void set(int voter, int cand, const Rational& value) {
        if (value == 0)
            entries.erase({voter, cand});
        else
            entries[{voter, cand}] = value;
    }
};

enum class LoadConstraint {
    Range,        // every entry within [0, 1]
    NonApprover,  // zero load from candidates the voter does not approve
    TotalLoad,    // entries sum to the committee size
    CandidateUnit // every column sums to 0 or 1
};

inline const char* load_constraint_name(LoadConstraint c) {
    switch (c) {
        case LoadConstraint::Range: return "entry range";
        case LoadConstraint::NonApprover: return "non-approver load";
        case LoadConstraint::TotalLoad: return "total load";
        case LoadConstraint::CandidateUnit: return "candidate load unit";
    }
    return "?";
}

struct ValidationError : std::runtime_error {
    LoadConstraint constraint;
    int voter;     // -1 when not entry-specific
    int candidate; // -1 when not candidate-specific
    ValidationError(LoadConstraint c, int v, int cand, const std::string& what)
        : std::runtime_error(what), constraint(c), voter(v), candidate(cand) {}
};

/// Per-voter row sums.
inline VoterLoadVector voter_loads(const ApprovalProfile& profile, const LoadDistribution& x) {
    VoterLoadVector loads(profile.voterCount(), Rational(0));
    for (const auto& [key, value] : x.entries) loads[key.first] += value;
    return loads;
}

/// Checks the four defining constraints exactly and returns the induced
/// committee (candidates whose column sums to one). Throws ValidationError
/// naming the violated constraint and the offending entry.
inline Committee validate_load_distribution(const ApprovalProfile& profile,
                                            const LoadDistribution& x) {
    const int m = profile.candidateCount();
    std::vector<Rational> colSum(m, Rational(0));
    Rational total(0);
    for (const auto& [key, value] : x.entries) {
        auto [voter, cand] = key;
        if (voter < 0 || voter >= profile.voterCount() || cand < 0 || cand >= m)
            throw ValidationError(LoadConstraint::Range, voter, cand, "entry out of matrix bounds");
        if (value < 0 || value > 1)
            throw ValidationError(LoadConstraint::Range, voter, cand,
                                  "load for voter " + std::to_string(voter + 1) + ", candidate " +
                                      profile.candidateName(cand) + " outside [0,1]: " +
                                      format_rational(value));
        if (value != 0 && !profile.approves(voter, cand))
            throw ValidationError(LoadConstraint::NonApprover, voter, cand,
                                  "voter " + std::to_string(voter + 1) + " does not approve " +
                                      profile.candidateName(cand) + " but carries load " +
                                      format_rational(value));
        colSum[cand] += value;
        total += value;
    }
    if (total != x.committeeSize)
        throw ValidationError(LoadConstraint::TotalLoad, -1, -1,
                              "total load " + format_rational(total) + " != committee size " +
                                  std::to_string(x.committeeSize));
    std::vector<int> members;
    for (int c = 0; c < m; ++c) {
        if (colSum[c] == 0) continue;
        if (colSum[c] != 1)
            throw ValidationError(LoadConstraint::CandidateUnit, -1, c,
                                  "candidate " + profile.candidateName(c) + " carries load " +
                                      format_rational(colSum[c]) + ", expected 0 or 1");
        members.push_back(c);
    }
    if (static_cast<int>(members.size()) != x.committeeSize)
        throw ValidationError(LoadConstraint::TotalLoad, -1, -1,
                              std::to_string(members.size()) + " candidates carry a full unit, " +
                                  "expected " + std::to_string(x.committeeSize));
    return Committee(std::move(members));
}

enum class LeximaxOrder { Less, EqualAsMultisets, Greater };

/// Compares two load vectors sorted in non-increasing order: the first
/// position where the sorted values differ decides. Vectors that are
/// permutations of each other compare EqualAsMultisets.
inline LeximaxOrder leximax_compare(const VoterLoadVector& a, const VoterLoadVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("leximax_compare: length mismatch " +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    VoterLoadVector sa = a, sb = b;
    std::sort(sa.begin(), sa.end(), std::greater<Rational>());
    std::sort(sb.begin(), sb.end(), std::greater<Rational>());
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i] < sb[i]) return LeximaxOrder::Less;
        if (sa[i] > sb[i]) return LeximaxOrder::Greater;
    }
    return LeximaxOrder::EqualAsMultisets;
}

inline Rational sum_squares(const VoterLoadVector& v) {
    Rational total(0);
    for (const auto& x : v) total += x * x;
    return total;
}

/// Serialization: one "<voter-index> <candidate-id> <num>/<den>" triple per
/// line, voter indices 1-based, zeros omitted.
inline std::string serialize_load_distribution(const ApprovalProfile& profile,
                                               const LoadDistribution& x) {
    std::ostringstream out;
    for (const auto& [key, value] : x.entries)
        out << key.first + 1 << " " << profile.candidateName(key.second) << " "
            << format_fraction(value) << "\n";
    return out.str();
}

inline LoadDistribution parse_load_distribution(const ApprovalProfile& profile,
                                                const std::string& text, int committeeSize) {
    LoadDistribution x;
    x.committeeSize = committeeSize;
    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        auto toks = detail::split_ws(detail::strip_comment(raw));
        if (toks.empty()) continue;
        if (toks.size() != 3) throw ParseError(lineNo, 1, "expected '<voter> <candidate> <p/q>'");
        int voter = 0;
        try {
            voter = std::stoi(toks[0]);
        } catch (const std::exception&) {
            throw ParseError(lineNo, 1, "bad voter index '" + toks[0] + "'");
        }
        if (voter < 1 || voter > profile.voterCount())
            throw ParseError(lineNo, 1, "voter index out of range: " + toks[0]);
        int cand = profile.candidateIndex(toks[1]);
        if (cand < 0) throw ParseError(lineNo, 1, "unknown candidate '" + toks[1] + "'");
        Rational value;
        try {
            value = parse_rational(toks[2]);
        } catch (const std::exception&) {
            throw ParseError(lineNo, 1, "bad load value '" + toks[2] + "'");
        }
        x.set(voter - 1, cand, value);
    }
    return x;
}

} // namespace phragmen
