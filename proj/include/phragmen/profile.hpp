#pragma once

#include "phragmen/rational.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <compare>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace phragmen {

using VoterSet = boost::dynamic_bitset<>; // indexed by voter
using CandSet = boost::dynamic_bitset<>;  // indexed by candidate

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int ln, int col, const std::string& what)
        : std::runtime_error("line " + std::to_string(ln) + ", column " + std::to_string(col) +
                             ": " + what),
          line(ln), column(col) {}
};

/// An approval election: candidate roster plus per-voter approval sets.
/// Ballot grouping (multiplicities) is preserved for reporting, but all rule
/// semantics work on the expanded per-voter view. Immutable after parsing.
class ApprovalProfile {
public:
    ApprovalProfile(std::vector<std::string> names,
                    std::vector<std::pair<int, std::vector<int>>> grouped)
        : names_(std::move(names)), grouped_(std::move(grouped)) {
        const int m = static_cast<int>(names_.size());
        for (auto& [mult, cands] : grouped_) {
            CandSet ballot(m);
            for (int c : cands) ballot.set(c);
            for (int rep = 0; rep < mult; ++rep) ballots_.push_back(ballot);
        }
        supporters_.assign(m, VoterSet(ballots_.size()));
        for (std::size_t i = 0; i < ballots_.size(); ++i)
            for (int c = 0; c < m; ++c)
                if (ballots_[i].test(c)) supporters_[c].set(i);
    }

    int candidateCount() const { return static_cast<int>(names_.size()); }
    int voterCount() const { return static_cast<int>(ballots_.size()); }

    const std::vector<std::string>& candidateNames() const { return names_; }
    const std::string& candidateName(int c) const { return names_[c]; }
    int candidateIndex(const std::string& name) const {
        auto it = std::find(names_.begin(), names_.end(), name);
        return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
    }

    /// Approval set of voter i (bitset over candidates).
    const CandSet& ballot(int i) const { return ballots_[i]; }
    /// Voters approving candidate c (bitset over voters).
    const VoterSet& supporters(int c) const { return supporters_[c]; }
    bool approves(int voter, int cand) const { return ballots_[voter].test(cand); }

    const std::vector<std::pair<int, std::vector<int>>>& groupedBallots() const { return grouped_; }

private:
    std::vector<std::string> names_;
    std::vector<std::pair<int, std::vector<int>>> grouped_;
    std::vector<CandSet> ballots_;
    std::vector<VoterSet> supporters_;
};

/// A size-k candidate subset, kept as sorted roster indices. Ordering is
/// lexicographic on the sorted member list, which is the canonical order used
/// everywhere tied committees are reported.
struct Committee {
    std::vector<int> members; // sorted ascending

    explicit Committee(std::vector<int> m = {}) : members(std::move(m)) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
    }

    int size() const { return static_cast<int>(members.size()); }
    bool contains(int c) const {
        return std::binary_search(members.begin(), members.end(), c);
    }
    CandSet mask(int m) const {
        CandSet s(m);
        for (int c : members) s.set(c);
        return s;
    }
    auto operator<=>(const Committee&) const = default;
};

inline std::string committee_names(const ApprovalProfile& profile, const Committee& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        if (i) out += ",";
        out += profile.candidateName(s.members[i]);
    }
    return out + "}";
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace detail

/// Parses the profile file format:
///   candidates: a b c        (roster order = tie-break order)
///   2: a b                   (multiplicity: approved candidates)
/// '#' starts a comment; blank lines are ignored.
/// Every ballot must be non-empty and every candidate needs at least one
/// approver; violations are rejected here rather than surfacing later.
inline ApprovalProfile parse_profile(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;
    bool sawHeader = false;
    std::vector<std::string> names;
    std::vector<std::pair<int, std::vector<int>>> grouped;

    while (std::getline(in, raw)) {
        ++lineNo;
        std::string line = detail::strip_comment(raw);
        auto toks = detail::split_ws(line);
        if (toks.empty()) continue;

        if (!sawHeader) {
            if (toks[0] != "candidates:")
                throw ParseError(lineNo, 1, "expected 'candidates:' header");
            if (toks.size() < 2)
                throw ParseError(lineNo, static_cast<int>(line.size()) + 1,
                                 "empty candidate roster");
            names.assign(toks.begin() + 1, toks.end());
            for (std::size_t a = 0; a < names.size(); ++a)
                for (std::size_t b = a + 1; b < names.size(); ++b)
                    if (names[a] == names[b])
                        throw ParseError(lineNo, 1, "duplicate candidate '" + names[a] + "'");
            sawHeader = true;
            continue;
        }

        if (toks[0] == "votes:")
            throw ParseError(lineNo, 1, "vote-vector file given where a ballot profile was expected");

        // ballot line "<mult>: id id ..."
        const std::string& head = toks[0];
        if (head.empty() || head.back() != ':')
            throw ParseError(lineNo, 1, "expected '<multiplicity>:' at start of ballot line");
        std::string multStr = head.substr(0, head.size() - 1);
        long long mult = 0;
        try {
            std::size_t used = 0;
            mult = std::stoll(multStr, &used);
            if (used != multStr.size()) throw std::invalid_argument(multStr);
        } catch (const std::exception&) {
            throw ParseError(lineNo, 1, "bad multiplicity '" + multStr + "'");
        }
        if (mult < 1)
            throw ParseError(lineNo, 1, "multiplicity must be >= 1, got " + multStr);
        if (toks.size() < 2)
            throw ParseError(lineNo, static_cast<int>(line.size()) + 1, "empty ballot");

        std::vector<int> cands;
        for (std::size_t t = 1; t < toks.size(); ++t) {
            auto it = std::find(names.begin(), names.end(), toks[t]);
            if (it == names.end()) {
                int col = static_cast<int>(line.find(toks[t])) + 1;
                throw ParseError(lineNo, col, "unknown candidate '" + toks[t] + "'");
            }
            int idx = static_cast<int>(it - names.begin());
            if (std::find(cands.begin(), cands.end(), idx) == cands.end()) cands.push_back(idx);
        }
        grouped.emplace_back(static_cast<int>(mult), std::move(cands));
    }

    if (!sawHeader) throw ParseError(lineNo == 0 ? 1 : lineNo, 1, "missing 'candidates:' header");
    if (grouped.empty()) throw ParseError(lineNo, 1, "profile has no ballots");

    ApprovalProfile profile(names, grouped);
    for (int c = 0; c < profile.candidateCount(); ++c)
        if (profile.supporters(c).none())
            throw ParseError(lineNo, 1,
                             "candidate '" + names[c] + "' has no approvers");
    return profile;
}

/// (s, d): the largest ballot size and the largest supporter-set size.
inline std::pair<int, int> profile_stats(const ApprovalProfile& profile) {
    int s = 0, d = 0;
    for (int i = 0; i < profile.voterCount(); ++i)
        s = std::max(s, static_cast<int>(profile.ballot(i).count()));
    for (int c = 0; c < profile.candidateCount(); ++c)
        d = std::max(d, static_cast<int>(profile.supporters(c).count()));
    return {s, d};
}

/// Parses a committee given as comma- or space-separated candidate names.
inline Committee parse_committee(const ApprovalProfile& profile, const std::string& text) {
    std::string spaced = text;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::vector<int> members;
    for (const auto& tok : detail::split_ws(spaced)) {
        int idx = profile.candidateIndex(tok);
        if (idx < 0) throw std::invalid_argument("unknown candidate '" + tok + "'");
        members.push_back(idx);
    }
    if (members.empty()) throw std::invalid_argument("empty committee");
    return Committee(std::move(members));
}

} // namespace phragmen
