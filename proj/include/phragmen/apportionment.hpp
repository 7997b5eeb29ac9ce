#pragma once

#include "phragmen/axioms.hpp"
#include "phragmen/caps.hpp"
#include "phragmen/enestrom.hpp"
#include "phragmen/optrules.hpp"
#include "phragmen/profile.hpp"
#include "phragmen/seq.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace phragmen {

struct VoteVector {
    std::vector<BigInt> votes; // all entries >= 1

    explicit VoteVector(std::vector<BigInt> v = {}) : votes(std::move(v)) {
        for (const auto& entry : votes)
            if (entry < 1) throw std::invalid_argument("vote counts must be >= 1");
    }
    int parties() const { return static_cast<int>(votes.size()); }
    BigInt total() const {
        BigInt sum = 0;
        for (const auto& v : votes) sum += v;
        return sum;
    }
};

struct SeatDistribution {
    std::vector<int> seats;
    auto operator<=>(const SeatDistribution&) const = default;
};

/// Parses "67,12,11,10" (commas or spaces).
inline VoteVector parse_vote_list(const std::string& text) {
    std::string spaced = text;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::vector<BigInt> votes;
    for (const auto& tok : detail::split_ws(spaced)) {
        try {
            votes.emplace_back(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad vote count '" + tok + "'");
        }
    }
    if (votes.empty()) throw std::invalid_argument("empty vote vector");
    return VoteVector(std::move(votes));
}

/// Parses a "votes: 67 12 11 10" file.
inline VoteVector parse_vote_file(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        auto toks = detail::split_ws(detail::strip_comment(raw));
        if (toks.empty()) continue;
        if (toks[0] != "votes:") throw ParseError(lineNo, 1, "expected 'votes:' header");
        if (toks.size() < 2) throw ParseError(lineNo, 1, "empty vote vector");
        std::vector<BigInt> votes;
        for (std::size_t t = 1; t < toks.size(); ++t) {
            try {
                votes.emplace_back(toks[t]);
            } catch (const std::exception&) {
                throw ParseError(lineNo, 1, "bad vote count '" + toks[t] + "'");
            }
        }
        return VoteVector(std::move(votes));
    }
    throw ParseError(lineNo == 0 ? 1 : lineNo, 1, "missing 'votes:' header");
}

/// Recognizes profiles whose ballots partition the candidates into disjoint
/// party blocks of at least k candidates each, every ballot equal to one
/// block. Returns the blocks (ordered by their first candidate) and the vote
/// vector, or nullopt.
inline std::optional<std::pair<std::vector<std::vector<int>>, VoteVector>>
detect_party_list(const ApprovalProfile& profile, int k) {
    std::vector<CandSet> blocks;
    std::vector<BigInt> counts;
    for (int i = 0; i < profile.voterCount(); ++i) {
        const CandSet& ballot = profile.ballot(i);
        bool matched = false;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (blocks[b] == ballot) {
                counts[b] += 1;
                matched = true;
                break;
            }
            if (blocks[b].intersects(ballot)) return std::nullopt; // overlap without equality
        }
        if (!matched) {
            blocks.push_back(ballot);
            counts.push_back(1);
        }
    }
    CandSet covered(profile.candidateCount());
    for (const auto& block : blocks) {
        if (static_cast<int>(block.count()) < k) return std::nullopt;
        covered |= block;
    }
    if (covered.count() != static_cast<std::size_t>(profile.candidateCount()))
        return std::nullopt;

    std::vector<std::size_t> order(blocks.size());
    for (std::size_t b = 0; b < order.size(); ++b) order[b] = b;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return blocks[a].find_first() < blocks[b].find_first();
    });
    std::vector<std::vector<int>> partyMembers;
    std::vector<BigInt> votes;
    for (std::size_t b : order) {
        std::vector<int> members;
        for (auto c = blocks[b].find_first(); c != CandSet::npos; c = blocks[b].find_next(c))
            members.push_back(static_cast<int>(c));
        partyMembers.push_back(std::move(members));
        votes.push_back(counts[b]);
    }
    return std::make_pair(std::move(partyMembers), VoteVector(std::move(votes)));
}

namespace detail {

/// Divisor-method core: award seats to the k largest quotients votes/divisor;
/// quotient ties at the last seat yield one distribution per choice.
inline std::vector<SeatDistribution> divisor_method(const VoteVector& votes, int k,
                                                    const std::function<BigInt(int)>& divisor) {
    const int p = votes.parties();
    if (k == 0) return {SeatDistribution{std::vector<int>(p, 0)}};

    struct Quotient {
        BigInt num;
        BigInt den;
        int party;
    };
    std::vector<Quotient> quotients;
    for (int j = 0; j < p; ++j)
        for (int t = 0; t < k; ++t) quotients.push_back({votes.votes[j], divisor(t), j});
    auto cmp = [](const Quotient& a, const Quotient& b) {
        return a.num * b.den > b.num * a.den; // strictly larger value first
    };
    std::vector<Quotient> sorted = quotients;
    std::stable_sort(sorted.begin(), sorted.end(), cmp);
    const Quotient& thr = sorted[k - 1];

    std::vector<int> base(p, 0);
    std::vector<int> tiedParties;
    int above = 0;
    for (const auto& q : quotients) {
        BigInt lhs = q.num * thr.den, rhs = thr.num * q.den;
        if (lhs > rhs) {
            ++base[q.party];
            ++above;
        } else if (lhs == rhs) {
            tiedParties.push_back(q.party); // at most one tied quotient per party
        }
    }
    std::sort(tiedParties.begin(), tiedParties.end());
    const int extra = k - above;

    std::set<SeatDistribution> out;
    std::vector<int> pick(extra);
    std::function<void(int, int)> choose = [&](int from, int got) {
        if (got == extra) {
            SeatDistribution z{base};
            for (int q = 0; q < extra; ++q) ++z.seats[pick[q]];
            out.insert(std::move(z));
            return;
        }
        for (int at = from; at + (extra - got) <= static_cast<int>(tiedParties.size()); ++at) {
            pick[got] = tiedParties[at];
            choose(at + 1, got + 1);
        }
    };
    choose(0, 0);
    return {out.begin(), out.end()};
}

} // namespace detail

/// Greatest-divisors method: divisors 1, 2, 3, ...
inline std::vector<SeatDistribution> dhondt(const VoteVector& votes, int k) {
    return detail::divisor_method(votes, k, [](int t) { return BigInt(t + 1); });
}

/// Odd-divisors method: divisors 1, 3, 5, ...
inline std::vector<SeatDistribution> sainte_lague(const VoteVector& votes, int k) {
    return detail::divisor_method(votes, k, [](int t) { return BigInt(2 * t + 1); });
}

/// Quota-and-remainder method: every party takes the floor of its quota
/// share, leftover seats go to the largest remainders (ties branch). With the
/// bigger of the two quotas this is the classical Hamilton scheme; with the
/// smaller one the floors can overshoot by one seat in the degenerate
/// all-exact case, in which case one seat is removed from a tied-remainder
/// seat holder (all remainders are zero then, so every holder ties).
inline std::vector<SeatDistribution> largest_remainder(const VoteVector& votes, int k,
                                                       QuotaKind quota = QuotaKind::Hare) {
    const int p = votes.parties();
    if (k == 0) return {SeatDistribution{std::vector<int>(p, 0)}};
    const BigInt n = votes.total();
    // quota q = n/k (hare) or n/(k+1) (droop); share_j = v_j / q
    const BigInt qNum = n;
    const BigInt qDen = quota == QuotaKind::Hare ? BigInt(k) : BigInt(k + 1);

    std::vector<int> base(p, 0);
    std::vector<Rational> remainders(p);
    int floorsTotal = 0;
    for (int j = 0; j < p; ++j) {
        BigInt scaled = votes.votes[j] * qDen; // v_j / q == scaled / n
        BigInt fl = scaled / qNum;
        base[j] = static_cast<int>(fl);
        floorsTotal += base[j];
        remainders[j] = Rational(scaled - fl * qNum, qNum);
    }

    std::set<SeatDistribution> out;
    if (floorsTotal <= k) {
        int extra = k - floorsTotal;
        std::vector<int> order(p);
        for (int j = 0; j < p; ++j) order[j] = j;
        if (extra == 0) {
            out.insert(SeatDistribution{base});
        } else {
            std::vector<Rational> sortedRem = remainders;
            std::sort(sortedRem.begin(), sortedRem.end(), std::greater<Rational>());
            const Rational thr = sortedRem[extra - 1];
            std::vector<int> tied;
            std::vector<int> above;
            for (int j = 0; j < p; ++j) {
                if (remainders[j] > thr)
                    above.push_back(j);
                else if (remainders[j] == thr)
                    tied.push_back(j);
            }
            int need = extra - static_cast<int>(above.size());
            std::vector<int> pick(need);
            std::function<void(int, int)> choose = [&](int from, int got) {
                if (got == need) {
                    SeatDistribution z{base};
                    for (int j : above) ++z.seats[j];
                    for (int q = 0; q < need; ++q) ++z.seats[pick[q]];
                    out.insert(std::move(z));
                    return;
                }
                for (int at = from; at + (need - got) <= static_cast<int>(tied.size()); ++at) {
                    pick[got] = tied[at];
                    choose(at + 1, got + 1);
                }
            };
            choose(0, 0);
        }
    } else {
        // droop floors overshoot by exactly one; every party with a seat ties at
        // remainder zero
        for (int j = 0; j < p; ++j) {
            if (base[j] == 0) continue;
            SeatDistribution z{base};
            --z.seats[j];
            out.insert(std::move(z));
        }
    }
    return {out.begin(), out.end()};
}

/// z_j >= floor(k * v_j / n) for every party.
inline AxiomReport check_lower_quota(const VoteVector& votes, int k,
                                     const SeatDistribution& seats) {
    if (static_cast<int>(seats.seats.size()) != votes.parties())
        throw std::invalid_argument("seat distribution and vote vector sizes differ");
    AxiomReport report;
    report.axiom = "lower-quota";
    const BigInt n = votes.total();
    for (int j = 0; j < votes.parties(); ++j) {
        BigInt entitled = (k * votes.votes[j]) / n;
        if (seats.seats[j] < entitled) {
            report.verdict = Verdict::Violates;
            report.lowerQuota = LowerQuotaWitness{j + 1, entitled, BigInt(seats.seats[j])};
            return report;
        }
    }
    report.verdict = Verdict::Provides;
    return report;
}

enum class RuleId { Seq, Leximax, Var, EnestromHare, EnestromDroop };

inline RuleId parse_rule_id(const std::string& name) {
    if (name == "seq") return RuleId::Seq;
    if (name == "leximax") return RuleId::Leximax;
    if (name == "var") return RuleId::Var;
    if (name == "enestrom" || name == "enestrom-hare") return RuleId::EnestromHare;
    if (name == "enestrom-droop") return RuleId::EnestromDroop;
    throw std::invalid_argument("unknown rule '" + name + "'");
}

/// The canonical party-list profile for a vote vector: party j fields k fresh
/// candidates p<j>_1 .. p<j>_k and v_j identical ballots approving exactly
/// that block.
inline ApprovalProfile canonical_party_list_profile(const VoteVector& votes, int k) {
    constexpr std::int64_t kMaxVoters = 200'000;
    if (votes.total() > kMaxVoters)
        throw EnumerationCapError("vote vector expands to more than " +
                                  std::to_string(kMaxVoters) + " voters");
    std::vector<std::string> names;
    std::vector<std::pair<int, std::vector<int>>> grouped;
    for (int j = 0; j < votes.parties(); ++j) {
        std::vector<int> block;
        for (int i = 0; i < k; ++i) {
            block.push_back(static_cast<int>(names.size()));
            names.push_back("p" + std::to_string(j + 1) + "_" + std::to_string(i + 1));
        }
        grouped.emplace_back(static_cast<int>(votes.votes[j]), std::move(block));
    }
    return ApprovalProfile(std::move(names), std::move(grouped));
}

/// Runs a committee rule on the canonical party-list profile and maps each
/// winning committee to its per-party seat counts.
inline std::vector<SeatDistribution> induced_apportionment(RuleId rule, const VoteVector& votes,
                                                           int k,
                                                           std::uint64_t enumerationCap =
                                                               kDefaultEnumerationCap) {
    ApprovalProfile profile = canonical_party_list_profile(votes, k);
    const int p = votes.parties();

    std::vector<Committee> committees;
    switch (rule) {
        case RuleId::Seq: {
            ExploreOptions options;
            options.explorationCap = enumerationCap;
            options.expandSymmetric = false; // seat counts are symmetry-invariant
            committees = seq_phragmen(profile, k, TieMode::ExploreAll, options).committees;
            break;
        }
        case RuleId::Leximax: {
            OptOptions options{enumerationCap};
            committees = leximax_phragmen(profile, k, options).committees;
            break;
        }
        case RuleId::Var: {
            OptOptions options{enumerationCap};
            committees = var_phragmen(profile, k, options).committees;
            break;
        }
        case RuleId::EnestromHare:
        case RuleId::EnestromDroop: {
            ExploreOptions options;
            options.explorationCap = enumerationCap;
            options.expandSymmetric = false;
            QuotaKind quota =
                rule == RuleId::EnestromHare ? QuotaKind::Hare : QuotaKind::Droop;
            committees =
                enestrom_phragmen(profile, k, quota, TieMode::ExploreAll, options).committees;
            break;
        }
    }

    std::set<SeatDistribution> out;
    for (const auto& committee : committees) {
        SeatDistribution z{std::vector<int>(p, 0)};
        for (int c : committee.members) ++z.seats[c / k];
        out.insert(std::move(z));
    }
    return {out.begin(), out.end()};
}

} // namespace phragmen
