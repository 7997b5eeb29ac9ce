#pragma once

#include "phragmen/apportionment.hpp"
#include "phragmen/axioms.hpp"
#include "phragmen/balance.hpp"
#include "phragmen/enestrom.hpp"
#include "phragmen/loads.hpp"
#include "phragmen/seq.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace phragmen {

inline std::string render_load_vector(const VoterLoadVector& loads, bool exact = true) {
    std::string out = "(";
    for (std::size_t i = 0; i < loads.size(); ++i) {
        if (i) out += ", ";
        out += exact ? format_rational(loads[i]) : decimal3(loads[i]);
    }
    return out + ")";
}

inline std::string render_committee_list(const ApprovalProfile& profile,
                                         const std::vector<Committee>& committees) {
    std::ostringstream out;
    for (const auto& committee : committees) out << committee_names(profile, committee) << "\n";
    return out.str();
}

namespace detail {

/// Candidate-by-round table in the style used for greedy traces: rows are
/// candidates, columns rounds, a dash once the candidate has left the field.
template <typename Trace, typename CellOf>
std::string render_round_table(const ApprovalProfile& profile, const Trace& trace, bool exact,
                               CellOf&& cellOf) {
    const int rounds = static_cast<int>(trace.rounds.size());
    std::vector<std::vector<std::string>> cells(profile.candidateCount() + 1);
    cells[0].push_back("candidate");
    for (int j = 1; j <= rounds; ++j) cells[0].push_back("r" + std::to_string(j));
    for (int c = 0; c < profile.candidateCount(); ++c) {
        auto& row = cells[c + 1];
        row.push_back(profile.candidateName(c));
        for (int j = 0; j < rounds; ++j) {
            auto value = cellOf(trace.rounds[j], c);
            row.push_back(value ? (exact ? format_rational(*value) : decimal3(*value)) : "-");
        }
    }
    std::vector<std::size_t> widths(rounds + 1, 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());
    std::ostringstream out;
    for (const auto& row : cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            out << row[i] << std::string(widths[i] - row[i].size(), ' ');
        }
        out << "\n";
    }
    return out.str();
}

} // namespace detail

inline std::string render_seq_trace(const ApprovalProfile& profile, const SeqTrace& trace,
                                    bool exact = false) {
    std::ostringstream out;
    out << detail::render_round_table(profile, trace, exact,
                                      [](const SeqRound& round, int c) { return round.scoreOf(c); });
    out << "selection order:";
    for (const auto& round : trace.rounds) out << " " << profile.candidateName(round.chosen);
    out << "\n";
    if (!trace.rounds.empty()) {
        out << "final loads: "
            << render_load_vector(trace.rounds.back().loads, exact) << "\n";
    }
    return out.str();
}

inline std::string render_enestrom_trace(const ApprovalProfile& profile,
                                         const EnestromTrace& trace, bool exact = false) {
    std::ostringstream out;
    out << "quota: " << format_rational(trace.quota) << "\n";
    out << detail::render_round_table(profile, trace, exact,
                                      [](const EnestromRound& round, int c) {
                                          std::optional<Rational> v;
                                          for (const auto& [cand, score] : round.scores)
                                              if (cand == c) v = score;
                                          return v;
                                      });
    out << "selection order:";
    for (const auto& round : trace.rounds) out << " " << profile.candidateName(round.chosen);
    out << "\n";
    for (const auto& round : trace.rounds)
        out << "round " << round.index << ": elected " << profile.candidateName(round.chosen)
            << " at score " << format_rational(round.winningScore) << ", weight factor "
            << format_rational(round.factor) << "\n";
    return out.str();
}

inline std::string render_balance(const ApprovalProfile& profile,
                                  const BalanceCertificate& cert) {
    std::ostringstream out;
    out << "committee: " << committee_names(profile, cert.committee) << "\n";
    out << "loads: " << render_load_vector(cert.loads) << "\n";
    out << "max load: ";
    Rational mx(0);
    for (const auto& load : cert.loads) mx = std::max(mx, load);
    out << format_rational(mx) << "\n";
    out << "sum of squares: " << format_rational(sum_squares(cert.loads)) << "\n";
    for (const auto& level : cert.levels) {
        out << "level " << format_rational(level.level) << ": candidates {";
        for (std::size_t i = 0; i < level.candidates.size(); ++i) {
            if (i) out << ",";
            out << profile.candidateName(level.candidates[i]);
        }
        out << "} over voters {";
        bool first = true;
        for (auto v = level.voters.find_first(); v != VoterSet::npos;
             v = level.voters.find_next(v)) {
            if (!first) out << ",";
            out << v + 1;
            first = false;
        }
        out << "}\n";
    }
    out << "witness distribution:\n" << serialize_load_distribution(profile, cert.distribution);
    return out.str();
}

inline std::string render_voter_set(const VoterSet& voters) {
    std::string out = "{";
    bool first = true;
    for (auto v = voters.find_first(); v != VoterSet::npos; v = voters.find_next(v)) {
        if (!first) out += ",";
        out += std::to_string(v + 1);
        first = false;
    }
    return out + "}";
}

inline std::string render_axiom(const ApprovalProfile& profile, const AxiomReport& report) {
    std::ostringstream out;
    out << report.axiom << ": ";
    switch (report.verdict) {
        case Verdict::Provides: out << "provides"; break;
        case Verdict::Violates: out << "violates"; break;
        case Verdict::NotApplicable: out << "not-applicable"; break;
    }
    out << "\n";
    if (report.witness) {
        out << "witness: l=" << report.witness->ell << ", group=" << render_voter_set(report.witness->group)
            << ", common={";
        for (std::size_t i = 0; i < report.witness->candidates.size(); ++i) {
            if (i) out << ",";
            out << profile.candidateName(report.witness->candidates[i]);
        }
        out << "}\n";
    }
    if (report.partition) {
        for (const auto& [member, voters] : report.partition->assignment)
            out << "  " << profile.candidateName(member) << " <- voters "
                << render_voter_set(voters) << "\n";
    }
    return out.str();
}

inline std::string render_seat_distributions(const std::vector<SeatDistribution>& list) {
    std::ostringstream out;
    for (const auto& z : list) {
        out << "(";
        for (std::size_t j = 0; j < z.seats.size(); ++j) {
            if (j) out << ",";
            out << z.seats[j];
        }
        out << ")\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Structured (line-delimited JSON) records
// ---------------------------------------------------------------------------

inline nlohmann::json committee_record(const ApprovalProfile& profile, const std::string& rule,
                                       const Committee& committee) {
    nlohmann::json rec;
    rec["record"] = "committee";
    rec["rule"] = rule;
    std::vector<std::string> names;
    for (int c : committee.members) names.push_back(profile.candidateName(c));
    rec["members"] = names;
    return rec;
}

inline nlohmann::json loads_record(const VoterLoadVector& loads) {
    nlohmann::json rec;
    rec["record"] = "loads";
    std::vector<std::string> values;
    for (const auto& load : loads) values.push_back(format_rational(load));
    rec["values"] = values;
    return rec;
}

inline nlohmann::json axiom_record(const ApprovalProfile& profile, const AxiomReport& report) {
    nlohmann::json rec;
    rec["record"] = "axiom";
    rec["axiom"] = report.axiom;
    rec["verdict"] = report.verdict == Verdict::Provides
                         ? "provides"
                         : report.verdict == Verdict::Violates ? "violates" : "not-applicable";
    if (report.witness) {
        rec["witness"]["l"] = report.witness->ell;
        std::vector<int> voters;
        for (auto v = report.witness->group.find_first(); v != VoterSet::npos;
             v = report.witness->group.find_next(v))
            voters.push_back(static_cast<int>(v) + 1);
        rec["witness"]["voters"] = voters;
        std::vector<std::string> names;
        for (int c : report.witness->candidates) names.push_back(profile.candidateName(c));
        rec["witness"]["common"] = names;
    }
    return rec;
}

} // namespace phragmen
