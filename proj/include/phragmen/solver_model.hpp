#pragma once

#include "phragmen/loads.hpp"
#include "phragmen/profile.hpp"
#include "phragmen/rational.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace phragmen {

enum class ModelKind { MilpLeximaxStep, MiqpVariance };

struct ModelVariable {
    std::string name;
    Rational lower;
    Rational upper;
    bool integral = false;
};

struct LinTerm {
    Rational coeff;
    int var;
};

enum class Relation { LessEq, Eq, GreaterEq };

struct ModelConstraint {
    std::string name;
    std::string tag; // structural family, e.g. "total_load", "cap_matched"
    std::vector<LinTerm> terms;
    Relation relation = Relation::LessEq;
    Rational rhs;
};

struct QuadTerm {
    Rational coeff;
    int a;
    int b;
};

/// A solver-ready optimization model. The leximax step model maximizes the
/// improvement margin over a target load vector; the variance model minimizes
/// the summed squared voter loads directly.
struct SolverModel {
    ModelKind kind = ModelKind::MiqpVariance;
    bool maximize = false;
    std::vector<ModelVariable> variables;
    std::vector<ModelConstraint> constraints;
    std::vector<LinTerm> linearObjective;
    std::vector<QuadTerm> quadraticObjective;
    std::vector<Rational> targetVector; // exact target loads (leximax step only)

    int findVariable(const std::string& name) const {
        for (std::size_t i = 0; i < variables.size(); ++i)
            if (variables[i].name == name) return static_cast<int>(i);
        return -1;
    }
    int countConstraints(const std::string& tag) const {
        int n = 0;
        for (const auto& c : constraints) n += c.tag == tag;
        return n;
    }
};

namespace detail {

struct ModelBuilder {
    SolverModel model;

    int addVariable(std::string name, Rational lo, Rational hi, bool integral) {
        model.variables.push_back({std::move(name), std::move(lo), std::move(hi), integral});
        return static_cast<int>(model.variables.size()) - 1;
    }

    void addConstraint(std::string name, std::string tag, std::vector<LinTerm> terms, Relation rel,
                       Rational rhs) {
        model.constraints.push_back(
            {std::move(name), std::move(tag), std::move(terms), rel, std::move(rhs)});
    }
};

/// Shared part: x variables for every voter/candidate pair (non-approved
/// pairs fixed to zero), committee indicator binaries linking every
/// candidate's column to {0,1}, and the total-load equality.
inline void build_load_base(ModelBuilder& b, const ApprovalProfile& profile, int k,
                            std::vector<std::vector<int>>& xVar, std::vector<int>& wVar) {
    const int n = profile.voterCount();
    const int m = profile.candidateCount();
    xVar.assign(n, std::vector<int>(m, -1));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < m; ++c) {
            Rational hi = profile.approves(i, c) ? Rational(1) : Rational(0);
            xVar[i][c] = b.addVariable(
                "x_" + std::to_string(i + 1) + "_" + std::to_string(c + 1), Rational(0), hi,
                false);
        }
    wVar.assign(m, -1);
    for (int c = 0; c < m; ++c)
        wVar[c] = b.addVariable("w_" + std::to_string(c + 1), Rational(0), Rational(1), true);

    std::vector<LinTerm> total;
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < m; ++c) total.push_back({Rational(1), xVar[i][c]});
    b.addConstraint("total", "total_load", std::move(total), Relation::Eq, Rational(k));

    for (int c = 0; c < m; ++c) {
        std::vector<LinTerm> column;
        for (int i = 0; i < n; ++i) column.push_back({Rational(1), xVar[i][c]});
        column.push_back({Rational(-1), wVar[c]});
        b.addConstraint("unit_" + std::to_string(c + 1), "unit_link", std::move(column),
                        Relation::Eq, Rational(0));
    }
}

} // namespace detail

/// The single-step leximax improvement MILP: feasible solutions with a
/// positive margin correspond exactly to load distributions whose sorted
/// voter loads improve on the target vector. A partial matching pins voters
/// to target positions they may not exceed; unmatched voters must come in
/// under the pivot position's value by at least the margin, which is
/// maximized. The big-M constant is the committee size.
inline SolverModel emit_milp_step(const ApprovalProfile& profile, int k,
                                  const VoterLoadVector& target) {
    const int n = profile.voterCount();
    const int m = profile.candidateCount();
    if (static_cast<int>(target.size()) != n)
        throw std::invalid_argument("target vector length " + std::to_string(target.size()) +
                                    " does not match voter count " + std::to_string(n));
    VoterLoadVector y = target;
    std::sort(y.begin(), y.end(), std::greater<Rational>());

    detail::ModelBuilder b;
    b.model.kind = ModelKind::MilpLeximaxStep;
    b.model.maximize = true;
    b.model.targetVector = y;

    std::vector<std::vector<int>> xVar;
    std::vector<int> wVar;
    detail::build_load_base(b, profile, k, xVar, wVar);

    std::vector<std::vector<int>> eVar(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            eVar[i][j] = b.addVariable("e_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                                       Rational(0), Rational(1), true);
    std::vector<int> sVar(n, -1), tVar(n, -1);
    for (int i = 0; i < n; ++i)
        sVar[i] = b.addVariable("s_" + std::to_string(i + 1), Rational(0), Rational(1), true);
    for (int j = 0; j < n; ++j)
        tVar[j] = b.addVariable("t_" + std::to_string(j + 1), Rational(0), Rational(1), true);
    int epsVar = b.addVariable("eps", Rational(0), Rational(k), false);
    b.model.linearObjective.push_back({Rational(1), epsVar});

    // every voter is either matched to a target position or improved
    for (int i = 0; i < n; ++i) {
        std::vector<LinTerm> terms{{Rational(1), sVar[i]}};
        for (int j = 0; j < n; ++j) terms.push_back({Rational(1), eVar[i][j]});
        b.addConstraint("match_row_" + std::to_string(i + 1), "match_row", std::move(terms),
                        Relation::Eq, Rational(1));
    }
    // a target position hosts at most one voter and cannot also be the pivot
    for (int j = 0; j < n; ++j) {
        std::vector<LinTerm> terms{{Rational(1), tVar[j]}};
        for (int i = 0; i < n; ++i) terms.push_back({Rational(1), eVar[i][j]});
        b.addConstraint("match_col_" + std::to_string(j + 1), "match_col", std::move(terms),
                        Relation::LessEq, Rational(1));
    }
    {
        std::vector<LinTerm> terms;
        for (int j = 0; j < n; ++j) terms.push_back({Rational(1), tVar[j]});
        b.addConstraint("pivot", "pivot_unique", std::move(terms), Relation::Eq, Rational(1));
    }
    // matched voters stay within their position's target value
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<LinTerm> terms;
            for (int c = 0; c < m; ++c) terms.push_back({Rational(1), xVar[i][c]});
            terms.push_back({Rational(k), eVar[i][j]});
            b.addConstraint("cap_m_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                            "cap_matched", std::move(terms), Relation::LessEq, y[j] + k);
        }
    // improved voters beat the pivot value by at least the margin
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<LinTerm> terms;
            for (int c = 0; c < m; ++c) terms.push_back({Rational(1), xVar[i][c]});
            terms.push_back({Rational(k), sVar[i]});
            terms.push_back({Rational(k), tVar[j]});
            terms.push_back({Rational(1), epsVar});
            b.addConstraint("cap_i_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                            "cap_improved", std::move(terms), Relation::LessEq, y[j] + 2 * k);
        }
    return std::move(b.model);
}

/// The variance model: load variables and the committee structure only, with
/// objective min sum over voters of (row sum)^2.
inline SolverModel emit_miqp(const ApprovalProfile& profile, int k) {
    if (k < 1 || k > profile.candidateCount())
        throw std::invalid_argument("committee size must be between 1 and " +
                                    std::to_string(profile.candidateCount()));
    detail::ModelBuilder b;
    b.model.kind = ModelKind::MiqpVariance;
    b.model.maximize = false;

    std::vector<std::vector<int>> xVar;
    std::vector<int> wVar;
    detail::build_load_base(b, profile, k, xVar, wVar);

    const int n = profile.voterCount();
    const int m = profile.candidateCount();
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < m; ++c) {
            b.model.quadraticObjective.push_back({Rational(1), xVar[i][c], xVar[i][c]});
            for (int c2 = c + 1; c2 < m; ++c2)
                b.model.quadraticObjective.push_back({Rational(2), xVar[i][c], xVar[i][c2]});
        }
    return std::move(b.model);
}

// ---------------------------------------------------------------------------
// LP-format text export
// ---------------------------------------------------------------------------

struct LpText {
    std::string main;
    std::string sidecar; // exact p/q values; empty when the main file is exact
    bool exactMain = true;
};

namespace detail {

struct LpNumberWriter {
    bool allExact = true;
    std::vector<std::string> sidecarLines;

    std::string render(const Rational& r, const std::string& context) {
        if (auto exact = exact_decimal(r)) return *exact;
        allExact = false;
        sidecarLines.push_back(context + " = " + format_fraction(r));
        return approx_decimal(r, 15);
    }
};

inline std::string lp_term(LpNumberWriter& w, const Rational& coeff, const std::string& var,
                           bool first, const std::string& context) {
    std::string out;
    Rational a = coeff;
    if (a < 0) {
        out += first ? "- " : "- ";
        a = -a;
    } else if (!first) {
        out += "+ ";
    }
    if (a != 1) out += w.render(a, context) + " ";
    out += var;
    return out;
}

} // namespace detail

/// Writes a conventional LP-format text file: objective, constraints, bounds,
/// binary section. A quadratic objective is written as a bracketed expression
/// over two, per the usual LP quadratic convention. Numbers whose decimal
/// expansion terminates are emitted exactly; otherwise the file carries a
/// 15-significant-digit rendering plus a warning banner, and every such value
/// appears as an exact fraction in the sidecar.
inline LpText write_lp(const SolverModel& model) {
    detail::LpNumberWriter w;
    std::ostringstream body;

    body << (model.maximize ? "Maximize\n" : "Minimize\n");
    body << " obj:";
    bool first = true;
    for (const auto& term : model.linearObjective) {
        body << " "
             << detail::lp_term(w, term.coeff, model.variables[term.var].name, first, "objective");
        first = false;
    }
    if (!model.quadraticObjective.empty()) {
        body << (first ? " [" : " + [");
        bool qfirst = true;
        for (const auto& term : model.quadraticObjective) {
            Rational doubled = term.coeff * 2; // bracketed expression is halved
            std::string expr = model.variables[term.a].name;
            if (term.a == term.b)
                expr += " ^2";
            else
                expr += " * " + model.variables[term.b].name;
            body << " " << detail::lp_term(w, doubled, expr, qfirst, "objective");
            qfirst = false;
        }
        body << " ] / 2";
        first = false;
    }
    body << "\n";

    body << "Subject To\n";
    for (const auto& constraint : model.constraints) {
        body << " " << constraint.name << ":";
        bool cfirst = true;
        for (const auto& term : constraint.terms) {
            body << " "
                 << detail::lp_term(w, term.coeff, model.variables[term.var].name, cfirst,
                                    constraint.name);
            cfirst = false;
        }
        switch (constraint.relation) {
            case Relation::LessEq: body << " <= "; break;
            case Relation::Eq: body << " = "; break;
            case Relation::GreaterEq: body << " >= "; break;
        }
        body << w.render(constraint.rhs, constraint.name + " rhs") << "\n";
    }

    body << "Bounds\n";
    for (const auto& var : model.variables) {
        if (var.integral && var.lower == 0 && var.upper == 1) continue; // binary section
        if (var.lower == var.upper) {
            body << " " << var.name << " = " << w.render(var.lower, var.name + " fixed") << "\n";
        } else {
            body << " " << w.render(var.lower, var.name + " lower") << " <= " << var.name
                 << " <= " << w.render(var.upper, var.name + " upper") << "\n";
        }
    }

    bool anyBinary = false;
    for (const auto& var : model.variables)
        if (var.integral && var.lower == 0 && var.upper == 1) {
            if (!anyBinary) body << "Binary\n";
            anyBinary = true;
            body << " " << var.name << "\n";
        }
    body << "End\n";

    LpText out;
    out.exactMain = w.allExact;
    std::ostringstream head;
    head << "\\ " << (model.kind == ModelKind::MilpLeximaxStep ? "leximax improvement step model"
                                                               : "load variance model")
         << "\n";
    if (!model.targetVector.empty()) {
        head << "\\ target loads:";
        for (const auto& v : model.targetVector) head << " " << format_rational(v);
        head << "\n";
    }
    if (!w.allExact)
        head << "\\ WARNING: some coefficients have no finite decimal expansion and are\n"
                "\\ rendered with 15 significant digits; exact fractions are listed in the\n"
                "\\ companion .exact file\n";
    out.main = head.str() + body.str();
    if (!w.allExact) {
        std::ostringstream side;
        side << "# exact values for coefficients rendered approximately in the LP file\n";
        for (const auto& line : w.sidecarLines) side << line << "\n";
        out.sidecar = side.str();
    }
    return out;
}

} // namespace phragmen
