#pragma once

#include "phragmen/balance.hpp"
#include "phragmen/optrules.hpp"
#include "phragmen/solver_model.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace phragmen {

struct StepSolution {
    LoadDistribution distribution;
    VoterLoadVector loads;
    Rational epsilon;
};

/// Maps a leximax step model to an optimal solution of it.
using StepSolver = std::function<StepSolution(const SolverModel&)>;

struct SolverContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact step solver backed by committee enumeration: for the target vector y
/// it finds the committee and balanced distribution maximizing the
/// improvement margin, i.e. the largest e such that some position t has the
/// sorted loads matching y before t and coming in at least e below y_t from
/// t onwards. Among margin-optimal committees the leximax-smallest balanced
/// vector is returned (first in canonical order on ties).
class ReferenceStepSolver {
public:
    ReferenceStepSolver(const ApprovalProfile& profile, int k, OptOptions options = {})
        : profile_(&profile), k_(k), options_(options) {}

    StepSolution operator()(const SolverModel& model) const {
        if (model.kind != ModelKind::MilpLeximaxStep)
            throw SolverContractError("reference step solver expects a leximax step model");
        const VoterLoadVector& y = model.targetVector;
        const int n = profile_->voterCount();
        if (static_cast<int>(y.size()) != n)
            throw SolverContractError("target vector does not match the voter count");
        detail::check_enumeration_cap(*profile_, k_, options_);

        detail::PeelScratch scratch;
        bool haveBest = false;
        Rational bestEps;
        std::vector<detail::LevelRun> bestRuns;
        std::optional<Committee> bestCommittee;

        detail::for_each_committee(
            profile_->candidateCount(), k_, [&](const std::vector<int>& members) {
                auto runs = detail::peel_runs(*profile_, members, scratch, nullptr);
                VoterLoadVector sorted = detail::runs_to_vector_sorted(*runs, n);
                // largest feasible margin over pivot positions
                std::optional<Rational> eps;
                for (int t = 0; t < n; ++t) {
                    if (t > 0 && sorted[t - 1] > y[t - 1]) break; // prefix no longer dominated
                    Rational margin = y[t] - sorted[t];
                    if (margin < 0) continue;
                    if (!eps || margin > *eps) eps = margin;
                }
                if (!eps) return;
                if (!haveBest || *eps > bestEps ||
                    (*eps == bestEps && detail::compare_runs(*runs, bestRuns) < 0)) {
                    haveBest = true;
                    bestEps = *eps;
                    bestRuns = std::move(*runs);
                    bestCommittee = Committee(members);
                }
            });

        if (!haveBest)
            throw SolverContractError("step model infeasible: no committee fits the target");
        BalanceCertificate cert = balanced_loads(*profile_, *bestCommittee);
        return {cert.distribution, cert.loads, bestEps};
    }

private:
    const ApprovalProfile* profile_;
    int k_;
    OptOptions options_;
};

struct Algorithm1Result {
    Committee committee;
    LoadDistribution distribution;
    VoterLoadVector loads;
    int solveCount = 0;
};

namespace detail {

inline VoterLoadVector sorted_desc(VoterLoadVector v) {
    std::sort(v.begin(), v.end(), std::greater<Rational>());
    return v;
}

inline Committee committee_of(const ApprovalProfile& profile, const LoadDistribution& x) {
    std::vector<Rational> colSum(profile.candidateCount(), Rational(0));
    for (const auto& [key, value] : x.entries) colSum[key.second] += value;
    std::vector<int> members;
    for (int c = 0; c < profile.candidateCount(); ++c)
        if (colSum[c] == 1) members.push_back(c);
    return Committee(std::move(members));
}

} // namespace detail

/// Iterated step solving: seed the target with one full-load position, then
/// repeatedly solve the improvement model, freezing one more sorted position
/// per iteration. When a step reports no improvement, a confirmation solve on
/// the current loads decides termination. At most 2n step solves. The frozen
/// prefix may never change in later iterations; a solver breaking that (or
/// returning a negative margin) is reported as a contract violation.
inline Algorithm1Result algorithm1_driver(const ApprovalProfile& profile, int k,
                                          const StepSolver& solver) {
    if (k < 1 || k > profile.candidateCount())
        throw std::invalid_argument("committee size must be between 1 and " +
                                    std::to_string(profile.candidateCount()));
    const int n = profile.voterCount();
    VoterLoadVector y(n, Rational(0));
    y[0] = k;

    Algorithm1Result result;
    StepSolution sol;
    for (int step = 1; step <= n; ++step) {
        sol = solver(emit_milp_step(profile, k, y));
        ++result.solveCount;
        if (sol.epsilon < 0)
            throw SolverContractError("step solver returned a negative margin");
        VoterLoadVector sorted = detail::sorted_desc(sol.loads);
        for (int i = 0; i + 1 < step && i < n; ++i)
            if (sorted[i] != y[i])
                throw SolverContractError(
                    "optimal prefix changed at position " + std::to_string(i + 1) +
                    ": " + format_rational(sorted[i]) + " != " + format_rational(y[i]));
        if (sol.epsilon == 0) {
            StepSolution confirm = solver(emit_milp_step(profile, k, sorted));
            ++result.solveCount;
            if (confirm.epsilon == 0) {
                result.committee = detail::committee_of(profile, sol.distribution);
                result.distribution = sol.distribution;
                result.loads = sol.loads;
                return result;
            }
        }
        for (int i = 0; i < n; ++i) y[i] = i <= step && i < n ? sorted[i] : Rational(0);
    }
    result.committee = detail::committee_of(profile, sol.distribution);
    result.distribution = sol.distribution;
    result.loads = sol.loads;
    return result;
}

} // namespace phragmen
