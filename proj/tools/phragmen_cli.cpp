#include "phragmen/phragmen.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

constexpr int kExitProvides = 0;
constexpr int kExitViolates = 1;
constexpr int kExitNotApplicable = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::uint64_t default_cap() {
    if (const char* env = std::getenv("PHRAGMEN_ENUM_CAP")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw DataError("bad PHRAGMEN_ENUM_CAP value '" + std::string(env) + "'");
        }
    }
    return phragmen::kDefaultEnumerationCap;
}

int verdict_exit(phragmen::Verdict verdict) {
    switch (verdict) {
        case phragmen::Verdict::Provides: return kExitProvides;
        case phragmen::Verdict::Violates: return kExitViolates;
        case phragmen::Verdict::NotApplicable: return kExitNotApplicable;
    }
    return kExitProvides;
}

struct ComputeArgs {
    std::string rule;
    std::string profilePath;
    int k = 0;
    std::string quota = "hare";
    std::string ties = "canonical";
    std::string format = "text";
    bool trace = false;
    bool exact = false;
    std::uint64_t cap = 0;
};

int run_compute(const ComputeArgs& args) {
    using namespace phragmen;
    ApprovalProfile profile = parse_profile(read_file(args.profilePath));
    TieMode tieMode = args.ties == "all" ? TieMode::ExploreAll : TieMode::Canonical;
    const bool records = args.format == "records";

    std::vector<Committee> committees;
    std::vector<SeqTrace> seqTraces;
    std::vector<EnestromTrace> enestromTraces;
    std::vector<BalanceCertificate> certificates;

    if (args.rule == "seq") {
        ExploreOptions options;
        options.explorationCap = args.cap;
        auto result = seq_phragmen(profile, args.k, tieMode, options);
        committees = result.committees;
        seqTraces = result.traces;
    } else if (args.rule == "enestrom") {
        ExploreOptions options;
        options.explorationCap = args.cap;
        QuotaKind quota = args.quota == "droop" ? QuotaKind::Droop : QuotaKind::Hare;
        auto result = enestrom_phragmen(profile, args.k, quota, tieMode, options);
        committees = result.committees;
        enestromTraces = result.traces;
    } else if (args.rule == "leximax" || args.rule == "var") {
        OptOptions options{args.cap};
        auto result = args.rule == "leximax" ? leximax_phragmen(profile, args.k, options)
                                             : var_phragmen(profile, args.k, options);
        committees = result.committees;
        certificates = result.certificates;
    } else {
        throw DataError("unknown rule '" + args.rule + "'");
    }

    for (std::size_t i = 0; i < committees.size(); ++i) {
        if (records) {
            std::cout << committee_record(profile, args.rule, committees[i]).dump() << "\n";
            if (!certificates.empty())
                std::cout << loads_record(certificates[i].loads).dump() << "\n";
        } else {
            std::cout << committee_names(profile, committees[i]) << "\n";
            if (!certificates.empty()) {
                std::cout << "loads: "
                          << render_load_vector(certificates[i].loads, true) << "\n";
            }
        }
        if (args.trace && !records) {
            if (!seqTraces.empty())
                std::cout << render_seq_trace(profile, seqTraces[i], args.exact);
            if (!enestromTraces.empty())
                std::cout << render_enestrom_trace(profile, enestromTraces[i], args.exact);
            if (!certificates.empty()) std::cout << render_balance(profile, certificates[i]);
        }
    }
    return kExitProvides;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact load-balancing committee rules, representation-axiom checkers, "
                 "solver-model export and apportionment methods"};
    app.require_subcommand(1);

    ComputeArgs computeArgs;
    auto* compute = app.add_subcommand("compute", "Run a committee rule on a profile");
    compute->add_option("--rule", computeArgs.rule, "seq | leximax | var | enestrom")->required();
    compute->add_option("--k", computeArgs.k, "committee size")->required();
    compute->add_option("--profile", computeArgs.profilePath, "profile file")->required();
    compute->add_option("--quota", computeArgs.quota, "hare | droop (enestrom only)");
    compute->add_option("--ties", computeArgs.ties, "canonical | all");
    compute->add_option("--format", computeArgs.format, "text | records");
    compute->add_flag("--trace", computeArgs.trace, "print the per-round trace");
    compute->add_flag("--exact", computeArgs.exact, "exact fractions in traces");
    compute->add_option("--cap", computeArgs.cap, "enumeration cap override");

    struct {
        std::string profilePath, committee;
    } balanceArgs;
    auto* balance = app.add_subcommand("balance", "Optimally balanced loads for a committee");
    balance->add_option("--profile", balanceArgs.profilePath)->required();
    balance->add_option("--committee", balanceArgs.committee, "comma-separated candidates")
        ->required();

    struct {
        std::string axiom, profilePath, committee;
        int k = 0;
        bool witness = false;
    } verifyArgs;
    auto* verify = app.add_subcommand("verify", "Check a representation axiom for a committee");
    verify->add_option("--axiom", verifyArgs.axiom, "jr | pjr | ejr | pr")->required();
    verify->add_option("--k", verifyArgs.k)->required();
    verify->add_option("--profile", verifyArgs.profilePath)->required();
    verify->add_option("--committee", verifyArgs.committee)->required();
    verify->add_flag("--witness", verifyArgs.witness, "print the witness");

    struct {
        std::string format, profilePath, yList, outPath;
        int k = 0;
    } exportArgs;
    auto* exportCmd = app.add_subcommand("export", "Write a solver model file");
    exportCmd->add_option("--format", exportArgs.format, "lp | qp")->required();
    exportCmd->add_option("--k", exportArgs.k)->required();
    exportCmd->add_option("--profile", exportArgs.profilePath)->required();
    exportCmd->add_option("--y", exportArgs.yList,
                          "target loads r1,r2,... (lp only; default k,0,...,0)");
    exportCmd->add_option("--out", exportArgs.outPath)->required();

    struct {
        std::string method, induced, quota = "hare", votes, profilePath;
        int seats = 0;
        std::uint64_t cap = 0;
    } apportionArgs;
    auto* apportion = app.add_subcommand("apportion", "Apportionment methods and induced rules");
    apportion->add_option("--method", apportionArgs.method,
                          "dhondt | sainte-lague | largest-remainder");
    apportion->add_option("--induced", apportionArgs.induced,
                          "seq | leximax | var | enestrom[-hare|-droop]");
    apportion->add_option("--quota", apportionArgs.quota, "hare | droop (largest remainder)");
    apportion->add_option("--seats", apportionArgs.seats)->required();
    apportion->add_option("--votes", apportionArgs.votes, "vote counts, e.g. 67,12,11,10");
    apportion->add_option("--profile", apportionArgs.profilePath, "votes: file");
    apportion->add_option("--cap", apportionArgs.cap, "enumeration cap override");

    struct {
        std::string only;
    } examplesArgs;
    auto* examples = app.add_subcommand("examples", "Run the bundled corpus");
    examples->add_option("--only", examplesArgs.only, "run a single case, e.g. example6");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    using namespace phragmen;
    try {
        std::uint64_t cap = default_cap();
        if (compute->parsed()) {
            if (computeArgs.cap == 0) computeArgs.cap = cap;
            return run_compute(computeArgs);
        }
        if (balance->parsed()) {
            ApprovalProfile profile = parse_profile(read_file(balanceArgs.profilePath));
            Committee committee = parse_committee(profile, balanceArgs.committee);
            std::cout << render_balance(profile, balanced_loads(profile, committee));
            return kExitProvides;
        }
        if (verify->parsed()) {
            ApprovalProfile profile = parse_profile(read_file(verifyArgs.profilePath));
            Committee committee = parse_committee(profile, verifyArgs.committee);
            if (committee.size() != verifyArgs.k)
                throw DataError("committee size does not match --k");
            AxiomReport report;
            if (verifyArgs.axiom == "jr")
                report = check_jr(profile, verifyArgs.k, committee);
            else if (verifyArgs.axiom == "pjr")
                report = check_pjr(profile, verifyArgs.k, committee);
            else if (verifyArgs.axiom == "ejr")
                report = check_ejr(profile, verifyArgs.k, committee);
            else if (verifyArgs.axiom == "pr")
                report = check_pr_membership(profile, verifyArgs.k, committee);
            else
                throw DataError("unknown axiom '" + verifyArgs.axiom + "'");
            if (verifyArgs.witness)
                std::cout << render_axiom(profile, report);
            else
                std::cout << report.axiom << ": "
                          << (report.verdict == Verdict::Provides
                                  ? "provides"
                                  : report.verdict == Verdict::Violates ? "violates"
                                                                        : "not-applicable")
                          << "\n";
            return verdict_exit(report.verdict);
        }
        if (exportCmd->parsed()) {
            ApprovalProfile profile = parse_profile(read_file(exportArgs.profilePath));
            SolverModel model;
            if (exportArgs.format == "lp") {
                VoterLoadVector y(profile.voterCount(), Rational(0));
                if (!exportArgs.yList.empty()) {
                    std::string spaced = exportArgs.yList;
                    std::replace(spaced.begin(), spaced.end(), ',', ' ');
                    auto toks = detail::split_ws(spaced);
                    if (static_cast<int>(toks.size()) != profile.voterCount())
                        throw DataError("--y needs one value per voter");
                    for (std::size_t i = 0; i < toks.size(); ++i) y[i] = parse_rational(toks[i]);
                } else {
                    y[0] = exportArgs.k;
                }
                model = emit_milp_step(profile, exportArgs.k, y);
            } else if (exportArgs.format == "qp") {
                model = emit_miqp(profile, exportArgs.k);
            } else {
                throw DataError("unknown export format '" + exportArgs.format + "'");
            }
            LpText text = write_lp(model);
            std::ofstream out(exportArgs.outPath, std::ios::binary);
            if (!out) throw DataError("cannot write '" + exportArgs.outPath + "'");
            out << text.main;
            std::cout << "wrote " << exportArgs.outPath << "\n";
            if (!text.exactMain) {
                std::ofstream side(exportArgs.outPath + ".exact", std::ios::binary);
                if (!side) throw DataError("cannot write '" + exportArgs.outPath + ".exact'");
                side << text.sidecar;
                std::cout << "wrote " << exportArgs.outPath << ".exact (exact coefficients)\n";
            }
            return kExitProvides;
        }
        if (apportion->parsed()) {
            if (apportionArgs.method.empty() == apportionArgs.induced.empty())
                throw DataError("give exactly one of --method and --induced");
            VoteVector votes = !apportionArgs.votes.empty()
                                   ? parse_vote_list(apportionArgs.votes)
                                   : parse_vote_file(read_file(apportionArgs.profilePath));
            if (apportionArgs.cap == 0) apportionArgs.cap = cap;
            std::vector<SeatDistribution> result;
            if (!apportionArgs.method.empty()) {
                if (apportionArgs.method == "dhondt")
                    result = dhondt(votes, apportionArgs.seats);
                else if (apportionArgs.method == "sainte-lague")
                    result = sainte_lague(votes, apportionArgs.seats);
                else if (apportionArgs.method == "largest-remainder")
                    result = largest_remainder(votes, apportionArgs.seats,
                                               apportionArgs.quota == "droop" ? QuotaKind::Droop
                                                                              : QuotaKind::Hare);
                else
                    throw DataError("unknown method '" + apportionArgs.method + "'");
            } else {
                result = induced_apportionment(parse_rule_id(apportionArgs.induced), votes,
                                               apportionArgs.seats, apportionArgs.cap);
            }
            std::cout << render_seat_distributions(result);
            return kExitProvides;
        }
        if (examples->parsed()) {
            std::optional<std::string> only;
            if (!examplesArgs.only.empty()) only = examplesArgs.only;
            auto results = corpus::run_examples(only);
            bool ok = true;
            for (const auto& r : results) {
                std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "\n";
                for (const auto& f : r.failures) std::cout << "      " << f << "\n";
                ok = ok && r.passed;
            }
            return ok ? kExitProvides : kExitViolates;
        }
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const phragmen::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const phragmen::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const phragmen::EnumerationCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return kExitUsage;
}
