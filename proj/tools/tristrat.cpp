// tristrat: command-line front end.
//
// Exit status of `check`: 0 = True, 1 = False, 2 = Undef, 3 = any error.

#include "tristrat/abstraction.hpp"
#include "tristrat/errors.hpp"
#include "tristrat/experiments.hpp"
#include "tristrat/formula.hpp"
#include "tristrat/model.hpp"
#include "tristrat/random_formula.hpp"
#include "tristrat/reduction.hpp"
#include "tristrat/report.hpp"
#include "tristrat/scheduler.hpp"
#include "tristrat/semantics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace tristrat;

constexpr int kToolError = 3;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string slurp(std::istream& in)
{
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string read_model(const std::string& path)
{
    if (path == "-")
        return slurp(std::cin);
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open model file '" + path + "'");
    return slurp(in);
}

/// The argument is a file name if such a file exists, formula text otherwise.
std::string read_formula(const std::string& arg)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        return slurp(in);
    }
    return arg;
}

std::uint64_t budget_from_env()
{
    const char* env = std::getenv("TRISTRAT_BUDGET");
    if (!env || !*env)
        return kDefaultBudget;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end || v == 0)
        throw std::runtime_error("TRISTRAT_BUDGET must be a positive integer");
    return v;
}

int exit_code(Truth t)
{
    switch (t) {
    case Truth::True: return 0;
    case Truth::False: return 1;
    case Truth::Undef: return 2;
    }
    return kToolError;
}

struct CheckArgs {
    std::string model = "-";
    std::string formula;
    bool abstract = false;
    std::string partition;
    std::string engine;
    bool json = false;
    std::string release = "literal";
    std::uint64_t budget = 0;
};

int run_check(const CheckArgs& a)
{
    EvalOptions opts;
    opts.release = a.release == "standard" ? ReleaseMode::Standard : ReleaseMode::Inclusive;
    opts.budget = a.budget ? a.budget : budget_from_env();

    RunReport rep;
    rep.model_source = a.model == "-" ? "stdin" : a.model;
    Formula phi = parse(read_formula(a.formula));
    rep.formula = print(phi);
    ModelDocument doc = load_document(read_model(a.model));

    std::optional<ThreeCgs> three;
    const ConcreteCgs* concrete = std::get_if<ConcreteCgs>(&doc.model);
    if (a.abstract) {
        if (!concrete)
            throw std::runtime_error("--abstract needs a concrete model");
        std::string which = a.partition.empty() ? (doc.partition ? "document" : "atoms") : a.partition;
        Partition part;
        if (which == "document") {
            if (!doc.partition)
                throw std::runtime_error("the model document has no partition");
            part = Partition::from_blocks(*concrete, *doc.partition);
        } else if (which == "atoms") {
            part = partition_by_atoms(*concrete, {concrete->atoms().begin(), concrete->atoms().end()});
        } else {
            part = Partition::singletons(*concrete);
        }
        Abstraction abs = abstract(*concrete, part);
        rep.abstraction = abs.report;
        rep.abstraction_seconds = abs.report.build_seconds;
        three = std::move(abs.model);
        concrete = nullptr;
    } else if (!concrete) {
        three = std::get<ThreeCgs>(doc.model);
    }

    rep.engine = a.engine.empty() ? (concrete ? "direct2" : "direct3") : a.engine;
    if (rep.engine == "direct2" && !concrete)
        throw std::runtime_error("engine direct2 needs a concrete model without --abstract");
    if (rep.engine != "direct2" && !three)
        three = embed(*concrete);

    CheckStats stats;
    auto t0 = Clock::now();
    if (rep.engine == "direct2")
        rep.verdict = from_bool(check2(*concrete, phi, opts, &stats));
    else if (rep.engine == "direct3")
        rep.verdict = check3(*three, phi, opts, &stats);
    else
        rep.verdict = check_split(*three, phi, opts, &stats);
    rep.verification_seconds = since(t0);
    rep.strategies = stats.strategies;
    rep.shortcut = stats.shortcut;

    std::cout << (a.json ? to_json(rep) + "\n" : to_text(rep));
    return exit_code(rep.verdict);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Strategy Logic model checker with three-valued abstraction"};
    app.require_subcommand(1);

    CheckArgs ck;
    auto* check = app.add_subcommand("check", "Check a sentence on a model; exit 0/1/2 for True/False/Undef");
    check->add_option("--model,-m", ck.model, "Model document, '-' for stdin")->capture_default_str();
    check->add_option("--formula,-f", ck.formula, "Formula text or a file containing it")->required();
    check->add_flag("--abstract", ck.abstract, "Check the quotient abstraction of a concrete model");
    check->add_option("--partition", ck.partition,
                      "Abstraction partition (default: the document's, else atom agreement)")
        ->check(CLI::IsMember({"document", "atoms", "singletons"}));
    check->add_option("--engine", ck.engine, "Evaluator (default: direct2 for concrete, direct3 otherwise)")
        ->check(CLI::IsMember({"direct2", "direct3", "split"}));
    check->add_flag("--json", ck.json, "Print the run report as JSON");
    check->add_option("--release-mode", ck.release, "Release clause: literal (j <= i) or standard (j < i)")
        ->check(CLI::IsMember({"literal", "standard"}))
        ->capture_default_str();
    check->add_option("--budget", ck.budget, "Strategy budget (overrides TRISTRAT_BUDGET)");

    std::size_t gen_n = 2;
    std::string gen_part = "waiting-cluster";
    bool gen_formula = false;
    auto* gen = app.add_subcommand("gen-scheduler", "Emit the scheduler benchmark model as JSON");
    gen->add_option("--n", gen_n, "Number of processes (>= 2)")->required()->check(CLI::Range(2, 16));
    gen->add_option("--partition", gen_part, "Partition embedded in the document")
        ->check(CLI::IsMember({"waiting-cluster", "atom-agreement"}))
        ->capture_default_str();
    gen->add_flag("--formula", gen_formula, "Print the mutual-exclusion sentence instead of the model");

    std::size_t gf_count = 100, gf_min = 2, gf_max = 5;
    std::uint64_t gf_seed = 1;
    std::string gf_agents = "a,b", gf_atoms = "p,q";
    bool gf_nested = false;
    auto* gf = app.add_subcommand("gen-formulas", "Emit random sentences, one per line");
    gf->add_option("--count", gf_count)->capture_default_str();
    gf->add_option("--seed", gf_seed)->capture_default_str();
    gf->add_option("--min-depth", gf_min)->check(CLI::PositiveNumber)->capture_default_str();
    gf->add_option("--max-depth", gf_max)->check(CLI::PositiveNumber)->capture_default_str();
    gf->add_option("--agents", gf_agents, "Comma-separated agent names")->capture_default_str();
    gf->add_option("--atoms", gf_atoms, "Comma-separated atom names")->capture_default_str();
    gf->add_flag("--nested", gf_nested, "Allow nested strategic subformulas and rebinding");

    std::size_t rp_from = 2, rp_to = 7;
    std::string rp_part = "waiting-cluster";
    bool rp_json = false;
    auto* rp = app.add_subcommand("report", "Compression table of the scheduler over a range of n");
    rp->add_option("--from", rp_from)->check(CLI::Range(2, 16))->capture_default_str();
    rp->add_option("--to", rp_to)->check(CLI::Range(2, 16))->capture_default_str();
    rp->add_option("--partition", rp_part)
        ->check(CLI::IsMember({"waiting-cluster", "atom-agreement"}))
        ->capture_default_str();
    rp->add_flag("--json", rp_json);

    std::size_t df_n = 2;
    DefinednessConfig df;
    bool df_json = false;
    auto* dfc = app.add_subcommand("definedness", "Defined-verdict rate of random sentences on the abstract scheduler");
    dfc->add_option("--n", df_n)->check(CLI::Range(2, 8))->capture_default_str();
    dfc->add_option("--count", df.formulas)->capture_default_str();
    dfc->add_option("--seed", df.seed)->capture_default_str();
    dfc->add_option("--budget", df.budget, "Per-formula strategy budget")->capture_default_str();
    dfc->add_option("--threads", df.threads, "Worker threads, 0 for all cores")->capture_default_str();
    dfc->add_flag("--json", df_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kToolError;
    }

    try {
        if (*check)
            return run_check(ck);

        if (*gen) {
            Scheduler s = gen_scheduler(gen_n);
            if (gen_formula)
                std::cout << print(s.property) << '\n';
            else
                std::cout << save(s.model, s.partition(parse_scheduler_partition(gen_part)).names(s.model)) << '\n';
            return 0;
        }

        if (*gf) {
            if (gf_max < gf_min)
                throw std::runtime_error("--max-depth is below --min-depth");
            auto agents = split_list(gf_agents);
            auto atoms = split_list(gf_atoms);
            for (std::size_t i = 0; i < gf_count; ++i) {
                std::size_t depth = gf_min + i % (gf_max - gf_min + 1);
                Formula f = gf_nested ? gen_random_sentence(gf_seed + i, depth, agents, atoms)
                                      : gen_random_formula(gf_seed + i, depth, agents, atoms);
                std::cout << print(f) << '\n';
            }
            return 0;
        }

        if (*rp) {
            std::vector<CompressionRow> rows;
            EvalOptions opts;
            opts.budget = budget_from_env();
            for (std::size_t n = rp_from; n <= rp_to; ++n)
                rows.push_back(compression_row(n, parse_scheduler_partition(rp_part), opts));
            std::cout << (rp_json ? compression_json(rows) + "\n" : compression_text(rows));
            return 0;
        }

        if (*dfc) {
            Scheduler s = gen_scheduler(df_n);
            Abstraction abs = abstract(s.model, s.waiting_cluster);
            DefinednessResult r = run_definedness(abs.model, df);
            if (df_json) {
                nlohmann::json j = {
                    {"formulas", r.formulas},   {"true", r.truths},
                    {"false", r.falsities},     {"undef", r.undefs},
                    {"skipped", r.skipped},     {"defined_rate", r.rate()},
                    {"reference_rate", 0.83},   {"seconds", r.seconds},
                };
                std::cout << j.dump(2) << '\n';
            } else {
                std::printf("formulas %zu  true %zu  false %zu  undef %zu  over budget %zu\n", r.formulas,
                            r.truths, r.falsities, r.undefs, r.skipped);
                std::printf("defined rate %.1f%% (reference 83%%)  %.1f s\n", 100 * r.rate(), r.seconds);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "tristrat: " << e.what() << '\n';
        return kToolError;
    }
    return kToolError;
}
