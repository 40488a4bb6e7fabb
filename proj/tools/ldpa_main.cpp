// Distributed under the MIT License.
// See LICENSE for details.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldpa/hoa.hpp"
#include "ldpa/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitTranslation = 2;
constexpr int kExitCounterexample = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

nlohmann::json stats_json(const ldpa::PipelineStats& s) {
    return {
        {"ldba_states", s.ldba_states}, {"qd_states", s.qd_states},
        {"dpa_states", s.dpa_states},   {"colors", s.colors},
        {"max_t", s.max_t},             {"base_m", s.base_m},
        {"millis", s.millis},           {"raced", s.raced},
        {"negation_won", s.negation_won},
    };
}

struct TranslateArgs {
    std::string formula;
    std::string input_hoa;
    std::string output;
    std::string format = "hoa";
    bool emit_ldba = false;
    bool no_reduce = false;
    bool no_compress = false;
    bool keep_smallest = false;
    bool race = false;
    std::size_t budget = 1'000'000;
    std::uint64_t seed = 1;
};

ldpa::PipelineConfig make_config(const TranslateArgs& args) {
    ldpa::PipelineConfig cfg;
    cfg.reduce = !args.no_reduce;
    cfg.compress = !args.no_compress;
    cfg.keep_smallest = args.keep_smallest;
    cfg.race = args.race;
    cfg.budget = args.budget;
    cfg.seed = args.seed;
    return cfg;
}

int run_translate(const TranslateArgs& args) {
    ldpa::PipelineConfig cfg = make_config(args);
    std::string text;
    nlohmann::json stats;

    if (!args.input_hoa.empty()) {
        ldpa::Automaton parsed = ldpa::parse_hoa(read_file(args.input_hoa));
        if (!std::holds_alternative<ldpa::Ldba>(parsed)) {
            std::cerr << "error: expected a Buchi LDBA as input\n";
            return kExitTranslation;
        }
        ldpa::Ldba a = ldpa::eliminate_jumps(std::get<ldpa::Ldba>(parsed));
        auto diags = ldpa::validate_ldba(a);
        if (!diags.empty()) {
            for (const auto& d : diags)
                std::cerr << "error: " << d << "\n";
            return kExitTranslation;
        }
        ldpa::Dpa dpa = ldpa::construct_dpa(a, ldpa::choose_ord(a), cfg.budget);
        if (cfg.compress)
            dpa = ldpa::compress_colors(dpa);
        stats = {{"dpa_states", dpa.num_states}, {"colors", dpa.used_colors().size()}};
        text = args.format == "dot" ? ldpa::to_dot(dpa) : ldpa::emit_hoa(dpa);
        if (args.format == "json")
            text = nlohmann::json({{"stats", stats}, {"hoa", ldpa::emit_hoa(dpa)}}).dump(2) + "\n";
        write_output(args.output, text);
        return kExitOk;
    }

    ldpa::PipelineResult result = cfg.race ? ldpa::negation_race(args.formula, cfg)
                                           : ldpa::translate_pipeline(args.formula, cfg);
    stats = stats_json(result.stats);
    if (args.emit_ldba)
        text = args.format == "dot" ? ldpa::to_dot(result.ldba) : ldpa::emit_hoa(result.ldba);
    else
        text = args.format == "dot" ? ldpa::to_dot(result.dpa) : ldpa::emit_hoa(result.dpa);
    if (args.format == "json") {
        nlohmann::json j{{"stats", stats}};
        j["hoa"] = args.emit_ldba ? ldpa::emit_hoa(result.ldba) : ldpa::emit_hoa(result.dpa);
        text = j.dump(2) + "\n";
    }
    write_output(args.output, text);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LTL and LDBA to deterministic parity automata"};
    app.require_subcommand(1);

    TranslateArgs targs;
    auto* translate = app.add_subcommand("translate", "translate a formula or LDBA to a DPA");
    auto* opt_formula = translate->add_option("-f,--formula", targs.formula, "LTL formula");
    auto* opt_hoa = translate->add_option("--input-hoa", targs.input_hoa, "LDBA in HOA format");
    opt_formula->excludes(opt_hoa);
    translate->add_flag("--ldba", targs.emit_ldba, "emit the intermediate LDBA");
    translate->add_flag("--no-reduce", targs.no_reduce, "disable the oracle-based reduction");
    translate->add_flag("--no-compress", targs.no_compress, "disable color compression");
    translate->add_flag("--keep-smallest", targs.keep_smallest,
                        "never merge the index-1 vertex during reduction");
    translate->add_flag("--race", targs.race, "race the formula against its negation");
    translate->add_option("--budget", targs.budget, "state budget");
    translate->add_option("--seed", targs.seed, "RNG seed");
    translate->add_option("--format", targs.format, "output format")
        ->check(CLI::IsMember({"hoa", "dot", "json"}));
    translate->add_option("-o,--output", targs.output, "output file (default stdout)");

    std::string check_formula, check_hoa;
    std::size_t max_prefix = 3, max_period = 3;
    std::size_t samples = 0;
    std::uint64_t check_seed = 1;
    auto* check = app.add_subcommand("check", "cross-validate all acceptance oracles on lassos");
    auto* copt_formula = check->add_option("-f,--formula", check_formula, "LTL formula");
    auto* copt_hoa = check->add_option("--input-hoa", check_hoa, "LDBA in HOA format");
    copt_formula->excludes(copt_hoa);
    check->add_option("--max-prefix", max_prefix, "maximum lasso prefix length");
    check->add_option("--max-period", max_period, "maximum lasso period length");
    check->add_option("--samples", samples, "sample this many lassos instead of enumerating");
    check->add_option("--seed", check_seed, "sampling seed");

    std::uint64_t rand_seed = 1;
    std::uint32_t rand_states = 5, rand_letters = 2;
    double rand_density = 0.3, rand_acc = 0.4;
    std::string rand_output;
    auto* rand = app.add_subcommand("rand-ldba", "generate a random valid LDBA");
    rand->add_option("--seed", rand_seed, "RNG seed");
    rand->add_option("--states", rand_states, "number of states");
    rand->add_option("--letters", rand_letters, "alphabet size");
    rand->add_option("--density", rand_density, "transition density outside Q_d");
    rand->add_option("--acc-density", rand_acc, "accepting-transition density inside Q_d");
    rand->add_option("-o,--output", rand_output, "output file (default stdout)");

    std::string family = "r";
    std::uint32_t n_min = 1, n_max = 2;
    std::string csv_path;
    TranslateArgs bargs;
    auto* bench = app.add_subcommand("bench", "run the parametric benchmark families");
    bench->add_option("--family", family, "family")
        ->check(CLI::IsMember({"r", "g", "f", "theta"}));
    bench->add_option("--n-min", n_min, "smallest parameter");
    bench->add_option("--n-max", n_max, "largest parameter");
    bench->add_option("--csv", csv_path, "CSV output path (default stdout)");
    bench->add_flag("--no-reduce", bargs.no_reduce, "disable the oracle-based reduction");
    bench->add_flag("--no-compress", bargs.no_compress, "disable color compression");
    bench->add_flag("--race", bargs.race, "race each formula against its negation");
    bench->add_option("--budget", bargs.budget, "state budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (translate->parsed()) {
            if (targs.formula.empty() && targs.input_hoa.empty()) {
                std::cerr << "error: translate needs --formula or --input-hoa\n";
                return kExitUsage;
            }
            if (targs.emit_ldba && !targs.input_hoa.empty()) {
                std::cerr << "error: --ldba requires --formula\n";
                return kExitUsage;
            }
            return run_translate(targs);
        }
        if (check->parsed()) {
            ldpa::CrossConfig cc;
            cc.max_prefix = max_prefix;
            cc.max_period = max_period;
            cc.seed = check_seed;
            if (samples > 0)
                cc.samples = samples;
            ldpa::PipelineConfig cfg;
            ldpa::CrossReport report;
            if (!check_formula.empty()) {
                report = ldpa::crossvalidate(check_formula, cfg, cc);
            } else if (!check_hoa.empty()) {
                ldpa::Automaton parsed = ldpa::parse_hoa(read_file(check_hoa));
                if (!std::holds_alternative<ldpa::Ldba>(parsed)) {
                    std::cerr << "error: expected a Buchi LDBA as input\n";
                    return kExitTranslation;
                }
                report = ldpa::crossvalidate(std::get<ldpa::Ldba>(parsed), cfg, cc);
            } else {
                std::cerr << "error: check needs --formula or --input-hoa\n";
                return kExitUsage;
            }
            std::cout << "checked " << report.words_checked << " lassos, acceptors:";
            for (const auto& a : report.acceptors)
                std::cout << " " << a;
            std::cout << "\n";
            for (const auto& s : report.skipped)
                std::cout << "skipped: " << s << "\n";
            if (!report.ok()) {
                std::cout << "DISAGREEMENT " << report.detail << "\n";
                return kExitCounterexample;
            }
            std::cout << "all acceptors agree\n";
            return kExitOk;
        }
        if (rand->parsed()) {
            ldpa::Ldba a = ldpa::rand_ldba(rand_seed, rand_states, rand_letters, rand_density,
                                           rand_acc);
            write_output(rand_output, ldpa::emit_hoa(a));
            return kExitOk;
        }
        if (bench->parsed()) {
            ldpa::Family fam = family == "r"       ? ldpa::Family::R
                               : family == "g"     ? ldpa::Family::G
                               : family == "f"     ? ldpa::Family::F
                                                   : ldpa::Family::Theta;
            ldpa::PipelineConfig cfg = make_config(bargs);
            auto records = ldpa::bench_families(fam, n_min, n_max, cfg);
            write_output(csv_path, ldpa::bench_csv(records));
            return kExitOk;
        }
    } catch (const ldpa::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTranslation;
    } catch (const ldpa::NnfError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTranslation;
    } catch (const ldpa::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTranslation;
    } catch (const ldpa::HoaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTranslation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTranslation;
    }
    return kExitUsage;
}
