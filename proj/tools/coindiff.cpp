#include "coindiff/conventions.hpp"
#include "coindiff/io.hpp"
#include "coindiff/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace coindiff;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coindiff: differential-operator realizations of induced and coinduced modules"};
    app.require_subcommand(0, 1);

    JobConfig flags;
    std::string config_path, verify, truncation;
    app.add_option("--config", config_path, "JSON job file; flags override its values");
    auto* o_algebra = app.add_option("--algebra", flags.algebra, "A:n, D:n, E:n, gl:n or custom:<file>");
    auto* o_decomp = app.add_option("--decomp", flags.decomposition, "triangular or minus:<v>,...;h:<label>,...");
    auto* o_module = app.add_option("--module", flags.module, "coinduced or induced");
    auto* o_rep = app.add_option("--rep", flags.representation, "character, adjoint or a representation file");
    auto* o_weights = app.add_option("--weights", flags.weights, "symbolic or comma-separated rationals");
    auto* o_engine = app.add_option("--engine", flags.engine, "series, graph or both");
    auto* o_trunc = app.add_option("--truncation", truncation, "maximal X-degree kept");
    auto* o_format = app.add_option("--format", flags.format, "tex, structured or stats-only");
    auto* o_out = app.add_option("--out", flags.out, "output file (default: stdout)");
    auto* o_cache = app.add_option("--cache-dir", flags.cache_dir, "structure-constant cache directory");
    auto* o_verify = app.add_option("--verify", verify, "engines,homomorphism,degree,duality or all");
    auto* o_stats = app.add_flag("--stats", flags.stats, "append path statistics");
    auto* o_sdeg = app.add_option("--stats-degree", flags.stats_degree, "generator degree for statistics");
    auto* o_conv = app.add_option("--conventions", flags.conventions, "calibrated or face-value path weights");
    auto* o_workers = app.add_option("--workers", flags.workers, "worker threads for the graph engine");
    auto* o_allow = app.add_flag("--allow-truncated", flags.allow_truncated, "accept truncated series");

    auto* ledger = app.add_subcommand("ledger", "print the convention ledger");
    std::string ledger_out;
    ledger->add_option("--out", ledger_out, "write to this file instead of stdout");

    auto* validate_cmd = app.add_subcommand("validate", "validate a structure-constant file");
    std::string structure_path;
    validate_cmd->add_option("file", structure_path)->required();

    CLI11_PARSE(app, argc, argv);

    if (ledger->parsed()) {
        const std::string text = render_ledger();
        if (ledger_out.empty()) std::cout << text;
        else {
            std::ofstream out(ledger_out, std::ios::binary | std::ios::trunc);
            if (!out) {
                std::cerr << "cannot write " << ledger_out << "\n";
                return kExitError;
            }
            out << text;
        }
        return kExitOk;
    }
    if (validate_cmd->parsed()) {
        try {
            const auto alg = parse_structure(slurp(structure_path));
            const auto report = coindiff::validate(alg);
            std::cout << alg.name() << ": " << report.summary() << "\n";
            return report.ok() ? kExitOk : kExitValidation;
        } catch (const FormatError& e) {
            std::cerr << "malformed structure file: " << e.what() << "\n";
            return kExitValidation;
        } catch (const std::exception& e) {
            std::cerr << e.what() << "\n";
            return kExitError;
        }
    }

    JobConfig config;
    try {
        if (!config_path.empty()) config = parse_config(slurp(config_path));
        auto set = [](CLI::Option* o, auto& dst, const auto& src) {
            if (o->count()) dst = src;
        };
        set(o_algebra, config.algebra, flags.algebra);
        set(o_decomp, config.decomposition, flags.decomposition);
        set(o_module, config.module, flags.module);
        set(o_rep, config.representation, flags.representation);
        set(o_weights, config.weights, flags.weights);
        set(o_engine, config.engine, flags.engine);
        set(o_format, config.format, flags.format);
        set(o_out, config.out, flags.out);
        set(o_cache, config.cache_dir, flags.cache_dir);
        set(o_stats, config.stats, flags.stats);
        set(o_sdeg, config.stats_degree, flags.stats_degree);
        set(o_conv, config.conventions, flags.conventions);
        set(o_workers, config.workers, flags.workers);
        set(o_allow, config.allow_truncated, flags.allow_truncated);
        if (o_trunc->count()) {
            try {
                config.truncation = static_cast<unsigned>(std::stoul(truncation));
            } catch (const std::exception&) {
                throw ConfigError("malformed truncation '" + truncation + "'");
            }
        }
        if (o_verify->count()) {
            config.verify.clear();
            std::istringstream is(verify);
            for (std::string v; std::getline(is, v, ',');)
                if (!v.empty()) config.verify.push_back(v);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    const JobResult r = coindiff::run(config);
    if (config.out.empty()) std::cout << r.output;
    for (const auto& m : r.messages) std::cerr << m << "\n";
    return r.exit_code;
}
