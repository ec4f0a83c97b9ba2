#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "retcc/config.hpp"
#include "retcc/errors.hpp"
#include "retcc/kernels.hpp"
#include "retcc/pipeline.hpp"

namespace {

void report_error(const std::string& kind, int code, const std::string& message) {
    nlohmann::json rec{{"error", {{"kind", kind}, {"code", code}, {"message", message}}}};
    std::cerr << rec.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"state-to-state rotational energy transfer: coupled-channel cross "
                 "sections, thermal rates, synthetic double-resonance datasets and "
                 "their rate extraction"};
    app.require_subcommand(1);

    std::string config_path;
    if (const char* env = std::getenv("RETCC_CONFIG")) config_path = env;
    long long seed_override = -1;
    int threads_override = 0;
    bool emit_plot = false;
    app.add_option("-c,--config", config_path, "config file (or RETCC_CONFIG)");
    app.add_option("--seed", seed_override, "override kinetics seed");
    app.add_option("--threads", threads_override, "worker threads");
    app.add_flag("--emit-plot-data", emit_plot, "write plot-ready two-column files");

    auto* sc_scatter = app.add_subcommand("scatter", "coupled-channel cross sections");
    auto* sc_rates = app.add_subcommand("rates", "thermal rate coefficients");
    auto* sc_sim = app.add_subcommand("simulate", "synthetic decays and spectra");
    auto* sc_ext = app.add_subcommand("extract", "rate extraction from datasets");
    auto* sc_round = app.add_subcommand("roundtrip", "simulate, extract and compare");
    auto* sc_cmp = app.add_subcommand("compare", "compare rate tables");
    auto* sc_prop = app.add_subcommand("propensity", "propensity / energy-gap report");
    auto* sc_ref = app.add_subcommand("reference", "dump the bundled reference dataset");
    auto* sc_cfg = app.add_subcommand("config", "print the effective config");

    std::string extracted_path, reference = "theory", rates_path;
    sc_cmp->add_option("--extracted", extracted_path, "extracted rate table path");
    sc_cmp->add_option("--reference", reference, "theory | measured | <path>");
    sc_prop->add_option("--rates", rates_path, "rate table path (default: bundled)");

    CLI11_PARSE(app, argc, argv);

    try {
        retcc::RunConfig cfg;
        if (!config_path.empty()) cfg = retcc::load_config(config_path);
        if (seed_override >= 0)
            cfg.kinetics.seed = static_cast<std::uint64_t>(seed_override);
        if (threads_override > 0) cfg.threads = threads_override;
        if (emit_plot) cfg.io.emit_plot_data = true;
        cfg.validate();

        std::ostream& log = std::cerr;
        log << "kernel backend: " << retcc::kernels::backend_name() << "\n";
        if (sc_scatter->parsed()) retcc::pipeline::cmd_scatter(cfg, log);
        if (sc_rates->parsed()) retcc::pipeline::cmd_rates(cfg, log);
        if (sc_sim->parsed()) retcc::pipeline::cmd_simulate(cfg, log);
        if (sc_ext->parsed()) retcc::pipeline::cmd_extract(cfg, log);
        if (sc_round->parsed()) retcc::pipeline::cmd_roundtrip(cfg, log);
        if (sc_cmp->parsed()) retcc::pipeline::cmd_compare(cfg, extracted_path, reference, log);
        if (sc_prop->parsed()) retcc::pipeline::cmd_propensity(cfg, rates_path, log);
        if (sc_ref->parsed()) retcc::pipeline::cmd_reference(std::cout);
        if (sc_cfg->parsed()) std::cout << retcc::serialize_config(cfg);
        return 0;
    } catch (const retcc::ValidationError& e) {
        report_error("validation", 2, e.what());
        return 2;
    } catch (const retcc::ConvergenceError& e) {
        report_error("convergence", 3, e.what());
        return 3;
    } catch (const retcc::IoError& e) {
        report_error("io", 4, e.what());
        return 4;
    } catch (const std::exception& e) {
        report_error("internal", 1, e.what());
        return 1;
    }
}
