#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "latdist/distance.hpp"
#include "latdist/io.hpp"
#include "latdist/sampling.hpp"
#include "latdist/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace latdist;

namespace {

// Exit codes: 0 all good, 1 invariant/computation failure, 2 config error.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct FlagOverrides {
    std::string config_path;
    std::optional<std::string> lattice;
    std::optional<int> sites;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> family;
};

RunConfig resolve_config(const FlagOverrides& flags) {
    RunConfig cfg;
    if (!flags.config_path.empty()) cfg = load_run_config(flags.config_path);
    if (flags.lattice) {
        if (*flags.lattice == "open")
            cfg.lattice.topology = Topology::Open;
        else if (*flags.lattice == "cyclic")
            cfg.lattice.topology = Topology::Cyclic;
        else if (*flags.lattice == "line")
            cfg.lattice.topology = Topology::TruncatedLine;
        else
            throw ConfigError("--lattice: expected open, cyclic or line");
    }
    if (flags.sites) cfg.lattice.sites = *flags.sites;
    if (flags.seed) {
        cfg.link.seed = *flags.seed;
        cfg.verify.seed = *flags.seed;
    }
    if (flags.out) cfg.output_path = *flags.out;
    if (flags.format) {
        if (*flags.format != "csv" && *flags.format != "json")
            throw ConfigError("--format: expected csv or json");
        cfg.output_format = *flags.format;
    }
    if (flags.family) {
        if (*flags.family == "dm")
            cfg.family = DiracFamily::DMGeneralized;
        else if (*flags.family == "naive")
            cfg.family = DiracFamily::Naive;
        else if (*flags.family == "wilson")
            cfg.family = DiracFamily::Wilson;
        else
            throw ConfigError("--family: expected dm, naive or wilson");
    }
    try {
        cfg.lattice.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

void ensure_output_dir(const RunConfig& cfg) {
    fs::create_directories(cfg.output_path);
}

std::string out_file(const RunConfig& cfg, const std::string& name) {
    return (fs::path(cfg.output_path) / name).string();
}

void write_table(const RunConfig& cfg, const DistanceMatrix& table, const std::string& stem) {
    if (cfg.output_format == "csv")
        write_text_file(out_file(cfg, stem + ".csv"), distance_matrix_csv(table));
    else
        write_text_file(out_file(cfg, stem + ".json"), distance_matrix_json(table, cfg.lattice));
}

DiracOperator build_family_operator(const RunConfig& cfg, const LinkField& omega) {
    switch (cfg.family) {
        case DiracFamily::DMGeneralized: return build_dirac_dm(omega, cfg.lattice);
        case DiracFamily::Naive: return build_dirac_naive(cfg.lattice);
        case DiracFamily::Wilson: return build_dirac_wilson(cfg.lattice);
    }
    throw ConfigError("operator family not recognised");
}

int cmd_distances(const FlagOverrides& flags) {
    const RunConfig cfg = resolve_config(flags);
    for (const DistanceMethod m : cfg.methods)
        if (m != DistanceMethod::Numerical && cfg.family != DiracFamily::DMGeneralized)
            throw ConfigError("method '" + method_name(m) +
                              "' needs the dm operator family; comparison families are "
                              "numerical-only");

    const LinkField omega = make_link_field(cfg);
    const DiracOperator op = build_family_operator(cfg, omega);
    ensure_output_dir(cfg);
    write_text_file(out_file(cfg, "link_field.json"), link_field_json(omega));

    const int n = cfg.lattice.sites;
    std::vector<std::pair<std::string, DistanceMatrix>> tables;
    json failures = json::array();
    json certificates = json::array();
    int nonconverged = 0;

    for (const DistanceMethod method : cfg.methods) {
        DistanceMatrix table;
        table.method = method;
        table.values.assign(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                try {
                    double v = 0.0;
                    if (method == DistanceMethod::Numerical) {
                        const NumericalDistance r = numerical_distance(op, i, j, cfg.optimizer);
                        v = r.value;
                        if (!r.converged) ++nonconverged;
                        certificates.push_back(json{{"pair", {i, j}},
                                                    {"value", r.value},
                                                    {"gap", r.gap},
                                                    {"converged", r.converged},
                                                    {"f", r.certificate}});
                    } else if (method == DistanceMethod::ClosedForm) {
                        v = closed_form_distance(omega, cfg.lattice, i, j);
                    } else {
                        const SiteFunction f = saturating_function(omega, cfg.lattice, i, j);
                        v = std::abs(f[j] - f[i]);
                    }
                    table.values[i][j] = v;
                    table.values[j][i] = v;
                } catch (const std::exception& e) {
                    failures.push_back(json{{"method", method_name(method)},
                                            {"pair", {i, j}},
                                            {"error", e.what()}});
                }
            }
        tables.emplace_back(method_name(method), std::move(table));
    }

    json summary;
    summary["schema_version"] = 1;
    summary["lattice"] = {{"topology", topology_name(cfg.lattice.topology)},
                          {"sites", cfg.lattice.sites},
                          {"window_pad", cfg.lattice.window_pad}};
    summary["operator_family"] = family_name(cfg.family);
    summary["methods"] = json::array();
    for (const auto& [name, table] : tables) summary["methods"].push_back(name);
    summary["nonconverged_pairs"] = nonconverged;
    summary["failures"] = failures;

    json cross = json::array();
    for (std::size_t a = 0; a < tables.size(); ++a)
        for (std::size_t b = a + 1; b < tables.size(); ++b) {
            double max_rel = 0.0, sum_rel = 0.0;
            int count = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const double x = tables[a].second.values[i][j];
                    const double y = tables[b].second.values[i][j];
                    const double rel = std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-15});
                    max_rel = std::max(max_rel, rel);
                    sum_rel += rel;
                    ++count;
                }
            cross.push_back(json{{"a", tables[a].first},
                                 {"b", tables[b].first},
                                 {"max_rel_dev", max_rel},
                                 {"mean_rel_dev", count ? sum_rel / count : 0.0}});
        }
    summary["cross_method"] = cross;

    for (const auto& [name, table] : tables) write_table(cfg, table, "distances_" + name);
    bool wrote_certificates = false;
    for (const DistanceMethod m : cfg.methods)
        if (m == DistanceMethod::Numerical) wrote_certificates = true;
    if (wrote_certificates)
        write_text_file(out_file(cfg, "certificates_numerical.json"),
                        json{{"schema_version", 1}, {"certificates", certificates}}.dump(2) + "\n");
    write_text_file(out_file(cfg, "summary.json"), summary.dump(2) + "\n");

    std::cout << "wrote " << tables.size() << " distance table(s) to " << cfg.output_path << "\n";
    for (const auto& item : cross)
        std::cout << item.at("a").get<std::string>() << " vs " << item.at("b").get<std::string>()
                  << ": max rel dev " << item.at("max_rel_dev").get<double>() << "\n";
    if (!failures.empty()) {
        std::cerr << failures.size() << " pair(s) failed; see summary.json\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_verify(const FlagOverrides& flags, int trials_flag, double tol_scale_flag) {
    RunConfig cfg = resolve_config(flags);
    if (flags.sites) cfg.verify.sites = *flags.sites;
    if (trials_flag > 0) cfg.verify.trials = trials_flag;
    if (tol_scale_flag > 0.0) cfg.verify.tol_scale = tol_scale_flag;

    const std::vector<InvariantResult> results = run_invariant_suite(cfg.verify);
    ensure_output_dir(cfg);

    json report;
    report["schema_version"] = 1;
    report["sites"] = cfg.verify.sites;
    report["trials"] = cfg.verify.trials;
    report["seed"] = cfg.verify.seed;
    report["invariants"] = json::array();

    bool all_pass = true;
    for (const InvariantResult& r : results) {
        all_pass = all_pass && r.pass;
        report["invariants"].push_back(json{{"name", r.name},
                                            {"pass", r.pass},
                                            {"expected_failure", r.expected_failure},
                                            {"measured", r.measured},
                                            {"threshold", r.threshold},
                                            {"margin", r.margin},
                                            {"details", r.details}});
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << (r.expected_failure ? " (expected-failure probe)" : "")
                  << ": measured " << format_double(r.measured) << ", threshold "
                  << format_double(r.threshold) << "\n";
        if (!r.pass && !r.replay_json.empty())
            write_text_file(out_file(cfg, "verify_failure_" + r.name + ".json"),
                            r.replay_json + "\n");
    }
    report["all_pass"] = all_pass;
    write_text_file(out_file(cfg, "verify_report.json"), report.dump(2) + "\n");
    std::cout << (all_pass ? "all invariants hold\n" : "invariant failures detected\n");
    return all_pass ? kExitOk : kExitFailure;
}

int cmd_sweep(const FlagOverrides& flags) {
    const RunConfig cfg = resolve_config(flags);
    if (!cfg.sweep) throw ConfigError("sweep command needs a 'sweep' section in the config");
    const SweepConfig& sw = *cfg.sweep;
    const DistanceMethod method = cfg.methods.empty() ? DistanceMethod::ClosedForm : cfg.methods[0];
    if (cfg.family != DiracFamily::DMGeneralized)
        throw ConfigError("sweep supports the dm operator family only");

    auto one_distance = [&](const LinkField& omega, const LatticeSpec& spec, int i, int j) {
        spec.require_site(i);
        spec.require_site(j);
        switch (method) {
            case DistanceMethod::ClosedForm: return closed_form_distance(omega, spec, i, j);
            case DistanceMethod::Numerical:
                return numerical_distance(build_dirac_dm(omega, spec), i, j, cfg.optimizer).value;
            case DistanceMethod::Saturating: {
                const SiteFunction f = saturating_function(omega, spec, i, j);
                return std::abs(f[j] - f[i]);
            }
        }
        return 0.0;
    };

    std::string csv = sw.parameter + ",distance\n";
    if (sw.parameter == "sites") {
        for (const double value : sw.values) {
            const int n = (int)value;
            if (n < 2 || (double)n != value) throw ConfigError("sweep.values: sites must be integers >= 2");
            RunConfig point = cfg;
            point.lattice.sites = n;
            const LinkField omega = make_link_field(point);
            const int i = sw.pair ? sw.pair->first : 0;
            const int j = sw.pair ? sw.pair->second : n - 1;
            csv += format_double(value) + "," + format_double(one_distance(omega, point.lattice, i, j)) + "\n";
        }
    } else if (sw.parameter == "amplitude_scale") {
        const LinkField base = make_link_field(cfg);
        const int i = sw.pair ? sw.pair->first : 0;
        const int j = sw.pair ? sw.pair->second : cfg.lattice.sites - 1;
        for (const double c : sw.values) {
            if (!(c > 0.0)) throw ConfigError("sweep.values: amplitude scales must be positive");
            LinkField scaled = base;
            for (auto& w : scaled.values) w *= c;
            csv += format_double(c) + "," + format_double(one_distance(scaled, cfg.lattice, i, j)) + "\n";
        }
    } else {  // phase_magnitude
        const LinkField base = make_link_field(cfg);
        Rng rng(cfg.link.seed ^ 0xfeed);
        std::vector<double> direction;
        for (int k = 0; k < cfg.lattice.sites; ++k) direction.push_back(rng.uniform(-1.0, 1.0));
        const int i = sw.pair ? sw.pair->first : 0;
        const int j = sw.pair ? sw.pair->second : cfg.lattice.sites - 1;
        for (const double phi : sw.values) {
            LinkField turned = base;
            for (int k = 0; k < cfg.lattice.sites; ++k)
                turned.values[k] = std::polar(std::abs(base.values[k]), phi * direction[k]);
            csv += format_double(phi) + "," + format_double(one_distance(turned, cfg.lattice, i, j)) + "\n";
        }
    }

    ensure_output_dir(cfg);
    write_text_file(out_file(cfg, "sweep.csv"), csv);
    std::cout << "wrote sweep of '" << sw.parameter << "' (" << sw.values.size()
              << " points) to " << out_file(cfg, "sweep.csv") << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral-triple distances on one-dimensional lattices"};
    app.require_subcommand(1);

    FlagOverrides flags;
    int trials_flag = 0;
    double tol_scale_flag = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", flags.config_path, "JSON config file");
        sub->add_option("--lattice", [&](const std::vector<std::string>& v) {
            flags.lattice = v.back();
            return true;
        }, "Topology override: open|cyclic|line");
        sub->add_option("--sites", [&](const std::vector<std::string>& v) {
            flags.sites = std::stoi(v.back());
            return true;
        }, "Site count override");
        sub->add_option("--seed", [&](const std::vector<std::string>& v) {
            flags.seed = std::stoull(v.back());
            return true;
        }, "Random seed override");
        sub->add_option("--out", [&](const std::vector<std::string>& v) {
            flags.out = v.back();
            return true;
        }, "Output directory");
        sub->add_option("--format", [&](const std::vector<std::string>& v) {
            flags.format = v.back();
            return true;
        }, "Output format override: csv|json");
        sub->add_option("--family", [&](const std::vector<std::string>& v) {
            flags.family = v.back();
            return true;
        }, "Operator family override: dm|naive|wilson");
    };

    CLI::App* distances = app.add_subcommand("distances", "All-pairs distance tables per method");
    add_common(distances);
    CLI::App* verify = app.add_subcommand("verify", "Run the invariant suite");
    add_common(verify);
    verify->add_option("--trials", trials_flag, "Trials per invariant");
    verify->add_option("--tol-scale", tol_scale_flag, "Multiplier on every invariant threshold");
    CLI::App* sweep = app.add_subcommand("sweep", "One-parameter distance sweep");
    add_common(sweep);

    CLI11_PARSE(app, argc, argv);

    try {
        if (distances->parsed()) return cmd_distances(flags);
        if (verify->parsed()) return cmd_verify(flags, trials_flag, tol_scale_flag);
        if (sweep->parsed()) return cmd_sweep(flags);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}
