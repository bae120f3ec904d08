#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rgg/closed_forms.hpp"
#include "rgg/dossier.hpp"
#include "rgg/errors.hpp"
#include "rgg/matrix_core.hpp"
#include "rgg/model.hpp"
#include "rgg/rgg_sim.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using rgg::ModelParams;
using rgg::RegimeSpec;

struct ParamFlags {
    int d = 2;
    std::string taus;
    int natural = 0;
    double volume = 1.0;
    std::string regime;
    double c = 0.0;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--d", f.d, "dimension");
    cmd->add_option("--taus", f.taus, "comma-separated powers, e.g. 0,1,2");
    cmd->add_option("--natural", f.natural,
                    "shorthand for --d 2 --taus 0,1,...,n-1");
    cmd->add_option("--volume", f.volume, "window volume")->check(CLI::PositiveNumber);
    cmd->add_option("--regime", f.regime,
                    "subcritical | critical | supercritical");
    cmd->add_option("--c", f.c, "limit constant for the critical regime");
}

std::vector<double> parse_taus(const std::string& s) {
    std::vector<double> taus;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        taus.push_back(std::stod(item));
    }
    return taus;
}

ModelParams params_from_flags(const ParamFlags& f) {
    std::vector<double> taus;
    int d = f.d;
    if (f.natural > 0) {
        if (!f.taus.empty())
            throw std::invalid_argument("--natural and --taus are exclusive");
        d = 2;
        for (int i = 0; i < f.natural; ++i) taus.push_back(i);
    } else {
        if (f.taus.empty()) throw std::invalid_argument("--taus is required");
        taus = parse_taus(f.taus);
    }
    RegimeSpec regime;
    if (f.regime == "subcritical") {
        regime = RegimeSpec::subcritical();
    } else if (f.regime == "supercritical") {
        regime = RegimeSpec::supercritical();
    } else if (f.regime == "critical") {
        if (!(f.c > 0.0))
            throw std::invalid_argument("--regime critical requires --c > 0");
        regime = RegimeSpec::critical(f.c);
    } else {
        throw std::invalid_argument("--regime must be subcritical, critical or "
                                    "supercritical (got '" + f.regime + "')");
    }
    return ModelParams(d, std::move(taus), f.volume, regime);
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot open output file " + out);
    file << text;
}

std::string csv_block(const std::string& name, const rgg::Matrix& m) {
    return "# " + name + "\n" + m.to_csv();
}

int cmd_matrix(const ParamFlags& flags, const std::string& format,
               const std::string& out, const std::vector<std::string>& factors) {
    const ModelParams params = params_from_flags(flags);
    const rgg::CovarianceBundle bundle = rgg::build_sigma(params);

    std::vector<std::pair<std::string, rgg::Factorization>> facs;
    for (const std::string& f : factors) {
        if (f == "lu") {
            switch (params.regime.kind) {
                case rgg::RegimeKind::Subcritical:
                    facs.emplace_back(f, rgg::sb_lu(params));
                    break;
                case rgg::RegimeKind::Supercritical:
                    facs.emplace_back(f, rgg::sp_lu(params));
                    break;
                default:
                    facs.emplace_back(f, rgg::cr_lu_natural(params));
                    break;
            }
        } else if (f == "cholesky") {
            switch (params.regime.kind) {
                case rgg::RegimeKind::Subcritical:
                    facs.emplace_back(f, rgg::sb_cholesky(params));
                    break;
                case rgg::RegimeKind::Supercritical:
                    facs.emplace_back(f, rgg::sp_cholesky(params));
                    break;
                default:
                    facs.emplace_back(f, rgg::cr_cholesky_natural(params));
                    break;
            }
        } else if (f == "schur") {
            facs.emplace_back(f, rgg::sp_schur(params));
        } else if (f == "root") {
            facs.emplace_back(f, rgg::sp_root(params));
        } else {
            throw std::invalid_argument("unknown factorization '" + f +
                                        "' for --factors");
        }
    }

    if (format == "csv") {
        std::string text = csv_block("sigma", bundle.sigma.as_matrix());
        for (const auto& [name, fac] : facs) {
            switch (fac.kind) {
                case rgg::FactorizationKind::LU:
                    text += csv_block(name + ".l", fac.l);
                    text += csv_block(name + ".u", fac.u);
                    break;
                case rgg::FactorizationKind::Cholesky:
                    text += csv_block(name + ".g", fac.g);
                    break;
                case rgg::FactorizationKind::Schur:
                    text += csv_block(name + ".s", fac.s);
                    text += csv_block(name + ".d", fac.d);
                    text += csv_block(name + ".s_inv", fac.s_inv);
                    break;
                case rgg::FactorizationKind::Root:
                    text += csv_block(name + ".b", fac.b);
                    break;
            }
        }
        emit(text, out);
    } else if (format == "json") {
        nlohmann::json j;
        j["operation"] = "matrix";
        j["params"] = params.to_json();
        j["matrices"]["sigma"] = bundle.sigma.as_matrix().to_json();
        j["matrices"]["sigma_sb"] = bundle.sigma_sb.as_matrix().to_json();
        j["matrices"]["sigma_sp"] = bundle.sigma_sp.as_matrix().to_json();
        for (const auto& [name, fac] : facs) {
            nlohmann::json& slot = j["matrices"][name];
            switch (fac.kind) {
                case rgg::FactorizationKind::LU:
                    slot["l"] = fac.l.to_json();
                    slot["u"] = fac.u.to_json();
                    break;
                case rgg::FactorizationKind::Cholesky:
                    slot["g"] = fac.g.to_json();
                    break;
                case rgg::FactorizationKind::Schur:
                    slot["s"] = fac.s.to_json();
                    slot["d"] = fac.d.to_json();
                    slot["s_inv"] = fac.s_inv.to_json();
                    break;
                case rgg::FactorizationKind::Root:
                    slot["b"] = fac.b.to_json();
                    break;
            }
            j["residuals"][name] = fac.residual;
        }
        emit(j.dump(2) + "\n", out);
    } else {
        throw std::invalid_argument("--format must be csv or json");
    }
    return 0;
}

int cmd_verify(const ParamFlags& flags, const std::string& grid_file,
               bool list_checks, const std::string& format,
               const std::string& out) {
    if (list_checks) {
        std::string text;
        for (const rgg::CheckSpec& c : rgg::check_registry())
            text += c.name + "  (" + c.applies_to + ")\n";
        emit(text, out);
        return 0;
    }
    std::vector<ModelParams> sets;
    if (!grid_file.empty()) {
        std::ifstream in(grid_file);
        if (!in) throw std::invalid_argument("cannot read grid file " + grid_file);
        nlohmann::json j;
        in >> j;
        for (const auto& entry : j) sets.push_back(ModelParams::from_json(entry));
    } else {
        sets.push_back(params_from_flags(flags));
    }

    bool all_ok = true;
    std::string text;
    nlohmann::json report = nlohmann::json::array();
    for (const ModelParams& p : sets) {
        const rgg::Dossier d = rgg::build_dossier(p);
        all_ok = all_ok && d.all_passed();
        if (format == "text") {
            text += d.to_text();
        } else {
            report.push_back(d.to_json());
        }
    }
    emit(format == "text" ? text : report.dump(2) + "\n", out);
    return all_ok ? 0 : 1;
}

int cmd_simulate(const std::string& config_file, std::uint64_t seed, bool has_seed,
                 bool check_collapse, bool check_noise, const std::string& out) {
    std::ifstream in(config_file);
    if (!in) throw std::invalid_argument("cannot read config file " + config_file);
    nlohmann::json jconf;
    in >> jconf;
    rgg::ExperimentConfig config = rgg::ExperimentConfig::from_json(jconf);
    if (has_seed) config.base_seed = seed;

    int exit_code = 0;
    nlohmann::json summary;
    summary["config"] = config.to_json();

    const rgg::CovarianceBundle theory = rgg::build_sigma(config.params);
    const std::size_t n = config.params.n();

    std::string csv = "t,delta,i,j,empirical,theoretical,rel_err,jackknife_se\n";
    char buf[256];
    const auto estimates = rgg::run_experiment(config);
    nlohmann::json points = nlohmann::json::array();
    for (const rgg::CovarianceEstimate& est : estimates) {
        nlohmann::json point;
        point["t"] = est.t;
        point["delta"] = est.delta;
        point["replications"] = est.r;
        point["mean"] = est.mean;
        point["cov"] = est.cov.as_matrix().to_json();
        point["se"] = est.se.as_matrix().to_json();
        points.push_back(point);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double th = theory.sigma(i, j);
                const double rel = std::fabs(est.cov(i, j) - th) / std::fabs(th);
                std::snprintf(buf, sizeof(buf),
                              "%.17g,%.17g,%zu,%zu,%.17g,%.17g,%.17g,%.17g\n",
                              est.t, est.delta, i, j, est.cov(i, j), th, rel,
                              est.se(i, j));
                csv += buf;
            }
    }
    summary["schedule_points"] = points;
    summary["theoretical"] = theory.sigma.as_matrix().to_json();

    if (check_collapse) {
        const rgg::ConvergenceSeries series =
            rgg::check_difference_convergence(config);
        summary["variance_collapse"] = {{"t", series.t},
                               {"variance", series.variance},
                               {"loglog_slope", series.loglog_slope}};
        for (std::size_t i = 1; i < series.variance.size(); ++i)
            if (!(series.variance[i] < series.variance[i - 1])) exit_code = 1;
    }
    if (check_noise) {
        const rgg::NoiseDecomposition noise =
            rgg::check_noise_decomposition(config);
        summary["noise_decomposition"] = {
            {"residual_variance", noise.residual_variance},
            {"residual_variance_se", noise.residual_variance_se},
            {"target_variance", noise.target_variance},
            {"correlation", noise.correlation}};
        const double band = std::max(0.2 * noise.target_variance,
                                     3.0 * noise.residual_variance_se);
        if (std::fabs(noise.residual_variance - noise.target_variance) > band)
            exit_code = 1;
        if (!(std::fabs(noise.correlation) < 0.1)) exit_code = 1;
    }
    summary["exit_code"] = exit_code;

    emit(csv, out.empty() || out == "-" ? out : out + ".csv");
    emit(summary.dump(2) + "\n", out.empty() || out == "-" ? out : out + ".json");
    return exit_code;
}

int cmd_convergence(const std::string& config_file, std::uint64_t seed,
                    bool has_seed, bool assert_decreasing, const std::string& out) {
    std::ifstream in(config_file);
    if (!in) throw std::invalid_argument("cannot read config file " + config_file);
    nlohmann::json jconf;
    in >> jconf;
    rgg::ExperimentConfig config = rgg::ExperimentConfig::from_json(jconf);
    if (has_seed) config.base_seed = seed;

    const rgg::ConvergenceSeries series = rgg::check_difference_convergence(config);
    std::string csv = "t,variance\n";
    char buf[128];
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", series.t[i],
                      series.variance[i]);
        csv += buf;
    }
    std::snprintf(buf, sizeof(buf), "# loglog_slope,%.17g\n", series.loglog_slope);
    csv += buf;
    emit(csv, out);

    if (assert_decreasing)
        for (std::size_t i = 1; i < series.variance.size(); ++i)
            if (!(series.variance[i] < series.variance[i - 1])) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymptotic covariance matrices of length power functionals of "
                 "random geometric graphs"};
    app.require_subcommand(1);

    // matrix
    auto* matrix = app.add_subcommand("matrix", "emit the covariance matrix");
    ParamFlags mflags;
    add_param_flags(matrix, mflags);
    std::string mformat = "csv", mout = "-";
    std::vector<std::string> mfactors;
    matrix->add_option("--format", mformat, "csv | json");
    matrix->add_option("--out", mout, "output file, '-' for stdout");
    matrix->add_option("--factors", mfactors,
                       "factorizations to include: lu cholesky schur root")
        ->delimiter(',');

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification dossier");
    ParamFlags vflags;
    add_param_flags(verify, vflags);
    std::string grid_file, vformat = "text", vout = "-";
    bool vlist = false;
    verify->add_option("--grid", grid_file, "JSON file with a list of parameter sets");
    verify->add_flag("--list-checks", vlist, "list the check registry and exit");
    verify->add_option("--format", vformat, "text | json");
    verify->add_option("--out", vout, "output file, '-' for stdout");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo covariance runs");
    std::string sconfig, sout = "-";
    std::uint64_t sseed = 0;
    bool check_collapse = false, check_noise = false;
    simulate->add_option("--config", sconfig, "experiment config JSON")->required();
    auto* seed_opt = simulate->add_option("--seed", sseed, "override base seed");
    simulate->add_flag("--check-collapse", check_collapse, "weighted-difference variance decay");
    simulate->add_flag("--check-noise", check_noise, "noise decomposition residual");
    simulate->add_option("--out", sout, "output prefix ('-' for stdout)");

    // convergence
    auto* convergence =
        app.add_subcommand("convergence", "variance decay of the weighted difference");
    std::string cconfig, cout_path = "-";
    std::uint64_t cseed = 0;
    bool cassert = false;
    convergence->add_option("--config", cconfig, "experiment config JSON")->required();
    auto* cseed_opt = convergence->add_option("--seed", cseed, "override base seed");
    convergence->add_flag("--assert-decreasing", cassert,
                          "exit 1 unless the variance strictly decreases");
    convergence->add_option("--out", cout_path, "output file, '-' for stdout");

    // version
    auto* version = app.add_subcommand("version", "print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (matrix->parsed()) return cmd_matrix(mflags, mformat, mout, mfactors);
        if (verify->parsed())
            return cmd_verify(vflags, grid_file, vlist, vformat, vout);
        if (simulate->parsed())
            return cmd_simulate(sconfig, sseed, seed_opt->count() > 0, check_collapse,
                                check_noise, sout);
        if (convergence->parsed())
            return cmd_convergence(cconfig, cseed, cseed_opt->count() > 0, cassert,
                                   cout_path);
        if (version->parsed()) {
            std::cout << "rgg_spectra " << kVersion << "\n";
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const rgg::WrongRegimeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const rgg::TauVectorShapeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const rgg::NaturalPowersOnlyError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
