#include "fracpar/harness.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fracpar/errors.hpp"
#include "fracpar/quaderror.hpp"
#include "fracpar/spectral.hpp"

namespace fracpar {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
    return s;
}

std::string fmt_list(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

ContourSpec make_spec(const ExperimentConfig& cfg, int dim) {
    ContourSpec spec = dim == 1 ? ContourSpec::unit_interval() : ContourSpec::unit_square();
    if (cfg.b) spec.b = *cfg.b;
    if (cfg.d) spec.d = *cfg.d;
    spec.validate();
    return spec;
}

std::vector<int> default_levels(Experiment kind, double beta) {
    switch (kind) {
        case Experiment::TableInit1D: return {3, 4, 5, 6, 7};
        case Experiment::TableDuhamel1D:
            return beta < 0.25 ? std::vector<int>{12, 13} : std::vector<int>{9, 10};
        case Experiment::TableInit2D: return {2, 3, 4, 5, 6};
        case Experiment::TableTotal2D: return {0, 1, 2, 3, 4};
        default: return {};
    }
}

void fill_oroc(ReportSeries& series, const std::vector<double>& rate_base) {
    std::vector<double> errs;
    for (const auto& row : series.rows) errs.push_back(row.error);
    if (errs.size() < 2) return;
    const std::vector<double> rates = oroc(errs, rate_base);
    for (std::size_t i = 1; i < series.rows.size(); ++i) series.rows[i].oroc = rates[i - 1];
}

// ---- 1D tables -------------------------------------------------------------

ReportSeries run_1d_series(const ExperimentConfig& cfg, double beta, bool duhamel) {
    const ContourSpec spec = make_spec(cfg, 1);
    std::vector<int> levels = cfg.levels.empty() ? default_levels(cfg.kind, beta) : cfg.levels;
    ReportSeries series;
    series.label = "beta=" + fmt(beta);
    std::vector<double> hs;
    auto weight = [&](double lam) {
        const double lb = std::pow(lam, beta);
        return duhamel ? (1.0 - std::exp(-cfg.t * lb)) / lb : std::exp(-cfg.t * lb);
    };
    for (const int lev : levels) {
        const int m = (1 << lev) - 1;
        const Mesh mesh = build_interval_mesh(m);
        const double h = 1.0 / (m + 1);
        const Eigen::VectorXd load =
            initial_data_load_vector(mesh, duhamel ? InitialData::HatForcing1D : InitialData::Hat1D);
        const Eigen::VectorXd uh = dst_apply_weight_1d(mesh, load, weight);

        Eigen::VectorXd coeffs = hat_sine_coefficients(cfg.modes_1d) * std::sqrt(2.0);
        for (int j = 1; j <= cfg.modes_1d; ++j) coeffs[j - 1] *= weight(std::pow(j * kPi, 2.0));
        const Eigen::VectorXd u_nodes = sine_series_at_nodes_1d(m, coeffs);

        const SparsePencil pencil = assemble(mesh);
        ReportRow row;
        row.resolution = h;
        row.error = l2_norm(pencil, Eigen::VectorXd(u_nodes - uh));
        if (!duhamel && cfg.sinc_crosscheck && m <= (1 << 7) - 1) {
            // independent path: sinc propagator on the same data (N raised for
            // small beta, where the log-N spacing converges more slowly)
            const int N = cfg.quad_points.empty() ? (beta < 0.4 ? 200 : 100) : cfg.quad_points[0];
            Eigen::SimplicialLDLT<SpMat> mass(pencil.M);
            const Eigen::VectorXd cv = mass.solve(load);
            const SincRule rule = make_rule(N, beta, SpacingPolicy::LogN, spec);
            const PropagatorResult q = apply_propagator(pencil, cv, cfg.t, beta, rule, spec, cfg.threads);
            row.error_alt = l2_norm(pencil, Eigen::VectorXd(u_nodes - q.values));
        }
        series.rows.push_back(row);
        hs.push_back(h);
    }
    fill_oroc(series, hs);
    return series;
}

// ---- 2D tables -------------------------------------------------------------

ReportSeries run_2d_series(const ExperimentConfig& cfg, double beta, bool total_error) {
    const ContourSpec spec = make_spec(cfg, 2);
    std::vector<int> levels = cfg.levels.empty() ? default_levels(cfg.kind, beta) : cfg.levels;
    const int N = cfg.quad_points.empty() ? (total_error ? 40 : 100) : cfg.quad_points[0];
    ReportSeries series;
    series.label = "beta=" + fmt(beta);
    std::vector<double> hs;

    Eigen::MatrixXd base = checkerboard_sine_coefficients(cfg.modes_2d);
    Eigen::MatrixXd weighted = base;
    for (int j = 1; j <= cfg.modes_2d; ++j)
        for (int k = 1; k <= cfg.modes_2d; ++k) {
            const double lam = (static_cast<double>(j) * j + static_cast<double>(k) * k) * kPi * kPi;
            weighted(j - 1, k - 1) *= std::exp(-cfg.t * std::pow(lam, beta));
        }

    for (const int lev : levels) {
        const int n = total_error ? 5 * (1 << lev) : (1 << lev);
        const Mesh mesh = build_square_mesh(n);
        const SparsePencil pencil = assemble(mesh);
        const Eigen::VectorXd load = initial_data_load_vector(mesh, InitialData::Checkerboard2D);
        Eigen::SimplicialLDLT<SpMat> mass(pencil.M);
        const Eigen::VectorXd cv = mass.solve(load);
        const SincRule rule = make_rule(N, beta, cfg.policy, spec,
                                        cfg.policy == SpacingPolicy::Balanced
                                            ? std::optional<double>(cfg.t)
                                            : std::nullopt);
        const PropagatorResult q = apply_propagator(pencil, cv, cfg.t, beta, rule, spec, cfg.threads);
        ReportRow row;
        row.resolution = total_error ? 1.0 / (2.0 * n * n) : 1.0 / n;   // max area vs h
        row.error = l2_error_vs_sine_series_2d(mesh, pencil, q.values, weighted);
        series.rows.push_back(row);
        hs.push_back(1.0 / n);   // rates are always observed against h
    }
    fill_oroc(series, hs);
    return series;
}

// ---- quadrature-error figures ----------------------------------------------

ReportSeries run_fig_series(const ExperimentConfig& cfg, double beta, SpacingPolicy policy) {
    const ContourSpec spec = make_spec(cfg, 1);
    ReportSeries series;
    series.label = "beta=" + fmt(beta) + " policy=" +
                   (policy == SpacingPolicy::LogN ? std::string("logn") : std::string("balanced"));
    if (cfg.kind == Experiment::FigQuadErrVsN) {
        std::vector<int> Ns = cfg.quad_points.empty() ? std::vector<int>{4, 8, 16, 32, 64, 128}
                                                      : cfg.quad_points;
        for (const int N : Ns) {
            const double k = select_spacing(N, beta, policy, spec,
                                            policy == SpacingPolicy::Balanced
                                                ? std::optional<double>(cfg.t)
                                                : std::nullopt);
            const SupSearchResult r =
                sup_search(cfg.t, beta, spec, N, k, adequate_sup_config(cfg.t, beta));
            series.rows.push_back({static_cast<double>(N), r.sup_value, {}, {}});
        }
    } else {
        std::vector<double> ts = cfg.t_values.empty()
                                     ? std::vector<double>{1e-4, 1e-3, 1e-2, 1e-1, 0.5, 1.0}
                                     : cfg.t_values;
        const int N = cfg.quad_points.empty() ? 32 : cfg.quad_points[0];
        for (const double t : ts) {
            const double k = select_spacing(N, beta, policy, spec,
                                            policy == SpacingPolicy::Balanced
                                                ? std::optional<double>(t)
                                                : std::nullopt);
            const SupSearchResult r = sup_search(t, beta, spec, N, k, adequate_sup_config(t, beta));
            series.rows.push_back({t, r.sup_value, {}, {}});
        }
    }
    return series;
}

} // namespace

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::TableInit1D: return "table-init-1d";
        case Experiment::TableDuhamel1D: return "table-duhamel-1d";
        case Experiment::TableInit2D: return "table-init-2d";
        case Experiment::TableTotal2D: return "table-total-2d";
        case Experiment::FigQuadErrVsN: return "fig-quaderr-vs-n";
        case Experiment::FigQuadErrVsT: return "fig-quaderr-vs-t";
    }
    throw std::invalid_argument("unknown experiment");
}

Experiment experiment_from_string(const std::string& tag) {
    if (tag == "table-init-1d") return Experiment::TableInit1D;
    if (tag == "table-duhamel-1d") return Experiment::TableDuhamel1D;
    if (tag == "table-init-2d") return Experiment::TableInit2D;
    if (tag == "table-total-2d") return Experiment::TableTotal2D;
    if (tag == "fig-quaderr-vs-n") return Experiment::FigQuadErrVsN;
    if (tag == "fig-quaderr-vs-t") return Experiment::FigQuadErrVsT;
    throw std::invalid_argument("unknown experiment tag: " + tag);
}

void ExperimentConfig::validate() const {
    if (betas.empty()) throw std::invalid_argument("config: at least one beta required");
    for (const double b : betas)
        if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("config: beta must lie in (0,1)");
    if (!(t > 0.0)) throw std::invalid_argument("config: t must be > 0");
    if (!std::is_sorted(levels.begin(), levels.end()))
        throw std::invalid_argument("config: levels must be ascending");
    for (const int N : quad_points)
        if (N < 2) throw std::invalid_argument("config: N must be >= 2");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (modes_1d < 1 || modes_2d < 1) throw std::invalid_argument("config: modes must be >= 1");
}

std::vector<double> oroc(const std::vector<double>& errors, const std::vector<double>& resolutions) {
    if (errors.size() != resolutions.size() || errors.size() < 2)
        throw std::invalid_argument("oroc: need equal-length lists with >= 2 entries");
    for (const double e : errors)
        if (!(e > 0.0)) throw std::invalid_argument("oroc: errors must be positive");
    for (const double r : resolutions)
        if (!(r > 0.0)) throw std::invalid_argument("oroc: resolutions must be positive");
    std::vector<double> rates;
    for (std::size_t i = 0; i + 1 < errors.size(); ++i)
        rates.push_back(std::log(errors[i] / errors[i + 1]) /
                        std::log(resolutions[i] / resolutions[i + 1]));
    return rates;
}

ExperimentReport run(const ExperimentConfig& config) {
    config.validate();
    ExperimentReport report;
    const int dim = (config.kind == Experiment::TableInit2D ||
                     config.kind == Experiment::TableTotal2D) ? 2 : 1;
    const ContourSpec spec = make_spec(config, dim);

    report.params.emplace_back("experiment", to_string(config.kind));
    report.params.emplace_back("t", fmt(config.t));
    report.params.emplace_back("beta", fmt_list(config.betas));
    if (!config.levels.empty()) report.params.emplace_back("levels", fmt_list(config.levels));
    if (!config.quad_points.empty()) report.params.emplace_back("N", fmt_list(config.quad_points));
    report.params.emplace_back("policy", config.both_policies
                                             ? "both"
                                             : (config.policy == SpacingPolicy::LogN ? "logn" : "balanced"));
    report.params.emplace_back("b", fmt(spec.b));
    report.params.emplace_back("d", fmt(spec.d));
    report.params.emplace_back("k-rule", "per-series");
    report.params.emplace_back("modes",
                               dim == 1 ? std::to_string(config.modes_1d) : std::to_string(config.modes_2d));
    report.params.emplace_back("oroc-base",
                               config.kind == Experiment::TableTotal2D ? "sqrt(resolution)" : "resolution");

    switch (config.kind) {
        case Experiment::TableInit1D:
            for (const double beta : config.betas)
                report.series.push_back(run_1d_series(config, beta, false));
            break;
        case Experiment::TableDuhamel1D:
            for (const double beta : config.betas)
                report.series.push_back(run_1d_series(config, beta, true));
            break;
        case Experiment::TableInit2D:
            for (const double beta : config.betas)
                report.series.push_back(run_2d_series(config, beta, false));
            break;
        case Experiment::TableTotal2D:
            for (const double beta : config.betas)
                report.series.push_back(run_2d_series(config, beta, true));
            break;
        case Experiment::FigQuadErrVsN:
        case Experiment::FigQuadErrVsT:
            for (const double beta : config.betas) {
                if (config.both_policies) {
                    report.series.push_back(run_fig_series(config, beta, SpacingPolicy::LogN));
                    report.series.push_back(run_fig_series(config, beta, SpacingPolicy::Balanced));
                } else {
                    report.series.push_back(run_fig_series(config, beta, config.policy));
                }
            }
            break;
    }
    return report;
}

void write_csv(const ExperimentReport& report, std::ostream& out) {
    if (report.series.empty()) throw std::invalid_argument("write_csv: empty report");
    out << "# fracpar experiment report\n";
    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&now));
    out << "# generated: " << stamp << "\n";
    for (const auto& [key, value] : report.params) out << "# " << key << " = " << value << "\n";
    out << "resolution,error,oroc\n";
    for (std::size_t s = 0; s < report.series.size(); ++s) {
        if (s) out << "\n\n";   // gnuplot index separator
        out << "# series: " << report.series[s].label << "\n";
        for (const auto& row : report.series[s].rows) {
            out << fmt(row.resolution) << ',' << fmt(row.error) << ',';
            if (row.oroc) out << fmt(*row.oroc);
            out << "\n";
        }
    }
}

void write_csv_file(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("write_csv_file: cannot open " + path);
    write_csv(report, out);
}

void write_gnuplot_file(const ExperimentReport& report, const std::string& csv_path,
                        const std::string& gp_path) {
    std::ofstream out(gp_path);
    if (!out) throw std::invalid_argument("write_gnuplot_file: cannot open " + gp_path);
    out << "set datafile separator ','\n";
    bool logx = true;
    for (const auto& [key, value] : report.params)
        if (key == "experiment" && value == "fig-quaderr-vs-n") logx = false;
    out << (logx ? "set logscale xy\n" : "set logscale y\n");
    out << "set key outside\n";
    out << "set xlabel 'resolution'\nset ylabel 'error'\n";
    out << "plot";
    for (std::size_t s = 0; s < report.series.size(); ++s) {
        if (s) out << ",";
        out << " '" << csv_path << "' index " << s
            << " using 1:2 with linespoints title '" << report.series[s].label << "'";
    }
    out << "\n";
}

ExperimentReport parse_csv(std::istream& in) {
    ExperimentReport report;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# series: ", 0) == 0) {
            report.series.push_back({line.substr(10), {}});
            continue;
        }
        if (line.rfind("# generated:", 0) == 0 || line == "# fracpar experiment report") continue;
        if (line[0] == '#') {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos)
                report.params.emplace_back(line.substr(2, eq - 2), line.substr(eq + 3));
            continue;
        }
        if (line == "resolution,error,oroc") continue;
        if (report.series.empty()) throw std::invalid_argument("parse_csv: data before series header");
        std::istringstream ss(line);
        std::string a, b, c;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        std::getline(ss, c);
        ReportRow row;
        row.resolution = std::stod(a);
        row.error = std::stod(b);
        if (!c.empty()) row.oroc = std::stod(c);
        report.series.back().rows.push_back(row);
    }
    return report;
}

ExperimentReport parse_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("parse_csv_file: cannot open " + path);
    return parse_csv(in);
}

} // namespace fracpar
