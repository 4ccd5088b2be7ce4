#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracpar/sincprop.hpp"

namespace fracpar {

enum class Experiment {
    TableInit1D,     // 1D initial-value errors per mesh level
    TableDuhamel1D,  // 1D time-constant source errors per mesh level
    TableInit2D,     // 2D checkerboard errors, sinc reference propagator
    TableTotal2D,    // total error of the N-node sinc propagator vs u(t)
    FigQuadErrVsN,   // sup quadrature error as a function of N
    FigQuadErrVsT,   // sup quadrature error as a function of t at fixed N
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& tag);

struct ExperimentConfig {
    Experiment kind = Experiment::TableInit1D;
    std::vector<double> betas = {0.25, 0.5, 0.75};
    double t = 0.5;
    std::vector<double> t_values;      // FigQuadErrVsT only; defaults if empty
    std::vector<int> levels;           // per-experiment defaults if empty
    std::vector<int> quad_points;      // N values; single entry for tables
    // policy for the sinc rule; figures may run both for comparison
    SpacingPolicy policy = SpacingPolicy::LogN;
    bool both_policies = false;
    std::optional<double> b;           // contour overrides
    std::optional<double> d;
    int modes_1d = 50000;              // truncation of the reference series
    int modes_2d = 500;
    int threads = 1;
    bool sinc_crosscheck = true;       // TableInit1D: second error column via sinc

    void validate() const;
};

struct ReportRow {
    double resolution = 0.0;           // h, h^2 (max area), N, or t
    double error = 0.0;
    std::optional<double> oroc;        // empty on the first row of a series
    std::optional<double> error_alt;   // cross-path error; not serialized
};

struct ReportSeries {
    std::string label;                 // e.g. "beta=0.5" or "beta=0.5 policy=logn"
    std::vector<ReportRow> rows;
};

struct ExperimentReport {
    // ordered parameter echo for the CSV header
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<ReportSeries> series;
};

/// Observed rates of convergence: ln(e_i/e_{i+1}) / ln(r_i/r_{i+1}).
std::vector<double> oroc(const std::vector<double>& errors, const std::vector<double>& resolutions);

/// Run one experiment; rows are ordered by level regardless of internal order.
ExperimentReport run(const ExperimentConfig& config);

/// CSV with '#' comment header, one block per series ("# series: <label>"
/// followed by resolution,error,oroc rows), blocks separated by blank lines.
void write_csv(const ExperimentReport& report, std::ostream& out);
void write_csv_file(const ExperimentReport& report, const std::string& path);

/// Companion gnuplot script plotting every series of the CSV by block index.
void write_gnuplot_file(const ExperimentReport& report, const std::string& csv_path,
                        const std::string& gp_path);

/// Inverse of write_csv (error_alt is not serialized and comes back empty).
ExperimentReport parse_csv(std::istream& in);
ExperimentReport parse_csv_file(const std::string& path);

} // namespace fracpar
