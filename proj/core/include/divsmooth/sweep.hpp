#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "divsmooth/ext_real.hpp"

namespace divsmooth {

struct SweepConfig {
    std::uint64_t seed = 20240601;
    std::size_t instances = 10000;
    std::vector<std::size_t> dims{2, 3, 4, 5, 6, 7, 8};
    std::vector<double> eps_grid{0.01, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9};
    std::vector<double> alpha_grid{0.0, 0.2, 0.5, 0.8, 1.0, 1.5, 2.0, 3.0, 5.0, INFINITY};
    std::vector<double> beta_grid{0.1, 0.3, 0.6, 0.9, 1.0, 1.5, 2.0, 4.0, 10.0, INFINITY};
    double oracle_tol = 1e-4;
    double slack = 1e-9;
    std::vector<std::size_t> family_dims{10, 100, 1000, 10000, 100000};
    std::size_t threads = 0;  // 0: DIVSMOOTH_THREADS, else hardware concurrency

    void check() const;
};

struct SweepRecord {
    std::size_t instance;
    std::string theorem;
    std::size_t d;
    double eps, alpha, beta;
    ExtReal lhs, rhs;
    double margin;  // lhs - rhs; positive means violation
};

struct GapRecord {
    std::string bound;
    std::size_t d;
    double eps, alpha;
    double family_value;
    double bound_value;
    double gap;  // bound_value - family_value
};

struct SweepReport {
    std::vector<SweepRecord> records;
    double max_violation = -INFINITY;
    std::vector<GapRecord> achievability_gaps;
    double wall_time_s = 0.0;  // not part of the serialized documents
};

/// Worker count: explicit value, else DIVSMOOTH_THREADS, else hardware concurrency.
std::size_t resolve_threads(std::size_t requested);

/// Runs fn(i) for i in [0, n) across workers; exceptions are rethrown after joining.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

SweepReport sweep_bounds(const SweepConfig& cfg);

/// Family gaps against mu_H, nu_H and kappa at the given dimension.
GapRecord gap_thm3(std::size_t d, double eps = 0.5, double alpha = 2.0);
GapRecord gap_thm4(std::size_t d, double eps = 0.25, double alpha = 0.5);
GapRecord gap_kappa(std::size_t d, double eps = 0.5, double alpha = 0.5);

/// 12 significant digits; infinities as INF / -INF.
std::string format_csv_number(double v);
void write_report_csv(const SweepReport& report, std::ostream& out);
void write_gaps_csv(const SweepReport& report, std::ostream& out);

}  // namespace divsmooth
