#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace paley {

struct SweepRecord {
    int64_t p = 0;
    std::string quantity;
    double value = 0.0;
    double runtime_seconds = 0.0;
    std::string status = "ok";  // ok | capped | failed
};

struct PowerFit {
    double a = 0.0;
    double b = 0.0;
    double r_squared = 0.0;
    int n_points = 0;
};

/// OLS of log(value) on log(p) over the status == ok records.
PowerFit fit_power_law(const std::vector<SweepRecord>& records);

struct SweepConfig {
    std::string quantity;
    std::vector<int64_t> primes;   // explicit list; already filtered to 1 mod 4
    int jobs = 0;                  // 0 = hardware concurrency
    double timeout_seconds = 600;  // per (quantity, p); capped rows excluded from fits
    double tol = 1e-3;             // solver tolerance where applicable
};

/// One sweep cell, evaluated synchronously (the worker pool calls this).
SweepRecord compute_quantity(const std::string& quantity, int64_t p, double timeout_seconds,
                             double tol);

/// Bounded worker pool over primes; records come back sorted by p.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

void write_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::vector<SweepRecord> read_csv(const std::string& path);

}  // namespace paley
