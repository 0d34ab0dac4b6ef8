#pragma once

#include <optional>
#include <string>

#include "qlab/config.hpp"
#include "qlab/fit.hpp"

namespace qlab {

// Result of one experiment run: the full CSV body (schema comment + header +
// one row per record, 17 significant digits, '.' decimal point), the exponent
// fit when one is defined, and the pass/fail verdict against the configured
// thresholds.
struct ExperimentOutput {
    std::string csv;
    std::optional<FitResult> fit;
    bool pass = true;
    std::string summary;
};

ExperimentOutput run_bilinear_sweep(const Config& cfg);
ExperimentOutput run_l4_growth(const Config& cfg);
ExperimentOutput run_remainder_decay(const Config& cfg);
ExperimentOutput run_cluster_audit(const Config& cfg);
ExperimentOutput run_weyl_audit(const Config& cfg);
ExperimentOutput run_split_audit(const Config& cfg);

// Dispatch by CLI subcommand name (bilinear-sweep, l4-growth, remainder-decay,
// cluster-audit, weyl-audit, split-audit).
ExperimentOutput run_experiment(const std::string& kind, const Config& cfg);

// Deterministic 64-bit seed mixing (splitmix64 based); used to derive
// per-sweep-point and per-trial generator seeds from the config seed.
uint64_t mix_seed(uint64_t a, uint64_t b);

// Number of worker threads for sweep execution: QLAB_THREADS, 0 = auto.
int worker_threads();

std::string format_real(double v);

} // namespace qlab
