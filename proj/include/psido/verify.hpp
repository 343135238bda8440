#pragma once

// Batch verification suites over the shipped operator corpus.  Each check
// compares an implemented functional against a closed form or an
// independent-oracle value and records a pass/fail row.

#include "psido/json_io.hpp"

namespace psido {

struct VerifyOptions {
    int modes = 4096;    // mode cap of spectral sums
    int tau_nodes = 16;  // base tau-quadrature order
    double Lambda = 1e3;
    int threads = 0;     // 0: use PSIDO_THREADS (default 1)
};

// suite: residues | traces | determinants | anomaly | all
std::vector<CheckRow> run_suite(const std::string& suite, const VerifyOptions& opt = {});
const std::vector<std::string>& suite_names();

}  // namespace psido
