// Acceptance gate: runs the full verification suite and prints one line per
// criterion.  Exits nonzero when any criterion fails.

#include <cstdio>
#include <map>

#include "psido/verify.hpp"

int main() {
    std::vector<psido::CheckRow> rows;
    try {
        rows = psido::run_suite("all");
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: suite aborted: %s\n", e.what());
        return 1;
    }

    static const char* kLabel[16] = {
        nullptr,
        "residue and zeta-pole closed forms",
        "res(log Q) + q * zeta_Q(0) = 0",
        "zeta determinant of 1-Delta = 4 sinh^2 pi",
        "defect formula vs direct Laurent fit",
        "coboundary identity for weighted traces",
        "weight-change formula",
        "res(L) = 0 and L = 0 for commuting pairs",
        "tau-integral formula for tr^Q(L)",
        "stationarity under trace-class perturbations",
        "commuting anomaly closed form vs oracle",
        "noncommuting anomaly vs oracle and weight swap",
        "Ducourtioux relation",
        "spectral-cut independence",
        "derivative/family commutation checks",
        "regularization-parameter stability",
    };

    std::map<int, std::pair<int, int>> tally;  // criterion -> {passed, total}
    for (const auto& r : rows) {
        auto& t = tally[r.criterion];
        t.second++;
        if (r.pass) t.first++;
    }

    int failed = 0;
    for (int c = 1; c <= 15; ++c) {
        auto it = tally.find(c);
        int passed = it == tally.end() ? 0 : it->second.first;
        int total = it == tally.end() ? 0 : it->second.second;
        bool ok = total > 0 && passed == total;
        if (!ok) ++failed;
        std::printf("criterion %2d: %s  (%d/%d)  %s\n", c, ok ? "PASS" : "FAIL",
                    passed, total, kLabel[c]);
        if (!ok)
            for (const auto& r : rows)
                if (r.criterion == c && !r.pass)
                    std::printf("    failing check: %s\n", r.check_id.c_str());
    }
    std::printf("%d/15 criteria passed\n", 15 - failed);
    return failed == 0 ? 0 : 1;
}
