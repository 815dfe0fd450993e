#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace paley {

struct CheckResult {
    std::string suite;
    std::string name;
    int64_t p = 0;       // 0 when the check spans primes
    bool hard = true;    // hard assertion vs logged measurement
    bool pass = true;
    double measured = 0.0;
    std::string note;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;

    bool ok() const {
        for (const auto& c : checks)
            if (c.hard && !c.pass) return false;
        return true;
    }
};

/// suite: field | charsums | graph | graphmx | blockcirc | fk | sdp | all
VerifyReport run_verify(const std::string& suite, int64_t p_min, int64_t p_max);

void print_report(const VerifyReport& report, std::ostream& os);

}  // namespace paley
