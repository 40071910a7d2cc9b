#pragma once

#include <cstdint>
#include <limits>
#include <string>

namespace plcap {

// Direction-tagged numeric estimate. Inequality checks compare the sound
// sides only: an estimate used on the left must provide an upper side, one
// used on the right a lower side. Monte Carlo means are sound at the 3-sigma
// convention; `calibrated` carries a documented relative tolerance (grid
// solvers); `lower`/`upper` one-sided searches are unsound on the other side.
enum class BoundKind { exact, upper, lower, stat, calibrated };

struct Bound {
    double value = 0.0;
    BoundKind kind = BoundKind::exact;
    double sigma = 0.0;  // stat
    double tol = 0.0;    // calibrated, relative

    static Bound exact(double v) { return {v, BoundKind::exact, 0.0, 0.0}; }
    static Bound upper(double v) { return {v, BoundKind::upper, 0.0, 0.0}; }
    static Bound lower(double v) { return {v, BoundKind::lower, 0.0, 0.0}; }
    static Bound stat(double mean, double sigma) {
        return {mean, BoundKind::stat, sigma, 0.0};
    }
    static Bound calibrated(double v, double rel_tol) {
        return {v, BoundKind::calibrated, 0.0, rel_tol};
    }

    double sound_upper() const {
        switch (kind) {
            case BoundKind::exact:
            case BoundKind::upper:
                return value;
            case BoundKind::stat:
                return value + 3.0 * sigma;
            case BoundKind::calibrated:
                return value + std::abs(value) * tol;
            case BoundKind::lower:
                return std::numeric_limits<double>::infinity();
        }
        return std::numeric_limits<double>::infinity();
    }

    double sound_lower() const {
        switch (kind) {
            case BoundKind::exact:
            case BoundKind::lower:
                return value;
            case BoundKind::stat:
                return value - 3.0 * sigma;
            case BoundKind::calibrated:
                return value - std::abs(value) * tol;
            case BoundKind::upper:
                return -std::numeric_limits<double>::infinity();
        }
        return -std::numeric_limits<double>::infinity();
    }

    const char* kind_name() const;
};

enum class CheckStatus { pass, fail, inconclusive };

const char* status_name(CheckStatus s);

// One verified instance of one inequality.
struct InequalityReport {
    std::string check_id;
    std::string instance;
    Bound lhs, rhs;
    double constant = 0.0;  // multiplicative constant used on the right side
    double margin = 0.0;    // rhs sound lower minus lhs sound upper
    CheckStatus status = CheckStatus::inconclusive;
    bool observed_pass = false;  // raw value comparison, direction-blind
    bool report_only = false;    // instance declared without sound directions
    uint64_t seed = 0;
    std::string notes;
};

InequalityReport check_inequality(std::string check_id, std::string instance,
                                  Bound lhs, Bound rhs, double constant,
                                  uint64_t seed, bool report_only = false,
                                  std::string notes = "");

// Re-derives the status of a report from its stored bounds; used by the
// audit pass to rule out false passes.
CheckStatus rederive_status(const InequalityReport& r);

}  // namespace plcap
