#include "plcap/report.hpp"

#include <cmath>

namespace plcap {

const char* Bound::kind_name() const {
    switch (kind) {
        case BoundKind::exact:
            return "exact";
        case BoundKind::upper:
            return "upper";
        case BoundKind::lower:
            return "lower";
        case BoundKind::stat:
            return "stat3sigma";
        case BoundKind::calibrated:
            return "calibrated";
    }
    return "?";
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass:
            return "pass";
        case CheckStatus::fail:
            return "fail";
        case CheckStatus::inconclusive:
            return "inconclusive";
    }
    return "?";
}

CheckStatus rederive_status(const InequalityReport& r) {
    if (r.report_only) return CheckStatus::inconclusive;
    const double lu = r.lhs.sound_upper();
    const double rl = r.rhs.sound_lower();
    if (std::isfinite(lu) && std::isfinite(rl) && lu <= rl) return CheckStatus::pass;
    // A certified violation needs the opposite sides.
    const double ll = r.lhs.sound_lower();
    const double ru = r.rhs.sound_upper();
    if (std::isfinite(ll) && std::isfinite(ru) && ll > ru) return CheckStatus::fail;
    return CheckStatus::inconclusive;
}

InequalityReport check_inequality(std::string check_id, std::string instance,
                                  Bound lhs, Bound rhs, double constant,
                                  uint64_t seed, bool report_only,
                                  std::string notes) {
    InequalityReport r;
    r.check_id = std::move(check_id);
    r.instance = std::move(instance);
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant = constant;
    r.observed_pass = lhs.value <= rhs.value;
    r.report_only = report_only;
    r.seed = seed;
    r.notes = std::move(notes);
    r.status = rederive_status(r);
    r.margin = rhs.sound_lower() - lhs.sound_upper();
    return r;
}

}  // namespace plcap
