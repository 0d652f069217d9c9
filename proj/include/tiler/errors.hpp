#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tiler/rational.hpp"

namespace tiler {

// Malformed or out-of-contract inputs.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& m) : std::runtime_error(m) {}
};

// A constructed object breaks a structural invariant (overlapping tiles,
// diameter cap exceeded, ...).
struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& m) : std::runtime_error(m) {}
};

// Empirical (delta, k) fitting could not find working constants.
struct CalibrationError : std::runtime_error {
    CalibrationError(const std::string& m, std::string log)
        : std::runtime_error(m), probe_log(std::move(log)) {}
    std::string probe_log;
};

// A tile replacement failed to reach its coverage target.
struct ImprovementError : std::runtime_error {
    ImprovementError(const std::string& m, Rat coverage)
        : std::runtime_error(m), achieved_coverage(std::move(coverage)) {}
    Rat achieved_coverage;
};

// No admissible marker count exists for a tile.
struct MarkerError : std::runtime_error {
    MarkerError(const std::string& m, std::vector<int> tile)
        : std::runtime_error(m), offending_tile(std::move(tile)) {}
    std::vector<int> offending_tile;
};

// An audited inequality failed; the message names the witness.
struct AuditError : std::runtime_error {
    explicit AuditError(const std::string& m) : std::runtime_error(m) {}
};

// A schedule recursion was violated during sequence construction.
struct ScheduleError : std::runtime_error {
    explicit ScheduleError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace tiler
