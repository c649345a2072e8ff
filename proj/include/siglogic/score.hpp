#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "siglogic/bitstring.hpp"
#include "siglogic/midas.hpp"
#include "siglogic/model.hpp"

namespace siglogic {

/// One compared point of the residual report. `residual` is empty when the
/// point was not comparable: data missing, or the simulated node did not
/// stabilize (simulated == -1), in which case the penalty went into the fit
/// term instead.
struct ResidualEntry {
    std::string experiment;
    std::string signal;
    double time = 0.0;
    std::optional<double> data;
    std::int8_t simulated = 0;  // 0, 1, or -1 for not stabilized
    std::optional<double> residual;
};

/// Objective value of one candidate submodel: the mean squared residual
/// between data and simulation (theta_f), the normalized model size
/// (theta_s, sum of kept input counts over the sum across all reactions),
/// and total = theta_f + alpha * theta_s.
struct ScoreBreakdown {
    double theta_f = 0.0;
    double theta_s = 0.0;
    double alpha = 0.0;
    double total = 0.0;
    long n_points = 0;  // points entering the mean
    long n_na = 0;      // of which carried the non-stabilization penalty
    std::vector<ResidualEntry> residuals;
};

struct ScoreOptions {
    double alpha = 1e-4;
    double na_fac = 1.0;
    /// Time points to compare; empty selects the first non-zero time of the
    /// dataset. The boolean steady state is reused for every listed time.
    std::vector<double> times;
};

/// Precompiled evaluator: pays the model/data preparation once and scores
/// any number of bitstrings against the same dataset.
class Scorer {
public:
    Scorer(const PknModel& m, const XMidas& data, ScoreOptions options = {});
    ~Scorer();
    Scorer(Scorer&&) noexcept;
    Scorer& operator=(Scorer&&) noexcept;

    ScoreBreakdown evaluate(const BitString& bits, bool with_residuals = false) const;
    double theta_s_of(const BitString& bits) const;
    std::size_t n_reactions() const;
    const std::vector<double>& times() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Full objective for one bitstring, residual table included.
ScoreBreakdown score(const PknModel& m, const BitString& bits, const XMidas& data,
                     ScoreOptions options = {});

/// Fit term only (alpha forced to 0, theta_s omitted from the total).
ScoreBreakdown theta_f(const PknModel& m, const BitString& bits, const XMidas& data,
                       std::vector<double> times = {});

/// Size term only: kept input-count weight over total input-count weight.
double theta_s(const PknModel& m, const BitString& bits);

}  // namespace siglogic
