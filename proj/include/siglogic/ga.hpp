#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "siglogic/bitstring.hpp"
#include "siglogic/midas.hpp"
#include "siglogic/model.hpp"
#include "siglogic/score.hpp"

namespace siglogic {

/// Genetic algorithm settings. bit_mutation_prob 0 selects the adaptive
/// default of 0.5 / bitstring length.
struct GaConfig {
    int population_size = 50;
    int max_generations = 500;
    int stall_generations = 100;
    double bit_mutation_prob = 0.0;
    int elitism_count = 5;
    double selection_pressure = 1.2;
    double relative_tolerance = 0.0;
    std::uint64_t seed = 0;
    int threads = 1;  // worker threads for fitness evaluation
};

enum class StopReason { max_generations, stall, tolerance };

struct GenerationStat {
    int generation = 0;
    double best = 0.0;
    double mean = 0.0;
};

struct TrainResult {
    BitString best;
    ScoreBreakdown best_score;
    std::vector<GenerationStat> generations;  // best column is non-increasing
    long evaluations = 0;                     // distinct bitstrings scored
    StopReason stopped_by = StopReason::max_generations;
};

/// Trains a bitstring over the model's reactions: seeded and deterministic
/// for a given config, whatever the worker thread count. The initial
/// population holds one all-ones individual plus uniform random bitstrings;
/// selection is linear-rank with the configured pressure, recombination is
/// uniform crossover plus per-bit mutation, and the top elitism_count
/// individuals survive verbatim. Stops on max_generations, after
/// stall_generations without improvement, or when the best total drops to
/// relative_tolerance or below.
TrainResult ga_train(const PknModel& m, const XMidas& data, double alpha,
                     const GaConfig& config = {}, double na_fac = 1.0,
                     std::vector<double> times = {});

/// Evaluates every bitstring (at most 16 reactions) and returns the optimum.
/// Ties break toward fewer kept reactions, then the lexicographically
/// smallest bitstring.
std::pair<BitString, ScoreBreakdown> exhaustive_search(const PknModel& m,
                                                       const XMidas& data, double alpha,
                                                       double na_fac = 1.0,
                                                       std::vector<double> times = {});

/// Scores one bitstring; convenience wrapper over scoring.
ScoreBreakdown evaluate(const PknModel& m, const BitString& bits, const XMidas& data,
                        double alpha, double na_fac = 1.0,
                        std::vector<double> times = {});

}  // namespace siglogic
