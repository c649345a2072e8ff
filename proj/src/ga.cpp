#include "siglogic/ga.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <thread>

#include "siglogic/errors.hpp"

namespace siglogic {

namespace {

void check_config(const GaConfig& cfg) {
    if (cfg.population_size < 2) throw UsageError("population_size must be >= 2");
    if (cfg.max_generations < 1) throw UsageError("max_generations must be >= 1");
    if (cfg.stall_generations < 1) throw UsageError("stall_generations must be >= 1");
    if (cfg.elitism_count < 0 || cfg.elitism_count >= cfg.population_size)
        throw UsageError("elitism_count must be in [0, population_size)");
    if (cfg.selection_pressure < 1.0 || cfg.selection_pressure > 2.0)
        throw UsageError("selection_pressure must be in [1, 2]");
    if (cfg.threads < 1) throw UsageError("threads must be >= 1");
    const double p = cfg.bit_mutation_prob;
    if (p < 0.0 || p >= 1.0)
        throw UsageError("bit_mutation_prob must be in [0, 1); 0 selects the default");
}

using Genome = std::vector<std::uint8_t>;

// Scores every genome, reusing the cache; new entries are computed (possibly
// on worker threads) and committed in a fixed order so results do not depend
// on the thread count.
void evaluate_population(const Scorer& scorer, const std::vector<Genome>& population,
                         std::map<Genome, double>& cache, int threads, long& evaluations,
                         std::vector<double>& totals) {
    std::vector<const Genome*> fresh;
    std::map<Genome, std::size_t> pending;
    for (const auto& g : population)
        if (!cache.count(g) && pending.emplace(g, fresh.size()).second) fresh.push_back(&g);

    std::vector<double> results(fresh.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            results[i] = scorer.evaluate(BitString(*fresh[i]), false).total;
    };
    const std::size_t n = fresh.size();
    const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (nthreads <= 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (n + nthreads - 1) / nthreads;
        for (std::size_t t = 0; t < nthreads; ++t)
            pool.emplace_back(work, t * chunk, std::min(n, (t + 1) * chunk));
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < n; ++i) cache.emplace(*fresh[i], results[i]);
    evaluations += static_cast<long>(n);

    totals.clear();
    for (const auto& g : population) totals.push_back(cache.at(g));
}

}  // namespace

TrainResult ga_train(const PknModel& m, const XMidas& data, double alpha,
                     const GaConfig& config, double na_fac, std::vector<double> times) {
    ScoreOptions options{alpha, na_fac, std::move(times)};
    Scorer scorer(m, data, options);
    const std::size_t length = scorer.n_reactions();
    check_config(config);

    TrainResult result;
    if (length == 0) {
        result.best = BitString();
        result.best_score = scorer.evaluate(result.best, true);
        result.generations.push_back({0, result.best_score.total, result.best_score.total});
        result.evaluations = 1;
        result.stopped_by = result.best_score.total <= config.relative_tolerance
                                ? StopReason::tolerance
                                : StopReason::stall;
        return result;
    }

    const double mutation_prob = config.bit_mutation_prob > 0.0
                                     ? config.bit_mutation_prob
                                     : 0.5 / static_cast<double>(length);
    const int pop_size = config.population_size;

    std::mt19937_64 rng(config.seed);
    auto coin = [&rng]() { return static_cast<std::uint8_t>(rng() & 1u); };
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<Genome> population(static_cast<std::size_t>(pop_size));
    population[0].assign(length, 1);  // the full model is the first hypothesis
    for (int i = 1; i < pop_size; ++i) {
        population[static_cast<std::size_t>(i)].resize(length);
        for (std::size_t j = 0; j < length; ++j)
            population[static_cast<std::size_t>(i)][j] = coin();
    }

    // Linear-rank selection weights, best rank first.
    std::vector<double> rank_cdf(static_cast<std::size_t>(pop_size));
    {
        const double sp = config.selection_pressure;
        double acc = 0.0;
        for (int i = 0; i < pop_size; ++i) {
            const double w =
                pop_size == 1
                    ? 1.0
                    : sp - (2.0 * (sp - 1.0) * static_cast<double>(i)) /
                              static_cast<double>(pop_size - 1);
            acc += w;
            rank_cdf[static_cast<std::size_t>(i)] = acc;
        }
    }
    auto pick_rank = [&]() {
        const double u = unit(rng) * rank_cdf.back();
        return static_cast<std::size_t>(
            std::upper_bound(rank_cdf.begin(), rank_cdf.end(), u) - rank_cdf.begin());
    };

    std::map<Genome, double> cache;
    std::vector<double> totals;
    double best_total = 0.0;
    Genome best_genome;
    int stall = 0;

    for (int gen = 0;; ++gen) {
        evaluate_population(scorer, population, cache, config.threads, result.evaluations,
                            totals);

        std::vector<std::size_t> order(population.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (totals[a] != totals[b]) return totals[a] < totals[b];
            return population[a] < population[b];
        });

        const double gen_best = totals[order[0]];
        const double gen_mean =
            std::accumulate(totals.begin(), totals.end(), 0.0) /
            static_cast<double>(totals.size());
        if (gen == 0 || gen_best < best_total) {
            best_total = gen_best;
            best_genome = population[order[0]];
            stall = 0;
        } else {
            ++stall;
        }
        result.generations.push_back({gen, best_total, gen_mean});

        if (best_total <= config.relative_tolerance) {
            result.stopped_by = StopReason::tolerance;
            break;
        }
        if (gen >= config.max_generations) {
            result.stopped_by = StopReason::max_generations;
            break;
        }
        if (stall >= config.stall_generations) {
            result.stopped_by = StopReason::stall;
            break;
        }

        std::vector<Genome> next;
        next.reserve(population.size());
        for (int i = 0; i < config.elitism_count; ++i)
            next.push_back(population[order[static_cast<std::size_t>(i)]]);
        while (next.size() < population.size()) {
            const Genome& a = population[order[pick_rank()]];
            const Genome& b = population[order[pick_rank()]];
            Genome child(length);
            for (std::size_t j = 0; j < length; ++j) child[j] = coin() ? a[j] : b[j];
            for (std::size_t j = 0; j < length; ++j)
                if (unit(rng) < mutation_prob) child[j] ^= 1u;
            next.push_back(std::move(child));
        }
        population = std::move(next);
    }

    result.best = BitString(best_genome);
    result.best_score = scorer.evaluate(result.best, true);
    return result;
}

std::pair<BitString, ScoreBreakdown> exhaustive_search(const PknModel& m,
                                                       const XMidas& data, double alpha,
                                                       double na_fac,
                                                       std::vector<double> times) {
    const std::size_t n = m.reactions().size();
    if (n > 16)
        throw SizeGuardError("exhaustive search refused: " + std::to_string(n) +
                             " reactions exceed the bound of 16");
    ScoreOptions options{alpha, na_fac, std::move(times)};
    Scorer scorer(m, data, options);

    BitString best;
    double best_total = 0.0;
    std::size_t best_count = 0;
    bool first = true;
    for (std::uint32_t c = 0; c < (std::uint32_t{1} << n); ++c) {
        std::vector<std::uint8_t> bits(n);
        for (std::size_t i = 0; i < n; ++i) bits[i] = (c >> i) & 1u;
        BitString candidate(std::move(bits));
        const double total = scorer.evaluate(candidate, false).total;
        const std::size_t count = candidate.count();
        const bool better =
            first || total < best_total ||
            (total == best_total &&
             (count < best_count || (count == best_count && candidate < best)));
        if (better) {
            best = std::move(candidate);
            best_total = total;
            best_count = count;
            first = false;
        }
    }
    return {best, scorer.evaluate(best, true)};
}

ScoreBreakdown evaluate(const PknModel& m, const BitString& bits, const XMidas& data,
                        double alpha, double na_fac, std::vector<double> times) {
    return score(m, bits, data, ScoreOptions{alpha, na_fac, std::move(times)});
}

}  // namespace siglogic
