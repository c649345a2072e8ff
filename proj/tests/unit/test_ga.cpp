#include <doctest.h>

#include <random>

#include "siglogic/errors.hpp"
#include "siglogic/ga.hpp"
#include "siglogic/simulate.hpp"
#include "support/helpers.hpp"

using namespace siglogic;
using test_support::toy_model;

namespace {

GaConfig quick_config(std::uint64_t seed = 1) {
    GaConfig cfg;
    cfg.population_size = 24;
    cfg.max_generations = 120;
    cfg.stall_generations = 40;
    cfg.seed = seed;
    return cfg;
}

bool same_result(const TrainResult& a, const TrainResult& b) {
    if (a.best != b.best || a.evaluations != b.evaluations) return false;
    if (a.generations.size() != b.generations.size()) return false;
    for (std::size_t i = 0; i < a.generations.size(); ++i) {
        if (a.generations[i].generation != b.generations[i].generation) return false;
        if (a.generations[i].best != b.generations[i].best) return false;
        if (a.generations[i].mean != b.generations[i].mean) return false;
    }
    return a.best_score.total == b.best_score.total && a.stopped_by == b.stopped_by;
}

}  // namespace

TEST_CASE("equal seeds give identical runs, whatever the thread count") {
    const PknModel m = expand_and_gates(toy_model());
    const XMidas data = test_support::toy_dataset();
    const auto a = ga_train(m, data, 1e-4, quick_config(42));
    const auto b = ga_train(m, data, 1e-4, quick_config(42));
    CHECK(same_result(a, b));

    GaConfig threaded = quick_config(42);
    threaded.threads = 8;
    const auto c = ga_train(m, data, 1e-4, threaded);
    CHECK(same_result(a, c));

    const auto d = ga_train(m, data, 1e-4, quick_config(43));
    CHECK(d.best_score.total == a.best_score.total);  // same optimum either way
}

TEST_CASE("degenerate model trains to an empty bitstring") {
    // annotated nodes exist, but no reactions survive the cut
    PknModel none = add_reaction(PknModel(), "S=P");
    none = annotate(none, {"S"}, {}, {"P"});
    none = cut(none, BitString::zeros(1));

    MidasBuilder b;
    b.add_measurement({"P", 10, {{"S", 1}}, {}, 0.0});
    const auto result = ga_train(none, b.build(), 1e-4, quick_config());
    CHECK(result.best.size() == 0);
    CHECK(result.best_score.theta_f == 0.0);  // sim all zero matches the data
    CHECK(result.generations.size() == 1);
}

TEST_CASE("best trace is non-increasing") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 5; ++trial) {
        const PknModel m = expand_and_gates(test_support::random_model(rng));
        BitString hidden = BitString::zeros(m.reactions().size());
        for (std::size_t i = 0; i < hidden.size(); ++i) hidden.set(i, rng() % 2);
        const XMidas data = test_support::simulate_dataset(m, hidden);
        if (data.measurements.empty()) continue;
        TrainResult result;
        try {
            result = ga_train(m, data, 1e-4, quick_config(rng()));
        } catch (const ScoringError&) {
            continue;
        }
        for (std::size_t i = 1; i < result.generations.size(); ++i)
            CHECK(result.generations[i].best <= result.generations[i - 1].best);
    }
}

TEST_CASE("synthetic recovery reaches a perfect fit at alpha zero") {
    const PknModel m = expand_and_gates(toy_model());
    // hidden model: keep the two direct simple edges only
    BitString hidden = BitString::zeros(4);
    for (std::size_t i = 0; i < 4; ++i) {
        const std::string text = format_reaction(m.reactions()[i]);
        if (text == "Input1=Output" || text == "Input2=Interm" || text == "Interm=Output")
            hidden.set(i, true);
    }
    const XMidas data = test_support::simulate_dataset(m, hidden);
    const auto result = ga_train(m, data, 0.0, quick_config(5));
    CHECK(result.best_score.total == 0.0);
    CHECK(result.stopped_by == StopReason::tolerance);
    // behavioural equality of the recovered model
    CHECK(truth_table(cut(m, result.best)) == truth_table(cut(m, hidden)));
}

TEST_CASE("exhaustive search agrees with direct evaluation") {
    const PknModel m = expand_and_gates(toy_model());
    const XMidas data = test_support::toy_dataset();
    const auto [best, breakdown] = exhaustive_search(m, data, 1e-4);
    CHECK(breakdown.total == evaluate(m, best, data, 1e-4).total);

    // all-ones is exactly the score of the uncut model
    const auto full = evaluate(m, BitString::ones(4), data, 1e-4);
    ScoreOptions options;
    options.alpha = 1e-4;
    CHECK(full.total == score(m, BitString::ones(4), data, options).total);
    CHECK(full.theta_s == 1.0);

    // single reaction: the better of the two candidates wins
    PknModel wire = annotate(add_reaction(PknModel(), "S=P"), {"S"}, {}, {"P"});
    MidasBuilder b;
    b.add_measurement({"P", 10, {{"S", 1}}, {}, 1.0});
    const auto [wbest, wscore] = exhaustive_search(wire, b.build(), 1e-4);
    CHECK(wbest == BitString::ones(1));
    CHECK(wscore.theta_f == 0.0);
}

TEST_CASE("all-zero data prefers the empty model under any positive alpha") {
    const PknModel m = expand_and_gates(toy_model());
    MidasBuilder b;
    for (int i1 = 0; i1 <= 1; ++i1)
        for (int i2 = 0; i2 <= 1; ++i2)
            b.add_measurement({"Output", 10, {{"Input1", i1}, {"Input2", i2}}, {}, 0.0});
    // sim of the empty model is all zeros: theta_f 0 with theta_s 0
    const auto [best, breakdown] = exhaustive_search(m, b.build(), 1e-3);
    CHECK(best.count() == 0);
    CHECK(breakdown.total == 0.0);
}

TEST_CASE("tie break prefers fewer bits then lexicographic order") {
    // two parallel identical-behaviour edges: S=P twice is impossible, so use
    // two stimuli driving the same target with equal data weight
    PknModel m;
    m = add_reaction(m, "S1=P");
    m = add_reaction(m, "S2=P");
    m = annotate(m, {"S1", "S2"}, {}, {"P"});
    MidasBuilder b;
    // only the both-on condition measured: either edge alone explains it
    b.add_measurement({"P", 10, {{"S1", 1}, {"S2", 1}}, {}, 1.0});
    const auto [best, breakdown] = exhaustive_search(m, b.build(), 0.0);
    CHECK(breakdown.total == 0.0);
    // at alpha=0 both single-edge models and the full model tie on 0;
    // fewer bits wins, then the lexicographically smallest bitstring
    CHECK(best.count() == 1);
    CHECK(best == BitString::from_string("01"));
}

TEST_CASE("size guard refuses beyond 16 reactions") {
    PknModel big;
    std::set<std::string> stimuli;
    for (int i = 0; i < 17; ++i) {
        const std::string s = "S" + std::to_string(i);
        big = add_reaction(big, s + "=T");
        stimuli.insert(s);
    }
    big = annotate(big, stimuli, {}, {"T"});
    MidasBuilder b;
    b.add_measurement({"T", 10, {{"S0", 1}}, {}, 1.0});
    CHECK_THROWS_AS(exhaustive_search(big, b.build(), 0.0), SizeGuardError);
}

TEST_CASE("ga matches the exhaustive optimum on small instances") {
    std::mt19937_64 rng(61);
    int instances = 0, hits = 0;
    while (instances < 4) {
        test_support::ModelOptions opt;
        opt.max_nodes = 8;
        opt.max_reactions = 8;
        const PknModel m = expand_and_gates(test_support::random_model(rng, opt));
        if (m.reactions().size() > 12) continue;
        BitString hidden = BitString::zeros(m.reactions().size());
        for (std::size_t i = 0; i < hidden.size(); ++i) hidden.set(i, rng() % 2);
        const XMidas data = test_support::simulate_dataset(m, hidden);
        if (data.measurements.empty()) continue;
        std::pair<BitString, ScoreBreakdown> optimum;
        try {
            optimum = exhaustive_search(m, data, 1e-4);
        } catch (const ScoringError&) {
            continue;
        }
        ++instances;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            GaConfig cfg;  // spec defaults
            cfg.seed = seed;
            const auto result = ga_train(m, data, 1e-4, cfg);
            if (result.best_score.total <= optimum.second.total + 1e-12) ++hits;
        }
    }
    CHECK(hits >= instances * 3 - 1);  // near-perfect hit rate on tiny instances
}

TEST_CASE("invalid configurations are rejected") {
    const PknModel m = toy_model();
    const XMidas data = test_support::toy_dataset();
    GaConfig cfg;
    cfg.population_size = 1;
    CHECK_THROWS_AS(ga_train(m, data, 0.0, cfg), UsageError);
    cfg = GaConfig{};
    cfg.elitism_count = 60;
    CHECK_THROWS_AS(ga_train(m, data, 0.0, cfg), UsageError);
    cfg = GaConfig{};
    cfg.bit_mutation_prob = 1.5;
    CHECK_THROWS_AS(ga_train(m, data, 0.0, cfg), UsageError);
    cfg = GaConfig{};
    cfg.selection_pressure = 3.0;
    CHECK_THROWS_AS(ga_train(m, data, 0.0, cfg), UsageError);
    cfg = GaConfig{};
    cfg.threads = 0;
    CHECK_THROWS_AS(ga_train(m, data, 0.0, cfg), UsageError);
}
