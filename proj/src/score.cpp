#include "siglogic/score.hpp"

#include <algorithm>
#include <map>

#include "engine.hpp"
#include "siglogic/errors.hpp"

namespace siglogic {

struct Scorer::Impl {
    detail::CompiledNetwork net;
    ScoreOptions options;
    std::vector<double> times;

    // Per experiment: clamp vectors plus, per (time, signal), the data value.
    struct Experiment {
        std::string name;
        std::vector<std::uint8_t> stim_value;
        std::vector<std::uint8_t> inhibited;
        // data[time_index][signal_index]
        std::vector<std::vector<std::optional<double>>> data;
    };
    std::vector<Experiment> experiments;
    std::vector<std::string> signal_names;  // data order
    std::vector<int> signal_nodes;          // node index per signal
    std::vector<double> weights;            // input count per reaction
    double total_weight = 0.0;

    Impl(const PknModel& m, const XMidas& data, ScoreOptions opts)
        : net(m), options(std::move(opts)) {
        std::string missing;
        auto require = [&](const std::vector<std::string>& names,
                           const std::set<std::string>& annotated, const char* what) {
            for (const auto& n : names)
                if (!annotated.count(n))
                    missing += std::string(missing.empty() ? "" : ", ") + what + " '" + n + "'";
        };
        require(data.stimuli_names, m.stimuli(), "stimulus");
        require(data.inhibitor_names, m.inhibitors(), "inhibitor");
        require(data.signal_names, m.signals(), "signal");
        if (!missing.empty())
            throw UsageError("dataset names missing from the model annotations: " + missing);

        times = options.times;
        const auto dataset_times = data.times();
        if (times.empty()) {
            auto t1 = data.first_nonzero_time();
            if (!t1)
                throw ScoringError("dataset has no non-zero time point to train against");
            times = {*t1};
        } else {
            for (double t : times)
                if (!std::binary_search(dataset_times.begin(), dataset_times.end(), t))
                    throw UsageError("requested time " + std::to_string(t) +
                                     " not present in the dataset");
        }

        signal_names = data.signal_names;
        for (const auto& s : signal_names) signal_nodes.push_back(net.index.at(s));

        for (std::size_t e = 0; e < data.n_experiments(); ++e) {
            Experiment exp;
            exp.name = data.experiment_names[e];
            exp.stim_value.assign(net.names.size(), 0);
            exp.inhibited.assign(net.names.size(), 0);
            const auto& row = data.experiments[e];
            for (std::size_t i = 0; i < data.stimuli_names.size(); ++i)
                exp.stim_value[static_cast<std::size_t>(net.index.at(data.stimuli_names[i]))] =
                    row[i] ? 1 : 0;
            for (std::size_t i = 0; i < data.inhibitor_names.size(); ++i)
                exp.inhibited[static_cast<std::size_t>(net.index.at(data.inhibitor_names[i]))] =
                    row[data.stimuli_names.size() + i] ? 1 : 0;
            exp.data.assign(times.size(), std::vector<std::optional<double>>(signal_names.size()));
            experiments.push_back(std::move(exp));
        }
        for (const auto& row : data.measurements) {
            auto it = std::find(times.begin(), times.end(), row.time);
            if (it == times.end()) continue;
            const std::size_t ti = static_cast<std::size_t>(it - times.begin());
            for (std::size_t k = 0; k < signal_names.size(); ++k)
                experiments[row.experiment].data[ti][k] = row.values[k];
        }

        // Whether a point is comparable depends on the data alone, so an
        // empty comparison set can be rejected up front.
        long present = 0;
        for (const auto& exp : experiments)
            for (const auto& per_time : exp.data)
                for (const auto& d : per_time)
                    if (d.has_value()) ++present;
        if (present == 0)
            throw ScoringError("no comparable data points at the requested times");

        for (const auto& rx : net.reactions) {
            weights.push_back(static_cast<double>(rx.lits.size()));
            total_weight += static_cast<double>(rx.lits.size());
        }
    }

    double size_term(const BitString& bits) const {
        if (total_weight == 0.0) return 0.0;
        double kept = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (bits.test(i)) kept += weights[i];
        return kept / total_weight;
    }

    ScoreBreakdown run(const BitString& bits, bool with_residuals) const {
        if (bits.size() != net.reactions.size())
            throw UsageError("bitstring length " + std::to_string(bits.size()) +
                             " does not match " + std::to_string(net.reactions.size()) +
                             " reactions");
        ScoreBreakdown out;
        out.alpha = options.alpha;
        out.theta_s = size_term(bits);

        const std::vector<std::uint8_t>& mask = bits.bits();
        double sum = 0.0;
        long n = 0, n_na = 0;
        for (const auto& exp : experiments) {
            const auto state =
                net.steady(mask, exp.stim_value, exp.inhibited, net.default_max_iter());
            for (std::size_t ti = 0; ti < times.size(); ++ti) {
                for (std::size_t k = 0; k < signal_names.size(); ++k) {
                    const auto& d = exp.data[ti][k];
                    const std::int8_t sim = state[static_cast<std::size_t>(signal_nodes[k])];
                    ResidualEntry entry;
                    if (with_residuals) {
                        entry.experiment = exp.name;
                        entry.signal = signal_names[k];
                        entry.time = times[ti];
                        entry.data = d;
                        entry.simulated = sim;
                    }
                    if (!d.has_value()) {
                        // Missing data: excluded from the sum and from N.
                    } else if (sim < 0) {
                        sum += options.na_fac;
                        ++n;
                        ++n_na;
                    } else {
                        const double r = *d - static_cast<double>(sim);
                        sum += r * r;
                        ++n;
                        if (with_residuals) entry.residual = r * r;
                    }
                    if (with_residuals) out.residuals.push_back(std::move(entry));
                }
            }
        }
        if (n == 0)
            throw ScoringError("no comparable data points (all values missing)");
        out.theta_f = sum / static_cast<double>(n);
        out.n_points = n;
        out.n_na = n_na;
        out.total = out.theta_f + out.alpha * out.theta_s;
        return out;
    }
};

Scorer::Scorer(const PknModel& m, const XMidas& data, ScoreOptions options)
    : impl_(std::make_unique<Impl>(m, data, std::move(options))) {}

Scorer::~Scorer() = default;
Scorer::Scorer(Scorer&&) noexcept = default;
Scorer& Scorer::operator=(Scorer&&) noexcept = default;

ScoreBreakdown Scorer::evaluate(const BitString& bits, bool with_residuals) const {
    return impl_->run(bits, with_residuals);
}

double Scorer::theta_s_of(const BitString& bits) const {
    return impl_->size_term(bits);
}

std::size_t Scorer::n_reactions() const {
    return impl_->net.reactions.size();
}

const std::vector<double>& Scorer::times() const {
    return impl_->times;
}

ScoreBreakdown score(const PknModel& m, const BitString& bits, const XMidas& data,
                     ScoreOptions options) {
    return Scorer(m, data, std::move(options)).evaluate(bits, true);
}

ScoreBreakdown theta_f(const PknModel& m, const BitString& bits, const XMidas& data,
                       std::vector<double> times) {
    ScoreOptions options;
    options.alpha = 0.0;
    options.times = std::move(times);
    return Scorer(m, data, std::move(options)).evaluate(bits, true);
}

double theta_s(const PknModel& m, const BitString& bits) {
    if (bits.size() != m.reactions().size())
        throw UsageError("bitstring length does not match the reaction count");
    double kept = 0.0, total = 0.0;
    for (std::size_t i = 0; i < m.reactions().size(); ++i) {
        const double w = static_cast<double>(m.reactions()[i].inputs().size());
        total += w;
        if (bits.test(i)) kept += w;
    }
    return total == 0.0 ? 0.0 : kept / total;
}

}  // namespace siglogic
