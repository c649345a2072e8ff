#include "siglogic/midas.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "siglogic/errors.hpp"

namespace siglogic {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "NaN" || cell == "nan";
}

double parse_number(const std::string& cell, std::size_t line, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw FormatError("cannot parse " + what + " value '" + cell + "'", line);
    }
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Column {
    enum class Kind { cell_line, stimulus, inhibitor, time_all, time_for, value };
    Kind kind;
    std::string name;
    std::size_t index;
};

}  // namespace

std::size_t XMidas::experiment_index(const std::string& name) const {
    auto it = std::find(experiment_names.begin(), experiment_names.end(), name);
    if (it == experiment_names.end())
        throw LookupError("unknown experiment '" + name + "'");
    return static_cast<std::size_t>(it - experiment_names.begin());
}

std::size_t XMidas::signal_index(const std::string& protein) const {
    auto it = std::find(signal_names.begin(), signal_names.end(), protein);
    if (it == signal_names.end())
        throw LookupError("unknown signal '" + protein + "'");
    return static_cast<std::size_t>(it - signal_names.begin());
}

std::vector<double> XMidas::times() const {
    std::vector<double> ts;
    for (const auto& row : measurements) ts.push_back(row.time);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

std::optional<double> XMidas::first_nonzero_time() const {
    for (double t : times())
        if (t > 0.0) return t;
    return std::nullopt;
}

ExperimentCondition condition_of(const XMidas& data, const std::string& experiment) {
    const std::size_t e = data.experiment_index(experiment);
    ExperimentCondition cond;
    const auto& row = data.experiments[e];
    for (std::size_t i = 0; i < data.stimuli_names.size(); ++i)
        cond.stimuli[data.stimuli_names[i]] = row[i];
    for (std::size_t i = 0; i < data.inhibitor_names.size(); ++i)
        if (row[data.stimuli_names.size() + i] != 0)
            cond.inhibited.insert(data.inhibitor_names[i]);
    return cond;
}

std::vector<std::pair<double, std::optional<double>>> timecourse(
    const XMidas& data, const std::string& experiment, const std::string& protein) {
    const std::size_t e = data.experiment_index(experiment);
    const std::size_t k = data.signal_index(protein);
    std::vector<std::pair<double, std::optional<double>>> out;
    for (const auto& row : data.measurements)
        if (row.experiment == e) out.emplace_back(row.time, row.values[k]);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

namespace {

// Shared by the reader and the builder: accumulate (condition, protein,
// time, value) tuples into the two-table layout.
class Assembler {
public:
    Assembler(std::vector<std::string> stimuli, std::vector<std::string> inhibitors,
              std::vector<std::string> signals)
        : stimuli_(std::move(stimuli)),
          inhibitors_(std::move(inhibitors)),
          signals_(std::move(signals)) {}

    std::size_t experiment_for(const std::vector<int>& treatment) {
        auto it = condition_index_.find(treatment);
        if (it != condition_index_.end()) return it->second;
        std::size_t idx = experiments_.size();
        condition_index_.emplace(treatment, idx);
        experiments_.push_back(treatment);
        return idx;
    }

    void set_value(std::size_t experiment, double time, std::size_t signal,
                   std::optional<double> value, std::vector<std::string>& warnings) {
        auto key = std::make_pair(experiment, time);
        auto [it, inserted] = cells_.try_emplace(key,
                                                 std::vector<std::optional<double>>(signals_.size()));
        auto& slot = it->second[signal];
        if (!inserted && slot.has_value() && value.has_value())
            warnings.push_back("duplicate measurement for " + signals_[signal] +
                               " at time " + format_number(time) +
                               " (experiment " + std::to_string(experiment) +
                               "), keeping the last one");
        if (value.has_value() || !slot.has_value()) slot = value;
    }

    XMidas finish(std::string cell_line, std::vector<std::string> warnings) {
        // Guarantee a baseline row at time 0 for every experiment.
        for (std::size_t e = 0; e < experiments_.size(); ++e)
            cells_.try_emplace(std::make_pair(e, 0.0),
                               std::vector<std::optional<double>>(signals_.size()));
        XMidas data;
        data.cell_line = std::move(cell_line);
        data.stimuli_names = stimuli_;
        data.inhibitor_names = inhibitors_;
        data.signal_names = signals_;
        data.experiments = experiments_;
        for (std::size_t e = 0; e < experiments_.size(); ++e)
            data.experiment_names.push_back("experiment_" + std::to_string(e));
        for (auto& [key, values] : cells_)
            data.measurements.push_back({key.first, key.second, std::move(values)});
        std::sort(data.measurements.begin(), data.measurements.end(),
                  [](const XMidas::Row& a, const XMidas::Row& b) {
                      return std::tie(a.experiment, a.time) < std::tie(b.experiment, b.time);
                  });
        data.warnings = std::move(warnings);
        return data;
    }

private:
    std::vector<std::string> stimuli_, inhibitors_, signals_;
    std::map<std::vector<int>, std::size_t> condition_index_;
    std::vector<std::vector<int>> experiments_;
    std::map<std::pair<std::size_t, double>, std::vector<std::optional<double>>> cells_;
};

void warn_if_out_of_range(double v, std::vector<std::string>& warnings,
                          const std::string& context) {
    if (v < 0.0 || v > 1.0)
        warnings.push_back("value " + format_number(v) + " outside [0,1] " + context);
}

}  // namespace

XMidas read_midas(std::istream& stream) {
    std::string header_line;
    if (!std::getline(stream, header_line))
        throw FormatError("missing header row", 1);
    const auto header = split_csv(header_line);

    std::vector<Column> columns;
    std::vector<std::size_t> cell_line_cols;
    std::string cell_line = "Cell";
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string& h = header[i];
        if (h.empty()) continue;
        if (h.rfind("TR:", 0) == 0) {
            std::string rest = h.substr(3);
            if (ends_with(rest, "CellLine")) {
                std::string name = rest.substr(0, rest.size() - 8);
                if (ends_with(name, ":")) name.pop_back();
                columns.push_back({Column::Kind::cell_line, name, i});
                cell_line_cols.push_back(columns.size() - 1);
            } else if (ends_with(rest, ":i")) {
                columns.push_back({Column::Kind::inhibitor, rest.substr(0, rest.size() - 2), i});
            } else if (ends_with(rest, "i") && rest.size() > 1) {
                columns.push_back({Column::Kind::inhibitor, rest.substr(0, rest.size() - 1), i});
            } else {
                columns.push_back({Column::Kind::stimulus, rest, i});
            }
            if (columns.back().kind != Column::Kind::cell_line && columns.back().name.empty())
                throw FormatError("empty treatment name in column '" + h + "'", 1);
        } else if (h == "DA:ALL") {
            columns.push_back({Column::Kind::time_all, "", i});
        } else if (h.rfind("DA:", 0) == 0) {
            columns.push_back({Column::Kind::time_for, h.substr(3), i});
        } else if (h.rfind("DV:", 0) == 0) {
            std::string name = h.substr(3);
            if (name.empty()) throw FormatError("empty signal name in column '" + h + "'", 1);
            columns.push_back({Column::Kind::value, name, i});
        } else {
            throw FormatError("unknown column prefix in '" + h + "'", 1);
        }
    }

    std::vector<std::string> stimuli, inhibitors, signals;
    bool has_time_all = false;
    std::set<std::string> time_for;
    for (const auto& c : columns) {
        switch (c.kind) {
            case Column::Kind::stimulus: stimuli.push_back(c.name); break;
            case Column::Kind::inhibitor: inhibitors.push_back(c.name); break;
            case Column::Kind::value: signals.push_back(c.name); break;
            case Column::Kind::time_all: has_time_all = true; break;
            case Column::Kind::time_for: time_for.insert(c.name); break;
            case Column::Kind::cell_line: break;
        }
    }
    for (const auto& s : signals)
        if (!has_time_all && time_for.find(s) == time_for.end())
            throw FormatError("column DV:" + s + " has no matching DA column", 1);
    auto check_dup = [](std::vector<std::string> names, const std::string& what) {
        std::sort(names.begin(), names.end());
        auto it = std::adjacent_find(names.begin(), names.end());
        if (it != names.end())
            throw FormatError("duplicate " + what + " column '" + *it + "'", 1);
    };
    check_dup(stimuli, "stimulus");
    check_dup(inhibitors, "inhibitor");
    check_dup(signals, "signal");
    {
        std::vector<std::string> time_cols;
        for (const auto& c : columns) {
            if (c.kind == Column::Kind::time_all) time_cols.push_back("ALL");
            if (c.kind == Column::Kind::time_for) time_cols.push_back(c.name);
        }
        check_dup(std::move(time_cols), "acquisition time");
    }

    Assembler acc(stimuli, inhibitors, signals);
    std::vector<std::string> warnings;
    std::optional<std::size_t> chosen_cell_col;

    std::string line;
    std::size_t lineno = 1;
    while (std::getline(stream, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw FormatError("row has " + std::to_string(cells.size()) + " fields, header has " +
                              std::to_string(header.size()), lineno);

        if (cell_line_cols.size() > 1) {
            std::optional<std::size_t> on;
            for (std::size_t ci : cell_line_cols) {
                const auto& cell = cells[columns[ci].index];
                if (cell == "1") {
                    if (on) throw FormatError("multiple CellLine columns set in one row", lineno);
                    on = ci;
                }
            }
            if (!on) throw FormatError("no CellLine column set in row", lineno);
            if (chosen_cell_col && *chosen_cell_col != *on)
                throw FormatError("rows disagree on the CellLine column", lineno);
            chosen_cell_col = on;
        }

        std::vector<int> treatment;
        for (const auto& c : columns) {
            if (c.kind != Column::Kind::stimulus && c.kind != Column::Kind::inhibitor) continue;
            const std::string& cell = cells[c.index];
            if (cell != "0" && cell != "1")
                throw FormatError("treatment column '" + header[c.index] +
                                  "' must be 0 or 1, got '" + cell + "'", lineno);
            treatment.push_back(cell == "1" ? 1 : 0);
        }
        const std::size_t experiment = acc.experiment_for(treatment);

        std::optional<double> shared_time;
        std::map<std::string, double> specific_time;
        for (const auto& c : columns) {
            if (c.kind == Column::Kind::time_all && !is_missing(cells[c.index]))
                shared_time = parse_number(cells[c.index], lineno, "time");
            if (c.kind == Column::Kind::time_for && !is_missing(cells[c.index]))
                specific_time[c.name] = parse_number(cells[c.index], lineno, "time");
        }
        for (const auto& [name, t] : specific_time)
            if (t < 0) throw FormatError("negative time " + format_number(t), lineno);
        if (shared_time && *shared_time < 0)
            throw FormatError("negative time " + format_number(*shared_time), lineno);

        std::size_t signal_idx = 0;
        for (const auto& c : columns) {
            if (c.kind != Column::Kind::value) continue;
            const std::size_t k = signal_idx++;
            std::optional<double> t;
            auto it = specific_time.find(c.name);
            if (it != specific_time.end())
                t = it->second;
            else if (shared_time)
                t = shared_time;
            const std::string& cell = cells[c.index];
            if (!t) {
                if (!is_missing(cell))
                    warnings.push_back("row " + std::to_string(lineno) + ": value for " + c.name +
                                       " has no acquisition time, skipped");
                continue;
            }
            if (is_missing(cell)) {
                acc.set_value(experiment, *t, k, std::nullopt, warnings);
            } else {
                double v = parse_number(cell, lineno, "measurement");
                warn_if_out_of_range(v, warnings, "(row " + std::to_string(lineno) + ", " + c.name + ")");
                acc.set_value(experiment, *t, k, v, warnings);
            }
        }
    }

    if (cell_line_cols.size() == 1) {
        const std::string& name = columns[cell_line_cols[0]].name;
        if (!name.empty()) cell_line = name;
    } else if (cell_line_cols.size() > 1 && chosen_cell_col) {
        const std::string& name = columns[*chosen_cell_col].name;
        if (!name.empty()) cell_line = name;
    }
    return acc.finish(cell_line, std::move(warnings));
}

XMidas read_midas_string(const std::string& content) {
    std::istringstream in(content);
    return read_midas(in);
}

XMidas read_midas_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_midas(in);
}

void MidasBuilder::add_measurement(const Measurement& m) {
    auto check_name = [](const std::string& name, const char* what) {
        if (name.empty())
            throw UsageError(std::string("measurement with an empty ") + what + " name");
        if (name.find(',') != std::string::npos)
            throw UsageError(std::string(what) + " name '" + name +
                             "' contains a comma, which the CSV dialect cannot carry");
    };
    check_name(m.protein, "protein");
    for (const auto& [name, _] : m.stimuli) {
        check_name(name, "stimulus");
        if (m.inhibitors.count(name))
            throw UsageError("'" + name + "' listed as both stimulus and inhibitor");
    }
    for (const auto& [name, _] : m.inhibitors) check_name(name, "inhibitor");
    if (!std::isfinite(m.time) || m.time < 0)
        throw UsageError("measurement time must be finite and non-negative");
    if (!std::isfinite(m.value)) throw UsageError("measurement value must be finite");
    measurements_.push_back(m);
}

XMidas MidasBuilder::build() const {
    std::vector<std::string> stimuli, inhibitors, signals;
    auto note = [](std::vector<std::string>& list, const std::string& name) {
        if (std::find(list.begin(), list.end(), name) == list.end()) list.push_back(name);
    };
    for (const auto& m : measurements_) {
        for (const auto& [name, _] : m.stimuli) note(stimuli, name);
        for (const auto& [name, _] : m.inhibitors) note(inhibitors, name);
        note(signals, m.protein);
    }

    Assembler acc(stimuli, inhibitors, signals);
    std::vector<std::string> warnings;
    for (const auto& m : measurements_) {
        std::vector<int> treatment;
        for (const auto& s : stimuli) {
            auto it = m.stimuli.find(s);
            treatment.push_back(it == m.stimuli.end() ? 0 : (it->second ? 1 : 0));
        }
        for (const auto& s : inhibitors) {
            auto it = m.inhibitors.find(s);
            treatment.push_back(it == m.inhibitors.end() ? 0 : (it->second ? 1 : 0));
        }
        const std::size_t e = acc.experiment_for(treatment);
        const std::size_t k =
            static_cast<std::size_t>(std::find(signals.begin(), signals.end(), m.protein) -
                                     signals.begin());
        warn_if_out_of_range(m.value, warnings, "(" + m.protein + ")");
        acc.set_value(e, m.time, k, m.value, warnings);
    }
    return acc.finish("Cell", std::move(warnings));
}

std::string write_midas(const XMidas& data) {
    std::vector<std::string> stimuli = data.stimuli_names;
    std::vector<std::string> inhibitors = data.inhibitor_names;
    std::vector<std::string> signals = data.signal_names;
    std::sort(stimuli.begin(), stimuli.end());
    std::sort(inhibitors.begin(), inhibitors.end());
    std::sort(signals.begin(), signals.end());

    auto stim_col = [&](const std::string& name) {
        return std::find(data.stimuli_names.begin(), data.stimuli_names.end(), name) -
               data.stimuli_names.begin();
    };
    auto inhib_col = [&](const std::string& name) {
        return static_cast<std::ptrdiff_t>(data.stimuli_names.size()) +
               (std::find(data.inhibitor_names.begin(), data.inhibitor_names.end(), name) -
                data.inhibitor_names.begin());
    };

    std::string out = "TR:" + data.cell_line + ":CellLine";
    for (const auto& s : stimuli) out += ",TR:" + s;
    for (const auto& s : inhibitors) out += ",TR:" + s + "i";
    out += ",DA:ALL";
    for (const auto& s : signals) out += ",DV:" + s;
    out += '\n';

    for (const auto& row : data.measurements) {
        const auto& treatment = data.experiments[row.experiment];
        out += '1';
        for (const auto& s : stimuli) out += ',' + std::to_string(treatment[stim_col(s)]);
        for (const auto& s : inhibitors) out += ',' + std::to_string(treatment[inhib_col(s)]);
        out += ',' + format_number(row.time);
        for (const auto& s : signals) {
            const auto& v = row.values[data.signal_index(s)];
            out += ',';
            out += v ? format_number(*v) : "NA";
        }
        out += '\n';
    }
    return out;
}

}  // namespace siglogic
