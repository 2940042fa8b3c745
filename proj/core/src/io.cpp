#include "distrecon/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace distrecon {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

ConfigVariant from_rational_rows(int m, std::vector<Rat> flat, bool exact) {
    if (exact) return PointConfig<Rat>(m, std::move(flat));
    PointConfig<double> p;
    p.dim = m;
    p.coords.reserve(flat.size());
    for (const Rat& q : flat) p.coords.push_back(to_double(q));
    return p;
}

json rat_json(const Rat& q) { return json(rational_to_string(q)); }

json witness_json(const WitnessTuple& w, const std::optional<Rat>& g, double g_approx) {
    json pairs = json::array();
    for (const PairKey& k : w.slots) pairs.push_back({k.i + 1, k.j + 1});
    json j{{"i0", w.i0 + 1}, {"i1", w.i1 + 1}, {"i2", w.i2 + 1}, {"pairs", pairs}};
    if (g.has_value()) {
        j["g"] = rat_json(*g);
    } else {
        j["g"] = g_approx;
    }
    return j;
}

template <class S>
json multiset_json_impl(const std::vector<std::pair<S, int>>& entries, int total) {
    json rows = json::array();
    for (const auto& [value, mult] : entries) {
        json row;
        if constexpr (scalar_traits<S>::is_exact) {
            row["value"] = rational_to_string(value);
            row["value_approx"] = to_double(value);
        } else {
            row["value"] = value;
        }
        row["multiplicity"] = mult;
        rows.push_back(row);
    }
    return json{{"total", total}, {"entries", rows}};
}

template <class S>
std::string multiset_csv_impl(const std::vector<std::pair<S, int>>& entries, bool sqrt_values) {
    std::ostringstream out;
    out << (sqrt_values ? "distance" : "squared_distance") << ",multiplicity\n";
    for (const auto& [value, mult] : entries) {
        if constexpr (scalar_traits<S>::is_exact) {
            if (sqrt_values) {
                out << std::sqrt(to_double(value));
            } else {
                out << rational_to_string(value);
            }
        } else {
            out << (sqrt_values ? std::sqrt(value) : value);
        }
        out << ',' << mult << '\n';
    }
    return out.str();
}

template <class S>
std::string multiset_human_impl(const std::vector<std::pair<S, int>>& entries, bool sqrt_values) {
    std::ostringstream out;
    out << (sqrt_values ? "value" : "squared value") << "  # of occurrences\n";
    for (const auto& [value, mult] : entries) {
        if constexpr (scalar_traits<S>::is_exact) {
            if (sqrt_values) {
                out << std::sqrt(to_double(value));
            } else {
                out << rational_to_string(value);
            }
        } else {
            out << (sqrt_values ? std::sqrt(value) : value);
        }
        out << "  x" << mult << '\n';
    }
    return out.str();
}

}  // namespace

ConfigVariant parse_config_json_text(const std::string& text, NumberMode mode) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw invalid_input(std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("m") || !doc.contains("points")) {
        throw invalid_input("expected an object with \"m\" and \"points\"");
    }
    if (!doc["m"].is_number_integer()) throw invalid_input("\"m\" must be an integer");
    const int m = doc["m"].get<int>();
    if (m < 1) throw invalid_input("\"m\" must be positive");
    const json& pts = doc["points"];
    if (!pts.is_array() || pts.empty()) throw invalid_input("\"points\" must be a non-empty array");

    bool exact = mode != NumberMode::Float;
    std::vector<Rat> flat;
    for (const json& row : pts) {
        if (!row.is_array() || static_cast<int>(row.size()) != m) {
            throw invalid_input("every point needs exactly m coordinates");
        }
        for (const json& c : row) {
            if (c.is_number_integer()) {
                flat.emplace_back(static_cast<long>(c.get<std::int64_t>()));
            } else if (c.is_string()) {
                flat.push_back(parse_rational(c.get<std::string>()));
            } else if (c.is_number_float()) {
                if (mode == NumberMode::Exact) {
                    throw invalid_input(
                        "exact mode: quote decimal coordinates as strings (e.g. \"0.5\")");
                }
                exact = false;
                // Every double is a rational; keep it losslessly for now.
                flat.push_back(Rat(c.get<double>()));
            } else {
                throw invalid_input("coordinates must be numbers or numeric strings");
            }
        }
    }
    return from_rational_rows(m, std::move(flat), exact);
}

ConfigVariant parse_config_csv_text(const std::string& text, NumberMode mode) {
    std::vector<Rat> flat;
    int m = -1;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv(line);
        while (!sv.empty() && std::isspace(static_cast<unsigned char>(sv.front()))) sv.remove_prefix(1);
        if (sv.empty() || sv.front() == '#') continue;
        std::vector<Rat> row;
        size_t start = 0;
        const std::string s(sv);
        while (start <= s.size()) {
            size_t comma = s.find(',', start);
            const std::string field =
                comma == std::string::npos ? s.substr(start) : s.substr(start, comma - start);
            row.push_back(parse_rational(field));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (m < 0) {
            m = static_cast<int>(row.size());
        } else if (static_cast<int>(row.size()) != m) {
            throw invalid_input("CSV rows have inconsistent column counts");
        }
        flat.insert(flat.end(), row.begin(), row.end());
    }
    if (m <= 0 || flat.empty()) throw invalid_input("CSV file contains no points");
    return from_rational_rows(m, std::move(flat), mode != NumberMode::Float);
}

ConfigVariant load_point_config(const std::string& path, NumberMode mode) {
    const std::string text = read_file(path);
    const std::string name = lower(path);
    if (ends_with(name, ".json")) return parse_config_json_text(text, mode);
    if (ends_with(name, ".csv")) return parse_config_csv_text(text, mode);
    // Sniff: JSON starts with '{'.
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{' ? parse_config_json_text(text, mode) : parse_config_csv_text(text, mode);
    }
    throw invalid_input("empty input file '" + path + "'");
}

bool is_exact(const ConfigVariant& cfg) { return std::holds_alternative<PointConfig<Rat>>(cfg); }

int config_dim(const ConfigVariant& cfg) {
    return std::visit([](const auto& p) { return p.dim; }, cfg);
}

int config_count(const ConfigVariant& cfg) {
    return std::visit([](const auto& p) { return p.count(); }, cfg);
}

std::string report_to_json(const ReconReport& report) {
    json j;
    j["verdict"] = verdict_name(report.verdict);
    j["n"] = report.n;
    j["dim"] = report.dim;
    j["mode"] = report.exact ? "exact" : "float";
    if (report.exact) {
        j["epsilon"] = nullptr;
    } else {
        j["epsilon"] = report.epsilon;
        j["threshold"] = report.threshold;
    }
    j["certified"] = report.certified;
    j["repeated_distances"] = report.repeated_distances;
    if (report.witness.has_value()) {
        j["witness"] = witness_json(*report.witness, report.witness_g, report.witness_g_approx);
    } else {
        j["witness"] = nullptr;
    }
    if (report.min_abs_g.has_value()) j["min_abs_g"] = rat_json(*report.min_abs_g);
    j["min_abs_g_approx"] = report.min_abs_g_approx;
    j["combos_checked"] = report.combos_checked;
    j["combos_total"] = report.combos_total;
    j["elapsed_seconds"] = report.elapsed_seconds;
    if (!report.note.empty()) j["note"] = report.note;
    return j.dump(2);
}

std::string report_to_human(const ReconReport& report) {
    std::ostringstream out;
    out << "verdict: " << verdict_name(report.verdict) << " (" << (report.exact ? "exact" : "float")
        << " mode, n=" << report.n << ", m=" << report.dim << ")\n";
    if (!report.exact) {
        out << "epsilon: " << report.epsilon << " (effective threshold " << report.threshold
            << ")\n";
    }
    if (report.witness.has_value()) {
        const WitnessTuple& w = *report.witness;
        out << "witness: i0=" << w.i0 + 1 << " i1=" << w.i1 + 1 << " i2=" << w.i2 + 1 << " pairs";
        for (const PairKey& k : w.slots) out << " {" << k.i + 1 << "," << k.j + 1 << "}";
        if (report.witness_g.has_value()) {
            out << "  g = " << rational_to_string(*report.witness_g);
        } else {
            out << "  g = " << report.witness_g_approx;
        }
        out << '\n';
    }
    if (report.min_abs_g.has_value()) {
        out << "min |g|: " << rational_to_string(*report.min_abs_g) << '\n';
    } else if (report.verdict != Verdict::NotApplicable) {
        out << "min |g|: " << report.min_abs_g_approx << '\n';
    }
    out << "combinations checked: " << report.combos_checked << " of " << report.combos_total
        << '\n';
    if (report.repeated_distances) out << "repeated distances: yes\n";
    if (report.verdict == Verdict::PassesTest) {
        out << "certified reconstructible: " << (report.certified ? "yes" : "no") << '\n';
    }
    if (!report.note.empty()) out << "note: " << report.note << '\n';
    out << "elapsed: " << report.elapsed_seconds << " s\n";
    return out.str();
}

std::string compare_to_json(const CompareVerdict& verdict, CompareMode mode) {
    json j;
    j["mode"] = mode == CompareMode::Rigid ? "rigid"
               : mode == CompareMode::Orientation ? "orientation"
                                                  : "similarity";
    j["distribution_match"] = verdict.distribution_match;
    j["orientation"] = orientation_name(verdict.orientation);
    if (verdict.similarity_match.has_value()) {
        j["similarity_match"] = *verdict.similarity_match;
    } else {
        j["similarity_match"] = nullptr;
    }
    return j.dump(2);
}

std::string compare_to_human(const CompareVerdict& verdict, CompareMode mode) {
    std::ostringstream out;
    out << "distance distributions match: " << (verdict.distribution_match ? "yes" : "no") << '\n';
    if (mode == CompareMode::Orientation) {
        out << "orientation: " << orientation_name(verdict.orientation) << '\n';
    }
    if (verdict.similarity_match.has_value()) {
        out << "rescaled distributions match: " << (*verdict.similarity_match ? "yes" : "no")
            << '\n';
    }
    return out.str();
}

std::string multiset_to_json(const DistanceMultiset<Rat>& ms) {
    return multiset_json_impl(ms.entries, ms.total).dump(2);
}
std::string multiset_to_json(const DistanceMultiset<double>& ms) {
    return multiset_json_impl(ms.entries, ms.total).dump(2);
}
std::string multiset_to_csv(const DistanceMultiset<Rat>& ms, bool sqrt_values) {
    return multiset_csv_impl(ms.entries, sqrt_values);
}
std::string multiset_to_csv(const DistanceMultiset<double>& ms, bool sqrt_values) {
    return multiset_csv_impl(ms.entries, sqrt_values);
}
std::string multiset_to_human(const DistanceMultiset<Rat>& ms, bool sqrt_values) {
    return multiset_human_impl(ms.entries, sqrt_values);
}
std::string multiset_to_human(const DistanceMultiset<double>& ms, bool sqrt_values) {
    return multiset_human_impl(ms.entries, sqrt_values);
}

std::string lattice_report_to_json(const LatticeReport& report) {
    json j;
    j["N"] = report.box;
    j["total_configs"] = report.total;
    j["repeated_distance_count"] = report.repeated;
    j["fail_count"] = report.failed;
    j["nonrepeated_fail_count"] = report.nonrepeated_failed;
    j["nonrepeated_fail_pct"] = rational_to_string(report.nonrepeated_fail_pct);
    j["nonrepeated_fail_pct_approx"] = to_double(report.nonrepeated_fail_pct);
    return j.dump(2);
}

std::string lattice_report_to_csv(const LatticeReport& report) {
    std::ostringstream out;
    out << "N,total_configs,repeated_distance_count,fail_count,nonrepeated_fail_pct\n";
    out << report.box << ',' << report.total << ',' << report.repeated << ',' << report.failed
        << ',' << to_double(report.nonrepeated_fail_pct) << '\n';
    return out.str();
}

std::string random_report_to_json(const RandomGReport& report) {
    json j;
    j["trials"] = report.trials;
    j["threshold"] = report.threshold;
    j["below_threshold_count"] = report.below_threshold;
    j["seed"] = report.seed;
    return j.dump(2);
}

std::string random_report_to_csv(const RandomGReport& report) {
    std::ostringstream out;
    out << "trials,threshold,below_threshold_count,seed\n";
    out << report.trials << ',' << report.threshold << ',' << report.below_threshold << ','
        << report.seed << '\n';
    return out.str();
}

std::string count_table_to_json(const std::vector<CountRow>& rows) {
    json arr = json::array();
    for (const CountRow& row : rows) {
        json j{{"n", row.n}, {"combinations", row.combinations}};
        if (row.seconds >= 0) j["seconds"] = row.seconds;
        arr.push_back(j);
    }
    return arr.dump(2);
}

std::string count_table_to_csv(const std::vector<CountRow>& rows) {
    bool timed = false;
    for (const CountRow& row : rows) timed = timed || row.seconds >= 0;
    std::ostringstream out;
    out << (timed ? "n,combinations,seconds\n" : "n,combinations\n");
    for (const CountRow& row : rows) {
        out << row.n << ',' << row.combinations;
        if (timed) out << ',' << (row.seconds >= 0 ? row.seconds : 0.0);
        out << '\n';
    }
    return out.str();
}

std::string pair_permutation_to_json(const PairPermutation& phi) {
    const PairTable table(phi.n);
    json arr = json::array();
    for (int id = 0; id < table.count(); ++id) {
        const PairKey src = table.key(id);
        const PairKey dst = table.key(phi.image[id]);
        arr.push_back({{src.i + 1, src.j + 1}, {dst.i + 1, dst.j + 1}});
    }
    return arr.dump();
}

}  // namespace distrecon
