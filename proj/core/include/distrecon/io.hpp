#pragma once

#include "distrecon/experiments.hpp"
#include "distrecon/perms.hpp"
#include "distrecon/recon.hpp"

#include <string>
#include <variant>

namespace distrecon {

enum class NumberMode { Auto, Exact, Float };

using ConfigVariant = std::variant<PointConfig<Rat>, PointConfig<double>>;

/// Loads a configuration from JSON ({"m": 2, "points": [[x, y], ...]}) or
/// CSV (one point per row, m columns), chosen by file extension (.json /
/// .csv; unknown extensions are sniffed). Auto mode selects exact
/// arithmetic when every coordinate is an integer or a quoted decimal
/// string; any bare JSON float forces float mode. Exact mode rejects bare
/// JSON floats (quote them instead).
ConfigVariant load_point_config(const std::string& path, NumberMode mode = NumberMode::Auto);

ConfigVariant parse_config_json_text(const std::string& text, NumberMode mode);
ConfigVariant parse_config_csv_text(const std::string& text, NumberMode mode);

bool is_exact(const ConfigVariant& cfg);
int config_dim(const ConfigVariant& cfg);
int config_count(const ConfigVariant& cfg);

// --- serialization (JSON / CSV text; exact values as fraction strings) ---

std::string report_to_json(const ReconReport& report);
std::string report_to_human(const ReconReport& report);

std::string compare_to_json(const CompareVerdict& verdict, CompareMode mode);
std::string compare_to_human(const CompareVerdict& verdict, CompareMode mode);

std::string multiset_to_json(const DistanceMultiset<Rat>& ms);
std::string multiset_to_json(const DistanceMultiset<double>& ms);
std::string multiset_to_csv(const DistanceMultiset<Rat>& ms, bool sqrt_values);
std::string multiset_to_csv(const DistanceMultiset<double>& ms, bool sqrt_values);
std::string multiset_to_human(const DistanceMultiset<Rat>& ms, bool sqrt_values);
std::string multiset_to_human(const DistanceMultiset<double>& ms, bool sqrt_values);

std::string lattice_report_to_json(const LatticeReport& report);
std::string lattice_report_to_csv(const LatticeReport& report);
std::string random_report_to_json(const RandomGReport& report);
std::string random_report_to_csv(const RandomGReport& report);
std::string count_table_to_json(const std::vector<CountRow>& rows);
std::string count_table_to_csv(const std::vector<CountRow>& rows);

/// 1-based [[source pair], [image pair]] assignment list.
std::string pair_permutation_to_json(const PairPermutation& phi);

}  // namespace distrecon
