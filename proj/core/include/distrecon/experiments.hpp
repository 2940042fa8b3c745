#pragma once

#include "distrecon/recon.hpp"

#include <cstdint>
#include <vector>

namespace distrecon {

/// Exhaustive 4-point census over the integer lattice [0,N]^2. A
/// configuration counts as failed when it has repeated distances or some
/// admissible tuple evaluates to exactly zero (repeated distances alone
/// already rule the test out, but do not always produce a vanishing
/// admissible tuple at n = 4 - both kinds are counted).
struct LatticeReport {
    int box = 0;  // N
    std::uint64_t total = 0;
    std::uint64_t repeated = 0;
    std::uint64_t failed = 0;               // |repeated OR g-zero|
    std::uint64_t nonrepeated_failed = 0;   // failed - repeated
    Rat nonrepeated_fail_pct;               // nonrepeated_failed / (total - repeated)
};

LatticeReport lattice_experiment(int box, int threads = 0);

/// Seeded float census: draws 4-point configurations with coordinates
/// uniform in (0,1) and counts those whose minimal |g| over all 576
/// admissible tuples drops below the threshold. The generator is
/// mt19937_64 with 53-bit mantissa scaling, so counts reproduce across
/// platforms for a fixed seed.
struct RandomGReport {
    std::uint64_t trials = 0;
    double threshold = 0.0;
    std::uint64_t below_threshold = 0;
    std::uint64_t seed = 0;
};

RandomGReport random_g_statistics(std::uint64_t trials, double threshold, std::uint64_t seed,
                                  int threads = 0);

struct CountRow {
    int n = 0;
    std::uint64_t combinations = 0;
    double seconds = -1.0;  // optional measured full-test wall time; < 0 when not measured
};

/// Closed-form combination counts for each n; with measure set, also runs
/// the exact test on a deterministic generic integer configuration of
/// that size and records the wall time (informational).
std::vector<CountRow> count_table(const std::vector<int>& ns, bool measure = false,
                                  int threads = 0);

}  // namespace distrecon
