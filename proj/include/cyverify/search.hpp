#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyverify/ledger.hpp"
#include "cyverify/stability.hpp"

namespace cyv {

// Exhaustive scan for a polystable partner bundle with vanishing first class
// and a demanded second class.  Candidates come in three shapes: a pair of
// opposite line bundles, a rank-two extension of twisted ideal sheaves of
// curves, and the same extension padded by a trivial line.  Every candidate
// in the coefficient box is enumerated and either killed by a named screen or
// emitted as a survivor; survivors are only counted as settled when a
// stability certificate covers them.
struct SearchConfig {
    GeomPtr x, s;
    GradedClass target;      // demanded degree-four class
    GradedClass omega;       // polarization for the slope and positivity screens
    long long box = 3;       // coefficient box radius for divisor classes
    int rank_max = 2;        // 3 adds the spectator-line shape
    long long resume_from = 0;
    long long limit = 0;     // stop after this many candidates (0: no cap)
    std::string checkpoint;  // progress file ("" disables checkpointing)
    bool parallel = false;
};

struct Candidate {
    long long index = 0;
    std::string templ;              // line-pair | extension | extension-plus-line
    std::vector<long long> coeffs;  // divisor coefficients against the degree-2 basis
    std::string cls;                // printable curve class carried by the candidate
    bool survives = false;
    bool stable_certified = false;
    std::string screen;  // name of the gate that settled it
    std::string fate;    // readable explanation
    bool operator==(const Candidate& o) const {
        return index == o.index && templ == o.templ && coeffs == o.coeffs && cls == o.cls &&
               survives == o.survives && stable_certified == o.stable_certified &&
               screen == o.screen && fate == o.fate;
    }
};

struct SearchResult {
    long long total = 0;        // full enumeration cardinality
    long long first_index = 0;  // where this run started
    long long examined = 0;     // candidates evaluated in this run
    bool complete = false;      // the enumeration reached its end
    long long certified = 0;    // survivors carrying a stability certificate
    std::vector<Candidate> survivors;
    std::map<std::string, long long> kill_counts;
    std::string to_string() const;
};

// Plain-text progress file, written atomically (write then rename) so an
// interrupted run never leaves a half-written file behind.
struct Checkpoint {
    std::string fingerprint;
    long long next_index = 0;
    std::vector<long long> survivor_indices;
};

std::string config_fingerprint(const SearchConfig& cfg);
void save_checkpoint(const std::string& path, const Checkpoint& cp);
std::optional<Checkpoint> load_checkpoint(const std::string& path);

long long enumeration_size(const SearchConfig& cfg);
Candidate evaluate_candidate(const SearchConfig& cfg, long long index);
SearchResult run_search(const SearchConfig& cfg);

}  // namespace cyv
