#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypervec/codebook.hpp"
#include "hypervec/encoder.hpp"
#include "hypervec/hypervector.hpp"

namespace hypervec {

/// One scored vertex pair. `score` averages the two unbind directions
/// (p_i^-1 (x) g scored against p_j and vice versa), which halves the query
/// noise variance; `raw_cosine` is the matching cosine-similarity form.
struct EdgeScore {
    int i = 0;
    int j = 0;
    double score = 0.0;
    double raw_cosine = 0.0;
    bool accepted = false;
};

struct SizeRecovery {
    int n = 0;
    /// Top-two cosine gap below 0.1.
    bool low_confidence = false;
    double best_cosine = -1.0;
    double second_cosine = -1.0;
};

struct DecodingReport {
    int recovered_n = 0;
    bool size_low_confidence = false;
    /// All scored pairs (i < j <= recovered_n), sorted by (i, j).
    std::vector<EdgeScore> edge_scores;
    std::vector<std::pair<int, int>> accepted_edges;
    double threshold_used = 0.0;
    /// Index 0: the size-vector inverse; index i: the p_i inverse. A set
    /// flag means a spectral magnitude hit the reciprocal floor (never
    /// happens with a unitary codebook).
    std::vector<bool> clamping_flags;
};

struct HyperedgeRecovery {
    std::vector<int> members;
    /// Set when no score clears the threshold (empty member set).
    bool low_confidence = false;
    /// Score of vertex j at scores[j-1], for j <= recovered_n.
    std::vector<double> scores;
    int recovered_n = 0;
};

/// Per-(n, trial) raw measurements of a capacity sweep.
struct CapacityRecord {
    int n = 0;
    std::size_t d = 0;
    int trial = 0;
    double min_correct_cs = 0.0;
    double mean_correct_cs = 0.0;
    double max_wrong_cs = 0.0;
};

/// Per-n aggregate over all pairs and trials. `separation` is the figure-level
/// verdict: the mean correct cosine stays above the largest wrong cosine seen
/// anywhere at this n. The extreme order statistics (min_correct_cs,
/// max_wrong_cs) are reported alongside for inspection.
struct CapacityPerN {
    int n = 0;
    std::size_t d = 0;
    double min_correct_cs = 0.0;
    double mean_correct_cs = 0.0;
    double max_wrong_cs = 0.0;
    bool separation = false;
};

struct CapacityResult {
    std::vector<CapacityRecord> records;  // sorted by (n, trial)
    std::vector<CapacityPerN> per_n;      // sorted by n
};

/// Directional edge query: p_j^T (p_i^-1 (x) g) / ||p_j||^2. Scores of
/// present edges concentrate near 1; absent pairs near 0. Requires a mode
/// with edge slots (graph, attributed, neighborhood).
double edge_score(const Embedding& emb, int i, int j, const Codebook& cb);

/// argmax over i in 1..n_max of cosine(p_i, s^-1 (x) g). Flags low
/// confidence when the top-two gap is under 0.1. Valid for every mode that
/// carries a size term (all but kv_bundle).
SizeRecovery recover_size(const Embedding& emb, const Codebook& cb);

/// Closed-world attribute query at vertex i: argmax over candidate keys of
/// a^T (p_i^-1 (x) g) / ||a||^2.
std::string recover_attribute(const Embedding& emb, int i, const Codebook& cb,
                              const std::vector<std::string>& candidates);

/// Full reconstruction: recover n from the size term, then score only pairs
/// (i, j) with i < j <= recovered_n. Restricting the scan to the recovered
/// vertex range is what keeps noise on out-of-range pairs from ever becoming
/// phantom edges. `threshold` nullopt selects the auto rule: split the
/// sorted score list at its largest gap when that gap is at least 0.2,
/// otherwise fall back to 0.5 (handles all-edge and no-edge score lists).
DecodingReport reconstruct_graph(const Embedding& emb, const Codebook& cb,
                                 std::optional<double> threshold = std::nullopt);

/// Diagnostic variant with the vertex-range safeguard disabled: scores every
/// pair (i, j) with i < j <= scan_n regardless of the recovered size. At low
/// dimension this accepts phantom edges beyond the true vertex set, which is
/// precisely the failure the safeguarded path is designed to exclude.
DecodingReport reconstruct_graph_unsafe(const Embedding& emb, const Codebook& cb, int scan_n,
                                        double threshold = 0.5);

/// Unbind hyperedge slot e_k and score every node vector p_j with
/// j <= recovered_n; vertices scoring at least `threshold` are members.
HyperedgeRecovery recover_hyperedge_members(const Embedding& emb, std::size_t edge_index,
                                            const Codebook& cb, double threshold = 0.5);

/// v~ = k^-1 (x) u.
HyperVector unbind_value(const HyperVector& u, const HyperVector& k);

/// Key-value capacity experiment. For each n: sample n fresh (key, value)
/// pairs per trial from the (seed, n, trial) substream, bundle them, unbind
/// every key, and record the correct-value cosine and the largest
/// wrong-value cosine. Trials run in parallel; results land in preassigned
/// slots, so output is independent of scheduling.
CapacityResult capacity_sweep(std::size_t d, const std::vector<int>& n_values, int trials,
                              std::uint64_t seed, bool unitary = true);

/// CSV: "n,d,trial,min_correct_cs,max_wrong_cs,separation" with one row per
/// (n, trial); the separation column repeats the per-n verdict.
void write_capacity_csv(const CapacityResult& result, const std::string& path);

/// CSV: "i,j,score,accepted" with one row per scored pair.
void write_reconstruction_csv(const DecodingReport& report, const std::string& path);

}  // namespace hypervec
