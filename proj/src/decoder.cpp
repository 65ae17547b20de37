#include "hypervec/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "hypervec/errors.hpp"
#include "hypervec/rng.hpp"

namespace hypervec {

namespace {

constexpr double kDefaultThreshold = 0.5;
constexpr double kAutoGapFloor = 0.2;
constexpr double kLowConfidenceGap = 0.1;
constexpr double kInverseFloor = 1e-8;

void check_compatible(const Embedding& emb, const Codebook& cb) {
    if (emb.d != cb.dim())
        throw validation_error("embedding dimension " + std::to_string(emb.d) +
                               " does not match codebook dimension " + std::to_string(cb.dim()));
    if (emb.codebook_fingerprint != cb.fingerprint())
        throw validation_error("embedding was produced with a different codebook "
                               "(fingerprint mismatch)");
}

void check_edge_mode(const Embedding& emb, const char* what) {
    if (emb.mode != EncodingMode::graph && emb.mode != EncodingMode::attributed &&
        emb.mode != EncodingMode::neighborhood)
        throw validation_error(std::string(what) + ": embedding mode '" + mode_name(emb.mode) +
                               "' has no pairwise edge slots");
}

double hoisted_cosine(const HyperVector& u, double u_norm, const HyperVector& p) {
    double d = 0.0, pn = 0.0;
    for (std::size_t k = 0; k < u.v.size(); ++k) {
        d += u.v[k] * p.v[k];
        pn += p.v[k] * p.v[k];
    }
    if (pn == 0.0 || u_norm == 0.0) throw validation_error("cosine of zero vector");
    return std::clamp(d / (u_norm * std::sqrt(pn)), -1.0, 1.0);
}

/// u_i = p_i^-1 (x) g for i in 1..n, plus the per-inverse clamp flags
/// (slot 0 is reserved for the size inverse and left unset here).
struct UnbindSet {
    std::vector<HyperVector> u;          // index i-1
    std::vector<bool> clamping_flags;    // index 0 unused, i for p_i
};

UnbindSet unbind_all_nodes(const Spectrum& g_spec, const Codebook& cb, int n) {
    UnbindSet set;
    set.u.resize(n);
    std::vector<char> clamped(n + 1, 0);
#pragma omp parallel for schedule(static)
    for (int i = 1; i <= n; ++i) {
        bool c = false;
        Spectrum rec = spectral_reciprocal(cb.node_spectrum(i), kInverseFloor, &c);
        set.u[i - 1] = from_spectrum(spectral_multiply(rec, g_spec));
        clamped[i] = c ? 1 : 0;
    }
    set.clamping_flags.assign(n + 1, false);
    for (int i = 1; i <= n; ++i) set.clamping_flags[i] = clamped[i] != 0;
    return set;
}

double pick_threshold(std::vector<double> scores, std::optional<double> requested) {
    if (requested) return *requested;
    if (scores.size() < 2) return kDefaultThreshold;
    std::sort(scores.begin(), scores.end());
    double best_gap = 0.0, cut = kDefaultThreshold;
    for (std::size_t k = 1; k < scores.size(); ++k) {
        double gap = scores[k] - scores[k - 1];
        if (gap > best_gap) {
            best_gap = gap;
            cut = 0.5 * (scores[k] + scores[k - 1]);
        }
    }
    return best_gap >= kAutoGapFloor ? cut : kDefaultThreshold;
}

DecodingReport score_pairs(const Embedding& emb, const Codebook& cb, int scan_n,
                           std::optional<double> threshold, const SizeRecovery& size) {
    DecodingReport report;
    report.recovered_n = size.n;
    report.size_low_confidence = size.low_confidence;

    Spectrum g_spec = rfft(emb.vec.v);
    UnbindSet set = unbind_all_nodes(g_spec, cb, scan_n);
    report.clamping_flags = set.clamping_flags;

    std::vector<double> u_norms(scan_n), p_norm_sq(scan_n);
    for (int i = 1; i <= scan_n; ++i) {
        u_norms[i - 1] = norm(set.u[i - 1]);
        p_norm_sq[i - 1] = dot(cb.node_vector(i), cb.node_vector(i));
    }

    for (int i = 1; i <= scan_n; ++i) {
        for (int j = i + 1; j <= scan_n; ++j) {
            double fwd_dot = dot(set.u[i - 1], cb.node_vector(j));
            double bwd_dot = dot(set.u[j - 1], cb.node_vector(i));
            double fwd_cos = u_norms[i - 1] > 0.0
                                 ? fwd_dot / (u_norms[i - 1] * std::sqrt(p_norm_sq[j - 1]))
                                 : 0.0;
            double bwd_cos = u_norms[j - 1] > 0.0
                                 ? bwd_dot / (u_norms[j - 1] * std::sqrt(p_norm_sq[i - 1]))
                                 : 0.0;
            EdgeScore es;
            es.i = i;
            es.j = j;
            es.score = 0.5 * (fwd_dot / p_norm_sq[j - 1] + bwd_dot / p_norm_sq[i - 1]);
            es.raw_cosine = std::clamp(0.5 * (fwd_cos + bwd_cos), -1.0, 1.0);
            report.edge_scores.push_back(es);
        }
    }

    std::vector<double> flat;
    flat.reserve(report.edge_scores.size());
    for (const auto& es : report.edge_scores) flat.push_back(es.score);
    report.threshold_used = pick_threshold(std::move(flat), threshold);

    for (auto& es : report.edge_scores) {
        es.accepted = es.score >= report.threshold_used;
        if (es.accepted) report.accepted_edges.emplace_back(es.i, es.j);
    }
    return report;
}

}  // namespace

double edge_score(const Embedding& emb, int i, int j, const Codebook& cb) {
    check_compatible(emb, cb);
    check_edge_mode(emb, "edge_score");
    if (i == j) throw validation_error("edge_score: i and j must differ");
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > cb.n_max() ||
        static_cast<std::size_t>(j) > cb.n_max())
        throw validation_error("edge_score: vertex index out of codebook range");
    Spectrum rec = spectral_reciprocal(cb.node_spectrum(i), kInverseFloor);
    HyperVector u = from_spectrum(spectral_multiply(rec, rfft(emb.vec.v)));
    const HyperVector& pj = cb.node_vector(j);
    return dot(u, pj) / dot(pj, pj);
}

SizeRecovery recover_size(const Embedding& emb, const Codebook& cb) {
    check_compatible(emb, cb);
    if (emb.mode == EncodingMode::kv_bundle)
        throw validation_error("recover_size: kv_bundle embeddings carry no size term");
    Spectrum rec = spectral_reciprocal(cb.size_spectrum(), kInverseFloor);
    HyperVector u = from_spectrum(spectral_multiply(rec, rfft(emb.vec.v)));
    double u_norm = norm(u);
    if (u_norm == 0.0) throw validation_error("recover_size: embedding has no signal");
    SizeRecovery out;
    out.best_cosine = -2.0;
    out.second_cosine = -2.0;
    for (std::size_t i = 1; i <= cb.n_max(); ++i) {
        double c = hoisted_cosine(u, u_norm, cb.node_vector(i));
        if (c > out.best_cosine) {
            out.second_cosine = out.best_cosine;
            out.best_cosine = c;
            out.n = static_cast<int>(i);
        } else if (c > out.second_cosine) {
            out.second_cosine = c;
        }
    }
    out.low_confidence = (out.best_cosine - out.second_cosine) < kLowConfidenceGap;
    return out;
}

std::string recover_attribute(const Embedding& emb, int i, const Codebook& cb,
                              const std::vector<std::string>& candidates) {
    check_compatible(emb, cb);
    if (emb.mode != EncodingMode::attributed)
        throw validation_error("recover_attribute: embedding mode is not attributed");
    if (candidates.empty()) throw validation_error("recover_attribute: empty candidate list");
    if (i < 1 || static_cast<std::size_t>(i) > cb.n_max())
        throw validation_error("recover_attribute: vertex index out of codebook range");
    Spectrum rec = spectral_reciprocal(cb.node_spectrum(i), kInverseFloor);
    HyperVector u = from_spectrum(spectral_multiply(rec, rfft(emb.vec.v)));
    double best = -1e300;
    const std::string* winner = nullptr;
    for (const auto& key : candidates) {
        const HyperVector& a = cb.attribute_vector(key);
        double score = dot(u, a) / dot(a, a);
        if (score > best) {
            best = score;
            winner = &key;
        }
    }
    return *winner;
}

DecodingReport reconstruct_graph(const Embedding& emb, const Codebook& cb,
                                 std::optional<double> threshold) {
    check_compatible(emb, cb);
    if (emb.mode != EncodingMode::graph && emb.mode != EncodingMode::neighborhood)
        throw validation_error("reconstruct_graph: embedding mode '" +
                               std::string(mode_name(emb.mode)) + "' is not reconstructible");
    SizeRecovery size = recover_size(emb, cb);
    return score_pairs(emb, cb, size.n, threshold, size);
}

DecodingReport reconstruct_graph_unsafe(const Embedding& emb, const Codebook& cb, int scan_n,
                                        double threshold) {
    check_compatible(emb, cb);
    check_edge_mode(emb, "reconstruct_graph_unsafe");
    if (scan_n < 1 || static_cast<std::size_t>(scan_n) > cb.n_max())
        throw validation_error("reconstruct_graph_unsafe: scan_n out of codebook range");
    SizeRecovery size = recover_size(emb, cb);
    return score_pairs(emb, cb, scan_n, threshold, size);
}

HyperedgeRecovery recover_hyperedge_members(const Embedding& emb, std::size_t edge_index,
                                            const Codebook& cb, double threshold) {
    check_compatible(emb, cb);
    if (emb.mode != EncodingMode::hyper_keyed)
        throw validation_error("recover_hyperedge_members: embedding mode is not hyper_keyed");
    if (edge_index < 1 || edge_index > cb.m_max())
        throw validation_error("recover_hyperedge_members: hyperedge index out of range");
    SizeRecovery size = recover_size(emb, cb);
    Spectrum rec = spectral_reciprocal(cb.edge_id_spectrum(edge_index), kInverseFloor);
    HyperVector u = from_spectrum(spectral_multiply(rec, rfft(emb.vec.v)));
    HyperedgeRecovery out;
    out.recovered_n = size.n;
    out.scores.resize(size.n);
    for (int j = 1; j <= size.n; ++j) {
        const HyperVector& pj = cb.node_vector(j);
        out.scores[j - 1] = dot(u, pj) / dot(pj, pj);
        if (out.scores[j - 1] >= threshold) out.members.push_back(j);
    }
    out.low_confidence = out.members.empty();
    return out;
}

HyperVector unbind_value(const HyperVector& u, const HyperVector& k) {
    if (u.dim() != k.dim()) throw validation_error("unbind_value: dimension mismatch");
    return bind(inverse(k), u);
}

CapacityResult capacity_sweep(std::size_t d, const std::vector<int>& n_values, int trials,
                              std::uint64_t seed, bool unitary) {
    if (n_values.empty()) throw validation_error("capacity_sweep: empty n list");
    if (trials < 1) throw validation_error("capacity_sweep: trials must be >= 1");
    for (int n : n_values)
        if (n < 1) throw validation_error("capacity_sweep: n values must be >= 1");
    std::vector<int> ns = n_values;
    std::sort(ns.begin(), ns.end());

    CapacityResult result;
    result.records.resize(ns.size() * trials);

    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const int n = ns[ni];
#pragma omp parallel for schedule(dynamic)
        for (int t = 0; t < trials; ++t) {
            counter_rng rng(seed, stream_role::capacity,
                            static_cast<std::uint64_t>(n) * 1048576ULL + t);
            std::vector<Spectrum> key_specs(n);
            std::vector<HyperVector> values(n);
            Spectrum bundle;
            for (int i = 0; i < n; ++i) {
                HyperVector key = sample_hypervector(d, rng, unitary);
                values[i] = sample_hypervector(d, rng, unitary);
                key_specs[i] = rfft(key.v);
                Spectrum term = spectral_multiply(key_specs[i], rfft(values[i].v));
                if (i == 0)
                    bundle = term;
                else
                    spectral_accumulate(bundle, term);
            }
            std::vector<double> value_norms(n);
            for (int i = 0; i < n; ++i) value_norms[i] = norm(values[i]);

            double min_correct = 2.0, max_wrong = -2.0, sum_correct = 0.0;
            for (int i = 0; i < n; ++i) {
                Spectrum rec = spectral_reciprocal(key_specs[i], kInverseFloor);
                HyperVector v_tilde = from_spectrum(spectral_multiply(rec, bundle));
                double vt_norm = norm(v_tilde);
                for (int j = 0; j < n; ++j) {
                    double c = std::clamp(
                        dot(v_tilde, values[j]) / (vt_norm * value_norms[j]), -1.0, 1.0);
                    if (j == i) {
                        min_correct = std::min(min_correct, c);
                        sum_correct += c;
                    } else {
                        max_wrong = std::max(max_wrong, c);
                    }
                }
            }
            CapacityRecord& rec_out = result.records[ni * trials + t];
            rec_out.n = n;
            rec_out.d = d;
            rec_out.trial = t;
            rec_out.min_correct_cs = min_correct;
            rec_out.mean_correct_cs = sum_correct / n;
            rec_out.max_wrong_cs = (n > 1) ? max_wrong : 0.0;
        }
    }

    result.per_n.resize(ns.size());
    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        CapacityPerN agg;
        agg.n = ns[ni];
        agg.d = d;
        agg.min_correct_cs = 2.0;
        agg.max_wrong_cs = -2.0;
        double sum = 0.0;
        for (int t = 0; t < trials; ++t) {
            const CapacityRecord& r = result.records[ni * trials + t];
            agg.min_correct_cs = std::min(agg.min_correct_cs, r.min_correct_cs);
            agg.max_wrong_cs = std::max(agg.max_wrong_cs, r.max_wrong_cs);
            sum += r.mean_correct_cs;
        }
        agg.mean_correct_cs = sum / trials;
        agg.separation = agg.mean_correct_cs > agg.max_wrong_cs;
        result.per_n[ni] = agg;
    }
    return result;
}

void write_capacity_csv(const CapacityResult& result, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << "n,d,trial,min_correct_cs,max_wrong_cs,separation\n";
    os << std::setprecision(10);
    std::size_t per_n_idx = 0;
    for (const auto& r : result.records) {
        while (per_n_idx < result.per_n.size() && result.per_n[per_n_idx].n != r.n) ++per_n_idx;
        bool sep = per_n_idx < result.per_n.size() && result.per_n[per_n_idx].separation;
        os << r.n << "," << r.d << "," << r.trial << "," << r.min_correct_cs << ","
           << r.max_wrong_cs << "," << (sep ? "true" : "false") << "\n";
    }
    if (!os) throw io_error("write failure on '" + path + "'");
}

void write_reconstruction_csv(const DecodingReport& report, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << "i,j,score,accepted\n";
    os << std::setprecision(10);
    for (const auto& es : report.edge_scores)
        os << es.i << "," << es.j << "," << es.score << ","
           << (es.accepted ? "true" : "false") << "\n";
    if (!os) throw io_error("write failure on '" + path + "'");
}

}  // namespace hypervec
