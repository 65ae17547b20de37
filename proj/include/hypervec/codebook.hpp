#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hypervec/fft.hpp"
#include "hypervec/hypervector.hpp"

namespace hypervec {

/// Immutable registry of concept vectors: node vectors p_1..p_N, hyperedge-id
/// vectors e_1..e_M, the size marker s, and a string-keyed attribute
/// vocabulary. All generated vectors derive from (seed, role, index)
/// substreams, so a codebook is a pure function of its configuration:
/// regenerating with a larger n_max leaves existing vectors untouched.
///
/// unitary_mode (default on) samples vectors with unit spectral magnitude,
/// which makes exact inverses norm-preserving; the noise floor of every
/// decoding query then scales as sqrt(terms/d) instead of being amplified by
/// the heavy-tailed reciprocal spectrum of a plain Gaussian draw.
class Codebook {
public:
    struct Config {
        std::size_t d = 2048;
        std::uint64_t seed = 0;
        std::size_t n_max = 512;
        std::size_t m_max = 64;
        bool unitary = true;
    };

    static Codebook build(const Config& cfg);

    /// Extend with generated attribute vectors for the given keys (returns a
    /// copy; existing vectors are unchanged). Generated keys draw from the
    /// attribute substream indexed by a 56-bit truncation of fnv1a64(key).
    Codebook with_attribute_keys(const std::vector<std::string>& keys) const;

    /// Extend with externally supplied vectors (text-encoder imports).
    Codebook with_imported(const std::map<std::string, std::vector<double>>& vectors) const;

    std::size_t dim() const { return cfg_.d; }
    std::uint64_t seed() const { return cfg_.seed; }
    std::size_t n_max() const { return cfg_.n_max; }
    std::size_t m_max() const { return cfg_.m_max; }
    bool unitary_mode() const { return cfg_.unitary; }

    /// 1-based node vector p_i.
    const HyperVector& node_vector(std::size_t i) const;
    /// 1-based hyperedge-id vector e_j.
    const HyperVector& edge_id_vector(std::size_t j) const;
    const HyperVector& size_vector() const { return size_vec_; }
    bool has_attribute(const std::string& key) const;
    const HyperVector& attribute_vector(const std::string& key) const;
    std::vector<std::string> attribute_keys() const;

    /// Cached spectra of the same vectors (encode/decode hot paths).
    const Spectrum& node_spectrum(std::size_t i) const;
    const Spectrum& edge_id_spectrum(std::size_t j) const;
    const Spectrum& size_spectrum() const { return size_spec_; }
    const Spectrum& attribute_spectrum(const std::string& key) const;

    /// FNV-1a-64 over the canonical serialization (config + sorted attribute
    /// table + payloads). Stable across platforms.
    std::uint64_t fingerprint() const;

    void save(const std::string& path) const;
    static Codebook load(const std::string& path);

private:
    Codebook() = default;
    void rebuild_spectra();

    Config cfg_;
    mutable std::uint64_t fp_cache_ = 0;
    mutable bool fp_valid_ = false;
    std::vector<HyperVector> node_vecs_;
    std::vector<HyperVector> edge_id_vecs_;
    HyperVector size_vec_;
    std::map<std::string, HyperVector> attr_vecs_;

    std::vector<Spectrum> node_specs_;
    std::vector<Spectrum> edge_id_specs_;
    Spectrum size_spec_;
    std::map<std::string, Spectrum> attr_specs_;
};

/// Convenience wrapper matching the toolkit's operation list.
Codebook build_codebook(std::size_t d, std::uint64_t seed, std::size_t n_max_nodes,
                        std::size_t m_max_edges, bool unitary = true);

/// Parse a concept-vector CSV (header "key,dim=<d>", rows "name,x0,...,x_{d-1}")
/// into a fresh codebook at the imported dimension with no node vectors.
Codebook import_concept_vectors(const std::string& path);

/// Parse the same CSV format into raw vectors.
std::map<std::string, std::vector<double>> parse_concept_csv(const std::string& path);

}  // namespace hypervec
