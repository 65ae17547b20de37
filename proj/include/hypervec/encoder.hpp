#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypervec/codebook.hpp"
#include "hypervec/graph.hpp"
#include "hypervec/hypervector.hpp"

namespace hypervec {

enum class EncodingMode : std::uint8_t {
    graph = 0,
    attributed = 1,
    hyper_product = 2,
    hyper_keyed = 3,
    neighborhood = 4,
    kv_bundle = 5,
};

const char* mode_name(EncodingMode mode);
EncodingMode parse_mode(const std::string& name);

/// A structure encoded into one hypervector, tagged with enough metadata to
/// decode it later: which formula produced it, which codebook it expects, and
/// the vertex count carried by the size term.
struct Embedding {
    HyperVector vec;
    EncodingMode mode = EncodingMode::graph;
    std::size_t d = 0;
    std::uint64_t codebook_fingerprint = 0;
    std::uint64_t n_declared = 0;
};

/// One edge slot p_i (x) p_j, computed from the codebook's cached spectra.
HyperVector edge_term(const Codebook& cb, int i, int j);
/// The vertex-count marker s (x) p_n.
HyperVector size_term(const Codebook& cb, int n);

/// g = (s (x) p_n) (+) sum over edges of p_i (x) p_j. Edges are accumulated
/// in canonical sorted order by a sequential left fold, so the output is
/// bit-identical under edge-list permutation, and appending an edge that
/// sorts last adds its term entrywise.
Embedding encode_graph(const Graph& g, const Codebook& cb);

/// Graph encoding plus one p_i (x) a_{attr(i)} slot per attributed vertex
/// (vertices with an empty key contribute nothing). With no attributes the
/// output is bit-identical to encode_graph.
Embedding encode_attributed(const AttributedGraph& g, const Codebook& cb);

/// Keyed hyperedge encoding, the default hypergraph mode:
/// (s (x) p_n) (+) sum over hyperedges i of e_i (x) (sum of member p_j).
Embedding encode_hypergraph(const HyperGraph& h, const Codebook& cb);

/// Product hyperedge encoding: (s (x) p_n) (+) sum over hyperedges of the
/// bind of all member vectors. Binding many vectors into one slot is
/// unstable to decode; when any hyperedge has more than 4 members a warning
/// string is written through `warning` (if given). Two-member hyperedges
/// reduce to graph edge slots, so an all-pairs hypergraph encodes
/// entrywise-identically to the corresponding graph.
Embedding encode_hypergraph_product(const HyperGraph& h, const Codebook& cb,
                                    std::string* warning = nullptr);

/// Graph encoding of neighborhood_subgraph(g, v) with original vertex
/// labels; the size term carries the subgraph's vertex count.
Embedding encode_node_neighborhood(const Graph& g, int v, const Codebook& cb);

/// u = sum of k_i (x) v_i. Keys and values are caller-supplied vectors.
HyperVector encode_kv_pairs(const std::vector<std::pair<HyperVector, HyperVector>>& pairs);

/// Binary embedding file: magic "HVEM", version, mode, d, n_declared,
/// codebook fingerprint, then d little-endian doubles.
void save_embedding(const Embedding& emb, const std::string& path);
Embedding load_embedding(const std::string& path);

}  // namespace hypervec
