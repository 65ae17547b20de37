#include "hypervec/encoder.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "hypervec/errors.hpp"
#include "hypervec/io_util.hpp"

namespace hypervec {

namespace {

constexpr char kMagic[4] = {'H', 'V', 'E', 'M'};
constexpr std::uint32_t kVersion = 1;

void check_capacity(int n, const Codebook& cb, const char* what) {
    if (n < 1) throw validation_error(std::string(what) + ": vertex count must be >= 1");
    if (static_cast<std::size_t>(n) > cb.n_max())
        throw validation_error(std::string(what) + ": n=" + std::to_string(n) +
                               " exceeds codebook node capacity " + std::to_string(cb.n_max()));
}

void accumulate(HyperVector& acc, const HyperVector& term) {
    for (std::size_t k = 0; k < acc.v.size(); ++k) acc.v[k] += term.v[k];
}

}  // namespace

const char* mode_name(EncodingMode mode) {
    switch (mode) {
        case EncodingMode::graph: return "graph";
        case EncodingMode::attributed: return "attributed";
        case EncodingMode::hyper_product: return "hyper_product";
        case EncodingMode::hyper_keyed: return "hyper_keyed";
        case EncodingMode::neighborhood: return "neighborhood";
        case EncodingMode::kv_bundle: return "kv_bundle";
    }
    throw validation_error("unknown encoding mode value");
}

EncodingMode parse_mode(const std::string& name) {
    for (auto m : {EncodingMode::graph, EncodingMode::attributed, EncodingMode::hyper_product,
                   EncodingMode::hyper_keyed, EncodingMode::neighborhood,
                   EncodingMode::kv_bundle})
        if (name == mode_name(m)) return m;
    throw validation_error("unknown encoding mode '" + name + "'");
}

HyperVector edge_term(const Codebook& cb, int i, int j) {
    check_capacity(i, cb, "edge_term");
    check_capacity(j, cb, "edge_term");
    return from_spectrum(spectral_multiply(cb.node_spectrum(i), cb.node_spectrum(j)));
}

HyperVector size_term(const Codebook& cb, int n) {
    check_capacity(n, cb, "size_term");
    return from_spectrum(spectral_multiply(cb.size_spectrum(), cb.node_spectrum(n)));
}

Embedding encode_graph(const Graph& g, const Codebook& cb) {
    check_capacity(g.n, cb, "encode_graph");
    HyperVector acc = size_term(cb, g.n);
    for (const auto& [i, j] : g.edges) accumulate(acc, edge_term(cb, i, j));
    return Embedding{std::move(acc), EncodingMode::graph, cb.dim(), cb.fingerprint(),
                     static_cast<std::uint64_t>(g.n)};
}

Embedding encode_attributed(const AttributedGraph& g, const Codebook& cb) {
    Embedding emb = encode_graph(g.graph, cb);
    emb.mode = EncodingMode::attributed;
    if (g.attrs.empty()) return emb;
    if (static_cast<int>(g.attrs.size()) != g.graph.n)
        throw validation_error("encode_attributed: attribute list length mismatch");
    for (int i = 1; i <= g.graph.n; ++i) {
        const std::string& key = g.attrs[i - 1];
        if (key.empty()) continue;
        if (!cb.has_attribute(key))
            throw validation_error("encode_attributed: codebook has no attribute '" + key + "'");
        accumulate(emb.vec,
                   from_spectrum(spectral_multiply(cb.node_spectrum(i), cb.attribute_spectrum(key))));
    }
    return emb;
}

Embedding encode_hypergraph(const HyperGraph& h, const Codebook& cb) {
    check_capacity(h.n, cb, "encode_hypergraph");
    if (h.hyperedges.size() > cb.m_max())
        throw validation_error("encode_hypergraph: " + std::to_string(h.hyperedges.size()) +
                               " hyperedges exceed codebook capacity " +
                               std::to_string(cb.m_max()));
    HyperVector acc = size_term(cb, h.n);
    for (std::size_t e = 0; e < h.hyperedges.size(); ++e) {
        HyperVector members{std::vector<double>(cb.dim(), 0.0)};
        for (int v : h.hyperedges[e]) accumulate(members, cb.node_vector(v));
        accumulate(acc, from_spectrum(spectral_multiply(cb.edge_id_spectrum(e + 1),
                                                        rfft(members.v))));
    }
    return Embedding{std::move(acc), EncodingMode::hyper_keyed, cb.dim(), cb.fingerprint(),
                     static_cast<std::uint64_t>(h.n)};
}

Embedding encode_hypergraph_product(const HyperGraph& h, const Codebook& cb,
                                    std::string* warning) {
    check_capacity(h.n, cb, "encode_hypergraph_product");
    HyperVector acc = size_term(cb, h.n);
    std::size_t widest = 0;
    for (const auto& edge : h.hyperedges) {
        widest = std::max(widest, edge.size());
        Spectrum slot = cb.node_spectrum(edge[0]);
        for (std::size_t k = 1; k < edge.size(); ++k)
            slot = spectral_multiply(slot, cb.node_spectrum(edge[k]));
        accumulate(acc, from_spectrum(slot));
    }
    if (warning) {
        if (widest > 4)
            *warning = "product encoding binds " + std::to_string(widest) +
                       " vectors into one slot; decoding degrades past 4 members";
        else
            warning->clear();
    }
    return Embedding{std::move(acc), EncodingMode::hyper_product, cb.dim(), cb.fingerprint(),
                     static_cast<std::uint64_t>(h.n)};
}

Embedding encode_node_neighborhood(const Graph& g, int v, const Codebook& cb) {
    Subgraph sub = neighborhood_subgraph(g, v);
    check_capacity(g.n, cb, "encode_node_neighborhood");
    int n_sub = static_cast<int>(sub.vertices.size());
    HyperVector acc = size_term(cb, n_sub);
    for (const auto& [i, j] : sub.edges) accumulate(acc, edge_term(cb, i, j));
    return Embedding{std::move(acc), EncodingMode::neighborhood, cb.dim(), cb.fingerprint(),
                     static_cast<std::uint64_t>(n_sub)};
}

HyperVector encode_kv_pairs(const std::vector<std::pair<HyperVector, HyperVector>>& pairs) {
    if (pairs.empty()) throw validation_error("encode_kv_pairs: need at least one pair");
    const std::size_t d = pairs[0].first.dim();
    HyperVector acc{std::vector<double>(d, 0.0)};
    for (const auto& [k, v] : pairs) {
        if (k.dim() != d || v.dim() != d)
            throw validation_error("encode_kv_pairs: dimension mismatch");
        accumulate(acc, bind(k, v));
    }
    return acc;
}

void save_embedding(const Embedding& emb, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os.write(kMagic, 4);
    io::write_u32(os, kVersion);
    io::write_u8(os, static_cast<std::uint8_t>(emb.mode));
    for (int k = 0; k < 3; ++k) io::write_u8(os, 0);
    io::write_u64(os, emb.d);
    io::write_u64(os, emb.n_declared);
    io::write_u64(os, emb.codebook_fingerprint);
    for (double x : emb.vec.v) io::write_f64(os, x);
    if (!os) throw io_error("write failure on '" + path + "'");
}

Embedding load_embedding(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open '" + path + "'");
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw validation_error("'" + path + "' is not an embedding file (bad magic)");
    std::uint32_t version = io::read_u32(is, "version");
    if (version != kVersion)
        throw validation_error("unsupported embedding version " + std::to_string(version));
    std::uint8_t mode_raw = io::read_u8(is, "mode");
    if (mode_raw > static_cast<std::uint8_t>(EncodingMode::kv_bundle))
        throw validation_error("corrupt embedding: unknown mode byte");
    for (int k = 0; k < 3; ++k) io::read_u8(is, "padding");
    Embedding emb;
    emb.mode = static_cast<EncodingMode>(mode_raw);
    emb.d = io::read_u64(is, "dimension");
    if (emb.d < 2) throw validation_error("corrupt embedding: dimension < 2");
    emb.n_declared = io::read_u64(is, "vertex count");
    emb.codebook_fingerprint = io::read_u64(is, "codebook fingerprint");
    emb.vec.v.resize(emb.d);
    for (std::size_t k = 0; k < emb.d; ++k) emb.vec.v[k] = io::read_f64(is, "payload");
    return emb;
}

}  // namespace hypervec
