#include "hypervec/codebook.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hypervec/errors.hpp"
#include "hypervec/io_util.hpp"

namespace hypervec {

namespace {

constexpr char kMagic[4] = {'H', 'V', 'C', 'B'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint64_t kIndexMask = 0x00FFFFFFFFFFFFFFull;

std::uint64_t attr_stream_index(const std::string& key) {
    io::Fnv1a64 h;
    h.update(key.data(), key.size());
    return h.digest() & kIndexMask;
}

HyperVector draw(std::size_t d, std::uint64_t seed, stream_role role,
                 std::uint64_t index, bool unitary) {
    counter_rng rng(seed, role, index);
    return sample_hypervector(d, rng, unitary);
}

}  // namespace

Codebook Codebook::build(const Config& cfg) {
    if (cfg.d < 2) throw validation_error("codebook: dimension must be >= 2");
    Codebook cb;
    cb.cfg_ = cfg;
    cb.node_vecs_.reserve(cfg.n_max);
    for (std::size_t i = 1; i <= cfg.n_max; ++i)
        cb.node_vecs_.push_back(draw(cfg.d, cfg.seed, stream_role::node_vector, i, cfg.unitary));
    cb.edge_id_vecs_.reserve(cfg.m_max);
    for (std::size_t j = 1; j <= cfg.m_max; ++j)
        cb.edge_id_vecs_.push_back(draw(cfg.d, cfg.seed, stream_role::edge_id_vector, j, cfg.unitary));
    cb.size_vec_ = draw(cfg.d, cfg.seed, stream_role::size_vector, 0, cfg.unitary);
    cb.rebuild_spectra();
    return cb;
}

Codebook build_codebook(std::size_t d, std::uint64_t seed, std::size_t n_max_nodes,
                        std::size_t m_max_edges, bool unitary) {
    Codebook::Config cfg;
    cfg.d = d;
    cfg.seed = seed;
    cfg.n_max = n_max_nodes;
    cfg.m_max = m_max_edges;
    cfg.unitary = unitary;
    return Codebook::build(cfg);
}

Codebook Codebook::with_attribute_keys(const std::vector<std::string>& keys) const {
    Codebook cb = *this;
    for (const auto& key : keys) {
        if (key.empty()) throw validation_error("attribute key must be nonempty");
        if (cb.attr_vecs_.count(key)) continue;
        cb.attr_vecs_[key] = draw(cfg_.d, cfg_.seed, stream_role::attribute_vector,
                                  attr_stream_index(key), cfg_.unitary);
    }
    cb.rebuild_spectra();
    return cb;
}

Codebook Codebook::with_imported(const std::map<std::string, std::vector<double>>& vectors) const {
    Codebook cb = *this;
    for (const auto& [key, vec] : vectors) {
        if (vec.size() != cfg_.d)
            throw validation_error("imported vector '" + key + "' has dimension " +
                                   std::to_string(vec.size()) + ", codebook expects " +
                                   std::to_string(cfg_.d));
        if (cb.attr_vecs_.count(key))
            throw validation_error("duplicate attribute key '" + key + "'");
        cb.attr_vecs_[key] = HyperVector{vec};
    }
    cb.rebuild_spectra();
    return cb;
}

const HyperVector& Codebook::node_vector(std::size_t i) const {
    if (i < 1 || i > node_vecs_.size())
        throw validation_error("node index " + std::to_string(i) + " outside codebook capacity " +
                               std::to_string(node_vecs_.size()));
    return node_vecs_[i - 1];
}

const HyperVector& Codebook::edge_id_vector(std::size_t j) const {
    if (j < 1 || j > edge_id_vecs_.size())
        throw validation_error("hyperedge-id index " + std::to_string(j) +
                               " outside codebook capacity " + std::to_string(edge_id_vecs_.size()));
    return edge_id_vecs_[j - 1];
}

bool Codebook::has_attribute(const std::string& key) const { return attr_vecs_.count(key) > 0; }

const HyperVector& Codebook::attribute_vector(const std::string& key) const {
    auto it = attr_vecs_.find(key);
    if (it == attr_vecs_.end())
        throw validation_error("unknown attribute key '" + key + "'");
    return it->second;
}

std::vector<std::string> Codebook::attribute_keys() const {
    std::vector<std::string> out;
    out.reserve(attr_vecs_.size());
    for (const auto& [key, _] : attr_vecs_) out.push_back(key);
    return out;
}

const Spectrum& Codebook::node_spectrum(std::size_t i) const {
    node_vector(i);
    return node_specs_[i - 1];
}

const Spectrum& Codebook::edge_id_spectrum(std::size_t j) const {
    edge_id_vector(j);
    return edge_id_specs_[j - 1];
}

const Spectrum& Codebook::attribute_spectrum(const std::string& key) const {
    attribute_vector(key);
    return attr_specs_.at(key);
}

void Codebook::rebuild_spectra() {
    fp_valid_ = false;
    node_specs_.clear();
    node_specs_.reserve(node_vecs_.size());
    for (const auto& v : node_vecs_) node_specs_.push_back(rfft(v.v));
    edge_id_specs_.clear();
    edge_id_specs_.reserve(edge_id_vecs_.size());
    for (const auto& v : edge_id_vecs_) edge_id_specs_.push_back(rfft(v.v));
    size_spec_ = rfft(size_vec_.v);
    attr_specs_.clear();
    for (const auto& [key, v] : attr_vecs_) attr_specs_[key] = rfft(v.v);
}

std::uint64_t Codebook::fingerprint() const {
    if (fp_valid_) return fp_cache_;
    io::Fnv1a64 h;
    h.update(kMagic, 4);
    h.update_u64(kVersion);
    h.update_u64(cfg_.d);
    h.update_u64(cfg_.seed);
    h.update_u64(cfg_.n_max);
    h.update_u64(cfg_.m_max);
    h.update_u64(cfg_.unitary ? 1 : 0);
    h.update_u64(attr_vecs_.size());
    for (const auto& [key, vec] : attr_vecs_) {
        h.update_u64(key.size());
        h.update(key.data(), key.size());
        for (double x : vec.v) h.update_f64(x);
    }
    for (const auto& v : node_vecs_)
        for (double x : v.v) h.update_f64(x);
    for (const auto& v : edge_id_vecs_)
        for (double x : v.v) h.update_f64(x);
    for (double x : size_vec_.v) h.update_f64(x);
    fp_cache_ = h.digest();
    fp_valid_ = true;
    return fp_cache_;
}

void Codebook::save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os.write(kMagic, 4);
    io::write_u32(os, kVersion);
    io::write_u64(os, cfg_.d);
    io::write_u64(os, cfg_.seed);
    io::write_u64(os, cfg_.n_max);
    io::write_u64(os, cfg_.m_max);
    io::write_u8(os, cfg_.unitary ? 1 : 0);
    for (int i = 0; i < 7; ++i) io::write_u8(os, 0);
    io::write_u64(os, attr_vecs_.size());
    for (const auto& [key, vec] : attr_vecs_) {
        io::write_u64(os, key.size());
        os.write(key.data(), static_cast<std::streamsize>(key.size()));
        for (double x : vec.v) io::write_f64(os, x);
    }
    for (const auto& v : node_vecs_)
        for (double x : v.v) io::write_f64(os, x);
    for (const auto& v : edge_id_vecs_)
        for (double x : v.v) io::write_f64(os, x);
    for (double x : size_vec_.v) io::write_f64(os, x);
    io::write_u64(os, fingerprint());
    if (!os) throw io_error("write failure on '" + path + "'");
}

Codebook Codebook::load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open '" + path + "'");
    char magic[4];
    is.read(magic, 4);
    if (is.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw validation_error("'" + path + "' is not a codebook file (bad magic)");
    std::uint32_t version = io::read_u32(is, "version");
    if (version != kVersion)
        throw validation_error("unsupported codebook format version " + std::to_string(version));
    Codebook cb;
    cb.cfg_.d = io::read_u64(is, "dimension");
    cb.cfg_.seed = io::read_u64(is, "seed");
    cb.cfg_.n_max = io::read_u64(is, "n_max");
    cb.cfg_.m_max = io::read_u64(is, "m_max");
    cb.cfg_.unitary = io::read_u8(is, "unitary flag") != 0;
    for (int i = 0; i < 7; ++i) io::read_u8(is, "reserved");
    std::uint64_t n_attrs = io::read_u64(is, "attribute count");
    if (cb.cfg_.d < 2) throw validation_error("codebook file: dimension must be >= 2");
    auto read_vec = [&](const char* what) {
        HyperVector v;
        v.v.resize(cb.cfg_.d);
        for (std::size_t k = 0; k < cb.cfg_.d; ++k) v.v[k] = io::read_f64(is, what);
        return v;
    };
    for (std::uint64_t a = 0; a < n_attrs; ++a) {
        std::uint64_t len = io::read_u64(is, "attribute key length");
        std::string key(len, '\0');
        is.read(key.data(), static_cast<std::streamsize>(len));
        if (static_cast<std::uint64_t>(is.gcount()) != len)
            throw io_error("truncated file reading attribute key");
        cb.attr_vecs_[key] = read_vec("attribute vector");
    }
    for (std::uint64_t i = 0; i < cb.cfg_.n_max; ++i) cb.node_vecs_.push_back(read_vec("node vector"));
    for (std::uint64_t j = 0; j < cb.cfg_.m_max; ++j)
        cb.edge_id_vecs_.push_back(read_vec("hyperedge-id vector"));
    cb.size_vec_ = read_vec("size vector");
    std::uint64_t stored = io::read_u64(is, "fingerprint");
    std::uint64_t actual = cb.fingerprint();
    if (stored != actual)
        throw validation_error("codebook fingerprint mismatch (file corrupt or edited)");
    cb.rebuild_spectra();
    return cb;
}

std::map<std::string, std::vector<double>> parse_concept_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open '" + path + "'");
    std::string header;
    if (!std::getline(is, header)) throw io_error("empty concept-vector file '" + path + "'");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    const std::string prefix = "key,dim=";
    if (header.rfind(prefix, 0) != 0)
        throw validation_error("concept CSV header must be 'key,dim=<d>', got '" + header + "'");
    std::size_t d = 0;
    try {
        d = static_cast<std::size_t>(std::stoull(header.substr(prefix.size())));
    } catch (const std::exception&) {
        throw validation_error("bad dimension in concept CSV header '" + header + "'");
    }
    if (d < 2) throw validation_error("concept CSV dimension must be >= 2");

    std::map<std::string, std::vector<double>> out;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string key;
        if (!std::getline(ss, key, ',') || key.empty())
            throw validation_error("line " + std::to_string(lineno) + ": missing key");
        if (out.count(key))
            throw validation_error("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        std::vector<double> vec;
        vec.reserve(d);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                double x = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
                vec.push_back(x);
            } catch (const std::exception&) {
                throw validation_error("line " + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
        }
        if (vec.size() != d)
            throw validation_error("line " + std::to_string(lineno) + ": expected " +
                                   std::to_string(d) + " values, got " + std::to_string(vec.size()));
        out.emplace(key, std::move(vec));
    }
    return out;
}

Codebook import_concept_vectors(const std::string& path) {
    auto vectors = parse_concept_csv(path);
    if (vectors.empty()) throw validation_error("concept CSV '" + path + "' has no rows");
    Codebook::Config cfg;
    cfg.d = vectors.begin()->second.size();
    cfg.seed = 0;
    cfg.n_max = 0;
    cfg.m_max = 0;
    Codebook cb = Codebook::build(cfg);
    return cb.with_imported(vectors);
}

}  // namespace hypervec
