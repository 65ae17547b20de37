#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypervec/codebook.hpp"
#include "hypervec/decoder.hpp"
#include "hypervec/encoder.hpp"
#include "hypervec/errors.hpp"
#include "hypervec/graph.hpp"
#include "hypervec/probe.hpp"
#include "hypervec/spectral.hpp"

namespace hv = hypervec;

namespace {

std::string hex64(std::uint64_t v) {
    std::ostringstream ss;
    ss << std::hex << std::setw(16) << std::setfill('0') << v;
    return ss.str();
}

bool is_json_path(const std::string& path) { return path.ends_with(".json"); }

hv::Graph load_plain_graph(const std::string& path) {
    if (is_json_path(path)) return hv::parse_graph_json(path).graph;
    return hv::parse_edge_list(path);
}

/// Appends one timestamped line to the sidecar, keeping every other output
/// byte-reproducible.
struct RunLog {
    std::string path;

    void note(const std::string& line) const {
        if (path.empty()) return;
        std::ofstream os(path, std::ios::app);
        if (!os) return;
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%S", std::gmtime(&now));
        os << "[" << stamp << "Z] " << line << "\n";
    }
};

void emit_capacity_summary(const hv::CapacityResult& result, std::ostream& os) {
    os << std::setprecision(6);
    for (const auto& rec : result.per_n)
        os << "n=" << rec.n << " d=" << rec.d << " min_correct=" << rec.min_correct_cs
           << " mean_correct=" << rec.mean_correct_cs << " max_wrong=" << rec.max_wrong_cs
           << " separation=" << (rec.separation ? "true" : "false") << "\n";
}

struct ProbeModelArgs {
    std::string model = "ridge";
    double lambda = 0.01;
    int width = 16;
    int epochs = 200;
    double lr = 0.05;
};

std::vector<hv::MetricRow> run_probe_models(const hv::LabeledEmbeddingSet& ds, std::size_t d,
                                            std::uint64_t seed, const ProbeModelArgs& args) {
    std::vector<hv::MetricRow> rows;
    auto evaluate = [&](const std::string& model, std::size_t params,
                        const Eigen::VectorXd& pred) {
        hv::MetricRow row;
        row.task = hv::task_name(ds.task);
        row.d = d;
        row.model = model;
        row.params = params;
        row.seed = seed;
        if (ds.classification) {
            row.metric_name = "test_accuracy";
            row.metric_value = hv::sign_accuracy(pred, ds.y_test);
        } else {
            row.metric_name = "test_mse";
            row.metric_value = hv::mean_squared_error(pred, ds.y_test);
        }
        rows.push_back(row);
    };

    if (args.model == "ridge" || args.model == "both") {
        hv::RidgeModel ridge = hv::ridge_fit(ds.x_train, ds.y_train, args.lambda);
        evaluate("ridge", static_cast<std::size_t>(ridge.w.size()) + 1,
                 hv::ridge_predict(ridge, ds.x_test));
    }
    if (args.model == "mlp" || args.model == "both") {
        hv::MlpConfig cfg;
        cfg.width = args.width;
        cfg.epochs = args.epochs;
        cfg.lr = args.lr;
        cfg.seed = seed;
        hv::MlpModel mlp = hv::mlp_fit(ds.x_train, ds.y_train, cfg);
        evaluate("mlp", mlp.parameter_count(), hv::mlp_predict(mlp, ds.x_test));
    }
    if (rows.empty())
        throw hv::usage_error("--model must be one of ridge, mlp, both");
    return rows;
}

void print_metric_rows(const std::vector<hv::MetricRow>& rows, std::ostream& os) {
    os << std::setprecision(6);
    for (const auto& r : rows)
        os << "task=" << r.task << " d=" << r.d << " model=" << r.model
           << " params=" << r.params << " " << r.metric_name << "=" << r.metric_value
           << " seed=" << r.seed << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypervector graph embedding toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    RunLog log;
    app.add_option("--log", log.path, "append a timestamped run record to this sidecar file");

    std::function<void()> action;

    // codebook gen | import | inspect
    auto* cmd_codebook = app.add_subcommand("codebook", "create or examine concept codebooks");
    cmd_codebook->require_subcommand(1);
    {
        auto* gen = cmd_codebook->add_subcommand("gen", "generate a seeded codebook");
        auto d = std::make_shared<std::size_t>(2048);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto nodes = std::make_shared<std::size_t>(512);
        auto edges = std::make_shared<std::size_t>(64);
        auto plain = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        gen->add_option("--d", *d, "vector dimension")->capture_default_str();
        gen->add_option("--seed", *seed, "master seed")->envname("HYPERVEC_SEED")
            ->capture_default_str();
        gen->add_option("--nodes", *nodes, "node vector count")->capture_default_str();
        gen->add_option("--edges", *edges, "hyperedge id vector count")->capture_default_str();
        gen->add_flag("--plain", *plain, "sample plain Gaussian vectors (no unitary projection)");
        gen->add_option("--out", *out, "output file")->required();
        gen->callback([=]() {
            hv::Codebook cb = hv::build_codebook(*d, *seed, *nodes, *edges, !*plain);
            cb.save(*out);
            std::cout << "command=codebook.gen d=" << cb.dim() << " seed=" << cb.seed()
                      << " nodes=" << cb.n_max() << " edges=" << cb.m_max()
                      << " unitary=" << (cb.unitary_mode() ? "true" : "false")
                      << "\nfingerprint=" << hex64(cb.fingerprint()) << "\nout=" << *out << "\n";
        });

        auto* imp = cmd_codebook->add_subcommand("import", "build a codebook from a concept CSV");
        auto csv = std::make_shared<std::string>();
        auto imp_out = std::make_shared<std::string>();
        imp->add_option("--csv", *csv, "input CSV (header 'key,dim=<d>')")->required();
        imp->add_option("--out", *imp_out, "output file")->required();
        imp->callback([=]() {
            hv::Codebook cb = hv::import_concept_vectors(*csv);
            cb.save(*imp_out);
            std::cout << "command=codebook.import d=" << cb.dim()
                      << " imported=" << cb.attribute_keys().size()
                      << "\nfingerprint=" << hex64(cb.fingerprint()) << "\nout=" << *imp_out
                      << "\n";
        });

        auto* ins = cmd_codebook->add_subcommand("inspect", "print codebook metadata");
        auto file = std::make_shared<std::string>();
        ins->add_option("file", *file, "codebook file")->required();
        ins->callback([=]() {
            hv::Codebook cb = hv::Codebook::load(*file);
            std::cout << "command=codebook.inspect d=" << cb.dim() << " seed=" << cb.seed()
                      << " nodes=" << cb.n_max() << " edges=" << cb.m_max()
                      << " unitary=" << (cb.unitary_mode() ? "true" : "false")
                      << " attrs=" << cb.attribute_keys().size()
                      << "\nfingerprint=" << hex64(cb.fingerprint()) << "\n";
        });
    }

    // generate
    {
        auto* gen = app.add_subcommand("generate", "write a synthetic graph or hypergraph");
        auto family = std::make_shared<std::string>();
        auto n = std::make_shared<int>(10);
        auto p = std::make_shared<double>(0.3);
        auto m = std::make_shared<int>(2);
        auto k_mean = std::make_shared<double>(3.0);
        auto p_in = std::make_shared<double>(0.6);
        auto p_out = std::make_shared<double>(0.05);
        auto blocks = std::make_shared<std::vector<int>>();
        auto weights = std::make_shared<std::vector<double>>();
        auto seed = std::make_shared<std::uint64_t>(0);
        auto out = std::make_shared<std::string>();
        gen->add_option("--family", *family,
                        "er|ba|sbm|star|path|cycle|complete|tree|unicyclic|hyper_er|chung_lu")
            ->required();
        gen->add_option("--n", *n, "vertex count")->capture_default_str();
        gen->add_option("--p", *p, "er edge probability")->capture_default_str();
        gen->add_option("--m", *m, "ba attachments per vertex / hyper_er edge count")
            ->capture_default_str();
        gen->add_option("--k-mean", *k_mean, "hyper_er mean hyperedge size")
            ->capture_default_str();
        gen->add_option("--p-in", *p_in, "sbm within-block probability")->capture_default_str();
        gen->add_option("--p-out", *p_out, "sbm cross-block probability")->capture_default_str();
        gen->add_option("--blocks", *blocks, "sbm block sizes")->delimiter(',');
        gen->add_option("--weights", *weights, "chung_lu per-vertex weights")->delimiter(',');
        gen->add_option("--seed", *seed, "generator seed")->envname("HYPERVEC_SEED")
            ->capture_default_str();
        gen->add_option("--out", *out, "output path (.edges or .json)")->required();
        gen->callback([=]() {
            if (*family == "hyper_er" || *family == "chung_lu") {
                hv::HyperGraph h = (*family == "hyper_er")
                                       ? hv::gen_hyper_er(*n, *m, *k_mean, *seed)
                                       : hv::gen_chung_lu(*n, *weights, *seed);
                hv::write_hypergraph_json(h, *out);
                std::cout << "command=generate family=" << *family << " n=" << h.n
                          << " hyperedges=" << h.hyperedges.size() << " seed=" << *seed
                          << "\nout=" << *out << "\n";
                return;
            }
            hv::Graph g;
            if (*family == "er") g = hv::gen_er(*n, *p, *seed);
            else if (*family == "ba") g = hv::gen_ba(*n, *m, *seed);
            else if (*family == "sbm") g = hv::gen_sbm(*blocks, *p_in, *p_out, *seed);
            else if (*family == "star") g = hv::gen_star(*n);
            else if (*family == "path") g = hv::gen_path(*n);
            else if (*family == "cycle") g = hv::gen_cycle(*n);
            else if (*family == "complete") g = hv::gen_complete(*n);
            else if (*family == "tree") g = hv::gen_tree(*n, *seed);
            else if (*family == "unicyclic") g = hv::gen_unicyclic(*n, *seed);
            else throw hv::usage_error("unknown family '" + *family + "'");
            if (is_json_path(*out))
                hv::write_graph_json(hv::AttributedGraph{g, {}}, *out);
            else
                hv::write_edge_list(g, *out);
            std::cout << "command=generate family=" << *family << " n=" << g.n
                      << " edges=" << g.edges.size() << " seed=" << *seed << "\nout=" << *out
                      << "\n";
        });
    }

    // encode graph | attributed | hypergraph | neighborhood
    auto* cmd_encode = app.add_subcommand("encode", "encode a structure into one hypervector");
    cmd_encode->require_subcommand(1);
    {
        auto add_common = [](CLI::App* sub, auto in, auto cbp, auto out) {
            sub->add_option("--in", *in, "input structure file")->required();
            sub->add_option("--cb", *cbp, "codebook file")->required();
            sub->add_option("--out", *out, "output embedding file")->required();
        };
        auto finish = [](const hv::Embedding& emb, const std::string& out,
                         const char* what) {
            hv::save_embedding(emb, out);
            std::cout << "command=encode." << what << " mode=" << hv::mode_name(emb.mode)
                      << " d=" << emb.d << " n=" << emb.n_declared
                      << "\ncodebook_fingerprint=" << hex64(emb.codebook_fingerprint)
                      << "\nout=" << out << "\n";
        };

        auto* eg = cmd_encode->add_subcommand("graph", "plain graph (edge list or JSON)");
        auto in1 = std::make_shared<std::string>(), cb1 = std::make_shared<std::string>(),
             out1 = std::make_shared<std::string>();
        add_common(eg, in1, cb1, out1);
        eg->callback([=]() {
            hv::Codebook cb = hv::Codebook::load(*cb1);
            finish(hv::encode_graph(load_plain_graph(*in1), cb), *out1, "graph");
        });

        auto* ea = cmd_encode->add_subcommand("attributed", "graph JSON with per-vertex attrs");
        auto in2 = std::make_shared<std::string>(), cb2 = std::make_shared<std::string>(),
             out2 = std::make_shared<std::string>();
        add_common(ea, in2, cb2, out2);
        ea->callback([=]() {
            hv::AttributedGraph g = hv::parse_graph_json(*in2);
            hv::Codebook cb = hv::Codebook::load(*cb2);
            std::vector<std::string> missing;
            for (const auto& key : g.attrs)
                if (!key.empty() && !cb.has_attribute(key)) missing.push_back(key);
            if (!missing.empty()) cb = cb.with_attribute_keys(missing);
            finish(hv::encode_attributed(g, cb), *out2, "attributed");
        });

        auto* eh = cmd_encode->add_subcommand("hypergraph", "hypergraph JSON");
        auto in3 = std::make_shared<std::string>(), cb3 = std::make_shared<std::string>(),
             out3 = std::make_shared<std::string>();
        auto product = std::make_shared<bool>(false);
        add_common(eh, in3, cb3, out3);
        eh->add_flag("--product", *product,
                     "bind all members per hyperedge instead of keyed bundles");
        eh->callback([=]() {
            hv::HyperGraph h = hv::parse_hypergraph_json(*in3);
            hv::Codebook cb = hv::Codebook::load(*cb3);
            if (*product) {
                std::string warning;
                hv::Embedding emb = hv::encode_hypergraph_product(h, cb, &warning);
                if (!warning.empty()) std::cerr << "W_STABILITY: " << warning << "\n";
                finish(emb, *out3, "hypergraph");
            } else {
                finish(hv::encode_hypergraph(h, cb), *out3, "hypergraph");
            }
        });

        auto* en = cmd_encode->add_subcommand("neighborhood", "one vertex's induced subgraph");
        auto in4 = std::make_shared<std::string>(), cb4 = std::make_shared<std::string>(),
             out4 = std::make_shared<std::string>();
        auto vertex = std::make_shared<int>(0);
        add_common(en, in4, cb4, out4);
        en->add_option("--vertex", *vertex, "center vertex (1-based)")->required();
        en->callback([=]() {
            hv::Codebook cb = hv::Codebook::load(*cb4);
            finish(hv::encode_node_neighborhood(load_plain_graph(*in4), *vertex, cb), *out4,
                   "neighborhood");
        });
    }

    // reconstruct
    {
        auto* rec = app.add_subcommand("reconstruct", "recover size and edge set");
        auto in = std::make_shared<std::string>(), cbp = std::make_shared<std::string>();
        auto threshold = std::make_shared<double>(0.5);
        auto auto_threshold = std::make_shared<bool>(false);
        auto csv = std::make_shared<std::string>();
        rec->add_option("--in", *in, "embedding file")->required();
        rec->add_option("--cb", *cbp, "codebook file")->required();
        auto* topt = rec->add_option("--threshold", *threshold, "acceptance threshold")
                         ->capture_default_str();
        rec->add_flag("--auto-threshold", *auto_threshold,
                      "split the sorted scores at their largest gap")
            ->excludes(topt);
        rec->add_option("--csv", *csv, "also write per-pair scores to this CSV");
        rec->callback([=]() {
            hv::Embedding emb = hv::load_embedding(*in);
            hv::Codebook cb = hv::Codebook::load(*cbp);
            std::optional<double> th;
            if (!*auto_threshold) th = *threshold;
            hv::DecodingReport report = hv::reconstruct_graph(emb, cb, th);
            if (!csv->empty()) hv::write_reconstruction_csv(report, *csv);
            std::cout << "command=reconstruct mode=" << hv::mode_name(emb.mode)
                      << " codebook_fingerprint=" << hex64(emb.codebook_fingerprint)
                      << "\nrecovered_n=" << report.recovered_n << " size_low_confidence="
                      << (report.size_low_confidence ? "true" : "false")
                      << " threshold=" << std::setprecision(6) << report.threshold_used
                      << " accepted=" << report.accepted_edges.size() << "\n";
            for (const auto& [i, j] : report.accepted_edges)
                std::cout << "edge " << i << " " << j << "\n";
        });
    }

    // capacity
    {
        auto* cap = app.add_subcommand("capacity", "key-value recall sweep");
        auto d = std::make_shared<std::size_t>(4096);
        auto ns = std::make_shared<std::vector<int>>(std::vector<int>{10, 50, 100, 200, 300});
        auto trials = std::make_shared<int>(20);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto plain = std::make_shared<bool>(false);
        auto out = std::make_shared<std::string>();
        cap->add_option("--d", *d, "vector dimension")->capture_default_str();
        cap->add_option("--n", *ns, "pair counts")->delimiter(',')->capture_default_str();
        cap->add_option("--trials", *trials, "trials per n")->capture_default_str();
        cap->add_option("--seed", *seed, "sweep seed")->envname("HYPERVEC_SEED")
            ->capture_default_str();
        cap->add_flag("--plain", *plain, "plain Gaussian keys/values (no unitary projection)");
        cap->add_option("--out", *out, "CSV output (default: CSV on stdout)");
        cap->callback([=]() {
            hv::CapacityResult result = hv::capacity_sweep(*d, *ns, *trials, *seed, !*plain);
            if (out->empty()) {
                std::cout << "n,d,trial,min_correct_cs,max_wrong_cs,separation\n"
                          << std::setprecision(10);
                std::size_t pi = 0;
                for (const auto& r : result.records) {
                    while (pi < result.per_n.size() && result.per_n[pi].n != r.n) ++pi;
                    bool sep = pi < result.per_n.size() && result.per_n[pi].separation;
                    std::cout << r.n << "," << r.d << "," << r.trial << "," << r.min_correct_cs
                              << "," << r.max_wrong_cs << "," << (sep ? "true" : "false")
                              << "\n";
                }
            } else {
                hv::write_capacity_csv(result, *out);
                std::cout << "command=capacity d=" << *d << " trials=" << *trials
                          << " seed=" << *seed
                          << " unitary=" << (*plain ? "false" : "true") << "\n";
                emit_capacity_summary(result, std::cout);
                std::cout << "out=" << *out << "\n";
            }
        });
    }

    // probe
    {
        auto* pr = app.add_subcommand("probe", "fit a readout head on graph embeddings");
        auto task = std::make_shared<std::string>("num_nodes");
        auto family = std::make_shared<std::string>("er");
        auto d = std::make_shared<std::size_t>(1024);
        auto size = std::make_shared<std::size_t>(1000);
        auto n_min = std::make_shared<int>(5);
        auto n_max = std::make_shared<int>(15);
        auto er_c = std::make_shared<double>(1.5);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto args = std::make_shared<ProbeModelArgs>();
        auto out = std::make_shared<std::string>();
        pr->add_option("--task", *task, "num_nodes|num_edges|has_cycle|num_triangles|node_degree")
            ->capture_default_str();
        pr->add_option("--family", *family, "er|tree_unicyclic")->capture_default_str();
        pr->add_option("--d", *d, "vector dimension")->capture_default_str();
        pr->add_option("--size", *size, "graph count")->capture_default_str();
        pr->add_option("--n-min", *n_min, "smallest vertex count")->capture_default_str();
        pr->add_option("--n-max", *n_max, "largest vertex count")->capture_default_str();
        pr->add_option("--er-c", *er_c, "er density constant (p = c/n)")->capture_default_str();
        pr->add_option("--seed", *seed, "dataset seed")->envname("HYPERVEC_SEED")
            ->capture_default_str();
        pr->add_option("--model", args->model, "ridge|mlp|both")->capture_default_str();
        pr->add_option("--lambda", args->lambda, "ridge penalty")->capture_default_str();
        pr->add_option("--width", args->width, "mlp hidden width")->capture_default_str();
        pr->add_option("--epochs", args->epochs, "mlp training epochs")->capture_default_str();
        pr->add_option("--lr", args->lr, "mlp learning rate")->capture_default_str();
        pr->add_option("--out", *out, "metrics CSV output");
        pr->callback([=]() {
            hv::DatasetParams params;
            params.family = hv::parse_family(*family);
            params.n_min = *n_min;
            params.n_max = *n_max;
            params.er_c = *er_c;
            params.size = *size;
            params.seed = *seed;
            hv::Codebook cb =
                hv::build_codebook(*d, *seed, static_cast<std::size_t>(*n_max), 1);
            hv::LabeledEmbeddingSet ds = hv::build_dataset(hv::parse_task(*task), params, cb);
            std::vector<hv::MetricRow> rows = run_probe_models(ds, *d, *seed, *args);
            std::cout << "command=probe family=" << *family << " size=" << *size
                      << " n=[" << *n_min << "," << *n_max << "]\n";
            print_metric_rows(rows, std::cout);
            if (!out->empty()) {
                hv::write_metrics_csv(rows, *out);
                std::cout << "out=" << *out << "\n";
            }
        });
    }

    // dirac-check
    {
        auto* dc = app.add_subcommand("dirac-check", "spectral diagnostic on one graph");
        auto in = std::make_shared<std::string>();
        dc->add_option("--in", *in, "graph file (edge list or JSON)")->required();
        dc->callback([=]() {
            hv::Graph g = load_plain_graph(*in);
            hv::SpectralBundle b = hv::spectral_bundle(g);
            double lap_norm = b.laplacian.norm();
            double dd_rel = lap_norm > 0.0 ? (b.dirac * b.dirac - b.laplacian).norm() / lap_norm
                                           : (b.dirac * b.dirac).norm();
            Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(g.n, g.n);
            for (const auto& ek : b.coefficients) sum += ek;
            double coeff_gap = (sum - b.dirac).cwiseAbs().maxCoeff();
            std::cout << "command=dirac-check n=" << g.n << " m=" << g.edges.size() << "\n"
                      << std::setprecision(6) << std::scientific
                      << "dd_minus_laplacian_rel=" << dd_rel << "\n"
                      << "coeff_sum_minus_dirac_max=" << coeff_gap << "\n"
                      << std::defaultfloat
                      << "zero_eigenvalue_multiplicity=" << hv::zero_eigenvalue_multiplicity(b)
                      << "\nconnected_components=" << hv::connected_components(g) << "\n";
        });
    }

    // dim-sweep
    {
        auto* sw = app.add_subcommand("dim-sweep", "run one probe task across dimensions");
        auto task = std::make_shared<std::string>("num_nodes");
        auto family = std::make_shared<std::string>("er");
        auto size = std::make_shared<std::size_t>(1000);
        auto n_min = std::make_shared<int>(5);
        auto n_max = std::make_shared<int>(15);
        auto er_c = std::make_shared<double>(1.5);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto lambda = std::make_shared<double>(0.01);
        auto out = std::make_shared<std::string>();
        sw->add_option("--task", *task, "probe task")->capture_default_str();
        sw->add_option("--family", *family, "er|tree_unicyclic")->capture_default_str();
        sw->add_option("--size", *size, "graph count per dimension")->capture_default_str();
        sw->add_option("--n-min", *n_min, "smallest vertex count")->capture_default_str();
        sw->add_option("--n-max", *n_max, "largest vertex count")->capture_default_str();
        sw->add_option("--er-c", *er_c, "er density constant")->capture_default_str();
        sw->add_option("--seed", *seed, "dataset seed")->envname("HYPERVEC_SEED")
            ->capture_default_str();
        sw->add_option("--lambda", *lambda, "ridge penalty")->capture_default_str();
        sw->add_option("--out", *out, "metrics CSV output")->required();
        sw->callback([=]() {
            const std::vector<std::size_t> dims = {128, 256, 512, 1024, 2048};
            hv::ProbeTask t = hv::parse_task(*task);
            std::vector<hv::MetricRow> rows;
            for (std::size_t d : dims) {
                hv::DatasetParams params;
                params.family = hv::parse_family(*family);
                params.n_min = *n_min;
                params.n_max = *n_max;
                params.er_c = *er_c;
                params.size = *size;
                params.seed = *seed;
                hv::Codebook cb =
                    hv::build_codebook(d, *seed, static_cast<std::size_t>(*n_max), 1);
                hv::LabeledEmbeddingSet ds = hv::build_dataset(t, params, cb);
                ProbeModelArgs args;
                args.lambda = *lambda;
                for (auto& row : run_probe_models(ds, d, *seed, args)) rows.push_back(row);
            }
            bool classification = rows.front().metric_name == "test_accuracy";
            double best = rows.front().metric_value;
            for (const auto& r : rows)
                best = classification ? std::max(best, r.metric_value)
                                      : std::min(best, r.metric_value);
            std::vector<hv::MetricRow> relative;
            for (auto r : rows) {
                r.metric_name = "relative_to_best";
                r.metric_value = best != 0.0 ? r.metric_value / best : 0.0;
                relative.push_back(r);
            }
            print_metric_rows(rows, std::cout);
            for (const auto& r : relative) rows.push_back(r);
            hv::write_metrics_csv(rows, *out);
            std::cout << "out=" << *out << "\n";
        });
    }

    try {
        app.parse(argc, argv);
        std::ostringstream argline;
        for (int i = 0; i < argc; ++i) argline << (i ? " " : "") << argv[i];
        log.note("ok: " + argline.str());
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "E_USAGE: " << e.what() << "\n";
        return 1;
    } catch (const hv::usage_error& e) {
        std::cerr << "E_USAGE: " << e.what() << "\n";
        log.note(std::string("usage error: ") + e.what());
        return 1;
    } catch (const hv::io_error& e) {
        std::cerr << "E_IO: " << e.what() << "\n";
        log.note(std::string("io error: ") + e.what());
        return 2;
    } catch (const hv::validation_error& e) {
        std::cerr << "E_VALIDATION: " << e.what() << "\n";
        log.note(std::string("validation error: ") + e.what());
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "E_INTERNAL: " << e.what() << "\n";
        log.note(std::string("internal error: ") + e.what());
        return 4;
    }
}
