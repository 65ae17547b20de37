#include "hypervec/probe.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "hypervec/decoder.hpp"
#include "hypervec/encoder.hpp"
#include "hypervec/errors.hpp"
#include "hypervec/rng.hpp"

namespace hypervec {

namespace {

/// Loss and gradients shared by training and the finite-difference check.
struct MlpGradients {
    Eigen::MatrixXd w1;
    Eigen::VectorXd b1;
    Eigen::VectorXd w2;
    double b2 = 0.0;
    double loss = 0.0;
};

MlpGradients mlp_loss_and_gradients(const MlpModel& m, const Eigen::MatrixXd& x,
                                    const Eigen::VectorXd& y) {
    const double inv_m = 1.0 / static_cast<double>(x.rows());
    Eigen::MatrixXd pre = (x * m.w1.transpose()).rowwise() + m.b1.transpose();
    Eigen::MatrixXd z = pre.array().tanh().matrix();
    Eigen::VectorXd pred = (z * m.w2).array() + m.b2;
    Eigen::VectorXd r = pred - y;

    MlpGradients g;
    g.loss = r.squaredNorm() * inv_m;
    Eigen::VectorXd dpred = 2.0 * inv_m * r;
    g.w2 = z.transpose() * dpred;
    g.b2 = dpred.sum();
    Eigen::MatrixXd dz =
        (dpred * m.w2.transpose()).array() * (1.0 - z.array().square());
    g.w1 = dz.transpose() * x;
    g.b1 = dz.colwise().sum().transpose();
    return g;
}

double mlp_loss(const MlpModel& m, const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    Eigen::MatrixXd pre = (x * m.w1.transpose()).rowwise() + m.b1.transpose();
    Eigen::MatrixXd z = pre.array().tanh().matrix();
    Eigen::VectorXd pred = (z * m.w2).array() + m.b2;
    return (pred - y).squaredNorm() / static_cast<double>(x.rows());
}

MlpModel mlp_init(int d, int width, std::uint64_t seed) {
    counter_rng rng(seed, stream_role::mlp_init, 0);
    MlpModel m;
    m.w1.resize(width, d);
    double s1 = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < width; ++i)
        for (int j = 0; j < d; ++j) m.w1(i, j) = rng.next_gaussian() * s1;
    m.b1 = Eigen::VectorXd::Zero(width);
    m.w2.resize(width);
    double s2 = 1.0 / std::sqrt(static_cast<double>(width));
    for (int i = 0; i < width; ++i) m.w2(i) = rng.next_gaussian() * s2;
    m.b2 = 0.0;
    return m;
}

}  // namespace

const char* task_name(ProbeTask task) {
    switch (task) {
        case ProbeTask::num_nodes: return "num_nodes";
        case ProbeTask::num_edges: return "num_edges";
        case ProbeTask::has_cycle: return "has_cycle";
        case ProbeTask::num_triangles: return "num_triangles";
        case ProbeTask::node_degree: return "node_degree";
    }
    throw validation_error("unknown probe task value");
}

ProbeTask parse_task(const std::string& name) {
    for (auto t : {ProbeTask::num_nodes, ProbeTask::num_edges, ProbeTask::has_cycle,
                   ProbeTask::num_triangles, ProbeTask::node_degree})
        if (name == task_name(t)) return t;
    throw validation_error("unknown probe task '" + name + "'");
}

const char* family_name(GraphFamily family) {
    switch (family) {
        case GraphFamily::er: return "er";
        case GraphFamily::tree_unicyclic: return "tree_unicyclic";
    }
    throw validation_error("unknown graph family value");
}

GraphFamily parse_family(const std::string& name) {
    for (auto f : {GraphFamily::er, GraphFamily::tree_unicyclic})
        if (name == family_name(f)) return f;
    throw validation_error("unknown graph family '" + name + "'");
}

LabeledEmbeddingSet build_dataset(ProbeTask task, const DatasetParams& params,
                                  const Codebook& cb) {
    if (params.size < 5)
        throw validation_error("build_dataset: need at least 5 graphs for an 80/20 split");
    if (params.n_min < 1 || params.n_max < params.n_min)
        throw validation_error("build_dataset: vertex range is empty");
    if (params.family == GraphFamily::tree_unicyclic && params.n_min < 3)
        throw validation_error("build_dataset: unicyclic graphs need n >= 3");
    if (static_cast<std::size_t>(params.n_max) > cb.n_max())
        throw validation_error("build_dataset: n_max exceeds codebook capacity");

    const std::size_t total = params.size;
    const int span = params.n_max - params.n_min + 1;
    Eigen::MatrixXd x(total, cb.dim());
    Eigen::VectorXd y(total);

#pragma omp parallel for schedule(dynamic)
    for (long long idx = 0; idx < static_cast<long long>(total); ++idx) {
        counter_rng meta(params.seed, stream_role::probe, static_cast<std::uint64_t>(idx));
        int n = params.n_min + static_cast<int>(meta.next_uniform() * span) % span;
        std::uint64_t sub_seed = meta.next_u64();
        Graph g;
        if (params.family == GraphFamily::er)
            g = gen_er(n, std::min(1.0, params.er_c / n), sub_seed);
        else
            g = (idx % 2 == 0) ? gen_tree(n, sub_seed) : gen_unicyclic(n, sub_seed);

        Embedding emb;
        double label = 0.0;
        switch (task) {
            case ProbeTask::num_nodes:
                emb = encode_graph(g, cb);
                label = g.n;
                break;
            case ProbeTask::num_edges:
                emb = encode_graph(g, cb);
                label = static_cast<double>(g.edges.size());
                break;
            case ProbeTask::has_cycle:
                emb = encode_graph(g, cb);
                label = has_cycle(g) ? 1.0 : -1.0;
                break;
            case ProbeTask::num_triangles:
                emb = encode_graph(g, cb);
                label = count_triangles(g);
                break;
            case ProbeTask::node_degree: {
                int v = 1 + static_cast<int>(meta.next_uniform() * g.n) % g.n;
                emb = encode_node_neighborhood(g, v, cb);
                label = degree(g, v);
                break;
            }
        }
        for (std::size_t k = 0; k < cb.dim(); ++k) x(idx, static_cast<int>(k)) = emb.vec.v[k];
        y(idx) = label;
    }

    const std::size_t n_test = total / 5;
    const std::size_t n_train = total - n_test;
    LabeledEmbeddingSet ds;
    ds.task = task;
    ds.classification = (task == ProbeTask::has_cycle);
    ds.x_train = x.topRows(n_train);
    ds.y_train = y.head(n_train);
    ds.x_test = x.bottomRows(n_test);
    ds.y_test = y.tail(n_test);
    return ds;
}

RidgeModel ridge_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda) {
    if (lambda <= 0.0) throw validation_error("ridge_fit: lambda must be positive");
    if (x.rows() != y.size() || x.rows() == 0)
        throw validation_error("ridge_fit: row/target count mismatch");
    Eigen::RowVectorXd x_mean = x.colwise().mean();
    Eigen::MatrixXd xc = x.rowwise() - x_mean;
    double y_mean = y.mean();
    Eigen::VectorXd yc = y.array() - y_mean;

    Eigen::MatrixXd a = xc.transpose() * xc;
    a.diagonal().array() += lambda;
    RidgeModel model;
    model.w = a.ldlt().solve(xc.transpose() * yc);
    model.bias = y_mean - x_mean.dot(model.w);
    return model;
}

Eigen::VectorXd ridge_predict(const RidgeModel& model, const Eigen::MatrixXd& x) {
    if (x.cols() != model.w.size())
        throw validation_error("ridge_predict: dimension mismatch");
    return (x * model.w).array() + model.bias;
}

MlpModel mlp_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const MlpConfig& cfg) {
    if (cfg.width < 1) throw validation_error("mlp_fit: width must be >= 1");
    if (cfg.epochs < 1) throw validation_error("mlp_fit: epochs must be >= 1");
    if (cfg.lr <= 0.0) throw validation_error("mlp_fit: learning rate must be positive");
    if (x.rows() != y.size() || x.rows() == 0)
        throw validation_error("mlp_fit: row/target count mismatch");

    MlpModel m = mlp_init(static_cast<int>(x.cols()), cfg.width, cfg.seed);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        MlpGradients g = mlp_loss_and_gradients(m, x, y);
        if (!std::isfinite(g.loss))
            throw validation_error("mlp_fit: training diverged (loss is not finite at epoch " +
                                   std::to_string(epoch) + "; lower the learning rate)");
        m.w1 -= cfg.lr * g.w1;
        m.b1 -= cfg.lr * g.b1;
        m.w2 -= cfg.lr * g.w2;
        m.b2 -= cfg.lr * g.b2;
    }
    return m;
}

Eigen::VectorXd mlp_predict(const MlpModel& model, const Eigen::MatrixXd& x) {
    if (x.cols() != model.w1.cols())
        throw validation_error("mlp_predict: dimension mismatch");
    Eigen::MatrixXd pre = (x * model.w1.transpose()).rowwise() + model.b1.transpose();
    Eigen::MatrixXd z = pre.array().tanh().matrix();
    return (z * model.w2).array() + model.b2;
}

double mlp_gradient_check(int d, int width, int samples, std::uint64_t seed) {
    counter_rng rng(seed, stream_role::mlp_init, 1);
    Eigen::MatrixXd x(samples, d);
    Eigen::VectorXd y(samples);
    for (int i = 0; i < samples; ++i) {
        for (int j = 0; j < d; ++j) x(i, j) = rng.next_gaussian();
        y(i) = rng.next_gaussian();
    }
    MlpModel m = mlp_init(d, width, seed);
    MlpGradients g = mlp_loss_and_gradients(m, x, y);

    auto check_one = [&](double* param, double analytic) {
        const double h = 1e-6 * std::max(1.0, std::abs(*param));
        const double saved = *param;
        *param = saved + h;
        double up = mlp_loss(m, x, y);
        *param = saved - h;
        double down = mlp_loss(m, x, y);
        *param = saved;
        double numeric = (up - down) / (2.0 * h);
        double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
        return std::abs(analytic - numeric) / denom;
    };

    double worst = 0.0;
    for (int i = 0; i < m.w1.rows(); ++i)
        for (int j = 0; j < m.w1.cols(); ++j)
            worst = std::max(worst, check_one(&m.w1(i, j), g.w1(i, j)));
    for (int i = 0; i < m.b1.size(); ++i)
        worst = std::max(worst, check_one(&m.b1(i), g.b1(i)));
    for (int i = 0; i < m.w2.size(); ++i)
        worst = std::max(worst, check_one(&m.w2(i), g.w2(i)));
    worst = std::max(worst, check_one(&m.b2, g.b2));
    return worst;
}

double mean_squared_error(const Eigen::VectorXd& pred, const Eigen::VectorXd& y) {
    if (pred.size() != y.size() || pred.size() == 0)
        throw validation_error("mean_squared_error: size mismatch");
    return (pred - y).squaredNorm() / static_cast<double>(y.size());
}

double sign_accuracy(const Eigen::VectorXd& pred, const Eigen::VectorXd& y) {
    if (pred.size() != y.size() || pred.size() == 0)
        throw validation_error("sign_accuracy: size mismatch");
    int hits = 0;
    for (int i = 0; i < pred.size(); ++i) {
        double s = pred(i) >= 0.0 ? 1.0 : -1.0;
        if (s == y(i)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(y.size());
}

void write_metrics_csv(const std::vector<MetricRow>& rows, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open '" + path + "' for writing");
    os << "task,d,model,params,metric_name,metric_value,seed\n";
    os << std::setprecision(10);
    for (const auto& r : rows)
        os << r.task << "," << r.d << "," << r.model << "," << r.params << "," << r.metric_name
           << "," << r.metric_value << "," << r.seed << "\n";
    if (!os) throw io_error("write failure on '" + path + "'");
}

}  // namespace hypervec
