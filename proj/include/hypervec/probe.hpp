#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hypervec/codebook.hpp"
#include "hypervec/graph.hpp"

namespace hypervec {

enum class ProbeTask { num_nodes, num_edges, has_cycle, num_triangles, node_degree };

const char* task_name(ProbeTask task);
ProbeTask parse_task(const std::string& name);

enum class GraphFamily {
    /// ER graphs with p = er_c / n, which keeps cycle prevalence roughly
    /// level across n.
    er,
    /// Alternating random trees (no cycle) and unicyclic graphs (tree plus
    /// one extra edge): an exactly class-balanced has_cycle family whose
    /// positives differ from negatives by a single edge slot.
    tree_unicyclic,
};

const char* family_name(GraphFamily family);
GraphFamily parse_family(const std::string& name);

struct DatasetParams {
    GraphFamily family = GraphFamily::er;
    int n_min = 5;
    int n_max = 15;
    double er_c = 1.5;
    std::size_t size = 1000;
    std::uint64_t seed = 0;
};

/// Embedded graphs with task labels, split 80/20 in generation order
/// (graphs are i.i.d., so no shuffle is needed).
struct LabeledEmbeddingSet {
    Eigen::MatrixXd x_train, x_test;
    Eigen::VectorXd y_train, y_test;
    ProbeTask task = ProbeTask::num_nodes;
    bool classification = false;  ///< targets are +-1 with sign readout
};

/// Generate graphs from per-index substreams, label them with the exact
/// combinatorial oracles, and encode them (whole-graph encoding; the
/// node_degree task encodes the neighborhood of a random vertex instead).
LabeledEmbeddingSet build_dataset(ProbeTask task, const DatasetParams& params,
                                  const Codebook& cb);

struct RidgeModel {
    Eigen::VectorXd w;
    double bias = 0.0;
};

/// Closed-form ridge on centered data: w = (Xc^T Xc + lambda I)^-1 Xc^T yc,
/// bias = y_mean - x_mean . w. lambda must be positive.
RidgeModel ridge_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda);
Eigen::VectorXd ridge_predict(const RidgeModel& model, const Eigen::MatrixXd& x);

struct MlpConfig {
    int width = 16;
    int epochs = 200;
    double lr = 0.05;
    std::uint64_t seed = 0;
};

/// One tanh hidden layer, scalar output: pred = w2 . tanh(W1 x + b1) + b2.
struct MlpModel {
    Eigen::MatrixXd w1;  ///< width x d
    Eigen::VectorXd b1;  ///< width
    Eigen::VectorXd w2;  ///< width
    double b2 = 0.0;

    std::size_t parameter_count() const {
        return static_cast<std::size_t>(w1.size() + b1.size() + w2.size()) + 1;
    }
};

/// Full-batch gradient descent on mean squared error. Deterministic given
/// (seed, config): fixed init stream, single-threaded reductions. Throws
/// when the loss turns non-finite (divergence).
MlpModel mlp_fit(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const MlpConfig& cfg);
Eigen::VectorXd mlp_predict(const MlpModel& model, const Eigen::MatrixXd& x);

/// Compare analytic gradients against central finite differences on a small
/// random instance; returns the largest per-parameter relative error.
double mlp_gradient_check(int d, int width, int samples, std::uint64_t seed);

double mean_squared_error(const Eigen::VectorXd& pred, const Eigen::VectorXd& y);
/// Fraction of sign agreements against +-1 targets (sign(0) counts as +1).
double sign_accuracy(const Eigen::VectorXd& pred, const Eigen::VectorXd& y);

struct MetricRow {
    std::string task;
    std::size_t d = 0;
    std::string model;
    std::size_t params = 0;
    std::string metric_name;
    double metric_value = 0.0;
    std::uint64_t seed = 0;
};

/// CSV: "task,d,model,params,metric_name,metric_value,seed".
void write_metrics_csv(const std::vector<MetricRow>& rows, const std::string& path);

}  // namespace hypervec
