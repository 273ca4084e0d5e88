#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "cellcache/radio.hpp"
#include "cellcache/rng.hpp"

namespace cellcache {

/// Per-user request counts over the content catalog.
using RequestHistogram = std::vector<std::uint64_t>;

/// Cosine similarity in [0, 1]; a zero vector is similar to nothing (0).
double cosine_similarity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

/// Symmetric user-by-user similarity matrix of request histograms.
Eigen::MatrixXd build_similarity(const std::vector<RequestHistogram>& histograms);

struct SpectralDecomposition {
    Eigen::VectorXd degree;
    Eigen::MatrixXd laplacian;
    Eigen::MatrixXd normalized_laplacian;
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // columns match eigenvalues
};

/// Degree matrix, unnormalized Laplacian L = D - S, symmetric normalization
/// D^-1/2 L D^-1/2 and its full eigendecomposition. Zero-degree rows (users
/// with no similarity to anyone) get a unit degree so the scaling stays
/// finite.
SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& similarity);

struct ClusteringConfig {
    std::size_t k_min = 2;
    std::size_t k_max = 0;  // 0 selects floor(U/2)
    std::size_t kmeans_restarts = 10;
    std::size_t kmeans_max_iters = 100;
};

/// Eigengap heuristic: the K in [k_min, k_max] with the largest gap
/// lambda_{K+1} - lambda_K (1-based indices); ties go to the smallest K.
std::size_t choose_k(const Eigen::VectorXd& eigenvalues, const ClusteringConfig& cfg);

/// Lloyd's algorithm with k-means++ seeding, best of kmeans_restarts restarts
/// by within-cluster sum of squares. Empty clusters are re-seeded to the
/// point farthest from its centroid. Deterministic given the rng.
std::vector<int> kmeans(const Eigen::MatrixXd& rows, std::size_t k, Rng& rng,
                        const ClusteringConfig& cfg);

struct ClusterResult {
    std::size_t num_clusters = 0;
    std::vector<int> labels;  // -1 marks users left out (empty histograms)
};

/// Full pipeline: similarity, spectral decomposition, eigengap K, k-means on
/// the rows of the K smallest eigenvectors (no row re-normalization). Users
/// with empty histograms are excluded and labeled -1.
ClusterResult cluster_users(const std::vector<RequestHistogram>& histograms,
                            const ClusteringConfig& cfg, Rng& rng);

struct Association {
    std::vector<std::size_t> scbs_of_sue;  // values in 1..B (base-station ids)
};

/// Clusters merge pairwise (highest centroid cosine first) until at most B
/// remain, then each cluster is matched to a distinct SCBS maximizing the
/// sum of member RSSI (exhaustive for B <= 8, greedy beyond). Unlabeled
/// users fall back to their highest-RSSI SCBS.
Association associate_clusters(const ClusterResult& clusters,
                               const std::vector<RequestHistogram>& histograms,
                               std::span<const Vec2> sue_positions, const NetworkGeometry& g);

/// Baseline association: every SUE to its highest-RSSI SCBS.
Association associate_by_rssi(std::span<const Vec2> sue_positions, const NetworkGeometry& g);

}  // namespace cellcache
