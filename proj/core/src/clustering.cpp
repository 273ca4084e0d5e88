#include "cellcache/clustering.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cellcache/errors.hpp"

namespace cellcache {

double cosine_similarity(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = static_cast<double>(a[i]);
        const double y = static_cast<double>(b[i]);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

Eigen::MatrixXd build_similarity(const std::vector<RequestHistogram>& histograms) {
    const std::size_t n = histograms.size();
    Eigen::MatrixXd s(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = cosine_similarity(histograms[i], histograms[j]);
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

SpectralDecomposition spectral_decompose(const Eigen::MatrixXd& similarity) {
    const Eigen::Index n = similarity.rows();
    SpectralDecomposition out;
    out.degree = similarity.rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (out.degree(i) == 0.0) out.degree(i) = 1.0;  // isolated-user guard
    }
    out.laplacian = -similarity;
    out.laplacian.diagonal() += out.degree;

    const Eigen::VectorXd dinv_sqrt = out.degree.cwiseSqrt().cwiseInverse();
    out.normalized_laplacian =
        dinv_sqrt.asDiagonal() * out.laplacian * dinv_sqrt.asDiagonal();
    // Symmetrize away round-off before the self-adjoint solve.
    out.normalized_laplacian = 0.5 * (out.normalized_laplacian +
                                      out.normalized_laplacian.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(out.normalized_laplacian);
    if (solver.info() != Eigen::Success) {
        throw EigensolverFailure("eigendecomposition of the normalized Laplacian failed");
    }
    out.eigenvalues = solver.eigenvalues();
    out.eigenvectors = solver.eigenvectors();
    return out;
}

std::size_t choose_k(const Eigen::VectorXd& eigenvalues, const ClusteringConfig& cfg) {
    const std::size_t n = static_cast<std::size_t>(eigenvalues.size());
    std::size_t k_max = cfg.k_max == 0 ? n / 2 : cfg.k_max;
    k_max = std::min(k_max, n - 1);
    if (k_max < cfg.k_min) return std::max<std::size_t>(k_max, 1);

    // 1-based indexing: gap_k = lambda_{k+1} - lambda_k. Ties, including
    // round-off-level ones, go to the smallest K.
    const auto gap_at = [&eigenvalues](std::size_t k) {
        return eigenvalues(static_cast<Eigen::Index>(k)) -
               eigenvalues(static_cast<Eigen::Index>(k - 1));
    };
    double best_gap = -1.0;
    for (std::size_t k = cfg.k_min; k <= k_max; ++k) best_gap = std::max(best_gap, gap_at(k));
    for (std::size_t k = cfg.k_min; k <= k_max; ++k) {
        if (gap_at(k) >= best_gap - 1e-12) return k;
    }
    return cfg.k_min;
}

namespace {

double sq_dist(const Eigen::RowVectorXd& a, const Eigen::RowVectorXd& b) {
    return (a - b).squaredNorm();
}

struct KmeansRun {
    std::vector<int> labels;
    double wcss = std::numeric_limits<double>::infinity();
};

KmeansRun kmeans_once(const Eigen::MatrixXd& rows, std::size_t k, Rng& rng,
                      std::size_t max_iters) {
    const std::size_t n = static_cast<std::size_t>(rows.rows());
    Eigen::MatrixXd centroids(k, rows.cols());

    // k-means++ seeding.
    std::vector<double> min_d2(n, std::numeric_limits<double>::infinity());
    std::size_t first = rng.uniform_index(n);
    centroids.row(0) = rows.row(static_cast<Eigen::Index>(first));
    for (std::size_t c = 1; c < k; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            min_d2[i] = std::min(min_d2[i], sq_dist(rows.row(i), centroids.row(c - 1)));
        }
        const double total = std::accumulate(min_d2.begin(), min_d2.end(), 0.0);
        std::size_t pick;
        if (total > 0.0) {
            pick = sample_discrete(min_d2, rng.uniform());
        } else {
            pick = rng.uniform_index(n);
        }
        centroids.row(static_cast<Eigen::Index>(c)) = rows.row(static_cast<Eigen::Index>(pick));
    }

    std::vector<int> labels(n, 0);
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double bd = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < k; ++c) {
                const double d = sq_dist(rows.row(i), centroids.row(c));
                if (d < bd) { bd = d; best = static_cast<int>(c); }
            }
            if (labels[i] != best) { labels[i] = best; changed = true; }
        }

        Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, rows.cols());
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums.row(labels[i]) += rows.row(i);
            ++counts[static_cast<std::size_t>(labels[i])];
        }
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] > 0) {
                centroids.row(c) = sums.row(c) / static_cast<double>(counts[c]);
            } else {
                // Re-seed an empty cluster to the point farthest from its centroid.
                std::size_t far = 0;
                double fd = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = sq_dist(rows.row(i), centroids.row(labels[i]));
                    if (d > fd) { fd = d; far = i; }
                }
                centroids.row(c) = rows.row(static_cast<Eigen::Index>(far));
                changed = true;
            }
        }
        if (!changed && iter > 0) break;
    }

    KmeansRun run;
    run.labels = labels;
    run.wcss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        run.wcss += sq_dist(rows.row(i), centroids.row(labels[i]));
    }
    return run;
}

}  // namespace

std::vector<int> kmeans(const Eigen::MatrixXd& rows, std::size_t k, Rng& rng,
                        const ClusteringConfig& cfg) {
    const std::size_t n = static_cast<std::size_t>(rows.rows());
    if (k == 0 || k > n) throw InvalidConfig("kmeans requires 1 <= k <= number of rows");
    KmeansRun best;
    for (std::size_t r = 0; r < std::max<std::size_t>(cfg.kmeans_restarts, 1); ++r) {
        Rng restart_rng = rng.child(r);
        KmeansRun run = kmeans_once(rows, k, restart_rng, cfg.kmeans_max_iters);
        if (run.wcss < best.wcss) best = std::move(run);
    }
    return best.labels;
}

ClusterResult cluster_users(const std::vector<RequestHistogram>& histograms,
                            const ClusteringConfig& cfg, Rng& rng) {
    const std::size_t total = histograms.size();
    ClusterResult result;
    result.labels.assign(total, -1);

    std::vector<std::size_t> active;
    for (std::size_t u = 0; u < total; ++u) {
        const auto& h = histograms[u];
        if (std::any_of(h.begin(), h.end(), [](std::uint64_t c) { return c > 0; })) {
            active.push_back(u);
        }
    }
    if (active.size() < 2) {
        // Not enough observed users to cluster; everyone falls back to RSSI.
        return result;
    }

    std::vector<RequestHistogram> sub;
    sub.reserve(active.size());
    for (std::size_t u : active) sub.push_back(histograms[u]);

    const Eigen::MatrixXd s = build_similarity(sub);
    const SpectralDecomposition dec = spectral_decompose(s);
    const std::size_t k = choose_k(dec.eigenvalues, cfg);
    const Eigen::MatrixXd embedding =
        dec.eigenvectors.leftCols(static_cast<Eigen::Index>(k));
    Rng kmeans_rng = rng.child(0x6b6d65616e73ull);
    const std::vector<int> labels = kmeans(embedding, k, kmeans_rng, cfg);

    result.num_clusters = k;
    for (std::size_t i = 0; i < active.size(); ++i) {
        result.labels[active[i]] = labels[i];
    }
    return result;
}

namespace {

std::vector<std::vector<double>> cluster_centroids(std::size_t k,
                                                   const std::vector<int>& labels,
                                                   const std::vector<RequestHistogram>& histograms) {
    const std::size_t c_count = histograms.empty() ? 0 : histograms.front().size();
    std::vector<std::vector<double>> centroids(k, std::vector<double>(c_count, 0.0));
    std::vector<std::size_t> members(k, 0);
    for (std::size_t u = 0; u < labels.size(); ++u) {
        if (labels[u] < 0) continue;
        const auto cluster = static_cast<std::size_t>(labels[u]);
        ++members[cluster];
        for (std::size_t c = 0; c < c_count; ++c) {
            centroids[cluster][c] += static_cast<double>(histograms[u][c]);
        }
    }
    for (std::size_t g = 0; g < k; ++g) {
        if (members[g] > 0) {
            for (double& v : centroids[g]) v /= static_cast<double>(members[g]);
        }
    }
    return centroids;
}

double centroid_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

Association associate_clusters(const ClusterResult& clusters,
                               const std::vector<RequestHistogram>& histograms,
                               std::span<const Vec2> sue_positions, const NetworkGeometry& g) {
    const std::size_t B = g.num_scbs();
    if (B == 0) throw InvalidConfig("association requires at least one SCBS");

    std::vector<int> labels = clusters.labels;
    std::size_t k = clusters.num_clusters;

    // Merge the two most content-similar clusters until they fit the SCBSs.
    while (k > B) {
        const auto centroids = cluster_centroids(k, labels, histograms);
        double best = -2.0;
        std::size_t bi = 0, bj = 1;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) {
                const double cs = centroid_cosine(centroids[i], centroids[j]);
                if (cs > best) { best = cs; bi = i; bj = j; }
            }
        }
        for (int& label : labels) {
            if (label == static_cast<int>(bj)) label = static_cast<int>(bi);
            else if (label > static_cast<int>(bj)) --label;
        }
        --k;
    }

    // Sum of member RSSI for every (cluster, SCBS) pair.
    std::vector<std::vector<double>> score(k, std::vector<double>(B, 0.0));
    for (std::size_t u = 0; u < labels.size(); ++u) {
        if (labels[u] < 0) continue;
        for (std::size_t b = 0; b < B; ++b) {
            score[static_cast<std::size_t>(labels[u])][b] +=
                rssi_dbm(g.bs_list[b + 1], sue_positions[u]);
        }
    }

    std::vector<std::size_t> scbs_of_cluster(k, 0);
    if (B <= 8) {
        std::vector<std::size_t> perm(B);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        double best = -std::numeric_limits<double>::infinity();
        std::vector<std::size_t> best_perm = perm;
        do {
            double total = 0.0;
            for (std::size_t c = 0; c < k; ++c) total += score[c][perm[c]];
            if (total > best) { best = total; best_perm = perm; }
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (std::size_t c = 0; c < k; ++c) scbs_of_cluster[c] = best_perm[c] + 1;
    } else {
        // Greedy fallback: biggest cluster first, best remaining SCBS.
        std::vector<std::size_t> cluster_size(k, 0);
        for (int label : labels) if (label >= 0) ++cluster_size[static_cast<std::size_t>(label)];
        std::vector<std::size_t> order(k);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return cluster_size[a] > cluster_size[b]; });
        std::vector<bool> used(B, false);
        for (std::size_t c : order) {
            std::size_t pick = 0;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t b = 0; b < B; ++b) {
                if (!used[b] && score[c][b] > best) { best = score[c][b]; pick = b; }
            }
            used[pick] = true;
            scbs_of_cluster[c] = pick + 1;
        }
    }

    Association assoc;
    assoc.scbs_of_sue.resize(sue_positions.size());
    for (std::size_t u = 0; u < sue_positions.size(); ++u) {
        if (u < labels.size() && labels[u] >= 0) {
            assoc.scbs_of_sue[u] = scbs_of_cluster[static_cast<std::size_t>(labels[u])];
        } else {
            // Never-seen users bypass clustering.
            std::size_t best_b = 1;
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t b = 0; b < B; ++b) {
                const double r = rssi_dbm(g.bs_list[b + 1], sue_positions[u]);
                if (r > best) { best = r; best_b = b + 1; }
            }
            assoc.scbs_of_sue[u] = best_b;
        }
    }
    return assoc;
}

Association associate_by_rssi(std::span<const Vec2> sue_positions, const NetworkGeometry& g) {
    const std::size_t B = g.num_scbs();
    if (B == 0) throw InvalidConfig("association requires at least one SCBS");
    Association assoc;
    assoc.scbs_of_sue.resize(sue_positions.size());
    for (std::size_t u = 0; u < sue_positions.size(); ++u) {
        std::size_t best_b = 1;
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t b = 0; b < B; ++b) {
            const double r = rssi_dbm(g.bs_list[b + 1], sue_positions[u]);
            if (r > best) { best = r; best_b = b + 1; }
        }
        assoc.scbs_of_sue[u] = best_b;
    }
    return assoc;
}

}  // namespace cellcache
