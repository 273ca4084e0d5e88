// Test-only oracles, deliberately independent of the library code paths they
// are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace oracles {

/// Brute-force Zipf partial sum: sum of j^-a for j = 1..C.
inline double zipf_partial_sum(std::size_t C, double a) {
    double s = 0.0;
    for (std::size_t j = 1; j <= C; ++j) s += std::pow(static_cast<double>(j), -a);
    return s;
}

/// Cyclic Jacobi eigenvalue iteration for small symmetric matrices, kept
/// separate from the Eigen-based implementation under test. Returns the
/// spectrum in ascending order.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> m) {
    const std::size_t n = m.size();
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m[i][j] * m[i][j];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(m[p][q]) < 1e-18) continue;
                const double theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m[k][p], mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m[p][k], mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = m[i][i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

/// Direct transliteration of the three learning recursions, used to check
/// update_learner on random trajectories.
struct RefLearner {
    std::vector<double> v, r, pi;
    std::uint64_t t = 1;
    double beta = 20.0;
};

inline void ref_update(RefLearner& s, std::size_t played, std::optional<double> util,
                       double e_alpha, double e_gamma, double e_zeta) {
    const double td = static_cast<double>(s.t);
    const double a = std::pow(td, -e_alpha);
    const double g = std::pow(td, -e_gamma);
    const double z = std::pow(td, -e_zeta);
    const std::size_t n = s.v.size();

    std::vector<double> rplus(n);
    double mx = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        rplus[k] = s.r[k] > 0.0 ? s.r[k] : 0.0;
        mx = std::max(mx, rplus[k]);
    }
    std::vector<double> lam(n);
    double tot = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        lam[k] = std::exp(s.beta * (rplus[k] - mx));
        tot += lam[k];
    }
    for (std::size_t k = 0; k < n; ++k) lam[k] /= tot;

    if (util) {
        const std::vector<double> v_pre = s.v;
        s.v[played] = v_pre[played] + a * (*util - v_pre[played]);
        for (std::size_t k = 0; k < n; ++k) s.r[k] = s.r[k] + g * (v_pre[k] - *util - s.r[k]);
    }
    for (std::size_t k = 0; k < n; ++k) s.pi[k] = s.pi[k] + z * (lam[k] - s.pi[k]);
    ++s.t;
}

/// Best injective cluster-to-type matching accuracy.
inline double label_accuracy(const std::vector<int>& labels, const std::vector<int>& types,
                             int num_clusters, int num_types) {
    std::vector<std::vector<int>> counts(static_cast<std::size_t>(std::max(num_clusters, 1)),
                                         std::vector<int>(static_cast<std::size_t>(num_types), 0));
    int labeled = 0;
    for (std::size_t u = 0; u < labels.size(); ++u) {
        if (labels[u] >= 0) {
            ++counts[static_cast<std::size_t>(labels[u])][static_cast<std::size_t>(types[u])];
            ++labeled;
        }
    }
    (void)labeled;
    std::vector<int> perm(static_cast<std::size_t>(std::max(num_clusters, num_types)));
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    int best = 0;
    do {
        int matched = 0;
        for (int type = 0; type < num_types; ++type) {
            const int cluster = perm[static_cast<std::size_t>(type)];
            if (cluster < num_clusters) matched += counts[static_cast<std::size_t>(cluster)]
                                                         [static_cast<std::size_t>(type)];
        }
        best = std::max(best, matched);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(labels.size());
}

}  // namespace oracles
