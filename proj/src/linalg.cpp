#include "paley/linalg.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <thread>
#include <stdexcept>

extern "C" void openblas_set_num_threads(int);

namespace paley {

namespace {

void check_info(int info, const char* what) {
    if (info != 0) throw std::runtime_error(std::string(what) + " failed, info != 0");
}

// Threaded BLAS only pays off on large factorizations; the busy-wait worker
// threads dominate small eigensolves otherwise.
void set_blas_threads(int64_t n) {
    static int hw = (int)std::max(1u, std::thread::hardware_concurrency());
    openblas_set_num_threads(n >= 512 ? hw : 1);
}

constexpr int kEigenCutoff = 128;

}  // namespace

VectorXd sym_eigenvalues(const MatrixXd& a) {
    if (a.rows() <= kEigenCutoff) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(a, Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }
    set_blas_threads(a.rows());
    MatrixXd work = a;
    VectorXd evals(a.rows());
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', (int)a.rows(), work.data(),
                              (int)a.rows(), evals.data());
    check_info(info, "dsyevd");
    return evals;
}

void sym_eigendecomposition(const MatrixXd& a, VectorXd& evals, MatrixXd& evecs) {
    if (a.rows() <= kEigenCutoff) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
        evals = es.eigenvalues();
        evecs = es.eigenvectors();
        return;
    }
    set_blas_threads(a.rows());
    evecs = a;
    evals.resize(a.rows());
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', (int)a.rows(), evecs.data(),
                              (int)a.rows(), evals.data());
    check_info(info, "dsyevd");
}

VectorXd herm_eigenvalues(const MatrixXcd& a) {
    if (a.rows() <= kEigenCutoff) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a, Eigen::EigenvaluesOnly);
        return es.eigenvalues();
    }
    set_blas_threads(a.rows());
    MatrixXcd work = a;
    VectorXd evals(a.rows());
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', (int)a.rows(),
                              reinterpret_cast<lapack_complex_double*>(work.data()),
                              (int)a.rows(), evals.data());
    check_info(info, "zheevd");
    return evals;
}

void herm_eigendecomposition(const MatrixXcd& a, VectorXd& evals, MatrixXcd& evecs) {
    if (a.rows() <= kEigenCutoff) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(a);
        evals = es.eigenvalues();
        evecs = es.eigenvectors();
        return;
    }
    set_blas_threads(a.rows());
    evecs = a;
    evals.resize(a.rows());
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', (int)a.rows(),
                              reinterpret_cast<lapack_complex_double*>(evecs.data()),
                              (int)a.rows(), evals.data());
    check_info(info, "zheevd");
}

int sym_eigenpairs_below(const MatrixXd& a, double vu, VectorXd& evals, MatrixXd& evecs) {
    int n = (int)a.rows();
    set_blas_threads(n);
    MatrixXd work = a;
    VectorXd w(n);
    MatrixXd z(n, n);
    std::vector<int> isuppz(2 * std::max(1, n));
    int m = 0;
    int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'V', 'L', n, work.data(), n,
                              -1e300, vu, 0, 0, 0.0, &m, w.data(), z.data(), n,
                              isuppz.data());
    check_info(info, "dsyevr");
    evals = w.head(m);
    evecs = z.leftCols(m);
    return m;
}

void sym_smallest_eigenpairs(const MatrixXd& a, int k, VectorXd& evals, MatrixXd& evecs) {
    int n = (int)a.rows();
    k = std::min(k, n);
    if (n <= kEigenCutoff) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
        evals = es.eigenvalues().head(k);
        evecs = es.eigenvectors().leftCols(k);
        return;
    }
    set_blas_threads(n);
    MatrixXd work = a;
    VectorXd w(n);
    MatrixXd z(n, k);
    std::vector<int> isuppz(2 * std::max(1, k));
    int m = 0;
    int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, work.data(), n, 0.0,
                              0.0, 1, k, 0.0, &m, w.data(), z.data(), n, isuppz.data());
    check_info(info, "dsyevr");
    evals = w.head(m);
    evecs = z.leftCols(m);
}

MatrixXd psd_projection(const MatrixXd& a) {
    int n = (int)a.rows();
    VectorXd evals;
    MatrixXd evecs;
    if (n <= kEigenCutoff) {
        sym_eigendecomposition(a, evals, evecs);
        return evecs * evals.cwiseMax(0.0).asDiagonal() * evecs.transpose();
    }
    // Most of the time only a few eigenvalues are negative; peel those off
    // instead of forming the full decomposition.
    int m = sym_eigenpairs_below(a, 0.0, evals, evecs);
    if (m == 0) return a;
    if (m <= n / 3) {
        MatrixXd out = a;
        for (int i = 0; i < m; ++i)
            out.noalias() -= evals(i) * (evecs.col(i) * evecs.col(i).transpose());
        return out;
    }
    sym_eigendecomposition(a, evals, evecs);
    VectorXd clipped = evals.cwiseMax(0.0);
    return evecs * clipped.asDiagonal() * evecs.transpose();
}

LanczosResult lanczos_smallest(const std::function<void(const VectorXd&, VectorXd&)>& matvec,
                               int dim, int want, double tol, int max_iter, uint64_t seed) {
    LanczosResult res;
    max_iter = std::min(max_iter, dim);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    MatrixXd basis(dim, max_iter + 1);
    std::vector<double> alpha, beta;
    VectorXd v(dim), w(dim);
    for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
    v.normalize();
    basis.col(0) = v;

    VectorXd prev_ritz;
    int j = 0;
    for (; j < max_iter; ++j) {
        matvec(basis.col(j), w);
        double a = basis.col(j).dot(w);
        alpha.push_back(a);
        w -= a * basis.col(j);
        if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
        // Full reorthogonalization keeps the Ritz values trustworthy.
        w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
        double b = w.norm();
        int m = j + 1;

        bool check_now = (m >= std::max(2 * want, 8) && m % 8 == 0) || b < 1e-13 || j == max_iter - 1;
        if (check_now) {
            MatrixXd t = MatrixXd::Zero(m, m);
            for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
            for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
            VectorXd tvals;
            MatrixXd tvecs;
            sym_eigendecomposition(t, tvals, tvecs);
            double range = std::max(1.0, tvals(m - 1) - tvals(0));
            int k = std::min(want, m);
            bool ok = true;
            for (int i = 0; i < k; ++i) {
                // Residual of Ritz pair i is |beta_m * last component|.
                double r = std::abs(b * tvecs(m - 1, i));
                if (r > tol * range) { ok = false; break; }
            }
            if (ok || b < 1e-13) {
                res.ritz_values = tvals.head(k);
                res.ritz_vectors = basis.leftCols(m) * tvecs.leftCols(k);
                res.converged = true;
                res.iterations = m;
                return res;
            }
        }
        if (b < 1e-13) break;
        beta.push_back(b);
        basis.col(j + 1) = w / b;
    }

    int m = (int)alpha.size();
    MatrixXd t = MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
    for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
    VectorXd tvals;
    MatrixXd tvecs;
    sym_eigendecomposition(t, tvals, tvecs);
    int k = std::min(want, m);
    res.ritz_values = tvals.head(k);
    res.ritz_vectors = basis.leftCols(m) * tvecs.leftCols(k);
    res.converged = false;
    res.iterations = m;
    return res;
}

PowerIterResult power_iteration_norm(const std::function<void(const VectorXd&, VectorXd&)>& apply,
                                     const std::function<void(const VectorXd&, VectorXd&)>& apply_t,
                                     int rows, int cols, double tol, int max_iter, uint64_t seed) {
    PowerIterResult res;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    VectorXd x(cols), y(rows), z(cols);
    for (int i = 0; i < cols; ++i) x(i) = gauss(rng);
    x.normalize();

    double prev = 0.0;
    int stagnant = 0;
    bool reseeded = false;
    for (int it = 1; it <= max_iter; ++it) {
        apply(x, y);
        apply_t(y, z);
        double lam = z.norm();  // estimate of sigma^2
        if (lam == 0.0) {
            res.sigma = 0.0;
            res.converged = true;
            res.iterations = it;
            return res;
        }
        x = z / lam;
        double sigma = std::sqrt(lam);
        if (std::abs(sigma - prev) <= tol * std::max(1.0, sigma)) {
            res.sigma = sigma;
            res.converged = true;
            res.iterations = it;
            return res;
        }
        if (std::abs(sigma - prev) <= 1e-3 * tol * std::max(1.0, sigma)) ++stagnant;
        if (stagnant > 20 && !reseeded) {
            for (int i = 0; i < cols; ++i) x(i) += 0.1 * gauss(rng);
            x.normalize();
            stagnant = 0;
            reseeded = true;
        }
        prev = sigma;
        res.sigma = sigma;
        res.iterations = it;
    }
    return res;
}

uint64_t default_seed() {
    if (const char* s = std::getenv("PALEY_SOS_SEED")) {
        char* end = nullptr;
        uint64_t v = std::strtoull(s, &end, 10);
        if (end && *end == '\0') return v;
    }
    return 42;
}

}  // namespace paley
