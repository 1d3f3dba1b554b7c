#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdiv/core_function.hpp"
#include "fdiv/means.hpp"

namespace fdv {

// Dense row-major matrix, desk scale (n <= 64).
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    Matrix& operator+=(const Matrix& o) {
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    Matrix scaled(double s) const {
        Matrix r = *this;
        for (double& v : r.data_) v *= s;
        return r;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::fabs(v));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (double v : data_) s += v * v;
        return std::sqrt(s);
    }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
};

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            double av = a(i, j);
            if (av == 0.0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = av * b(k, l);
        }
    return r;
}

// Real symmetric matrix; symmetry is enforced at construction.
class SymMatrix {
public:
    explicit SymMatrix(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw std::invalid_argument("symmetric matrix must be square");
        if (m_.rows() == 0 || m_.rows() > 64)
            throw std::invalid_argument("dimension must be in [1, 64]");
        double scale = std::max(m_.max_abs(), 1.0);
        for (std::size_t i = 0; i < m_.rows(); ++i)
            for (std::size_t j = i + 1; j < m_.cols(); ++j)
                if (std::fabs(m_(i, j) - m_(j, i)) > 1e-12 * scale)
                    throw std::domain_error("matrix is not symmetric");
    }

    static SymMatrix diagonal(const std::vector<double>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return SymMatrix(std::move(m));
    }

    std::size_t dim() const { return m_.rows(); }
    const Matrix& raw() const { return m_; }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Matrix m_;
};

class UnitVector {
public:
    explicit UnitVector(std::vector<double> v) : v_(std::move(v)) {
        if (v_.empty()) throw std::invalid_argument("unit vector must be nonempty");
        double n = 0.0;
        for (double x : v_) n += x * x;
        n = std::sqrt(n);
        if (std::fabs(n - 1.0) > 1e-12) throw std::domain_error("vector must have norm 1");
    }

    static UnitVector normalized(std::vector<double> v) {
        double n = 0.0;
        for (double x : v) n += x * x;
        n = std::sqrt(n);
        if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
        for (double& x : v) x /= n;
        return UnitVector(std::move(v));
    }

    std::size_t dim() const { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    const std::vector<double>& values() const { return v_; }

private:
    std::vector<double> v_;
};

struct EigenConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectrumDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A = sum over clusters of lambda_c * P_c. Projections are formed per
// eigenvalue cluster so f(A) does not depend on the basis chosen inside a
// degenerate eigenspace.
struct SpectralForm {
    std::vector<double> eigenvalues; // ascending, one per matrix dimension
    Matrix eigenvectors;             // orthonormal columns, matching order

    struct Cluster {
        double value;      // representative eigenvalue (cluster mean)
        Matrix projection; // sum of vv^T over the cluster's eigenvectors
        std::size_t multiplicity;
    };
    std::vector<Cluster> clusters;

    Matrix reconstruct() const {
        Matrix a(eigenvectors.rows(), eigenvectors.rows());
        for (const auto& c : clusters) a += c.projection.scaled(c.value);
        return a;
    }
};

// Cyclic Jacobi rotations; off-diagonal Frobenius threshold 1e-12 * ||A||_F,
// cap 100 sweeps.
inline SpectralForm eigendecompose(const SymMatrix& sym) {
    const std::size_t n = sym.dim();
    Matrix a = sym.raw();
    Matrix v = Matrix::identity(n);
    const double norm = std::max(a.frobenius(), 1e-300);

    auto off_diag = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < 100 && off_diag() > 1e-12 * norm; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (off_diag() > 1e-12 * norm)
        throw EigenConvergenceError("Jacobi did not converge after 100 sweeps; residual " +
                                    std::to_string(off_diag()));

    // sort ascending, fix the sign of each eigenvector
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    SpectralForm sf;
    sf.eigenvalues.resize(n);
    sf.eigenvectors = Matrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t src = order[col];
        sf.eigenvalues[col] = a(src, src);
        double sign = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (std::fabs(v(k, src)) > 1e-14) {
                sign = v(k, src) > 0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t k = 0; k < n; ++k) sf.eigenvectors(k, col) = sign * v(k, src);
    }

    // merge eigenvalues within 1e-8 * max|lambda| into one projection
    double lam_scale = 0.0;
    for (double l : sf.eigenvalues) lam_scale = std::max(lam_scale, std::fabs(l));
    double merge_tol = 1e-8 * std::max(lam_scale, 1e-300);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && sf.eigenvalues[j] - sf.eigenvalues[j - 1] <= merge_tol) ++j;
        SpectralForm::Cluster c;
        c.multiplicity = j - i;
        double sum = 0.0;
        c.projection = Matrix(n, n);
        for (std::size_t k = i; k < j; ++k) {
            sum += sf.eigenvalues[k];
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s)
                    c.projection(r, s) += sf.eigenvectors(r, k) * sf.eigenvectors(s, k);
        }
        c.value = sum / static_cast<double>(c.multiplicity);
        sf.clusters.push_back(std::move(c));
        i = j;
    }
    return sf;
}

namespace detail {

inline SymMatrix apply_spectral(const SpectralForm& sf, const std::function<double(double)>& fn,
                                const char* what) {
    std::size_t n = sf.eigenvectors.rows();
    Matrix out(n, n);
    for (const auto& c : sf.clusters) {
        double fv = fn(c.value);
        if (std::isnan(fv)) throw SpectrumDomainError(std::string(what) + ": eigenvalue " +
                                                      std::to_string(c.value) + " outside domain");
        out += c.projection.scaled(fv);
    }
    // symmetrize away rounding noise before revalidation
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double m = 0.5 * (out(i, j) + out(j, i));
            out(i, j) = out(j, i) = m;
        }
    return SymMatrix(std::move(out));
}

inline double inner(const Matrix& m, const UnitVector& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) row += m(i, j) * v[j];
        s += v[i] * row;
    }
    return s;
}

inline double inner_tensor(const Matrix& m, const UnitVector& eta, const UnitVector& zeta) {
    std::size_t n = eta.dim(), mm = zeta.dim();
    std::vector<double> w(n * mm);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < mm; ++k) w[i * mm + k] = eta[i] * zeta[k];
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j) row += m(i, j) * w[j];
        s += w[i] * row;
    }
    return s;
}

inline void require_positive_spectrum(const SpectralForm& sf, const char* what) {
    for (double l : sf.eigenvalues)
        if (!(l > 0.0)) throw SpectrumDomainError(std::string(what) + ": spectrum must be positive");
}

// The three matrix-side mean forms: <X eta, eta>, exp<log X eta, eta>,
// <X^{-1} eta, eta>^{-1}, each computed from X's own spectral form.
inline double matrix_mean_side(MeanKind kind, const SymMatrix& x, const UnitVector& eta) {
    SpectralForm sf = eigendecompose(x);
    switch (kind) {
    case MeanKind::Arithmetic:
        return inner(x.raw(), eta);
    case MeanKind::Geometric: {
        require_positive_spectrum(sf, "geometric matrix mean");
        SymMatrix logx = apply_spectral(sf, [](double l) { return std::log(l); }, "log");
        return std::exp(inner(logx.raw(), eta));
    }
    case MeanKind::Harmonic: {
        require_positive_spectrum(sf, "harmonic matrix mean");
        SymMatrix inv = apply_spectral(sf, [](double l) { return 1.0 / l; }, "inverse");
        return 1.0 / inner(inv.raw(), eta);
    }
    }
    throw std::logic_error("unreachable mean kind");
}

} // namespace detail

// f(A) = sum f(lambda_i) P_i.
inline SymMatrix matrix_function(const CoreFunction& f, const SymMatrix& a) {
    SpectralForm sf = eigendecompose(a);
    std::string offending;
    for (double l : sf.eigenvalues)
        if (!f.domain().contains(l)) offending += (offending.empty() ? "" : ", ") + std::to_string(l);
    if (!offending.empty())
        throw SpectrumDomainError(f.name() + ": eigenvalues outside domain: " + offending);
    return detail::apply_spectral(sf, [&f](double l) { return f(l); }, f.name().c_str());
}

// Two-variable real function used for matrix calculus on tensor products.
struct TwoVarFunction {
    std::string name;
    std::function<double(double, double)> eval;
};

// Perspective of a core function as a two-variable function h(t, s) = s f(t/s).
inline TwoVarFunction perspective_two_var(const CoreFunction& f) {
    return {"perspective(" + f.name() + ")",
            [f](double t, double s) { return s * f(t / s); }};
}

// h(A, B) = sum_{i,j} h(lambda_i, mu_j) P_i (x) Q_j, dimension n*m.
inline SymMatrix two_variable_matrix_function(const TwoVarFunction& h, const SymMatrix& a,
                                              const SymMatrix& b) {
    SpectralForm sa = eigendecompose(a);
    SpectralForm sb = eigendecompose(b);
    std::size_t nm = a.dim() * b.dim();
    Matrix out(nm, nm);
    for (const auto& ca : sa.clusters)
        for (const auto& cb : sb.clusters) {
            double hv = h.eval(ca.value, cb.value);
            if (std::isnan(hv))
                throw SpectrumDomainError(h.name + ": eigenpair (" + std::to_string(ca.value) + ", " +
                                          std::to_string(cb.value) + ") outside domain");
            out += kronecker(ca.projection, cb.projection).scaled(hv);
        }
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = i + 1; j < nm; ++j) {
            double m = 0.5 * (out(i, j) + out(j, i));
            out(i, j) = out(j, i) = m;
        }
    return SymMatrix(std::move(out));
}

struct MatrixJensenResult {
    double lhs;
    double rhs;
    bool holds;
};

namespace detail {
inline MatrixJensenResult jensen_result(double lhs, double rhs, double rel_tol) {
    double margin = rel_tol * std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
    return {lhs, rhs, lhs <= rhs + margin};
}
} // namespace detail

// MN variant of the matrix Jensen inequality: the argument side applies the
// M-form to A, the value side applies the N-form to f(A).
inline MatrixJensenResult jensen_scalar_form(const CoreFunction& f, MeanPair variant,
                                             const SymMatrix& a, const UnitVector& eta,
                                             double rel_tol = 1e-9) {
    if (eta.dim() != a.dim()) throw std::invalid_argument("jensen_scalar_form: dimension mismatch");
    double lhs = f(detail::matrix_mean_side(variant.arg_mean, a, eta));
    SymMatrix fa = matrix_function(f, a);
    double rhs = detail::matrix_mean_side(variant.val_mean, fa, eta);
    return detail::jensen_result(lhs, rhs, rel_tol);
}

enum class TwoVarHypothesis {
    SeparatelyConvex,   // f(<A eta,eta>, <B zeta,zeta>) <= <f(A,B) ..>
    SeparatelyGG,
    SeparatelyHH,
    AHFirstConvexSecond // three-link chain through h(A, <B zeta,zeta>)
};

struct TwoVarChainLink {
    std::string label;
    double lhs;
    double rhs;
    bool holds;
};

struct TwoVarJensenResult {
    std::vector<TwoVarChainLink> links;

    bool all_hold() const {
        for (const auto& l : links)
            if (!l.holds) return false;
        return true;
    }
    double lhs() const { return links.front().lhs; }
    double rhs() const { return links.back().rhs; }
};

inline TwoVarJensenResult jensen_two_variable(const TwoVarFunction& h, TwoVarHypothesis hyp,
                                              const SymMatrix& a, const SymMatrix& b,
                                              const UnitVector& eta, const UnitVector& zeta,
                                              double rel_tol = 1e-9) {
    if (eta.dim() != a.dim() || zeta.dim() != b.dim())
        throw std::invalid_argument("jensen_two_variable: dimension mismatch");
    auto link = [&](std::string label, double lhs, double rhs) {
        auto r = detail::jensen_result(lhs, rhs, rel_tol);
        return TwoVarChainLink{std::move(label), lhs, rhs, r.holds};
    };
    TwoVarJensenResult out;
    SymMatrix hab = two_variable_matrix_function(h, a, b);
    switch (hyp) {
    case TwoVarHypothesis::SeparatelyConvex: {
        double lhs = h.eval(detail::inner(a.raw(), eta), detail::inner(b.raw(), zeta));
        double rhs = detail::inner_tensor(hab.raw(), eta, zeta);
        out.links.push_back(link("h(<A>,<B>) <= <h(A,B)>", lhs, rhs));
        return out;
    }
    case TwoVarHypothesis::SeparatelyGG: {
        SpectralForm sa = eigendecompose(a), sb = eigendecompose(b);
        detail::require_positive_spectrum(sa, "jensen GG");
        detail::require_positive_spectrum(sb, "jensen GG");
        double ga = std::exp(detail::inner(
            detail::apply_spectral(sa, [](double l) { return std::log(l); }, "log").raw(), eta));
        double gb = std::exp(detail::inner(
            detail::apply_spectral(sb, [](double l) { return std::log(l); }, "log").raw(), zeta));
        double lhs = h.eval(ga, gb);
        SpectralForm sh = eigendecompose(hab);
        detail::require_positive_spectrum(sh, "jensen GG values");
        double rhs = std::exp(detail::inner_tensor(
            detail::apply_spectral(sh, [](double l) { return std::log(l); }, "log").raw(), eta, zeta));
        out.links.push_back(link("h(G(A),G(B)) <= explog <h(A,B)>", lhs, rhs));
        return out;
    }
    case TwoVarHypothesis::SeparatelyHH: {
        SpectralForm sa = eigendecompose(a), sb = eigendecompose(b);
        detail::require_positive_spectrum(sa, "jensen HH");
        detail::require_positive_spectrum(sb, "jensen HH");
        double ha = 1.0 / detail::inner(
                              detail::apply_spectral(sa, [](double l) { return 1.0 / l; }, "inv").raw(),
                              eta);
        double hb = 1.0 / detail::inner(
                              detail::apply_spectral(sb, [](double l) { return 1.0 / l; }, "inv").raw(),
                              zeta);
        double lhs = h.eval(ha, hb);
        SpectralForm sh = eigendecompose(hab);
        detail::require_positive_spectrum(sh, "jensen HH values");
        double rhs = 1.0 / detail::inner_tensor(
                               detail::apply_spectral(sh, [](double l) { return 1.0 / l; }, "inv").raw(),
                               eta, zeta);
        out.links.push_back(link("h(H(A),H(B)) <= harm <h(A,B)>", lhs, rhs));
        return out;
    }
    case TwoVarHypothesis::AHFirstConvexSecond: {
        // chain: h(<A>,<B>) <= <h(A,<B>)^{-1}>^{-1} <= <h(A,<B>)> <= <h(A,B)>
        double bz = detail::inner(b.raw(), zeta);
        SpectralForm sa = eigendecompose(a);
        SymMatrix mixed = detail::apply_spectral(
            sa, [&](double l) { return h.eval(l, bz); }, h.name.c_str());
        SpectralForm sm = eigendecompose(mixed);
        detail::require_positive_spectrum(sm, "jensen AH mixed form");
        double lhs = h.eval(detail::inner(a.raw(), eta), bz);
        double harm = 1.0 / detail::inner(
                                detail::apply_spectral(sm, [](double l) { return 1.0 / l; }, "inv").raw(),
                                eta);
        double arith = detail::inner(mixed.raw(), eta);
        double full = detail::inner_tensor(hab.raw(), eta, zeta);
        out.links.push_back(link("h(<A>,<B>) <= <h(A,<B>)^-1>^-1", lhs, harm));
        out.links.push_back(link("<h(A,<B>)^-1>^-1 <= <h(A,<B>)>", harm, arith));
        out.links.push_back(link("<h(A,<B>)> <= <h(A,B)>", arith, full));
        return out;
    }
    }
    throw std::logic_error("unreachable hypothesis");
}

// <A^{-1}eta,eta>^{-r} <B^{-1}zeta,zeta>^{r-1} <= <(A^r (x) B^{1-r}) ...>,
// with A^r (x) B^{1-r} built through the two-variable calculus.
inline MatrixJensenResult remark_scalar_product_case(double r, const SymMatrix& a, const SymMatrix& b,
                                                     const UnitVector& eta, const UnitVector& zeta,
                                                     double rel_tol = 1e-9) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("exponent r must lie in [0,1]");
    SpectralForm sa = eigendecompose(a), sb = eigendecompose(b);
    detail::require_positive_spectrum(sa, "remark product case");
    detail::require_positive_spectrum(sb, "remark product case");
    double ia = detail::inner(
        detail::apply_spectral(sa, [](double l) { return 1.0 / l; }, "inv").raw(), eta);
    double ib = detail::inner(
        detail::apply_spectral(sb, [](double l) { return 1.0 / l; }, "inv").raw(), zeta);
    double lhs = std::pow(ia, -r) * std::pow(ib, r - 1.0);
    TwoVarFunction g{"t^r s^(1-r)",
                     [r](double t, double s) { return std::pow(t, r) * std::pow(s, 1.0 - r); }};
    SymMatrix gab = two_variable_matrix_function(g, a, b);
    double rhs = detail::inner_tensor(gab.raw(), eta, zeta);
    return detail::jensen_result(lhs, rhs, rel_tol);
}

} // namespace fdv
