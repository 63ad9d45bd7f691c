#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "cxcore.hpp"
#include "degenconst.hpp"

namespace solitonic {

// Evaluation point. For n-NLS y is unused; for DS (x,y) are the characteristic coordinates.
struct Coord {
    cx x{}, y{}, t{};
};

struct AffineArg {
    cx coeff_x{}, coeff_y{}, coeff_t{}, constant{};

    cx operator()(const Coord& p) const { return coeff_x * p.x + coeff_y * p.y + coeff_t * p.t + constant; }

    // Directional derivative along the weights (dx, dy, dt).
    cx slope(const Coord& dir) const { return coeff_x * dir.x + coeff_y * dir.y + coeff_t * dir.t; }

    AffineArg operator*(cx s) const { return {coeff_x * s, coeff_y * s, coeff_t * s, constant * s}; }
    AffineArg operator+(const AffineArg& o) const
    {
        return {coeff_x + o.coeff_x, coeff_y + o.coeff_y, coeff_t + o.coeff_t, constant + o.constant};
    }
    AffineArg operator-(const AffineArg& o) const { return *this + o * cx{-1.0}; }
    AffineArg shifted(cx c) const { return {coeff_x, coeff_y, coeff_t, constant + c}; }
};

enum class DetKind { T, BrightK, BrightM, RatK };

// Entry (i,k) = base(i,k) + coef(i,k) * exp(half_i + half_k) + [i==k] * diag_i.
struct DetMatrixSpec {
    DetKind kind = DetKind::T;
    Eigen::MatrixXcd base;
    Eigen::MatrixXcd coef;
    std::vector<AffineArg> half;
    std::vector<AffineArg> diag;

    Eigen::Index size() const { return base.rows(); }
};

struct DetValue {
    double logmag = -std::numeric_limits<double>::infinity();
    cx phase{1.0};

    static constexpr double singular_log = -575.6462732485114; // log(1e-250)
    bool singular() const { return !(logmag >= singular_log); }
    cx value() const { return std::isfinite(logmag) ? std::exp(logmag) * phase : cx{}; }
};

struct RatioValue {
    cx value{};
    bool singular = false;
};

namespace detail {

struct Scaled {
    Eigen::MatrixXcd M;
    Eigen::VectorXcd h;
    Eigen::MatrixXcd E; // scaled exponential part, for derivatives
    double logscale = 0.0;
};

inline Scaled instantiate(const DetMatrixSpec& s, const Coord& p)
{
    const Eigen::Index n = s.size();
    Scaled r;
    r.h.resize(n);
    Eigen::VectorXd shift = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        r.h(i) = s.half.empty() ? cx{} : s.half[static_cast<std::size_t>(i)](p);
        shift(i) = std::max(0.0, r.h(i).real());
    }
    r.M.resize(n, n);
    r.E.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) {
            const double sc = -shift(i) - shift(k);
            cx e{};
            if (s.coef(i, k) != cx{}) e = s.coef(i, k) * std::exp(r.h(i) + r.h(k) + sc);
            cx b = s.base(i, k) == cx{} ? cx{} : s.base(i, k) * std::exp(sc);
            if (i == k && !s.diag.empty()) b += s.diag[static_cast<std::size_t>(i)](p) * std::exp(sc);
            r.E(i, k) = e;
            r.M(i, k) = b + e;
        }
    r.logscale = 2.0 * shift.sum();
    return r;
}

inline DetValue lu_det(const Eigen::MatrixXcd& M, double logscale)
{
    DetValue d;
    if (M.rows() == 0) {
        d.logmag = logscale;
        return d;
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    const auto& LU = lu.matrixLU();
    double lm = logscale;
    cx ph = lu.permutationP().determinant() < 0 ? cx{-1.0} : cx{1.0};
    for (Eigen::Index i = 0; i < LU.rows(); ++i) {
        const double a = std::abs(LU(i, i));
        if (a == 0.0 || !std::isfinite(a)) {
            d.logmag = -std::numeric_limits<double>::infinity();
            d.phase = cx{1.0};
            return d;
        }
        lm += std::log(a);
        ph *= LU(i, i) / a;
    }
    d.logmag = lm;
    d.phase = ph;
    return d;
}

} // namespace detail

inline DetValue eval_det(const DetMatrixSpec& s, const Coord& p)
{
    auto sc = detail::instantiate(s, p);
    return detail::lu_det(sc.M, sc.logscale);
}

inline DetValue eval_det(const DetMatrixSpec& s, double x, double y, double t)
{
    return eval_det(s, Coord{cx{x}, cx{y}, cx{t}});
}

// Naive determinant without balancing (test oracle and small-argument use).
inline cx naive_det(const DetMatrixSpec& s, const Coord& p)
{
    const Eigen::Index n = s.size();
    Eigen::MatrixXcd M(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) {
            cx e = s.base(i, k);
            if (s.coef(i, k) != cx{})
                e += s.coef(i, k) * std::exp(s.half[static_cast<std::size_t>(i)](p) + s.half[static_cast<std::size_t>(k)](p));
            if (i == k && !s.diag.empty()) e += s.diag[static_cast<std::size_t>(i)](p);
            M(i, k) = e;
        }
    return n == 0 ? cx{1.0} : M.determinant();
}

inline RatioValue det_ratio(const DetValue& num, const DetValue& den)
{
    RatioValue r;
    if (den.singular()) {
        r.singular = true;
        r.value = cx{std::numeric_limits<double>::quiet_NaN(), 0.0};
        return r;
    }
    if (!std::isfinite(num.logmag)) return r;
    r.value = std::exp(num.logmag - den.logmag) * num.phase / den.phase;
    return r;
}

inline RatioValue det_ratio(const DetMatrixSpec& num, const DetMatrixSpec& den, const Coord& p)
{
    return det_ratio(eval_det(num, p), eval_det(den, p));
}

// Second directional derivative of log det along dir: tr(M^-1 M'') - tr((M^-1 M')^2).
inline cx logdet_d2(const DetMatrixSpec& s, const Coord& p, const Coord& dir)
{
    auto sc = detail::instantiate(s, p);
    const Eigen::Index n = s.size();
    if (n == 0) return cx{};
    Eigen::MatrixXcd D1(n, n), D2(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const cx si = s.half.empty() ? cx{} : s.half[static_cast<std::size_t>(i)].slope(dir);
        for (Eigen::Index k = 0; k < n; ++k) {
            const cx sk = s.half.empty() ? cx{} : s.half[static_cast<std::size_t>(k)].slope(dir);
            D1(i, k) = (si + sk) * sc.E(i, k);
            D2(i, k) = (si + sk) * (si + sk) * sc.E(i, k);
        }
        if (!s.diag.empty()) {
            const double shift = std::exp(-2.0 * std::max(0.0, sc.h(i).real()));
            D1(i, i) += s.diag[static_cast<std::size_t>(i)].slope(dir) * shift;
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sc.M);
    Eigen::MatrixXcd A = lu.solve(D1);
    Eigen::MatrixXcd B = lu.solve(D2);
    return B.trace() - (A * A).trace();
}

// T_ik = delta_ik + (v_i - u_i)/(v_i - u_k) * exp((z_i + z_k)/2)
inline DetMatrixSpec build_T(const PairData& pairs, const std::vector<AffineArg>& z)
{
    pairs.validate();
    const auto g = static_cast<Eigen::Index>(pairs.size());
    if (z.size() != pairs.size()) throw Error(ErrorKind::Constraint, "build_T: argument count differs from pair count");
    DetMatrixSpec s;
    s.kind = DetKind::T;
    s.base = Eigen::MatrixXcd::Identity(g, g);
    s.coef.resize(g, g);
    for (Eigen::Index i = 0; i < g; ++i)
        for (Eigen::Index k = 0; k < g; ++k) {
            const cx den = pairs.v[i] - pairs.u[k];
            if (std::abs(den) == 0.0) throw Error(ErrorKind::Coincidence, "build_T: v_i equals u_k");
            s.coef(i, k) = (pairs.v[i] - pairs.u[i]) / den;
        }
    for (const auto& a : z) s.half.push_back(a * cx{0.5});
    return s;
}

// Rational-breather matrix. Index i (0-based) is "odd" in 1-based terms when i is even.
// points[i] is w_u for odd indices and w_v for even ones; diag[i] = z_i + beta * r_i.
inline DetMatrixSpec build_ratK(const std::vector<cx>& points, const std::vector<AffineArg>& diag_args)
{
    const auto m = static_cast<Eigen::Index>(points.size());
    if (diag_args.size() != points.size()) throw Error(ErrorKind::Constraint, "build_ratK: argument count mismatch");
    DetMatrixSpec s;
    s.kind = DetKind::RatK;
    s.base = Eigen::MatrixXcd::Zero(m, m);
    s.coef = Eigen::MatrixXcd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double sign = (i % 2 == 0) ? -1.0 : 1.0;
        for (Eigen::Index k = 0; k < m; ++k) {
            if (i == k) continue;
            const cx den = points[i] - points[k];
            if (std::abs(den) == 0.0) throw Error(ErrorKind::Coincidence, "build_ratK: coincident points");
            s.base(i, k) = sign / den;
        }
    }
    for (const auto& a : diag_args) s.diag.push_back(a * cx{-1.0});
    return s;
}

// [[I, X], [Y, I]] with X(i,k), Y(i,k) multiplied by exp(half_odd_i + half_even_k) resp. exp(half_even_i + half_odd_k).
inline DetMatrixSpec build_bright_M(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y, const std::vector<AffineArg>& half_odd,
                                    const std::vector<AffineArg>& half_even)
{
    const Eigen::Index N = X.rows();
    DetMatrixSpec s;
    s.kind = DetKind::BrightM;
    s.base = Eigen::MatrixXcd::Identity(2 * N, 2 * N);
    s.coef = Eigen::MatrixXcd::Zero(2 * N, 2 * N);
    s.coef.topRightCorner(N, N) = X;
    s.coef.bottomLeftCorner(N, N) = Y;
    s.half = half_odd;
    s.half.insert(s.half.end(), half_even.begin(), half_even.end());
    return s;
}

// Append a border row/column: entry (i, last) = p_i exp(half_i), (last, k) = q_k exp(half_k), corner 0.
inline DetMatrixSpec border(const DetMatrixSpec& in, const Eigen::VectorXcd& p, const Eigen::VectorXcd& q)
{
    const Eigen::Index n = in.size();
    DetMatrixSpec s;
    s.kind = DetKind::BrightK;
    s.base = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    s.base.topLeftCorner(n, n) = in.base;
    s.coef = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    s.coef.topLeftCorner(n, n) = in.coef;
    s.coef.col(n).head(n) = p;
    s.coef.row(n).head(n) = q.transpose();
    s.half = in.half;
    s.half.push_back(AffineArg{});
    if (!in.diag.empty()) {
        s.diag = in.diag;
        s.diag.push_back(AffineArg{});
    }
    return s;
}

// Direct 2^g-term sum; the determinant identity's right-hand side.
inline cx theta_sum_oracle(const Eigen::MatrixXcd& Boff, const std::vector<cx>& z)
{
    const std::size_t g = z.size();
    if (g > 20) throw Error(ErrorKind::Size, "theta_sum_oracle: genus above 20");
    cx total{};
    for (std::size_t m = 0; m < (std::size_t{1} << g); ++m) {
        cx e{};
        for (std::size_t k = 0; k < g; ++k) {
            if (!(m >> k & 1u)) continue;
            e += z[k];
            for (std::size_t i = 0; i < k; ++i)
                if (m >> i & 1u) e += Boff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        }
        total += std::exp(e);
    }
    return total;
}

} // namespace solitonic
