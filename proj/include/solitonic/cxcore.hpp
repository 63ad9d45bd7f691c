#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "error.hpp"

namespace solitonic {

using cx = std::complex<double>;
inline constexpr cx I{0.0, 1.0};

inline std::string fmt(cx z)
{
    std::ostringstream os;
    os.precision(10);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

// A point of the Riemann sphere: finite value or infinity.
struct PointOnSphere {
    std::optional<cx> value;

    PointOnSphere() = default;
    PointOnSphere(cx z) : value(z) {}
    PointOnSphere(double x) : value(cx{x, 0.0}) {}

    static PointOnSphere infinity() { return PointOnSphere{}; }
    bool is_infinity() const { return !value.has_value(); }
    cx finite() const { return *value; }
};

class CxPolynomial {
public:
    CxPolynomial() = default;
    explicit CxPolynomial(std::vector<cx> ascending) : c_(std::move(ascending)) { trim_exact(); }

    static CxPolynomial constant(cx a) { return CxPolynomial({a}); }
    static CxPolynomial linear_root(cx r) { return CxPolynomial({-r, cx{1.0}}); }

    const std::vector<cx>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    cx leading() const { return c_.empty() ? cx{} : c_.back(); }

    double max_abs_coeff() const
    {
        double m = 0.0;
        for (const auto& a : c_) m = std::max(m, std::abs(a));
        return m;
    }

    cx operator()(cx w) const
    {
        cx acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * w + *it;
        return acc;
    }

    // p(w) and p'(w) by Horner.
    std::pair<cx, cx> eval_with_derivative(cx w) const
    {
        cx p{}, dp{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            dp = dp * w + p;
            p = p * w + *it;
        }
        return {p, dp};
    }

    CxPolynomial derivative() const
    {
        if (c_.size() <= 1) return {};
        std::vector<cx> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
        return CxPolynomial(std::move(d));
    }

    friend CxPolynomial operator*(const CxPolynomial& a, const CxPolynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<cx> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return CxPolynomial(std::move(r));
    }

    friend CxPolynomial operator+(const CxPolynomial& a, const CxPolynomial& b)
    {
        std::vector<cx> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return CxPolynomial(std::move(r));
    }

    friend CxPolynomial operator-(const CxPolynomial& a, const CxPolynomial& b)
    {
        return a + b * CxPolynomial::constant(cx{-1.0});
    }

    // Drop leading coefficients below rel * max|coeff| (cancellation noise).
    CxPolynomial trimmed(double rel) const
    {
        std::vector<cx> r = c_;
        const double tol = rel * max_abs_coeff();
        while (!r.empty() && std::abs(r.back()) <= tol) r.pop_back();
        return CxPolynomial(std::move(r));
    }

private:
    void trim_exact()
    {
        while (!c_.empty() && c_.back() == cx{}) c_.pop_back();
    }

    std::vector<cx> c_;
};

inline double root_residual_bound(const CxPolynomial& p, cx r)
{
    return 1e-12 * p.max_abs_coeff() * std::pow(std::max(1.0, std::abs(r)), p.degree());
}

// All roots with multiplicity: Aberth-Ehrlich simultaneous iteration, then Newton polishing.
inline std::vector<cx> roots(const CxPolynomial& p, int max_iter = 500)
{
    if (p.degree() < 1) throw Error(ErrorKind::NonConvergence, "roots: polynomial degree must be >= 1");

    std::vector<cx> c = p.coeffs();
    std::vector<cx> out;
    // exact zero roots
    std::size_t z0 = 0;
    while (z0 < c.size() && c[z0] == cx{}) ++z0;
    out.assign(z0, cx{});
    c.erase(c.begin(), c.begin() + static_cast<long>(z0));
    const int n = static_cast<int>(c.size()) - 1;
    if (n == 0) return out;

    const cx lead = c.back();
    for (auto& a : c) a /= lead;
    CxPolynomial q(c);

    if (n == 1) {
        out.push_back(-c[0]);
        return out;
    }

    // initial radius from the Fujiwara-type bound, mid-range of coefficient ratios
    double rmax = 0.0;
    for (int k = 0; k < n; ++k) rmax = std::max(rmax, std::pow(std::abs(c[k]), 1.0 / (n - k)));
    double rmin = std::numeric_limits<double>::max();
    if (c[0] != cx{}) {
        for (int k = 1; k <= n; ++k)
            if (c[k] != cx{}) rmin = std::min(rmin, std::pow(std::abs(c[0] / c[k]), 1.0 / k));
    }
    double radius = (rmin < std::numeric_limits<double>::max()) ? std::sqrt(std::max(rmin, 1e-12) * std::max(rmax, 1e-12)) : rmax;
    if (!(radius > 0.0) || !std::isfinite(radius)) radius = 1.0;

    std::vector<cx> z(n);
    for (int k = 0; k < n; ++k) {
        const double ang = 2.0 * std::numbers::pi * k / n + 0.4;
        z[k] = std::polar(radius, ang);
    }

    std::vector<bool> done(n, false);
    int it = 0;
    for (; it < max_iter; ++it) {
        bool all = true;
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            auto [pv, dpv] = q.eval_with_derivative(z[k]);
            if (pv == cx{}) {
                done[k] = true;
                continue;
            }
            cx ratio = (dpv == cx{}) ? cx{1e-3} : pv / dpv;
            cx s{};
            for (int j = 0; j < n; ++j)
                if (j != k) {
                    cx diff = z[k] - z[j];
                    if (diff == cx{}) diff = cx{1e-14};
                    s += 1.0 / diff;
                }
            cx corr = ratio / (1.0 - ratio * s);
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = ratio;
            z[k] -= corr;
            if (std::abs(corr) <= 1e-15 * std::max(1.0, std::abs(z[k])))
                done[k] = true;
            else
                all = false;
        }
        if (all) break;
    }

    for (int k = 0; k < n; ++k) {
        // Newton polishing on the original polynomial; keep only improvements
        for (int s = 0; s < 5; ++s) {
            auto [pv, dpv] = p.eval_with_derivative(z[k]);
            if (dpv == cx{}) break;
            cx cand = z[k] - pv / dpv;
            if (std::abs(p(cand)) < std::abs(pv))
                z[k] = cand;
            else
                break;
        }
        if (std::abs(p(z[k])) > root_residual_bound(p, z[k]))
            throw Error(ErrorKind::NonConvergence, "roots: residual bound not met at " + fmt(z[k]));
        out.push_back(z[k]);
    }
    return out;
}

class RationalMap {
public:
    RationalMap(std::vector<PointOnSphere> zeros, std::vector<PointOnSphere> poles, cx scale = cx{1.0})
        : zeros_(std::move(zeros)), poles_(std::move(poles)), scale_(scale)
    {
        if (zeros_.empty()) throw Error(ErrorKind::Constraint, "rational map needs at least one zero");
        if (zeros_.size() != poles_.size())
            throw Error(ErrorKind::Constraint, "rational map: number of zeros must equal number of poles");
        if (scale_ == cx{}) throw Error(ErrorKind::Constraint, "rational map: zero scale");
        for (std::size_t i = 0; i < zeros_.size(); ++i) {
            if (zeros_[i].is_infinity()) throw Error(ErrorKind::Constraint, "rational map: zeros must be finite");
            for (std::size_t j = i + 1; j < zeros_.size(); ++j)
                if (std::abs(zeros_[i].finite() - zeros_[j].finite()) == 0.0)
                    throw Error(ErrorKind::Constraint, "rational map: repeated zero " + fmt(zeros_[i].finite()));
            for (const auto& b : poles_)
                if (!b.is_infinity() && b.finite() == zeros_[i].finite())
                    throw Error(ErrorKind::Constraint, "rational map: zero coincides with pole " + fmt(b.finite()));
        }
        num_ = CxPolynomial::constant(scale_);
        den_ = CxPolynomial::constant(cx{1.0});
        for (const auto& a : zeros_) num_ = num_ * CxPolynomial::linear_root(a.finite());
        for (const auto& b : poles_)
            if (!b.is_infinity()) den_ = den_ * CxPolynomial::linear_root(b.finite());
    }

    // Convenience: finite zeros, finite poles, remaining poles at infinity.
    static RationalMap from_finite(const std::vector<cx>& zeros, const std::vector<cx>& finite_poles, cx scale = cx{1.0})
    {
        std::vector<PointOnSphere> z(zeros.begin(), zeros.end());
        std::vector<PointOnSphere> p(finite_poles.begin(), finite_poles.end());
        if (p.size() > z.size()) throw Error(ErrorKind::Constraint, "more poles than zeros");
        while (p.size() < z.size()) p.push_back(PointOnSphere::infinity());
        return RationalMap(std::move(z), std::move(p), scale);
    }

    int n() const { return static_cast<int>(zeros_.size()) - 1; }
    const std::vector<PointOnSphere>& zeros() const { return zeros_; }
    const std::vector<PointOnSphere>& poles() const { return poles_; }
    cx scale() const { return scale_; }
    const CxPolynomial& numerator() const { return num_; }
    const CxPolynomial& denominator() const { return den_; }

    std::vector<cx> finite_zeros() const
    {
        std::vector<cx> r;
        for (const auto& a : zeros_) r.push_back(a.finite());
        return r;
    }

    void check_not_pole(cx w) const
    {
        for (const auto& b : poles_)
            if (!b.is_infinity() && b.finite() == w) throw Error(ErrorKind::PoleEvaluation, "evaluation at pole " + fmt(w));
    }

    cx eval(cx w) const
    {
        check_not_pole(w);
        cx v = scale_;
        for (const auto& a : zeros_) v *= (w - a.finite());
        for (const auto& b : poles_)
            if (!b.is_infinity()) v /= (w - b.finite());
        return v;
    }

    // f, f', f'' at w by product-rule accumulation over the linear factors.
    struct Jet {
        cx f, d1, d2;
    };

    Jet jet(cx w) const
    {
        check_not_pole(w);
        auto accumulate = [&](const std::vector<PointOnSphere>& pts, cx lead) {
            cx p = lead, p1{}, p2{};
            for (const auto& a : pts) {
                if (a.is_infinity()) continue;
                cx e = w - a.finite();
                p2 = p2 * e + 2.0 * p1;
                p1 = p1 * e + p;
                p = p * e;
            }
            return Jet{p, p1, p2};
        };
        Jet N = accumulate(zeros_, scale_);
        Jet D = accumulate(poles_, cx{1.0});
        Jet r;
        r.f = N.f / D.f;
        r.d1 = (N.d1 * D.f - N.f * D.d1) / (D.f * D.f);
        r.d2 = ((N.d2 * D.f - N.f * D.d2) * D.f - 2.0 * D.d1 * (N.d1 * D.f - N.f * D.d1)) / (D.f * D.f * D.f);
        return r;
    }

    cx deriv(cx w, int order) const
    {
        if (order != 1 && order != 2) throw Error(ErrorKind::Constraint, "deriv: order must be 1 or 2");
        Jet j = jet(w);
        return order == 1 ? j.d1 : j.d2;
    }

private:
    std::vector<PointOnSphere> zeros_;
    std::vector<PointOnSphere> poles_;
    cx scale_;
    CxPolynomial num_, den_;
};

inline cx eval(const RationalMap& f, cx w) { return f.eval(w); }
inline cx deriv(const RationalMap& f, cx w, int order) { return f.deriv(w, order); }

inline void check_distinct_roots(const std::vector<cx>& r, const char* what)
{
    double scale = 1.0;
    for (const auto& z : r) scale = std::max(scale, std::abs(z));
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = i + 1; j < r.size(); ++j)
            if (std::abs(r[i] - r[j]) < 1e-8 * scale)
                throw Error(ErrorKind::CriticalValue, std::string(what) + ": repeated root near " + fmt(r[i]));
}

// Solutions of f(w) = c.
inline std::vector<cx> fiber(const RationalMap& f, cx c)
{
    CxPolynomial p = f.numerator() - f.denominator() * CxPolynomial::constant(c);
    p = p.trimmed(1e-14);
    const int expected = f.n() + 1;
    if (p.degree() < expected)
        throw Error(ErrorKind::CriticalValue, "fiber over " + fmt(c) + " contains the point at infinity");
    auto r = roots(p);
    check_distinct_roots(r, "fiber");
    return r;
}

// Zeros of f' (roots of N'D - ND').
inline std::vector<cx> critical_points(const RationalMap& f)
{
    const auto& N = f.numerator();
    const auto& D = f.denominator();
    CxPolynomial p = (N.derivative() * D - N * D.derivative()).trimmed(1e-14);
    if (p.is_zero()) throw Error(ErrorKind::Constraint, "critical_points: constant map");
    if (p.degree() < 1) return {};
    return roots(p);
}

// Numerator of sum_i weights_i / (w - a_i)^2.
inline CxPolynomial inverse_square_sum_numerator(const std::vector<cx>& a, const std::vector<cx>& weights)
{
    CxPolynomial acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CxPolynomial term = CxPolynomial::constant(weights.empty() ? cx{1.0} : weights[i]);
        for (std::size_t l = 0; l < a.size(); ++l)
            if (l != i) term = term * CxPolynomial::linear_root(a[l]) * CxPolynomial::linear_root(a[l]);
        acc = acc + term;
    }
    return acc.trimmed(1e-14);
}

namespace detail {
inline bool conj_closed(const std::vector<PointOnSphere>& pts, double tol)
{
    std::vector<bool> used(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < pts.size() && !found; ++j) {
            if (used[j]) continue;
            if (pts[i].is_infinity() != pts[j].is_infinity()) continue;
            if (pts[i].is_infinity() || std::abs(std::conj(pts[i].finite()) - pts[j].finite()) <= tol) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}
} // namespace detail

inline bool is_real_map(const RationalMap& f)
{
    constexpr double tol = 1e-12;
    return std::abs(f.scale().imag()) <= tol && detail::conj_closed(f.zeros(), tol) && detail::conj_closed(f.poles(), tol);
}

} // namespace solitonic
