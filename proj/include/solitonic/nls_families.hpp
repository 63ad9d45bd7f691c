#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cxcore.hpp"
#include "degenconst.hpp"
#include "detkernel.hpp"

namespace solitonic {

enum class NlsFamily { Complexified, Dark, Bright, Breather, Rational };

inline const char* to_string(NlsFamily f)
{
    switch (f) {
    case NlsFamily::Complexified: return "nls_complexified";
    case NlsFamily::Dark: return "nls_dark";
    case NlsFamily::Bright: return "nls_bright";
    case NlsFamily::Breather: return "nls_breather";
    case NlsFamily::Rational: return "nls_rational";
    }
    return "?";
}

struct NlsParams {
    RationalMap f = RationalMap::from_finite({cx{0.0}, cx{1.0}}, {});
    // Fiber f^-1(fiber_value). For 0 the zeros of f are used in the order given,
    // otherwise the computed roots sorted by (re, im).
    cx fiber_value{};
    // Fiber index of the anchor a_{n+1}; defaults to the last fiber point.
    std::optional<std::size_t> anchor_index;
    // Family-dependent: full pairs (complexified, dark, breather), odd-index v's (bright),
    // critical points u_{2k-1} (rational).
    PairData pairs;
    std::vector<cx> d;
    std::vector<cx> A; // complexified only; empty means all ones
    double theta = 0.0;
    LocalParam localparam = LocalParam::function_shift();
    std::vector<double> gamma; // bright
};

struct NlsPoint {
    std::vector<cx> psi, psistar;
    bool singular = false;
};

struct NlsSolution {
    NlsFamily family = NlsFamily::Complexified;
    std::size_t n = 0;
    std::vector<int> s;
    std::vector<cx> A, E, F;
    std::vector<cx> V, W;
    std::vector<std::vector<cx>> r;
    // psi* = s_j conj(psi_j) is expected on real (x,t).
    bool physical = false;
    std::function<NlsPoint(cx, cx)> eval;

    NlsPoint at(double x, double t) const { return eval(cx{x}, cx{t}); }
};

namespace detail {

struct NlsSetup {
    std::vector<cx> a; // fiber points, anchor last
    std::vector<LocalDerivs> k;
    std::size_t n = 0;
    cx anchor() const { return a.back(); }
    const LocalDerivs& kn() const { return k.back(); }
};

inline NlsSetup nls_setup(const NlsParams& p)
{
    std::vector<cx> pts;
    if (p.fiber_value == cx{}) {
        pts = p.f.finite_zeros();
    } else {
        pts = fiber(p.f, p.fiber_value);
        std::sort(pts.begin(), pts.end(), [](cx x, cx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
    }
    const std::size_t m = pts.size();
    if (m < 2) throw Error(ErrorKind::Constraint, "n-NLS needs a map of degree at least 2");
    const std::size_t ai = p.anchor_index.value_or(m - 1);
    if (ai >= m) throw Error(ErrorKind::Constraint, "anchor_index out of range");
    NlsSetup s;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < m; ++i)
        if (i != ai) order.push_back(i);
    order.push_back(ai);
    for (std::size_t i : order) {
        s.a.push_back(pts[i]);
        s.k.push_back(local_derivs(p.localparam, &p.f, pts[i], i));
    }
    s.n = m - 1;
    return s;
}

inline double rel_tol_scale(cx z) { return 1.0 + std::abs(z); }

inline void require_real_fiber(const NlsParams& p, const NlsSetup& s, const char* fam)
{
    if (!is_real_map(p.f)) throw Error(ErrorKind::Constraint, std::string(fam) + ": f must be a real map");
    for (cx a : s.a)
        if (std::abs(a.imag()) > 1e-12 * rel_tol_scale(a))
            throw Error(ErrorKind::Constraint, std::string(fam) + ": fiber point " + fmt(a) + " is not real");
    for (const auto& k : s.k)
        if (std::abs(k.k1.imag()) > 1e-12 * std::abs(k.k1) || std::abs(k.k2.imag()) > 1e-10 * (1.0 + std::abs(k.k2)))
            throw Error(ErrorKind::Constraint, std::string(fam) + ": local parameters must be real");
}

// sum_i V_{a_i,k} = 0 for every pair k (equivalent to f(u_k) = f(v_k) for function-shift parameters).
inline void check_fiber_sum(const NlsSetup& s, const PairData& pairs)
{
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        cx sum{};
        double mag = 0.0;
        for (std::size_t i = 0; i < s.a.size(); ++i) {
            const cx term = (1.0 / (s.a[i] - pairs.v[k]) - 1.0 / (s.a[i] - pairs.u[k])) / s.k[i].k1;
            sum += term;
            mag += std::abs(term);
        }
        if (std::abs(sum) > 1e-10 * mag)
            throw Error(ErrorKind::Constraint, "pair " + std::to_string(k + 1) + ": f(w_u) != f(w_v) (fiber sum " + fmt(sum) + ")");
    }
}

inline bool close(cx x, cx y, double tol = 1e-10) { return std::abs(x - y) <= tol * (1.0 + std::abs(x) + std::abs(y)); }

inline int sign_of(double x) { return x < 0 ? -1 : 1; }

inline void check_pair_points_off_fiber(const NlsSetup& s, const PairData& pairs)
{
    for (cx a : s.a)
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            check_apart(a, pairs.u[k], "pair point");
            check_apart(a, pairs.v[k], "pair point");
        }
}

// Shared T-determinant construction; k'' of the anchor enters through W and K1.
inline NlsSolution t_family(NlsFamily fam, const NlsSetup& s, const PairData& pairs, const std::vector<cx>& d,
                            const std::vector<cx>& A, double theta)
{
    pairs.validate();
    if (d.size() != pairs.size()) throw Error(ErrorKind::Constraint, "d must have one entry per pair");
    if (A.size() != s.n) throw Error(ErrorKind::Constraint, "A must have n entries");
    check_pair_points_off_fiber(s, pairs);
    const cx an = s.anchor();
    NlsSolution sol;
    sol.family = fam;
    sol.n = s.n;
    sol.A = A;
    sol.V = v_vector(an, s.kn().k1, pairs);
    sol.W = w_vector(an, s.kn().k1, s.kn().k2, pairs);
    std::vector<cx> q2(s.n);
    cx q2sum{};
    for (std::size_t j = 0; j < s.n; ++j) {
        auto pc = q2_k1(an, s.a[j], s.kn(), s.k[j]);
        q2[j] = pc.q2;
        q2sum += pc.q2;
        sol.E.push_back(pc.K1);
        sol.r.push_back(r_vector(an, s.a[j], pairs));
        sol.s.push_back(sign_of(pc.q2.real()));
    }
    for (std::size_t j = 0; j < s.n; ++j) sol.F.push_back(-sol.E[j] * sol.E[j] + 2.0 * q2sum);
    for (cx a : A)
        if (a == cx{}) throw Error(ErrorKind::Constraint, "amplitude A_j must be nonzero");

    std::vector<AffineArg> Z;
    for (std::size_t k = 0; k < pairs.size(); ++k) Z.push_back(AffineArg{I * sol.V[k], cx{}, I * sol.W[k], -d[k]});
    auto shifted = [&](const std::vector<cx>& r, double beta) {
        std::vector<AffineArg> out = Z;
        for (std::size_t k = 0; k < out.size(); ++k) out[k] = out[k].shifted(beta * r[k]);
        return out;
    };
    auto den = build_T(pairs, Z);
    std::vector<DetMatrixSpec> num, nst;
    for (std::size_t j = 0; j < s.n; ++j) {
        num.push_back(build_T(pairs, shifted(sol.r[j], 1.0)));
        nst.push_back(build_T(pairs, shifted(sol.r[j], -1.0)));
    }
    const auto E = sol.E;
    const auto F = sol.F;
    sol.eval = [=](cx x, cx t) {
        NlsPoint pt;
        const Coord c{x, cx{}, t};
        const DetValue D = eval_det(den, c);
        pt.singular = D.singular();
        for (std::size_t j = 0; j < A.size(); ++j) {
            const auto R = det_ratio(eval_det(num[j], c), D);
            const auto Rs = det_ratio(eval_det(nst[j], c), D);
            const cx ph = std::exp(I * (-E[j] * x + F[j] * t));
            pt.psi.push_back(A[j] * std::exp(I * theta) * R.value * ph);
            pt.psistar.push_back(q2[j] / A[j] * std::exp(-I * theta) * Rs.value / ph);
        }
        return pt;
    };
    return sol;
}

} // namespace detail

inline NlsSolution build_complexified(const NlsParams& p)
{
    auto s = detail::nls_setup(p);
    detail::check_fiber_sum(s, p.pairs);
    std::vector<cx> A = p.A.empty() ? std::vector<cx>(s.n, cx{1.0}) : p.A;
    return detail::t_family(NlsFamily::Complexified, s, p.pairs, p.d, A, p.theta);
}

inline std::vector<cx> physical_amplitudes(const detail::NlsSetup& s)
{
    std::vector<cx> A;
    for (std::size_t j = 0; j < s.n; ++j) A.push_back(std::sqrt(std::abs(q2_k1(s.anchor(), s.a[j], s.kn(), s.k[j]).q2)));
    return A;
}

inline NlsSolution build_dark(const NlsParams& p)
{
    auto s = detail::nls_setup(p);
    detail::require_real_fiber(p, s, "dark");
    p.pairs.validate();
    for (std::size_t k = 0; k < p.pairs.size(); ++k) {
        if (!detail::close(std::conj(p.pairs.u[k]), p.pairs.v[k]))
            throw Error(ErrorKind::Constraint, "dark: pair " + std::to_string(k + 1) + " needs conj(w_u) = w_v");
        if (k < p.d.size() && std::abs(p.d[k].imag()) > 1e-12 * detail::rel_tol_scale(p.d[k]))
            throw Error(ErrorKind::Constraint, "dark: d must be real");
    }
    detail::check_fiber_sum(s, p.pairs);
    auto sol = detail::t_family(NlsFamily::Dark, s, p.pairs, p.d, physical_amplitudes(s), p.theta);
    if (std::all_of(sol.s.begin(), sol.s.end(), [](int v) { return v == 1; }))
        throw Error(ErrorKind::FocusingObstruction, "dark solitons cannot have all signs s_j = +1");
    sol.physical = true;
    return sol;
}

// Balance identity 1/|a_{n+1}-v|^2 + sum_j (k'_{n+1}/k'_j)/|a_j - v|^2 for each pair point v.
inline std::vector<double> dark_balance(const NlsParams& p)
{
    auto s = detail::nls_setup(p);
    std::vector<double> out;
    for (cx v : p.pairs.v) {
        double acc = 1.0 / std::norm(s.anchor() - v);
        for (std::size_t j = 0; j < s.n; ++j) acc += (s.kn().k1 / s.k[j].k1).real() / std::norm(s.a[j] - v);
        out.push_back(acc);
    }
    return out;
}

inline NlsSolution galilean_transform(const NlsSolution& sol, cx beta, cx mu)
{
    if (beta == cx{}) throw Error(ErrorKind::ZeroBeta, "galilean_transform: beta must be nonzero");
    const cx lam = mu / beta;
    NlsSolution out = sol;
    for (std::size_t j = 0; j < sol.E.size(); ++j) {
        out.E[j] = sol.E[j] * beta + lam;
        out.F[j] = sol.F[j] * beta * beta - 2.0 * sol.E[j] * beta * lam - lam * lam;
    }
    out.physical = sol.physical && std::abs(beta * beta - 1.0) == 0.0 && lam.imag() == 0.0;
    auto inner = sol.eval;
    out.eval = [=](cx x, cx t) {
        NlsPoint p = inner(beta * x + 2.0 * beta * lam * t, beta * beta * t);
        const cx ph = std::exp(-I * (lam * x + lam * lam * t));
        for (auto& v : p.psi) v *= ph;
        for (auto& v : p.psistar) v *= beta * beta / ph;
        return p;
    };
    return out;
}

inline NlsSolution build_breather(const NlsParams& p, bool apply_transform = true)
{
    auto s = detail::nls_setup(p);
    detail::require_real_fiber(p, s, "breather");
    const auto& P = p.pairs;
    P.validate();
    if (P.size() % 2 != 0 || P.size() == 0) throw Error(ErrorKind::Constraint, "breather: number of pairs must be even and positive");
    if (p.d.size() != P.size()) throw Error(ErrorKind::Constraint, "breather: d must have one entry per pair");
    for (std::size_t k = 0; k + 1 < P.size(); k += 2) {
        if (!detail::close(std::conj(P.u[k + 1]), P.v[k]) || !detail::close(std::conj(P.u[k]), P.v[k + 1]))
            throw Error(ErrorKind::Constraint, "breather: pairs " + std::to_string(k + 1) + "," + std::to_string(k + 2) +
                                                   " need conj(u_2k) = v_2k-1 and conj(u_2k-1) = v_2k");
        if (!detail::close(std::conj(p.d[k]), p.d[k + 1]))
            throw Error(ErrorKind::Constraint, "breather: d_2k must equal conj(d_2k-1)");
    }
    detail::check_fiber_sum(s, P);
    auto sol = detail::t_family(NlsFamily::Breather, s, P, p.d, physical_amplitudes(s), p.theta);
    sol.physical = true;
    if (!apply_transform) return sol;
    const cx lam = s.kn().k2 / (2.0 * s.kn().k1 * s.kn().k1);
    auto out = galilean_transform(sol, cx{1.0}, lam);
    out.physical = true;
    return out;
}

namespace detail {
inline void require_gamma(const std::vector<double>& gamma, std::size_t n)
{
    if (gamma.size() != n) throw Error(ErrorKind::Constraint, "bright: gamma must have n entries");
    for (double g : gamma)
        if (g == 0.0) throw Error(ErrorKind::ZeroGamma, "bright: gamma_j must be nonzero");
}
} // namespace detail

// Bright N-soliton. pairs.v holds w_{v_{2k-1}}; pairs.u may be empty or hold conj(w_{v_{2k-1}}) = w_{u_{2k}}.
// d holds d_hat_{2k-1}. Coordinates are shifted so that the anchor sits at the origin.
inline NlsSolution build_bright(const NlsParams& p)
{
    auto s = detail::nls_setup(p);
    detail::require_real_fiber(p, s, "bright");
    detail::require_gamma(p.gamma, s.n);
    const std::size_t N = p.pairs.v.size();
    if (N == 0) throw Error(ErrorKind::Constraint, "bright: at least one soliton needed");
    if (p.d.size() != N) throw Error(ErrorKind::Constraint, "bright: d must have one entry per soliton");
    if (!p.pairs.u.empty()) {
        if (p.pairs.u.size() != N) throw Error(ErrorKind::Constraint, "bright: pairs.u size mismatch");
        for (std::size_t k = 0; k < N; ++k)
            if (!detail::close(std::conj(p.pairs.v[k]), p.pairs.u[k]))
                throw Error(ErrorKind::Constraint, "bright: conj(w_u_2k) must equal w_v_2k-1");
    }
    const cx an = s.anchor();
    std::vector<double> aj;
    for (std::size_t j = 0; j < s.n; ++j) aj.push_back((s.a[j] - an).real());
    std::vector<cx> vo, ue, au, av;
    for (std::size_t k = 0; k < N; ++k) {
        const cx v = p.pairs.v[k] - an;
        if (std::abs(v.imag()) == 0.0) throw Error(ErrorKind::Constraint, "bright: w_v must be non-real");
        vo.push_back(v);
        ue.push_back(std::conj(v));
        cx alpha{};
        for (std::size_t j = 0; j < s.n; ++j) {
            detail::check_apart(cx{aj[j]}, v, "bright");
            alpha += p.gamma[j] * (1.0 / aj[j] - 1.0 / (aj[j] - v));
        }
        if (std::abs(alpha) == 0.0) throw Error(ErrorKind::Constraint, "bright: alpha vanishes");
        au.push_back(alpha);
        av.push_back(std::conj(alpha));
    }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k)
            if (av[i] == au[k]) throw Error(ErrorKind::Coincidence, "bright: alpha_v equals alpha_u");

    NlsSolution sol;
    sol.family = NlsFamily::Bright;
    sol.n = s.n;
    sol.physical = true;
    for (std::size_t j = 0; j < s.n; ++j) {
        sol.A.push_back(std::sqrt(std::abs(p.gamma[j])) / std::abs(aj[j]));
        sol.s.push_back(detail::sign_of(p.gamma[j]));
        sol.E.push_back(cx{});
        sol.F.push_back(cx{});
    }
    std::vector<AffineArg> zo, ze;
    for (std::size_t k = 0; k < N; ++k) {
        zo.push_back(AffineArg{I * au[k], cx{}, I * au[k] * au[k], -p.d[k]});
        ze.push_back(AffineArg{-I * av[k], cx{}, -I * av[k] * av[k], -std::conj(p.d[k])});
    }
    Eigen::MatrixXcd X(N, N), Y(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            X(i, k) = vo[i] / (vo[i] - ue[k]);
            Y(i, k) = ue[i] * av[i] * au[k] / (av[i] - au[k]);
        }
    auto halves = [](std::vector<AffineArg> v) {
        for (auto& a : v) a = a * cx{0.5};
        return v;
    };
    auto den = build_bright_M(X, Y, halves(zo), halves(ze));
    const auto n2 = static_cast<Eigen::Index>(2 * N);
    std::vector<DetMatrixSpec> num, nst;
    for (std::size_t j = 0; j < s.n; ++j) {
        std::vector<cx> ro, re;
        for (std::size_t k = 0; k < N; ++k) {
            ro.push_back(std::log((aj[j] - vo[k]) / (aj[j] * vo[k] * au[k])));
            re.push_back(-std::conj(ro.back()));
        }
        sol.r.push_back(ro);
        auto wo = zo, we = ze;
        for (std::size_t k = 0; k < N; ++k) {
            wo[k] = wo[k].shifted(ro[k]);
            we[k] = we[k].shifted(re[k]);
        }
        Eigen::VectorXcd pv = Eigen::VectorXcd::Zero(n2), qv = Eigen::VectorXcd::Zero(n2);
        for (std::size_t k = 0; k < N; ++k) {
            pv(static_cast<Eigen::Index>(N + k)) = ue[k];
            qv(static_cast<Eigen::Index>(N + k)) = 1.0 / ue[k];
        }
        num.push_back(border(build_bright_M(X, Y, halves(wo), halves(we)), pv, qv));
        wo = zo;
        we = ze;
        for (std::size_t k = 0; k < N; ++k) {
            wo[k] = wo[k].shifted(-ro[k]);
            we[k] = we[k].shifted(-re[k]);
        }
        Eigen::VectorXcd ones = Eigen::VectorXcd::Zero(n2);
        ones.head(static_cast<Eigen::Index>(N)).setOnes();
        nst.push_back(border(build_bright_M(X, Y, halves(wo), halves(we)), ones, ones));
    }
    const auto A = sol.A;
    const auto sg = sol.s;
    const double theta = p.theta;
    sol.eval = [=](cx x, cx t) {
        NlsPoint pt;
        const Coord c{x, cx{}, t};
        const DetValue D = eval_det(den, c);
        pt.singular = D.singular();
        for (std::size_t j = 0; j < A.size(); ++j) {
            const auto R = det_ratio(eval_det(num[j], c), D);
            const auto Rs = det_ratio(eval_det(nst[j], c), D);
            pt.psi.push_back(-A[j] * std::exp(I * theta) * R.value);
            pt.psistar.push_back(-double(sg[j]) * A[j] * std::exp(-I * theta) * Rs.value);
        }
        return pt;
    };
    return sol;
}

// Rational breather. pairs.u holds the critical points w_{u_{2k-1}}; w_{v_{2k}} = conj of each.
// d holds d_hat_{2k-1}; d_hat_{2k} is its conjugate.
inline NlsSolution build_rational_breather(const NlsParams& p)
{
    auto s = detail::nls_setup(p);
    detail::require_real_fiber(p, s, "rational");
    const std::size_t N = p.pairs.u.size();
    if (N < 1 || N > s.n) throw Error(ErrorKind::Size, "rational: need 1 <= N <= n");
    if (p.d.size() != N) throw Error(ErrorKind::Constraint, "rational: d must have one entry per critical point");
    const cx an = s.anchor();
    const cx kn = s.kn().k1;
    for (std::size_t k = 0; k < N; ++k) {
        const cx w = p.pairs.u[k];
        if (std::abs(w.imag()) <= 1e-12 * detail::rel_tol_scale(w))
            throw Error(ErrorKind::Constraint, "rational: critical point must be non-real");
        if (!p.pairs.v.empty() && (p.pairs.v.size() != N || !detail::close(p.pairs.v[k], std::conj(w))))
            throw Error(ErrorKind::Constraint, "rational: w_v_2k must equal conj(w_u_2k-1)");
        cx sum{};
        double mag = 0.0;
        for (std::size_t i = 0; i < s.a.size(); ++i) {
            detail::check_apart(s.a[i], w, "rational");
            const cx term = 1.0 / (s.k[i].k1 * (w - s.a[i]) * (w - s.a[i]));
            sum += term;
            mag += std::abs(term);
        }
        if (std::abs(sum) > 1e-8 * mag)
            throw Error(ErrorKind::NonCriticalPoint, "rational: " + fmt(w) + " is not a critical point (residual " + fmt(sum) + ")");
    }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = i + 1; k < N; ++k)
            if (std::abs(p.pairs.u[i] - p.pairs.u[k]) == 0.0 || std::abs(p.pairs.u[i] - std::conj(p.pairs.u[k])) == 0.0)
                throw Error(ErrorKind::Coincidence, "rational: repeated critical point");

    NlsSolution sol;
    sol.family = NlsFamily::Rational;
    sol.n = s.n;
    sol.physical = true;
    std::vector<cx> q2(s.n);
    cx q2sum{};
    for (std::size_t j = 0; j < s.n; ++j) {
        q2[j] = q2_k1(an, s.a[j], s.kn(), s.k[j]).q2;
        q2sum += q2[j];
        sol.A.push_back(std::sqrt(std::abs(q2[j])));
        sol.s.push_back(detail::sign_of(q2[j].real()));
        sol.E.push_back(1.0 / (kn * (s.a[j] - an)));
    }
    for (std::size_t j = 0; j < s.n; ++j) sol.F.push_back(-sol.E[j] * sol.E[j] + 2.0 * q2sum);

    // Interleaved order: index 2k is u_{2k+1}, index 2k+1 is v_{2k+2}.
    std::vector<cx> pts;
    std::vector<AffineArg> z;
    for (std::size_t k = 0; k < N; ++k) {
        const cx u = p.pairs.u[k];
        const cx Vo = 1.0 / (kn * (an - u) * (an - u));
        const cx Wo = -2.0 / (kn * kn * (an - u) * (an - u) * (an - u));
        pts.push_back(u);
        pts.push_back(std::conj(u));
        z.push_back(AffineArg{I * Vo, cx{}, I * Wo, -p.d[k]});
        z.push_back(AffineArg{I * -std::conj(Vo), cx{}, I * -std::conj(Wo), -std::conj(p.d[k])});
        sol.V.push_back(Vo);
        sol.V.push_back(-std::conj(Vo));
        sol.W.push_back(Wo);
        sol.W.push_back(-std::conj(Wo));
    }
    auto den = build_ratK(pts, z);
    std::vector<DetMatrixSpec> num, nst;
    for (std::size_t j = 0; j < s.n; ++j) {
        std::vector<cx> rr;
        for (std::size_t k = 0; k < N; ++k) {
            const cx u = p.pairs.u[k];
            const cx ro = -(an - s.a[j]) / ((an - u) * (s.a[j] - u));
            rr.push_back(ro);
            rr.push_back(-std::conj(ro));
        }
        sol.r.push_back(rr);
        auto zp = z, zm = z;
        for (std::size_t k = 0; k < z.size(); ++k) {
            zp[k] = zp[k].shifted(rr[k]);
            zm[k] = zm[k].shifted(-rr[k]);
        }
        num.push_back(build_ratK(pts, zp));
        nst.push_back(build_ratK(pts, zm));
    }
    const auto A = sol.A;
    const auto E = sol.E;
    const auto F = sol.F;
    const double theta = p.theta;
    sol.eval = [=](cx x, cx t) {
        NlsPoint pt;
        const Coord c{x, cx{}, t};
        const DetValue D = eval_det(den, c);
        pt.singular = D.singular();
        for (std::size_t j = 0; j < A.size(); ++j) {
            const auto R = det_ratio(eval_det(num[j], c), D);
            const auto Rs = det_ratio(eval_det(nst[j], c), D);
            const cx ph = std::exp(I * (-E[j] * x + F[j] * t));
            pt.psi.push_back(A[j] * std::exp(I * theta) * R.value * ph);
            pt.psistar.push_back(q2[j] / A[j] * std::exp(-I * theta) * Rs.value / ph);
        }
        return pt;
    };
    return sol;
}

// Root of f(w) = c nearest to hint.
inline cx root_near(const RationalMap& f, cx c, cx hint)
{
    auto r = fiber(f, c);
    return *std::min_element(r.begin(), r.end(), [&](cx x, cx y) { return std::abs(x - hint) < std::abs(y - hint); });
}

// Dark pair for a real value c: u is the root of f = c nearest hint, v = conj(u).
inline PairData dark_pair(const RationalMap& f, double c, cx hint)
{
    const cx u = root_near(f, cx{c}, hint);
    if (u.imag() == 0.0) throw Error(ErrorKind::Constraint, "dark_pair: selected root is real");
    return PairData{{u}, {std::conj(u)}};
}

// Breather pairs: u1 from f = c, u2 from f = conj(c), v1 = conj(u2), v2 = conj(u1).
inline PairData breather_pairs(const RationalMap& f, cx c, cx hint1, cx hint2)
{
    const cx u1 = root_near(f, c, hint1);
    const cx u2 = root_near(f, std::conj(c), hint2);
    return PairData{{u1, u2}, {std::conj(u2), std::conj(u1)}};
}

inline PairData concat(const PairData& a, const PairData& b)
{
    PairData r = a;
    r.u.insert(r.u.end(), b.u.begin(), b.u.end());
    r.v.insert(r.v.end(), b.v.begin(), b.v.end());
    return r;
}

} // namespace solitonic
