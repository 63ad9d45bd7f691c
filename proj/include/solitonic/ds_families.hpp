#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cxcore.hpp"
#include "degenconst.hpp"
#include "detkernel.hpp"

namespace solitonic {

enum class DsVariant { DS1, DS2 };

enum class DsFamily { Complexified, Dark, Bright, Breather, Rational, Dromion, Lump };

inline const char* to_string(DsVariant v) { return v == DsVariant::DS1 ? "DS1" : "DS2"; }

inline const char* to_string(DsFamily f)
{
    switch (f) {
    case DsFamily::Complexified: return "ds_complexified";
    case DsFamily::Dark: return "ds_dark";
    case DsFamily::Bright: return "ds_bright";
    case DsFamily::Breather: return "ds_breather";
    case DsFamily::Rational: return "ds_rational";
    case DsFamily::Dromion: return "ds_dromion";
    case DsFamily::Lump: return "ds_lump";
    }
    return "?";
}

struct CharCoords {
    cx xi, eta;
};

// DS1: xi = (x+y)/2, eta = (x-y)/2. DS2: xi = (x-iy)/2, eta = (x+iy)/2.
inline CharCoords char_coords(DsVariant v, cx x, cx y)
{
    if (v == DsVariant::DS1) return {(x + y) / 2.0, (x - y) / 2.0};
    return {(x - I * y) / 2.0, (x + I * y) / 2.0};
}

inline std::pair<cx, cx> xy_from_char(DsVariant v, cx xi, cx eta)
{
    if (v == DsVariant::DS1) return {xi + eta, xi - eta};
    return {xi + eta, I * (xi - eta)};
}

struct DsParams {
    DsVariant variant = DsVariant::DS1;
    cx wa{}, wb{};
    cx kappa1{1.0}, kappa2{1.0};
    double h = 0.0;
    PairData pairs;
    std::vector<cx> d;
    double theta = 0.0;
    // Degenerate families: bright (2N interleaved entries), dromion (entries for indices 1 and 3).
    cx kappa_hat1{1.0}, kappa_hat2{1.0};
    std::vector<cx> alpha_u, alpha_v, dhat;
    // Lump.
    cx lambda{}, mu{}, nu{};
};

struct DsPoint {
    cx psi, psistar, phi;
    bool singular = false;
};

struct DsSolution {
    DsFamily family = DsFamily::Complexified;
    DsVariant variant = DsVariant::DS1;
    int rho = 1;
    // psi* = rho conj(psi) expected on the physical slice.
    bool physical = false;
    cx A{}, G1{}, G2{}, G3{};
    double h = 0.0;
    std::function<DsPoint(cx, cx, cx)> eval;

    DsPoint at_char(cx xi, cx eta, cx t) const { return eval(xi, eta, t); }

    DsPoint at_xy(double x, double y, double t) const
    {
        auto c = char_coords(variant, cx{x}, cx{y});
        return eval(c.xi, c.eta, cx{t});
    }

    // Phi = phi - rho |psi|^2
    cx Phi(const DsPoint& p) const { return p.phi - double(rho) * std::norm(p.psi); }
};

namespace detail {

inline bool ds_close(cx x, cx y, double tol = 1e-10) { return std::abs(x - y) <= tol * (1.0 + std::abs(x) + std::abs(y)); }
inline bool is_real(cx x, double tol = 1e-12) { return std::abs(x.imag()) <= tol * (1.0 + std::abs(x)); }
inline int sgn(double x) { return x < 0 ? -1 : 1; }

inline void require(bool ok, const std::string& msg)
{
    if (!ok) throw Error(ErrorKind::Constraint, msg);
}

inline cx phi_of(const DetMatrixSpec& den, const Coord& c, double h)
{
    return 0.5 * logdet_d2(den, c, Coord{cx{1.0}, cx{}, cx{}}) + 0.5 * logdet_d2(den, c, Coord{cx{}, cx{1.0}, cx{}}) + h / 4.0;
}

// psi = A e^{i theta} num/den e^{-i(G1 xi + G2 eta - G3 t/2)}, psi* with prefactor Astar and the opposite phase.
inline DsSolution ratio_family(DsFamily fam, DsVariant var, cx A, cx Astar, cx G1, cx G2, cx G3, double h, double theta,
                               DetMatrixSpec num, DetMatrixSpec nst, DetMatrixSpec den)
{
    DsSolution sol;
    sol.family = fam;
    sol.variant = var;
    sol.A = A;
    sol.G1 = G1;
    sol.G2 = G2;
    sol.G3 = G3;
    sol.h = h;
    sol.eval = [=](cx xi, cx eta, cx t) {
        DsPoint p;
        const Coord c{xi, eta, t};
        const DetValue D = eval_det(den, c);
        p.singular = D.singular();
        const cx ph = std::exp(-I * (G1 * xi + G2 * eta - G3 * t / 2.0));
        p.psi = A * std::exp(I * theta) * det_ratio(eval_det(num, c), D).value * ph;
        p.psistar = Astar * std::exp(-I * theta) * det_ratio(eval_det(nst, c), D).value / ph;
        p.phi = p.singular ? cx{std::numeric_limits<double>::quiet_NaN()} : phi_of(den, c, h);
        return p;
    };
    return sol;
}

inline void check_anchors(const DsParams& p)
{
    if (p.wa == p.wb) throw Error(ErrorKind::Coincidence, "w_a equals w_b");
    if (p.kappa1 == cx{} || p.kappa2 == cx{}) throw Error(ErrorKind::Constraint, "kappa must be nonzero");
}

} // namespace detail

inline DsSolution build_ds_complexified(const DsParams& p)
{
    detail::check_anchors(p);
    const auto& P = p.pairs;
    P.validate();
    if (p.d.size() != P.size()) throw Error(ErrorKind::Constraint, "d must have one entry per pair");
    const cx a = p.wa, b = p.wb, k1 = p.kappa1, k2 = p.kappa2;
    auto Va = v_vector(a, cx{1.0}, P), Vb = v_vector(b, cx{1.0}, P);
    auto Wa = w_vector(a, cx{1.0}, cx{}, P), Wb = w_vector(b, cx{1.0}, cx{}, P);
    auto r = r_vector(a, b, P);
    std::vector<AffineArg> z, zp, zm;
    for (std::size_t k = 0; k < P.size(); ++k) {
        AffineArg arg{I * k1 * Va[k], -I * k2 * Vb[k], I * (k1 * k1 * Wa[k] - k2 * k2 * Wb[k]) / 2.0, -p.d[k]};
        z.push_back(arg);
        zp.push_back(arg.shifted(r[k]));
        zm.push_back(arg.shifted(-r[k]));
    }
    const cx G1 = k1 / (b - a), G2 = k2 / (a - b);
    const cx G3 = -G1 * G1 - G2 * G2 + p.h;
    const double A = std::sqrt(std::abs(k1 * k2)) / std::abs(a - b);
    const cx Astar = -k1 * k2 / (A * (a - b) * (a - b));
    return detail::ratio_family(DsFamily::Complexified, p.variant, A, Astar, G1, G2, G3, p.h, p.theta, build_T(P, zp),
                                build_T(P, zm), build_T(P, z));
}

// DS1: real w_a, w_b, kappa, d and conj(w_v) = w_u. DS2+: conj(w_a) = w_b, conj(kappa1) = kappa2,
// real pairs interlaced as w_v1 < w_u1 < w_v2 < ... < w_uN.
inline DsSolution build_ds_dark(const DsParams& p)
{
    using detail::require;
    detail::check_anchors(p);
    const auto& P = p.pairs;
    P.validate();
    for (cx d : p.d) require(detail::is_real(d), "ds dark: d must be real");
    DsSolution sol;
    if (p.variant == DsVariant::DS1) {
        require(detail::is_real(p.wa) && detail::is_real(p.wb), "ds dark DS1: w_a, w_b must be real");
        require(detail::is_real(p.kappa1) && detail::is_real(p.kappa2), "ds dark DS1: kappa must be real");
        for (std::size_t k = 0; k < P.size(); ++k)
            require(detail::ds_close(std::conj(P.v[k]), P.u[k]), "ds dark DS1: pair " + std::to_string(k + 1) + " needs conj(w_v) = w_u");
        sol = build_ds_complexified(p);
        sol.rho = -detail::sgn((p.kappa1 * p.kappa2).real());
    } else {
        require(detail::ds_close(std::conj(p.wa), p.wb) && !detail::is_real(p.wa), "ds dark DS2+: need conj(w_a) = w_b non-real");
        require(detail::ds_close(std::conj(p.kappa1), p.kappa2), "ds dark DS2+: need conj(kappa1) = kappa2");
        double prev = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < P.size(); ++k) {
            require(detail::is_real(P.u[k]) && detail::is_real(P.v[k]), "ds dark DS2+: pair points must be real");
            for (double x : {P.v[k].real(), P.u[k].real()}) {
                if (!(x > prev)) throw Error(ErrorKind::Ordering, "ds dark DS2+: pairs must interlace as w_v1 < w_u1 < w_v2 < ...");
                prev = x;
            }
        }
        sol = build_ds_complexified(p);
        sol.rho = 1;
    }
    sol.family = DsFamily::Dark;
    sol.physical = true;
    return sol;
}

// DS1 breather: pairs in twos with conj(w_v2k) = w_u2k-1, conj(w_v2k-1) = w_u2k. pairs.v may be left empty.
inline DsSolution build_ds_breather(const DsParams& p)
{
    using detail::require;
    detail::check_anchors(p);
    require(p.variant == DsVariant::DS1, "ds breather: DS1 only");
    DsParams q = p;
    auto& P = q.pairs;
    require(P.u.size() % 2 == 0 && !P.u.empty(), "ds breather: need an even positive number of pairs");
    if (P.v.empty())
        for (std::size_t k = 0; k < P.u.size(); k += 2) {
            P.v.push_back(std::conj(P.u[k + 1]));
            P.v.push_back(std::conj(P.u[k]));
        }
    require(P.v.size() == P.u.size(), "ds breather: u and v sizes differ");
    require(detail::is_real(p.wa) && detail::is_real(p.wb), "ds breather: w_a, w_b must be real");
    require(detail::is_real(p.kappa1) && detail::is_real(p.kappa2), "ds breather: kappa must be real");
    for (std::size_t k = 0; k < P.u.size(); k += 2) {
        require(detail::ds_close(std::conj(P.v[k + 1]), P.u[k]) && detail::ds_close(std::conj(P.v[k]), P.u[k + 1]),
                "ds breather: pairs " + std::to_string(k + 1) + "," + std::to_string(k + 2) + " violate the pairing");
        require(k + 1 < q.d.size() && detail::ds_close(std::conj(q.d[k]), q.d[k + 1]), "ds breather: need d_2k = conj(d_2k-1)");
    }
    auto sol = build_ds_complexified(q);
    sol.family = DsFamily::Breather;
    sol.rho = -detail::sgn((p.kappa1 * p.kappa2).real());
    sol.physical = true;
    return sol;
}

// DS1 rational breather. pairs.u holds w_{u_{2k-1}}, d holds d_hat_{2k-1}.
inline DsSolution build_ds_rational(const DsParams& p)
{
    using detail::require;
    detail::check_anchors(p);
    require(p.variant == DsVariant::DS1, "ds rational: DS1 only");
    require(detail::is_real(p.wa) && detail::is_real(p.wb), "ds rational: w_a, w_b must be real");
    require(detail::is_real(p.kappa1) && detail::is_real(p.kappa2), "ds rational: kappa must be real");
    const std::size_t N = p.pairs.u.size();
    require(N > 0, "ds rational: at least one point needed");
    require(p.d.size() == N, "ds rational: d must have one entry per point");
    if (!p.pairs.v.empty()) {
        require(p.pairs.v.size() == N, "ds rational: pairs.v size mismatch");
        for (std::size_t k = 0; k < N; ++k)
            require(detail::ds_close(p.pairs.v[k], std::conj(p.pairs.u[k])), "ds rational: need w_v2k = conj(w_u2k-1)");
    }
    const cx a = p.wa, b = p.wb, k1 = p.kappa1, k2 = p.kappa2;
    std::vector<cx> pts;
    std::vector<AffineArg> z, zp, zm;
    for (std::size_t k = 0; k < N; ++k) {
        const cx u = p.pairs.u[k];
        require(!detail::is_real(u), "ds rational: w_u must be non-real");
        detail::check_apart(a, u, "ds rational");
        detail::check_apart(b, u, "ds rational");
        auto Vo = [&](cx c) { return 1.0 / ((c - u) * (c - u)); };
        auto Wo = [&](cx c) { return -2.0 / ((c - u) * (c - u) * (c - u)); };
        const cx ro = -(a - b) / ((a - u) * (b - u));
        AffineArg odd{I * k1 * Vo(a), -I * k2 * Vo(b), I * (k1 * k1 * Wo(a) - k2 * k2 * Wo(b)) / 2.0, -p.d[k]};
        AffineArg even{I * k1 * -std::conj(Vo(a)), -I * k2 * -std::conj(Vo(b)),
                       I * (k1 * k1 * -std::conj(Wo(a)) - k2 * k2 * -std::conj(Wo(b))) / 2.0, -std::conj(p.d[k])};
        pts.push_back(u);
        pts.push_back(std::conj(u));
        z.push_back(odd);
        z.push_back(even);
        zp.push_back(odd.shifted(ro));
        zp.push_back(even.shifted(-std::conj(ro)));
        zm.push_back(odd.shifted(-ro));
        zm.push_back(even.shifted(std::conj(ro)));
    }
    const cx G1 = k1 / (b - a), G2 = k2 / (a - b);
    const cx G3 = -G1 * G1 - G2 * G2 + p.h;
    const double A = std::sqrt(std::abs(k1 * k2)) / std::abs(a - b);
    const cx Astar = -k1 * k2 / (A * (a - b) * (a - b));
    auto sol = detail::ratio_family(DsFamily::Rational, DsVariant::DS1, A, Astar, G1, G2, G3, p.h, p.theta,
                                    build_ratK(pts, zp), build_ratK(pts, zm), build_ratK(pts, z));
    sol.rho = -detail::sgn((k1 * k2).real());
    sol.physical = true;
    return sol;
}

// Bright N-soliton. alpha_u, alpha_v, dhat hold 2N entries in index order 1..2N.
// DS1 uses the H1 constraints, DS2 the DS2- constraints with gamma = 1.
inline DsSolution build_ds_bright(const DsParams& p)
{
    using detail::require;
    const std::size_t g = p.alpha_u.size();
    require(g > 0 && g % 2 == 0, "ds bright: need 2N alpha entries");
    require(p.alpha_v.size() == g && p.dhat.size() == g, "ds bright: alpha_v and dhat need 2N entries");
    const cx k1 = p.kappa_hat1, k2 = p.kappa_hat2;
    require(k1 != cx{} && k2 != cx{}, "ds bright: kappa_hat must be nonzero");
    const auto& au = p.alpha_u;
    const auto& av = p.alpha_v;
    const auto& dh = p.dhat;
    double gamma = 0.0;
    int rho = 1;
    for (std::size_t k = 0; k < g; k += 2)
        require(detail::ds_close(dh[k + 1], std::conj(dh[k])), "ds bright: need dhat_2k = conj(dhat_2k-1)");
    if (p.variant == DsVariant::DS1) {
        require(detail::is_real(k1) && detail::is_real(k2), "ds bright H1: kappa_hat must be real");
        for (std::size_t k = 0; k < g; k += 2)
            require(detail::ds_close(av[k + 1], std::conj(au[k])) && detail::ds_close(av[k], std::conj(au[k + 1])),
                    "ds bright H1: need alpha_v2k = conj(alpha_u2k-1), alpha_v2k-1 = conj(alpha_u2k)");
        rho = -detail::sgn((k1 * k2).real());
    } else {
        require(detail::ds_close(k2, -std::conj(k1)), "ds bright DS2-: need kappa_hat2 = -conj(kappa_hat1)");
        for (std::size_t k = 0; k < g; k += 2)
            require(detail::ds_close(au[k + 1], -std::conj(au[k])) && detail::ds_close(av[k + 1], -std::conj(av[k])),
                    "ds bright DS2-: need alpha_2k = -conj(alpha_2k-1) for u and v");
        gamma = 1.0;
        rho = -1;
    }
    const std::size_t N = g / 2;
    std::vector<AffineArg> z(g);
    std::vector<cx> r(g);
    for (std::size_t k = 0; k < g; ++k) {
        require(au[k] != cx{} && av[k] != cx{}, "ds bright: alpha must be nonzero");
        const cx c0 = -dh[k] + gamma * I * std::numbers::pi / 2.0;
        if (k % 2 == 0)
            z[k] = AffineArg{I * k1 * au[k], I * k2 * av[k], I * (k1 * k1 * au[k] * au[k] + k2 * k2 * av[k] * av[k]) / 2.0, c0};
        else
            z[k] = AffineArg{-I * k1 * av[k], -I * k2 * au[k], -I * (k1 * k1 * av[k] * av[k] + k2 * k2 * au[k] * au[k]) / 2.0, c0};
        r[k] = (k % 2 == 0 ? -1.0 : 1.0) * std::log(-av[k] * au[k]);
    }
    Eigen::MatrixXcd X(N, N), Y(N, N);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            const cx vo = av[2 * i], ue = au[2 * k + 1], ve = av[2 * i + 1], uo = au[2 * k];
            if (vo == ue || ve == uo) throw Error(ErrorKind::Coincidence, "ds bright: alpha_v equals alpha_u");
            X(i, k) = vo * ue / (vo - ue);
            Y(i, k) = -ve * uo / (ve - uo);
        }
    auto split = [&](const std::vector<AffineArg>& w, std::vector<AffineArg>& ho, std::vector<AffineArg>& he) {
        ho.clear();
        he.clear();
        for (std::size_t k = 0; k < g; ++k) (k % 2 == 0 ? ho : he).push_back(w[k] * cx{0.5});
    };
    std::vector<AffineArg> ho, he, wp(g), wm(g);
    for (std::size_t k = 0; k < g; ++k) {
        wp[k] = z[k].shifted(r[k]);
        wm[k] = z[k].shifted(-r[k]);
    }
    split(z, ho, he);
    auto den = build_bright_M(X, Y, ho, he);
    const auto n2 = static_cast<Eigen::Index>(g);
    const auto Ni = static_cast<Eigen::Index>(N);
    Eigen::VectorXcd even = Eigen::VectorXcd::Zero(n2), odd = Eigen::VectorXcd::Zero(n2);
    even.tail(Ni).setOnes();
    odd.head(Ni).setOnes();
    split(wp, ho, he);
    auto num = border(build_bright_M(X, Y, ho, he), even, even);
    split(wm, ho, he);
    auto nst = border(build_bright_M(X, Y, ho, he), odd, odd);

    DsSolution sol;
    sol.family = DsFamily::Bright;
    sol.variant = p.variant;
    sol.rho = rho;
    sol.physical = true;
    const double Ah = std::sqrt(std::abs(k1 * k2));
    const cx Astar = -k1 * k2 / Ah;
    sol.A = Ah;
    sol.G3 = p.h;
    sol.h = p.h;
    const double h = p.h, theta = p.theta;
    sol.eval = [=](cx xi, cx eta, cx t) {
        DsPoint pt;
        const Coord c{xi, eta, t};
        const DetValue D = eval_det(den, c);
        pt.singular = D.singular();
        const cx ph = std::exp(I * theta + I * h * t / 2.0);
        pt.psi = -Ah * ph * det_ratio(eval_det(num, c), D).value;
        pt.psistar = -Astar / ph * det_ratio(eval_det(nst, c), D).value;
        pt.phi = pt.singular ? cx{std::numeric_limits<double>::quiet_NaN()} : detail::phi_of(den, c, h);
        return pt;
    };
    return sol;
}

struct DromionCoefficients {
    double A1, A2, A3;
};

// alpha_u = (alpha_u1, alpha_u3), alpha_v = (alpha_v1, alpha_v3), dhat = (dhat_1, dhat_3).
inline DromionCoefficients dromion_coefficients(const DsParams& p)
{
    if (p.alpha_u.size() != 2 || p.alpha_v.size() != 2)
        throw Error(ErrorKind::Constraint, "dromion: alpha_u and alpha_v need the entries for indices 1 and 3");
    const double a = p.wa.real(), b = p.wb.real();
    const cx au1 = p.alpha_u[0], au3 = p.alpha_u[1], av1 = p.alpha_v[0], av3 = p.alpha_v[1];
    DromionCoefficients c;
    c.A1 = a * a / (4.0 * av1.imag() * au1.imag());
    c.A2 = b * b / (4.0 * av3.imag() * au3.imag());
    c.A3 = c.A1 * c.A2 + (a * b) * (a * b) / (4.0 * av1.imag() * au3.imag() * std::norm(au1 - av3));
    return c;
}

inline DsSolution build_dromion(const DsParams& p)
{
    using detail::require;
    require(detail::is_real(p.wa) && detail::is_real(p.wb), "dromion: w_a, w_b must be real");
    require(p.wa != p.wb, "dromion: w_a equals w_b");
    require(detail::is_real(p.kappa_hat1) && detail::is_real(p.kappa_hat2) && p.kappa_hat1 != cx{} && p.kappa_hat2 != cx{},
            "dromion: kappa_hat must be real and nonzero");
    require(p.dhat.size() == 2, "dromion: dhat needs the entries for indices 1 and 3");
    const auto C = dromion_coefficients(p);
    for (auto [name, v] : {std::pair{"A1", C.A1}, std::pair{"A2", C.A2}, std::pair{"A3", C.A3}})
        if (!(v > 0.0)) throw Error(ErrorKind::Positivity, std::string("dromion: ") + name + " = " + std::to_string(v) + " is not positive");
    const double a = p.wa.real(), b = p.wb.real(), k1 = p.kappa_hat1.real(), k2 = p.kappa_hat2.real();
    const cx au1 = p.alpha_u[0], au3 = p.alpha_u[1], av1 = p.alpha_v[0], av3 = p.alpha_v[1];
    require(av3 != au1, "dromion: alpha_v3 equals alpha_u1");
    const cx Ah = -double(detail::sgn(a - b)) * std::sqrt(std::abs(k1 * k2)) * a * b / ((av3 - au1) * av1 * au3);
    const int rho = -detail::sgn(k1 * k2);
    const cx c1 = -I * k1 / av1, c1t = -I * k1 * k1 / (2.0 * av1 * av1), d1 = p.dhat[0];
    const cx c3 = -I * k2 / au3, c3t = -I * k2 * k2 / (2.0 * au3 * au3), d3 = p.dhat[1];
    const double s1 = 2.0 * c1.real(), s3 = 2.0 * c3.real();
    const double lA1 = std::log(C.A1), lA2 = std::log(C.A2), lA3 = std::log(C.A3);
    const double h = p.h, theta = p.theta;

    DsSolution sol;
    sol.family = DsFamily::Dromion;
    sol.variant = DsVariant::DS1;
    sol.rho = rho;
    sol.physical = true;
    sol.A = Ah;
    sol.G3 = h;
    sol.h = h;
    sol.eval = [=](cx xi, cx eta, cx t) {
        const cx z1 = c1 * xi + c1t * t - d1, z1b = std::conj(c1) * xi + std::conj(c1t) * t - std::conj(d1);
        const cx z3 = c3 * eta + c3t * t - d3, z3b = std::conj(c3) * eta + std::conj(c3t) * t - std::conj(d3);
        const cx e1 = z1 + z1b, e3 = z3 + z3b;
        const cx T1 = lA1 + e1, T2 = lA2 + e3, T3 = lA3 + e1 + e3;
        const double m = std::max({0.0, T1.real(), T2.real(), T3.real()});
        const cx w0 = std::exp(-m), w1 = std::exp(T1 - m), w2 = std::exp(T2 - m), w3 = std::exp(T3 - m);
        const cx D = w0 + w1 + w2 + w3;
        DsPoint pt;
        const cx ph = std::exp(I * theta + I * h * t / 2.0);
        pt.psi = Ah * ph * std::exp(z1 + z3 - m) / D;
        pt.psistar = double(rho) * std::conj(Ah) / ph * std::exp(z1b + z3b - m) / D;
        const cx Dx = s1 * (w1 + w3), Dxx = s1 * s1 * (w1 + w3);
        const cx De = s3 * (w2 + w3), Dee = s3 * s3 * (w2 + w3);
        pt.phi = 0.5 * (Dxx / D - Dx * Dx / (D * D)) + 0.5 * (Dee / D - De * De / (D * D)) + h / 4.0;
        return pt;
    };
    return sol;
}

// psi = nu exp(-2i Re(lambda xi) - i Re(lambda^2) t + i theta + i h t/2) / (|xi + lambda t + mu|^2 + |nu|^2), DS2-.
inline DsSolution build_lump(const DsParams& p)
{
    if (p.nu == cx{}) throw Error(ErrorKind::ZeroNu, "lump: nu must be nonzero");
    const cx lam = p.lambda, mu = p.mu, nu = p.nu;
    const double h = p.h, theta = p.theta, nn = std::norm(nu);
    DsSolution sol;
    sol.family = DsFamily::Lump;
    sol.variant = DsVariant::DS2;
    sol.rho = -1;
    sol.physical = true;
    sol.A = nu;
    sol.G3 = h;
    sol.h = h;
    sol.eval = [=](cx xi, cx eta, cx t) {
        const cx Z = xi + lam * t + mu;
        const cx Zb = eta + std::conj(lam) * t + std::conj(mu);
        const cx D = Z * Zb + nn;
        const cx ph = std::exp(-I * (lam * xi + std::conj(lam) * eta) - I * (lam * lam).real() * t + I * theta + I * h * t / 2.0);
        DsPoint pt;
        pt.psi = nu * ph / D;
        pt.psistar = -std::conj(nu) / ph / D;
        pt.phi = -0.5 * Zb * Zb / (D * D) - 0.5 * Z * Z / (D * D) + h / 4.0;
        return pt;
    };
    return sol;
}

// psi(xi + b1 t, eta + b2 t, t) exp(-i(b1 xi + b2 eta + (b1^2 + b2^2) t/2)); psi* with the opposite phase.
inline DsSolution ds_symmetry(const DsSolution& sol, cx beta1, cx beta2)
{
    DsSolution out = sol;
    auto inner = sol.eval;
    out.eval = [=](cx xi, cx eta, cx t) {
        DsPoint p = inner(xi + beta1 * t, eta + beta2 * t, t);
        const cx ph = std::exp(-I * (beta1 * xi + beta2 * eta + (beta1 * beta1 + beta2 * beta2) * t / 2.0));
        p.psi *= ph;
        p.psistar /= ph;
        return p;
    };
    return out;
}

// General-builder parameters whose eps -> 0 limit is the dromion of p.
inline DsParams dromion_general_params(const DsParams& p, double eps)
{
    const cx au1 = p.alpha_u[0], au3 = p.alpha_u[1], av1 = p.alpha_v[0], av3 = p.alpha_v[1];
    const cx au2 = std::conj(av1), av2 = std::conj(au1), au4 = std::conj(av3), av4 = std::conj(au3);
    DsParams q;
    q.variant = DsVariant::DS1;
    q.wa = p.wa;
    q.wb = p.wb;
    q.kappa1 = eps * p.kappa_hat1;
    q.kappa2 = eps * p.kappa_hat2;
    q.h = p.h;
    q.theta = p.theta;
    q.pairs.u = {eps * au1, p.wa + eps * au2, p.wb + eps * au3, eps * au4};
    q.pairs.v = {p.wa + eps * av1, eps * av2, eps * av3, p.wb + eps * av4};
    const cx L = -std::log(eps);
    q.d = {L + p.dhat[0], L + std::conj(p.dhat[0]), L + p.dhat[1], L + std::conj(p.dhat[1])};
    return q;
}

inline DsSolution build_dromion_limit(const DsParams& p, double eps) { return build_ds_complexified(dromion_general_params(p, eps)); }

// Degeneration data for a lump: two pairs collapsing onto w_a and w_b.
struct LumpSeed {
    cx wa{}, wb{};
    cx kappa_hat1{1.0}, mu_hat1{}, dhat1{};
    cx alpha_u1{}, alpha_v1{};
    double theta = 0.0, h = 0.0;
};

inline DsParams lump_closed_form_params(const LumpSeed& s)
{
    const cx Vh = -(s.alpha_u1 - s.alpha_v1) / (s.alpha_u1 * s.alpha_v1);
    const cx k1 = s.kappa_hat1, k2 = std::conj(k1);
    const cx au2 = std::conj(s.alpha_u1), av2 = std::conj(s.alpha_v1);
    const cx Afac = std::sqrt(std::abs(k1 * k2)) / std::abs(s.wa - s.wb) * (s.alpha_v1 - s.alpha_u1) * (au2 - av2) / (s.alpha_v1 * au2);
    DsParams p;
    p.variant = DsVariant::DS2;
    p.lambda = s.mu_hat1 / k1;
    p.mu = I * s.dhat1 / (Vh * k1);
    p.nu = Afac / std::norm(Vh * k1);
    p.theta = s.theta;
    p.h = s.h;
    return p;
}

inline DsSolution build_lump_limit(const LumpSeed& s, double eps)
{
    DsParams q;
    q.variant = DsVariant::DS2;
    q.wa = s.wa;
    q.wb = s.wb;
    q.kappa1 = eps * eps * s.kappa_hat1;
    q.kappa2 = eps * eps * std::conj(s.kappa_hat1);
    q.h = s.h;
    q.theta = s.theta;
    q.pairs.u = {s.wa + eps * s.alpha_u1, s.wb + eps * std::conj(s.alpha_u1)};
    q.pairs.v = {s.wa + eps * s.alpha_v1, s.wb + eps * std::conj(s.alpha_v1)};
    q.d = {I * std::numbers::pi + eps * s.dhat1, I * std::numbers::pi + eps * std::conj(s.dhat1)};
    const cx beta = s.mu_hat1 / s.kappa_hat1;
    return ds_symmetry(build_ds_complexified(q), beta, std::conj(beta));
}

} // namespace solitonic
