#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ds_families.hpp"
#include "nls_families.hpp"

namespace solitonic {

struct Axis {
    double lo = 0.0, hi = 0.0;
    int count = 1;

    double step() const { return count > 1 ? (hi - lo) / (count - 1) : 0.0; }
    double at(int i) const { return count > 1 ? lo + (hi - lo) * i / (count - 1) : lo; }
};

struct GridSpec {
    Axis x{-5.0, 5.0, 41};
    Axis y{0.0, 0.0, 1}; // DS only
    Axis t{0.0, 0.0, 1};
    std::vector<double> times; // explicit time slices; overrides t when non-empty
    std::optional<double> fd_step;
    double max_excluded_fraction = 0.01;

    std::vector<double> time_values() const
    {
        if (!times.empty()) return times;
        std::vector<double> out;
        for (int i = 0; i < t.count; ++i) out.push_back(t.at(i));
        return out;
    }

    void validate(bool two_d) const
    {
        if (x.count < 9 || (two_d && y.count < 9)) throw Error(ErrorKind::Config, "grid: spatial axes need at least 9 points");
        if (!(x.hi > x.lo) || (two_d && !(y.hi > y.lo))) throw Error(ErrorKind::Config, "grid: empty spatial range");
        if (time_values().empty()) throw Error(ErrorKind::Config, "grid: no time values");
        if (fd_step && !(*fd_step > 0.0)) throw Error(ErrorKind::Config, "grid: fd_step must be positive");
    }
};

struct ResidualReport {
    double max_abs_residual = 0.0;
    double field_scale = 0.0;
    double relative = 0.0;
    std::array<double, 3> worst_point{}; // (x, y, t)
    std::string worst_equation;
    int stencil_order = 4;
    std::array<double, 3> steps{}; // (hx, hy, ht)
    std::size_t evaluated = 0, excluded = 0;

    bool passes(double tol) const { return relative <= tol; }
};

struct RealityReport {
    double max_abs = 0.0;
    double scale = 0.0;
    double relative = 0.0;
    double phi_imag_relative = 0.0; // DS only
};

namespace detail {

inline bool finite(cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline cx fd1(double h, cx m2, cx m1, cx p1, cx p2) { return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h); }

inline cx fd2(double h, cx m2, cx m1, cx c, cx p1, cx p2) { return (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h); }

inline double pick_step(double grid_step, double omega)
{
    const double fine = 0.01 / std::max(omega, 1e-3);
    const double base = grid_step > 0.0 ? grid_step : 0.05;
    return std::min({base, fine, 0.05});
}

inline std::vector<int> all_indices(int count)
{
    std::vector<int> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
}

} // namespace detail

// ---------------------------------------------------------------- n-NLS

inline ResidualReport nls_residual(const NlsSolution& sol, const GridSpec& grid)
{
    grid.validate(false);
    const auto times = grid.time_values();
    const bool phys = sol.physical;
    const std::size_t n = sol.n;

    // frequency estimate from tiny-step differences
    double M = 0.0, wx = 0.0, wt = 0.0;
    {
        const double dl = 1e-6;
        for (int i : detail::all_indices(grid.x.count))
            for (double t : times) {
                const double x = grid.x.at(i);
                auto c = sol.at(x, t);
                if (c.singular) continue;
                auto xp = sol.at(x + dl, t), xm = sol.at(x - dl, t), tp = sol.at(x, t + dl), tm = sol.at(x, t - dl);
                for (std::size_t j = 0; j < n; ++j) {
                    M = std::max(M, std::abs(c.psi[j]));
                    wx = std::max(wx, std::abs(xp.psi[j] - xm.psi[j]) / (2 * dl));
                    wt = std::max(wt, std::abs(tp.psi[j] - tm.psi[j]) / (2 * dl));
                    if (!phys) {
                        M = std::max(M, std::abs(c.psistar[j]));
                        wx = std::max(wx, std::abs(xp.psistar[j] - xm.psistar[j]) / (2 * dl));
                        wt = std::max(wt, std::abs(tp.psistar[j] - tm.psistar[j]) / (2 * dl));
                    }
                }
            }
    }
    if (!(M > 0.0)) M = 1e-30;
    const double tstep = times.size() > 1 ? std::abs(times[1] - times[0]) : 0.0;
    const double hx = grid.fd_step ? *grid.fd_step : detail::pick_step(grid.x.step(), wx / M);
    const double ht = grid.fd_step ? *grid.fd_step : detail::pick_step(tstep, wt / M);

    ResidualReport rep;
    rep.steps = {hx, 0.0, ht};
    double Mgrid = 0.0;
    for (double t : times)
        for (int i = 0; i < grid.x.count; ++i) {
            const double x = grid.x.at(i);
            std::array<NlsPoint, 9> P = {sol.at(x - 2 * hx, t), sol.at(x - hx, t), sol.at(x, t),     sol.at(x + hx, t),     sol.at(x + 2 * hx, t),
                                         sol.at(x, t - 2 * ht), sol.at(x, t - ht), sol.at(x, t + ht), sol.at(x, t + 2 * ht)};
            bool bad = false;
            for (const auto& p : P) {
                if (p.singular) bad = true;
                for (std::size_t j = 0; j < n && !bad; ++j)
                    if (!detail::finite(p.psi[j]) || !detail::finite(p.psistar[j])) bad = true;
            }
            if (bad) {
                ++rep.excluded;
                continue;
            }
            ++rep.evaluated;
            const auto& C = P[2];
            cx S{};
            for (std::size_t k = 0; k < n; ++k) S += phys ? double(sol.s[k]) * std::norm(C.psi[k]) : C.psi[k] * C.psistar[k];
            for (std::size_t j = 0; j < n; ++j) {
                Mgrid = std::max(Mgrid, std::abs(C.psi[j]));
                auto check = [&](bool star) {
                    auto f = [&](int k) { return star ? P[k].psistar[j] : P[k].psi[j]; };
                    const cx xx = detail::fd2(hx, f(0), f(1), f(2), f(3), f(4));
                    const cx tt = detail::fd1(ht, f(5), f(6), f(7), f(8));
                    const cx r = (star ? -I : I) * tt + xx + 2.0 * S * f(2);
                    if (std::abs(r) > rep.max_abs_residual || !std::isfinite(std::abs(r))) {
                        rep.max_abs_residual = std::abs(r);
                        rep.worst_point = {x, 0.0, t};
                        rep.worst_equation = (star ? "psi*_" : "psi_") + std::to_string(j + 1);
                    }
                };
                check(false);
                if (!phys) {
                    Mgrid = std::max(Mgrid, std::abs(C.psistar[j]));
                    check(true);
                }
            }
        }
    const std::size_t total = rep.evaluated + rep.excluded;
    if (rep.excluded > grid.max_excluded_fraction * double(total))
        throw Error(ErrorKind::Singularity, "residual: " + std::to_string(rep.excluded) + " of " + std::to_string(total) + " points singular");
    Mgrid = std::max(Mgrid, 1e-30);
    rep.field_scale = Mgrid * (1.0 + Mgrid * Mgrid);
    rep.relative = rep.max_abs_residual / rep.field_scale;
    return rep;
}

inline RealityReport reality_check(const NlsSolution& sol, const GridSpec& grid)
{
    RealityReport rep;
    for (double t : grid.time_values())
        for (int i = 0; i < grid.x.count; ++i) {
            auto p = sol.at(grid.x.at(i), t);
            if (p.singular) continue;
            for (std::size_t j = 0; j < sol.n; ++j) {
                rep.scale = std::max(rep.scale, std::abs(p.psi[j]));
                rep.max_abs = std::max(rep.max_abs, std::abs(p.psistar[j] - double(sol.s[j]) * std::conj(p.psi[j])));
            }
        }
    rep.relative = rep.max_abs / std::max(rep.scale, 1e-300);
    return rep;
}

// Per component: ||psi_j| - A_j| for dark-type families, |psi_j| otherwise.
inline std::vector<double> asymptotics_check(const NlsSolution& sol, double x, double t)
{
    auto p = sol.at(x, t);
    std::vector<double> out;
    const bool background = sol.family == NlsFamily::Dark || sol.family == NlsFamily::Breather || sol.family == NlsFamily::Rational ||
                            sol.family == NlsFamily::Complexified;
    for (std::size_t j = 0; j < sol.n; ++j)
        out.push_back(background ? std::abs(std::abs(p.psi[j]) - std::abs(sol.A[j])) : std::abs(p.psi[j]));
    return out;
}

// Negative-control helper: all amplitudes scaled by factor.
inline NlsSolution scale_amplitude(const NlsSolution& sol, double factor)
{
    NlsSolution out = sol;
    auto inner = sol.eval;
    out.eval = [=](cx x, cx t) {
        auto p = inner(x, t);
        for (auto& v : p.psi) v *= factor;
        for (auto& v : p.psistar) v *= factor;
        return p;
    };
    return out;
}

// ---------------------------------------------------------------- DS

// Residuals of both DS equations in (x, y) for the solution's variant; psi psi* is rho |psi|^2 on
// physical solutions and the product of the two fields otherwise (where the psi* equation is also checked).
inline ResidualReport ds_residual(const DsSolution& sol, const GridSpec& grid)
{
    grid.validate(true);
    const auto times = grid.time_values();
    const bool phys = sol.physical;
    const double sy = sol.variant == DsVariant::DS1 ? 1.0 : -1.0;
    auto at = [&](double x, double y, double t) { return sol.at_xy(x, y, t); };

    double M = 0.0, MP = 0.0, wx = 0.0, wy = 0.0, wt = 0.0;
    {
        const double dl = 1e-6;
        for (int i : detail::all_indices(grid.x.count))
            for (int k : detail::all_indices(grid.y.count))
                for (double t : times) {
                    const double x = grid.x.at(i), y = grid.y.at(k);
                    auto c = at(x, y, t);
                    if (c.singular) continue;
                    auto xp = at(x + dl, y, t), xm = at(x - dl, y, t), yp = at(x, y + dl, t), ym = at(x, y - dl, t);
                    auto tp = at(x, y, t + dl), tm = at(x, y, t - dl);
                    M = std::max(M, std::abs(c.psi));
                    MP = std::max(MP, std::abs(c.phi - sol.h / 4.0));
                    auto acc = [&](double& w, const DsPoint& p, const DsPoint& m) {
                        w = std::max(w, std::abs(p.psi - m.psi) / (2 * dl) / std::max(M, 1e-300));
                        w = std::max(w, std::abs(p.phi - m.phi) / (2 * dl) / std::max(MP, 1e-300));
                    };
                    acc(wx, xp, xm);
                    acc(wy, yp, ym);
                    acc(wt, tp, tm);
                }
    }
    const double tstep = times.size() > 1 ? std::abs(times[1] - times[0]) : 0.0;
    const double hx = grid.fd_step ? *grid.fd_step : detail::pick_step(grid.x.step(), wx);
    const double hy = grid.fd_step ? *grid.fd_step : detail::pick_step(grid.y.step(), wy);
    const double ht = grid.fd_step ? *grid.fd_step : detail::pick_step(tstep, wt);

    ResidualReport rep;
    rep.steps = {hx, hy, ht};
    double Mgrid = 0.0;
    for (double t : times)
        for (int i = 0; i < grid.x.count; ++i)
            for (int k = 0; k < grid.y.count; ++k) {
                const double x = grid.x.at(i), y = grid.y.at(k);
                // 0..4: x stencil, 5..8: y stencil without centre, 9..12: t stencil without centre
                std::array<DsPoint, 13> P = {at(x - 2 * hx, y, t), at(x - hx, y, t), at(x, y, t),        at(x + hx, y, t),     at(x + 2 * hx, y, t),
                                             at(x, y - 2 * hy, t), at(x, y - hy, t), at(x, y + hy, t),     at(x, y + 2 * hy, t), at(x, y, t - 2 * ht),
                                             at(x, y, t - ht),     at(x, y, t + ht), at(x, y, t + 2 * ht)};
                bool bad = false;
                for (const auto& p : P)
                    if (p.singular || !detail::finite(p.psi) || !detail::finite(p.psistar) || !detail::finite(p.phi)) bad = true;
                if (bad) {
                    ++rep.excluded;
                    continue;
                }
                ++rep.evaluated;
                auto prod = [&](const DsPoint& p) { return phys ? double(sol.rho) * std::norm(p.psi) : p.psi * p.psistar; };
                auto lap = [&](auto f) {
                    const cx xx = detail::fd2(hx, f(P[0]), f(P[1]), f(P[2]), f(P[3]), f(P[4]));
                    const cx yy = detail::fd2(hy, f(P[5]), f(P[6]), f(P[2]), f(P[7]), f(P[8]));
                    return std::pair{xx, yy};
                };
                auto dt = [&](auto f) { return detail::fd1(ht, f(P[9]), f(P[10]), f(P[11]), f(P[12])); };
                const auto& C = P[2];
                Mgrid = std::max(Mgrid, std::abs(C.psi));
                if (!phys) Mgrid = std::max(Mgrid, std::abs(C.psistar));
                auto note = [&](cx r, const char* what) {
                    if (std::abs(r) > rep.max_abs_residual) {
                        rep.max_abs_residual = std::abs(r);
                        rep.worst_point = {x, y, t};
                        rep.worst_equation = what;
                    }
                };
                auto [pxx, pyy] = lap([](const DsPoint& p) { return p.psi; });
                note(I * dt([](const DsPoint& p) { return p.psi; }) + (pxx + sy * pyy) + 2.0 * C.phi * C.psi, "psi");
                if (!phys) {
                    auto [qxx, qyy] = lap([](const DsPoint& p) { return p.psistar; });
                    note(-I * dt([](const DsPoint& p) { return p.psistar; }) + (qxx + sy * qyy) + 2.0 * C.phi * C.psistar, "psi*");
                }
                auto [fxx, fyy] = lap([](const DsPoint& p) { return p.phi; });
                auto [sxx, syy] = lap(prod);
                note((fxx - sy * fyy) + (sxx + sy * syy), "phi");
            }
    const std::size_t total = rep.evaluated + rep.excluded;
    if (rep.excluded > grid.max_excluded_fraction * double(total))
        throw Error(ErrorKind::Singularity, "residual: " + std::to_string(rep.excluded) + " of " + std::to_string(total) + " points singular");
    Mgrid = std::max(Mgrid, 1e-30);
    rep.field_scale = Mgrid * (1.0 + Mgrid * Mgrid);
    rep.relative = rep.max_abs_residual / rep.field_scale;
    return rep;
}

inline RealityReport reality_check(const DsSolution& sol, const GridSpec& grid)
{
    RealityReport rep;
    double phimax = 0.0, phiim = 0.0;
    for (double t : grid.time_values())
        for (int i = 0; i < grid.x.count; ++i)
            for (int k = 0; k < grid.y.count; ++k) {
                auto p = sol.at_xy(grid.x.at(i), grid.y.at(k), t);
                if (p.singular) continue;
                rep.scale = std::max(rep.scale, std::abs(p.psi));
                rep.max_abs = std::max(rep.max_abs, std::abs(p.psistar - double(sol.rho) * std::conj(p.psi)));
                phimax = std::max(phimax, std::abs(p.phi));
                phiim = std::max(phiim, std::abs(p.phi.imag()));
            }
    rep.relative = rep.max_abs / std::max(rep.scale, 1e-300);
    rep.phi_imag_relative = phiim / std::max(phimax + rep.scale * rep.scale, 1e-300);
    return rep;
}

// ||psi| - |A|| for dark-type families, |psi| otherwise, at (x, y, t).
inline double asymptotics_check(const DsSolution& sol, double x, double y, double t)
{
    auto p = sol.at_xy(x, y, t);
    const bool background = sol.family == DsFamily::Dark || sol.family == DsFamily::Breather || sol.family == DsFamily::Rational ||
                            sol.family == DsFamily::Complexified;
    return background ? std::abs(std::abs(p.psi) - std::abs(sol.A)) : std::abs(p.psi);
}

inline DsSolution scale_amplitude(const DsSolution& sol, double factor)
{
    DsSolution out = sol;
    auto inner = sol.eval;
    out.eval = [=](cx xi, cx eta, cx t) {
        auto p = inner(xi, eta, t);
        p.psi *= factor;
        p.psistar *= factor;
        return p;
    };
    return out;
}

} // namespace solitonic
