#include <gtest/gtest.h>

#include "cases.hpp"

using namespace solitonic;

namespace {

NlsSolution plane_wave(double k, cx A, int s)
{
    NlsSolution sol;
    sol.n = 1;
    sol.s = {s};
    sol.A = {A};
    sol.physical = true;
    const double w = k * k - 2.0 * s * std::norm(A);
    sol.eval = [=](cx x, cx t) {
        NlsPoint p;
        p.psi = {A * std::exp(I * (k * x - w * t))};
        p.psistar = {double(s) * std::conj(p.psi[0])};
        return p;
    };
    return sol;
}

} // namespace

TEST(Verifier, PlaneWaveAtTruncationLevel)
{
    for (int s : {-1, 1}) {
        auto r = nls_residual(plane_wave(0.7, cx(0.8, 0.3), s), cases::nls_grid());
        EXPECT_LT(r.relative, 1e-9);
        EXPECT_EQ(r.stencil_order, 4);
        EXPECT_EQ(r.excluded, 0u);
    }
}

TEST(Verifier, HalvingStepReducesTruncation)
{
    auto sol = plane_wave(3.0, 1.0, 1);
    GridSpec g = cases::nls_grid();
    g.fd_step = 0.08;
    const double a = nls_residual(sol, g).max_abs_residual;
    g.fd_step = 0.04;
    const double b = nls_residual(sol, g).max_abs_residual;
    EXPECT_GE(a / b, 8.0);
}

TEST(Verifier, RelativeIsMaxOverScale)
{
    auto r = nls_residual(build_dark(cases::dark(1)), cases::nls_grid());
    EXPECT_GT(r.field_scale, 0.0);
    EXPECT_DOUBLE_EQ(r.relative, r.max_abs_residual / r.field_scale);
    EXPECT_TRUE(r.passes(1e-5));
}

TEST(Verifier, NegativeControlIsDetected)
{
    auto sol = build_dark(cases::dark(1));
    const auto g = cases::nls_grid();
    const double ok = nls_residual(sol, g).relative;
    const double bad = nls_residual(scale_amplitude(sol, 1.01), g).relative;
    EXPECT_GT(bad, 1e-2);
    EXPECT_GT(bad, 1e3 * ok);
}

TEST(Verifier, TooManySingularPointsRaise)
{
    auto sol = plane_wave(0.5, 1.0, 1);
    auto inner = sol.eval;
    sol.eval = [inner](cx x, cx t) {
        auto p = inner(x, t);
        p.singular = std::abs(x.real()) < 1.0;
        return p;
    };
    try {
        nls_residual(sol, cases::nls_grid());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Singularity);
    }
}

TEST(Verifier, GridNeedsStencilWidth)
{
    GridSpec g;
    g.x = {-1.0, 1.0, 5};
    try {
        nls_residual(plane_wave(0.5, 1.0, 1), g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Config);
    }
}

TEST(Verifier, ComplexifiedSolutionIsNotReal)
{
    auto sol = build_complexified(cases::complexified());
    sol.s.assign(sol.n, 1);
    EXPECT_GT(reality_check(sol, cases::nls_grid(2.0)).relative, 1e-3);
}

TEST(Verifier, ComplexifiedChecksBothFields)
{
    auto sol = build_complexified(cases::complexified());
    auto bad = sol;
    auto inner = sol.eval;
    bad.eval = [inner](cx x, cx t) {
        auto p = inner(x, t);
        for (auto& v : p.psistar) v *= 1.05;
        return p;
    };
    EXPECT_LT(nls_residual(sol, cases::nls_grid(2.0)).relative, 1e-5);
    EXPECT_GT(nls_residual(bad, cases::nls_grid(2.0)).relative, 1e-3);
}

TEST(Verifier, Asymptotics)
{
    auto dark = build_dark(cases::dark(1));
    for (double x : {-50.0, 50.0})
        for (double v : asymptotics_check(dark, x, 0.3)) EXPECT_LE(v, 1e-6);
    auto bright = build_bright(cases::bright(1));
    for (double x : {-50.0, 50.0})
        for (double v : asymptotics_check(bright, x, 0.3)) EXPECT_LT(v, 1e-10);
    auto drom = build_dromion(cases::dromion());
    EXPECT_LT(asymptotics_check(drom, 50.0, 0.0, 0.0), 1e-10);
}

TEST(Verifier, DsPlaneWave)
{
    DsParams p;
    p.wa = 1.0;
    p.wb = 0.4;
    p.h = -0.3;
    auto r = ds_residual(build_ds_complexified(p), cases::ds_grid());
    EXPECT_LT(r.relative, 1e-9);
}

TEST(Verifier, DsNegativeControl)
{
    auto s = build_lump(cases::lump());
    const auto g = cases::ds_grid();
    EXPECT_LT(ds_residual(s, g).relative, 1e-5);
    EXPECT_GT(ds_residual(scale_amplitude(s, 1.01), g).relative, 1e-2);
}

TEST(Verifier, DsReality)
{
    auto g = cases::ds_grid();
    for (const auto& s : {build_ds_breather(cases::ds_breather()), build_lump(cases::lump()), build_dromion(cases::dromion())}) {
        auto r = reality_check(s, g);
        EXPECT_LT(r.relative, 1e-10);
        EXPECT_LT(r.phi_imag_relative, 1e-10);
    }
}
