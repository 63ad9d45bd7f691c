#include <gtest/gtest.h>

#include "cases.hpp"

using namespace solitonic;

TEST(DsFamilies, CharacteristicCoordinates)
{
    auto c = char_coords(DsVariant::DS1, 1.0, 1.0);
    EXPECT_EQ(c.xi, cx(1.0));
    EXPECT_EQ(c.eta, cx(0.0));
    for (auto v : {DsVariant::DS1, DsVariant::DS2}) {
        auto k = char_coords(v, 0.7, -1.9);
        auto [x, y] = xy_from_char(v, k.xi, k.eta);
        EXPECT_LT(std::abs(x - 0.7), 1e-15);
        EXPECT_LT(std::abs(y + 1.9), 1e-15);
    }
    auto d = char_coords(DsVariant::DS2, 0.7, -1.9);
    EXPECT_EQ(d.eta, std::conj(d.xi));
}

TEST(DsFamilies, PlaneWaveWithoutPairs)
{
    DsParams p;
    p.wa = 2.0;
    p.wb = -1.0;
    p.h = 0.6;
    auto s = build_ds_complexified(p);
    for (double x : {-1.0, 0.4}) {
        auto v = s.at_xy(x, 0.3, 0.2);
        EXPECT_LT(std::abs(v.phi - 0.15), 1e-14);
        EXPECT_LT(std::abs(std::abs(v.psi) - std::abs(s.A)), 1e-14);
    }
    EXPECT_LT(std::abs(s.G3 - (-s.G1 * s.G1 - s.G2 * s.G2 + 0.6)), 1e-14);
    GridSpec g = cases::ds_grid();
    EXPECT_LT(ds_residual(s, g).relative, 1e-9);
}

TEST(DsFamilies, DarkAmplitudeAndBackground)
{
    auto p = cases::ds_dark();
    p.wa = 8.0;
    p.wb = -1.0;
    p.pairs = PairData{{cx(1.0, 0.7)}, {cx(1.0, -0.7)}};
    auto s = build_ds_dark(p);
    EXPECT_LT(std::abs(s.A - 1.0 / 9.0), 1e-15);
    for (auto [x, y] : std::vector<std::pair<double, double>>{{80, 0}, {-80, 0}, {0, 80}, {0, -80}})
        EXPECT_LT(std::abs(std::abs(s.at_xy(x, y, 0.4).psi) - std::abs(s.A)), 1e-6);
}

TEST(DsFamilies, DarkResidualTwoSolitons)
{
    auto p = cases::ds_dark();
    p.pairs = PairData{{cx(0.7, 0.3), cx(-0.5, 0.8)}, {cx(0.7, -0.3), cx(-0.5, -0.8)}};
    p.d = {0.3, -0.4};
    auto s = build_ds_dark(p);
    EXPECT_LT(ds_residual(s, cases::ds_grid()).relative, 1e-5);
    EXPECT_LT(reality_check(s, cases::ds_grid()).relative, 1e-10);
}

TEST(DsFamilies, DarkDs2PlusNeedsInterlacing)
{
    DsParams p;
    p.variant = DsVariant::DS2;
    p.wa = cx(1.0, 2.0);
    p.wb = cx(1.0, -2.0);
    p.kappa1 = cx(1.0, 0.5);
    p.kappa2 = cx(1.0, -0.5);
    p.pairs = PairData{{0.5}, {-0.5}};
    p.d = {0.0};
    auto s = build_ds_dark(p);
    EXPECT_EQ(s.rho, 1);
    EXPECT_LT(ds_residual(s, cases::ds_grid()).relative, 1e-5);
    p.pairs = PairData{{-0.5, 1.5}, {0.5, 1.0}};
    p.d = {0.0, 0.0};
    try {
        build_ds_dark(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Ordering);
    }
}

TEST(DsFamilies, BreatherPresetParameters)
{
    DsParams q;
    q.wa = 8.0;
    q.wb = -1.0;
    q.pairs.u = {cx(5, -2), cx(2, 1), cx(3, -1), cx(1, 4)};
    q.d = {0.0, 0.0, 0.0, 0.0};
    auto s = build_ds_breather(q);
    EXPECT_EQ(s.rho, -1);
    GridSpec g = cases::ds_grid(10.0);
    g.times = {0.0, 45.0};
    EXPECT_LT(reality_check(s, g).relative, 1e-10);
    EXPECT_LT(ds_residual(s, g).relative, 1e-5);
}

TEST(DsFamilies, BrightDs1DecaysAwayFromRidge)
{
    auto q = cases::ds_bright();
    q.alpha_u.resize(2);
    auto s = build_ds_bright(q);
    EXPECT_EQ(s.rho, -1);
    for (double R : {60.0, -60.0}) EXPECT_LT(std::abs(s.at_xy(R, R, 0.0).psi), 1e-10);
}

TEST(DsFamilies, BrightDs2MinusTwoSolitons)
{
    auto s = build_ds_bright(cases::ds2_bright());
    EXPECT_EQ(s.rho, -1);
    EXPECT_EQ(s.variant, DsVariant::DS2);
    auto g = cases::ds_grid();
    EXPECT_LT(ds_residual(s, g).relative, 1e-5);
    EXPECT_LT(reality_check(s, g).relative, 1e-10);
}

TEST(DsFamilies, BrightConstraintViolation)
{
    auto q = cases::ds_bright();
    q.alpha_v[0] += 0.1;
    EXPECT_THROW(build_ds_bright(q), Error);
}

TEST(DsFamilies, RationalPresetsBuild)
{
    DsParams a = cases::ds_rational();
    a.pairs.u = {cx(0, 2), cx(2, 1)};
    a.d = {0.0, 0.0};
    auto s = build_ds_rational(a);
    EXPECT_EQ(s.rho, -1);
    GridSpec g = cases::ds_grid(8.0);
    g.times = {-5.0, 0.0, 5.0};
    EXPECT_LT(ds_residual(s, g).relative, 1e-5);
    DsParams b = a;
    b.wb = -2.0;
    b.pairs.u = {cx(0, 3), cx(0, 2)};
    EXPECT_NO_THROW(build_ds_rational(b));
}

TEST(DsFamilies, DromionCoefficientIdentity)
{
    auto p = cases::dromion();
    auto C = dromion_coefficients(p);
    const double a = p.wa.real(), b = p.wb.real();
    const cx au1 = p.alpha_u[0], au3 = p.alpha_u[1], av1 = p.alpha_v[0];
    const double rhs = (a * b) * (a * b) / (4.0 * av1.imag() * au3.imag() * std::norm(au1 - p.alpha_v[1]));
    EXPECT_LT(std::abs(C.A3 - C.A1 * C.A2 - rhs), 1e-14 * C.A3);
    EXPECT_GT(C.A1, 0.0);
    EXPECT_GT(C.A2, 0.0);
}

TEST(DsFamilies, DromionPositivity)
{
    auto p = cases::dromion();
    p.alpha_v[0] = std::conj(p.alpha_v[0]);
    try {
        build_dromion(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Positivity);
        EXPECT_NE(std::string(e.what()).find("A1"), std::string::npos);
    }
}

TEST(DsFamilies, DromionIsLocalised)
{
    auto s = build_dromion(cases::dromion());
    for (auto [x, y] : std::vector<std::pair<double, double>>{{50, 0}, {-50, 0}, {0, 50}, {0, -50}, {50, 50}, {-50, 50}})
        EXPECT_LT(std::abs(s.at_xy(x, y, 0.2).psi), 1e-10);
}

TEST(DsFamilies, LumpPeakAndDecay)
{
    auto p = cases::lump();
    auto s = build_lump(p);
    const double t = 0.7;
    const cx xi = -p.lambda * t - p.mu;
    auto [x, y] = xy_from_char(DsVariant::DS2, xi, std::conj(xi));
    EXPECT_LT(std::abs(std::abs(s.at_xy(x.real(), y.real(), t).psi) - 1.0 / std::abs(p.nu)), 1e-12);
    for (double R : {100.0, 400.0}) {
        const cx far = R * std::exp(I * 0.4);
        auto [fx, fy] = xy_from_char(DsVariant::DS2, far, std::conj(far));
        const double ratio = std::abs(s.at_xy(fx.real(), fy.real(), 0.0).psi) * R * R / std::abs(p.nu);
        EXPECT_GT(ratio, 0.5);
        EXPECT_LT(ratio, 2.0);
    }
}

TEST(DsFamilies, LumpNeedsNonzeroNu)
{
    auto p = cases::lump();
    p.nu = 0.0;
    try {
        build_lump(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroNu);
    }
}

TEST(DsFamilies, SymmetryIdentityAndResidual)
{
    auto s = build_ds_dark(cases::ds_dark());
    auto id = ds_symmetry(s, 0.0, 0.0);
    EXPECT_LT(std::abs(id.at_xy(0.3, -0.2, 0.4).psi - s.at_xy(0.3, -0.2, 0.4).psi), 1e-15);
    auto m = ds_symmetry(s, 0.4, -0.3);
    EXPECT_LT(ds_residual(m, cases::ds_grid()).relative, 1e-5);
    // |psi| translates with velocity (-b1, -b2) in (xi, eta)
    const cx xi = 0.3, eta = -0.5;
    const double t = 1.5;
    EXPECT_LT(std::abs(std::abs(m.at_char(xi, eta, t).psi) - std::abs(s.at_char(xi + 0.4 * t, eta - 0.3 * t, t).psi)), 1e-13);
}

TEST(DsFamilies, PhiDecomposition)
{
    auto s = build_ds_breather(cases::ds_breather());
    for (double x : {-1.0, 0.5}) {
        auto p = s.at_xy(x, 0.2, 0.1);
        EXPECT_LT(std::abs(s.Phi(p) + double(s.rho) * std::norm(p.psi) - p.phi), 1e-12 * (1 + std::abs(p.phi)));
    }
}

TEST(DsFamilies, DromionLimitConverges)
{
    auto closed = build_dromion(cases::dromion());
    const double e3 = cases::max_gap(build_dromion_limit(cases::dromion(), 1e-3), closed);
    const double e4 = cases::max_gap(build_dromion_limit(cases::dromion(), 1e-4), closed);
    EXPECT_GT(e3 / e4, 8.0);
    EXPECT_LT(e3 / e4, 12.0);
}

TEST(DsFamilies, LumpLimitConverges)
{
    const auto seed = cases::lump_seed();
    auto closed = build_lump(lump_closed_form_params(seed));
    const double e3 = cases::max_gap(build_lump_limit(seed, 1e-3), closed);
    const double e4 = cases::max_gap(build_lump_limit(seed, 1e-4), closed);
    EXPECT_GT(e3 / e4, 8.0);
    EXPECT_LT(e3 / e4, 12.0);
}
