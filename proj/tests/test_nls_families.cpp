#include <random>

#include <gtest/gtest.h>

#include "cases.hpp"

using namespace solitonic;

namespace {

double rel_reality(const NlsSolution& s, double x, double t)
{
    auto p = s.at(x, t);
    double worst = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < s.n; ++j) {
        worst = std::max(worst, std::abs(p.psistar[j] - double(s.s[j]) * std::conj(p.psi[j])));
        scale = std::max(scale, std::abs(p.psi[j]));
    }
    return worst / scale;
}

} // namespace

TEST(NlsFamilies, PlaneWaveWithoutPairs)
{
    NlsParams p;
    p.f = cases::real_map();
    auto s = build_complexified(p);
    for (double x : {-1.0, 0.3, 2.0})
        for (double t : {0.0, 0.7}) {
            auto v = s.at(x, t);
            for (std::size_t j = 0; j < s.n; ++j)
                EXPECT_LT(std::abs(v.psi[j] - std::exp(I * (-s.E[j] * x + s.F[j] * t))), 1e-14);
        }
}

TEST(NlsFamilies, DarkSingleComponentClosedForm)
{
    NlsParams p;
    p.f = RationalMap::from_finite({0.0, 1.0}, {2.0, -3.0});
    const cx u = cases::upper_root(p.f, 0.5);
    p.pairs = PairData{{u}, {std::conj(u)}};
    p.d = {0.4};
    auto s = build_dark(p);
    ASSERT_EQ(s.n, 1u);
    EXPECT_EQ(s.s[0], -1);
    for (double x : {-2.0, -0.3, 0.0, 1.1})
        for (double t : {-0.4, 0.5}) {
            const cx Z = I * s.V[0] * x + I * s.W[0] * t - 0.4;
            const cx shape = (1.0 + std::exp(Z + s.r[0][0])) / (1.0 + std::exp(Z));
            EXPECT_LT(std::abs(s.at(x, t).psi[0] - s.A[0] * shape * std::exp(I * (-s.E[0] * x + s.F[0] * t))), 1e-13);
        }
    for (double x : {-50.0, 50.0}) EXPECT_LT(std::abs(std::abs(s.at(x, 0.3).psi[0]) - std::abs(s.A[0])), 1e-6);
}

TEST(NlsFamilies, DarkRealityAndFiberSum)
{
    for (int N : {1, 2}) {
        auto s = build_dark(cases::dark(N));
        EXPECT_TRUE(s.physical);
        for (double x : {-3.0, 0.0, 2.5}) EXPECT_LT(rel_reality(s, x, 0.2), 1e-10);
    }
}

TEST(NlsFamilies, FocusingObstructionProperty)
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(-4.0, 4.0);
    int built = 0;
    for (int trial = 0; trial < 200; ++trial) {
        NlsParams p;
        p.f = RationalMap::from_finite({U(rng), U(rng), U(rng)}, {U(rng), U(rng)});
        cx u;
        try {
            u = cases::upper_root(p.f, U(rng));
        } catch (const Error&) {
            continue;
        }
        p.pairs = PairData{{u}, {std::conj(u)}};
        p.d = {0.0};
        try {
            auto s = build_dark(p);
            ++built;
            EXPECT_TRUE(std::any_of(s.s.begin(), s.s.end(), [](int v) { return v < 0; }));
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::FocusingObstruction) << e.what();
        }
        for (double b : dark_balance(p)) EXPECT_LT(std::abs(b), 1e-10 * (1.0 + 1.0 / std::norm(u)));
    }
    EXPECT_GT(built, 50);
}

TEST(NlsFamilies, DarkRejectsComplexShift)
{
    auto p = cases::dark(1);
    p.d = {cx(0.1, 0.2)};
    EXPECT_THROW(build_dark(p), Error);
}

TEST(NlsFamilies, ComplexifiedRequiresCommonFiber)
{
    auto p = cases::complexified();
    p.pairs.v[0] += 0.01;
    EXPECT_THROW(build_complexified(p), Error);
}

TEST(NlsFamilies, BrightDecaysAndHasRealityCondition)
{
    for (int N : {1, 2}) {
        auto s = build_bright(cases::bright(N));
        EXPECT_EQ(s.s, (std::vector<int>{1, -1}));
        for (double x : {-50.0, 50.0})
            for (cx v : s.at(x, 0.3).psi) EXPECT_LT(std::abs(v), 1e-10);
        EXPECT_LT(rel_reality(s, 0.2, 0.1), 1e-10);
        double prev = 1e300;
        for (double X : {2.0, 4.0, 8.0, 16.0}) {
            double sup = 0.0;
            for (int i = 0; i <= 200; ++i) {
                const double x = X + i * 0.25;
                for (double sx : {-x, x})
                    for (cx v : s.at(sx, 0.0).psi) sup = std::max(sup, std::abs(v));
            }
            EXPECT_LE(sup, prev);
            prev = sup;
        }
    }
}

TEST(NlsFamilies, BrightRejectsZeroGamma)
{
    auto p = cases::bright(1);
    p.gamma = {1.0, 0.0};
    try {
        build_bright(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroGamma);
    }
}

TEST(NlsFamilies, GalileanIdentityAndConstants)
{
    auto s = build_dark(cases::dark(1));
    auto id = galilean_transform(s, 1.0, 0.0);
    for (double x : {-1.0, 0.5}) EXPECT_LT(std::abs(id.at(x, 0.3).psi[0] - s.at(x, 0.3).psi[0]), 1e-15);
    const cx beta = 1.3, mu = 0.4, lam = mu / beta;
    auto g = galilean_transform(s, beta, mu);
    for (std::size_t j = 0; j < s.n; ++j) {
        EXPECT_LT(std::abs(g.E[j] - (s.E[j] * beta + lam)), 1e-14);
        EXPECT_LT(std::abs(g.F[j] - (s.F[j] * beta * beta - 2.0 * s.E[j] * beta * lam - lam * lam)), 1e-13);
    }
    EXPECT_THROW(galilean_transform(s, 0.0, 0.0), Error);
}

TEST(NlsFamilies, GalileanTransformKeepsSolutions)
{
    auto s = build_dark(cases::dark(2));
    for (double mu : {-0.7, 0.5}) {
        auto g = galilean_transform(s, 1.0, mu);
        auto r = nls_residual(g, cases::nls_grid());
        EXPECT_LT(r.relative, 1e-5);
        EXPECT_LT(reality_check(g, cases::nls_grid()).relative, 1e-10);
    }
}

TEST(NlsFamilies, GalileanTransformMovesTrajectory)
{
    // |psi| of the transformed field at (x, t) equals |psi| of the original at (x + 2 lam t, t)
    auto s = build_dark(cases::dark(1));
    const double lam = 0.6;
    auto g = galilean_transform(s, 1.0, lam);
    auto dip = [](const NlsSolution& q, double t) {
        double bx = 0, best = 1e300;
        for (int i = 0; i <= 4000; ++i) {
            const double x = -10 + i * 0.005;
            const double v = std::abs(q.at(x, t).psi[0]);
            if (v < best) best = v, bx = x;
        }
        return bx;
    };
    for (double t : {0.0, 1.0, 2.0}) EXPECT_NEAR(dip(g, t) + 2 * lam * t, dip(s, t), 0.011);
}

TEST(NlsFamilies, BreatherRealityAndSigns)
{
    for (int N : {1, 2}) {
        auto s = build_breather(cases::breather(N));
        for (double x : {-1.0, 0.2}) EXPECT_LT(rel_reality(s, x, 0.1), 1e-10);
        auto raw = build_breather(cases::breather(N), false);
        EXPECT_EQ(raw.s, s.s);
    }
}

TEST(NlsFamilies, BreatherPairingChecked)
{
    auto p = cases::breather(1);
    std::swap(p.pairs.v[0], p.pairs.v[1]);
    EXPECT_THROW(build_breather(p), Error);
}

TEST(NlsFamilies, PeregrinePeakRatio)
{
    auto s = build_rational_breather(cases::peregrine());
    ASSERT_EQ(s.n, 1u);
    EXPECT_EQ(s.s[0], 1);
    auto m = cases::maximise([&](double x, double t) { return std::abs(s.at(x, t).psi[0]); }, -3.0, 3.0);
    EXPECT_NEAR(m[0] / std::abs(s.A[0]), 3.0, 1e-6);
}

TEST(NlsFamilies, RationalReductionToClosedForm)
{
    // N = 1: ratio (B + (z + r)(conj z - conj r)) / (B + |z|^2), B = (2 Im w_u)^-2, |r|^2 = 4B
    auto p = cases::peregrine();
    auto s = build_rational_breather(p);
    const double B = std::pow(2.0 * p.pairs.u[0].imag(), -2.0);
    auto far = std::abs(s.at(400.0, 0.0).psi[0]);
    auto m = cases::maximise([&](double x, double t) { return std::abs(s.at(x, t).psi[0]); }, -3.0, 3.0);
    EXPECT_NEAR(m[0] / far, (4 * B - B) / B, 1e-4);
}

TEST(NlsFamilies, RationalSignsAndReality)
{
    for (int N : {1, 2}) {
        auto s = build_rational_breather(cases::rational(N));
        EXPECT_EQ(s.s, (std::vector<int>{1, 1, 1, 1}));
        for (double x : {-2.0, 0.4}) EXPECT_LT(rel_reality(s, x, 0.3), 1e-10);
    }
}

TEST(NlsFamilies, RationalShiftDisplacesPeak)
{
    auto p = cases::rational(1);
    p.d = {0.0};
    auto a = build_rational_breather(p);
    p.d = {10.0};
    auto b = build_rational_breather(p);
    auto pa = cases::maximise([&](double x, double t) { return std::abs(a.at(x, t).psi[0]); }, -30.0, 30.0, 121);
    auto pb = cases::maximise([&](double x, double t) { return std::abs(b.at(x, t).psi[0]); }, -30.0, 30.0, 121);
    EXPECT_NEAR(pa[0], pb[0], 1e-6 * pa[0]);
    EXPECT_GT(std::hypot(pa[1] - pb[1], pa[2] - pb[2]), 1.0);
}

TEST(NlsFamilies, RationalInputChecks)
{
    auto p = cases::rational(1);
    p.pairs.u = {cx(4.6, 0.5)};
    try {
        build_rational_breather(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonCriticalPoint);
    }
    auto q = cases::peregrine();
    q.pairs.u = {cx(0.5, 0.5), cx(0.5, -0.5)};
    q.d = {0.0, 0.0};
    try {
        build_rational_breather(q);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Size);
    }
}
