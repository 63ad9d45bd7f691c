#include <random>

#include <gtest/gtest.h>

#include <solitonic/detkernel.hpp>

using namespace solitonic;

namespace {

std::vector<AffineArg> constants(const std::vector<cx>& z)
{
    std::vector<AffineArg> out;
    for (cx v : z) out.push_back(AffineArg{cx{}, cx{}, cx{}, v});
    return out;
}

struct RandomPairs {
    PairData P;
    std::vector<cx> z;
};

RandomPairs random_pairs(std::mt19937_64& rng, int g)
{
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    RandomPairs r;
    for (int i = 0; i < g; ++i) {
        r.P.u.emplace_back(2 * U(rng), 2 * U(rng));
        r.P.v.emplace_back(2 * U(rng), 2 * U(rng));
        r.z.emplace_back(U(rng), U(rng));
    }
    return r;
}

} // namespace

TEST(Detkernel, SinglePair)
{
    PairData P{{cx(0.3, 1.0)}, {cx(-0.2, 0.5)}};
    const cx z{0.4, -0.7};
    auto T = build_T(P, constants({z}));
    EXPECT_LT(std::abs(eval_det(T, Coord{}).value() - (1.0 + std::exp(z))), 1e-14);
    EXPECT_LT(std::abs(eval_det(build_T(P, constants({0.0})), Coord{}).value() - 2.0), 1e-15);
    EXPECT_LT(std::abs(theta_sum_oracle(b_offdiag(P), {z}) - (1.0 + std::exp(z))), 1e-15);
}

TEST(Detkernel, DeterminantEqualsThetaSum)
{
    std::mt19937_64 rng(42);
    for (int g = 1; g <= 6; ++g)
        for (int k = 0; k < 30; ++k) {
            auto r = random_pairs(rng, g);
            const cx det = eval_det(build_T(r.P, constants(r.z)), Coord{}).value();
            const cx sum = theta_sum_oracle(b_offdiag(r.P), r.z);
            EXPECT_LE(std::abs(det - sum), 1e-10 * std::abs(sum)) << "g=" << g;
        }
}

TEST(Detkernel, ThetaSumTendsToOne)
{
    std::mt19937_64 rng(1);
    auto r = random_pairs(rng, 4);
    std::vector<cx> z(4, cx(-60.0, 0.3));
    EXPECT_LT(std::abs(theta_sum_oracle(b_offdiag(r.P), z) - 1.0), 1e-20);
}

TEST(Detkernel, ThetaSumSizeLimit)
{
    PairData P;
    for (int i = 0; i < 21; ++i) {
        P.u.emplace_back(i, 1.0);
        P.v.emplace_back(i, -1.0);
    }
    EXPECT_THROW(theta_sum_oracle(b_offdiag(P), std::vector<cx>(21)), Error);
}

TEST(Detkernel, BalancedMatchesNaive)
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int k = 0; k < 40; ++k) {
        auto r = random_pairs(rng, 3);
        std::vector<AffineArg> args;
        for (cx z : r.z) args.push_back(AffineArg{cx(U(rng), U(rng)), cx{}, cx(U(rng), U(rng)), z});
        auto T = build_T(r.P, args);
        const Coord p{cx(U(rng)), cx{}, cx(U(rng))};
        const cx a = eval_det(T, p).value(), b = naive_det(T, p);
        EXPECT_LE(std::abs(a - b), 1e-12 * std::abs(b));
    }
}

TEST(Detkernel, RatioOfEqualSpecsIsOne)
{
    std::mt19937_64 rng(4);
    auto r = random_pairs(rng, 3);
    auto T = build_T(r.P, constants(r.z));
    auto q = det_ratio(T, T, Coord{});
    EXPECT_FALSE(q.singular);
    EXPECT_LT(std::abs(q.value - 1.0), 1e-15);
}

TEST(Detkernel, LargeArgumentsStayFinite)
{
    PairData P{{cx(0.2, 0.9)}, {cx(0.2, -0.9)}};
    auto T = build_T(P, {AffineArg{cx(2.0), cx{}, cx{}, cx{}}});
    auto a = eval_det(T, 1000.0, 0.0, 0.0), b = eval_det(T, 1001.0, 0.0, 0.0);
    EXPECT_TRUE(std::isfinite(a.logmag));
    EXPECT_NEAR(b.logmag - a.logmag, 2.0, 1e-9);
    EXPECT_LT(std::abs(a.phase - 1.0), 1e-12);
}

TEST(Detkernel, RatioTendsToShiftExponential)
{
    PairData P{{cx(0.2, 0.9)}, {cx(0.2, -0.9)}};
    const cx r{0.3, 0.8};
    AffineArg z{cx(1.0), cx{}, cx{}, cx{}};
    auto q = det_ratio(build_T(P, {z.shifted(r)}), build_T(P, {z}), Coord{cx(800.0), cx{}, cx{}});
    EXPECT_LT(std::abs(q.value - std::exp(r)), 1e-12);
}

TEST(Detkernel, RatioMatchesNaiveQuotient)
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        auto r = random_pairs(rng, 3);
        std::vector<AffineArg> zs, ws;
        for (std::size_t i = 0; i < 3; ++i) {
            zs.push_back(AffineArg{cx(U(rng), U(rng)), cx{}, cx{}, r.z[i]});
            ws.push_back(zs.back().shifted(cx(U(rng), U(rng))));
        }
        auto N = build_T(r.P, ws), D = build_T(r.P, zs);
        const Coord p{cx(U(rng)), cx{}, cx{}};
        const cx expect = naive_det(N, p) / naive_det(D, p);
        EXPECT_LT(std::abs(det_ratio(N, D, p).value - expect), 1e-11 * std::abs(expect));
    }
}

TEST(Detkernel, ConjugationSwapsShift)
{
    // conj(w_u) = w_v and real anchors: conj det T(z + r) = det T(z - r) for real z
    PairData P{{cx(0.5, 0.7), cx(-1.0, 0.4)}, {cx(0.5, -0.7), cx(-1.0, -0.4)}};
    auto r = r_vector(2.0, -1.0, P);
    std::vector<AffineArg> zp, zm;
    const std::vector<double> z{0.3, -0.8};
    for (std::size_t k = 0; k < 2; ++k) {
        zp.push_back(AffineArg{cx{}, cx{}, cx{}, z[k] + r[k]});
        zm.push_back(AffineArg{cx{}, cx{}, cx{}, z[k] - r[k]});
    }
    const cx a = eval_det(build_T(P, zp), Coord{}).value(), b = eval_det(build_T(P, zm), Coord{}).value();
    EXPECT_LT(std::abs(std::conj(a) - b), 1e-12 * std::abs(b));
}

TEST(Detkernel, LogDetSecondDerivative)
{
    std::mt19937_64 rng(17);
    auto r = random_pairs(rng, 3);
    std::vector<AffineArg> args;
    for (cx z : r.z) args.push_back(AffineArg{cx(0.4, 0.9), cx(-0.3, 0.2), cx{}, z});
    auto T = build_T(r.P, args);
    const Coord p{cx(0.3), cx(-0.2), cx{}};
    const Coord dir{cx(1.0), cx(0.5), cx{}};
    const double h = 1e-3;
    auto L = [&](double s) { return std::log(naive_det(T, Coord{p.x + s * dir.x, p.y + s * dir.y, cx{}})); };
    const cx fd = (-L(2 * h) + 16.0 * L(h) - 30.0 * L(0) + 16.0 * L(-h) - L(-2 * h)) / (12 * h * h);
    const cx exact = logdet_d2(T, p, dir);
    EXPECT_LT(std::abs(fd - exact), 1e-6 * (1 + std::abs(exact)));
}

TEST(Detkernel, RationalKernelSizeOne)
{
    // 1x1: -1/(p-p) off-diagonal is absent; entry is -(z)
    auto K = build_ratK({cx(0.5, 1.0)}, {AffineArg{cx{}, cx{}, cx{}, cx(2.0, 1.0)}});
    EXPECT_LT(std::abs(eval_det(K, Coord{}).value() - cx(-2.0, -1.0)), 1e-15);
}

TEST(Detkernel, BorderedDeterminant)
{
    std::mt19937_64 rng(23);
    auto r = random_pairs(rng, 2);
    auto T = build_T(r.P, constants(r.z));
    Eigen::VectorXcd p(2), q(2);
    p << cx(0.3, 0.1), cx(-0.4, 0.2);
    q << cx(1.1, 0.0), cx(0.2, -0.5);
    auto B = border(T, p, q);
    Eigen::MatrixXcd M(3, 3);
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            M(i, k) = (i == k ? 1.0 : 0.0) + T.coef(i, k) * std::exp(0.5 * (r.z[static_cast<std::size_t>(i)] + r.z[static_cast<std::size_t>(k)]));
    for (int i = 0; i < 2; ++i) {
        M(i, 2) = p(i) * std::exp(0.5 * r.z[static_cast<std::size_t>(i)]);
        M(2, i) = q(i) * std::exp(0.5 * r.z[static_cast<std::size_t>(i)]);
    }
    M(2, 2) = B.base(2, 2) + B.coef(2, 2);
    EXPECT_LT(std::abs(eval_det(B, Coord{}).value() - M.determinant()), 1e-12 * std::abs(M.determinant()));
}

TEST(Detkernel, RationalKernelIsPolynomialOfItsSize)
{
    // affine diagonal, constant off-diagonal: det is a polynomial of degree m along any line
    const std::vector<cx> pts{cx(0.4, 1.2), cx(0.4, -1.2), cx(-1.0, 0.5), cx(-1.0, -0.5)};
    std::vector<AffineArg> diag;
    for (int i = 0; i < 4; ++i) diag.push_back(AffineArg{cx(0.3 + i, 0.2 * i), cx{}, cx(0.1, -0.4 * i), cx(0.2 * i, 0.1)});
    auto K = build_ratK(pts, diag);
    const int m = 4;
    Eigen::MatrixXcd V(m + 1, m + 1);
    Eigen::VectorXcd b(m + 1);
    for (int i = 0; i <= m; ++i) {
        const double s = -1.0 + 0.5 * i;
        for (int k = 0; k <= m; ++k) V(i, k) = std::pow(s, k);
        b(i) = eval_det(K, Coord{cx(s), cx{}, cx(0.3 * s)}).value();
    }
    const Eigen::VectorXcd c = V.fullPivLu().solve(b);
    EXPECT_GT(std::abs(c(m)), 1e-3);
    for (double s : {-3.1, 0.77, 2.4}) {
        cx fit = 0.0;
        for (int k = m; k >= 0; --k) fit = fit * s + c(k);
        const cx v = eval_det(K, Coord{cx(s), cx{}, cx(0.3 * s)}).value();
        EXPECT_LT(std::abs(fit - v), 1e-10 * (1 + std::abs(v)));
    }
}
