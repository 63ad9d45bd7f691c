#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "cxcore.hpp"

namespace solitonic {

// Local parameter convention at an anchor point.
struct LocalParam {
    enum class Kind { FunctionShift, ScaledFunction, Uniformizer };

    Kind kind = Kind::FunctionShift;
    // ScaledFunction: c_a per anchor index. Empty means c_a = 1/f'(w_a).
    std::vector<cx> scales;

    static LocalParam function_shift() { return {Kind::FunctionShift, {}}; }
    static LocalParam uniformizer() { return {Kind::Uniformizer, {}}; }
    static LocalParam scaled(std::vector<cx> c = {}) { return {Kind::ScaledFunction, std::move(c)}; }
};

inline const char* to_string(LocalParam::Kind k)
{
    switch (k) {
    case LocalParam::Kind::FunctionShift: return "function_shift";
    case LocalParam::Kind::ScaledFunction: return "scaled_function";
    case LocalParam::Kind::Uniformizer: return "uniformizer";
    }
    return "?";
}

struct LocalDerivs {
    cx k1; // k'(w_a)
    cx k2; // k''(w_a)
};

inline LocalDerivs local_derivs(const LocalParam& lp, const RationalMap* f, cx anchor, std::size_t index)
{
    LocalDerivs d{};
    switch (lp.kind) {
    case LocalParam::Kind::Uniformizer:
        d = {cx{1.0}, cx{0.0}};
        break;
    case LocalParam::Kind::FunctionShift: {
        if (!f) throw Error(ErrorKind::Constraint, "function_shift local parameter needs a rational map");
        auto j = f->jet(anchor);
        d = {j.d1, j.d2};
        break;
    }
    case LocalParam::Kind::ScaledFunction: {
        if (!f) throw Error(ErrorKind::Constraint, "scaled_function local parameter needs a rational map");
        auto j = f->jet(anchor);
        if (std::abs(j.f) > 1e-10)
            throw Error(ErrorKind::Constraint, "scaled_function requires f(w_a)=0 at " + fmt(anchor));
        cx c;
        if (lp.scales.empty()) {
            c = 1.0 / j.d1;
        } else {
            if (index >= lp.scales.size()) throw Error(ErrorKind::Constraint, "scaled_function: missing scale for anchor");
            c = lp.scales[index];
        }
        d = {c * j.d1, c * j.d2};
        break;
    }
    }
    if (std::abs(d.k1) == 0.0) throw Error(ErrorKind::Constraint, "local parameter has k'(w_a)=0 at " + fmt(anchor));
    return d;
}

struct PairData {
    std::vector<cx> u;
    std::vector<cx> v;

    std::size_t size() const { return u.size(); }

    void validate() const
    {
        if (u.size() != v.size()) throw Error(ErrorKind::Constraint, "pairs: u and v lengths differ");
        for (std::size_t k = 0; k < u.size(); ++k)
            if (u[k] == v[k]) throw Error(ErrorKind::Constraint, "pairs: u_k equals v_k at k=" + std::to_string(k + 1));
    }
};

namespace detail {
inline void check_apart(cx a, cx p, const char* what)
{
    if (std::abs(a - p) <= 1e-14 * std::max(1.0, std::abs(a)))
        throw Error(ErrorKind::Coincidence, std::string(what) + ": point " + fmt(a) + " coincides with " + fmt(p));
}
} // namespace detail

inline std::vector<cx> v_vector(cx anchor, cx kprime, const PairData& pairs)
{
    if (kprime == cx{}) throw Error(ErrorKind::Constraint, "v_vector: k'=0");
    std::vector<cx> V(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs.u[k] == pairs.v[k]) {
            V[k] = 0.0;
            continue;
        }
        detail::check_apart(anchor, pairs.u[k], "v_vector");
        detail::check_apart(anchor, pairs.v[k], "v_vector");
        V[k] = (1.0 / (anchor - pairs.v[k]) - 1.0 / (anchor - pairs.u[k])) / kprime;
    }
    return V;
}

inline std::vector<cx> w_vector(cx anchor, cx kprime, cx ksecond, const PairData& pairs)
{
    auto V = v_vector(anchor, kprime, pairs);
    std::vector<cx> W(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs.u[k] == pairs.v[k]) {
            W[k] = 0.0;
            continue;
        }
        const cx dv = anchor - pairs.v[k], du = anchor - pairs.u[k];
        W[k] = (-1.0 / (dv * dv) + 1.0 / (du * du)) / (kprime * kprime) - ksecond / (kprime * kprime) * V[k];
    }
    return W;
}

inline std::vector<cx> r_vector(cx a, cx b, const PairData& pairs)
{
    std::vector<cx> r(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const cx u = pairs.u[k], v = pairs.v[k];
        for (cx p : {u, v}) {
            detail::check_apart(a, p, "r_vector");
            detail::check_apart(b, p, "r_vector");
        }
        r[k] = std::log(((b - v) * (a - u)) / ((b - u) * (a - v)));
    }
    return r;
}

// Off-diagonal period matrix; the diagonal is unused and set to NaN.
inline Eigen::MatrixXcd b_offdiag(const PairData& pairs)
{
    const auto g = static_cast<Eigen::Index>(pairs.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    Eigen::MatrixXcd B(g, g);
    for (Eigen::Index i = 0; i < g; ++i)
        for (Eigen::Index k = 0; k < g; ++k) {
            if (i == k) {
                B(i, k) = cx{nan, nan};
                continue;
            }
            const cx ui = pairs.u[i], vi = pairs.v[i], uk = pairs.u[k], vk = pairs.v[k];
            const cx den = (vi - uk) * (ui - vk);
            const cx num = (vi - vk) * (ui - uk);
            if (den == cx{} || num == cx{})
                throw Error(ErrorKind::Coincidence, "b_offdiag: coincident pair points");
            B(i, k) = std::log(num / den);
        }
    return B;
}

struct PairConstants {
    cx q2, K1, q1, K2;
};

inline PairConstants q2_k1(cx a, cx b, LocalDerivs ka, LocalDerivs kb)
{
    if (a == b) throw Error(ErrorKind::Coincidence, "q2_k1: a equals b");
    if (ka.k1 == cx{} || kb.k1 == cx{}) throw Error(ErrorKind::Constraint, "q2_k1: k'=0");
    PairConstants c;
    c.q2 = 1.0 / (ka.k1 * kb.k1 * (a - b) * (a - b));
    c.K1 = 1.0 / (ka.k1 * (b - a)) - ka.k2 / (2.0 * ka.k1 * ka.k1);
    c.q1 = -c.q2;
    c.K2 = -c.K1 * c.K1;
    return c;
}

} // namespace solitonic
