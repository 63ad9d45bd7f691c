#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "verifier.hpp"

namespace solitonic {

using json = nlohmann::json;

// ---------------------------------------------------------------- config

struct OutputSpec {
    std::vector<int> components; // 1-based
    bool all_components = true;
    bool csv = true;
    bool pgm = true;
    std::vector<std::string> fields{"re", "im", "abs"};
};

struct ScenarioConfig {
    std::string name = "scenario";
    std::string family;
    NlsParams nls;
    DsParams ds;
    bool breather_transform = true;
    std::vector<int> signs; // requested n-NLS signs, checked after the build
    GridSpec grid;
    OutputSpec output;
    double tolerance = 1e-5;
    std::vector<std::string> notes;
    json source;

    bool is_ds() const { return family.rfind("ds_", 0) == 0; }
};

inline const std::vector<std::pair<std::string, std::string>>& family_table()
{
    static const std::vector<std::pair<std::string, std::string>> t = {
        {"nls_complexified", "n-NLS complexified determinant solution"},
        {"nls_dark", "n-NLS dark N-soliton"},
        {"nls_bright", "n-NLS bright N-soliton"},
        {"nls_breather", "n-NLS N-breather"},
        {"nls_rational", "n-NLS rational breather"},
        {"ds_complexified", "DS complexified determinant solution"},
        {"ds_dark", "DS1 / DS2+ dark soliton"},
        {"ds_bright", "DS1 / DS2- bright soliton"},
        {"ds_breather", "DS1 breather"},
        {"ds_rational", "DS1 rational breather"},
        {"ds_dromion", "DS1 dromion"},
        {"ds_lump", "DS2- lump"},
    };
    return t;
}

namespace detail {

inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object()) throw Error(ErrorKind::Config, where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw Error(ErrorKind::Config, where + ": unknown key '" + it.key() + "'");
}

inline double get_real(const json& j, const std::string& where)
{
    if (!j.is_number()) throw Error(ErrorKind::Config, where + ": expected a number");
    return j.get<double>();
}

// Complex numbers are [re, im]; a plain number is accepted as real.
inline cx get_cx(const json& j, const std::string& where)
{
    if (j.is_number()) return cx{j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return cx{j[0].get<double>(), j[1].get<double>()};
    throw Error(ErrorKind::Config, where + ": expected a number or [re, im]");
}

inline std::vector<cx> get_cx_list(const json& j, const std::string& where)
{
    if (!j.is_array()) throw Error(ErrorKind::Config, where + ": expected a list");
    std::vector<cx> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_cx(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

inline json cx_json(cx z) { return json::array({z.real(), z.imag()}); }

inline Axis get_axis(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 3 || !j[2].is_number_integer())
        throw Error(ErrorKind::Config, where + ": expected [lo, hi, count]");
    Axis a{get_real(j[0], where), get_real(j[1], where), j[2].get<int>()};
    if (a.count < 1) throw Error(ErrorKind::Config, where + ": count must be positive");
    return a;
}

inline RationalMap parse_map(const json& j)
{
    check_keys(j, {"zeros", "poles", "scale"}, "map");
    if (!j.contains("zeros")) throw Error(ErrorKind::Config, "map: 'zeros' is required");
    auto zeros = get_cx_list(j["zeros"], "map.zeros");
    std::vector<PointOnSphere> poles;
    if (j.contains("poles")) {
        if (!j["poles"].is_array()) throw Error(ErrorKind::Config, "map.poles: expected a list");
        for (const auto& e : j["poles"]) {
            if (e.is_string()) {
                if (e.get<std::string>() != "inf") throw Error(ErrorKind::Config, "map.poles: only \"inf\" is accepted as text");
                poles.push_back(PointOnSphere::infinity());
            } else {
                poles.push_back(get_cx(e, "map.poles"));
            }
        }
    }
    if (poles.size() > zeros.size()) throw Error(ErrorKind::Config, "map: more poles than zeros");
    while (poles.size() < zeros.size()) poles.push_back(PointOnSphere::infinity());
    const cx scale = j.contains("scale") ? get_cx(j["scale"], "map.scale") : cx{1.0};
    return RationalMap(std::vector<PointOnSphere>(zeros.begin(), zeros.end()), poles, scale);
}

inline LocalParam parse_local(const json& j)
{
    check_keys(j, {"kind", "scales"}, "local_param");
    const std::string k = j.value("kind", "function_shift");
    std::vector<cx> sc;
    if (j.contains("scales")) sc = get_cx_list(j["scales"], "local_param.scales");
    if (k == "function_shift") return LocalParam::function_shift();
    if (k == "uniformizer") return LocalParam::uniformizer();
    if (k == "scaled_function") return LocalParam::scaled(sc);
    throw Error(ErrorKind::Config, "local_param.kind: unknown kind '" + k + "'");
}

// Fiber points (anchor last) and k' values for the critical-point condition.
inline std::vector<cx> rational_critical_points(const NlsParams& p)
{
    auto s = nls_setup(p);
    std::vector<cx> w;
    for (const auto& k : s.k) w.push_back(1.0 / k.k1);
    return roots(inverse_square_sum_numerator(s.a, w));
}

inline cx nearest(const std::vector<cx>& r, cx hint)
{
    return *std::min_element(r.begin(), r.end(), [&](cx x, cx y) { return std::abs(x - hint) < std::abs(y - hint); });
}

// Nearest root of f = c that is neither taken nor the conjugate of a taken root.
inline cx free_root_near(const RationalMap& f, cx c, cx hint, const std::vector<cx>& taken)
{
    std::vector<cx> r;
    for (cx w : fiber(f, c)) {
        bool used = false;
        for (cx t : taken) used = used || std::abs(w - t) < 1e-9 * (1.0 + std::abs(t)) || std::abs(w - std::conj(t)) < 1e-9 * (1.0 + std::abs(t));
        if (!used) r.push_back(w);
    }
    if (r.empty()) throw Error(ErrorKind::Constraint, "pairs.u_roots: no free root left on the fiber");
    return nearest(r, hint);
}

} // namespace detail

inline ScenarioConfig parse_config(const json& j)
{
    using namespace detail;
    check_keys(j, {"name",     "family", "note",     "map",   "fiber_value", "anchor_index", "local_param", "pairs",  "d",     "A",
                   "theta",    "gamma",  "breather_transform", "signs", "variant", "wa", "wb", "kappa1", "kappa2", "h", "kappa_hat1", "kappa_hat2",
                   "alpha_u",  "alpha_v", "dhat", "lambda", "mu", "nu", "grid", "output", "tolerance"},
               "config");
    ScenarioConfig c;
    c.source = j;
    if (!j.contains("family") || !j["family"].is_string()) throw Error(ErrorKind::Config, "config: 'family' is required");
    c.family = j["family"].get<std::string>();
    bool known = false;
    for (const auto& f : family_table()) known = known || f.first == c.family;
    if (!known) throw Error(ErrorKind::Config, "config: unknown family '" + c.family + "'");
    c.name = j.value("name", c.family);
    if (j.contains("note")) {
        if (j["note"].is_string()) c.notes.push_back(j["note"].get<std::string>());
        else for (const auto& s : j["note"]) c.notes.push_back(s.get<std::string>());
    }
    const bool ds = c.is_ds();

    std::vector<cx> d = j.contains("d") ? get_cx_list(j["d"], "d") : std::vector<cx>{};
    const double theta = j.contains("theta") ? get_real(j["theta"], "theta") : 0.0;
    PairData pairs;
    json pj = j.value("pairs", json::object());
    check_keys(pj, {"u", "v", "u_roots", "u_critical"}, "pairs");

    if (!ds) {
        auto& p = c.nls;
        if (j.contains("map")) p.f = parse_map(j["map"]);
        if (j.contains("fiber_value")) p.fiber_value = get_cx(j["fiber_value"], "fiber_value");
        if (j.contains("anchor_index")) p.anchor_index = j["anchor_index"].get<std::size_t>();
        if (j.contains("local_param")) p.localparam = parse_local(j["local_param"]);
        if (j.contains("A")) p.A = get_cx_list(j["A"], "A");
        if (j.contains("gamma"))
            for (const auto& g : j["gamma"]) p.gamma.push_back(get_real(g, "gamma"));
        c.breather_transform = j.value("breather_transform", true);
        if (j.contains("signs"))
            for (const auto& e : j["signs"]) {
                const int v = e.get<int>();
                if (v != 1 && v != -1) throw Error(ErrorKind::Config, "signs: entries must be +1 or -1");
                c.signs.push_back(v);
            }
        p.theta = theta;
        p.d = d;
        if (pj.contains("u")) pairs.u = get_cx_list(pj["u"], "pairs.u");
        if (pj.contains("u_roots")) {
            for (const auto& e : pj["u_roots"]) {
                check_keys(e, {"value", "near"}, "pairs.u_roots");
                pairs.u.push_back(free_root_near(p.f, get_cx(e.at("value"), "u_roots.value"), get_cx(e.at("near"), "u_roots.near"), pairs.u));
            }
        }
        if (pj.contains("u_critical")) {
            auto crit = rational_critical_points(p);
            for (const auto& e : pj["u_critical"]) {
                check_keys(e, {"near"}, "pairs.u_critical");
                pairs.u.push_back(nearest(crit, get_cx(e.at("near"), "u_critical.near")));
            }
        }
        if (pj.contains("v")) pairs.v = get_cx_list(pj["v"], "pairs.v");
        if (pairs.v.empty() && c.family == "nls_dark")
            for (cx u : pairs.u) pairs.v.push_back(std::conj(u));
        if (pairs.v.empty() && c.family == "nls_breather" && pairs.u.size() % 2 == 0)
            for (std::size_t k = 0; k < pairs.u.size(); k += 2) {
                pairs.v.push_back(std::conj(pairs.u[k + 1]));
                pairs.v.push_back(std::conj(pairs.u[k]));
            }
        p.pairs = pairs;
    } else {
        auto& p = c.ds;
        const std::string var = j.value("variant", c.family == "ds_lump" ? "DS2" : "DS1");
        if (var != "DS1" && var != "DS2") throw Error(ErrorKind::Config, "variant must be DS1 or DS2");
        p.variant = var == "DS1" ? DsVariant::DS1 : DsVariant::DS2;
        for (auto [key, dst] : {std::pair{"wa", &p.wa}, std::pair{"wb", &p.wb}, std::pair{"kappa1", &p.kappa1}, std::pair{"kappa2", &p.kappa2},
                                std::pair{"kappa_hat1", &p.kappa_hat1}, std::pair{"kappa_hat2", &p.kappa_hat2}, std::pair{"lambda", &p.lambda},
                                std::pair{"mu", &p.mu}, std::pair{"nu", &p.nu}})
            if (j.contains(key)) *dst = get_cx(j[key], key);
        if (j.contains("h")) p.h = get_real(j["h"], "h");
        for (auto [key, dst] : {std::pair{"alpha_u", &p.alpha_u}, std::pair{"alpha_v", &p.alpha_v}, std::pair{"dhat", &p.dhat}})
            if (j.contains(key)) *dst = get_cx_list(j[key], key);
        p.theta = theta;
        p.d = d;
        if (pj.contains("u_roots") || pj.contains("u_critical")) throw Error(ErrorKind::Config, "pairs: root selection applies to n-NLS only");
        if (pj.contains("u")) pairs.u = get_cx_list(pj["u"], "pairs.u");
        if (pj.contains("v")) pairs.v = get_cx_list(pj["v"], "pairs.v");
        if (pairs.v.empty() && c.family == "ds_dark" && p.variant == DsVariant::DS1)
            for (cx u : pairs.u) pairs.v.push_back(std::conj(u));
        p.pairs = pairs;
    }

    json gj = j.value("grid", json::object());
    check_keys(gj, {"x", "y", "t", "times", "fd_step"}, "grid");
    if (gj.contains("x")) c.grid.x = get_axis(gj["x"], "grid.x");
    if (gj.contains("y")) c.grid.y = get_axis(gj["y"], "grid.y");
    else if (ds) c.grid.y = c.grid.x;
    if (gj.contains("t")) c.grid.t = get_axis(gj["t"], "grid.t");
    if (gj.contains("times"))
        for (const auto& t : gj["times"]) c.grid.times.push_back(get_real(t, "grid.times"));
    if (gj.contains("fd_step")) c.grid.fd_step = get_real(gj["fd_step"], "grid.fd_step");

    json oj = j.value("output", json::object());
    check_keys(oj, {"components", "csv", "pgm", "fields"}, "output");
    if (oj.contains("components")) {
        const auto& cj = oj["components"];
        if (cj.is_string()) {
            if (cj.get<std::string>() != "all") throw Error(ErrorKind::Config, "output.components: expected \"all\" or a list");
        } else {
            c.output.all_components = false;
            for (const auto& e : cj) c.output.components.push_back(e.get<int>());
        }
    }
    c.output.csv = oj.value("csv", true);
    c.output.pgm = oj.value("pgm", true);
    if (oj.contains("fields")) {
        c.output.fields.clear();
        for (const auto& f : oj["fields"]) {
            auto s = f.get<std::string>();
            if (s != "re" && s != "im" && s != "abs" && s != "phase" && s != "phi")
                throw Error(ErrorKind::Config, "output.fields: unknown field '" + s + "'");
            c.output.fields.push_back(s);
        }
    } else if (ds) {
        c.output.fields.push_back("phi");
    }
    if (j.contains("tolerance")) c.tolerance = get_real(j["tolerance"], "tolerance");
    return c;
}

inline ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Config, std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

// ---------------------------------------------------------------- build and sample

using AnySolution = std::variant<NlsSolution, DsSolution>;

inline AnySolution build_family(const ScenarioConfig& c)
{
    const auto& f = c.family;
    if (f == "nls_complexified") return build_complexified(c.nls);
    if (f == "nls_dark") return build_dark(c.nls);
    if (f == "nls_bright") return build_bright(c.nls);
    if (f == "nls_breather") return build_breather(c.nls, c.breather_transform);
    if (f == "nls_rational") return build_rational_breather(c.nls);
    if (f == "ds_complexified") return build_ds_complexified(c.ds);
    if (f == "ds_dark") return build_ds_dark(c.ds);
    if (f == "ds_bright") return build_ds_bright(c.ds);
    if (f == "ds_breather") return build_ds_breather(c.ds);
    if (f == "ds_rational") return build_ds_rational(c.ds);
    if (f == "ds_dromion") return build_dromion(c.ds);
    if (f == "ds_lump") return build_lump(c.ds);
    throw Error(ErrorKind::Config, "unknown family " + f);
}

inline AnySolution build_solution(const ScenarioConfig& c)
{
    if (!c.signs.empty()) {
        if (c.is_ds()) throw Error(ErrorKind::Config, "signs: applies to n-NLS families only");
        const bool all_plus = std::all_of(c.signs.begin(), c.signs.end(), [](int v) { return v == 1; });
        if (c.family == "nls_dark" && all_plus)
            throw Error(ErrorKind::FocusingObstruction, "nls_dark: signs (+,...,+) are unreachable, dark solutions need a defocusing component");
    }
    auto sol = build_family(c);
    if (!c.signs.empty()) {
        const auto& got = std::get<NlsSolution>(sol).s;
        if (got != c.signs) {
            std::string g;
            for (int v : got) g += v > 0 ? '+' : '-';
            throw Error(ErrorKind::Constraint, c.family + ": parameters give signs (" + g + "), not the requested ones");
        }
    }
    return sol;
}

struct FieldGrid {
    bool ds = false;
    std::vector<double> xs, ys, ts;
    std::size_t ncomp = 0;
    std::vector<std::vector<cx>> psi; // [component][index]
    std::vector<double> phi;          // DS only
    std::vector<unsigned char> mask;  // 1 = singular

    std::size_t size() const { return mask.size(); }
    // NLS: rows are t. DS: one (y, x) plane per time slice.
    std::size_t index(std::size_t ix, std::size_t iy, std::size_t it) const
    {
        return ds ? (it * ys.size() + iy) * xs.size() + ix : it * xs.size() + ix;
    }
};

inline FieldGrid sample(const AnySolution& sol, const GridSpec& g)
{
    FieldGrid F;
    for (int i = 0; i < g.x.count; ++i) F.xs.push_back(g.x.at(i));
    F.ts = g.time_values();
    if (const auto* n = std::get_if<NlsSolution>(&sol)) {
        F.ncomp = n->n;
        F.psi.assign(F.ncomp, std::vector<cx>(F.xs.size() * F.ts.size()));
        F.mask.assign(F.xs.size() * F.ts.size(), 0);
        for (std::size_t it = 0; it < F.ts.size(); ++it)
            for (std::size_t ix = 0; ix < F.xs.size(); ++ix) {
                const auto k = F.index(ix, 0, it);
                auto p = n->at(F.xs[ix], F.ts[it]);
                bool bad = p.singular;
                for (std::size_t j = 0; j < F.ncomp; ++j) {
                    F.psi[j][k] = p.psi[j];
                    bad = bad || !detail::finite(p.psi[j]);
                }
                F.mask[k] = bad;
            }
    } else {
        const auto& d = std::get<DsSolution>(sol);
        F.ds = true;
        F.ncomp = 1;
        for (int i = 0; i < g.y.count; ++i) F.ys.push_back(g.y.at(i));
        const std::size_t N = F.xs.size() * F.ys.size() * F.ts.size();
        F.psi.assign(1, std::vector<cx>(N));
        F.phi.assign(N, 0.0);
        F.mask.assign(N, 0);
        for (std::size_t it = 0; it < F.ts.size(); ++it)
            for (std::size_t iy = 0; iy < F.ys.size(); ++iy)
                for (std::size_t ix = 0; ix < F.xs.size(); ++ix) {
                    const auto k = F.index(ix, iy, it);
                    auto p = d.at_xy(F.xs[ix], F.ys[iy], F.ts[it]);
                    F.psi[0][k] = p.psi;
                    F.phi[k] = p.phi.real();
                    F.mask[k] = p.singular || !detail::finite(p.psi) || !detail::finite(p.phi);
                }
    }
    return F;
}

// ---------------------------------------------------------------- writers

inline std::string num17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(const FieldGrid& F, const std::vector<int>& comps, const std::vector<std::string>& fields,
                      const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    std::vector<std::string> head = F.ds ? std::vector<std::string>{"t", "x", "y"} : std::vector<std::string>{"x", "t"};
    for (int c : comps)
        for (const auto& f : fields)
            if (f != "phi") head.push_back(f + "_psi" + std::to_string(c));
    const bool phi = F.ds && std::find(fields.begin(), fields.end(), "phi") != fields.end();
    if (phi) head.push_back("phi");
    for (std::size_t i = 0; i < head.size(); ++i) out << (i ? "," : "") << head[i];
    out << "\n";
    const std::size_t ny = F.ds ? F.ys.size() : 1;
    for (std::size_t it = 0; it < F.ts.size(); ++it)
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t ix = 0; ix < F.xs.size(); ++ix) {
                const auto k = F.index(ix, iy, it);
                if (F.ds) out << num17(F.ts[it]) << "," << num17(F.xs[ix]) << "," << num17(F.ys[iy]);
                else out << num17(F.xs[ix]) << "," << num17(F.ts[it]);
                const bool m = F.mask[k];
                for (int c : comps) {
                    const cx v = F.psi[static_cast<std::size_t>(c - 1)][k];
                    for (const auto& f : fields) {
                        if (f == "phi") continue;
                        out << ",";
                        if (m) continue;
                        if (f == "re") out << num17(v.real());
                        else if (f == "im") out << num17(v.imag());
                        else if (f == "abs") out << num17(std::abs(v));
                        else out << num17(std::arg(v));
                    }
                }
                if (phi) {
                    out << ",";
                    if (!m) out << num17(F.phi[k]);
                }
                out << "\n";
            }
}

struct RasterInfo {
    std::string file;
    double min = 0.0, max = 0.0;
    std::size_t width = 0, height = 0;
    std::vector<std::size_t> masked; // row-major pixel indices written as 255
};

// 8-bit binary PGM, row 0 at the top (largest second coordinate). Linear map pixel = round(255 (v - min)/(max - min)).
inline RasterInfo write_pgm(const std::vector<double>& values, const std::vector<unsigned char>& mask, std::size_t width,
                            std::size_t height, const std::filesystem::path& path)
{
    RasterInfo info;
    info.file = path.filename().string();
    info.width = width;
    info.height = height;
    bool any = false;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (mask[k]) continue;
        if (!any) info.min = info.max = values[k];
        info.min = std::min(info.min, values[k]);
        info.max = std::max(info.max, values[k]);
        any = true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << "P5\n" << width << " " << height << "\n255\n";
    const double span = info.max - info.min;
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c) {
            const std::size_t k = (height - 1 - r) * width + c;
            unsigned char px = 255;
            if (mask[k]) info.masked.push_back(r * width + c);
            else px = static_cast<unsigned char>(span > 0.0 ? std::lround(255.0 * (values[k] - info.min) / span) : 0);
            out.put(static_cast<char>(px));
        }
    return info;
}

inline json raster_json(const RasterInfo& r)
{
    return json{{"file", r.file},
                {"width", r.width},
                {"height", r.height},
                {"min", r.min},
                {"max", r.max},
                {"map", "pixel = round(255 * (value - min) / (max - min)); masked pixels are 255"},
                {"masked_pixels", r.masked}};
}

// ---------------------------------------------------------------- verification

struct VerifyResult {
    bool pass = false;
    json report;
};

inline VerifyResult verify_solution(const AnySolution& sol, const GridSpec& g, double tol, double reality_tol = 1e-10)
{
    VerifyResult v;
    ResidualReport r;
    RealityReport rr;
    bool phys = false;
    if (const auto* n = std::get_if<NlsSolution>(&sol)) {
        r = nls_residual(*n, g);
        phys = n->physical;
        if (phys) rr = reality_check(*n, g);
    } else {
        const auto& d = std::get<DsSolution>(sol);
        r = ds_residual(d, g);
        phys = d.physical;
        if (phys) rr = reality_check(d, g);
    }
    v.report["residual"] = {{"max_abs", r.max_abs_residual},
                            {"field_scale", r.field_scale},
                            {"relative", r.relative},
                            {"tolerance", tol},
                            {"worst_point", r.worst_point},
                            {"worst_equation", r.worst_equation},
                            {"stencil_order", r.stencil_order},
                            {"steps", r.steps},
                            {"evaluated", r.evaluated},
                            {"excluded", r.excluded}};
    v.pass = r.relative <= tol;
    if (phys) {
        v.report["reality"] = {{"relative", rr.relative}, {"phi_imag_relative", rr.phi_imag_relative}, {"tolerance", reality_tol}};
        v.pass = v.pass && rr.relative <= reality_tol && rr.phi_imag_relative <= reality_tol;
    }
    v.report["pass"] = v.pass;
    return v;
}

// ---------------------------------------------------------------- scenario

struct RunResult {
    std::vector<std::string> files;
    bool verified = false;
    bool verify_pass = true;
};

inline void write_json(const json& j, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
    out << j.dump(2) << "\n";
}

inline RunResult run_scenario(const ScenarioConfig& c, const std::filesystem::path& outdir, bool verify)
{
    std::filesystem::create_directories(outdir);
    RunResult res;
    const auto sol = build_solution(c);
    std::vector<int> comps;
    const std::size_t ncomp = std::holds_alternative<NlsSolution>(sol) ? std::get<NlsSolution>(sol).n : 1;
    if (c.output.all_components)
        for (std::size_t j = 1; j <= ncomp; ++j) comps.push_back(static_cast<int>(j));
    else
        for (int j : c.output.components) {
            if (j < 1 || static_cast<std::size_t>(j) > ncomp) throw Error(ErrorKind::Config, "output.components: index out of range");
            comps.push_back(j);
        }

    json meta;
    meta["name"] = c.name;
    meta["family"] = c.family;
    meta["notes"] = c.notes;
    meta["config"] = c.source;
    if (const auto* n = std::get_if<NlsSolution>(&sol)) {
        meta["signs"] = n->s;
        json A = json::array(), E = json::array(), F = json::array();
        for (std::size_t j = 0; j < n->n; ++j) {
            A.push_back(detail::cx_json(n->A[j]));
            E.push_back(detail::cx_json(n->E[j]));
            F.push_back(detail::cx_json(n->F[j]));
        }
        meta["A"] = A;
        meta["E"] = E;
        meta["F"] = F;
    } else {
        const auto& d = std::get<DsSolution>(sol);
        meta["variant"] = to_string(d.variant);
        meta["rho"] = d.rho;
        meta["A"] = detail::cx_json(d.A);
        meta["G"] = json::array({detail::cx_json(d.G1), detail::cx_json(d.G2), detail::cx_json(d.G3)});
    }

    if (!comps.empty()) {
        const FieldGrid F = sample(sol, c.grid);
        meta["axes"] = {{"x", F.xs.empty() ? json::array() : json::array({F.xs.front(), F.xs.back(), F.xs.size()})},
                        {"t", F.ts}};
        if (F.ds) meta["axes"]["y"] = json::array({F.ys.front(), F.ys.back(), F.ys.size()});
        std::size_t masked = 0;
        for (auto m : F.mask) masked += m;
        meta["masked_points"] = masked;
        if (c.output.csv) {
            write_csv(F, comps, c.output.fields, outdir / "field.csv");
            res.files.push_back("field.csv");
        }
        if (c.output.pgm) {
            json rasters = json::array();
            const std::size_t plane = F.ds ? F.xs.size() * F.ys.size() : F.xs.size() * F.ts.size();
            const std::size_t nslices = F.ds ? F.ts.size() : 1;
            const std::size_t height = F.ds ? F.ys.size() : F.ts.size();
            for (std::size_t s = 0; s < nslices; ++s) {
                std::vector<unsigned char> mask(F.mask.begin() + static_cast<long>(s * plane), F.mask.begin() + static_cast<long>((s + 1) * plane));
                std::string suffix = F.ds ? "_t" + std::to_string(s) : "";
                for (int comp : comps) {
                    std::vector<double> v(plane);
                    for (std::size_t k = 0; k < plane; ++k) v[k] = std::abs(F.psi[static_cast<std::size_t>(comp - 1)][s * plane + k]);
                    const std::string name = "abs_psi" + std::to_string(comp) + suffix + ".pgm";
                    auto info = write_pgm(v, mask, F.xs.size(), height, outdir / name);
                    json rj = raster_json(info);
                    if (F.ds) rj["t"] = F.ts[s];
                    rasters.push_back(rj);
                    res.files.push_back(name);
                }
            }
            meta["rasters"] = rasters;
        }
    }
    if (verify) {
        auto v = verify_solution(sol, c.grid, c.tolerance);
        res.verified = true;
        res.verify_pass = v.pass;
        write_json(v.report, outdir / "verify.json");
        res.files.push_back("verify.json");
        meta["verify_pass"] = v.pass;
    }
    write_json(meta, outdir / "metadata.json");
    res.files.push_back("metadata.json");
    return res;
}

// ---------------------------------------------------------------- presets

inline std::vector<std::pair<std::string, json>> figure_presets()
{
    auto c = [](double re, double im) { return json::array({re, im}); };
    std::vector<std::pair<std::string, json>> out;
    out.emplace_back("fig1", json{
        {"name", "fig1"},
        {"family", "nls_breather"},
        {"note", json::array({"breather of 4-NLS with signs (-,-,+,-)",
                              "the map's poles are not listed; all poles are placed at infinity",
                              "axis ranges are a framing choice"})},
        {"map", {{"zeros", json::array({10.0, -5.0, -1.0 / 3.0, 0.25, 0.5})}}},
        {"pairs", {{"u_roots", json::array({json{{"value", c(0, 2)}, {"near", c(0.55, -0.11)}},
                                            json{{"value", c(0, -2)}, {"near", c(-0.35, 0.07)}}})}}},
        {"d", json::array({0.0, 0.0})},
        {"grid", {{"x", json::array({-6.0, 6.0, 121})}, {"t", json::array({-1.5, 1.5, 121})}}},
    });
    out.emplace_back("fig2", json{
        {"name", "fig2"},
        {"family", "nls_breather"},
        {"note", json::array({"2-breather of 4-NLS with signs (-,+,+,-)",
                              "u1, u2 are snapped to the nearest free roots of f = 2i and f = -2i on this map; the quoted values do not lie on its fibers, and the root nearest the u2 value is conj(u1), so the next one is used",
                              "axis ranges are a framing choice"})},
        {"map", {{"zeros", json::array({1.0 / 3.0, 3.0, 1.0 / 7.0, 2.0, 1.0})}, {"poles", json::array({-1.0, 4.0, -2.0, 0.0, "inf"})}}},
        {"pairs", {{"u_roots", json::array({json{{"value", c(0, 2)}, {"near", c(0.55, -0.11)}},
                                            json{{"value", c(0, -2)}, {"near", c(-0.35, 0.07)}},
                                            json{{"value", c(10, -5)}, {"near", c(-0.91, -0.52)}},
                                            json{{"value", c(10, 5)}, {"near", c(14.46, 5.32)}}})}}},
        {"d", json::array({0.0, 0.0, 0.0, 0.0})},
        {"grid", {{"x", json::array({-2.0, 2.0, 121})}, {"t", json::array({-0.05, 0.05, 121})}}},
    });
    out.emplace_back("fig3", json{
        {"name", "fig3"},
        {"family", "nls_rational"},
        {"note", json::array({"rational breather of 4-NLS with signs (+,+,+,+)",
                              "local parameters k = f / f'(a) at each zero",
                              "axis ranges are a framing choice"})},
        {"map", {{"zeros", json::array({3.0, 5.0, 7.0, 0.0, 4.0})}}},
        {"local_param", {{"kind", "scaled_function"}}},
        {"pairs", {{"u_critical", json::array({json{{"near", c(4.53, 0.56)}}})}}},
        {"d", json::array({0.0})},
        {"grid", {{"x", json::array({-4.0, 4.0, 121})}, {"t", json::array({-2.0, 2.0, 121})}}},
    });
    out.emplace_back("fig4", json{
        {"name", "fig4"},
        {"family", "nls_rational"},
        {"note", json::array({"2-rational breather of 4-NLS with signs (+,+,+,+)",
                              "local parameters k = f / f'(a) at each zero",
                              "the shift 10 is applied to both d_hat entries",
                              "axis ranges are a framing choice"})},
        {"map", {{"zeros", json::array({3.0, 5.0, 7.0, 0.0, 4.0})}}},
        {"local_param", {{"kind", "scaled_function"}}},
        {"pairs", {{"u_critical", json::array({json{{"near", c(4.53, 0.56)}}, json{{"near", c(3.45, 0.56)}}})}}},
        {"d", json::array({10.0, 10.0})},
        {"grid", {{"x", json::array({-12.0, 12.0, 121})}, {"t", json::array({-6.0, 6.0, 121})}}},
    });
    out.emplace_back("ds_breather", json{
        {"name", "ds_breather"},
        {"family", "ds_breather"},
        {"note", json::array({"2-breather of DS1-", "axis ranges are a framing choice"})},
        {"wa", 8.0}, {"wb", -1.0}, {"kappa1", 1.0}, {"kappa2", 1.0}, {"h", 0.0},
        {"pairs", {{"u", json::array({c(5, -2), c(2, 1), c(3, -1), c(1, 4)})}}},
        {"d", json::array({0.0, 0.0, 0.0, 0.0})},
        {"grid", {{"x", json::array({-40.0, 40.0, 101})}, {"y", json::array({-40.0, 40.0, 101})}, {"times", json::array({0.0, 45.0})}}},
    });
    out.emplace_back("ds_rational", json{
        {"name", "ds_rational"},
        {"family", "ds_rational"},
        {"note", json::array({"2-rational breather of DS1-", "axis ranges are a framing choice"})},
        {"wa", 2.0}, {"wb", 1.0}, {"kappa1", 1.0}, {"kappa2", 1.0}, {"h", 0.0},
        {"pairs", {{"u", json::array({c(0, 2), c(2, 1)})}}},
        {"d", json::array({0.0, 0.0})},
        {"grid", {{"x", json::array({-15.0, 15.0, 101})}, {"y", json::array({-15.0, 15.0, 101})}, {"times", json::array({-5.0, 0.0, 5.0})}}},
    });
    out.emplace_back("ds_line", json{
        {"name", "ds_line"},
        {"family", "ds_rational"},
        {"note", json::array({"line rational breather interacting with a rational breather, DS1-", "axis ranges are a framing choice"})},
        {"wa", 2.0}, {"wb", -2.0}, {"kappa1", 1.0}, {"kappa2", 1.0}, {"h", 0.0},
        {"pairs", {{"u", json::array({c(0, 3), c(0, 2)})}}},
        {"d", json::array({0.0, 0.0})},
        {"grid", {{"x", json::array({-30.0, 30.0, 101})}, {"y", json::array({-30.0, 30.0, 101})},
                  {"times", json::array({-50.0, -20.0, -5.0, 0.0, 10.0, 50.0})}}},
    });
    return out;
}

inline json find_preset(const std::string& name)
{
    for (auto& [n, j] : figure_presets())
        if (n == name) return j;
    throw Error(ErrorKind::Config, "unknown preset '" + name + "'");
}

// ---------------------------------------------------------------- oracle

struct OracleReport {
    int genus = 0, trials = 0;
    std::uint64_t seed = 0;
    double max_rel_error = 0.0;
};

inline OracleReport oracle_cmd(int genus, int trials, std::uint64_t seed)
{
    if (genus < 1 || genus > 12) throw Error(ErrorKind::Size, "oracle: genus must be between 1 and 12");
    if (trials < 1) throw Error(ErrorKind::Config, "oracle: trials must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto rc = [&] { return cx{U(rng), U(rng)}; };
    OracleReport rep{genus, trials, seed, 0.0};
    for (int k = 0; k < trials; ++k) {
        PairData P;
        std::vector<cx> z;
        for (int i = 0; i < genus; ++i) {
            P.u.push_back(2.0 * rc());
            P.v.push_back(2.0 * rc());
            z.push_back(rc());
        }
        std::vector<AffineArg> args;
        for (cx zi : z) args.push_back(AffineArg{cx{}, cx{}, cx{}, zi});
        const cx det = eval_det(build_T(P, args), Coord{}).value();
        const cx sum = theta_sum_oracle(b_offdiag(P), z);
        rep.max_rel_error = std::max(rep.max_rel_error, std::abs(det - sum) / std::abs(sum));
    }
    return rep;
}

} // namespace solitonic
