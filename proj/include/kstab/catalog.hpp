#pragma once

#include "kstab/arith.hpp"
#include "kstab/az.hpp"
#include "kstab/families.hpp"
#include "kstab/geom.hpp"
#include "kstab/invariants.hpp"
#include "kstab/surface.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kstab {

/** @brief One integer parameter of a family with its lower bound and default. */
struct ParamSpec {
    std::string name;
    long min;
    long def;
};

/** @brief A product factor of a product-type case: model kind and the coefficient indices it carries. */
struct FactorSpec {
    std::string kind;                  ///< p2_conic | p2_two_lines | quadric_conic | line_point
    std::vector<int> coeff_index;      ///< index into the coefficient vector, -1 for coefficient 0
};

/** @brief Static row metadata of the classification table. */
struct RowInfo {
    std::string id;
    std::string variety;
    std::vector<ParamSpec> params;
    std::vector<std::string> boundary_text;
    Rat table_eps;
    std::string semistable_column;
};

inline const std::vector<RowInfo>& table_rows() {
    static const std::vector<RowInfo> rows = {
        {"E1", "Bl_p Q", {}, {"E", "H~"}, Rat(2), "No"},
        {"E2", "Bl_p P_P1(O+O+O(n))", {{"n", 1, 1}}, {"F~", "(H-nF)~"}, Rat(2), "No"},
        {"C1", "P_P2(O+O(k))", {{"k", 0, 1}}, {"H-kF", "2F"}, Rat(2), "No"},
        {"C2", "P_P2(O+O(k))", {{"k", 0, 1}}, {"H-kF", "F", "F"}, Rat(2), "No"},
        {"C3", "P_P2(O+O(k))", {{"k", -1, -1}}, {"H-kF", "F"}, Rat(2), "No"},
        {"C4", "P_Fn(O+O(ks+(kn+m)f))", {{"k", 0, 0}, {"n", 0, 0}, {"m", -1, -1}}, {"H-kFs-(kn+m)Ff", "Fs"}, Rat(2), "No"},
        {"C5", "P_Fn(O+O(ks+(kn+m)f))", {{"k", 0, 0}, {"n", 0, 0}, {"m", 0, 0}}, {"H-kFs-(kn+m)Ff", "Fs", "Ff"}, Rat(2), "No"},
        {"C6", "P_Fn(E), E nonsplit in Ext^1(O(ks+(kn-2)f), O)", {{"k", 1, 1}, {"n", 1, 2}}, {"H1", "Fs"}, Rat(2), "No"},
        {"C7", "P_P1xP1(O+O(k,n))", {{"k", 0, 0}, {"n", 0, 0}}, {"H-kF1-nF2", "F1+F2"}, Rat(2), "No"},
        {"C8", "P_F1(O+O(ks+(k+m)f))", {{"k", 0, 0}, {"m", 0, 0}}, {"H-kFs-(k+m)Ff", "Fh"}, Rat(2), "No"},
        {"C9", "P_P2(T_P2)", {}, {"H1", "H2"}, Rat(2), "For some a, b"},
        {"C10", "X in |F+E+H| on F1 x P2", {}, {"H-E", "E"}, Rat(2), "No"},
        {"D1", "P_P1(O+O(k)+O(n))", {{"k", 0, 0}, {"n", 0, 0}}, {"H-kF", "H-nF"}, Rat(3), "No"},
        {"D2", "P_P1(O+O(1)+O(n))", {{"n", 1, 1}}, {"H", "H-nF"}, Rat(3), "No"},
        {"D3", "P_P1(O+O+O(1))", {}, {"H", "H"}, Rat(3), "No"},
        {"D4", "P_P1(O+O+O(n))", {{"n", 1, 1}}, {"H+F", "H-nF"}, Rat(3), "No"},
        {"D5", "P_P1(O+O+O)", {}, {"H+F", "H"}, Rat(3), "For some a, b"},
        {"D6", "P_P1(O+O+O(n))", {{"n", 1, 1}}, {"H-nF", "F"}, Rat(3, 2), "No"},
        {"D7", "P_P1(O+O+O)", {}, {"2H", "F"}, Rat(3), "No"},
        {"D8", "P_P1(O+O(k)+O(n))", {{"k", 0, 0}, {"n", 0, 0}}, {"H-kF", "H-nF", "F"}, Rat(3), "No"},
        {"Q1", "X in |2H| on P_P1(O+O+O+O(m))", {{"m", 1, 1}}, {"H-mF", "F"}, Rat(2), "For m=1 and some a, b"},
        {"F1", "P3", {}, {"H", "H", "H"}, Rat(4), "No"},
        {"F2", "P3", {}, {"H", "H"}, Rat(2), "No"},
        {"F3", "P3", {}, {"2H", "H"}, Rat(4, 3), "For some a, b"},
        {"F4", "Q", {}, {"H", "H"}, Rat(3), "For some a, b"},
    };
    return rows;
}

inline const RowInfo& row_info(const std::string& id) {
    for (const auto& r : table_rows())
        if (r.id == id) return r;
    throw DomainError("unknown case id " + id);
}

/** @brief A fully instantiated row: variety, boundary, test divisors, centers and metadata. */
struct CatalogCase {
    std::string id;
    std::map<std::string, long> params;
    Threefold X;
    std::vector<LabeledClass> boundary;
    std::vector<LabeledClass> tests;
    std::vector<CenterSpec> centers;
    Rat expected_nef_value;
    std::string semistable_column;
    std::vector<FactorSpec> product_factors;
    std::string known_region;

    std::size_t dim() const { return boundary.size(); }
    bool is_product() const { return !product_factors.empty(); }

    LogPair pair(const std::vector<Rat>& coeffs) const {
        if (coeffs.size() != boundary.size())
            throw DomainError(id + " needs " + std::to_string(boundary.size()) + " coefficients");
        LogPair p{X, boundary, coeffs, {}};
        for (const auto& t : tests) {
            bool in_boundary = std::any_of(boundary.begin(), boundary.end(), [&](const auto& b) { return b.label == t.label; });
            if (!in_boundary) p.extra_primes.push_back(t);
        }
        return p;
    }

    /**
     * @brief Body of ample angles as strict affine inequalities form(c) > 0,
     * one per Mori generator.
     */
    std::vector<AffineForm> ample_constraints() const {
        std::vector<AffineForm> out;
        for (const auto& C : X.mori) {
            AffineForm f{-C(X.canonical), {}};
            for (const auto& b : boundary) f.linear.push_back(-C(b.cls));
            out.push_back(f);
        }
        return out;
    }

    std::vector<SurfacePair> factors(const std::vector<Rat>& c) const {
        std::vector<SurfacePair> out;
        auto co = [&](const FactorSpec& f, std::size_t i) {
            return (i < f.coeff_index.size() && f.coeff_index[i] >= 0) ? c.at(static_cast<std::size_t>(f.coeff_index[i])) : Rat(0);
        };
        for (const auto& f : product_factors) {
            if (f.kind == "p2_conic") out.push_back(p2_conic(co(f, 0)));
            else if (f.kind == "p2_two_lines") out.push_back(p2_two_lines(co(f, 0), co(f, 1)));
            else if (f.kind == "quadric_conic") out.push_back(quadric_surface_conic(co(f, 0)));
            else if (f.kind == "line_point") out.push_back(line_point(co(f, 0)));
            else throw ConfigError("unknown product factor kind " + f.kind);
        }
        return out;
    }
};

namespace detail {

inline NumericalClass nc(std::initializer_list<long> v) {
    Vec c;
    for (long x : v) c.push_back(Rat(x));
    return NumericalClass(c);
}

inline CenterSpec center(std::string label, std::string y_label, NumericalClass y, SurfaceModel s,
                         std::vector<Vec> restriction, Vec z, AffineForm A) {
    return CenterSpec{std::move(label), std::move(y_label), std::move(y), s, std::move(restriction), std::move(z), A, {}};
}

inline Vec v(std::initializer_list<long> x) {
    Vec out;
    for (long e : x) out.push_back(Rat(e));
    return out;
}

inline std::string cls_label(const std::string& base, long k) {
    if (k == 0) return base;
    return base + "-" + std::to_string(k) + "F";
}

}  // namespace detail

/**
 * @brief Build a table row with the given parameters (missing ones take the row default).
 *
 * Throws DomainError for unknown ids, unknown parameter names or parameters
 * outside the row's range.
 */
inline CatalogCase instantiate(const std::string& id, std::map<std::string, long> params = {}) {
    using detail::nc;
    using detail::v;
    const RowInfo& info = row_info(id);
    for (const auto& [name, value] : params) {
        auto it = std::find_if(info.params.begin(), info.params.end(), [&](const ParamSpec& p) { return p.name == name; });
        if (it == info.params.end()) throw DomainError(id + " has no parameter " + name);
        if (value < it->min)
            throw DomainError(id + ": parameter " + name + " must be >= " + std::to_string(it->min));
    }
    for (const auto& p : info.params)
        if (!params.count(p.name)) params[p.name] = p.def;

    CatalogCase c;
    c.id = id;
    c.params = params;
    c.expected_nef_value = info.table_eps;
    c.semistable_column = info.semistable_column;
    auto P = [&](const char* n) { return params.at(n); };

    if (id == "E1") {
        c.X = families::blowup_quadric_point();
        c.boundary = {{"D1", nc({1, 0})}, {"D2", nc({0, 1})}};
        c.tests = c.boundary;
    } else if (id == "E2") {
        c.X = families::blowup_p2_bundle_point(P("n"));
        c.boundary = {{"D1", nc({1, 0, 0})}, {"D2", nc({0, 1, 0})}};
        c.tests = c.boundary;
    } else if (id == "C1" || id == "C2" || id == "C3") {
        long k = P("k");
        if (id == "C3" && k == -1) {
            // P(O + O(-1)) is P(O + O(1)); the boundary H - kF = H + F is the positive section.
            c.X = families::p1_bundle_over_p2(1);
            c.boundary = {{"D1", nc({1, 1})}, {"D2", nc({0, 1})}};
            c.tests = {c.boundary[0], c.boundary[1], {"xi", nc({1, 0})}};
        } else {
            c.X = families::p1_bundle_over_p2(k);
            if (id == "C1") c.boundary = {{"D1", nc({1, 0})}, {"D2", nc({0, 2})}};
            if (id == "C2") c.boundary = {{"D1", nc({1, 0})}, {"D2", nc({0, 1})}, {"D3", nc({0, 1})}};
            if (id == "C3") c.boundary = {{"D1", nc({1, 0})}, {"D2", nc({0, 1})}};
            c.tests = c.boundary;
        }
    } else if (id == "C4" || id == "C5" || id == "C6" || id == "C7" || id == "C8") {
        long k = 0, n = 0, m = 0;
        bool split = true;
        if (id == "C4" || id == "C5") {
            k = P("k");
            n = P("n");
            m = P("m");
        } else if (id == "C6") {
            k = P("k");
            n = P("n");
            m = -2;
            split = false;
            if (k == 1 && n == 1) throw DomainError("C6 requires (k, n) != (1, 1)");
        } else if (id == "C7") {
            k = P("k");
            m = P("n");
        } else {
            k = P("k");
            n = 1;
            m = P("m");
        }
        c.X = families::p1_bundle_over_fn(k, n, m, split);
        NumericalClass H1 = nc({1, 0, 0}), Fs = nc({0, 1, 0}), Ff = nc({0, 0, 1});
        if (id == "C5")
            c.boundary = {{"D1", H1}, {"D2", Fs}, {"D3", Ff}};
        else if (id == "C4" || id == "C6")
            c.boundary = {{"D1", H1}, {"D2", Fs}};
        else
            c.boundary = {{"D1", H1}, {"D2", Fs + Ff}};
        c.tests = c.boundary;
        if (id == "C7" && k == 0 && m == 0) c.product_factors = {{"line_point", {0}}, {"quadric_conic", {1}}};
    } else if (id == "C9") {
        c.X = families::flag_threefold();
        c.boundary = {{"D1", nc({1, 0})}, {"D2", nc({0, 1})}};
        c.tests = c.boundary;
        // Y = D1 is F_1 with H1|_Y = f, H2|_Y = s + f; Z = D2|_Y.
        c.centers = {detail::center("Z", "D1", nc({1, 0}), SurfaceModel::hirzebruch(1), {v({0, 1}), v({1, 1})},
                                    v({1, 1}), AffineForm{Rat(1), {Rat(0), Rat(-1)}})};
        c.known_region = "C9";
    } else if (id == "C10") {
        c.X = families::divisor_in_f1_x_p2();
        c.boundary = {{"D1", nc({-1, 0, 1})}, {"D2", nc({1, 0, 0})}};
        c.tests = c.boundary;
    } else if (id == "D1" || id == "D8") {
        long k = P("k"), n = P("n");
        c.X = families::p2_bundle(k, n);
        c.boundary = {{"D1", nc({1, -k})}, {"D2", nc({1, -n})}};
        if (id == "D8") c.boundary.push_back({"D3", nc({0, 1})});
        c.tests = {c.boundary[0], c.boundary[1]};
        if (std::min(k, n) == 0) c.tests.push_back(id == "D8" ? c.boundary[2] : LabeledClass{"F", nc({0, 1})});
        if (k == 0 && n == 0)
            c.product_factors = {{"p2_two_lines", {0, 1}}, {"line_point", {id == "D8" ? 2 : -1}}};
    } else if (id == "D2") {
        long n = P("n");
        c.X = families::p2_bundle(1, n);
        c.boundary = {{"D1", nc({1, 0})}, {"D2", nc({1, -n})}};
        c.tests = {c.boundary[0], c.boundary[1], {"E", nc({1, -1})}};
    } else if (id == "D3") {
        c.X = families::p2_bundle(0, 1);
        c.boundary = {{"D1", nc({1, 0})}, {"D2", nc({1, 0})}};
        c.tests = {c.boundary[0], c.boundary[1], {"E", nc({1, -1})}};
    } else if (id == "D4") {
        long n = P("n");
        c.X = families::p2_bundle(0, n);
        c.boundary = {{"D1", nc({1, 1})}, {"D2", nc({1, -n})}};
        c.tests = c.boundary;
    } else if (id == "D5") {
        c.X = families::p2_bundle(0, 0);
        c.boundary = {{"D1", nc({1, 1})}, {"D2", nc({1, 0})}};
        c.tests = {c.boundary[0], c.boundary[1], {"H", nc({1, 0})}, {"F", nc({0, 1})}, {"H+F", nc({1, 1})},
                   {"2H+F", nc({2, 1})}};
        // Y = D2 = P^1 x P^1 with H|_Y = (1,0), F|_Y = (0,1); Z = D1|_Y.
        // Y' = D1 = F_1 with H|_Y' = s + f, F|_Y' = f; Z' the (-1)-curve.
        c.centers = {detail::center("Z", "D2", nc({1, 0}), SurfaceModel::p1xp1(), {v({1, 0}), v({0, 1})}, v({1, 1}),
                                    AffineForm{Rat(1), {Rat(-1), Rat(0)}}),
                     detail::center("Z'", "D1", nc({1, 1}), SurfaceModel::hirzebruch(1), {v({1, 0}), v({1, 1})},
                                    v({1, 0}), AffineForm{Rat(1), {Rat(0), Rat(0)}})};
        c.known_region = "D5";
    } else if (id == "D6") {
        long n = P("n");
        c.X = families::p2_bundle(0, n);
        c.boundary = {{"D1", nc({1, -n})}, {"D2", nc({0, 1})}};
        c.tests = {c.boundary[0], c.boundary[1], {"H", nc({1, 0})}};
    } else if (id == "D7") {
        c.X = families::p2_bundle(0, 0);
        c.boundary = {{"D1", nc({2, 0})}, {"D2", nc({0, 1})}};
        c.tests = {c.boundary[0], c.boundary[1], {"H", nc({1, 0})}};
        c.product_factors = {{"p2_conic", {0}}, {"line_point", {1}}};
    } else if (id == "Q1") {
        long m = P("m");
        c.X = families::quadric_bundle(m);
        c.boundary = {{"D1", nc({1, 0})}, {"D2", nc({0, 1})}};
        c.tests = {c.boundary[0], {"H", nc({1, m})}, c.boundary[1]};
        if (m == 1) {
            // Y = D1 = P^1 x P^1 with E|_Y = (-1, 2), F|_Y = (1, 0); Z = D2|_Y.
            c.centers = {detail::center("Z", "D1", nc({1, 0}), SurfaceModel::p1xp1(), {v({-1, 1}), v({2, 0})},
                                        v({1, 0}), AffineForm{Rat(1), {Rat(0), Rat(-1)}})};
            c.known_region = "Q1";
        } else {
            c.semistable_column = "No";
        }
    } else if (id == "F1" || id == "F2" || id == "F3") {
        c.X = families::projective_space();
        if (id == "F1") c.boundary = {{"D1", nc({1})}, {"D2", nc({1})}, {"D3", nc({1})}};
        if (id == "F2") c.boundary = {{"D1", nc({1})}, {"D2", nc({1})}};
        if (id == "F3") c.boundary = {{"D1", nc({2})}, {"D2", nc({1})}};
        c.tests = c.boundary;
        c.tests.push_back({"H", nc({1})});
        if (id == "F3") {
            // Y = D1 = P^1 x P^1 with H|_Y = (1,1); Z = D2|_Y.
            c.centers = {detail::center("Z", "D1", nc({2}), SurfaceModel::p1xp1(), {v({1}), v({1})}, v({1, 1}),
                                        AffineForm{Rat(1), {Rat(0), Rat(-1)}})};
            c.known_region = "F3";
        }
    } else if (id == "F4") {
        c.X = families::quadric();
        c.boundary = {{"D1", nc({1})}, {"D2", nc({1})}};
        c.tests = c.boundary;
        c.centers = {detail::center("Z", "D2", nc({1}), SurfaceModel::p1xp1(), {v({1}), v({1})}, v({1, 1}),
                                    AffineForm{Rat(1), {Rat(-1), Rat(0)}})};
        c.known_region = "F4";
    }
    auto errs = validate(c.X);
    if (!errs.empty()) throw ConfigError(id + ": " + errs.front());
    for (const auto& b : c.boundary)
        if (!is_pseff(c.X, b.cls)) throw ConfigError(id + ": boundary " + b.label + " is not pseudo-effective");
    return c;
}

inline std::vector<std::string> case_ids() {
    std::vector<std::string> out;
    for (const auto& r : table_rows()) out.push_back(r.id);
    return out;
}

/** @brief Nef value of the reduced pair (X, Delta). */
inline NefValue case_nef_value(const CatalogCase& c) {
    NumericalClass d = NumericalClass::zero(c.X.rho());
    for (const auto& b : c.boundary) d += b.cls;
    return nef_value(c.X, d);
}

// ---------------------------------------------------------------------------
// Known K-semistability regions as exact polynomial sign conditions.

namespace regions {

/** @brief 3b <= 2a and 6a - b <= 4. */
inline bool f3(const Rat& a, const Rat& b) { return Rat(3) * b <= Rat(2) * a && Rat(6) * a - b <= Rat(4); }

/** @brief 3a - b <= 1 and 3b - a <= 1. */
inline bool f4(const Rat& a, const Rat& b) { return Rat(3) * a - b <= Rat(1) && Rat(3) * b - a <= Rat(1); }

/**
 * @brief b <= a/2 and either a <= alpha (alpha the root of 9x^3-58x^2+106x-40
 * in (0,1)), or a <= 20/37 and b is above the lower branch
 * (T - sqrt(Q/2))/(3a), T = -4+13a-4a^2, Q = 32-88a+84a^2-34a^3+5a^4.
 */
inline bool d5(const Rat& a, const Rat& b) {
    if (Rat(2) * b > a) return false;
    Rat p = Rat(9) * a * a * a - Rat(58) * a * a + Rat(106) * a - Rat(40);
    if (p.sign() <= 0) return true;
    if (a > Rat(20, 37)) return false;
    Rat T = Rat(-4) + Rat(13) * a - Rat(4) * a * a - Rat(3) * a * b;
    Rat Q = Rat(32) - Rat(88) * a + Rat(84) * a * a - Rat(34) * a * a * a + Rat(5) * a * a * a * a;
    return T.sign() <= 0 || Rat(2) * T * T <= Q;
}

/** @brief a <= (sqrt(10)-2)/3 and b <= 1 - sqrt(4+4a+3a^2)/sqrt(6). */
inline bool q1(const Rat& a, const Rat& b) {
    Rat s = Rat(3) * a + Rat(2);
    if (s * s > Rat(10)) return false;
    Rat u = Rat(1) - b;
    return u.sign() >= 0 && Rat(6) * u * u >= Rat(4) + Rat(4) * a + Rat(3) * a * a;
}

/**
 * @brief b <= (16-3a)/8 - sqrt(3) sqrt(64-32a+3a^2)/8, and either a <= 2-sqrt(3)
 * or (a <= 2/7 and 3ab >= -4+16a-4a^2).
 */
inline bool c9(const Rat& a, const Rat& b) {
    Rat w = Rat(16) - Rat(3) * a - Rat(8) * b;
    if (w.sign() < 0 || w * w < Rat(3) * (Rat(64) - Rat(32) * a + Rat(3) * a * a)) return false;
    Rat t = Rat(2) - a;
    if (t.sign() >= 0 && t * t >= Rat(3)) return true;
    return a <= Rat(2, 7) && Rat(3) * a * b >= Rat(-4) + Rat(16) * a - Rat(4) * a * a;
}

inline std::function<bool(const Rat&, const Rat&)> by_name(const std::string& id) {
    if (id == "F3") return f3;
    if (id == "F4") return f4;
    if (id == "D5") return d5;
    if (id == "Q1") return q1;
    if (id == "C9") return c9;
    throw DomainError("no known region named " + id);
}

inline std::string description(const std::string& id) {
    if (id == "F3") return "3b <= 2a, 6a - b <= 4";
    if (id == "F4") return "3a - b <= 1, 3b - a <= 1";
    if (id == "D5") return "b <= a/2, and a <= alpha or (a <= 20/37, b >= (-4+13a-4a^2)/(3a) - sqrt((32-88a+84a^2-34a^3+5a^4)/a^2)/(3 sqrt 2))";
    if (id == "Q1") return "a <= (sqrt(10)-2)/3, b <= 1 - sqrt(4+4a+3a^2)/sqrt(6)";
    if (id == "C9") return "b <= (16-3a)/8 - sqrt(3) sqrt(64-32a+3a^2)/8, and a <= 2-sqrt(3) or (a <= 2/7, 3ab >= -4+16a-4a^2)";
    return "";
}

}  // namespace regions

}  // namespace kstab
