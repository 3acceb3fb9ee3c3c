#pragma once

#include "kstab/arith.hpp"
#include "kstab/az.hpp"
#include "kstab/catalog.hpp"
#include "kstab/families.hpp"
#include "kstab/invariants.hpp"
#include "kstab/scan.hpp"
#include "kstab/surface.hpp"
#include "kstab/zariski.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace kstab::verify {

using Point = std::vector<Rat>;
using Form = std::function<Rat(const Point&)>;
using CaseProvider = std::function<CatalogCase(const std::string&, const std::map<std::string, long>&)>;

/** @brief One named, self-contained check. */
struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
};

/** @brief All checks of one acceptance criterion. */
struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return !checks.empty();
    }
    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.ok ? 0 : 1;
        return n;
    }
};

inline CaseProvider default_provider() {
    return [](const std::string& id, const std::map<std::string, long>& p) { return instantiate(id, p); };
}

struct Options {
    long cap = 10;                              ///< parameter cap for the instability sweeps
    CaseProvider provider = default_provider(); ///< source of catalog cases (replaceable for negative controls)
    unsigned threads = 0;                       ///< 0 = hardware concurrency
};

inline std::string show(const Point& x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].str();
    return s + ")";
}

inline Rat q(long n, long d = 1) { return Rat(n, d); }

/** @brief Nodes base + h * (j_1, ..., j_d), 0 <= j_i < per_axis. */
inline std::vector<Point> node_box(const Point& base, const Rat& h, int per_axis = 6) {
    std::vector<Point> out{{}};
    for (std::size_t d = 0; d < base.size(); ++d) {
        std::vector<Point> next;
        for (const auto& pre : out)
            for (int j = 0; j < per_axis; ++j) {
                auto p = pre;
                p.push_back(base[d] + h * Rat(j));
                next.push_back(std::move(p));
            }
        out = std::move(next);
    }
    return out;
}

/**
 * @brief Exact agreement of two forms on a node box; every node must lie in
 * the body of ample angles. A polynomial of degree < per_axis in each variable
 * is determined by its values on the box, so agreement is an identity on the
 * chamber containing it.
 */
inline Check identity(const std::string& name, const CatalogCase& c, const Point& base, const Rat& h,
                      const Form& lhs, const Form& rhs, int per_axis = 6) {
    auto nodes = node_box(base, h, per_axis);
    for (const auto& x : nodes) {
        if (!is_log_fano(c.pair(x))) return {name, false, "node " + show(x) + " lies outside the body of ample angles"};
        try {
            Rat l = lhs(x), r = rhs(x);
            if (l != r)
                return {name, false, "at " + show(x) + ": exact " + l.str() + ", closed form " + r.str()};
        } catch (const std::exception& e) {
            return {name, false, "at " + show(x) + ": " + e.what()};
        }
    }
    return {name, true, std::to_string(nodes.size()) + " nodes agree"};
}

/** @brief A predicate that must hold at every node of a box. */
inline Check holds(const std::string& name, const CatalogCase& c, const std::vector<Point>& pts,
                   const std::function<bool(const Point&)>& pred) {
    for (const auto& x : pts) {
        if (!is_log_fano(c.pair(x))) return {name, false, "point " + show(x) + " lies outside the body of ample angles"};
        try {
            if (!pred(x)) return {name, false, "fails at " + show(x)};
        } catch (const std::exception& e) {
            return {name, false, "at " + show(x) + ": " + e.what()};
        }
    }
    return {name, true, std::to_string(pts.size()) + " points"};
}

inline const LabeledClass& test_class(const CatalogCase& c, const std::string& label) {
    for (const auto& t : c.tests)
        if (t.label == label) return t;
    for (const auto& t : c.boundary)
        if (t.label == label) return t;
    throw DomainError(c.id + " has no test divisor " + label);
}

// ---------------------------------------------------------------------------
// Engine-side forms.

inline Form beta_of(const CatalogCase& c, const std::string& label) {
    return [c, label](const Point& x) {
        const auto& t = test_class(c, label);
        return beta_prime(c.pair(x), t.cls, t.label).beta_prime;
    };
}

inline Form s_prime_of(const CatalogCase& c, const std::string& label) {
    return [c, label](const Point& x) {
        const auto& t = test_class(c, label);
        return beta_prime(c.pair(x), t.cls, t.label).S_prime;
    };
}

inline Form l_cubed_of(const CatalogCase& c) {
    return [c](const Point& x) { return cube(c.X, c.pair(x).polarization()); };
}

/** @brief Integral of vol(L - tE) over [0, eps] (first = true) or [eps, tau]. */
inline Form partial_integral_of(const CatalogCase& c, const std::string& label, bool first) {
    return [c, label, first](const Point& x) {
        const auto& t = test_class(c, label);
        LogPair p = c.pair(x);
        auto rd = decompose_ray(p.X, p.polarization(), t.cls);
        auto prof = rd.volume_profile();
        return first ? integrate(prof, Rat(0), rd.eps) : integrate(prof, rd.eps, rd.tau);
    };
}

inline Form s_w_of(const CatalogCase& c, const std::string& center) {
    return [c, center](const Point& x) {
        for (const auto& z : c.centers)
            if (z.label == center) return S_W(c.pair(x), z);
        throw DomainError(c.id + " has no center " + center);
    };
}

// ---------------------------------------------------------------------------
// Closed forms.

namespace forms {

inline Rat A(const Point& x) { return x[0]; }
inline Rat B(const Point& x) { return x[1]; }
inline Rat C(const Point& x) { return x.size() > 2 ? x[2] : Rat(0); }

// E1: blow-up of the quadric threefold at a point, D2 ray.
inline Rat e1_int_eps(const Point& x) {
    Rat a = A(x), b = B(x), u = 4 - a, h = a / 2 - 2, w = b - 3;
    return pow(u, 3) * (a / 2 - b + 1) + 3 * pow(u, 2) * pow(h, 2) - 3 * pow(u, 2) * pow(w, 2) + 4 * u * pow(h, 3) -
           4 * u * pow(w, 3) + q(3, 2) * pow(h, 4) - q(3, 2) * pow(w, 4);
}
inline Rat e1_bound_expanded(const Point& x) {
    Rat a = A(x), b = B(x), u = 4 - a, g = 2 - a / 2, w = 3 - b, o = 1 - b;
    return o * pow(u, 3) - 6 * o * pow(u, 2) * w + 12 * o * u * pow(w, 2) - 6 * o * pow(w, 3) -
           pow(u, 3) * (a / 2 - b + 1) - 3 * pow(u, 2) * pow(g, 2) - 3 * pow(u, 2) * pow(w, 2) + 4 * u * pow(g, 3) -
           4 * u * pow(w, 3) - q(3, 2) * pow(g, 4) + q(3, 2) * pow(w, 4);
}
inline Rat e1_bound_simplified(const Point& x) {
    Rat a = A(x), b = B(x), u = 4 - a, g = 2 - a / 2, w = 3 - b, o = 1 - b;
    return u * w * o * (9 * a - 12 * b) - 6 * pow(u, 2) * w + pow(w, 3) * (q(-35, 2) + q(9, 2) * b + 4 * a) -
           (22 + q(5, 2) * a) * pow(g, 3) / 2;
}

// D2: P(O + O(1) + O(n)) over P^1 with boundary H, H - nF; c = 3 - a - b.
inline Rat d2_beta1(const Point& x, long n) {
    Rat a = A(x), b = B(x), c = 3 - a - b;
    return pow(c, 3) * (n + 1) * (1 - 3 * a + b) / 4 + pow(c, 2) * (1 - n + b * n) * (b - 2 * a);
}
inline Rat d2_beta2(const Point& x, long n) {
    Rat a = A(x), b = B(x), c = 3 - a - b;
    return (1 - 2 * Rat(n)) * pow(c, 3) * (1 - 3 * b + a) / 4 + pow(c, 2) * (1 + 2 * Rat(n) - a * n) * (a - 2 * b);
}
inline Rat d2_betaE(const Point& x, long n) {
    Rat a = A(x), b = B(x), c = 3 - a - b;
    return pow(c, 3) * (n - 2) * (1 + a + b) / 4 + pow(c, 2) * (4 - a - n + b * (n - 1)) * (a + b);
}
inline Rat d2_endpoint(const Point& x, long n) {
    Rat c = 3 - A(x) - B(x);
    return Rat(n - 1) * pow(c, 4) / 4;
}

// D4: P(O + O + O(n)), boundary H + F, H - nF.
inline Rat d4_beta2(const Point& x, long n) {
    Rat a = A(x), b = B(x), c = 3 - a - b, N(n);
    return pow(c, 2) *
           (-a * a * N - 2 * a * a + 2 * a * b * N + 4 * a * b + 2 * a * N + 4 * a - 3 * b * b * N + 2 * b * N - 8 * b - 3 * N) / 2;
}

// D5: P^1 x P^2, boundary H + F, H.
inline Rat d5_beta1(const Point& x) {
    Rat a = A(x), b = B(x);
    return (a - 2) * (9 * pow(a, 3) + 8 * (2 * b - 5) + 2 * a * a * (8 * b - 29) + 2 * a * (53 - 26 * b + 3 * b * b)) / 4;
}
inline Rat d5_beta2(const Point& x) {
    Rat a = A(x), b = B(x), c = 3 - a - b;
    return pow(c, 2) * (2 - a) * (a - 2 * b);
}
inline Rat d5_betaF(const Point& x) {
    Rat a = A(x), b = B(x), c = 3 - a - b;
    return 3 * a * pow(c, 2) * (2 - a) / 2;
}

// D8: P(O + O(k) + O(n)), boundary H - kF, H - nF, F.
inline Rat d8_product_beta1(const Point& x) {
    Rat a = A(x), b = B(x), c = C(x);
    return (b - 2 * a) * pow(a + b - 3, 2) * (c - 2);
}
inline Rat d8_product_beta1_factored(const Point& x) {
    Rat a = A(x), b = B(x), c = C(x);
    return pow(a + b - 3, 2) * (2 - c) * (b - 2 * a);
}
inline Rat d8_beta1(const Point& x, long k, long n) {
    Rat a = A(x), b = B(x), c3 = C(x), c = 3 - a - b;
    return pow(c, 3) * Rat(n - 2 * k) * (1 - 3 * a + b) / 4 + pow(c, 2) * (2 + (2 - b) * k - n * (1 - b) - c3) * (b - 2 * a);
}
inline Rat d8_beta2(const Point& x, long k, long n) {
    Rat a = A(x), b = B(x), c3 = C(x), c = 3 - a - b;
    return pow(c, 2) * (c * Rat(k - 2 * n) * (1 + a - 3 * b) + 4 * (2 - (1 - a) * k + n * (2 - a) - c3) * (a - 2 * b)) / 4;
}

// Q1: quadric bundle in P(O+O+O+O(m)), boundary E = H - mF, F.
inline Rat q1_beta1(const Point& x, long m) {
    Rat a = A(x), b = B(x);
    return pow(2 - a, 2) * (2 - 4 * a - 2 * b + 4 * a * b - 3 * a * a * m);
}
inline Rat q1_betaH(const Point& x, long m) {
    Rat a = A(x), b = B(x);
    return pow(2 - a, 2) * (4 - 4 * b + 4 * m + 3 * a * a * m + a * (4 - 4 * b + 4 * m)) / 2;
}
inline Rat q1_beta2(const Point& x, long m) {
    Rat a = A(x), b = B(x);
    return -pow(2 - a, 2) * (-6 + 12 * b - 6 * b * b + (4 + 4 * a + 3 * a * a) * m * m) / 2;
}
inline Rat q1_s1(const Point& x, long m) {
    Rat a = A(x), b = B(x);
    return pow(2 - a, 3) * (2 - 2 * b + (2 + a) * m);
}
inline Rat q1_l3(const Point& x, long m) {
    Rat a = A(x), b = B(x);
    return -4 * Rat(m) * pow(2 - a, 3) + 6 * pow(2 - a, 2) * (2 * m + 1 - b);
}

// C2: P(O + O(k)) over P^2 with boundary H - kF, F, F; T = 3 - b - c.
inline Rat c2_k_beta1(const Point& x, long k) {
    Rat a = A(x), T = 3 - B(x) - C(x), K(k), p = K + T, r = a * K - K + T;
    return (1 - a) * pow(p, 3) - (1 - a) * pow(r, 3) - pow(p, 3) * (2 - a) + pow(p, 4) / (4 * K) - pow(r, 4) / (4 * K);
}
inline Rat c2_s1(const Point& x, long k) {
    Rat a = A(x), T = 3 - B(x) - C(x), K(k), p = K + T, r = a * K - K + T;
    return pow(p, 3) * (2 - a) / K - pow(p, 4) / (4 * K * K) + pow(r, 4) / (4 * K * K);
}

// C3 with k = -1: the exceptional-type divisor E.
inline Rat c3_poly(const Point& x) {
    Rat a = A(x), b = B(x);
    return 19 * pow(a, 3) + 8 * (-43 + 13 * b) + 2 * a * a * (-87 + 16 * b) + 2 * a * (234 - 70 * b + 3 * b * b);
}
inline Rat c3_betaE_quarter(const Point& x) { return (2 - A(x)) * c3_poly(x) / 4; }
inline Rat c3_betaE_whole(const Point& x) { return (2 - A(x)) * c3_poly(x); }
inline Rat c3_betaE_exact(const Point& x) {
    Rat a = A(x), b = B(x);
    return (2 - a) * (3 * pow(a, 3) + 8 * a * a * b - 30 * a * a + 6 * a * b * b - 44 * a * b + 84 * a + 8 * b - 24) / 4;
}

// C5: P(O + O(k s + (k n + m) f)) over F_n, boundary H1, Fs, Ff.
struct C5 {
    long k, n, m;
    Rat K(const Point&) const { return Rat(n * k * k + 2 * k * m); }
    Rat G(const Point& x) const { return Rat(2 + n + k * n + m) - C(x); }
    Rat Q(const Point& x) const { return Rat(2 + k) - B(x); }
    Rat l3(const Point& x) const {
        Rat t = 2 - A(x);
        return pow(t, 3) * K(x) + 6 * t * Q(x) * G(x) - 3 * Rat(n) * pow(Q(x), 2) * t - 3 * Rat(k) * pow(t, 2) * G(x) -
               3 * Rat(m) * pow(t, 2) * Q(x);
    }
    Rat s1(const Point& x) const {
        Rat s = A(x) - 2;
        return pow(s, 4) * K(x) / 4 + 3 * pow(s, 2) * Q(x) * G(x) - Rat(3 * n) * pow(s, 2) * pow(Q(x), 2) / 2 +
               Rat(k) * pow(s, 3) * G(x) + Rat(m) * pow(s, 3) * Q(x);
    }
    Rat beta1(const Point& x) const {
        Rat t = 2 - A(x);
        return (1 - A(x)) * l3(x) - pow(t, 4) * K(x) / 4 - 3 * pow(t, 2) * Q(x) * G(x) +
               Rat(3 * n) * pow(t, 2) * pow(Q(x), 2) / 2 + Rat(k) * pow(t, 3) * G(x) + Rat(m) * pow(t, 3) * Q(x);
    }
};

// C9: the flag threefold P(T_P2).
inline Rat c9_beta1(const Point& x) {
    Rat a = A(x), b = B(x);
    return 3 * (1 - a) * (2 - a) * (2 - b) * (4 - a - b) - pow(2 - a, 3) * (2 - b) - 3 * pow(2 - a, 2) * pow(2 - b, 2) / 2;
}
inline Rat c9_l3(const Point& x) {
    Rat a = A(x), b = B(x);
    return 3 * pow(2 - a, 2) * (2 - b) + 3 * (2 - a) * pow(2 - b, 2);
}

// C10: divisor of type (1,1,1) in F_1 x P^2, D2 = E.
inline Rat c10_s1(const Point& x) {
    Rat a = A(x), b = B(x);
    return (2 - a) * (17 - pow(a, 3) - 3 * a * a * (1 - b) - 21 * b + 3 * b * b + pow(b, 3) + 3 * a * (5 - b * b));
}
inline Rat c10_s2(const Point& x) { return 2 * pow(2 - A(x), 3); }
inline Rat c10_beta2(const Point& x) {
    Rat a = A(x), b = B(x);
    return (2 - a) * (-a * a * (2 - a) - 2 * (2 - b) * pow(1 + b, 2) - a * (7 - 6 * b + 3 * b * b));
}

// E2: blow-up of P(O + O + O(n)) at a point, D2 = (H - nF)~.
inline Rat e2_l3(const Point& x, long n) {
    Rat a = A(x), b = B(x), N(n);
    return pow(3 - b, 3) * N + 3 * pow(3 - b, 2) * (2 - N * (1 - b) - a) - pow(2 - a, 3);
}
inline Rat e2_s1(const Point& x, long n) {
    Rat a = A(x), b = B(x), N(n);
    return (1 + a - b) *
           (60 + b * b * (4 - 7 * N) + a * a * (6 + b * (N - 2) - 5 * N) + 11 * N + pow(a, 3) * N + pow(b, 3) * N +
            a * (-42 + b * (20 - 6 * N) + b * b * (N - 2) + 5 * N) + b * (-32 + 11 * N)) /
           2;
}
inline Rat e2_s2(const Point& x, long n) {
    Rat a = A(x), N(n);
    return pow(2 - a, 3) * (a * (N - 1) + 2 * (1 + N)) / 2;
}
inline Rat e2_beta2(const Point& x, long n) {
    Rat a = A(x), b = B(x), N(n);
    return (16 + 4 * pow(a, 3) - pow(a, 4) - 4 * a * (4 - b) * pow(1 - b, 2) - 36 * b * (2 - N) - 27 * N -
            3 * pow(b, 4) * N + 4 * pow(b, 3) * (5 * N - 2) - 6 * b * b * (7 * N - 8)) /
           2;
}

// P^3 and the quadric.
inline Rat f1_beta(const Point& x, std::size_t i) {
    Rat L = 4 - x[0] - x[1] - x[2], s(0);
    for (std::size_t j = 0; j < 3; ++j) s += j == i ? -3 * x[j] : x[j];
    return pow(L, 3) * s / 4;
}
inline Rat f2_beta(const Point& x, std::size_t i) {
    Rat L = 4 - x[0] - x[1];
    return pow(L, 3) * (i == 0 ? -3 * x[0] + x[1] : x[0] - 3 * x[1]) / 4;
}
inline Rat f3_beta1(const Point& x) {
    Rat a = A(x), b = B(x);
    return pow(4 - 2 * a - b, 3) * (q(1, 2) - q(3, 4) * a + b / 8);
}
inline Rat f3_beta2(const Point& x) {
    Rat a = A(x), b = B(x);
    return pow(4 - 2 * a - b, 3) * (a / 2 - q(3, 4) * b);
}
inline Rat f4_beta1(const Point& x) {
    Rat a = A(x), b = B(x);
    return pow(3 - a - b, 3) * (1 + b - 3 * a) / 2;
}
inline Rat f4_beta2(const Point& x) {
    Rat a = A(x), b = B(x);
    return pow(3 - a - b, 3) * (1 + a - 3 * b) / 2;
}

// S(W^Y; Z) displays.
inline Rat f3_sw(const Point& x) { return (2 - A(x) - B(x) / 2) / 2; }
inline Rat f4_sw(const Point& x) { return (3 - A(x) - B(x)) / 4; }
inline Rat q1_sw(const Point& x) { return pow(3 - B(x), 4) / 288; }
inline Rat q1_sw_corrected(const Point& x) {
    Rat c = 3 - B(x), t = 2 - A(x);
    return (3 * c * c - 4 * c * t + q(3, 2) * t * t) / (6 * c - 4 * t);
}
inline Rat d5_sw_z(const Point& x) {
    Rat a = A(x), b = B(x), c = 3 - a - b;
    return pow(2 - a, 2) * (34 + 3 * a * a - 28 * b + 6 * b * b + 4 * a * (-5 + 2 * b)) / (12 * c * c * (2 - a));
}
inline Rat d5_sw_zprime_spurious(const Point& x) {
    Rat a = A(x), b = B(x), c = 3 - a - b;
    return pow(b - 1, 4) / 48 / (c * c * (2 - a));
}
inline Rat d5_sw_zprime(const Point& x) {
    Rat a = A(x), b = B(x), c = 3 - a - b;
    Rat body = (a - 2) *
               (5 * pow(a, 3) + 2 * a * a * (-23 + 8 * b) + 2 * a * (71 + b * (-50 + 9 * b)) +
                4 * (-37 + b * (40 + b * (-15 + 2 * b)))) /
               12;
    return (pow(b - 1, 4) / 48 + body) / (c * c * (2 - a));
}
inline Rat c9_sw_spurious(const Point& x) {
    Rat a = A(x), b = B(x);
    return pow(b - 2, 4) / 12 / (pow(2 - a, 2) * (2 - b) + (2 - a) * pow(2 - b, 2));
}
inline Rat c9_sw(const Point& x) {
    Rat a = A(x), b = B(x);
    Rat den = pow(2 - a, 2) * (2 - b) + (2 - a) * pow(2 - b, 2);
    return ((a - 2) * (3 * a + 2 * (b - 5)) * pow(b - 2, 2) / 6 + pow(b - 2, 4) / 12) / den;
}

}  // namespace forms

// ---------------------------------------------------------------------------
// Sampling helpers.

/** @brief Log Fano grid points with every coefficient strictly positive. */
inline std::vector<Point> interior_grid(const CatalogCase& c, const Rat& step) {
    std::vector<Point> pts{{}};
    auto vals = grid_values(step);
    for (std::size_t d = 0; d < c.dim(); ++d) {
        std::vector<Point> next;
        for (const auto& pre : pts)
            for (const auto& v : vals) {
                if (v.sign() == 0) continue;
                auto p = pre;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        pts = std::move(next);
    }
    // Ampleness of -K - D is the conjunction of the affine Mori-curve constraints.
    const auto cons = c.ample_constraints();
    std::vector<Point> out;
    for (auto& p : pts)
        if (std::all_of(cons.begin(), cons.end(), [&](const AffineForm& f) { return f(p).sign() > 0; }))
            out.push_back(std::move(p));
    return out;
}

/** @brief At most `count` evenly spread elements. */
inline std::vector<Point> spread(const std::vector<Point>& pts, std::size_t count) {
    if (pts.size() <= count) return pts;
    std::vector<Point> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(pts[i * pts.size() / count]);
    return out;
}

/** @brief Sample points where two forms are compared (no identity box). */
inline Check sampled(const std::string& name, const std::vector<Point>& pts, const Form& lhs, const Form& rhs) {
    if (pts.empty()) return {name, false, "no sample points"};
    for (const auto& x : pts) {
        try {
            Rat l = lhs(x), r = rhs(x);
            if (l != r) return {name, false, "at " + show(x) + ": exact " + l.str() + ", closed form " + r.str()};
        } catch (const std::exception& e) {
            return {name, false, "at " + show(x) + ": " + e.what()};
        }
    }
    return {name, true, std::to_string(pts.size()) + " points agree"};
}

// ---------------------------------------------------------------------------
// Criterion 1: closed-form identities.

inline CriterionResult criterion_identities(const Options& opt) {
    CriterionResult R{1, "exact closed-form identity suite", {}, 0.0};
    auto& out = R.checks;
    auto get = [&](const std::string& id, std::map<std::string, long> p = {}) { return opt.provider(id, p); };
    const Rat h(1, 50), hs(1, 64);

    {
        auto c = get("E1");
        Point base{q(1, 10), q(1, 10)};
        auto bound = [c](const Point& x) {
            return (1 - x[1]) * l_cubed_of(c)(x) - partial_integral_of(c, "D2", true)(x);
        };
        out.push_back(identity("E1 integral of vol(L - xD2) over [0, eps]", c, base, h, partial_integral_of(c, "D2", true),
                               forms::e1_int_eps));
        out.push_back(identity("E1 beta'(D2) bound, expanded form", c, base, h, bound, forms::e1_bound_expanded));
        out.push_back(identity("E1 beta'(D2) bound, simplified form", c, base, h, bound, forms::e1_bound_simplified));
        out.push_back(holds("E1 beta'(D2) does not exceed the bound", c, node_box(base, h),
                            [&](const Point& x) { return beta_of(c, "D2")(x) <= bound(x); }));
        out.push_back(holds("E1 frozen values beta'(D1) = -12, beta'(D2) = 15/2 at a = b = 0", c, {{q(0), q(0)}},
                            [&](const Point& x) { return beta_of(c, "D1")(x) == Rat(-12) && beta_of(c, "D2")(x) == q(15, 2); }));
    }
    for (long n : {1L, 2L, 3L}) {
        auto c = get("D2", {{"n", n}});
        Point base{q(1, 10), n == 1 ? q(1, 10) : (n == 2 ? q(11, 20) : q(7, 10))};
        std::string tag = "D2 n=" + std::to_string(n) + " ";
        out.push_back(identity(tag + "beta'(D1)", c, base, hs, beta_of(c, "D1"), [n](const Point& x) { return forms::d2_beta1(x, n); }));
        out.push_back(identity(tag + "beta'(D2)", c, base, hs, beta_of(c, "D2"), [n](const Point& x) { return forms::d2_beta2(x, n); }));
        out.push_back(identity(tag + "beta'(E)", c, base, hs, beta_of(c, "E"), [n](const Point& x) { return forms::d2_betaE(x, n); }));
        out.push_back(identity(
            tag + "beta'(D1) + beta'(D2) + beta'(E) = 0", c, base, hs,
            [c](const Point& x) { return beta_of(c, "D1")(x) + beta_of(c, "D2")(x) + beta_of(c, "E")(x); },
            [](const Point&) { return Rat(0); }));
        out.push_back(identity(
            tag + "S'(D2) - S'(E) = (n-1)(3-a-b)^4/4", c, base, hs,
            [c](const Point& x) { return s_prime_of(c, "D2")(x) - s_prime_of(c, "E")(x); },
            [n](const Point& x) { return forms::d2_endpoint(x, n); }));
    }
    for (long n : {1L, 2L, 3L}) {
        auto c = get("D4", {{"n", n}});
        Point base{q(1, 10), n == 1 ? q(1, 10) : (n == 2 ? q(3, 10) : q(1, 2))};
        out.push_back(identity("D4 n=" + std::to_string(n) + " beta'(D2)", c, base, hs, beta_of(c, "D2"),
                               [n](const Point& x) { return forms::d4_beta2(x, n); }));
    }
    {
        auto c = get("D5");
        Point base{q(1, 10), q(1, 10)};
        out.push_back(identity("D5 beta'(D1)", c, base, h, beta_of(c, "D1"), forms::d5_beta1));
        out.push_back(identity("D5 beta'(D2) = (3-a-b)^2 (2-a)(a-2b)", c, base, h, beta_of(c, "D2"), forms::d5_beta2));
        out.push_back(identity("D5 beta'(F)", c, base, h, beta_of(c, "F"), forms::d5_betaF));
        // Blow-up of the (-1)-curve of Y' = D1: P^1 x F_1 with exceptional divisor Fs and A = 2 - a.
        Threefold Xp = families::p1_bundle_over_fn(0, 1, 0, true);
        out.push_back(identity(
            "D5 blow-up of Z': beta'(E) = -beta'(D2)", c, base, h,
            [Xp](const Point& x) {
                Rat a = x[0], b = x[1], t = 3 - a - b;
                NumericalClass L = NumericalClass(Vec{2 - a, t, t}), E = NumericalClass(Vec{Rat(0), Rat(1), Rat(0)});
                // The pulled-back L is only nef, so integrate pointwise volumes between the thresholds.
                std::vector<Rat> br{Rat(0), nef_threshold(Xp, L, E), pseff_threshold(Xp, L, E)};
                br.erase(std::unique(br.begin(), br.end()), br.end());
                auto vol = [&](const Rat& u) { return volume(Xp, L - u * E); };
                return (2 - a) * cube(Xp, L) - integrate_piecewise_cubic<Rat>(vol, br);
            },
            [c](const Point& x) { return -beta_of(c, "D2")(x); }));
    }
    {
        auto c = get("D8", {{"k", 0}, {"n", 0}});
        Point base{q(1, 10), q(1, 10), q(1, 10)};
        out.push_back(identity("D8 k=n=0 beta'(D1) = (a+b-3)^2(2-c)(b-2a)", c, base, h, beta_of(c, "D1"),
                               forms::d8_product_beta1_factored));
        out.push_back(identity("D8 k=n=0 beta'(D1) = (b-2a)(a+b-3)^2(c-2)", c, base, h, beta_of(c, "D1"),
                               forms::d8_product_beta1));
        std::vector<Point> c_line;
        for (long i = 1; i < 20; ++i) c_line.push_back({q(0), q(0), q(i, 20)});
        out.push_back(holds("D8 k=n=0 beta'(D3) = -27c/2 at a = b = 0", c, c_line,
                            [&](const Point& x) { return beta_of(c, "D3")(x) == -27 * x[2] / 2; }));
        out.push_back(holds("D8 k=n=0 beta'(D3) = -27c(2-c)/2 at a = b = 0", c, c_line,
                            [&](const Point& x) { return beta_of(c, "D3")(x) == -27 * x[2] * (2 - x[2]) / 2; }));
        // Reduction: the divisorial verdict agrees with the product rule on the grid.
        std::size_t n = 0;
        std::string bad;
        for (const auto& x : interior_grid(c, q(1, 10))) {
            ++n;
            std::vector<Verdict> vs;
            for (const auto& f : c.factors(x)) vs.push_back(factor_verdict(f));
            bool prod_unstable = product_rule(vs) == Verdict::unstable;
            bool div_unstable = divisorial_verdict(c.pair(x), c.tests).overall == DivisorialStatus::divisorially_unstable;
            if (prod_unstable != div_unstable && bad.empty()) bad = show(x);
        }
        out.push_back({"D8 k=n=0 reduces to the product rule", bad.empty() && n > 0,
                       bad.empty() ? std::to_string(n) + " grid points agree" : "disagreement at " + bad});
        for (auto [k, nn] : std::vector<std::pair<long, long>>{{0, 1}, {1, 1}, {1, 2}}) {
            auto d = get("D8", {{"k", k}, {"n", nn}});
            Point b3{q(1, 2), q(1, 2), q(1, 20)};
            std::string tag = "D8 k=" + std::to_string(k) + " n=" + std::to_string(nn) + " ";
            out.push_back(identity(tag + "beta'(D1)", d, b3, hs, beta_of(d, "D1"),
                                   [k, nn](const Point& x) { return forms::d8_beta1(x, k, nn); }, 5));
            out.push_back(identity(tag + "beta'(D2)", d, b3, hs, beta_of(d, "D2"),
                                   [k, nn](const Point& x) { return forms::d8_beta2(x, k, nn); }, 5));
        }
    }
    for (long m : {1L, 2L, 3L}) {
        auto c = get("Q1", {{"m", m}});
        Point base{q(1, 10), q(1, 10)};
        std::string tag = "Q1 m=" + std::to_string(m) + " ";
        out.push_back(identity(tag + "beta'(D1) = (2-a)^2(2-4a-2b+4ab-3a^2 m)", c, base, hs, beta_of(c, "D1"),
                               [m](const Point& x) { return forms::q1_beta1(x, m); }));
        out.push_back(identity(tag + "beta'(H)", c, base, hs, beta_of(c, "H"), [m](const Point& x) { return forms::q1_betaH(x, m); }));
        out.push_back(identity(tag + "beta'(D2)", c, base, hs, beta_of(c, "D2"), [m](const Point& x) { return forms::q1_beta2(x, m); }));
        out.push_back(identity(tag + "S'(D1)", c, base, hs, s_prime_of(c, "D1"), [m](const Point& x) { return forms::q1_s1(x, m); }));
        out.push_back(identity(tag + "L^3", c, base, hs, l_cubed_of(c), [m](const Point& x) { return forms::q1_l3(x, m); }));
    }
    for (long k : {1L, 2L, 3L}) {
        auto c = get("C2", {{"k", k}});
        Point base{k == 1 ? q(1, 10) : q(4, 5), q(1, 20), q(1, 20)};
        std::string tag = "C2 k=" + std::to_string(k) + " ";
        out.push_back(identity(tag + "k beta'(D1)", c, base, hs, [c, k](const Point& x) { return Rat(k) * beta_of(c, "D1")(x); },
                               [k](const Point& x) { return forms::c2_k_beta1(x, k); }, 5));
        out.push_back(identity(tag + "S'(D1)", c, base, hs, s_prime_of(c, "D1"), [k](const Point& x) { return forms::c2_s1(x, k); }, 5));
    }
    {
        auto c = get("C3", {{"k", -1}});
        Point base{q(1, 10), q(1, 10)};
        auto quarter = identity("C3 k=-1 beta'(E), (2-a)P/4 display", c, base, h, beta_of(c, "xi"), forms::c3_betaE_quarter);
        auto whole = identity("C3 k=-1 beta'(E), (2-a)P display", c, base, h, beta_of(c, "xi"), forms::c3_betaE_whole);
        Check merged{"C3 k=-1 beta'(E)", quarter.ok || whole.ok,
                     (quarter.ok ? "the (2-a)P/4 display holds; " : "the (2-a)P/4 display fails: " + quarter.detail + "; ") +
                         (whole.ok ? "the (2-a)P display holds" : "the (2-a)P display fails: " + whole.detail)};
        out.push_back(merged);
        out.push_back(identity("C3 k=-1 beta'(E) exact form (2-a)(3a^3+8a^2b-30a^2+6ab^2-44ab+84a+8b-24)/4", c, base, h,
                               beta_of(c, "xi"), forms::c3_betaE_exact));
    }
    for (auto [k, n, m] : std::vector<std::tuple<long, long, long>>{{0, 0, 0}, {1, 0, 0}, {0, 1, 1}, {1, 1, 1}, {2, 1, 0}}) {
        auto c = get("C5", {{"k", k}, {"n", n}, {"m", m}});
        forms::C5 f{k, n, m};
        Point base{q(1, 2), q(1, 10), q(1, 20)};
        std::string tag = "C5 k=" + std::to_string(k) + " n=" + std::to_string(n) + " m=" + std::to_string(m) + " ";
        out.push_back(identity(tag + "L^3", c, base, hs, l_cubed_of(c), [f](const Point& x) { return f.l3(x); }, 5));
        out.push_back(identity(tag + "S'(D1)", c, base, hs, s_prime_of(c, "D1"), [f](const Point& x) { return f.s1(x); }, 5));
        out.push_back(identity(tag + "beta'(D1)", c, base, hs, beta_of(c, "D1"), [f](const Point& x) { return f.beta1(x); }, 5));
    }
    {
        auto c = get("C9");
        Point base{q(1, 10), q(1, 10)};
        out.push_back(identity("C9 beta'(D1)", c, base, h, beta_of(c, "D1"), forms::c9_beta1));
        out.push_back(identity("C9 L^3 = 3(2-a)^2(2-b) + 3(2-a)(2-b)^2", c, base, h, l_cubed_of(c), forms::c9_l3));
    }
    {
        auto c = get("C10");
        Point base{q(1, 10), q(1, 10)};
        out.push_back(identity("C10 S1 = integral over [0, eps] for D2", c, base, h, partial_integral_of(c, "D2", true), forms::c10_s1));
        out.push_back(identity("C10 S2 = integral over [eps, tau] for D2", c, base, h, partial_integral_of(c, "D2", false), forms::c10_s2));
        out.push_back(identity("C10 beta'(D2)", c, base, h, beta_of(c, "D2"), forms::c10_beta2));
    }
    for (long n : {1L, 2L, 3L}) {
        auto c = get("E2", {{"n", n}});
        Point base{q(1, 10), n == 1 ? q(1, 10) : (n == 2 ? q(3, 10) : q(1, 2))};
        std::string tag = "E2 n=" + std::to_string(n) + " ";
        out.push_back(identity(tag + "L^3", c, base, hs, l_cubed_of(c), [n](const Point& x) { return forms::e2_l3(x, n); }));
        out.push_back(identity(tag + "S1 = integral over [0, eps] for D2", c, base, hs, partial_integral_of(c, "D2", true),
                               [n](const Point& x) { return forms::e2_s1(x, n); }));
        out.push_back(identity(tag + "S2 = integral over [eps, tau] for D2", c, base, hs, partial_integral_of(c, "D2", false),
                               [n](const Point& x) { return forms::e2_s2(x, n); }));
        out.push_back(identity(tag + "beta'(D2)", c, base, hs, beta_of(c, "D2"), [n](const Point& x) { return forms::e2_beta2(x, n); }));
    }
    {
        auto c = get("F1");
        Point base{q(1, 10), q(1, 10), q(1, 10)};
        for (std::size_t i = 0; i < 3; ++i)
            out.push_back(identity("F1 beta'(D" + std::to_string(i + 1) + ")", c, base, h, beta_of(c, "D" + std::to_string(i + 1)),
                                   [i](const Point& x) { return forms::f1_beta(x, i); }, 5));
        auto d = get("F2");
        for (std::size_t i = 0; i < 2; ++i)
            out.push_back(identity("F2 beta'(D" + std::to_string(i + 1) + ")", d, {q(1, 10), q(1, 10)}, h,
                                   beta_of(d, "D" + std::to_string(i + 1)), [i](const Point& x) { return forms::f2_beta(x, i); }));
        auto e = get("F3");
        out.push_back(identity("F3 beta'(D1)", e, {q(1, 10), q(1, 10)}, h, beta_of(e, "D1"), forms::f3_beta1));
        out.push_back(identity("F3 beta'(D2)", e, {q(1, 10), q(1, 10)}, h, beta_of(e, "D2"), forms::f3_beta2));
        auto f = get("F4");
        out.push_back(identity("F4 beta'(D1) = (3-a-b)^3(1+b-3a)/2", f, {q(1, 10), q(1, 10)}, h, beta_of(f, "D1"), forms::f4_beta1));
        out.push_back(identity("F4 beta'(D2)", f, {q(1, 10), q(1, 10)}, h, beta_of(f, "D2"), forms::f4_beta2));
    }
    return R;
}

// ---------------------------------------------------------------------------
// Criterion 2: Abban-Zhuang fixtures and delta bounds.

/** @brief Points of the closed-form region whose grid neighbours also lie in it. */
inline std::vector<Point> region_interior(const CatalogCase& c, const Rat& step) {
    auto reg = regions::by_name(c.known_region);
    std::vector<Point> out;
    for (const auto& x : interior_grid(c, step)) {
        bool in = reg(x[0], x[1]);
        for (int da = -1; da <= 1 && in; ++da)
            for (int db = -1; db <= 1 && in; ++db) {
                Rat a = x[0] + step * Rat(da), b = x[1] + step * Rat(db);
                Point y{a, b};
                if (a.sign() <= 0 || b.sign() < 0 || !is_log_fano(c.pair(y)) || !reg(a, b)) in = false;
            }
        if (in) out.push_back(x);
    }
    return out;
}

inline CriterionResult criterion_az(const Options& opt) {
    CriterionResult R{2, "Abban-Zhuang fixtures and delta_Z bounds", {}, 0.0};
    auto& out = R.checks;
    auto get = [&](const std::string& id, std::map<std::string, long> p = {}) { return opt.provider(id, p); };
    auto region_points = [&](const CatalogCase& c, std::size_t count) {
        auto reg = regions::by_name(c.known_region);
        std::vector<Point> in;
        for (const auto& x : interior_grid(c, q(1, 20)))
            if (reg(x[0], x[1])) in.push_back(x);
        return spread(in, count);
    };
    auto body_points = [&](const CatalogCase& c, std::size_t count) { return spread(interior_grid(c, q(1, 10)), count); };

    {
        auto c = get("F3");
        out.push_back(identity("F3 S(W;Z) = (2-a-b/2)/2", c, {q(1, 10), q(1, 10)}, q(1, 50), s_w_of(c, "Z"), forms::f3_sw));
    }
    {
        auto c = get("F4");
        out.push_back(identity("F4 S(W;Z) = (3-a-b)/4", c, {q(1, 10), q(1, 10)}, q(1, 50), s_w_of(c, "Z"), forms::f4_sw));
    }
    {
        auto c = get("Q1", {{"m", 1}});
        auto pts = body_points(c, 12);
        out.push_back(sampled("Q1 m=1 S(W;Z) = (3-b)^4/288", pts, s_w_of(c, "Z"), forms::q1_sw));
        out.push_back(sampled("Q1 m=1 S(W;Z) diagnostic: corrected value on the pseudo-effective range", pts, s_w_of(c, "Z"),
                              forms::q1_sw_corrected));
    }
    {
        auto c = get("D5");
        auto pts = region_points(c, 12);
        out.push_back(sampled("D5 S(W;Z) display", pts, s_w_of(c, "Z"), forms::d5_sw_z));
        out.push_back(sampled("D5 S(W;Z') display", pts, s_w_of(c, "Z'"), forms::d5_sw_zprime));
        out.push_back(sampled("D5 S(W;Z') diagnostic: display without the term past tau", pts, s_w_of(c, "Z'"),
                              [](const Point& x) { return forms::d5_sw_zprime(x) - forms::d5_sw_zprime_spurious(x); }));
    }
    {
        auto c = get("C9");
        auto pts = region_points(c, 12);
        out.push_back(sampled("C9 S(W;Z) display", pts, s_w_of(c, "Z"), forms::c9_sw));
        out.push_back(sampled("C9 S(W;Z) diagnostic: display without the term past tau", pts, s_w_of(c, "Z"),
                              [](const Point& x) { return forms::c9_sw(x) - forms::c9_sw_spurious(x); }));
    }
    for (std::string id : {"F3", "F4", "D5", "Q1", "C9"}) {
        auto c = get(id, id == "Q1" ? std::map<std::string, long>{{"m", 1}} : std::map<std::string, long>{});
        auto pts = region_interior(c, q(1, 50));
        std::size_t checked = 0;
        std::string bad;
        for (const auto& x : pts) {
            LogPair p = c.pair(x);
            for (const auto& z : c.centers) {
                ++checked;
                Rat d = delta_Z_bound(p, z).bound;
                if (d <= Rat(1) && bad.empty()) bad = z.label + " at " + show(x) + ": bound " + d.str();
            }
        }
        out.push_back({id + " delta_Z bounds > 1 on the region interior (step 1/50)", bad.empty() && checked > 0,
                       bad.empty() ? std::to_string(checked) + " (point, center) pairs" : "bound <= 1 for " + bad});
    }
    return R;
}

// ---------------------------------------------------------------------------
// Criterion 3: region reproduction.

inline CriterionResult criterion_regions(const Options& opt) {
    CriterionResult R{3, "region reproduction at step 1/100", {}, 0.0};
    for (std::string id : {"F3", "F4", "D5", "Q1", "C9"}) {
        auto c = opt.provider(id, id == "Q1" ? std::map<std::string, long>{{"m", 1}} : std::map<std::string, long>{});
        auto t0 = std::chrono::steady_clock::now();
        auto s = scan(c, q(1, 100), opt.threads);
        auto d = compare_region(s, regions::by_name(id));
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream os;
        os << d.points.size() << " discrepancies of " << d.compared << " log Fano points, " << std::fixed
           << std::setprecision(1) << sec << " s";
        if (!d.empty()) os << "; first at " << show(d.points.front().coeffs) << " (" << to_string(d.points.front().status) << ")";
        R.checks.push_back({id + " region", d.empty() && sec < 60.0, os.str()});
        if (id == "D5") {
            // Diagnostic: the same scan with the Z flag alone.
            auto z = c;
            z.centers.resize(1);
            auto dz = compare_region(scan(z, q(1, 100), opt.threads), regions::d5);
            R.checks.push_back({"D5 region diagnostic: Z flag alone", dz.empty(),
                                std::to_string(dz.points.size()) + " discrepancies of " + std::to_string(dz.compared)});
        }
    }
    return R;
}

// ---------------------------------------------------------------------------
// Criterion 4: instability sweeps.

/** @brief Parameter combinations of a family with every parameter <= cap. */
inline std::vector<std::map<std::string, long>> parameter_grid(const std::string& id, long cap) {
    std::vector<std::map<std::string, long>> out{{}};
    for (const auto& p : row_info(id).params) {
        std::vector<std::map<std::string, long>> next;
        for (const auto& pre : out)
            for (long v = p.min; v <= cap; ++v) {
                auto m = pre;
                m[p.name] = v;
                next.push_back(std::move(m));
            }
        out = std::move(next);
    }
    return out;
}

inline std::string show_params(const std::map<std::string, long>& p) {
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
    return s.empty() ? "-" : s;
}

/** @brief Families whose whole ample body is divisorially unstable. */
inline const std::vector<std::string>& unstable_families() {
    static const std::vector<std::string> ids = {"E1", "C2", "C3", "C4", "C5", "C6", "C10", "D1", "D2",
                                                 "D3", "D4", "D6", "D7", "D8", "E2"};
    return ids;
}

/** @brief The first test divisor with negative beta', if any. */
struct Witness {
    bool found = false;
    std::string label;
    std::string note;  ///< why no witness was found (failed evaluations)
};

/**
 * @brief Scan the test divisors in order and stop at the first negative
 * beta'. A test whose evaluation fails (e.g. the Mov = Nef guard) does not
 * stop the search; it is reported only when no witness exists.
 */
inline Witness destabilizing_divisor(const LogPair& p, const std::vector<LabeledClass>& tests) {
    Witness w;
    for (const auto& t : tests) {
        try {
            if (beta_prime(p, t.cls, t.label).beta_prime.sign() < 0) {
                w.found = true;
                w.label = t.label;
                return w;
            }
        } catch (const DomainError& e) {
            w.note += "; " + t.label + ": " + e.what();
        }
    }
    return w;
}

inline CriterionResult criterion_sweeps(const Options& opt) {
    CriterionResult R{4, "instability sweeps (step 1/20, parameters up to cap)", {}, 0.0};
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& id : unstable_families()) {
        struct Job {
            std::map<std::string, long> params;
        };
        std::vector<Job> jobs;
        for (auto& p : parameter_grid(id, opt.cap)) jobs.push_back({p});
        std::atomic<std::size_t> next{0}, points{0}, variants{0};
        std::mutex mu;
        std::string bad;
        unsigned T = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
        auto work = [&] {
            for (std::size_t i = next++; i < jobs.size(); i = next++) {
                CatalogCase c;
                try {
                    c = opt.provider(id, jobs[i].params);
                } catch (const DomainError&) {
                    continue;  // excluded parameter combination
                }
                ++variants;
                try {
                    for (const auto& x : interior_grid(c, q(1, 20))) {
                        ++points;
                        auto w = destabilizing_divisor(c.pair(x), c.tests);
                        if (!w.found) {
                            std::lock_guard<std::mutex> g(mu);
                            if (bad.empty()) bad = show_params(jobs[i].params) + " at " + show(x) + w.note;
                            break;
                        }
                    }
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> g(mu);
                    if (bad.empty()) bad = show_params(jobs[i].params) + ": " + e.what();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < T; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
        R.checks.push_back({id + " every ample-body point divisorially unstable", bad.empty() && points > 0,
                            bad.empty() ? std::to_string(variants.load()) + " variants, " + std::to_string(points.load()) + " points"
                                        : "not unstable: " + bad});
    }
    double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream os;
    os << std::fixed << std::setprecision(1) << sec << " s";
    R.checks.push_back({"sweeps finish within 10 minutes", sec < 600.0, os.str()});
    return R;
}

// ---------------------------------------------------------------------------
// Criterion 5: catalog integrity.

inline CriterionResult criterion_catalog(const Options& opt) {
    CriterionResult R{5, "catalog rows, nef values and the K-semistable column", {}, 0.0};
    auto& out = R.checks;
    std::size_t loaded = 0;
    std::string load_err;
    for (const auto& id : case_ids()) {
        try {
            opt.provider(id, {});
            ++loaded;
        } catch (const std::exception& e) {
            if (load_err.empty()) load_err = id + ": " + e.what();
        }
    }
    // The enumerated rows are E1, E2, C1-C10, D1-D8, Q1, F1-F4.
    out.push_back({"every table row loads", load_err.empty() && loaded == 25 && case_ids().size() == 25,
                   std::to_string(loaded) + " of " + std::to_string(case_ids().size()) + " rows loaded" +
                       (load_err.empty() ? "" : "; " + load_err)});
    {
        auto c = opt.provider("E1", {});
        const auto& X = c.X;
        bool ok = X.triple_entry(0, 0, 0) == Rat(1) && X.triple_entry(0, 0, 1) == Rat(-2) &&
                  X.triple_entry(0, 1, 1) == Rat(4) && X.triple_entry(1, 1, 1) == Rat(-6);
        out.push_back({"E1 intersection numbers D1^3=1, D1^2 D2=-2, D1 D2^2=4, D2^3=-6", ok,
                       "D2^3 = " + X.triple_entry(1, 1, 1).str()});
    }
    for (const auto& id : case_ids()) {
        CatalogCase c;
        try {
            c = opt.provider(id, {});
        } catch (const std::exception&) {
            continue;
        }
        auto nv = case_nef_value(c);
        out.push_back({id + " nef value", nv.eps == c.expected_nef_value,
                       "computed " + nv.eps.str() + ", table " + c.expected_nef_value.str()});
        auto s = scan(c, c.dim() == 3 ? q(1, 10) : q(1, 20), opt.threads);
        std::size_t semi = 0;
        for (const auto& p : s.points) {
            bool interior = std::all_of(p.coeffs.begin(), p.coeffs.end(), [](const Rat& x) { return x.sign() > 0; });
            if (interior && is_semistable(p.status)) ++semi;
        }
        bool expect_empty = c.semistable_column == "No";
        out.push_back({id + " K-semistable column \"" + c.semistable_column + "\"", expect_empty == (semi == 0),
                       std::to_string(semi) + " certified semistable interior grid points"});
    }
    return R;
}

// ---------------------------------------------------------------------------
// Criterion 6: numeric-integration oracles.

/** @brief Composite Simpson over [lo, hi] with an even number of panels of width <= step. */
inline double simpson_grid(const std::function<double(const Rat&)>& f, const Rat& lo, const Rat& hi, long inv_step = 64) {
    if (!(lo < hi)) return 0.0;
    Rat len = hi - lo;
    long n = static_cast<long>(std::ceil(len.to_double() * static_cast<double>(inv_step)));
    if (n % 2) ++n;
    if (n < 2) n = 2;
    Rat h = len / Rat(n);
    double acc = 0.0;
    for (long i = 0; i <= n; ++i) {
        double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * f(lo + h * Rat(i));
    }
    return acc * h.to_double() / 3.0;
}

/** @brief S'(E) from pointwise volumes. */
inline double s_prime_oracle(const LogPair& p, const NumericalClass& E) {
    NumericalClass L = p.polarization();
    Rat tau = pseff_threshold(p.X, L, E);
    return simpson_grid([&](const Rat& x) { return volume(p.X, L - x * E).to_double(); }, Rat(0), tau);
}

/** @brief S(W^Y; Z) from pointwise Zariski decompositions and surface volumes. */
inline double s_w_oracle(const LogPair& p, const CenterSpec& z) {
    NumericalClass L = p.polarization();
    Rat L3 = cube(p.X, L);
    Rat tau = pseff_threshold(p.X, L, z.y_class);
    auto first = [&](const Rat& u) {
        auto d = decompose(p.X, L - u * z.y_class);
        Rat ord(0);
        for (const auto& n : d.negative) ord += n.mult * z.order_of(n.label);
        if (ord.is_zero()) return 0.0;
        return (triple_product(p.X, d.positive, d.positive, z.y_class) * ord).to_double();
    };
    auto second = [&](const Rat& u) {
        auto d = decompose(p.X, L - u * z.y_class);
        Vec r = z.restrict(d.positive);
        if (!z.surface.is_pseff(r)) return 0.0;
        auto t = surface_pseff_threshold(z.surface, r, z.z_class);
        if (!t) throw DomainError("inner ray never leaves the pseudo-effective cone");
        return simpson_grid(
            [&](const Rat& v) {
                Vec w(r.size());
                for (std::size_t i = 0; i < r.size(); ++i) w[i] = r[i] - v * z.z_class[i];
                return z.surface.volume(w).to_double();
            },
            Rat(0), *t);
    };
    double s = simpson_grid(first, Rat(0), tau) + simpson_grid(second, Rat(0), tau);
    return 3.0 * s / L3.to_double();
}

inline bool close(double exact, double approx, double rel = 1e-5) {
    return std::abs(exact - approx) <= rel * std::max(1.0, std::abs(exact));
}

inline CriterionResult criterion_oracles(const Options& opt) {
    CriterionResult R{6, "exact S' and S(W;Z) agree with Simpson step-1/64 oracles", {}, 0.0};
    for (const auto& id : case_ids()) {
        auto c = opt.provider(id, {});
        auto pts = spread(interior_grid(c, c.dim() == 3 ? q(1, 5) : q(1, 10)), 3);
        std::size_t n = 0;
        std::string bad;
        double worst = 0.0;
        for (const auto& x : pts) {
            LogPair p = c.pair(x);
            for (const auto& t : c.tests) {
                double e = beta_prime(p, t.cls, t.label).S_prime.to_double();
                double o = s_prime_oracle(p, t.cls);
                ++n;
                worst = std::max(worst, std::abs(e - o) / std::max(1.0, std::abs(e)));
                if (!close(e, o) && bad.empty()) bad = "S'(" + t.label + ") at " + show(x);
            }
            for (const auto& z : c.centers) {
                if (!p.X.mov_eq_nef) continue;
                double e = S_W(p, z).to_double();
                double o = s_w_oracle(p, z);
                ++n;
                worst = std::max(worst, std::abs(e - o) / std::max(1.0, std::abs(e)));
                if (!close(e, o) && bad.empty()) bad = "S(W;" + z.label + ") at " + show(x);
            }
        }
        std::ostringstream os;
        os << n << " comparisons, worst relative error " << std::scientific << std::setprecision(2) << worst;
        if (!bad.empty()) os << "; exceeds 1e-5 for " << bad;
        R.checks.push_back({id + " oracles", bad.empty() && n > 0, os.str()});
    }
    return R;
}

// ---------------------------------------------------------------------------
// Criterion 7: surface thresholds.

inline CriterionResult criterion_surfaces(const Options&) {
    CriterionResult R{7, "surface beta' thresholds", {}, 0.0};
    auto& out = R.checks;
    {
        Rat b = beta_prime_surface(p2_conic(q(3, 4)), "C");
        bool signs = beta_prime_surface(p2_conic(q(1, 2)), "C").sign() > 0 && beta_prime_surface(p2_conic(q(7, 8)), "C").sign() < 0;
        out.push_back({"(P^2, aC): beta' = 0 at a = 3/4", b.is_zero() && signs, "beta'(3/4) = " + b.str()});
    }
    {
        Rat b = beta_prime_surface(quadric_surface_conic(q(1, 2)), "C");
        bool signs = beta_prime_surface(quadric_surface_conic(q(1, 4)), "C").sign() > 0 &&
                     beta_prime_surface(quadric_surface_conic(q(3, 4)), "C").sign() < 0;
        out.push_back({"(P^1 x P^1, aC): beta' = 0 at a = 1/2", b.is_zero() && signs, "beta'(1/2) = " + b.str()});
    }
    {
        std::string bad;
        for (long i = 0; i < 20; ++i) {
            Rat b(i, 20);
            Rat v = beta_prime_surface(line_point(b), "P");
            if (v != -b * (2 - b) / 2 && bad.empty()) bad = "b = " + b.str() + ": " + v.str();
        }
        out.push_back({"(P^1, bP): beta' = -b(2-b)/2", bad.empty(), bad.empty() ? "20 values of b" : bad});
    }
    return R;
}

// ---------------------------------------------------------------------------

inline CriterionResult run_criterion(int id, const Options& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
        case 1: r = criterion_identities(opt); break;
        case 2: r = criterion_az(opt); break;
        case 3: r = criterion_regions(opt); break;
        case 4: r = criterion_sweeps(opt); break;
        case 5: r = criterion_catalog(opt); break;
        case 6: r = criterion_oracles(opt); break;
        case 7: r = criterion_surfaces(opt); break;
        default: throw DomainError("unknown acceptance criterion " + std::to_string(id));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/** @brief One line per criterion: "PASS 1 title (n checks, t s)". */
inline std::string summary_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.ok() ? "PASS" : "FAIL") << ' ' << r.id << ' ' << r.title << " (" << r.checks.size() << " checks, "
       << r.failures() << " failed, " << std::fixed << std::setprecision(1) << r.seconds << " s)";
    return os.str();
}

}  // namespace kstab::verify
