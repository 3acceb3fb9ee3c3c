#pragma once

#include "kstab/arith.hpp"
#include "kstab/geom.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace kstab {

/** @brief The low-dimensional models that occur as flag surfaces and product factors. */
enum class SurfaceKind { P2, P1xP1, Hirzebruch, P1 };

/**
 * @brief Numerical model of P^2 (basis h), P^1 x P^1 (two rulings), the
 * Hirzebruch surface F_n (basis s, f with s^2 = -n) or the curve P^1 (a point).
 */
struct SurfaceModel {
    SurfaceKind kind = SurfaceKind::P2;
    int n = 0;

    static SurfaceModel p2() { return {SurfaceKind::P2, 0}; }
    static SurfaceModel p1xp1() { return {SurfaceKind::P1xP1, 0}; }
    static SurfaceModel hirzebruch(int n) {
        if (n < 0) throw std::invalid_argument("Hirzebruch surface needs n >= 0");
        return {SurfaceKind::Hirzebruch, n};
    }
    static SurfaceModel p1() { return {SurfaceKind::P1, 0}; }

    std::size_t rank() const { return (kind == SurfaceKind::P2 || kind == SurfaceKind::P1) ? 1 : 2; }
    std::size_t dim() const { return kind == SurfaceKind::P1 ? 1 : 2; }

    std::string name() const {
        switch (kind) {
            case SurfaceKind::P2: return "P2";
            case SurfaceKind::P1xP1: return "P1xP1";
            case SurfaceKind::Hirzebruch: return "F" + std::to_string(n);
            case SurfaceKind::P1: return "P1";
        }
        return "?";
    }

    /** @brief Linear functionals whose common nonnegativity defines the pseudo-effective cone. */
    std::vector<Vec> pseff_walls() const {
        if (rank() == 1) return {Vec{Rat(1)}};
        return {Vec{Rat(1), Rat(0)}, Vec{Rat(0), Rat(1)}};
    }

    /** @brief Functionals along which the volume formula changes inside the pseudo-effective cone. */
    std::vector<Vec> volume_walls() const {
        if (kind == SurfaceKind::Hirzebruch && n > 0) return {Vec{Rat(-n), Rat(1)}};
        return {};
    }

    bool is_pseff(const Vec& c) const {
        check(c);
        for (const auto& w : pseff_walls())
            if (dot(w, c).sign() < 0) return false;
        return true;
    }

    /** @brief Exact volume (self-intersection of the positive part; degree on P^1). */
    Rat volume(const Vec& c) const {
        check(c);
        if (!is_pseff(c)) return Rat(0);
        switch (kind) {
            case SurfaceKind::P2: return c[0] * c[0];
            case SurfaceKind::P1: return c[0];
            case SurfaceKind::P1xP1: return Rat(2) * c[0] * c[1];
            case SurfaceKind::Hirzebruch: {
                const Rat& a = c[0];
                const Rat& b = c[1];
                Rat nn(n);
                if (b >= nn * a) return Rat(2) * a * b - nn * a * a;
                return b * b / nn;
            }
        }
        return Rat(0);
    }

private:
    void check(const Vec& c) const {
        if (c.size() != rank()) throw std::invalid_argument("surface class of wrong rank for " + name());
    }
};

/**
 * @brief Largest x with c - x*e pseudo-effective on the surface, or nullopt when
 * no wall bounds the ray.
 */
inline std::optional<Rat> surface_pseff_threshold(const SurfaceModel& S, const Vec& c, const Vec& e) {
    std::optional<Rat> best;
    for (const auto& w : S.pseff_walls()) {
        Rat we = dot(w, e);
        if (we.sign() > 0) {
            Rat t = dot(w, c) / we;
            if (!best || t < *best) best = t;
        }
    }
    return best;
}

/** @brief Exact integral of vol(c - x e) over x in [0, tau] (breakpoints from volume walls). */
inline Rat surface_ray_integral(const SurfaceModel& S, const Vec& c, const Vec& e) {
    if (!S.is_pseff(c)) return Rat(0);
    auto tau = surface_pseff_threshold(S, c, e);
    if (!tau) throw DomainError("surface ray never leaves the pseudo-effective cone");
    std::vector<Rat> br{Rat(0), *tau};
    for (const auto& w : S.volume_walls()) {
        Rat we = dot(w, e);
        if (we.is_zero()) continue;
        Rat r = dot(w, c) / we;
        if (Rat(0) < r && r < *tau) br.push_back(r);
    }
    std::sort(br.begin(), br.end());
    auto f = [&](const Rat& x) {
        Vec v(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i] - x * e[i];
        return S.volume(v);
    };
    return integrate_piecewise_cubic<Rat>(f, br);
}

/** @brief Boundary component of a low-dimensional pair. */
struct SurfaceBoundary {
    std::string label;
    Vec cls;
    Rat coeff;
};

/**
 * @brief A log Fano pair of dimension 1 or 2: model, anticanonical class and boundary.
 */
struct SurfacePair {
    SurfaceModel model;
    Vec anticanonical;
    std::vector<SurfaceBoundary> boundary;

    Vec polarization() const {
        Vec L = anticanonical;
        for (const auto& d : boundary)
            for (std::size_t i = 0; i < L.size(); ++i) L[i] -= d.coeff * d.cls[i];
        return L;
    }
};

/**
 * @brief beta' = A * vol(L) - integral_0^tau vol(L - xE) dx for a boundary
 * component E of a surface (or curve) pair.
 */
inline Rat beta_prime_surface(const SurfacePair& p, const std::string& label) {
    for (const auto& d : p.boundary) {
        if (d.label != label) continue;
        Vec L = p.polarization();
        if (!p.model.is_pseff(L) || p.model.volume(L).sign() <= 0)
            throw DomainError("surface pair is not log Fano");
        return (Rat(1) - d.coeff) * p.model.volume(L) - surface_ray_integral(p.model, L, d.cls);
    }
    throw DomainError("unknown surface boundary label " + label);
}

/** @brief (P^2, a C) with C a smooth conic. */
inline SurfacePair p2_conic(const Rat& a) {
    return {SurfaceModel::p2(), Vec{Rat(3)}, {{"C", Vec{Rat(2)}, a}}};
}
/** @brief (P^2, a l1 + b l2) with two lines. */
inline SurfacePair p2_two_lines(const Rat& a, const Rat& b) {
    return {SurfaceModel::p2(), Vec{Rat(3)}, {{"l1", Vec{Rat(1)}, a}, {"l2", Vec{Rat(1)}, b}}};
}
/** @brief (P^1 x P^1, a C) with C a smooth (1,1) curve. */
inline SurfacePair quadric_surface_conic(const Rat& a) {
    return {SurfaceModel::p1xp1(), Vec{Rat(2), Rat(2)}, {{"C", Vec{Rat(1), Rat(1)}, a}}};
}
/** @brief (P^1, b P) with P a point. */
inline SurfacePair line_point(const Rat& b) {
    return {SurfaceModel::p1(), Vec{Rat(2)}, {{"P", Vec{Rat(1)}, b}}};
}

/** @brief Stability verdicts, ordered from worst to best. */
enum class Verdict { unstable, semistable, polystable };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::unstable: return "unstable";
        case Verdict::semistable: return "semistable";
        case Verdict::polystable: return "polystable";
    }
    return "?";
}

/**
 * @brief Verdict for a toric low-dimensional factor from the beta' of its
 * boundary components: a negative value destabilizes, an empty boundary is
 * polystable, all-positive values are polystable, zeros give semistable.
 */
inline Verdict factor_verdict(const SurfacePair& p) {
    bool all_zero = true, all_pos = true;
    for (const auto& d : p.boundary) {
        if (!d.coeff.is_zero()) all_zero = false;
    }
    if (all_zero) return Verdict::polystable;
    for (const auto& d : p.boundary) {
        int s = beta_prime_surface(p, d.label).sign();
        if (s < 0) return Verdict::unstable;
        if (s == 0) all_pos = false;
    }
    return all_pos ? Verdict::polystable : Verdict::semistable;
}

/** @brief A product is semistable/polystable iff every factor is. */
inline Verdict product_rule(const std::vector<Verdict>& factors) {
    if (factors.empty()) throw DomainError("product_rule: no factors");
    return *std::min_element(factors.begin(), factors.end());
}

}  // namespace kstab
