#pragma once

#include "kstab/arith.hpp"
#include "kstab/geom.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace kstab {

/** @brief One component of a negative part: a prime divisor with its multiplicity. */
struct NegativeTerm {
    std::string label;
    NumericalClass cls;
    Rat mult;
};

/** @brief Zariski decomposition c = P + sum mult_i * Gamma_i with P nef. */
struct Decomposition {
    NumericalClass positive;
    std::vector<NegativeTerm> negative;
};

namespace detail {

/** @brief Active wall: eff prime index paired with the Mori curve it is contracted along. */
using WallPair = std::pair<std::size_t, std::size_t>;

/**
 * @brief Solve for multiplicities t with (c - sum t_j Gamma_j) . C_i = 0 for every active pair.
 */
inline std::optional<Vec> solve_active(const Threefold& X, const NumericalClass& c,
                                       const std::vector<WallPair>& active) {
    const std::size_t n = active.size();
    std::vector<Vec> M(n, Vec(n));
    Vec r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& C = X.mori[active[i].second];
        r[i] = C(c);
        for (std::size_t j = 0; j < n; ++j) M[i][j] = C(X.eff_primes[active[j].first].cls);
    }
    return solve_linear(std::move(M), std::move(r));
}

inline NumericalClass subtract(const Threefold& X, NumericalClass c, const std::vector<WallPair>& active,
                               const Vec& t) {
    for (std::size_t j = 0; j < active.size(); ++j) c -= t[j] * X.eff_primes[active[j].first].cls;
    return c;
}

/** @brief Find the wall set of the Zariski chamber containing c (c assumed pseudo-effective). */
inline std::vector<WallPair> active_walls(const Threefold& X, const NumericalClass& c) {
    std::vector<WallPair> active;
    for (int iter = 0; iter < 32; ++iter) {
        auto t = solve_active(X, c, active);
        if (!t) throw ConfigError("singular wall system in Zariski decomposition");
        // Drop a wall whose multiplicity went negative (can happen when two walls compete).
        bool dropped = false;
        for (std::size_t j = 0; j < active.size(); ++j)
            if ((*t)[j].sign() < 0) {
                active.erase(active.begin() + static_cast<std::ptrdiff_t>(j));
                dropped = true;
                break;
            }
        if (dropped) continue;
        NumericalClass P = subtract(X, c, active, *t);
        std::optional<std::size_t> bad;
        for (std::size_t i = 0; i < X.mori.size(); ++i)
            if (X.mori[i](P).sign() < 0) {
                bad = i;
                break;
            }
        if (!bad) return active;
        std::optional<std::size_t> gamma;
        for (std::size_t g = 0; g < X.eff_primes.size(); ++g) {
            if (X.mori[*bad](X.eff_primes[g].cls).sign() < 0) {
                if (gamma) throw ConfigError("no unique negative divisor for curve " + X.mori[*bad].label);
                gamma = g;
            }
        }
        if (!gamma) throw ConfigError("no prime divisor is negative on curve " + X.mori[*bad].label);
        for (const auto& w : active)
            if (w.first == *gamma) throw ConfigError("divisor " + X.eff_primes[*gamma].label + " met twice");
        active.emplace_back(*gamma, *bad);
    }
    throw ConfigError("Zariski decomposition did not terminate");
}

inline Decomposition assemble(const Threefold& X, const NumericalClass& c, const std::vector<WallPair>& active) {
    auto t = solve_active(X, c, active);
    if (!t) throw ConfigError("singular wall system in Zariski decomposition");
    Decomposition d{subtract(X, c, active, *t), {}};
    for (std::size_t j = 0; j < active.size(); ++j) {
        const auto& g = X.eff_primes[active[j].first];
        if (!(*t)[j].is_zero()) d.negative.push_back({g.label, g.cls, (*t)[j]});
    }
    return d;
}

}  // namespace detail

/**
 * @brief Zariski decomposition of a pseudo-effective class.
 *
 * Repeatedly finds a Mori generator C with P.C < 0, adds the unique prime
 * divisor negative on C to the wall set, and re-solves P.C_j = 0 for all
 * active walls jointly.
 */
inline Decomposition decompose(const Threefold& X, const NumericalClass& c) {
    if (!is_pseff(X, c)) throw DomainError("decompose: class " + c.str() + " is not pseudo-effective");
    auto d = detail::assemble(X, c, detail::active_walls(X, c));
    if (!is_nef(X, d.positive)) throw ConfigError("decompose: positive part is not nef");
    return d;
}

/** @brief vol(c) = P^3 for pseudo-effective c, 0 otherwise. */
inline Rat volume(const Threefold& X, const NumericalClass& c) {
    if (!is_pseff(X, c)) return Rat(0);
    return cube(X, decompose(X, c).positive);
}

/** @brief Affine class P0 + x * P1. */
struct AffineClass {
    NumericalClass at0;
    NumericalClass slope;

    NumericalClass operator()(const Rat& x) const { return at0 + x * slope; }
};

/** @brief Affine multiplicity m0 + x * m1 of one prime divisor in N(x). */
struct AffineNegative {
    std::string label;
    NumericalClass cls;
    Rat m0;
    Rat m1;

    Rat operator()(const Rat& x) const { return m0 + x * m1; }
};

/** @brief One chamber crossed by the ray L - xE. */
struct RaySegment {
    Rat x0;
    Rat x1;
    AffineClass positive;
    std::vector<AffineNegative> negative;
    Poly<Rat> vol;
};

/** @brief Piecewise Zariski decomposition of L - xE for x in [0, tau]. */
struct RayDecomposition {
    std::vector<RaySegment> segments;
    Rat tau;
    Rat eps;

    PiecewisePoly<Rat> volume_profile() const {
        std::vector<Rat> br{segments.front().x0};
        std::vector<Poly<Rat>> pcs;
        for (const auto& s : segments) {
            br.push_back(s.x1);
            pcs.push_back(s.vol);
        }
        return PiecewisePoly<Rat>(br, pcs);
    }
    /** @brief Exact integral of vol(L - xE) over [0, tau]. */
    Rat integral() const { return integrate(volume_profile(), segments.front().x0, segments.back().x1); }
};

namespace detail {

inline void add_root_in(std::set<Rat>& out, const Rat& v0, const Rat& v1, const Rat& lo, const Rat& hi) {
    // Root of v0 + x v1 strictly inside (lo, hi).
    if (v1.is_zero()) return;
    Rat r = -v0 / v1;
    if (lo < r && r < hi) out.insert(r);
}

/** @brief Cubic polynomial x -> P(x)^3 obtained by exact interpolation. */
inline Poly<Rat> cubic_of(const Threefold& X, const AffineClass& P, const Rat& lo, const Rat& hi) {
    std::vector<Rat> xs, ys;
    for (int i = 0; i < 4; ++i) {
        Rat x = lo + (hi - lo) * Rat(i, 3);
        if (lo == hi) x = lo + Rat(i);
        xs.push_back(x);
        ys.push_back(cube(X, P(x)));
    }
    return interpolate(xs, ys);
}

/** @brief Affine decomposition valid on the chamber containing `mid`. */
inline RaySegment affine_segment(const Threefold& X, const NumericalClass& L, const NumericalClass& E,
                                 const Rat& lo, const Rat& hi) {
    Rat mid = (lo + hi) / Rat(2);
    auto active = active_walls(X, L - mid * E);
    auto t0 = solve_active(X, L, active);
    auto tE = solve_active(X, -E, active);
    if (!t0 || !tE) throw ConfigError("singular wall system along ray");
    RaySegment s;
    s.x0 = lo;
    s.x1 = hi;
    s.positive = AffineClass{subtract(X, L, active, *t0), subtract(X, -E, active, *tE)};
    for (std::size_t j = 0; j < active.size(); ++j) {
        const auto& g = X.eff_primes[active[j].first];
        s.negative.push_back({g.label, g.cls, (*t0)[j], (*tE)[j]});
    }
    return s;
}

}  // namespace detail

/**
 * @brief Exact piecewise decomposition of the ray L - xE, x in [0, tau].
 *
 * Breakpoints are the finitely many x where a Mori pairing of the positive
 * part or a negative multiplicity changes sign; each chamber is classified at
 * its midpoint.  Throws DomainError when the ray leaves the nef cone before
 * tau on a variety whose movable cone is not certified to equal the nef cone.
 */
inline RayDecomposition decompose_ray(const Threefold& X, const NumericalClass& L, const NumericalClass& E) {
    if (!is_ample(X, L)) throw DomainError("decompose_ray: L is not ample");
    if (E.is_zero() || !is_pseff(X, E)) throw DomainError("decompose_ray: E is not a nonzero pseudo-effective class");
    RayDecomposition rd;
    rd.tau = pseff_threshold(X, L, E);
    rd.eps = std::min(nef_threshold(X, L, E), rd.tau);
    if (rd.eps < rd.tau && !X.mov_eq_nef)
        throw DomainError("Mov = Nef not certified: ray leaves the nef cone before the pseudo-effective threshold");

    std::set<Rat> br{Rat(0), rd.tau};
    for (const auto& C : X.mori) detail::add_root_in(br, C(L), -C(E), Rat(0), rd.tau);
    for (int round = 0; round < 16; ++round) {
        std::vector<Rat> b(br.begin(), br.end());
        bool changed = false;
        for (std::size_t i = 0; i + 1 < b.size(); ++i) {
            auto s = detail::affine_segment(X, L, E, b[i], b[i + 1]);
            for (const auto& C : X.mori)
                detail::add_root_in(br, C(s.positive.at0), C(s.positive.slope), b[i], b[i + 1]);
            for (const auto& n : s.negative) detail::add_root_in(br, n.m0, n.m1, b[i], b[i + 1]);
            if (br.size() != b.size()) changed = true;
        }
        if (!changed) break;
    }
    std::vector<Rat> b(br.begin(), br.end());
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
        auto s = detail::affine_segment(X, L, E, b[i], b[i + 1]);
        s.vol = detail::cubic_of(X, s.positive, b[i], b[i + 1]);
        // Merge with the previous chamber when nothing changed across the breakpoint.
        if (!rd.segments.empty()) {
            auto& p = rd.segments.back();
            bool same = p.positive.at0 == s.positive.at0 && p.positive.slope == s.positive.slope &&
                        p.negative.size() == s.negative.size();
            for (std::size_t j = 0; same && j < s.negative.size(); ++j)
                same = p.negative[j].label == s.negative[j].label && p.negative[j].m0 == s.negative[j].m0 &&
                       p.negative[j].m1 == s.negative[j].m1;
            if (same) {
                p.x1 = s.x1;
                continue;
            }
        }
        rd.segments.push_back(std::move(s));
    }
    if (rd.segments.empty()) throw DomainError("decompose_ray: degenerate ray (tau = 0)");
    return rd;
}

}  // namespace kstab
