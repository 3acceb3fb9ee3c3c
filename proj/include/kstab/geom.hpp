#pragma once

#include "kstab/arith.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace kstab {

/** @brief Raised when case data is internally inconsistent (cones, tables, labels). */
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Vec = std::vector<Rat>;

/** @brief Divisor class as rational coordinates in a Picard basis. */
struct NumericalClass {
    Vec coords;

    NumericalClass() = default;
    explicit NumericalClass(Vec c) : coords(std::move(c)) {}
    NumericalClass(std::initializer_list<Rat> c) : coords(c) {}

    static NumericalClass zero(std::size_t rho) { return NumericalClass(Vec(rho, Rat(0))); }
    static NumericalClass unit(std::size_t rho, std::size_t i) {
        auto z = zero(rho);
        z.coords[i] = Rat(1);
        return z;
    }

    std::size_t rank() const { return coords.size(); }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const Rat& r) { return r.is_zero(); });
    }

    NumericalClass& operator+=(const NumericalClass& o) {
        check(o);
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
        return *this;
    }
    NumericalClass& operator-=(const NumericalClass& o) {
        check(o);
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
        return *this;
    }
    friend NumericalClass operator+(NumericalClass a, const NumericalClass& b) { return a += b; }
    friend NumericalClass operator-(NumericalClass a, const NumericalClass& b) { return a -= b; }
    friend NumericalClass operator*(const Rat& s, NumericalClass a) {
        for (auto& c : a.coords) c *= s;
        return a;
    }
    NumericalClass operator-() const { return Rat(-1) * *this; }
    friend bool operator==(const NumericalClass& a, const NumericalClass& b) { return a.coords == b.coords; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? ", " : "") + coords[i].str();
        return s + ")";
    }

private:
    void check(const NumericalClass& o) const {
        if (o.coords.size() != coords.size()) throw std::invalid_argument("class rank mismatch");
    }
};

/** @brief A curve class recorded by its intersection numbers with the Picard basis. */
struct CurveFunctional {
    std::string label;
    Vec pairing;

    Rat operator()(const NumericalClass& c) const {
        if (c.rank() != pairing.size()) throw std::invalid_argument("curve/class rank mismatch");
        Rat acc(0);
        for (std::size_t i = 0; i < pairing.size(); ++i) acc += pairing[i] * c.coords[i];
        return acc;
    }
};

/** @brief A labelled prime divisor class. */
struct PrimeDivisor {
    std::string label;
    NumericalClass cls;
};

inline Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    Rat acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/**
 * @brief Solve the square system M t = r exactly; returns nullopt when singular.
 */
inline std::optional<Vec> solve_linear(std::vector<Vec> M, Vec r) {
    const std::size_t n = r.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && M[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(r[piv], r[col]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || M[row][col].is_zero()) continue;
            Rat f = M[row][col] / M[col][col];
            for (std::size_t k = col; k < n; ++k) M[row][k] -= f * M[col][k];
            r[row] -= f * r[col];
        }
    }
    Vec t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = r[i] / M[i][i];
    return t;
}

namespace cone {

inline Vec cross(const Vec& a, const Vec& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/** @brief Scale a nonzero vector so its first nonzero entry is +-1 (ray canonical form). */
inline Vec normalize_ray(Vec v) {
    for (const auto& x : v) {
        if (!x.is_zero()) {
            Rat s = abs(x);
            for (auto& y : v) y /= s;
            return v;
        }
    }
    return v;
}

inline bool is_zero_vec(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return r.is_zero(); });
}

/**
 * @brief Inward facet normals of the closed cone spanned by `gens` in Q^rho, rho <= 3.
 *
 * Throws ConfigError when the cone is not full-dimensional or not pointed.
 */
inline std::vector<Vec> facets(const std::vector<Vec>& gens, std::size_t rho) {
    std::vector<Vec> out;
    auto push_unique = [&](Vec n) {
        n = normalize_ray(std::move(n));
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(std::move(n));
    };
    auto supports = [&](const Vec& n) {
        bool pos = true, neg = true;
        for (const auto& g : gens) {
            int s = dot(n, g).sign();
            if (s < 0) pos = false;
            if (s > 0) neg = false;
        }
        return pos ? 1 : (neg ? -1 : 0);
    };
    if (gens.empty()) throw ConfigError("cone with no generators");
    for (const auto& g : gens)
        if (g.size() != rho) throw ConfigError("cone generator of wrong rank");
    if (rho == 1) {
        bool pos = false, neg = false;
        for (const auto& g : gens) {
            if (g[0].sign() > 0) pos = true;
            if (g[0].sign() < 0) neg = true;
        }
        if (pos == neg) throw ConfigError("rank-one cone is not a pointed half-line");
        return {Vec{Rat(pos ? 1 : -1)}};
    }
    if (rho == 2) {
        for (const auto& g : gens) {
            Vec n{-g[1], g[0]};
            if (is_zero_vec(n)) continue;
            int s = supports(n);
            if (s > 0) push_unique(n);
            if (s < 0) push_unique(Vec{g[1], -g[0]});
        }
    } else if (rho == 3) {
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j) {
                Vec n = cross(gens[i], gens[j]);
                if (is_zero_vec(n)) continue;
                int s = supports(n);
                if (s > 0) push_unique(n);
                if (s < 0) push_unique(Vec{-n[0], -n[1], -n[2]});
            }
    } else {
        throw ConfigError("cone machinery supports Picard rank <= 3 only");
    }
    if (out.size() < rho) throw ConfigError("cone is not full-dimensional or not pointed");
    // A pointed cone has no facet pair with opposite normals.
    for (const auto& a : out)
        for (const auto& b : out) {
            Vec s(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) s[k] = a[k] + b[k];
            if (is_zero_vec(s)) throw ConfigError("cone is not full-dimensional");
        }
    return out;
}

/** @brief Remove generators that are not extremal rays (and duplicates). */
inline std::vector<std::size_t> extremal_indices(const std::vector<Vec>& gens, std::size_t rho) {
    auto F = facets(gens, rho);
    std::vector<std::size_t> out;
    std::vector<Vec> seen;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::size_t tight = 0;
        for (const auto& f : F)
            if (dot(f, gens[i]).is_zero()) ++tight;
        Vec r = normalize_ray(gens[i]);
        if (tight + 1 >= rho && !is_zero_vec(gens[i]) &&
            std::find(seen.begin(), seen.end(), r) == seen.end()) {
            // Extremal iff the tight facets cut out a line: rank of tight normals is rho-1.
            std::vector<Vec> T;
            for (const auto& f : F)
                if (dot(f, gens[i]).is_zero()) T.push_back(f);
            bool ok = false;
            if (rho == 1) ok = true;
            else if (rho == 2) ok = !T.empty();
            else {
                for (std::size_t p = 0; p < T.size() && !ok; ++p)
                    for (std::size_t q = p + 1; q < T.size() && !ok; ++q)
                        if (!is_zero_vec(cross(T[p], T[q]))) ok = true;
            }
            if (ok) {
                out.push_back(i);
                seen.push_back(r);
            }
        }
    }
    return out;
}

}  // namespace cone

/**
 * @brief A smooth projective threefold described numerically: Picard basis,
 * symmetric trilinear intersection form, canonical class and cone data.
 */
class Threefold {
public:
    Threefold() = default;
    explicit Threefold(std::vector<std::string> labels)
        : labels_(std::move(labels)), triple_(labels_.size() * labels_.size() * labels_.size(), Rat(0)),
          canonical_(NumericalClass::zero(labels_.size())) {}

    std::size_t rho() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }

    /** @brief Set D_i D_j D_k and all its permutations. */
    void set_triple(std::size_t i, std::size_t j, std::size_t k, const Rat& v) {
        std::size_t idx[3] = {i, j, k};
        std::sort(idx, idx + 3);
        do {
            raw(idx[0], idx[1], idx[2]) = v;
        } while (std::next_permutation(idx, idx + 3));
    }
    /** @brief Set a single entry without symmetrizing (used to load documents). */
    void set_triple_raw(std::size_t i, std::size_t j, std::size_t k, const Rat& v) { raw(i, j, k) = v; }
    Rat triple_entry(std::size_t i, std::size_t j, std::size_t k) const {
        return triple_[(i * rho() + j) * rho() + k];
    }

    bool triple_is_symmetric() const {
        for (std::size_t i = 0; i < rho(); ++i)
            for (std::size_t j = 0; j < rho(); ++j)
                for (std::size_t k = 0; k < rho(); ++k) {
                    const Rat& v = triple_entry(i, j, k);
                    if (v != triple_entry(j, i, k) || v != triple_entry(i, k, j) || v != triple_entry(k, j, i))
                        return false;
                }
        return true;
    }

    NumericalClass canonical;
    std::vector<NumericalClass> nef_gens;
    std::vector<PrimeDivisor> eff_primes;
    std::vector<CurveFunctional> mori;
    /** @brief Whether the movable cone is known to equal the nef cone. */
    bool mov_eq_nef = false;

    NumericalClass cls(std::initializer_list<Rat> c) const {
        if (c.size() != rho()) throw std::invalid_argument("class literal of wrong rank");
        return NumericalClass(Vec(c));
    }
    NumericalClass basis(const std::string& label) const {
        for (std::size_t i = 0; i < rho(); ++i)
            if (labels_[i] == label) return NumericalClass::unit(rho(), i);
        throw ConfigError("unknown basis label " + label);
    }

    const std::vector<Vec>& eff_facets() const {
        if (eff_facets_.empty()) {
            std::vector<Vec> g;
            for (const auto& p : eff_primes) g.push_back(p.cls.coords);
            eff_facets_ = cone::facets(g, rho());
        }
        return eff_facets_;
    }

private:
    Rat& raw(std::size_t i, std::size_t j, std::size_t k) { return triple_[(i * rho() + j) * rho() + k]; }

    std::vector<std::string> labels_;
    std::vector<Rat> triple_;
    NumericalClass canonical_;
    mutable std::vector<Vec> eff_facets_;
};

/** @brief Trilinear evaluation c1 . c2 . c3. */
inline Rat triple_product(const Threefold& X, const NumericalClass& c1, const NumericalClass& c2,
                          const NumericalClass& c3) {
    const std::size_t r = X.rho();
    if (c1.rank() != r || c2.rank() != r || c3.rank() != r) throw std::invalid_argument("triple_product: rank mismatch");
    Rat acc(0);
    for (std::size_t i = 0; i < r; ++i) {
        if (c1.coords[i].is_zero()) continue;
        for (std::size_t j = 0; j < r; ++j) {
            if (c2.coords[j].is_zero()) continue;
            Rat ij = c1.coords[i] * c2.coords[j];
            for (std::size_t k = 0; k < r; ++k)
                if (!c3.coords[k].is_zero()) acc += ij * c3.coords[k] * X.triple_entry(i, j, k);
        }
    }
    return acc;
}

inline Rat cube(const Threefold& X, const NumericalClass& c) { return triple_product(X, c, c, c); }

/** @brief c . C >= 0 for every Mori generator. */
inline bool is_nef(const Threefold& X, const NumericalClass& c) {
    return std::all_of(X.mori.begin(), X.mori.end(), [&](const CurveFunctional& C) { return C(c).sign() >= 0; });
}

/** @brief c . C > 0 for every Mori generator. */
inline bool is_ample(const Threefold& X, const NumericalClass& c) {
    if (X.mori.empty()) return false;
    return std::all_of(X.mori.begin(), X.mori.end(), [&](const CurveFunctional& C) { return C(c).sign() > 0; });
}

/** @brief Membership in the closed cone spanned by the effective prime generators. */
inline bool is_pseff(const Threefold& X, const NumericalClass& c) {
    for (const auto& f : X.eff_facets())
        if (dot(f, c.coords).sign() < 0) return false;
    return true;
}

/** @brief Largest x with L - xE pseudo-effective. */
inline Rat pseff_threshold(const Threefold& X, const NumericalClass& L, const NumericalClass& E) {
    std::optional<Rat> best;
    for (const auto& f : X.eff_facets()) {
        Rat fe = dot(f, E.coords);
        if (fe.sign() > 0) {
            Rat t = dot(f, L.coords) / fe;
            if (!best || t < *best) best = t;
        }
    }
    if (!best) throw DomainError("pseudo-effective threshold is unbounded (E not a nonzero pseff class)");
    return *best;
}

/** @brief Largest x with L - xE nef. */
inline Rat nef_threshold(const Threefold& X, const NumericalClass& L, const NumericalClass& E) {
    std::optional<Rat> best;
    for (const auto& C : X.mori) {
        Rat ce = C(E);
        if (ce.sign() > 0) {
            Rat t = C(L) / ce;
            if (!best || t < *best) best = t;
        }
    }
    if (!best) throw DomainError("nef threshold is unbounded");
    return *best;
}

/** @brief Result of the nef value computation. */
struct NefValue {
    Rat eps;
    std::vector<std::string> achieved_by;
};

/**
 * @brief Minimal eps with K + eps(-K - delta) nef.
 *
 * Requires -K - delta ample and K not nef.
 */
inline NefValue nef_value(const Threefold& X, const NumericalClass& delta) {
    NumericalClass gamma = -X.canonical - delta;
    if (!is_ample(X, gamma)) throw DomainError("nef value needs -K - Delta ample");
    if (is_nef(X, X.canonical)) throw DomainError("not uniruled-type input: K is nef");
    NefValue out{Rat(0), {}};
    bool first = true;
    for (const auto& C : X.mori) {
        Rat k = C(X.canonical);
        if (k.sign() >= 0) continue;
        Rat e = -k / C(gamma);
        if (first || e > out.eps) {
            out.eps = e;
            out.achieved_by.clear();
            first = false;
        }
        if (e == out.eps) out.achieved_by.push_back(C.label);
    }
    return out;
}

/**
 * @brief Consistency checks for a threefold: symmetric form, nef generators
 * pair nonnegatively with Mori generators and lie in the effective cone.
 * Returns a list of human-readable violations (empty when consistent).
 */
inline std::vector<std::string> validate(const Threefold& X) {
    std::vector<std::string> errs;
    if (!X.triple_is_symmetric()) errs.push_back("intersection table is not symmetric");
    if (X.canonical.rank() != X.rho()) errs.push_back("canonical class has wrong rank");
    for (const auto& C : X.mori)
        if (C.pairing.size() != X.rho()) errs.push_back("Mori generator " + C.label + " has wrong rank");
    for (std::size_t i = 0; i < X.nef_gens.size(); ++i) {
        for (const auto& C : X.mori)
            if (C(X.nef_gens[i]).sign() < 0)
                errs.push_back("nef generator " + X.nef_gens[i].str() + " pairs negatively with " + C.label);
    }
    try {
        for (const auto& g : X.nef_gens)
            if (!is_pseff(X, g)) errs.push_back("nef generator " + g.str() + " is not pseudo-effective");
    } catch (const ConfigError& e) {
        errs.push_back(e.what());
    }
    return errs;
}

/** @brief Nef cone generators obtained by dualizing the Mori cone. */
inline std::vector<NumericalClass> dual_nef_generators(const Threefold& X) {
    std::vector<Vec> g;
    for (const auto& C : X.mori) g.push_back(C.pairing);
    std::vector<NumericalClass> out;
    for (auto& f : cone::facets(g, X.rho())) out.emplace_back(f);
    return out;
}

}  // namespace kstab
