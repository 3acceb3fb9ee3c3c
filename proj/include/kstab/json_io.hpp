#pragma once

#include "kstab/arith.hpp"
#include "kstab/catalog.hpp"
#include "kstab/geom.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace kstab {

/**
 * @brief Case documents: JSON mirroring CatalogCase with every number written
 * as a "p/q" string (schema in schema/case.schema.json).
 */
namespace json_io {

using json = nlohmann::json;

/** @brief A document that violates the schema or the geometric consistency rules. */
struct DocumentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** @brief A loaded case together with non-fatal self-check findings. */
struct LoadedCase {
    CatalogCase c;
    std::vector<std::string> warnings;
};

namespace detail {

inline json vec(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

inline json labeled(const std::string& label, const Vec& v) { return json{{"label", label}, {"class", vec(v)}}; }

inline std::string kind_name(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::P2: return "P2";
        case SurfaceKind::P1xP1: return "P1xP1";
        case SurfaceKind::Hirzebruch: return "hirzebruch";
        case SurfaceKind::P1: return "P1";
    }
    return "?";
}

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw DocumentError(path + ": " + what);
}

inline const json& field(const json& j, const std::string& path, const char* key) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing required field \"") + key + "\"");
    return *it;
}

inline void only(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* a : allowed) known = known || it.key() == a;
        if (!known) fail(path, "unknown field \"" + it.key() + "\"");
    }
}

inline Rat rat(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "numbers must be strings of the form \"p\" or \"p/q\"");
    try {
        return Rat::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(path, std::string("malformed rational \"") + j.get<std::string>() + "\": " + e.what());
    }
}

inline std::string str(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

inline Vec rvec(const json& j, const std::string& path, std::size_t size) {
    if (!j.is_array()) fail(path, "expected an array");
    if (j.size() != size) fail(path, "expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
    Vec out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rat(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline const json& arr(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

inline std::vector<LabeledClass> labeled_list(const json& j, const std::string& path, std::size_t rho) {
    std::vector<LabeledClass> out;
    const auto& a = arr(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::string p = path + "[" + std::to_string(i) + "]";
        out.push_back({str(field(a[i], p, "label"), p + ".label"), NumericalClass(rvec(field(a[i], p, "class"), p + ".class", rho))});
    }
    return out;
}

}  // namespace detail

/** @brief Serialize a case (numbers as "p/q" strings, the full rho^3 triple table). */
inline json to_json(const CatalogCase& c) {
    using detail::labeled;
    using detail::vec;
    const Threefold& X = c.X;
    const std::size_t r = X.rho();
    json triple = json::array();
    for (std::size_t i = 0; i < r; ++i) {
        json plane = json::array();
        for (std::size_t j = 0; j < r; ++j) {
            json row = json::array();
            for (std::size_t k = 0; k < r; ++k) row.push_back(X.triple_entry(i, j, k).str());
            plane.push_back(row);
        }
        triple.push_back(plane);
    }
    json nef = json::array(), eff = json::array(), mori = json::array();
    for (const auto& g : X.nef_gens) nef.push_back(vec(g.coords));
    for (const auto& e : X.eff_primes) eff.push_back(labeled(e.label, e.cls.coords));
    for (const auto& m : X.mori) mori.push_back(json{{"label", m.label}, {"pairing", vec(m.pairing)}});

    json params = json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    json boundary = json::array(), tests = json::array(), centers = json::array(), factors = json::array();
    for (const auto& b : c.boundary) boundary.push_back(labeled(b.label, b.cls.coords));
    for (const auto& t : c.tests) tests.push_back(labeled(t.label, t.cls.coords));
    for (const auto& z : c.centers) {
        json restr = json::array();
        for (const auto& row : z.restriction) restr.push_back(vec(row));
        json order = json::array();
        for (const auto& [l, v] : z.z_order) order.push_back(json{{"label", l}, {"order", v.str()}});
        centers.push_back(json{{"label", z.label},
                               {"y_label", z.y_label},
                               {"y_class", vec(z.y_class.coords)},
                               {"surface", json{{"kind", detail::kind_name(z.surface.kind)}, {"n", z.surface.n}}},
                               {"restriction", restr},
                               {"z_class", vec(z.z_class)},
                               {"log_discrepancy", json{{"constant", z.A_Z.constant.str()}, {"linear", vec(z.A_Z.linear)}}},
                               {"z_order", order}});
    }
    for (const auto& f : c.product_factors) factors.push_back(json{{"kind", f.kind}, {"coeff_index", f.coeff_index}});

    return json{{"id", c.id},
                {"params", params},
                {"threefold",
                 json{{"labels", X.labels()},
                      {"triple", triple},
                      {"canonical", vec(X.canonical.coords)},
                      {"nef_generators", nef},
                      {"effective_primes", eff},
                      {"mori", mori},
                      {"mov_eq_nef", X.mov_eq_nef}}},
                {"boundary", boundary},
                {"test_divisors", tests},
                {"centers", centers},
                {"expected_nef_value", c.expected_nef_value.str()},
                {"semistable_column", c.semistable_column},
                {"product_factors", factors},
                {"known_region", c.known_region}};
}

inline std::string export_case(const CatalogCase& c) { return to_json(c).dump(2) + "\n"; }

/**
 * @brief Build a case from a document: structural validation, a symmetric
 * triple table, nef generators pairing nonnegatively with Mori generators,
 * pseudo-effective boundary, and the nef value self-check (reported as a
 * warning when it disagrees with expected_nef_value).
 */
inline LoadedCase load_custom(const json& doc) {
    using namespace detail;
    LoadedCase out;
    CatalogCase& c = out.c;
    only(doc, "$", {"id", "params", "threefold", "boundary", "test_divisors", "centers", "expected_nef_value",
                    "semistable_column", "product_factors", "known_region"});
    c.id = str(field(doc, "$", "id"), "$.id");
    if (doc.contains("params")) {
        const auto& p = doc["params"];
        if (!p.is_object()) fail("$.params", "expected an object");
        for (auto it = p.begin(); it != p.end(); ++it) {
            if (!it.value().is_number_integer()) fail("$.params." + it.key(), "expected an integer");
            c.params[it.key()] = it.value().get<long>();
        }
    }

    const auto& T = field(doc, "$", "threefold");
    only(T, "$.threefold", {"labels", "triple", "canonical", "nef_generators", "effective_primes", "mori", "mov_eq_nef"});
    const auto& lab = arr(field(T, "$.threefold", "labels"), "$.threefold.labels");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < lab.size(); ++i) labels.push_back(str(lab[i], "$.threefold.labels[" + std::to_string(i) + "]"));
    if (labels.empty()) fail("$.threefold.labels", "need at least one basis label");
    const std::size_t r = labels.size();
    Threefold X(labels);

    const auto& tri = arr(field(T, "$.threefold", "triple"), "$.threefold.triple");
    if (tri.size() != r) fail("$.threefold.triple", "expected " + std::to_string(r) + " planes");
    for (std::size_t i = 0; i < r; ++i) {
        std::string pi = "$.threefold.triple[" + std::to_string(i) + "]";
        const auto& plane = arr(tri[i], pi);
        if (plane.size() != r) fail(pi, "expected " + std::to_string(r) + " rows");
        for (std::size_t j = 0; j < r; ++j) {
            std::string pj = pi + "[" + std::to_string(j) + "]";
            Vec row = rvec(plane[j], pj, r);
            for (std::size_t k = 0; k < r; ++k) X.set_triple_raw(i, j, k, row[k]);
        }
    }
    if (!X.triple_is_symmetric()) fail("$.threefold.triple", "intersection table is not symmetric");

    X.canonical = NumericalClass(rvec(field(T, "$.threefold", "canonical"), "$.threefold.canonical", r));
    const auto& nef = arr(field(T, "$.threefold", "nef_generators"), "$.threefold.nef_generators");
    for (std::size_t i = 0; i < nef.size(); ++i)
        X.nef_gens.push_back(NumericalClass(rvec(nef[i], "$.threefold.nef_generators[" + std::to_string(i) + "]", r)));
    for (const auto& e : labeled_list(field(T, "$.threefold", "effective_primes"), "$.threefold.effective_primes", r))
        X.eff_primes.push_back({e.label, e.cls});
    const auto& mori = arr(field(T, "$.threefold", "mori"), "$.threefold.mori");
    for (std::size_t i = 0; i < mori.size(); ++i) {
        std::string p = "$.threefold.mori[" + std::to_string(i) + "]";
        X.mori.push_back({str(field(mori[i], p, "label"), p + ".label"), rvec(field(mori[i], p, "pairing"), p + ".pairing", r)});
    }
    const auto& mov = field(T, "$.threefold", "mov_eq_nef");
    if (!mov.is_boolean()) fail("$.threefold.mov_eq_nef", "expected a boolean");
    X.mov_eq_nef = mov.get<bool>();

    for (std::size_t i = 0; i < X.nef_gens.size(); ++i)
        for (const auto& C : X.mori)
            if (C(X.nef_gens[i]).sign() < 0)
                fail("$.threefold", "cone inconsistency: nef generator " + std::to_string(i) + " pairs negatively with Mori generator " +
                                        C.label);
    auto errs = validate(X);
    if (!errs.empty()) fail("$.threefold", errs.front());
    c.X = X;

    c.boundary = labeled_list(field(doc, "$", "boundary"), "$.boundary", r);
    if (c.boundary.empty() || c.boundary.size() > 3) fail("$.boundary", "expected one to three boundary components");
    for (const auto& b : c.boundary)
        if (!is_pseff(X, b.cls)) fail("$.boundary", "component " + b.label + " is not pseudo-effective");
    c.tests = labeled_list(field(doc, "$", "test_divisors"), "$.test_divisors", r);

    if (doc.contains("centers")) {
        const auto& cs = arr(doc["centers"], "$.centers");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::string p = "$.centers[" + std::to_string(i) + "]";
            const auto& z = cs[i];
            only(z, p, {"label", "y_label", "y_class", "surface", "restriction", "z_class", "log_discrepancy", "z_order"});
            CenterSpec s;
            s.label = str(field(z, p, "label"), p + ".label");
            s.y_label = str(field(z, p, "y_label"), p + ".y_label");
            s.y_class = NumericalClass(rvec(field(z, p, "y_class"), p + ".y_class", r));
            const auto& surf = field(z, p, "surface");
            std::string kind = str(field(surf, p + ".surface", "kind"), p + ".surface.kind");
            const auto& nj = field(surf, p + ".surface", "n");
            if (!nj.is_number_integer()) fail(p + ".surface.n", "expected an integer");
            if (kind == "P2") s.surface = SurfaceModel::p2();
            else if (kind == "P1xP1") s.surface = SurfaceModel::p1xp1();
            else if (kind == "P1") s.surface = SurfaceModel::p1();
            else if (kind == "hirzebruch") {
                if (nj.get<int>() < 0) fail(p + ".surface.n", "Hirzebruch index must be >= 0");
                s.surface = SurfaceModel::hirzebruch(nj.get<int>());
            } else
                fail(p + ".surface.kind", "unknown surface kind " + kind);
            const auto& rs = arr(field(z, p, "restriction"), p + ".restriction");
            if (rs.size() != s.surface.rank()) fail(p + ".restriction", "expected one row per surface basis class");
            for (std::size_t k = 0; k < rs.size(); ++k) s.restriction.push_back(rvec(rs[k], p + ".restriction[" + std::to_string(k) + "]", r));
            s.z_class = rvec(field(z, p, "z_class"), p + ".z_class", s.surface.rank());
            const auto& ld = field(z, p, "log_discrepancy");
            s.A_Z.constant = rat(field(ld, p + ".log_discrepancy", "constant"), p + ".log_discrepancy.constant");
            s.A_Z.linear = rvec(field(ld, p + ".log_discrepancy", "linear"), p + ".log_discrepancy.linear", c.boundary.size());
            if (z.contains("z_order")) {
                const auto& zo = arr(z["z_order"], p + ".z_order");
                for (std::size_t k = 0; k < zo.size(); ++k) {
                    std::string pk = p + ".z_order[" + std::to_string(k) + "]";
                    s.z_order.push_back({str(field(zo[k], pk, "label"), pk + ".label"), rat(field(zo[k], pk, "order"), pk + ".order")});
                }
            }
            c.centers.push_back(std::move(s));
        }
    }
    c.expected_nef_value = rat(field(doc, "$", "expected_nef_value"), "$.expected_nef_value");
    if (doc.contains("semistable_column")) c.semistable_column = str(doc["semistable_column"], "$.semistable_column");
    if (doc.contains("known_region")) c.known_region = str(doc["known_region"], "$.known_region");
    if (!c.known_region.empty()) {
        try {
            regions::by_name(c.known_region);
        } catch (const DomainError&) {
            fail("$.known_region", "unknown region name " + c.known_region);
        }
    }
    if (doc.contains("product_factors")) {
        const auto& pf = arr(doc["product_factors"], "$.product_factors");
        for (std::size_t i = 0; i < pf.size(); ++i) {
            std::string p = "$.product_factors[" + std::to_string(i) + "]";
            FactorSpec f;
            f.kind = str(field(pf[i], p, "kind"), p + ".kind");
            if (f.kind != "p2_conic" && f.kind != "p2_two_lines" && f.kind != "quadric_conic" && f.kind != "line_point")
                fail(p + ".kind", "unknown factor kind " + f.kind);
            const auto& ci = arr(field(pf[i], p, "coeff_index"), p + ".coeff_index");
            for (const auto& x : ci) {
                if (!x.is_number_integer() || x.get<int>() < -1 || x.get<int>() >= static_cast<int>(c.boundary.size()))
                    fail(p + ".coeff_index", "indices must be -1 or a boundary position");
                f.coeff_index.push_back(x.get<int>());
            }
            c.product_factors.push_back(std::move(f));
        }
    }

    try {
        Rat eps = case_nef_value(c).eps;
        if (eps != c.expected_nef_value)
            out.warnings.push_back("nef value self-check: computed " + eps.str() + ", document says " + c.expected_nef_value.str());
    } catch (const std::exception& e) {
        out.warnings.push_back(std::string("nef value self-check skipped: ") + e.what());
    }
    return out;
}

inline LoadedCase load_custom_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocumentError(std::string("$: not valid JSON: ") + e.what());
    }
    return load_custom(doc);
}

}  // namespace json_io
}  // namespace kstab
