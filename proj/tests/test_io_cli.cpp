#include "kstab/cli.hpp"
#include "kstab/json_io.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace kstab;
using verify::q;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Ran {
    int code;
    std::string out, err;
};

Ran run_cli(const std::vector<std::string>& args, const verify::Options* opt = nullptr) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err, opt);
    return {code, out.str(), err.str()};
}

Rat beta_by_label(const CatalogCase& c, const std::vector<Rat>& x, const std::string& label) {
    for (const auto& t : c.tests)
        if (t.label == label) return beta_prime(c.pair(x), t.cls, t.label).beta_prime;
    throw std::runtime_error("no test divisor " + label);
}

}  // namespace

TEST_CASE("case documents round-trip", "[json]") {
    for (const char* id : {"F4", "D5", "Q1", "C9", "D8"}) {
        auto text = json_io::export_case(instantiate(id));
        auto loaded = json_io::load_custom_text(text);
        CHECK(loaded.warnings.empty());
        CHECK(json_io::export_case(loaded.c) == text);
    }
}

TEST_CASE("invalid documents are rejected", "[json]") {
    json base = json::parse(json_io::export_case(instantiate("F4")));
    SECTION("non-symmetric intersection table") {
        // A rank-one table is always symmetric, so perturb a rank-two case.
        auto d5 = json::parse(json_io::export_case(instantiate("D5")));
        d5["threefold"]["triple"][0][0][1] = "2";
        CHECK_THROWS_WITH(json_io::load_custom(d5), Catch::Matchers::ContainsSubstring("not symmetric"));
    }
    SECTION("nef generator negative on a Mori generator") {
        auto d5 = json::parse(json_io::export_case(instantiate("D5")));
        d5["threefold"]["nef_generators"][0] = json::array({"-1", "1"});
        CHECK_THROWS_WITH(json_io::load_custom(d5), Catch::Matchers::ContainsSubstring("cone inconsistency"));
    }
    SECTION("malformed rational") {
        auto d = base;
        d["expected_nef_value"] = "1.5";
        CHECK_THROWS_AS(json_io::load_custom(d), json_io::DocumentError);
        d = base;
        d["boundary"][0]["class"][0] = 1;
        CHECK_THROWS_AS(json_io::load_custom(d), json_io::DocumentError);
    }
    SECTION("unknown fields and surfaces") {
        auto d = base;
        d["source"] = "x";
        CHECK_THROWS_AS(json_io::load_custom(d), json_io::DocumentError);
        d = base;
        d["centers"][0]["surface"]["kind"] = "P3";
        CHECK_THROWS_AS(json_io::load_custom(d), json_io::DocumentError);
    }
    SECTION("not JSON at all") { CHECK_THROWS_AS(json_io::load_custom_text("{"), json_io::DocumentError); }
    SECTION("a wrong expected nef value only warns") {
        auto d = base;
        d["expected_nef_value"] = "7";
        auto loaded = json_io::load_custom(d);
        CHECK(loaded.warnings.size() == 1);
    }
}

TEST_CASE("a hand-written document agrees with the built-in case", "[json]") {
    auto doc = slurp(std::filesystem::path(KSTAB_SOURCE_DIR) / "examples/usage/d5_document.json");
    auto loaded = json_io::load_custom_text(doc);
    CHECK(loaded.warnings.empty());
    auto builtin = instantiate("D5");
    for (long i = 0; i < 10; ++i)
        for (long j = 0; j < 10; ++j) {
            std::vector<Rat> x{q(i, 10), q(j, 10)};
            for (const char* label : {"D1", "D2", "F"})
                CHECK(beta_by_label(loaded.c, x, label) == beta_by_label(builtin, x, label));
        }
}

TEST_CASE("command line exit codes", "[cli]") {
    CHECK(run_cli({"list"}).code == cli::ok);
    CHECK(run_cli({"list"}).out.find("Q1") != std::string::npos);

    auto b = run_cli({"beta", "--case", "F4", "--a", "0", "--b", "0", "--divisor", "D1"});
    CHECK(b.code == cli::ok);
    CHECK(b.out.find("beta'=27/2") != std::string::npos);

    auto e1 = run_cli({"beta", "--case", "E1", "--a", "1/2", "--b", "1/2"});
    CHECK(e1.code == cli::ok);
    CHECK(e1.out.find("-635/128") != std::string::npos);

    auto azq = run_cli({"az", "--case", "Q1", "--m", "1", "--a", "0", "--b", "0"});
    CHECK(azq.code == cli::ok);
    CHECK(azq.out.find("polystable_certified") != std::string::npos);

    CHECK(run_cli({"beta", "--case", "F4", "--a", "1", "--b", "0"}).code == cli::precondition);
    CHECK(run_cli({"beta", "--case", "F4", "--a", "x", "--b", "0"}).code == cli::precondition);
    CHECK(run_cli({"beta", "--case", "F4", "--a", "0", "--b", "0", "--c", "0"}).code == cli::precondition);
    CHECK(run_cli({"beta", "--case", "C6", "--k", "1", "--n", "1", "--a", "0", "--b", "0"}).code == cli::precondition);
    CHECK(run_cli({"beta", "--case", "ZZ", "--a", "0", "--b", "0"}).code == cli::precondition);
    CHECK(run_cli({"bogus"}).code == cli::precondition);
    CHECK(run_cli({"region", "--case", "F3", "--step", "1/4", "--out", "/nonexistent-dir/x.csv"}).code == cli::io);
    CHECK(run_cli({"beta", "--document", "/nonexistent-dir/case.json", "--a", "0", "--b", "0"}).code == cli::io);
    CHECK(run_cli({"region", "--case", "F3", "--step", "0", "--out", "-"}).code == cli::precondition);
}

TEST_CASE("region writes CSV and SVG files", "[cli]") {
    auto dir = std::filesystem::temp_directory_path() / "kstab-cli-test";
    std::filesystem::create_directories(dir);
    auto csv = dir / "f3.csv", svg = dir / "f3.svg";
    auto r = run_cli({"region", "--case", "F3", "--step", "1/4", "--out", csv.string(), "--svg", svg.string()});
    REQUIRE(r.code == cli::ok);
    auto text = slurp(csv);
    CHECK(text.rfind("a,b,status\n", 0) == 0);
    CHECK(text.find("3/4,1/2,semistable_certified") != std::string::npos);
    CHECK(slurp(svg).find("</svg>") != std::string::npos);

    auto doc = dir / "f4.json";
    REQUIRE(run_cli({"list", "--case", "F4", "--out", doc.string()}).code == cli::ok);
    auto d = run_cli({"beta", "--document", doc.string(), "--a", "0", "--b", "0", "--divisor", "D1"});
    CHECK(d.code == cli::ok);
    CHECK(d.out.find("beta'=27/2") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("a tampered intersection table fails verification", "[cli][verify]") {
    verify::Options opt;
    opt.threads = 1;
    opt.provider = [](const std::string& id, const std::map<std::string, long>& p) {
        if (id != "E1") throw DomainError("withheld in this test");
        auto c = instantiate(id, p);
        c.X.set_triple(1, 1, 1, Rat(-5));
        return c;
    };
    auto r = verify::run_criterion(5, opt);
    CHECK_FALSE(r.ok());
    bool flagged = false;
    for (const auto& ch : r.checks)
        if (ch.name.rfind("E1 intersection numbers", 0) == 0) flagged = !ch.ok;
    CHECK(flagged);
    CHECK(run_cli({"verify", "--criterion", "5"}, &opt).code == cli::verify_failed);
}
