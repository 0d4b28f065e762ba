#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "canonsys/cli.hpp"

using canon::cli::run;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const std::string path = "canonsys_test_" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("ordered_map keeps input order and rethrows the first error") {
    const auto v = canon::cli::ordered_map<int>(50, 4, [](int i) { return i * i; });
    for (int i = 0; i < 50; ++i) CHECK(v[i] == i * i);
    CHECK(canon::cli::ordered_map<int>(0, 3, [](int i) { return i; }).empty());
    try {
        canon::cli::ordered_map<int>(10, 3, [](int i) -> int {
            if (i == 7 || i == 4) throw std::runtime_error(std::to_string(i));
            return i;
        });
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "4");
    }
}

TEST_CASE("validate-example exits 0") {
    const Result r = call({"validate-example", "--z-grid", "1i"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["passed"] == true);
}

TEST_CASE("usage errors exit 2") {
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({}).code == 2);
    const Result r = call({"fundamental", "--z-grid", "foo"});
    CHECK(r.code == 2);
    CHECK(r.err.rfind("error: ", 0) == 0);
}

TEST_CASE("malformed and invalid configs exit 2 with a path") {
    const std::string bad = temp_file("bad.json", "{ not json");
    Result r = call({"monodromy", "--config", bad});
    CHECK(r.code == 2);
    CHECK(r.err.find("malformed JSON") != std::string::npos);
    std::remove(bad.c_str());

    const std::string wrong = temp_file("wrong.json", R"({"interval": [0, 2], "sigma": 1,
        "h_minus": {"kind": "builtin", "name": "example"}, "h_plus": {"kind": "builtin", "name": "example"},
        "delta": "one", "d": [-2, 0]})");
    r = call({"monodromy", "--config", wrong});
    CHECK(r.code == 2);
    const auto e = nlohmann::json::parse(r.err.substr(7));
    CHECK(e["kind"] == "configuration");
    CHECK(e["message"].get<std::string>().find("/delta") != std::string::npos);
    std::remove(wrong.c_str());
}

TEST_CASE("monodromy at z = 0 is the identity") {
    const Result r = call({"monodromy", "--z-grid", "0", "--emit", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto& w = j[0]["W"];
    CHECK(w[0][0][0] == 1.0);
    CHECK(w[0][1][0] == 0.0);
    CHECK(w[1][0][0] == 0.0);
    CHECK(w[1][1][0] == 1.0);
}

TEST_CASE("output is independent of the job count") {
    const std::vector<std::string> base = {"monodromy", "--z-grid", "1+1i,2,-1-0.5i,3i"};
    auto with = [&](const char* jobs) {
        auto a = base;
        a.insert(a.end(), {"--jobs", jobs});
        return call(a);
    };
    const Result one = with("1"), two = with("2");
    REQUIRE(one.code == 0);
    CHECK(one.out == two.out);
}

TEST_CASE("fundamental CSV layout") {
    const Result r = call({"fundamental", "--z-grid", "1", "--t-grid", "0.5", "--side", "minus"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header.rfind("t,z_re,z_im,W11_re", 0) == 0);
    CHECK(row.rfind("0.5,1,0,", 0) == 0);
}

TEST_CASE("check-conditions flags bad data") {
    const Result good = call({"check-conditions", "--emit", "json"});
    CHECK(good.code == 0);

    const std::string cfg = temp_file("cond.json", R"({"interval": [0, 2], "sigma": 1,
        "h_minus": {"kind": "piecewise", "pieces": [{"from": 0, "to": 1,
            "h1": [{"coef": 1, "center": 1, "power": -2}], "h2": [{"coef": 1, "center": 1, "power": -2}]}]},
        "h_plus": {"kind": "builtin", "name": "example"},
        "delta": 2, "d": [-2, 0, 0, 0]})");
    const Result r = call({"check-conditions", "--config", cfg, "--emit", "json"});
    std::remove(cfg.c_str());
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["all_pass"] == false);
    CHECK(j["sides"][0]["I"]["status"] != "pass");
    CHECK(j["sides"][0]["delta"]["status"] != "pass");
}

TEST_CASE("weyl CSV") {
    const Result r = call({"weyl", "--z", "1i"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("z_re,z_im,q_re,q_im") == 0);
}

}
