#include <doctest.h>

#include "canonsys/config.hpp"
#include "canonsys/errors.hpp"

using namespace canon;
using nlohmann::json;

namespace {

json example_problem() {
    return json::parse(R"({
        "interval": [0, 2], "sigma": 1,
        "h_minus": {"kind": "builtin", "name": "example"},
        "h_plus": {"kind": "builtin", "name": "example"},
        "delta": 1, "d": [-2, 0]
    })");
}

std::string path_of(const json& j) {
    try {
        run_config_from_json(j);
    } catch (const ConfigError& e) {
        return e.path();
    }
    return "<no error>";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("complex numbers") {
    CHECK(parse_complex("2+3i") == Complex(2.0, 3.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("5i") == Complex(0.0, 5.0));
    CHECK(parse_complex("1.5") == Complex(1.5, 0.0));
    CHECK(parse_complex("3-0.5j") == Complex(3.0, -0.5));
    CHECK(parse_complex("1e-3i") == Complex(0.0, 1e-3));
    CHECK_THROWS_AS(parse_complex("foo"), Error);
    CHECK_THROWS_AS(parse_complex(""), Error);
}

TEST_CASE("grids") {
    const auto g = parse_z_grid("1, 2i,-1-1i");
    REQUIRE(g.size() == 3);
    CHECK(g[2] == Complex(-1.0, -1.0));
    const auto r = parse_z_grid("rect:-1:1:3:0.5:1.5:2");
    REQUIRE(r.size() == 6);
    CHECK(parse_real_list("0.25,1.5") == std::vector<double>{0.25, 1.5});
    CHECK_THROWS_AS(parse_z_grid("rect:1:2"), Error);
    CHECK_THROWS_AS(parse_real_list("0.5,x"), Error);
}

TEST_CASE("bare problem and full run config") {
    const RunConfig bare = run_config_from_json(example_problem());
    REQUIRE(bare.problem);
    CHECK(bare.problem->sigma() == 1.0);
    CHECK(bare.problem->s_plus() == 2.0);

    json full;
    full["problem"] = example_problem();
    full["z_grid"] = json::array({"1+1i", json::array({0.0, 2.0}), 3.0});
    full["t_grid"] = {0.5, 1.5};
    full["tolerances"] = {{"rtol", 1e-9}, {"levels", 12}};
    full["output"] = {{"format", "json"}};
    const RunConfig rc = run_config_from_json(full);
    REQUIRE(rc.z_grid.size() == 3);
    CHECK(rc.z_grid[1] == Complex(0.0, 2.0));
    CHECK(rc.tolerances.rtol == 1e-9);
    CHECK(rc.tolerances.levels == 12);
    CHECK(rc.output.format == "json");
}

TEST_CASE("piecewise and table Hamiltonians") {
    json p = example_problem();
    p["h_plus"] = json::parse(R"({"kind": "piecewise", "pieces": [
        {"from": 1, "to": 2, "h1": [{"coef": 1, "center": 1, "power": 2}], "h2": [{"coef": 1, "center": 1, "power": -2}]}]})");
    const IndefHamiltonianA ih = *run_config_from_json(p).problem;
    CHECK(ih.h_plus(1.5)(0, 0) == doctest::Approx(0.25));
    CHECK(ih.h_plus(1.5)(1, 1) == doctest::Approx(4.0));

    const json tab = json::parse(R"({"kind": "table", "t": [0, 1], "h1": [1, 2], "h2": [1, 1]})");
    const Hamiltonian h = hamiltonian_from_json(tab, 0.0, 1.0, "/h");
    CHECK(h(0.5)(0, 0) == doctest::Approx(1.5));
}

TEST_CASE("errors carry a path") {
    json j = example_problem();
    j["bogus"] = 1;
    CHECK(path_of(j) == "/bogus");

    j = example_problem();
    j.erase("sigma");
    CHECK(path_of(j) == "/sigma");

    j = example_problem();
    j["h_minus"]["kind"] = "spline";
    CHECK(path_of(j) == "/h_minus/kind");

    j = example_problem();
    j["h_plus"] = json::parse(R"({"kind": "table", "t": [1, 2], "h1": [1, -5], "h2": [1, 1]})");
    CHECK(path_of(j) == "/h_plus");

    json full;
    full["problem"] = example_problem();
    full["problem"]["d"] = {1.0};
    CHECK(path_of(full) == "/problem/d");

    full["problem"] = example_problem();
    full["tolerances"] = {{"rtol", -1.0}};
    CHECK(path_of(full) == "/tolerances/rtol");

    full["tolerances"] = json::object();
    full["z_grid"] = {"x"};
    CHECK(path_of(full) == "/z_grid/0");

    CHECK_THROWS_AS(load_run_config("/nonexistent/file.json"), ConfigError);
}

}
