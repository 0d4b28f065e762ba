#include "canonsys/config.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "canonsys/errors.hpp"

namespace canon {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw ConfigError(path + "/" + it.key(), "unknown key");
}

const json& need(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw ConfigError(path + "/" + key, "missing required key");
    return j.at(key);
}

double number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
    return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "/" + std::to_string(i)));
    return out;
}

std::vector<PowerTerm> terms(const json& j, const std::string& path) {
    std::vector<PowerTerm> out;
    if (j.is_number()) {
        out.push_back({j.get<double>(), 0.0, 0.0});
        return out;
    }
    if (!j.is_array()) throw ConfigError(path, "expected a number or an array of terms");
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        only_keys(j[i], p, {"coef", "center", "power"});
        PowerTerm t;
        t.coef = number(need(j[i], p, "coef"), p + "/coef");
        if (j[i].contains("center")) t.center = number(j[i]["center"], p + "/center");
        if (j[i].contains("power")) t.power = number(j[i]["power"], p + "/power");
        out.push_back(t);
    }
    return out;
}

Complex complex_value(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        try {
            return parse_complex(j.get<std::string>());
        } catch (const Error& e) {
            throw ConfigError(path, e.what());
        }
    }
    if (j.is_array() && j.size() == 2) return {number(j[0], path + "/0"), number(j[1], path + "/1")};
    throw ConfigError(path, "expected a complex number: number, \"a+bi\" or [re, im]");
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    if (n == 1) return {a};
    for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

std::vector<Complex> rectangle(double ra, double rb, int n, double ia, double ib, int m) {
    std::vector<Complex> out;
    for (double im : linspace(ia, ib, m))
        for (double re : linspace(ra, rb, n)) out.emplace_back(re, im);
    return out;
}

}  // namespace

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    static const std::regex re_full(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij])?$)");
    static const std::regex re_imag(R"(^([+-]?)((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij]$)");
    std::smatch m;
    if (s.empty()) throw Error(ErrorKind::configuration, "config", "empty complex number");
    if (std::regex_match(s, m, re_imag)) {
        const double mag = m[2].matched ? std::stod(m[2]) : 1.0;
        return {0.0, m[1] == "-" ? -mag : mag};
    }
    if (std::regex_match(s, m, re_full) && m[1].matched) {
        const double re = std::stod(m[1]);
        if (!m[2].matched) return re;
        const double mag = m[3].matched ? std::stod(m[3]) : 1.0;
        return {re, m[2] == "-" ? -mag : mag};
    }
    throw Error(ErrorKind::configuration, "config", "cannot parse complex number '" + text + "'");
}

std::vector<Complex> parse_z_grid(const std::string& text) {
    if (text.rfind("rect:", 0) == 0) {
        std::vector<std::string> parts;
        std::stringstream ss(text.substr(5));
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 6)
            throw Error(ErrorKind::configuration, "config", "rectangle grid is rect:re_lo:re_hi:n:im_lo:im_hi:m");
        try {
            return rectangle(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]), std::stod(parts[3]),
                             std::stod(parts[4]), std::stoi(parts[5]));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::configuration, "config", "bad rectangle grid '" + text + "'");
        }
    }
    std::vector<Complex> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
    return out;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::configuration, "config", "cannot parse number '" + item + "'");
        }
    }
    return out;
}

Hamiltonian hamiltonian_from_json(const json& j, double lo, double hi, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected a Hamiltonian object");
    const json& kind = need(j, path, "kind");
    if (!kind.is_string()) throw ConfigError(path + "/kind", "expected a string");
    const std::string k = kind.get<std::string>();
    try {
        if (k == "builtin") {
            only_keys(j, path, {"kind", "name"});
            const json& name = need(j, path, "name");
            if (!name.is_string()) throw ConfigError(path + "/name", "expected a string");
            return Hamiltonian(lo, hi, BuiltinSpec{name.get<std::string>()});
        }
        if (k == "piecewise") {
            only_keys(j, path, {"kind", "pieces"});
            const json& pieces = need(j, path, "pieces");
            if (!pieces.is_array()) throw ConfigError(path + "/pieces", "expected an array");
            PiecewiseSpec spec;
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                const std::string p = path + "/pieces/" + std::to_string(i);
                only_keys(pieces[i], p, {"from", "to", "h1", "h2", "h3"});
                Piece piece;
                piece.from = number(need(pieces[i], p, "from"), p + "/from");
                piece.to = number(need(pieces[i], p, "to"), p + "/to");
                piece.h1 = terms(need(pieces[i], p, "h1"), p + "/h1");
                piece.h2 = terms(need(pieces[i], p, "h2"), p + "/h2");
                if (pieces[i].contains("h3")) piece.h3 = terms(pieces[i]["h3"], p + "/h3");
                spec.pieces.push_back(std::move(piece));
            }
            return Hamiltonian(lo, hi, std::move(spec));
        }
        if (k == "table") {
            only_keys(j, path, {"kind", "t", "h1", "h2", "h3"});
            TableSpec spec;
            spec.t = numbers(need(j, path, "t"), path + "/t");
            spec.h1 = numbers(need(j, path, "h1"), path + "/h1");
            spec.h2 = numbers(need(j, path, "h2"), path + "/h2");
            spec.h3 = j.contains("h3") ? numbers(j["h3"], path + "/h3") : std::vector<double>(spec.t.size(), 0.0);
            return Hamiltonian(lo, hi, std::move(spec));
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::configuration) throw ConfigError(path, e.what());
        throw;
    }
    throw ConfigError(path + "/kind", "expected one of builtin, piecewise, table");
}

IndefHamiltonianA problem_from_json(const json& j, const std::string& path) {
    only_keys(j, path, {"interval", "sigma", "h_minus", "h_plus", "delta", "d", "oe", "b", "omega_minus",
                        "omega_plus"});
    const std::vector<double> interval = numbers(need(j, path, "interval"), path + "/interval");
    if (interval.size() != 2) throw ConfigError(path + "/interval", "expected [s_lo, s_hi]");
    const double sigma = number(need(j, path, "sigma"), path + "/sigma");
    if (!(interval[0] < sigma && sigma < interval[1]))
        throw ConfigError(path + "/sigma", "need s_lo < sigma < s_hi");
    Hamiltonian hm = hamiltonian_from_json(need(j, path, "h_minus"), interval[0], sigma, path + "/h_minus");
    Hamiltonian hp = hamiltonian_from_json(need(j, path, "h_plus"), sigma, interval[1], path + "/h_plus");
    const int delta = integer(need(j, path, "delta"), path + "/delta");
    const std::vector<double> d = numbers(need(j, path, "d"), path + "/d");
    const int oe = j.contains("oe") ? integer(j["oe"], path + "/oe") : 0;
    const std::vector<double> b = j.contains("b") ? numbers(j["b"], path + "/b") : std::vector<double>{};
    const std::vector<double> om =
        j.contains("omega_minus") ? numbers(j["omega_minus"], path + "/omega_minus") : std::vector<double>{};
    const std::vector<double> op =
        j.contains("omega_plus") ? numbers(j["omega_plus"], path + "/omega_plus") : std::vector<double>{};
    for (const auto& [h, key] : {std::pair<const Hamiltonian*, const char*>{&hm, "/h_minus"}, {&hp, "/h_plus"}}) {
        double worst = 0.0;
        try {
            worst = min_relative_eigenvalue(*h);
        } catch (const Error& e) {
            throw ConfigError(path + key, e.what());
        }
        if (worst < -1e-10) throw ConfigError(path + key, "Hamiltonian is not positive semidefinite");
    }
    IndefHamiltonianA ih = make_indefinite(std::move(hm), std::move(hp), delta, d, oe, b, om, op);
    try {
        ih.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(path + e.path(), e.detail());
    }
    return ih;
}

void apply_tolerances(const json& j, Tolerances& tol, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
    const std::vector<std::pair<const char*, double*>> reals = {
        {"rtol", &tol.rtol},           {"atol", &tol.atol},
        {"pipeline_rtol", &tol.pipeline_rtol}, {"pipeline_atol", &tol.pipeline_atol},
        {"eps_cut", &tol.eps_cut},     {"eps0", &tol.eps0},
        {"tol_limit", &tol.tol_limit}, {"tol_psd", &tol.tol_psd},
        {"tol_indiv", &tol.tol_indiv}, {"tol_tail", &tol.tol_tail},
        {"tol_det", &tol.tol_det},     {"tol_shoot", &tol.tol_shoot},
        {"tol_pipeline", &tol.tol_pipeline}, {"tol_eig", &tol.tol_eig},
        {"max_condition", &tol.max_condition}, {"quad_rel_tol", &tol.quad_rel_tol}};
    const std::vector<std::pair<const char*, int*>> ints = {{"max_rejections", &tol.max_rejections},
                                                            {"levels", &tol.levels},
                                                            {"max_order", &tol.max_order},
                                                            {"panel_nodes", &tol.panel_nodes},
                                                            {"geometric_levels", &tol.geometric_levels}};
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string p = path + "/" + it.key();
        bool found = false;
        for (auto& [name, ptr] : reals)
            if (it.key() == name) {
                *ptr = number(it.value(), p);
                if (!(*ptr > 0.0)) throw ConfigError(p, "must be positive");
                found = true;
            }
        for (auto& [name, ptr] : ints)
            if (it.key() == name) {
                *ptr = integer(it.value(), p);
                if (*ptr < 1) throw ConfigError(p, "must be a positive integer");
                found = true;
            }
        if (!found) throw ConfigError(p, "unknown key");
    }
}

RunConfig run_config_from_json(const json& j) {
    RunConfig rc;
    if (!j.is_object()) throw ConfigError("", "expected a JSON object");
    if (!j.contains("problem")) {
        rc.problem = problem_from_json(j, "");
        return rc;
    }
    only_keys(j, "", {"problem", "z_grid", "t_grid", "tolerances", "output"});
    if (j.contains("tolerances")) apply_tolerances(j["tolerances"], rc.tolerances);
    rc.problem = problem_from_json(j["problem"], "/problem");
    if (j.contains("z_grid")) {
        const json& g = j["z_grid"];
        if (g.is_array()) {
            for (std::size_t i = 0; i < g.size(); ++i)
                rc.z_grid.push_back(complex_value(g[i], "/z_grid/" + std::to_string(i)));
        } else if (g.is_object()) {
            only_keys(g, "/z_grid", {"re", "im"});
            const auto re = numbers(need(g, "/z_grid", "re"), "/z_grid/re");
            const auto im = numbers(need(g, "/z_grid", "im"), "/z_grid/im");
            if (re.size() != 3 || im.size() != 3 || re[2] < 1 || im[2] < 1)
                throw ConfigError("/z_grid", "rectangle is {re: [a, b, n], im: [c, d, m]}");
            rc.z_grid = rectangle(re[0], re[1], static_cast<int>(re[2]), im[0], im[1], static_cast<int>(im[2]));
        } else {
            throw ConfigError("/z_grid", "expected a list or a rectangle");
        }
    }
    if (j.contains("t_grid")) rc.t_grid = numbers(j["t_grid"], "/t_grid");
    if (j.contains("output")) {
        only_keys(j["output"], "/output", {"format", "path"});
        const json& o = j["output"];
        if (o.contains("format")) {
            if (!o["format"].is_string() || (o["format"] != "csv" && o["format"] != "json"))
                throw ConfigError("/output/format", "expected \"csv\" or \"json\"");
            rc.output.format = o["format"].get<std::string>();
        }
        if (o.contains("path")) {
            if (!o["path"].is_string()) throw ConfigError("/output/path", "expected a string");
            rc.output.path = o["path"].get<std::string>();
        }
    }
    return rc;
}

RunConfig load_run_config(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("", "cannot open config file '" + file + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    return run_config_from_json(j);
}

}  // namespace canon
