#ifndef CANONSYS_CONFIG_HPP
#define CANONSYS_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "canonsys/indefinite.hpp"
#include "canonsys/options.hpp"

namespace canon {

struct OutputSpec {
    std::string format = "csv";  // csv | json
    std::string path;            // empty: stdout
};

struct RunConfig {
    std::optional<IndefHamiltonianA> problem;
    std::vector<Complex> z_grid;
    std::vector<double> t_grid;
    Tolerances tolerances;
    OutputSpec output;
};

/// Parses "2+3i", "-i", "5i", "1.5", "3-0.5j".
Complex parse_complex(const std::string& text);
/// Comma separated complex list, or "rect:re_lo:re_hi:n:im_lo:im_hi:m".
std::vector<Complex> parse_z_grid(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

Hamiltonian hamiltonian_from_json(const nlohmann::json& j, double lo, double hi, const std::string& path);
IndefHamiltonianA problem_from_json(const nlohmann::json& j, const std::string& path = "");
void apply_tolerances(const nlohmann::json& j, Tolerances& tol, const std::string& path = "/tolerances");

/// Accepts a run config {"problem", "z_grid", "t_grid", "tolerances", "output"}
/// or a bare problem object. Unknown keys are rejected with a ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& file);

}  // namespace canon

#endif  // CANONSYS_CONFIG_HPP
