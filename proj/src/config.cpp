#include "graphnls/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace graphnls {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

std::string list_to_string(const std::vector<double>& v) {
    std::ostringstream os;
    os.precision(15);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) os << ',';
        os << v[i];
    }
    return os.str();
}

bool parse_bool(const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    throw DomainError("config: bad boolean value '" + v + "'");
}

} // namespace

void ExperimentConfig::validate() const {
    if (N < 3) throw DomainError("config: N >= 3 required");
    if (!(L > 0.0)) throw DomainError("config: L > 0 required");
    if (M < 16) throw DomainError("config: M >= 16 required");
    if (!(epsilon > 0.0 && epsilon <= 0.2)) throw DomainError("config: epsilon in (0, 0.2] required");
    if (!(p > 0.0)) throw DomainError("config: p > 0 required");
    if (!direction.empty() && static_cast<int>(direction.size()) != N - 1)
        throw DomainError("config: direction must have N-1 entries");
    if (stride < 1) throw DomainError("config: stride >= 1 required");
}

void ExperimentConfig::apply_override(const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw DomainError("config: override must look like key=value");
    const std::string key = trim(kv.substr(0, eq));
    const std::string value = trim(kv.substr(eq + 1));
    if (key == "p") p = std::stod(value);
    else if (key == "N") N = std::stoi(value);
    else if (key == "L") L = std::stod(value);
    else if (key == "M") M = std::stoi(value);
    else if (key == "dt") dt = std::stod(value);
    else if (key == "t_end") t_end = std::stod(value);
    else if (key == "epsilon") epsilon = std::stod(value);
    else if (key == "delta_rule") {
        if (value == "eps_3_2") delta_rule = DeltaRule::Eps32;
        else if (value == "eps_linear") delta_rule = DeltaRule::EpsLinear;
        else if (value == "explicit") delta_rule = DeltaRule::Explicit;
        else throw DomainError("config: delta_rule must be eps_3_2 | eps_linear | explicit");
    } else if (key == "delta_value") delta_value = std::stod(value);
    else if (key == "delta_coeff") delta_coeff = std::stod(value);
    else if (key == "direction") direction = parse_list(value);
    else if (key == "seed_phase") seed_phase = std::stod(value);
    else if (key == "out") out = value;
    else if (key == "stride") stride = std::stoi(value);
    else if (key == "solver_tol") solver_tol = std::stod(value);
    else if (key == "max_fixed_point_iters") max_fixed_point_iters = std::stoi(value);
    else if (key == "eps_list") eps_list = parse_list(value);
    else if (key == "dt_reduced") dt_reduced = std::stod(value);
    else if (key == "delta_scale") delta_scale = std::stod(value);
    else if (key == "snapshot_times") snapshot_times = parse_list(value);
    else if (key == "assert_escape") assert_escape = parse_bool(value);
    else if (key == "assert_slope") assert_slope = parse_bool(value);
    else if (key == "slope_target") slope_target = std::stod(value);
    else if (key == "slope_tol") slope_tol = std::stod(value);
    else throw DomainError("config: unknown key '" + key + "'");
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        cfg.apply_override(line);
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

std::string ExperimentConfig::echo() const {
    std::ostringstream os;
    os.precision(15);
    os << "p = " << p << '\n';
    os << "N = " << N << '\n';
    os << "L = " << L << '\n';
    os << "M = " << M << '\n';
    os << "dt = " << dt << '\n';
    os << "t_end = " << t_end << '\n';
    os << "epsilon = " << epsilon << '\n';
    os << "delta_rule = "
       << (delta_rule == DeltaRule::Eps32 ? "eps_3_2"
                                          : delta_rule == DeltaRule::EpsLinear ? "eps_linear" : "explicit")
       << '\n';
    os << "delta_value = " << delta_value << '\n';
    os << "delta_coeff = " << delta_coeff << '\n';
    if (!direction.empty()) os << "direction = " << list_to_string(direction) << '\n';
    os << "seed_phase = " << seed_phase << '\n';
    os << "out = " << out << '\n';
    os << "stride = " << stride << '\n';
    os << "solver_tol = " << solver_tol << '\n';
    os << "max_fixed_point_iters = " << max_fixed_point_iters << '\n';
    os << "eps_list = " << list_to_string(eps_list) << '\n';
    os << "dt_reduced = " << dt_reduced << '\n';
    os << "delta_scale = " << delta_scale << '\n';
    if (!snapshot_times.empty()) os << "snapshot_times = " << list_to_string(snapshot_times) << '\n';
    os << "assert_escape = " << (assert_escape ? 1 : 0) << '\n';
    os << "assert_slope = " << (assert_slope ? 1 : 0) << '\n';
    os << "slope_target = " << slope_target << '\n';
    os << "slope_tol = " << slope_tol << '\n';
    return os.str();
}

} // namespace graphnls
