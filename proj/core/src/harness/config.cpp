#include "ddopt/harness/config.hpp"

#include "ddopt/harness/registry.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace ddopt {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ParameterError("config: key '" + key + "' expects a number, got '" + v + "'");
    }
}

std::int64_t to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ParameterError("config: key '" + key + "' expects an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ParameterError("config: key '" + key + "' expects a boolean, got '" + v + "'");
}

void apply_problem(ProblemSpec& s, const std::string& k, const std::string& v) {
    if (k == "name") s.name = v;
    else if (k == "gamma" || k == "gamma_u") s.gamma = to_double(k, v);
    else if (k == "sigma") s.sigma = to_double(k, v);
    else if (k == "m0") s.m0 = to_double(k, v);
    else if (k == "d") s.d = to_int(k, v);
    else if (k == "kappa") s.kappa = to_double(k, v);
    else if (k == "n_agents") s.n_agents = to_int(k, v);
    else if (k == "lambda") s.lambda = to_double(k, v);
    else if (k == "x_bound") s.x_bound = to_double(k, v);
    else if (k == "population_csv") s.population_csv = v;
    else if (k == "population_seed") s.population_seed = static_cast<std::uint64_t>(to_int(k, v));
    else if (k == "reg") s.reg.kind = v;
    else if (k == "reg_mu") s.reg.mu = to_double(k, v);
    else if (k == "reg_lambda") s.reg.lambda = to_double(k, v);
    else if (k == "reg_lo") s.reg.lo = to_double(k, v);
    else if (k == "reg_hi") s.reg.hi = to_double(k, v);
    else if (k == "reg_radius") s.reg.radius = to_double(k, v);
    else if (k == "x0") s.x0 = parse_double_list(v);
    else throw ParameterError("config: unknown key [problem] " + k);
}

void apply_algorithm(AlgorithmSpec& s, const std::string& k, const std::string& v) {
    if (k == "name") s.name = v;
    else if (k == "wrap") s.wrap = v == "none" ? "" : v;
    else if (k == "eta") s.eta = to_double(k, v);
    else if (k == "schedule") s.schedule = v;
    else if (k == "schedule_a") s.schedule_a = to_double(k, v);
    else if (k == "batch") s.batch = to_int(k, v);
    else if (k == "average") s.average = to_bool(k, v);
    else if (k == "model") s.model = v;
    else if (k == "inner_J") s.inner_J = to_int(k, v);
    else if (k == "gamma0") s.gamma0 = to_double(k, v);
    else if (k == "eps") s.eps = to_double(k, v);
    else if (k == "Delta") s.Delta = to_double(k, v);
    else throw ParameterError("config: unknown key [algorithm] " + k);
}

void apply_run(RunSpec& s, const std::string& k, const std::string& v) {
    if (k == "seeds") s.seeds = parse_seed_list(v);
    else if (k == "budget") s.budget = to_int(k, v);
    else if (k == "target") {
        if (v == "distance") s.target = Target::distance;
        else if (v == "gap") s.target = Target::gap;
        else throw ParameterError("config: target must be distance or gap");
    } else if (k == "sweep_axis") s.sweep_axis = v == "none" ? "" : v;
    else if (k == "sweep_grid") s.sweep_grid = parse_double_list(v);
    else if (k == "out_dir") s.out_dir = v;
    else if (k == "record_every") s.record_every = to_int(k, v);
    else if (k == "gap_samples") s.gap_samples = to_int(k, v);
    else if (k == "stop_tolerance") s.stop_tolerance = to_double(k, v);
    else if (k == "threads") s.threads = static_cast<int>(to_int(k, v));
    else throw ParameterError("config: unknown key [run] " + k);
}

ExperimentConfig from_tree(const pt::ptree& tree) {
    ExperimentConfig cfg;
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty()) throw ParameterError("config: key '" + section + "' outside a section");
        for (const auto& [key, value] : body) {
            const std::string v = trim(value.get_value<std::string>());
            if (section == "problem") apply_problem(cfg.problem, key, v);
            else if (section == "algorithm") apply_algorithm(cfg.algorithm, key, v);
            else if (section == "run") apply_run(cfg.run, key, v);
            else throw ParameterError("config: unknown section [" + section + "]");
        }
    }
    return cfg;
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    for (const auto& part : split(text, ',')) {
        const auto dash = part.find('-');
        if (dash != std::string::npos && dash > 0) {
            const std::int64_t a = to_int("seeds", trim(part.substr(0, dash)));
            const std::int64_t b = to_int("seeds", trim(part.substr(dash + 1)));
            if (a < 0 || b < a) throw ParameterError("config: bad seed range '" + part + "'");
            for (std::int64_t s = a; s <= b; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
        } else {
            const std::int64_t s = to_int("seeds", part);
            if (s < 0) throw ParameterError("config: seeds must be non-negative");
            seeds.push_back(static_cast<std::uint64_t>(s));
        }
    }
    return seeds;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(to_double("list", part));
    return out;
}

std::uint64_t seed_offset_from_env() {
    const char* v = std::getenv("DDOPT_SEED_OFFSET");
    if (v == nullptr || *v == '\0') return 0;
    const std::int64_t off = to_int("DDOPT_SEED_OFFSET", trim(v));
    if (off < 0) throw ParameterError("DDOPT_SEED_OFFSET must be non-negative");
    return static_cast<std::uint64_t>(off);
}

ExperimentConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
    return from_tree(tree);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate(const ExperimentConfig& cfg) {
    const auto probs = problem_names();
    if (std::find(probs.begin(), probs.end(), cfg.problem.name) == probs.end())
        throw ParameterError("config: unknown problem '" + cfg.problem.name + "'");
    const auto algos = algorithm_names();
    if (std::find(algos.begin(), algos.end(), cfg.algorithm.name) == algos.end())
        throw ParameterError("config: unknown algorithm '" + cfg.algorithm.name + "'");
    if (!cfg.algorithm.wrap.empty() && cfg.algorithm.wrap != "restart-geo" && cfg.algorithm.wrap != "restart-minibatch")
        throw ParameterError("config: unknown wrapper '" + cfg.algorithm.wrap + "'");
    if (cfg.run.seeds.empty()) throw ParameterError("config: seeds must be non-empty");
    std::set<std::uint64_t> uniq(cfg.run.seeds.begin(), cfg.run.seeds.end());
    if (uniq.size() != cfg.run.seeds.size()) throw ParameterError("config: seeds must be distinct");
    if (cfg.run.budget < 0) throw ParameterError("config: budget must be >= 0");
    if (cfg.run.record_every < 1) throw ParameterError("config: record_every must be >= 1");
    if (!cfg.run.sweep_axis.empty()) {
        if (cfg.run.sweep_axis != "gamma" && cfg.run.sweep_axis != "eps")
            throw ParameterError("config: sweep_axis must be gamma or eps");
        if (cfg.run.sweep_grid.empty()) throw ParameterError("config: sweep_grid must be non-empty");
    }
}

}  // namespace ddopt
