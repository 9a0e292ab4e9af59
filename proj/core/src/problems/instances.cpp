#include "ddopt/problems/instances.hpp"

#include "ddopt/core/rng.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace ddopt {

namespace {

double sigmoid(double s) {
    if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
    const double e = std::exp(s);
    return e / (1.0 + e);
}

// Newton's method for argmin_y (1/n) sum_i log(1 + exp(-b_i <a_i', y>)) + (lambda/2)||y||^2 + (mu/2)||y||^2
// over the responded population a_i' = a_i + gamma_u x.
Point logistic_population_minimizer(const Population& pop, double gamma_u, double ridge, const Point& deployed) {
    const Eigen::Index d = pop.features.cols();
    const double n = static_cast<double>(pop.features.rows());
    const Matrix a = pop.features.rowwise() + (gamma_u * deployed).transpose();
    auto objective = [&](const Point& y) {
        double v = 0.5 * ridge * y.squaredNorm();
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const double s = -pop.labels[i] * a.row(i).dot(y);
            v += (s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s))) / n;
        }
        return v;
    };
    Point y = Point::Zero(d);
    for (int it = 0; it < 100; ++it) {
        Point g = ridge * y;
        Matrix h = ridge * Matrix::Identity(d, d);
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            const double b = pop.labels[i];
            const double s = -b * a.row(i).dot(y);
            const double p = sigmoid(s);
            g += (-b * p / n) * a.row(i).transpose();
            h += (p * (1.0 - p) / n) * a.row(i).transpose() * a.row(i);
        }
        const Point step = h.ldlt().solve(g);
        const double f0 = objective(y);
        double t = 1.0;
        while (t > 1e-12 && objective(y - t * step) > f0 - 0.25 * t * g.dot(step)) t *= 0.5;
        y -= t * step;
        if (t * step.norm() <= 1e-14 * (1.0 + y.norm())) break;
    }
    return y;
}

}  // namespace

DecisionProblem quad1d(double gamma, double sigma, double m0, Regularizer reg) {
    if (!(sigma >= 0.0)) throw ParameterError("quad1d: sigma must be >= 0");
    Point base(1);
    base << m0;
    Matrix shift(1, 1);
    shift << gamma;
    Matrix cov(1, 1);
    cov << sigma * sigma;
    auto p = make_problem(Loss::quadratic(), reg, DistributionMap::gaussian_location(base, shift, cov),
                          Point::Zero(1));
    std::ostringstream os;
    os << "quad1d(" << gamma << "," << sigma << ")";
    p.name = os.str();
    return p;
}

DecisionProblem quadNd(Eigen::Index d, double gamma, double kappa, double sigma, Regularizer reg) {
    if (d < 1) throw ParameterError("quadNd: d must be >= 1");
    if (!(kappa >= 1.0)) throw ParameterError("quadNd: kappa must be >= 1");
    if (!(sigma >= 0.0)) throw ParameterError("quadNd: sigma must be >= 0");
    Eigen::VectorXd w(d);
    for (Eigen::Index i = 0; i < d; ++i)
        w[i] = d == 1 ? 1.0 : std::pow(kappa, static_cast<double>(i) / static_cast<double>(d - 1));
    const Matrix shift = gamma * Matrix::Identity(d, d);
    const Matrix cov = (sigma * sigma / static_cast<double>(d)) * Matrix::Identity(d, d);
    auto p = make_problem(Loss::weighted_quadratic(w), reg,
                          DistributionMap::gaussian_location(Point::Ones(d), shift, cov), Point::Zero(d));
    std::ostringstream os;
    os << "quadNd(" << d << "," << gamma << "," << kappa << "," << sigma << ")";
    p.name = os.str();
    return p;
}

Population synthetic_population(std::int64_t n_agents, Eigen::Index d, std::uint64_t seed) {
    if (n_agents < 1 || d < 1) throw ParameterError("synthetic_population: need n_agents >= 1 and d >= 1");
    const CounterRng rng(seed);
    Population pop;
    pop.features.resize(n_agents, d);
    pop.labels.resize(n_agents);
    Eigen::VectorXd w(d);
    for (Eigen::Index j = 0; j < d; ++j) w[j] = j % 2 == 0 ? 1.0 : -1.0;
    std::uint64_t k = 0;
    for (std::int64_t i = 0; i < n_agents; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) pop.features(i, j) = rng.normal(k++);
        const double score = pop.features.row(i).dot(w) + 0.5 * rng.normal(k++);
        pop.labels[i] = score >= 0.0 ? 1.0 : -1.0;
    }
    return pop;
}

Population load_population_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("load_population_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParameterError("load_population_csv: missing header");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    if (header.size() < 2 || header.back() != "b") throw ParameterError("load_population_csv: header must be a_1..a_d,b");
    for (std::size_t j = 0; j + 1 < header.size(); ++j) {
        if (header[j] != "a_" + std::to_string(j + 1)) throw ParameterError("load_population_csv: header must be a_1..a_d,b");
    }
    const auto d = static_cast<Eigen::Index>(header.size() - 1);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (static_cast<Eigen::Index>(row.size()) != d + 1)
            throw ParameterError("load_population_csv: wrong column count in row " + std::to_string(rows.size() + 1));
        rows.push_back(std::move(row));
    }
    Population pop;
    pop.features.resize(static_cast<Eigen::Index>(rows.size()), d);
    pop.labels.resize(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (Eigen::Index j = 0; j < d; ++j) pop.features(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
        pop.labels[static_cast<Eigen::Index>(i)] = rows[i].back();
    }
    return pop;
}

DecisionProblem strategic_logistic(Population pop, double gamma_u, double lambda, double x_bound, Regularizer reg) {
    if (!(x_bound > 0.0)) throw ParameterError("strategic_logistic: x_bound must be > 0");
    const double base_bound = pop.features.rowwise().norm().maxCoeff();
    const double feature_bound = base_bound + gamma_u * x_bound;
    const double beta = Loss::logistic_beta_heuristic(feature_bound, x_bound);
    auto dmap = DistributionMap::strategic_response(pop.features, pop.labels, gamma_u);
    const Eigen::Index d = pop.features.cols();
    auto p = make_problem(Loss::logistic_ridge(lambda, feature_bound, beta), reg, std::move(dmap), Point::Zero(d), 1);
    if (reg.kind() == Regularizer::Kind::zero || reg.kind() == Regularizer::Kind::scaled_squared_norm) {
        const double ridge = lambda + reg.mu();
        p.static_solver = [pop = std::move(pop), gamma_u, ridge](const Point& deployed) {
            return logistic_population_minimizer(pop, gamma_u, ridge, deployed);
        };
    }
    std::ostringstream os;
    os << "strategic-logistic(" << p.dmap.features().rows() << "," << gamma_u << "," << lambda << ")";
    p.name = os.str();
    return p;
}

DecisionProblem strategic_logistic(std::int64_t n_agents, double gamma_u, double lambda, Eigen::Index d,
                                   std::uint64_t seed, Regularizer reg) {
    return strategic_logistic(synthetic_population(n_agents, d, seed), gamma_u, lambda, 5.0, reg);
}

}  // namespace ddopt
