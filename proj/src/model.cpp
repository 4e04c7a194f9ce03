#include "boldwalk/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace boldwalk::model {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kSqrtPi = 1.7724538509055160272981674833411;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

} // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::subdiffusive: return "subdiffusive";
        case Regime::diffusive: return "diffusive";
        case Regime::superdiffusive: return "superdiffusive";
        case Regime::ballistic_edge: return "ballistic-edge";
        case Regime::ballistic: return "ballistic";
    }
    return "unknown";
}

double step_probability(std::int64_t z, double gamma) {
    require(z >= 1, "step_probability: z must be >= 1");
    require(std::isfinite(gamma), "step_probability: gamma must be finite");
    // z^g / (1 + z^g) = 1 / (1 + e^{-g log z}), stable for any g log z.
    const double t = gamma * std::log(static_cast<double>(z));
    return 1.0 / (1.0 + std::exp(-t));
}

RegimePrediction predict_regime(double gamma) {
    require(std::isfinite(gamma), "predict_regime: gamma must be finite");
    RegimePrediction out;
    out.gamma = gamma;
    if (gamma < 0.0) {
        out.nu = 1.0 / (2.0 - gamma);
        out.regime = Regime::subdiffusive;
        out.limit = "(1/(2nu))^nu";
    } else if (gamma == 0.0) {
        out.nu = 0.5;
        out.regime = Regime::diffusive;
        out.limit = "1/T^(1/2)";
    } else if (gamma < 0.5) {
        out.nu = 1.0 / (2.0 - 2.0 * gamma);
        out.regime = Regime::superdiffusive;
        out.limit = "(1/(2nu))^(2nu)/L^nu";
    } else if (gamma == 0.5) {
        out.nu = 1.0;
        out.regime = Regime::ballistic_edge;
        out.limit = "1/(4L+1)";
    } else {
        out.nu = 1.0;
        out.regime = Regime::ballistic;
        out.limit = "1";
    }
    return out;
}

double theta(double lambda) {
    require(lambda >= 0.0 && std::isfinite(lambda),
            "theta: lambda must be finite and >= 0");
    if (lambda > 350.0) {
        // arccosh(e^l) = l + log 2 - e^{-2l} + ...; the tail is below 1 ulp.
        return lambda + kLn2;
    }
    // arccosh(e^l) = log(e^l + sqrt(e^{2l} - 1)), written so that the small-l
    // regime suffers no cancellation: e^l - 1 = expm1(l), e^{2l} - 1 = expm1(2l).
    return std::log1p(std::expm1(lambda) + std::sqrt(std::expm1(2.0 * lambda)));
}

double log_cosh(double u) {
    require(std::isfinite(u), "log_cosh: argument must be finite");
    const double a = std::fabs(u);
    return a + std::log1p(std::exp(-2.0 * a)) - kLn2;
}

double laplace_exit_interval(double lambda, std::int64_t a, std::int64_t b) {
    require(a < 0 && 0 < b, "laplace_exit_interval: need a < 0 < b");
    require(lambda >= 0.0 && std::isfinite(lambda),
            "laplace_exit_interval: lambda must be finite and >= 0");
    const double th = theta(lambda);
    const double c = 0.5 * (static_cast<double>(a) + static_cast<double>(b));
    const double d = 0.5 * (static_cast<double>(b) - static_cast<double>(a));
    return std::exp(log_cosh(th * c) - log_cosh(th * d));
}

double laplace_m(double lambda, std::int64_t z) {
    require(z >= 1, "laplace_m: z must be >= 1");
    require(lambda >= 0.0 && std::isfinite(lambda),
            "laplace_m: lambda must be finite and >= 0");
    const double th = theta(lambda);
    return std::exp(log_cosh(th * static_cast<double>(z - 1)) -
                    log_cosh(th * static_cast<double>(z)));
}

double levy_pdf(double x) {
    require(x > 0.0 && std::isfinite(x), "levy_pdf: x must be finite and > 0");
    // (2 pi x^3)^{-1/2} e^{-1/(2x)}, evaluated in log form so large x is safe.
    const double log_pdf =
        -0.5 / x - 0.5 * std::log(2.0 * kSqrtPi * kSqrtPi) - 1.5 * std::log(x);
    return std::exp(log_pdf);
}

double levy_cdf(double x) {
    require(std::isfinite(x), "levy_cdf: x must be finite");
    if (x <= 0.0) return 0.0;
    return std::erfc(1.0 / std::sqrt(2.0 * x));
}

double limit_laplace_L(double lambda) {
    require(lambda >= 0.0 && std::isfinite(lambda),
            "limit_laplace_L: lambda must be finite and >= 0");
    return std::exp(-std::sqrt(2.0 * lambda));
}

double limit_laplace_T(double lambda) {
    require(lambda >= 0.0 && std::isfinite(lambda),
            "limit_laplace_T: lambda must be finite and >= 0");
    return std::exp(-log_cosh(std::sqrt(2.0 * lambda)));
}

double moment_prediction(double q, double gamma) {
    require(q > 0.0 && std::isfinite(q), "moment_prediction: q must be > 0");
    require(gamma > 0.0 && gamma < 0.5,
            "moment_prediction: gamma must lie in (0, 1/2)");
    const double nu = 1.0 / (2.0 - 2.0 * gamma);
    const double qn = q * nu;
    return std::pow(1.0 / (2.0 * nu * nu), qn) * std::tgamma(qn + 0.5) / kSqrtPi;
}

double limit_transform_to_reference(double z, double t, double gamma) {
    require(std::isfinite(z) && std::isfinite(t) && z >= 1.0 && t >= z,
            "limit_transform_to_reference: need 1 <= z <= t");
    require(gamma >= 0.0 && gamma <= 0.5,
            "limit_transform_to_reference: gamma must lie in [0, 1/2]");
    if (gamma == 0.0) return t / (z * z);
    if (gamma == 0.5) return (t / z - 1.0) / 4.0;
    const double nu = 1.0 / (2.0 - 2.0 * gamma);
    return t / (4.0 * nu * nu * std::pow(z, 1.0 / nu));
}

double deterministic_z_of_k(double k, double gamma) {
    require(k >= 1.0 && std::isfinite(k), "deterministic_z_of_k: k must be >= 1");
    require(gamma >= 0.0 && gamma < 1.0,
            "deterministic_z_of_k: gamma must lie in [0, 1)");
    const double e = 1.0 / (1.0 - gamma);
    return std::pow(1.0 - gamma, e) * std::pow(k, e);
}

double r_product(std::int64_t k, double lambda, double gamma) {
    require(k >= 1, "r_product: k must be >= 1");
    require(lambda > 0.0 && std::isfinite(lambda),
            "r_product: lambda must be finite and > 0");
    require(gamma >= 0.0 && gamma < 1.0, "r_product: gamma must lie in [0, 1)");
    const double kk = static_cast<double>(k);
    const double th = theta(lambda / (kk * kk));
    double log_r = 0.0;
    for (std::int64_t i = 1; i < k; ++i) {
        const double z = deterministic_z_of_k(static_cast<double>(i), gamma);
        log_r += std::log1p(std::exp(-2.0 * th * (z - 1.0))) -
                 std::log1p(std::exp(-2.0 * th * z));
    }
    return std::exp(log_r);
}

void LaplaceGrid::validate() const {
    require(lambdas.size() == values.size() && !lambdas.empty(),
            "LaplaceGrid: lambdas and values must be nonempty and same size");
    double prev_l = 0.0;
    double prev_v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        require(lambdas[i] > prev_l, "LaplaceGrid: lambdas must increase");
        require(values[i] > 0.0 && values[i] <= 1.0,
                "LaplaceGrid: values must lie in (0, 1]");
        require(values[i] <= prev_v, "LaplaceGrid: values must be nonincreasing");
        prev_l = lambdas[i];
        prev_v = values[i];
    }
}

LaplaceGrid make_laplace_grid(const std::function<double(double)>& transform,
                              std::vector<double> lambdas) {
    LaplaceGrid grid;
    grid.lambdas = std::move(lambdas);
    grid.values.reserve(grid.lambdas.size());
    for (double l : grid.lambdas) grid.values.push_back(transform(l));
    grid.validate();
    return grid;
}

} // namespace boldwalk::model
