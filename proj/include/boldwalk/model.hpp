// Closed-form quantities for the max-reinforced ("bold") random walk.
//
// The walk x(t) on the integers remembers z(t) = max_{s<=t} |x(s)|. Away from
// the running record it steps like a simple symmetric walk; at |x| = z it
// pushes outward with probability p(z) = z^gamma / (1 + z^gamma). This header
// collects the exact predictions that the simulators are tested against:
// scaling exponents per regime, Laplace transforms of interval exit times,
// the one-sided Levy limit law, and the deterministic cycle-count asymptotics.

#ifndef BOLDWALK_MODEL_HPP
#define BOLDWALK_MODEL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace boldwalk::model {

enum class Regime {
    subdiffusive,      // gamma < 0
    diffusive,         // gamma = 0 (plain symmetric walk)
    superdiffusive,    // 0 < gamma < 1/2
    ballistic_edge,    // gamma = 1/2 (ballistic with random speed)
    ballistic,         // gamma > 1/2 (asymptotically unit speed)
};

const char* regime_name(Regime r);

struct RegimePrediction {
    double gamma;
    double nu;            // z(t) ~ t^nu
    Regime regime;
    std::string limit;    // descriptor of the law of lim z(t)/t^nu
};

// Probability of the outward step when the walker sits on its record |x| = z.
// Computed as a logistic in gamma*log(z), which is stable for any magnitude.
double step_probability(std::int64_t z, double gamma);

// Scaling exponent and limit-law tag for a given gamma.
RegimePrediction predict_regime(double gamma);

// theta(lambda) = arccosh(e^lambda), the positive root of cosh(theta) = e^lambda.
// Evaluated via expm1/log1p so small lambda does not cancel:
//   theta = log1p(expm1(lambda) + sqrt(expm1(2 lambda))).
double theta(double lambda);

// log(cosh(u)) without overflow: |u| + log1p(e^{-2|u|}) - log 2.
double log_cosh(double u);

// E[e^{-lambda tau}] for the exit time tau of a simple symmetric walk started
// at 0 from the interval [a, b] with a < 0 < b:
//   cosh(theta (a+b)/2) / cosh(theta (b-a)/2).
double laplace_exit_interval(double lambda, std::int64_t a, std::int64_t b);

// E[e^{-lambda m}] for the lazy-phase journey length m(z): the exit time of a
// symmetric walk started at z-1 from [-z, z]. Equals
//   cosh(theta (z-1)) / cosh(theta z).
double laplace_m(double lambda, std::int64_t z);

// One-sided Levy law of index 1/2 and unit scale: the limit of L(k), the
// normalized lazy time per cycle. Density (2 pi x^3)^{-1/2} e^{-1/(2x)};
// its Laplace transform is e^{-sqrt(2 lambda)}.
double levy_pdf(double x);
double levy_cdf(double x);
double limit_laplace_L(double lambda);

// Laplace transform 1/cosh(sqrt(2 lambda)) of T, the exit time of a standard
// Brownian motion from [-1, 1]; the diffusive-regime limit of t/z(t)^2.
double limit_laplace_T(double lambda);

// lim_t E[(z(t)/t^nu)^q] for the superdiffusive regime 0 < gamma < 1/2:
//   (1/(2 nu^2))^{q nu} * Gamma(q nu + 1/2) / Gamma(1/2).
double moment_prediction(double q, double gamma);

// Map an observed (z, t) pair onto the regime's reference variable:
// gamma = 0      -> T_hat = t / z^2
// 0 < gamma < 1/2 -> L_hat = t / ((2 nu)^2 z^{1/nu})
// gamma = 1/2    -> L_hat = (t/z - 1) / 4
double limit_transform_to_reference(double z, double t, double gamma);

// Deterministic cycle growth z(k) ~ (1-gamma)^{1/(1-gamma)} k^{1/(1-gamma)}
// for 0 <= gamma < 1.
double deterministic_z_of_k(double k, double gamma);

// Finite-k product R(k) = prod_{i=1}^{k-1} [1 + e^{-2 theta_k (z(i)-1)}]
//                                        / [1 + e^{-2 theta_k z(i)}]
// with theta_k = theta(lambda/k^2) and z(i) the deterministic profile above.
// R(k) -> 2 / (1 + e^{-2 sqrt(2 lambda)}) at gamma = 0 and -> 1 for
// 0 < gamma < 1.
double r_product(std::int64_t k, double lambda, double gamma);

// A tabulated Laplace transform: lambdas strictly increasing and positive,
// values in (0, 1] and nonincreasing, as any completely monotone transform
// of a nonnegative variable must be.
struct LaplaceGrid {
    std::vector<double> lambdas;
    std::vector<double> values;

    // Throws std::invalid_argument when the table violates the invariants.
    void validate() const;
};

LaplaceGrid make_laplace_grid(const std::function<double(double)>& transform,
                              std::vector<double> lambdas);

} // namespace boldwalk::model

#endif // BOLDWALK_MODEL_HPP
