// Verification suites: every exact identity and statistical law the toolkit
// claims, checked end to end with pinned budgets and tolerances. The same
// checks back the `verify` CLI subcommand and the acceptance binary.

#ifndef BOLDWALK_VERIFY_HPP
#define BOLDWALK_VERIFY_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace boldwalk::verify {

struct VerifyConfig {
    std::uint64_t seed = 20260823;
    int threads = 1;

    // Statistical tolerances (not the 3-SE style self-scaling ones) are
    // multiplied by this; handy when running with reduced budgets.
    double tolerance_scale = 1.0;

    // Sample budgets.
    std::int64_t sampler_draws = 100'000;  // exit-time / T sampler / journeys
    std::int64_t levy_draws = 1'000'000;   // Levy reference sampler
    std::int64_t regime_walkers = 10'000;  // per regime ensemble
    std::int64_t zkf_replicas = 1'000;     // cycle-growth median check
    std::int64_t zkf_k = 1'000;
    std::int64_t equivalence_walkers = 5'000;
    int bootstrap_resamples = 200;

    // Horizons.
    std::int64_t t_diffusive = 1'000'000;   // gamma = 0 ensemble
    std::int64_t t_super = 10'000'000;      // gamma = 1/4 ensemble
    std::int64_t t_edge = 1'000'000;        // gamma = 1/2 ensemble
    std::int64_t equivalence_t = 10'000;    // direct-vs-cycles comparison
};

struct Check {
    std::string name;
    bool pass;
    double measured;
    std::string detail; // target, tolerance and context, human-readable
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;

    bool all_pass() const;
    const Check* find(const std::string& name) const;
};

// Closed-form identities: theta, laplace_m at z = 1, the telescoping
// product, and the two R(k) limits.
SuiteResult run_analytic(const VerifyConfig& cfg);

// Exit-time pmf vs transform, the m sampler against the exact pmf, and the
// two reference samplers (Levy, Brownian exit time T).
SuiteResult run_oracle(const VerifyConfig& cfg);

// Journey laws: active-run distributions, the exponential-martingale (Wald)
// identity, and cycle-recursion growth checks.
SuiteResult run_journeys(const VerifyConfig& cfg);

// Long-horizon scaling for one regime; gamma must be 0, 0.25 or 0.5.
SuiteResult run_regimes(const VerifyConfig& cfg, double gamma);

// Direct-vs-cycles law equivalence plus determinism and replay.
SuiteResult run_equivalence(const VerifyConfig& cfg);

// Suite lookup by name ("analytic", "oracle", "journeys", "regimes",
// "equivalence", "all"). For "regimes" (and "all") every regime gamma is
// included unless `gamma` is non-negative. Throws on unknown names.
std::vector<SuiteResult> run_suites(const std::string& name,
                                    const VerifyConfig& cfg,
                                    double gamma = -1.0);

void print_suite(std::ostream& os, const SuiteResult& result);

} // namespace boldwalk::verify

#endif // BOLDWALK_VERIFY_HPP
