#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>

#include "wn/dgp.hpp"
#include "wn/wntest.hpp"

namespace wn {

enum class TestKind { hong, box_pierce };

struct RawPipeline {};
struct FitArmaPipeline {
    int p = 1;
    int q = 0;
};
struct FitFarimaPipeline {
    int p = 0;
    int q = 0;
    MeanMode mean_mode = MeanMode::known_zero;
};
using Pipeline = std::variant<RawPipeline, FitArmaPipeline, FitFarimaPipeline>;

struct McConfig {
    DgpSpec dgp;
    int n = 1000;
    int reps = 1000;
    TestKind test = TestKind::hong;
    KernelKind kernel = KernelKind::bartlett;
    std::optional<int> m;    // explicit lag truncation; otherwise the rule below
    double m_rule_c = 3.0;   // m = ceil(c * n^{1/3})
    TestMode mode = TestMode::finite_sample;
    int df_adjust = 0;       // box_pierce only
    bool demean = true;
    double level = 0.05;
    Pipeline pipeline = RawPipeline{};
    std::uint64_t seed = 0;
    int threads = 0;         // 0 = hardware concurrency
};

struct McReport {
    double rejection_rate = 0.0;
    double ci_lo = 0.0; // Wilson 95% interval
    double ci_hi = 0.0;
    int reps_completed = 0;
    double mean_z = 0.0;
    double var_z = 0.0;
    int failures = 0;
};

struct BinomialSummary {
    double rate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    int n = 0;
};

// Thrown when more than 2% of replications fail; carries what completed.
class ExperimentInvalidError : public std::runtime_error {
public:
    ExperimentInvalidError(const std::string& what, McReport partial_report)
        : std::runtime_error(what), partial(partial_report) {}
    McReport partial;
};

int resolve_m(const McConfig& cfg);

// Proportion of true flags with a Wilson 95% score interval. Throws on empty
// input.
BinomialSummary rejection_rate(const std::vector<bool>& decisions);

// Simulate -> (optionally fit and take residuals) -> test, one seeded
// replication at a time. Deterministic given cfg.seed regardless of thread
// count; failed replications are excluded and counted.
McReport run_experiment(const McConfig& cfg);

} // namespace wn
