#ifndef HOMOG_HARNESS_HPP
#define HOMOG_HARNESS_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "homog/analysis.hpp"
#include "homog/cell.hpp"
#include "homog/coefficients.hpp"
#include "homog/nodal.hpp"
#include "homog/twoscale.hpp"

namespace homog {

struct FamilySpec {
    Family family = Family::TrigProduct;
    double mu = 0.5;
    double angle = 0.0;
    SymMatrix2 a0 = SymMatrix2::identity();  // Constant family

    CoefficientField make() const;
};

struct BoundarySpec {
    std::string name = "mixed";  // "mixed": x1 + kappa (x1^2 - x2^2); "linear": x1
    double kappa = 0.3;

    ScalarFn make() const;
};

struct ResolutionRule {
    double factor = 16.0;     // h <= eps / factor
    double h_cap = 1.0 / 64;  // h <= h_cap
};

struct ExperimentConfig {
    FamilySpec family;
    std::vector<double> eps_list{0.25, 0.125, 0.0625, 0.03125};
    int cell_n = 256;
    double cell_tol = 1e-10;
    double box_half_width = 2.5;
    ResolutionRule resolution;
    BoundarySpec boundary;
    std::vector<std::string> analyses{"approx", "doubling", "nodal"};
    double solver_tol = 1e-10;
    std::string out_dir = "out";
    std::uint64_t seed = 12345;

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate() const;

    bool analysis_enabled(const std::string& name) const;
    bool cell_only() const;
    BoxGrid grid_for(double eps) const;
};

ExperimentConfig load_config(const std::string& path);

// One epsilon row of a sweep; analysis slots are filled per the config toggles.
struct SweepRow {
    double eps = 0.0;
    int m = 0;
    double h = 0.0;
    bool ok = false;
    std::string error;
    double wall_ms = 0.0;

    std::optional<ApproximationReport> approx;
    std::optional<DoublingProfile> ball_profile;
    std::optional<DoublingProfile> ellipsoid_profile;
    std::vector<DoublingProfile> translated;  // 5x5 centers, r_max = 1/2
    std::optional<ThreeSpheresProfile> psi;
    std::optional<NodalReport> nodal;
};

struct SweepReport {
    ExperimentConfig config;
    ValidationReport validation;
    HomogenizedTensor a_hat;
    CorrectorSet chi;
    bool cell_only_report = false;
    std::vector<SweepRow> rows;

    double rate_slope = std::numeric_limits<double>::quiet_NaN();
    double f_main_trend_slope = std::numeric_limits<double>::quiet_NaN();

    bool all_ok() const;
    nlohmann::json summary() const;
};

// Solve + analyze every epsilon (independent rows run on up to `jobs`
// threads; results merge in eps order, so reruns are bit-identical).
// A nonempty dump_dir makes each row dump its solution field and nodal
// curve as it completes.
SweepReport run_sweep(const ExperimentConfig& config, int jobs = 1,
                      const std::string& dump_dir = {});

// CSV + JSON persistence. CSV bodies are deterministic; wall times only
// appear in the summary JSON metadata block.
void write_sweep_outputs(const SweepReport& report, const std::string& out_dir,
                         bool dump_fields = false);

// 17-significant-digit float formatting shared by every CSV/JSON writer.
std::string fmt17(double v);

int jobs_from_env();

}  // namespace homog

#endif
