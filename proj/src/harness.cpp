#include "homog/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "homog/errors.hpp"

namespace homog {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int jobs_from_env() {
    if (const char* s = std::getenv("HOMOG_LAB_JOBS")) {
        const int j = std::atoi(s);
        if (j >= 1) return j;
    }
    return 1;
}

// ------------------------------------------------------------- config ----

CoefficientField FamilySpec::make() const {
    switch (family) {
        case Family::Constant: return CoefficientField::constant(a0);
        case Family::Laminate: return CoefficientField::laminate(mu);
        case Family::TrigProduct: return CoefficientField::trig_product(mu);
        case Family::RotatedLaminate: return CoefficientField::rotated_laminate(mu, angle);
    }
    throw config_error("bad family spec");
}

ScalarFn BoundarySpec::make() const {
    if (name == "mixed") {
        const double k = kappa;
        return [k](Point2 p) { return p.x + k * (p.x * p.x - p.y * p.y); };
    }
    if (name == "linear") return [](Point2 p) { return p.x; };
    if (name == "quadratic") return [](Point2 p) { return p.x * p.x - p.y * p.y; };
    throw config_error("unknown boundary spec: " + name);
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    if (j.contains("family")) {
        const json& f = j.at("family");
        c.family.family = family_from_name(f.at("family").get<std::string>());
        c.family.mu = f.value("mu", 0.5);
        c.family.angle = f.value("angle", 0.0);
        if (c.family.family == Family::Constant) {
            c.family.a0 = {f.value("a11", 1.0), f.value("a12", 0.0), f.value("a22", 1.0)};
        }
    }
    if (j.contains("eps_list")) c.eps_list = j.at("eps_list").get<std::vector<double>>();
    c.cell_n = j.value("cell_n", c.cell_n);
    c.cell_tol = j.value("cell_tol", c.cell_tol);
    c.box_half_width = j.value("box_half_width", c.box_half_width);
    if (j.contains("resolution")) {
        c.resolution.factor = j.at("resolution").value("factor", c.resolution.factor);
        c.resolution.h_cap = j.at("resolution").value("h_cap", c.resolution.h_cap);
    }
    if (j.contains("boundary")) {
        c.boundary.name = j.at("boundary").value("name", c.boundary.name);
        c.boundary.kappa = j.at("boundary").value("kappa", c.boundary.kappa);
    }
    if (j.contains("analyses")) c.analyses = j.at("analyses").get<std::vector<std::string>>();
    c.solver_tol = j.value("solver_tol", c.solver_tol);
    c.out_dir = j.value("out_dir", c.out_dir);
    c.seed = j.value("seed", c.seed);
    c.validate();
    return c;
}

json ExperimentConfig::to_json() const {
    json f;
    f["family"] = family_name(family.family);
    if (family.family == Family::Constant) {
        f["a11"] = family.a0.a11;
        f["a12"] = family.a0.a12;
        f["a22"] = family.a0.a22;
    } else {
        f["mu"] = family.mu;
        if (family.family == Family::RotatedLaminate) f["angle"] = family.angle;
    }
    json j;
    j["family"] = f;
    j["eps_list"] = eps_list;
    j["cell_n"] = cell_n;
    j["cell_tol"] = cell_tol;
    j["box_half_width"] = box_half_width;
    j["resolution"] = {{"factor", resolution.factor}, {"h_cap", resolution.h_cap}};
    j["boundary"] = {{"name", boundary.name}, {"kappa", boundary.kappa}};
    j["analyses"] = analyses;
    j["solver_tol"] = solver_tol;
    j["out_dir"] = out_dir;
    j["seed"] = seed;
    return j;
}

void ExperimentConfig::validate() const {
    if (eps_list.empty() && !cell_only())
        throw config_error("eps_list must not be empty");
    for (size_t k = 0; k < eps_list.size(); ++k) {
        if (!(eps_list[k] > 0.0)) throw config_error("eps values must be positive");
        if (k > 0 && !(eps_list[k] < eps_list[k - 1]))
            throw config_error("eps_list must be strictly decreasing");
    }
    if (resolution.factor < 16.0)
        throw config_error("resolution rule violated: factor must be >= 16 so h <= eps/16");
    if (!(resolution.h_cap > 0.0)) throw config_error("h_cap must be positive");
    if (box_half_width < 2.25)
        throw config_error("experiment box half-width must be >= 2.25 (B_2 analysis region)");
    if (cell_n < 64 || cell_n > 1024 || (cell_n & (cell_n - 1)) != 0)
        throw config_error("cell_n must be a power of two in [64, 1024]");
    if (!(cell_tol > 0.0 && cell_tol <= 1e-6)) throw config_error("cell_tol must lie in (0, 1e-6]");
    if (!(solver_tol > 0.0 && solver_tol <= 1e-8))
        throw config_error("solver_tol must lie in (0, 1e-8]");
    for (const auto& a : analyses)
        if (a != "approx" && a != "doubling" && a != "nodal" && a != "cell" && a != "cell-only")
            throw config_error("unknown analysis toggle: " + a);
    boundary.make();  // rejects unknown boundary names
}

bool ExperimentConfig::analysis_enabled(const std::string& name) const {
    if (cell_only()) return false;
    for (const auto& a : analyses)
        if (a == name) return true;
    return false;
}

bool ExperimentConfig::cell_only() const {
    for (const auto& a : analyses)
        if (a == "cell" || a == "cell-only") return true;
    return false;
}

BoxGrid ExperimentConfig::grid_for(double eps) const {
    const double h_target = std::min(eps / resolution.factor, resolution.h_cap);
    const int cells = int(std::ceil(2.0 * box_half_width / h_target - 1e-9));
    const BoxGrid g(box_half_width, cells + 1);
    if (g.spacing() > eps / 16.0 * (1.0 + 1e-12))
        throw config_error("resolution rule violated for eps = " + fmt17(eps));
    return g;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw config_error(std::string("malformed config JSON: ") + e.what());
    }
    return ExperimentConfig::from_json(j);
}

// -------------------------------------------------------------- sweep ----

namespace {

struct RowContext {
    const ExperimentConfig* cfg;
    const CoefficientField* field;
    const CorrectorSet* chi;
    const HomogenizedTensor* a_hat;
    const DiscreteField* u0_fine;
    double lambda;
    std::string dump_dir;
};

void dump_nodal_curve(const NodalCurve& curve, const std::string& path) {
    std::ofstream os(path);
    os << "x0,y0,x1,y1\n";
    for (const auto& s : curve.segments)
        os << fmt17(s.a.x) << "," << fmt17(s.a.y) << "," << fmt17(s.b.x) << "," << fmt17(s.b.y)
           << "\n";
}

SweepRow run_row(const RowContext& ctx, size_t index) {
    const ExperimentConfig& cfg = *ctx.cfg;
    const double eps = cfg.eps_list[index];
    SweepRow row;
    row.eps = eps;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const BoxGrid grid = cfg.grid_for(eps);
        row.m = grid.m;
        row.h = grid.spacing();
        const ScalarFn g = cfg.boundary.make();
        const DiscreteField u_eps =
            solve_dirichlet(*ctx.field, eps, grid, g, nullptr, cfg.solver_tol);

        DiscreteField u0;
        if ((ctx.u0_fine->grid().m - 1) % (grid.m - 1) == 0)
            u0 = restrict_nested(*ctx.u0_fine, grid);
        else
            u0 = homogenized_solution(*ctx.a_hat, grid, g, nullptr, cfg.solver_tol);

        if (cfg.analysis_enabled("approx")) {
            const DiscreteField expansion = corrected_expansion(u0, *ctx.chi, eps);
            row.approx = approximation_report(u_eps, u0, expansion, eps);
        }
        if (cfg.analysis_enabled("doubling")) {
            const double h = grid.spacing();
            const double lam = ctx.lambda;
            const int depth =
                std::max(1, int(std::floor(std::log2(1.0 / std::max(8.0 * h, 1.0 / 64)) + 1e-9)));
            DoublingProfile ball = doubling_profile(u_eps, {0, 0}, AverageShape::Ball, 1.0, depth);
            ball.n_constant = doubling_constant(u_eps, lam);
            row.ball_profile = std::move(ball);
            DoublingProfile ell = doubling_profile(u_eps, {0, 0}, AverageShape::Ellipsoid, 1.0,
                                                   depth, ctx.a_hat->a_hat);
            ell.n_constant = row.ball_profile->n_constant;
            row.ellipsoid_profile = std::move(ell);
            // translated centers in B_{sqrt(lambda)/2}, 5x5, r_max = 1/2
            const int depth_t =
                std::max(1, int(std::floor(std::log2(0.5 / std::max(8.0 * h, 1.0 / 64)) + 1e-9)));
            const double c = std::sqrt(lam) / (2.0 * std::sqrt(2.0));
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b) {
                    const Point2 ctr{-c + a * c / 2.0, -c + b * c / 2.0};
                    row.translated.push_back(
                        doubling_profile(u_eps, ctr, AverageShape::Ball, 0.5, depth_t));
                }
            row.psi = three_spheres_profile(
                u_eps, std::log2(std::max(8.0 * h, 1.0 / 16)), 0.0, 17);
        }
        if (cfg.analysis_enabled("nodal")) {
            const NodalCurve curve = extract_nodal(u_eps);
            NodalReport rep;
            rep.eps = eps;
            const double lam = ctx.lambda;
            rep.f_main = nodal_density(curve, {0, 0}, std::sqrt(lam) / 4.0);
            rep.densities.push_back({{0, 0}, std::sqrt(lam) / 4.0, rep.f_main});
            const double c = std::sqrt(lam) / (2.0 * std::sqrt(2.0));
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) {
                    const Point2 ctr{-c + a * c, -c + b * c};
                    for (double r : {eps, eps / 2.0}) {
                        if (r < 8.0 * grid.spacing() * (1.0 - 1e-12)) continue;
                        rep.densities.push_back({ctr, r, nodal_density(curve, ctr, r)});
                    }
                }
            row.nodal = std::move(rep);
            if (!ctx.dump_dir.empty())
                dump_nodal_curve(curve,
                                 ctx.dump_dir + "/nodal_curve_" + std::to_string(index) + ".csv");
        }
        if (!ctx.dump_dir.empty()) {
            std::ofstream os(ctx.dump_dir + "/u_eps_" + std::to_string(index) + ".txt");
            u_eps.dump(os);
        }
        row.ok = true;
    } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
    }
    row.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

double ols_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    for (size_t k = 0; k < n; ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < n; ++k) {
        num += (xs[k] - mx) * (ys[k] - my);
        den += (xs[k] - mx) * (xs[k] - mx);
    }
    return num / den;
}

}  // namespace

bool SweepReport::all_ok() const {
    for (const auto& r : rows)
        if (!r.ok) return false;
    return !rows.empty() || cell_only_report;
}

SweepReport run_sweep(const ExperimentConfig& config, int jobs, const std::string& dump_dir) {
    config.validate();
    SweepReport report;
    report.config = config;

    const CoefficientField field = config.family.make();
    report.validation = field.validate(256);
    if (!report.validation.elliptic())
        throw config_error("coefficient field failed the ellipticity check");

    report.chi = solve_cell(field, config.cell_n, config.cell_tol);
    report.a_hat = homogenized(field, report.chi);

    if (config.cell_only()) {
        report.cell_only_report = true;
        return report;
    }

    if (!dump_dir.empty()) fs::create_directories(dump_dir);

    // homogenized problem solved once, on the finest grid
    const BoxGrid finest = config.grid_for(config.eps_list.back());
    const ScalarFn g = config.boundary.make();
    const DiscreteField u0_fine =
        homogenized_solution(report.a_hat, finest, g, nullptr, config.solver_tol);

    RowContext ctx{&config, &field,        &report.chi,
                   &report.a_hat, &u0_fine, report.validation.lambda_min,
                   dump_dir};

    report.rows.resize(config.eps_list.size());
    std::atomic<size_t> next{0};
    const int workers = std::max(1, std::min<int>(jobs, int(config.eps_list.size())));
    auto work = [&]() {
        for (;;) {
            const size_t k = next.fetch_add(1);
            if (k >= config.eps_list.size()) return;
            report.rows[k] = run_row(ctx, k);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // summary fits
    std::vector<std::pair<double, double>> err_points;
    std::vector<double> log_inv_eps, f_mains;
    for (const auto& r : report.rows) {
        if (!r.ok) {
            std::cerr << "sweep: eps = " << r.eps << " failed: " << r.error << "\n";
            continue;
        }
        if (r.approx) err_points.push_back({r.eps, r.approx->normalized_err});
        if (r.nodal) {
            log_inv_eps.push_back(std::log(1.0 / r.eps));
            f_mains.push_back(r.nodal->f_main);
        }
    }
    if (err_points.size() >= 3) report.rate_slope = rate_fit(err_points);
    if (f_mains.size() >= 2) report.f_main_trend_slope = ols_slope(log_inv_eps, f_mains);
    return report;
}

json SweepReport::summary() const {
    json s;
    s["rate_slope"] = rate_slope;
    json mr = json::object(), fm = json::object();
    for (const auto& r : rows) {
        if (!r.ok) continue;
        const std::string key = fmt17(r.eps);
        if (r.ball_profile) mr[key] = r.ball_profile->max_ratio;
        if (r.nodal) fm[key] = r.nodal->f_main;
    }
    s["max_doubling_ratio_by_eps"] = mr;
    s["f_main_by_eps"] = fm;
    s["f_main_trend_slope"] = f_main_trend_slope;

    json meta;
    meta["family"] = family_name(config.family.family);
    meta["lambda_min"] = validation.lambda_min;
    meta["lambda_max"] = validation.lambda_max;
    meta["lipschitz_estimate"] = validation.lipschitz_estimate;
    meta["periodicity_residual"] = validation.periodicity_residual;
    meta["a_hat"] = {{"a11", a_hat.a_hat.a11}, {"a12", a_hat.a_hat.a12}, {"a22", a_hat.a_hat.a22}};
    meta["cell_residual"] = chi.residual_norm;
    meta["cell_n"] = chi.grid_n;
    json grids = json::array(), walls = json::array(), errors = json::array();
    for (const auto& r : rows) {
        grids.push_back(r.m);
        walls.push_back(r.wall_ms);
        errors.push_back(r.ok ? "" : r.error);
    }
    meta["grid_m_by_eps"] = grids;
    meta["wall_ms_by_eps"] = walls;
    meta["row_errors"] = errors;
    meta["solver_tol"] = config.solver_tol;
    meta["cell_tol"] = config.cell_tol;
    s["meta"] = meta;
    return s;
}

void write_sweep_outputs(const SweepReport& report, const std::string& out_dir, bool dump_fields) {
    fs::create_directories(out_dir);
    const auto path = [&](const std::string& f) { return out_dir + "/" + f; };

    {
        json ah = {{"a11", report.a_hat.a_hat.a11},
                   {"a12", report.a_hat.a_hat.a12},
                   {"a22", report.a_hat.a_hat.a22}};
        std::ofstream os(path("a_hat.json"));
        os << ah.dump(2) << "\n";
    }
    if (dump_fields) {
        std::ofstream c1(path("chi1.txt")), c2(path("chi2.txt"));
        report.chi.chi1.dump(c1);
        report.chi.chi2.dump(c2);
    }
    if (report.cell_only_report) return;

    const std::string fam = family_name(report.config.family.family);
    {
        std::ofstream os(path("approx.csv"));
        os << "eps,sup_err_B34,sup_err_corrected_B34,normalizer,normalized_err\n";
        for (const auto& r : report.rows) {
            if (!r.ok || !r.approx) continue;
            const auto& a = *r.approx;
            os << fmt17(a.eps) << "," << fmt17(a.sup_err_B34) << ","
               << fmt17(a.sup_err_corrected_B34) << "," << fmt17(a.normalizer) << ","
               << fmt17(a.normalized_err) << "\n";
        }
    }
    {
        std::ofstream os(path("doubling.csv"));
        os << "eps,family,shape,center_x,center_y,r,ratio\n";
        auto emit = [&](double eps, const DoublingProfile& p) {
            const char* shape = p.shape == AverageShape::Ball ? "ball" : "ellipsoid";
            for (size_t k = 0; k < p.ratios.size(); ++k)
                os << fmt17(eps) << "," << fam << "," << shape << "," << fmt17(p.center.x) << ","
                   << fmt17(p.center.y) << "," << fmt17(p.radii[k]) << "," << fmt17(p.ratios[k])
                   << "\n";
        };
        for (const auto& r : report.rows) {
            if (!r.ok) continue;
            if (r.ball_profile) emit(r.eps, *r.ball_profile);
            if (r.ellipsoid_profile) emit(r.eps, *r.ellipsoid_profile);
            for (const auto& t : r.translated) emit(r.eps, t);
        }
    }
    for (size_t k = 0; k < report.rows.size(); ++k) {
        const auto& r = report.rows[k];
        if (!r.ok || !r.psi) continue;
        std::ofstream os(path("psi_" + std::to_string(k) + ".csv"));
        os << "r,psi\n";
        for (size_t i = 0; i < r.psi->r_values.size(); ++i)
            os << fmt17(r.psi->r_values[i]) << "," << fmt17(r.psi->psi[i]) << "\n";
    }
    {
        std::ofstream os(path("nodal_density.csv"));
        os << "eps,center_x,center_y,r,F\n";
        for (const auto& r : report.rows) {
            if (!r.ok || !r.nodal) continue;
            for (const auto& d : r.nodal->densities)
                os << fmt17(r.eps) << "," << fmt17(d.center.x) << "," << fmt17(d.center.y) << ","
                   << fmt17(d.r) << "," << fmt17(d.value) << "\n";
        }
    }
    {
        std::ofstream os(path("summary.json"));
        os << report.summary().dump(2) << "\n";
    }
}

}  // namespace homog
